#include <gtest/gtest.h>

#include <sstream>

#include "sense_or_send/sim.hpp"

namespace sos {
namespace {

const ChannelConfig kSp = ChannelConfig::from_db(15.0, 10.0);
const ChannelConfig kSingle = ChannelConfig::from_db(15.0, 10.0, CodingMode::SingleCode);

TrialSpec make_spec(PolicyKind kind, std::int64_t horizon, const ChannelConfig& cfg = kSp) {
    TrialSpec spec;
    spec.horizon = horizon;
    spec.channel = cfg;
    spec.policy.kind = kind;
    spec.seed = 7;
    spec.trials = 200;
    return spec;
}

void expect_trajectory_invariants(const TrajectoryRecord& rows) {
    double cumulative = 0.0;
    std::int64_t k = 0, n = 0;
    for (const auto& row : rows) {
        EXPECT_EQ(row.k, k);
        EXPECT_EQ(row.n, n);
        if (row.action == Action::Sense) {
            EXPECT_EQ(row.slot_rate, 0.0);
            EXPECT_FALSE(row.alpha.has_value());
            ++n;
            if (row.interferer_active) ++k;
        } else {
            EXPECT_TRUE(row.alpha.has_value());
        }
        EXPECT_GE(row.cumulative_rate, cumulative);
        cumulative = row.cumulative_rate;
    }
}

TEST(TrialSpec, Validation) {
    auto spec = make_spec(PolicyKind::ClosedLoop, 10);
    spec.horizon = 0;
    EXPECT_THROW(spec.validate(), std::domain_error);
    spec = make_spec(PolicyKind::ClosedLoop, 10);
    spec.trials = 0;
    EXPECT_THROW(spec.validate(), std::domain_error);
    spec = make_spec(PolicyKind::Greedy, 10);
    spec.policy.epsilon = 2.0;
    EXPECT_THROW(spec.validate(), std::domain_error);
    spec = make_spec(PolicyKind::ClosedLoop, 10);
    spec.policy.max_sense = 11;
    EXPECT_THROW(Simulator{spec}, std::domain_error);
}

TEST(RunTrial, NoInterferenceYieldsBothCodes) {
    auto spec = make_spec(PolicyKind::ClosedLoop, 200);
    spec.p_dist = PDistribution::fixed(0.0);
    const auto outcome = run_trial(spec, 0, true);
    ASSERT_TRUE(outcome.record.switch_slot);
    for (const auto& row : *outcome.trajectory) {
        if (row.action == Action::Communicate) {
            const auto link = make_link_choice(kSp, *row.alpha);
            EXPECT_DOUBLE_EQ(row.slot_rate, link.rate_code1 + link.rate_code2);
        }
    }
    expect_trajectory_invariants(*outcome.trajectory);
}

TEST(RunPath, SingleCodeFullPowerFailsUnderInterference) {
    // known-p policy told p = 0 picks alpha = 1; every slot is interfered
    const Simulator sim(make_spec(PolicyKind::KnownP, 50, kSingle));
    const std::vector<std::uint8_t> all_active(50, 1);
    RandomStream exploration(1, 0, Stream::Exploration);
    const auto outcome = sim.run_path(0.0, all_active, exploration, true);
    EXPECT_EQ(outcome.record.total_rate, 0.0);
    EXPECT_EQ(*outcome.trajectory->front().alpha, 1.0);
}

TEST(RunPath, RejectsWrongLength) {
    const Simulator sim(make_spec(PolicyKind::KnownP, 5));
    RandomStream exploration(1, 0, Stream::Exploration);
    const std::vector<std::uint8_t> path(4, 0);
    EXPECT_THROW(sim.run_path(0.5, path, exploration), std::invalid_argument);
}

TEST(RunTrial, ClosedLoopSwitchesOnceAndHoldsItsRate) {
    auto spec = make_spec(PolicyKind::ClosedLoop, 1000, kSingle);
    const Simulator sim(spec);
    for (std::int64_t trial = 0; trial < 20; ++trial) {
        const auto outcome = sim.run_trial(trial, true);
        const auto& rows = *outcome.trajectory;
        expect_trajectory_invariants(rows);
        ASSERT_TRUE(outcome.record.switch_slot);
        const auto switch_slot = *outcome.record.switch_slot;
        EXPECT_EQ(outcome.record.sense_slots, switch_slot);
        for (std::int64_t i = 0; i < 1000; ++i) {
            EXPECT_EQ(rows[i].action, i < switch_slot ? Action::Sense : Action::Communicate);
            if (i > switch_slot) EXPECT_EQ(rows[i].alpha, rows[switch_slot].alpha);
        }
        // value estimate on the table while sensing equals the root value at slot 0
        EXPECT_DOUBLE_EQ(rows[0].state_value_estimate, sim.decision_table()->root_value());
    }
}

TEST(RunTrial, OpenLoopSensesExactlyThePlannedPrefix) {
    const Simulator sim(make_spec(PolicyKind::OpenLoop, 300));
    const auto planned = sim.open_loop_plan()->sense_steps;
    ASSERT_GT(planned, 0);
    for (std::int64_t trial = 0; trial < 10; ++trial) {
        const auto outcome = sim.run_trial(trial, true);
        EXPECT_EQ(outcome.record.sense_slots, planned);
        EXPECT_EQ(outcome.record.switch_slot, planned);
        expect_trajectory_invariants(*outcome.trajectory);
    }
    auto spec = make_spec(PolicyKind::OpenLoop, 300);
    spec.policy.open_sense_steps = 25;
    EXPECT_EQ(Simulator(spec).run_trial(0).record.sense_slots, 25);
}

TEST(RunTrial, ReplanningOpenLoopKeepsPrefixShape) {
    auto spec = make_spec(PolicyKind::OpenLoop, 200);
    spec.policy.replan = true;
    const Simulator sim(spec);
    for (std::int64_t trial = 0; trial < 10; ++trial) {
        const auto outcome = sim.run_trial(trial, true);
        EXPECT_EQ(outcome.record.switch_slot, outcome.record.sense_slots);
        expect_trajectory_invariants(*outcome.trajectory);
    }
}

TEST(RunTrial, GreedyAndKnownPInvariants) {
    auto spec = make_spec(PolicyKind::Greedy, 400);
    spec.policy.epsilon = 0.2;
    const auto greedy = run_trial(spec, 3, true);
    expect_trajectory_invariants(*greedy.trajectory);
    EXPECT_GT(greedy.record.sense_slots, 0);

    spec.policy.epsilon = 1.0;
    EXPECT_EQ(run_trial(spec, 3).record.total_rate, 0.0);

    const auto known = run_trial(make_spec(PolicyKind::KnownP, 400), 3, true);
    EXPECT_EQ(known.record.sense_slots, 0);
    EXPECT_EQ(known.record.switch_slot, 0);
}

TEST(RunTrial, ActionsDependOnlyOnObservedSlots) {
    for (PolicyKind kind : {PolicyKind::ClosedLoop, PolicyKind::OpenLoop, PolicyKind::Greedy}) {
        auto spec = make_spec(kind, 300);
        spec.policy.epsilon = 0.1;
        const Simulator sim(spec);
        std::vector<std::uint8_t> path(300);
        RandomStream env(99, static_cast<std::uint64_t>(kind), Stream::Environment);
        for (auto& slot : path) slot = env.bernoulli(0.3);

        RandomStream explore_a(5, 0, Stream::Exploration);
        const auto first = sim.run_path(0.3, path, explore_a, true);

        // flip every slot that was not sensed
        auto other = path;
        for (const auto& row : *first.trajectory)
            if (row.action == Action::Communicate) other[row.slot] ^= 1;
        RandomStream explore_b(5, 0, Stream::Exploration);
        const auto second = sim.run_path(0.3, other, explore_b, true);

        for (std::size_t i = 0; i < path.size(); ++i) ASSERT_EQ((*first.trajectory)[i].action, (*second.trajectory)[i].action);
    }
}

TEST(RunBatch, SingleTrialMeanEqualsRecord) {
    auto spec = make_spec(PolicyKind::ClosedLoop, 50);
    spec.trials = 1;
    const auto batch = run_batch(spec);
    EXPECT_EQ(batch.mean_total_rate, batch.trials[0].total_rate);
    EXPECT_EQ(batch.standard_error, 0.0);
    EXPECT_EQ(batch.trials[0].total_rate, run_trial(spec, 0).record.total_rate);
}

TEST(RunBatch, DeterministicAcrossRunsAndThreadCounts) {
    auto spec = make_spec(PolicyKind::Greedy, 100);
    spec.trials = 500;
    const Simulator sim(spec);
    std::ostringstream a, b, c;
    write_trials_csv(a, sim.run_batch(1).trials);
    write_trials_csv(b, sim.run_batch(1).trials);
    write_trials_csv(c, sim.run_batch(4).trials);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str(), c.str());
    EXPECT_EQ(sim.run_batch(1).mean_total_rate, sim.run_batch(3).mean_total_rate);

    spec.seed = 8;
    std::ostringstream d;
    write_trials_csv(d, Simulator(spec).run_batch(1).trials);
    EXPECT_NE(a.str(), d.str());
}

TEST(RunBatch, SensingPrefixForClosedLoop) {
    auto spec = make_spec(PolicyKind::ClosedLoop, 500, kSingle);
    spec.trials = 1000;
    for (const auto& t : run_batch(spec).trials) {
        ASSERT_TRUE(t.switch_slot);
        EXPECT_EQ(*t.switch_slot, t.sense_slots);
    }
}

TEST(ExpectedValueCheck, ShortHorizons) {
    auto spec = make_spec(PolicyKind::ClosedLoop, 1);
    spec.trials = 100'000;
    const auto one = expected_value_check(spec);
    EXPECT_NEAR(one.analytic, communication_reward(kSp, {0, 0}), 1e-15);
    EXPECT_TRUE(one.passed()) << one.z;

    spec.horizon = 10;
    const auto ten = expected_value_check(spec);
    EXPECT_TRUE(ten.passed()) << ten.z;
}

TEST(ExpectedValueCheck, RefusesOtherPriors) {
    auto spec = make_spec(PolicyKind::ClosedLoop, 10);
    spec.p_dist = PDistribution::uniform(0.05, 0.3);
    EXPECT_THROW(expected_value_check(spec), std::invalid_argument);
    EXPECT_THROW(expected_value_check(make_spec(PolicyKind::Greedy, 10)), std::invalid_argument);
}

TEST(Csv, HeadersAndPrecision) {
    std::ostringstream out;
    TrialRecord rec;
    rec.trial = 3;
    rec.p = 0.1;
    rec.total_rate = 1.0 / 3.0;
    rec.sense_slots = 2;
    const std::vector<TrialRecord> rows{rec};
    write_trials_csv(out, rows);
    EXPECT_EQ(out.str(), "trial,p,total_rate,sense_slots,switch_slot\n3,0.10000000000000001,0.33333333333333331,2,\n");
}

TEST(PairwiseMean, Basic) {
    const std::vector<double> values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    EXPECT_DOUBLE_EQ(pairwise_mean(values), 6.0);
    EXPECT_EQ(pairwise_mean({}), 0.0);
}

}  // namespace
}  // namespace sos
