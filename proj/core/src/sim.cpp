#include "sense_or_send/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "sense_or_send/csv.hpp"

namespace sos {

namespace {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double total = 0.0;
        for (double v : values) total += v;
        return total;
    }
    const auto half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::OpenLoop: return "open";
        case PolicyKind::ClosedLoop: return "closed";
        case PolicyKind::Greedy: return "greedy";
        case PolicyKind::KnownP: return "known-p";
    }
    return "?";
}

PolicyKind policy_kind_from_string(std::string_view text) {
    if (text == "open") return PolicyKind::OpenLoop;
    if (text == "closed") return PolicyKind::ClosedLoop;
    if (text == "greedy") return PolicyKind::Greedy;
    if (text == "known-p") return PolicyKind::KnownP;
    throw std::invalid_argument("unknown policy '" + std::string(text) + "' (expected open, closed, greedy or known-p)");
}

void TrialSpec::validate() const {
    if (horizon < 1) throw std::domain_error("horizon T must be at least 1");
    if (trials < 1) throw std::domain_error("trials must be at least 1");
    if (policy.max_sense && (*policy.max_sense < 0 || *policy.max_sense > horizon)) {
        throw std::domain_error("max_sense must lie in [0, T]");
    }
    if (policy.open_sense_steps && (*policy.open_sense_steps < 0 || *policy.open_sense_steps > horizon)) {
        throw std::domain_error("open-loop sensing steps must lie in [0, T]");
    }
    GreedyConfig{policy.epsilon};
}

Simulator::Simulator(TrialSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    switch (spec_.policy.kind) {
        case PolicyKind::ClosedLoop:
            table_ = reduced_trellis_solve({0, 0, 0}, spec_.horizon, spec_.channel, spec_.policy.max_sense);
            break;
        case PolicyKind::OpenLoop:
            plan_ = optimal_open_loop({0, 0}, spec_.horizon, spec_.channel);
            if (spec_.policy.open_sense_steps) plan_->sense_steps = *spec_.policy.open_sense_steps;
            break;
        default:
            break;
    }
}

LinkChoice Simulator::belief_link(SensingState state) const {
    return make_link_choice(spec_.channel, optimal_alpha(spec_.channel, predictive_p(state)));
}

TrialOutcome Simulator::run_trial(std::int64_t trial_index, bool trace) const {
    RandomStream environment(spec_.seed, static_cast<std::uint64_t>(trial_index), Stream::Environment);
    RandomStream exploration(spec_.seed, static_cast<std::uint64_t>(trial_index), Stream::Exploration);
    const double p = spec_.p_dist.sample(environment.uniform());
    std::vector<std::uint8_t> path(static_cast<std::size_t>(spec_.horizon));
    for (auto& slot : path) slot = environment.bernoulli(p) ? 1 : 0;
    TrialOutcome outcome = run_path(p, path, exploration, trace);
    outcome.record.trial = trial_index;
    return outcome;
}

TrialOutcome Simulator::run_path(double p, std::span<const std::uint8_t> interferer, RandomStream& exploration,
                                 bool trace) const {
    const std::int64_t horizon = spec_.horizon;
    if (interferer.size() != static_cast<std::size_t>(horizon)) {
        throw std::invalid_argument("interferer path length must equal the horizon");
    }
    const auto& channel = spec_.channel;
    const PolicySpec& policy = spec_.policy;
    const std::optional<GreedyConfig> greedy =
        policy.kind == PolicyKind::Greedy ? std::optional<GreedyConfig>(policy.epsilon) : std::nullopt;

    TrialOutcome outcome;
    outcome.record.p = p;
    if (trace) outcome.trajectory.emplace().reserve(interferer.size());

    SensingState belief;
    bool communicated = false;
    std::optional<LinkChoice> link;  // cached for the current belief
    double known_rate_value = 0.0;
    if (policy.kind == PolicyKind::KnownP) {
        link = make_link_choice(channel, optimal_alpha_for_known_p(channel, p));
        known_rate_value = link->rate_code2 + link->rate_code1 * (1.0 - p);
    }
    Rate cumulative = 0.0;

    for (std::int64_t slot = 0; slot < horizon; ++slot) {
        const bool active = interferer[static_cast<std::size_t>(slot)] != 0;
        const std::int64_t remaining = horizon - slot;
        Action action = Action::Communicate;
        std::optional<double> planned_value;  // value of the current plan while still sensing

        switch (policy.kind) {
            case PolicyKind::ClosedLoop:
                if (!communicated) {
                    const MdpState here{belief.k(), belief.n(), slot};
                    action = decide(*table_, here);
                    if (trace) {
                        const auto [j, m] = *table_->locate(here);
                        planned_value = table_->node(j, m).value;
                    }
                }
                break;
            case PolicyKind::OpenLoop:
                if (!communicated) {
                    if (policy.replan) {
                        const OpenLoopPlan replanned = optimal_open_loop(belief, remaining, channel);
                        action = replanned.sense_steps > 0 ? Action::Sense : Action::Communicate;
                        planned_value = replanned.expected_gain;
                    } else if (slot < plan_->sense_steps) {
                        action = Action::Sense;
                        if (trace) {
                            const std::int64_t left = plan_->sense_steps - slot;
                            planned_value = g(belief, left, channel) * static_cast<double>(remaining - left);
                        }
                    }
                }
                break;
            case PolicyKind::Greedy:
                action = greedy_action(*greedy, exploration.uniform());
                break;
            case PolicyKind::KnownP:
                planned_value = static_cast<double>(remaining) * known_rate_value;
                break;
        }

        TrajectoryRow row;
        row.slot = slot;
        row.action = action;
        row.k = belief.k();
        row.n = belief.n();
        row.interferer_active = active;
        if (trace) {
            row.state_value_estimate = planned_value.value_or(static_cast<double>(remaining) *
                                                              communication_reward(channel, belief));
        }

        if (action == Action::Sense) {
            ++outcome.record.sense_slots;
            belief = belief.observed(active);
            link.reset();
        } else {
            if (!link) link = belief_link(belief);
            if (!communicated) {
                communicated = true;
                outcome.record.switch_slot = slot;
            }
            row.alpha = link->alpha;
            row.slot_rate = link->realized(active);
            cumulative += row.slot_rate;
        }
        row.cumulative_rate = cumulative;
        if (trace) outcome.trajectory->push_back(row);
    }
    outcome.record.total_rate = cumulative;
    return outcome;
}

BatchResult Simulator::run_batch(unsigned threads) const {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const auto count = static_cast<std::size_t>(spec_.trials);
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

    BatchResult result;
    result.trials.resize(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next.fetch_add(1); idx < count; idx = next.fetch_add(1)) {
            result.trials[idx] = run_trial(static_cast<std::int64_t>(idx)).record;
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    std::vector<double> totals(count);
    for (std::size_t idx = 0; idx < count; ++idx) totals[idx] = result.trials[idx].total_rate;
    result.mean_total_rate = pairwise_mean(totals);
    if (count > 1) {
        for (double& v : totals) v = (v - result.mean_total_rate) * (v - result.mean_total_rate);
        const double variance = pairwise_sum(totals) / static_cast<double>(count - 1);
        result.standard_error = std::sqrt(variance / static_cast<double>(count));
    }
    return result;
}

TrialOutcome run_trial(const TrialSpec& spec, std::int64_t trial_index, bool trace) {
    return Simulator(spec).run_trial(trial_index, trace);
}

BatchResult run_batch(const TrialSpec& spec, unsigned threads) { return Simulator(spec).run_batch(threads); }

ExpectationCheck expected_value_check(const TrialSpec& spec, unsigned threads) {
    if (spec.policy.kind != PolicyKind::ClosedLoop) {
        throw std::invalid_argument("expected_value_check applies to the closed-loop policy only");
    }
    if (spec.p_dist != PDistribution::uniform(0.0, 1.0)) {
        throw std::invalid_argument(
            "expected_value_check refused: the trellis value is the expectation only under p ~ Uniform(0,1)");
    }
    const Simulator sim(spec);
    const BatchResult batch = sim.run_batch(threads);
    ExpectationCheck check;
    check.analytic = sim.decision_table()->root_value();
    check.empirical = batch.mean_total_rate;
    check.standard_error = batch.standard_error;
    const double diff = check.empirical - check.analytic;
    if (check.standard_error > 0.0) {
        check.z = diff / check.standard_error;
    } else {
        check.z = std::abs(diff) <= 1e-9 ? 0.0 : std::copysign(INFINITY, diff);
    }
    return check;
}

double pairwise_mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    return pairwise_sum(values) / static_cast<double>(values.size());
}

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> trials) {
    out << kTrialsCsvHeader << '\n';
    for (const auto& t : trials) {
        CsvRow(out) << t.trial << t.p << t.total_rate << t.sense_slots << t.switch_slot;
    }
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& trajectory) {
    out << kTrajectoryCsvHeader << '\n';
    for (const auto& r : trajectory) {
        CsvRow(out) << r.slot << to_string(r.action) << r.k << r.n << r.interferer_active << r.alpha << r.slot_rate
                    << r.cumulative_rate << r.state_value_estimate;
    }
}

}  // namespace sos
