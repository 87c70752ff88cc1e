#pragma once

// Monte Carlo environment for one interference epoch of T slots.
//
// Each trial draws a hidden p, then an i.i.d. Bernoulli(p) interferer path.
// Policies see only their own (k, n, i) and an exploration stream, never p
// (except KnownP, which is the perfect-information bound).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sense_or_send/baselines.hpp"
#include "sense_or_send/closed_loop.hpp"
#include "sense_or_send/link_adaptation.hpp"
#include "sense_or_send/open_loop.hpp"
#include "sense_or_send/rng.hpp"

namespace sos {

enum class PolicyKind { OpenLoop, ClosedLoop, Greedy, KnownP };

std::string_view to_string(PolicyKind kind);
/// "open", "closed", "greedy" or "known-p".
PolicyKind policy_kind_from_string(std::string_view text);

struct PolicySpec {
    PolicyKind kind = PolicyKind::ClosedLoop;
    /// ClosedLoop: cap on sensing steps.
    std::optional<std::int64_t> max_sense;
    /// Greedy: exploration probability.
    double epsilon = 0.01;
    /// OpenLoop: fixed number of sensing steps instead of the optimum.
    std::optional<std::int64_t> open_sense_steps;
    /// OpenLoop: re-plan from the current belief every slot while sensing.
    /// This is not the committed open-loop policy; off by default.
    bool replan = false;
};

struct TrialSpec {
    std::int64_t horizon = 1;
    ChannelConfig channel = ChannelConfig::from_db(15.0, 10.0);
    PolicySpec policy;
    PDistribution p_dist = PDistribution::uniform(0.0, 1.0);
    std::uint64_t seed = 1;
    std::int64_t trials = 1;

    /// Throws std::domain_error on T < 1, trials < 1 or inconsistent policy
    /// parameters.
    void validate() const;
};

struct TrajectoryRow {
    std::int64_t slot = 0;
    Action action = Action::Communicate;
    std::int64_t k = 0;  // before the slot's action
    std::int64_t n = 0;
    bool interferer_active = false;
    std::optional<double> alpha;  // empty while sensing
    Rate slot_rate = 0.0;
    Rate cumulative_rate = 0.0;
    double state_value_estimate = 0.0;
};

using TrajectoryRecord = std::vector<TrajectoryRow>;

struct TrialRecord {
    std::int64_t trial = 0;
    double p = 0.0;
    Rate total_rate = 0.0;
    std::int64_t sense_slots = 0;
    std::optional<std::int64_t> switch_slot;  // first communication slot
};

struct TrialOutcome {
    TrialRecord record;
    std::optional<TrajectoryRecord> trajectory;
};

struct BatchResult {
    std::vector<TrialRecord> trials;
    double mean_total_rate = 0.0;
    double standard_error = 0.0;
};

/// Validated spec plus whatever the policy needs precomputed (decision
/// table or open-loop plan). Immutable after construction; safe to share
/// across threads.
class Simulator {
public:
    explicit Simulator(TrialSpec spec);

    const TrialSpec& spec() const { return spec_; }
    const std::optional<DecisionTable>& decision_table() const { return table_; }
    const std::optional<OpenLoopPlan>& open_loop_plan() const { return plan_; }

    TrialOutcome run_trial(std::int64_t trial_index, bool trace = false) const;

    /// Runs the policy against an explicit interferer path (one entry per
    /// slot). `exploration` feeds the greedy policy.
    TrialOutcome run_path(double p, std::span<const std::uint8_t> interferer, RandomStream& exploration,
                          bool trace = false) const;

    /// Trials in parallel on `threads` workers (0 = hardware concurrency).
    /// Results do not depend on the thread count.
    BatchResult run_batch(unsigned threads = 0) const;

private:
    LinkChoice belief_link(SensingState state) const;

    TrialSpec spec_;
    std::optional<DecisionTable> table_;
    std::optional<OpenLoopPlan> plan_;
};

TrialOutcome run_trial(const TrialSpec& spec, std::int64_t trial_index, bool trace = false);
BatchResult run_batch(const TrialSpec& spec, unsigned threads = 0);

struct ExpectationCheck {
    double analytic = 0.0;
    double empirical = 0.0;
    double standard_error = 0.0;
    double z = 0.0;
    bool passed() const { return z >= -4.0 && z <= 4.0; }
};

/// Compares the decision-table root value with the Monte Carlo mean of the
/// closed-loop policy. Only meaningful for p ~ Uniform(0,1), which is what
/// the trellis transition probabilities encode; anything else is refused
/// with std::invalid_argument.
ExpectationCheck expected_value_check(const TrialSpec& spec, unsigned threads = 0);

/// Mean of `values` by pairwise summation.
double pairwise_mean(std::span<const double> values);

inline constexpr std::string_view kTrialsCsvHeader = "trial,p,total_rate,sense_slots,switch_slot";
inline constexpr std::string_view kTrajectoryCsvHeader =
    "slot,action,k,n,interferer_active,alpha,slot_rate,cumulative_rate,state_value_estimate";

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> trials);
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& trajectory);

}  // namespace sos
