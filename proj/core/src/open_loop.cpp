#include "sense_or_send/open_loop.hpp"

#include <stdexcept>

namespace sos {

namespace {

Rate merged_expectation(const ChannelConfig& cfg, SensingState state, std::int64_t j,
                        const std::vector<double>& probs, std::size_t& evaluations) {
    Rate total = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        ++evaluations;
        total += probs[m] * communication_reward(cfg, SensingState(state.k() + static_cast<std::int64_t>(m),
                                                                   state.n() + j));
    }
    return total;
}

}  // namespace

Rate communication_reward(const ChannelConfig& cfg, SensingState state) {
    return best_expected_rate(cfg, predictive_p(state));
}

SensedRate expected_rate_after_sensing(const ChannelConfig& cfg, SensingState state, std::int64_t j) {
    const PredictiveVector vec = get_proba_vec(state, j);
    const std::vector<double> probs(vec.probs().begin(), vec.probs().end());
    SensedRate out;
    out.value = merged_expectation(cfg, state, j, probs, out.reward_evaluations);
    return out;
}

Rate g(SensingState state, std::int64_t j, const ChannelConfig& cfg) {
    return expected_rate_after_sensing(cfg, state, j).value;
}

std::vector<Rate> g_profile(SensingState state, std::int64_t max_j, const ChannelConfig& cfg) {
    if (max_j < 0) throw std::domain_error("g_profile: max_j must be nonnegative");
    std::vector<Rate> out;
    out.reserve(static_cast<std::size_t>(max_j) + 1);
    std::vector<double> probs{1.0};
    std::size_t evaluations = 0;
    probs.reserve(static_cast<std::size_t>(max_j) + 1);
    for (std::int64_t j = 0; j <= max_j; ++j) {
        if (j > 0) advance_proba_vec(state, j - 1, probs);
        out.push_back(merged_expectation(cfg, state, j, probs, evaluations));
    }
    return out;
}

OpenLoopPlan optimal_open_loop(SensingState state, std::int64_t remaining_slots, const ChannelConfig& cfg) {
    if (remaining_slots < 0) throw std::domain_error("optimal_open_loop: remaining slots must be nonnegative");
    const std::vector<Rate> profile = g_profile(state, remaining_slots, cfg);

    OpenLoopPlan plan;
    plan.gain_profile.reserve(profile.size());
    for (std::int64_t j = 0; j <= remaining_slots; ++j) {
        const Rate gj = profile[static_cast<std::size_t>(j)];
        const double value = gj * static_cast<double>(remaining_slots - j);
        plan.gain_profile.push_back({j, gj, value});
        if (j == 0 || value > plan.expected_gain) {
            plan.sense_steps = j;
            plan.expected_gain = value;
        }
    }
    return plan;
}

}  // namespace sos
