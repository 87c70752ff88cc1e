#pragma once

// Open-loop sensing: commit to j sensing slots, then communicate for the
// rest of the horizon.

#include <cstdint>
#include <vector>

#include "sense_or_send/belief.hpp"
#include "sense_or_send/link_adaptation.hpp"

namespace sos {

/// Short-term reward of communicating from `state`, R(alpha_k^n, k, n).
Rate communication_reward(const ChannelConfig& cfg, SensingState state);

struct SensedRate {
    Rate value = 0.0;
    std::size_t reward_evaluations = 0;
};

/// Expected instantaneous rate after j committed sensing steps, g(k,n,j),
/// with the number of reward evaluations used (j+1 after the merge).
SensedRate expected_rate_after_sensing(const ChannelConfig& cfg, SensingState state, std::int64_t j);

/// g(k,n,j).
Rate g(SensingState state, std::int64_t j, const ChannelConfig& cfg);

/// g(k,n,j) for j = 0..max_j, sharing the predictive-vector recursion so the
/// whole profile costs O(max_j^2).
std::vector<Rate> g_profile(SensingState state, std::int64_t max_j, const ChannelConfig& cfg);

struct GainPoint {
    std::int64_t j = 0;
    Rate g = 0.0;
    double value = 0.0;  // g * (H - j)
};

struct OpenLoopPlan {
    std::int64_t sense_steps = 0;
    double expected_gain = 0.0;
    std::vector<GainPoint> gain_profile;
};

/// Evaluates g(k,n,j)*(H-j) for j = 0..H where H is the number of remaining
/// slots, and returns the maximizer. Ties go to the smaller j.
OpenLoopPlan optimal_open_loop(SensingState state, std::int64_t remaining_slots, const ChannelConfig& cfg);

}  // namespace sos
