#pragma once

// Optimal closed-loop sensing policy.
//
// Two solvers for the same finite-horizon MDP over states s(k, n, i):
//
//  * reduced_trellis_solve: only the states reachable from a root while
//    still sensing are kept. Since a policy that communicates once keeps
//    communicating, stopping at node (j, m) is worth
//    (T - i - j) * R(k+m, n+j) in closed form, and the backward pass over
//    levels j = J..0 costs O((T-i)^2).
//
//  * full_backward_induction: standard backward induction over every
//    0 <= k <= n <= i <= T, O(T^3). Kept as a reference oracle.

#include <cstdint>
#include <optional>
#include <vector>

#include "sense_or_send/belief.hpp"
#include "sense_or_send/link_adaptation.hpp"

namespace sos {

enum class Action : std::uint8_t { Communicate = 0, Sense = 1 };

std::string_view to_string(Action action);

/// s(k, n, i) with 0 <= k <= n <= i.
struct MdpState {
    std::int64_t k = 0;
    std::int64_t n = 0;
    std::int64_t i = 0;

    SensingState sensing() const { return {k, n}; }
    friend bool operator==(const MdpState&, const MdpState&) = default;
};

void validate(const MdpState& state, std::int64_t horizon);

struct TrellisNode {
    double value = 0.0;
    double stop_value = 0.0;
    double continue_value = 0.0;
    Action decision = Action::Communicate;
};

/// Per-node values and decisions of the reduced trellis rooted at `root`.
///
/// Node (j, m) is the state (root.k + m, root.n + j, root.i + j): j sensing
/// steps taken, m of them active. In the published form each level carries
/// a connection vector [1, 2, 2, 3, 3, ..., j+1] naming the next-level
/// states; here the children of (j, m) are simply (j+1, m+1) and (j+1, m).
class DecisionTable {
public:
    DecisionTable(MdpState root, std::int64_t horizon, std::optional<std::int64_t> max_sense,
                  std::int64_t depth);

    const MdpState& root() const { return root_; }
    std::int64_t horizon() const { return horizon_; }
    std::optional<std::int64_t> max_sense_cap() const { return max_sense_; }
    /// Deepest level J; levels are 0..J.
    std::int64_t depth() const { return depth_; }
    double root_value() const { return node(0, 0).value; }

    const TrellisNode& node(std::int64_t j, std::int64_t m) const { return nodes_[offset(j, m)]; }
    TrellisNode& node(std::int64_t j, std::int64_t m) { return nodes_[offset(j, m)]; }

    MdpState state_at(std::int64_t j, std::int64_t m) const {
        return {root_.k + m, root_.n + j, root_.i + j};
    }

    /// Node index for `state`, or nullopt when it is not on the sensing trellis.
    std::optional<std::pair<std::int64_t, std::int64_t>> locate(const MdpState& state) const;

private:
    static std::size_t offset(std::int64_t j, std::int64_t m) {
        return static_cast<std::size_t>(j * (j + 1) / 2 + m);
    }

    MdpState root_;
    std::int64_t horizon_;
    std::optional<std::int64_t> max_sense_;
    std::int64_t depth_;
    std::vector<TrellisNode> nodes_;
};

/// Builds the reduced trellis from `root` and runs backward induction on it.
/// With a cap, level `max_sense` is the last and forces Communicate.
/// Ties between stopping and continuing resolve to Communicate.
DecisionTable reduced_trellis_solve(MdpState root, std::int64_t horizon, const ChannelConfig& cfg,
                                    std::optional<std::int64_t> max_sense = std::nullopt);

/// Stored decision for `state`. Throws std::out_of_range when the state is
/// not on the table's sensing trellis.
Action decide(const DecisionTable& table, const MdpState& state);

inline constexpr std::int64_t kDefaultOracleLimit = 200;

/// Values and decisions of full backward induction for all states.
class FullSolution {
public:
    explicit FullSolution(std::int64_t horizon);

    std::int64_t horizon() const { return horizon_; }
    double root_value() const { return root_value_; }
    Action decision(const MdpState& state) const;
    std::size_t state_count() const { return decisions_.size(); }

private:
    friend FullSolution full_backward_induction(std::int64_t, const ChannelConfig&, std::int64_t);

    static std::size_t offset(const MdpState& s) {
        // states with slot index < i: sum_{l<i} (l+1)(l+2)/2
        const auto i = s.i;
        const auto before = i * (i + 1) * (i + 2) / 6;
        return static_cast<std::size_t>(before + s.n * (s.n + 1) / 2 + s.k);
    }

    std::int64_t horizon_;
    double root_value_ = 0.0;
    std::vector<Action> decisions_;
};

/// Standard backward induction over every state, V(., ., T) = 0. Values are
/// kept two slot-slices at a time. Refuses horizons above `oracle_limit`.
FullSolution full_backward_induction(std::int64_t horizon, const ChannelConfig& cfg,
                                     std::int64_t oracle_limit = kDefaultOracleLimit);

}  // namespace sos
