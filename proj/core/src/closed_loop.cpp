#include "sense_or_send/closed_loop.hpp"

#include <stdexcept>
#include <string>

#include "sense_or_send/open_loop.hpp"

namespace sos {

std::string_view to_string(Action action) {
    return action == Action::Sense ? "sense" : "communicate";
}

void validate(const MdpState& s, std::int64_t horizon) {
    if (!(0 <= s.k && s.k <= s.n && s.n <= s.i && s.i <= horizon)) {
        throw std::domain_error("MDP state requires 0 <= k <= n <= i <= T");
    }
}

DecisionTable::DecisionTable(MdpState root, std::int64_t horizon, std::optional<std::int64_t> max_sense,
                             std::int64_t depth)
    : root_(root), horizon_(horizon), max_sense_(max_sense), depth_(depth),
      nodes_(static_cast<std::size_t>((depth + 1) * (depth + 2) / 2)) {}

std::optional<std::pair<std::int64_t, std::int64_t>> DecisionTable::locate(const MdpState& state) const {
    const std::int64_t j = state.n - root_.n;
    const std::int64_t m = state.k - root_.k;
    if (j < 0 || j > depth_ || state.i - root_.i != j || m < 0 || m > j) return std::nullopt;
    return std::pair{j, m};
}

DecisionTable reduced_trellis_solve(MdpState root, std::int64_t horizon, const ChannelConfig& cfg,
                                    std::optional<std::int64_t> max_sense) {
    validate(root, horizon);
    const std::int64_t remaining = horizon - root.i;
    if (max_sense && (*max_sense < 0 || *max_sense > remaining)) {
        throw std::domain_error("max_sense cap must lie in [0, T - i]");
    }
    const std::int64_t depth = max_sense ? *max_sense : remaining;
    DecisionTable table(root, horizon, max_sense, depth);

    // Pre-processing: stop values, i.e. communicating for the rest of the
    // horizon from each node.
    for (std::int64_t j = 0; j <= depth; ++j) {
        const auto slots_left = static_cast<double>(remaining - j);
        for (std::int64_t m = 0; m <= j; ++m) {
            TrellisNode& node = table.node(j, m);
            node.stop_value =
                slots_left == 0.0 ? 0.0
                                  : slots_left * communication_reward(cfg, SensingState(root.k + m, root.n + j));
        }
    }

    // Backward pass. The last level has no continuation.
    for (std::int64_t m = 0; m <= depth; ++m) {
        TrellisNode& node = table.node(depth, m);
        node.continue_value = 0.0;
        node.value = node.stop_value;
        node.decision = Action::Communicate;
    }
    for (std::int64_t j = depth - 1; j >= 0; --j) {
        for (std::int64_t m = 0; m <= j; ++m) {
            TrellisNode& node = table.node(j, m);
            const double p = predictive_p(SensingState(root.k + m, root.n + j));
            node.continue_value = p * table.node(j + 1, m + 1).value + (1.0 - p) * table.node(j + 1, m).value;
            if (node.continue_value > node.stop_value) {
                node.value = node.continue_value;
                node.decision = Action::Sense;
            } else {
                node.value = node.stop_value;
                node.decision = Action::Communicate;
            }
        }
    }
    return table;
}

Action decide(const DecisionTable& table, const MdpState& state) {
    const auto where = table.locate(state);
    if (!where) {
        throw std::out_of_range("state (" + std::to_string(state.k) + "," + std::to_string(state.n) + "," +
                                std::to_string(state.i) + ") is not on the decision table's sensing trellis");
    }
    return table.node(where->first, where->second).decision;
}

FullSolution::FullSolution(std::int64_t horizon)
    : horizon_(horizon),
      decisions_(static_cast<std::size_t>((horizon + 1) * (horizon + 2) * (horizon + 3) / 6), Action::Communicate) {}

Action FullSolution::decision(const MdpState& state) const {
    validate(state, horizon_);
    return decisions_[offset(state)];
}

FullSolution full_backward_induction(std::int64_t horizon, const ChannelConfig& cfg, std::int64_t oracle_limit) {
    if (horizon < 0) throw std::domain_error("horizon must be nonnegative");
    if (horizon > oracle_limit) {
        throw std::length_error("full backward induction refused: T=" + std::to_string(horizon) +
                                " exceeds the oracle limit " + std::to_string(oracle_limit));
    }
    FullSolution solution(horizon);

    // Slice for slot i holds V(k, n, i) at index n(n+1)/2 + k, n <= i.
    auto slice_index = [](std::int64_t k, std::int64_t n) { return static_cast<std::size_t>(n * (n + 1) / 2 + k); };
    std::vector<double> next(static_cast<std::size_t>((horizon + 1) * (horizon + 2) / 2), 0.0);
    std::vector<double> current(next.size(), 0.0);

    for (std::int64_t i = horizon - 1; i >= 0; --i) {
        for (std::int64_t n = 0; n <= i; ++n) {
            for (std::int64_t k = 0; k <= n; ++k) {
                const SensingState here(k, n);
                const double p = predictive_p(here);
                const double stop = communication_reward(cfg, here) + next[slice_index(k, n)];
                const double cont = p * next[slice_index(k + 1, n + 1)] + (1.0 - p) * next[slice_index(k, n + 1)];
                const bool sense = cont > stop;
                current[slice_index(k, n)] = sense ? cont : stop;
                if (sense) solution.decisions_[FullSolution::offset({k, n, i})] = Action::Sense;
            }
        }
        std::swap(current, next);
    }
    solution.root_value_ = next[0];
    return solution;
}

}  // namespace sos
