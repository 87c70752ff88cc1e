#pragma once

// Reference policies: epsilon-greedy exploration and the known-p bound.

#include <cstdint>
#include <string>

#include "sense_or_send/closed_loop.hpp"
#include "sense_or_send/link_adaptation.hpp"

namespace sos {

struct GreedyConfig {
    /// Throws std::domain_error unless epsilon lies in [0,1].
    explicit GreedyConfig(double epsilon);
    double epsilon;
};

/// Sensing has zero short-term reward, so the greedy choice is always to
/// communicate; it senses only on the exploration branch.
Action greedy_action(const GreedyConfig& cfg, Probability rng_draw);

/// Distribution of the hidden activity probability: Uniform(lo, hi) or a
/// point mass when lo == hi.
class PDistribution {
public:
    static PDistribution uniform(double lo, double hi);
    static PDistribution fixed(double p);
    /// "uniform:a,b" or "fixed:p".
    static PDistribution parse(const std::string& text);

    bool is_fixed() const { return lo_ == hi_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    /// Maps a uniform draw u in [0,1) to a sample.
    double sample(double u) const { return lo_ + (hi_ - lo_) * u; }
    std::string to_string() const;

    friend bool operator==(const PDistribution&, const PDistribution&) = default;

private:
    PDistribution(double lo, double hi) : lo_(lo), hi_(hi) {}
    double lo_;
    double hi_;
};

inline constexpr int kDefaultQuadratureIntervals = 10'000;

/// T * integral of known_p_expected_rate(cfg, p) * density(p) dp by composite
/// Simpson on `intervals` subintervals. With p known the best policy always
/// communicates. Uniform supports must satisfy 0 <= a < b <= 1; the
/// endpoints are evaluated as one-sided limits.
double known_p_policy_value(const ChannelConfig& cfg, std::int64_t horizon, const PDistribution& dist,
                            int intervals = kDefaultQuadratureIntervals);

}  // namespace sos
