#include "sense_or_send/belief.hpp"

#include <cmath>
#include <stdexcept>

namespace sos {

SensingState::SensingState(std::int64_t k, std::int64_t n) : k_(k), n_(n) {
    if (k < 0 || k > n) throw std::domain_error("sensing state requires 0 <= k <= n");
}

Probability predictive_p(SensingState state) {
    return static_cast<double>(state.k() + 1) / static_cast<double>(state.n() + 2);
}

double posterior_density(SensingState state, Probability p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("posterior_density: p must lie in [0,1]");
    const auto k = static_cast<double>(state.k());
    const auto n = static_cast<double>(state.n());
    // 0^0 = 1 at the boundaries.
    if (p == 0.0) return state.k() == 0 ? n + 1.0 : 0.0;
    if (p == 1.0) return state.k() == state.n() ? n + 1.0 : 0.0;
    // (n+1) * C(n,k) = Gamma(n+2) / (Gamma(k+1) Gamma(n-k+1))
    const double log_norm = std::lgamma(n + 2.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(log_norm + k * std::log(p) + (n - k) * std::log1p(-p));
}

void advance_proba_vec(SensingState state, std::int64_t steps_taken, std::vector<double>& probs) {
    // Entry m sits at (k+m, n+steps_taken). Each splits into an active
    // branch (m+1) with weight p and an inactive branch (m) with 1-p; the
    // two branches landing on the same count are merged.
    const std::int64_t n = state.n() + steps_taken;
    const auto size = probs.size();
    probs.push_back(0.0);
    for (std::size_t idx = size; idx-- > 0;) {
        const double p = predictive_p(SensingState(state.k() + static_cast<std::int64_t>(idx), n));
        const double mass = probs[idx];
        probs[idx + 1] += mass * p;
        probs[idx] = mass * (1.0 - p);
    }
}

PredictiveVector get_proba_vec(SensingState state, std::int64_t j) {
    if (j < 0) throw std::domain_error("get_proba_vec: j must be nonnegative");
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(j) + 1);
    probs.push_back(1.0);
    for (std::int64_t step = 0; step < j; ++step) advance_proba_vec(state, step, probs);
    return PredictiveVector(state.k(), std::move(probs));
}

}  // namespace sos
