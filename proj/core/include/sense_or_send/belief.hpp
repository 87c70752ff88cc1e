#pragma once

// Beta-Bernoulli belief over the interferer activity probability under a
// uniform prior. After k active observations out of n sensing slots the
// posterior is Beta(k+1, n-k+1).

#include <cstdint>
#include <span>
#include <vector>

#include "sense_or_send/link_adaptation.hpp"

namespace sos {

/// Observation pair (k, n): k active out of n sensing slots.
class SensingState {
public:
    SensingState() = default;
    /// Throws std::domain_error unless 0 <= k <= n.
    SensingState(std::int64_t k, std::int64_t n);

    std::int64_t k() const { return k_; }
    std::int64_t n() const { return n_; }

    SensingState observed(bool active) const { return {k_ + (active ? 1 : 0), n_ + 1}; }

    friend bool operator==(const SensingState&, const SensingState&) = default;

private:
    std::int64_t k_ = 0;
    std::int64_t n_ = 0;
};

/// Posterior predictive probability (k+1)/(n+2) that the next slot is active.
Probability predictive_p(SensingState state);

/// Beta(k+1, n-k+1) density at p. Throws std::domain_error for p outside [0,1].
double posterior_density(SensingState state, Probability p);

/// Distribution of the number of active observations among the next j
/// sensing slots. Entry m is P(k_{i+j} = base_k + m | k, n).
class PredictiveVector {
public:
    PredictiveVector(std::int64_t base_k, std::vector<double> probs)
        : base_k_(base_k), probs_(std::move(probs)) {}

    std::int64_t base_k() const { return base_k_; }
    std::size_t steps() const { return probs_.size() - 1; }
    std::span<const double> probs() const { return probs_; }
    double operator[](std::size_t m) const { return probs_[m]; }

private:
    std::int64_t base_k_;
    std::vector<double> probs_;
};

/// Level-by-level multiply-and-merge of the sensing chain, O(j^2).
PredictiveVector get_proba_vec(SensingState state, std::int64_t j);

/// Advances a predictive vector for `state` by one further sensing step.
/// `probs` holds the distribution after `steps_taken` steps from `state`;
/// on return it has one more entry. This is the inner step of
/// get_proba_vec, exposed so callers can sweep j incrementally.
void advance_proba_vec(SensingState state, std::int64_t steps_taken, std::vector<double>& probs);

}  // namespace sos
