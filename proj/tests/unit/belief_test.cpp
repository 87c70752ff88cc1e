#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "sense_or_send/belief.hpp"

namespace sos {
namespace {

TEST(SensingState, Invariants) {
    EXPECT_THROW(SensingState(2, 1), std::domain_error);
    EXPECT_THROW(SensingState(-1, 1), std::domain_error);
    const SensingState s(1, 3);
    EXPECT_EQ(s.observed(true), SensingState(2, 4));
    EXPECT_EQ(s.observed(false), SensingState(1, 4));
}

TEST(PredictiveP, Values) {
    EXPECT_DOUBLE_EQ(predictive_p({0, 0}), 0.5);
    EXPECT_DOUBLE_EQ(predictive_p({0, 2}), 0.25);
    EXPECT_DOUBLE_EQ(predictive_p({3, 3}), 0.8);
}

TEST(PosteriorDensity, Values) {
    for (double p : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(posterior_density({0, 0}, p), 1.0);
    for (double p : {0.0, 0.25, 0.9, 1.0}) EXPECT_NEAR(posterior_density({1, 1}, p), 2.0 * p, 1e-14);
    EXPECT_NEAR(posterior_density({1, 2}, 0.5), 1.5, 1e-14);
    EXPECT_THROW(posterior_density({0, 0}, 1.5), std::domain_error);
}

TEST(PosteriorDensity, IntegratesToOne) {
    for (auto [k, n] : {std::pair{0, 0}, {1, 2}, {3, 10}, {50, 60}, {0, 200}, {150, 400}}) {
        const SensingState s(k, n);
        const double total = oracle::simpson([&](double p) { return posterior_density(s, p); }, 0.0, 1.0, 10'000);
        EXPECT_NEAR(total, 1.0, 1e-8) << k << "/" << n;
    }
}

TEST(PosteriorDensity, MatchesNormalizedLikelihood) {
    // binomial likelihood normalized by quadrature
    const SensingState s(1, 2);
    auto like = [](double p) { return 2.0 * p * (1.0 - p); };
    const double z = oracle::simpson(like, 0.0, 1.0, 1000);
    EXPECT_NEAR(posterior_density(s, 0.5), like(0.5) / z, 1e-12);
}

TEST(GetProbaVec, SmallCases) {
    EXPECT_EQ(get_proba_vec({3, 7}, 0).probs().size(), 1u);
    EXPECT_EQ(get_proba_vec({3, 7}, 0)[0], 1.0);
    const auto one = get_proba_vec({0, 0}, 1);
    EXPECT_DOUBLE_EQ(one[0], 0.5);
    EXPECT_DOUBLE_EQ(one[1], 0.5);
    const auto three = get_proba_vec({0, 0}, 3);
    for (double v : three.probs()) EXPECT_NEAR(v, 0.25, 1e-15);
    EXPECT_THROW(get_proba_vec({0, 0}, -1), std::domain_error);
}

TEST(GetProbaVec, MatchesPathEnumerationAndBetaBinomial) {
    for (int n = 0; n <= 6; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int j = 0; j <= 15; ++j) {
                const auto vec = get_proba_vec({k, n}, j);
                const auto brute = oracle::enumerate_paths(k, n, j);
                ASSERT_EQ(vec.probs().size(), brute.size());
                for (int m = 0; m <= j; ++m) {
                    EXPECT_NEAR(vec[m], brute[m], 1e-12);
                    EXPECT_NEAR(vec[m], oracle::beta_binomial_pmf(m, j, k, n), 1e-12);
                }
            }
        }
    }
}

TEST(GetProbaVec, SumsToOneAndPreservesPredictiveMean) {
    for (int n = 0; n <= 30; ++n) {
        for (int k = 0; k <= n; ++k) {
            const SensingState s(k, n);
            for (int j = 0; j <= 50; ++j) {
                const auto vec = get_proba_vec(s, j);
                double total = 0.0, mean = 0.0;
                for (int m = 0; m <= j; ++m) {
                    EXPECT_GE(vec[m], 0.0);
                    total += vec[m];
                    mean += vec[m] * predictive_p({k + m, n + j});
                }
                ASSERT_NEAR(total, 1.0, 1e-12);
                ASSERT_NEAR(mean, predictive_p(s), 1e-12);
            }
        }
    }
}

}  // namespace
}  // namespace sos
