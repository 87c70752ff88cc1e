#include "sense_or_send/link_adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sos {

namespace {

void require_open_unit(Probability p, const char* what) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error(std::string(what) + " must lie in (0,1), got " + std::to_string(p));
    }
}

double clamped_stationary_alpha(const ChannelConfig& cfg, Probability p) {
    if (p <= 0.0) return 1.0;
    const double raw =
        (cfg.noise_plus_interference_power() * (1.0 - p) - cfg.noise_power()) / (cfg.signal_power() * p);
    return std::clamp(raw, 0.0, 1.0);
}

double single_code_alpha(const ChannelConfig& cfg, Probability p) {
    return cfg.rate_max() * (1.0 - p) > cfg.rate_min() ? 1.0 : 0.0;
}

}  // namespace

std::string_view to_string(CodingMode mode) {
    return mode == CodingMode::Superposition ? "sp" : "single";
}

CodingMode coding_mode_from_string(std::string_view text) {
    if (text == "sp" || text == "superposition") return CodingMode::Superposition;
    if (text == "single" || text == "single-code") return CodingMode::SingleCode;
    throw std::invalid_argument("unknown coding mode '" + std::string(text) + "' (expected sp or single)");
}

Rate capacity(double sinr) {
    if (!std::isfinite(sinr) || sinr < 0.0) {
        throw std::domain_error("capacity: sinr must be finite and nonnegative");
    }
    return 0.5 * std::log2(1.0 + sinr);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

ChannelConfig::ChannelConfig(double p, double n1, double n2, CodingMode mode)
    : signal_power_(p), noise_power_(n1), noise_plus_interference_power_(n2), mode_(mode) {
    if (!(std::isfinite(p) && p > 0.0)) throw std::domain_error("signal power must be positive");
    if (!(std::isfinite(n1) && n1 > 0.0)) throw std::domain_error("noise power N1 must be positive");
    if (!(std::isfinite(n2) && n2 > n1)) {
        throw std::domain_error("noise-plus-interference power N2 must exceed N1");
    }
    rate_max_ = capacity(p / n1);
    rate_min_ = capacity(p / n2);
}

ChannelConfig ChannelConfig::from_linear(double signal_power, double noise_power,
                                         double noise_plus_interference_power, CodingMode mode) {
    return ChannelConfig(signal_power, noise_power, noise_plus_interference_power, mode);
}

ChannelConfig ChannelConfig::from_db(double sinr1_db, double sinr2_db, CodingMode mode) {
    if (!std::isfinite(sinr1_db) || !std::isfinite(sinr2_db)) {
        throw std::domain_error("SINR values must be finite");
    }
    if (!(sinr1_db > sinr2_db)) {
        throw std::domain_error("SINR1 (clean) must exceed SINR2 (interfered)");
    }
    return ChannelConfig(1.0, 1.0 / db_to_linear(sinr1_db), 1.0 / db_to_linear(sinr2_db), mode);
}

ChannelConfig ChannelConfig::with_mode(CodingMode mode) const {
    ChannelConfig copy = *this;
    copy.mode_ = mode;
    return copy;
}

LinkChoice make_link_choice(const ChannelConfig& cfg, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must lie in [0,1]");
    const double p = cfg.signal_power();
    LinkChoice choice;
    choice.alpha = alpha;
    choice.rate_code1 = capacity(alpha * p / cfg.noise_power());
    choice.rate_code2 = capacity((1.0 - alpha) * p / (alpha * p + cfg.noise_plus_interference_power()));
    return choice;
}

double optimal_alpha(const ChannelConfig& cfg, Probability pkn) {
    require_open_unit(pkn, "interference probability");
    return optimal_alpha_for_known_p(cfg, pkn);
}

double optimal_alpha_for_known_p(const ChannelConfig& cfg, Probability p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("interference probability must lie in [0,1]");
    return cfg.coding_mode() == CodingMode::SingleCode ? single_code_alpha(cfg, p)
                                                       : clamped_stationary_alpha(cfg, p);
}

Rate expected_rate(const ChannelConfig& cfg, double alpha, Probability pkn) {
    require_open_unit(pkn, "interference probability");
    const LinkChoice choice = make_link_choice(cfg, alpha);
    return choice.rate_code2 + choice.rate_code1 * (1.0 - pkn);
}

Rate best_expected_rate(const ChannelConfig& cfg, Probability pkn) {
    return expected_rate(cfg, optimal_alpha(cfg, pkn), pkn);
}

Rate known_p_expected_rate(const ChannelConfig& cfg, Probability p) {
    require_open_unit(p, "p");
    return best_expected_rate(cfg, p);
}

}  // namespace sos
