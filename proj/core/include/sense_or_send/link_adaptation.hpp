#pragma once

// Channel model and link adaptation for a slot that is either clean
// (noise N1) or interfered (noise N2 = N + I).
//
// Rates are Shannon capacities in bits per slot. The transmitter sends the
// sum of two codewords: a fragile one at power alpha*P that only decodes
// when the slot is clean, and a robust one at power (1-alpha)*P that
// always decodes. SingleCode restricts alpha to {0, 1}.

#include <string_view>

namespace sos {

using Rate = double;
using Probability = double;

enum class CodingMode { Superposition, SingleCode };

std::string_view to_string(CodingMode mode);
/// Accepts "sp"/"superposition" and "single"/"single-code".
CodingMode coding_mode_from_string(std::string_view text);

/// Shannon capacity 0.5*log2(1+sinr). Throws std::domain_error on negative
/// or non-finite input.
Rate capacity(double sinr);

double db_to_linear(double db);

class ChannelConfig {
public:
    /// Linear powers. Requires P > 0, N1 > 0 and N2 > N1.
    static ChannelConfig from_linear(double signal_power, double noise_power,
                                     double noise_plus_interference_power,
                                     CodingMode mode = CodingMode::Superposition);
    /// SINRs in dB with the signal power normalized to 1.
    static ChannelConfig from_db(double sinr1_db, double sinr2_db,
                                 CodingMode mode = CodingMode::Superposition);

    double signal_power() const { return signal_power_; }
    double noise_power() const { return noise_power_; }
    double noise_plus_interference_power() const { return noise_plus_interference_power_; }
    CodingMode coding_mode() const { return mode_; }

    double sinr_clean() const { return signal_power_ / noise_power_; }
    double sinr_interfered() const { return signal_power_ / noise_plus_interference_power_; }
    Rate rate_max() const { return rate_max_; }
    Rate rate_min() const { return rate_min_; }

    ChannelConfig with_mode(CodingMode mode) const;

private:
    ChannelConfig(double p, double n1, double n2, CodingMode mode);

    double signal_power_;
    double noise_power_;
    double noise_plus_interference_power_;
    CodingMode mode_;
    Rate rate_max_;
    Rate rate_min_;
};

/// Power split and the component rates it yields.
struct LinkChoice {
    double alpha = 0.0;
    Rate rate_code1 = 0.0;  // fragile code, decodes only without interference
    Rate rate_code2 = 0.0;  // robust code, always decodes

    /// Rate delivered in one slot given the interferer state.
    Rate realized(bool interferer_active) const {
        return interferer_active ? rate_code2 : rate_code2 + rate_code1;
    }
};

LinkChoice make_link_choice(const ChannelConfig& cfg, double alpha);

/// Power split maximizing the expected rate when the interferer is active
/// with probability `pkn`. Superposition uses the clamped stationary point;
/// SingleCode picks 0 or 1 (0 on ties). Requires pkn in (0,1).
double optimal_alpha(const ChannelConfig& cfg, Probability pkn);

/// R2(alpha) + R1(alpha)*(1-pkn). Requires alpha in [0,1] and pkn in (0,1).
Rate expected_rate(const ChannelConfig& cfg, double alpha, Probability pkn);

/// expected_rate at optimal_alpha: the short-term reward of communicating.
Rate best_expected_rate(const ChannelConfig& cfg, Probability pkn);

/// Same rule as optimal_alpha but defined on the closed interval [0,1]; used
/// by the known-p policy where the simulator may fix p at 0 or 1.
double optimal_alpha_for_known_p(const ChannelConfig& cfg, Probability p);

/// Best expected rate when p itself is known. Requires p in (0,1).
Rate known_p_expected_rate(const ChannelConfig& cfg, Probability p);

}  // namespace sos
