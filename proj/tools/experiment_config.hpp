#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "sense_or_send/sim.hpp"

namespace sos::cli {

/// Raised for anything wrong with the user's configuration (bad keys,
/// out-of-range values, malformed flags). Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

inline constexpr const char* kSeedEnvVar = "SENSE_OR_SEND_SEED";

/// Everything a subcommand needs. JSON keys match the field names.
struct ExperimentConfig {
    // Channel: either dB (signal power 1) or linear powers.
    std::optional<double> sinr1_db = 15.0;
    std::optional<double> sinr2_db = 10.0;
    std::optional<double> signal_power;
    std::optional<double> noise_power;
    std::optional<double> noise_plus_interference_power;
    std::string coding = "sp";

    std::int64_t T = 1000;
    std::string policy = "closed";
    std::optional<std::int64_t> max_sense;
    double epsilon = 0.01;
    std::optional<std::int64_t> open_j;
    bool replan = false;

    std::string p_dist = "uniform:0,1";
    std::int64_t trials = 1000;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool trace = false;
    unsigned threads = 0;

    std::string sweep_over = "sense-steps";
    std::optional<std::string> sweep_range;

    /// Throws ConfigError unless every field is consistent.
    void validate() const;

    ChannelConfig channel() const;
    PDistribution distribution() const;
    /// Seed from the config, else $SENSE_OR_SEND_SEED, else 1.
    std::uint64_t resolved_seed() const;
    TrialSpec trial_spec() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
/// Rejects unknown keys and wrong types with ConfigError, then validates.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

struct SweepRange {
    double first = 0.0;
    double last = 0.0;
    double step = 1.0;
};

/// "a:b" (unit step) or "a:b:step".
SweepRange parse_range(const std::string& text);

}  // namespace sos::cli
