#include "experiment_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>

namespace sos::cli {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "sinr1_db", "sinr2_db", "signal_power", "noise_power", "noise_plus_interference_power",
        "coding",   "T",        "policy",       "max_sense",   "epsilon",
        "open_j",   "replan",   "p_dist",       "trials",      "seed",
        "out",      "trace",    "threads",      "sweep_over",  "sweep_range"};
    return keys;
}

template <typename T>
void read(const json& doc, const char* key, T& target) {
    if (!doc.contains(key)) return;
    try {
        target = doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

template <typename T>
void read(const json& doc, const char* key, std::optional<T>& target) {
    if (!doc.contains(key)) return;
    if (doc.at(key).is_null()) {
        target.reset();
        return;
    }
    T value{};
    read(doc, key, value);
    target = value;
}

template <typename T>
void write(json& doc, const char* key, const std::optional<T>& value) {
    if (value) doc[key] = *value;
}

double parse_double(const std::string& text, const std::string& context) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ConfigError("bad number '" + text + "' in " + context);
    return value;
}

}  // namespace

void ExperimentConfig::validate() const {
    try {
        (void)channel();
        (void)distribution();
        (void)coding_mode_from_string(coding);
        (void)policy_kind_from_string(policy);
        trial_spec().validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (sweep_over != "sense-steps" && sweep_over != "epsilon") {
        throw ConfigError("sweep_over must be sense-steps or epsilon");
    }
    if (sweep_range) (void)parse_range(*sweep_range);
}

ChannelConfig ExperimentConfig::channel() const {
    const CodingMode mode = coding_mode_from_string(coding);
    const bool any_db = sinr1_db || sinr2_db;
    const bool any_linear = signal_power || noise_power || noise_plus_interference_power;
    if (any_db && any_linear) throw ConfigError("give the channel either in dB or as linear powers, not both");
    if (any_linear) {
        if (!(signal_power && noise_power && noise_plus_interference_power)) {
            throw ConfigError("linear channel needs signal_power, noise_power and noise_plus_interference_power");
        }
        return ChannelConfig::from_linear(*signal_power, *noise_power, *noise_plus_interference_power, mode);
    }
    if (!(sinr1_db && sinr2_db)) throw ConfigError("channel needs both sinr1_db and sinr2_db");
    return ChannelConfig::from_db(*sinr1_db, *sinr2_db, mode);
}

PDistribution ExperimentConfig::distribution() const {
    try {
        return PDistribution::parse(p_dist);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

std::uint64_t ExperimentConfig::resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
        std::uint64_t value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw ConfigError(std::string(kSeedEnvVar) + " is not an unsigned integer: " + env);
        }
        return value;
    }
    return 1;
}

TrialSpec ExperimentConfig::trial_spec() const {
    TrialSpec spec;
    spec.horizon = T;
    spec.channel = channel();
    spec.policy.kind = policy_kind_from_string(policy);
    spec.policy.max_sense = max_sense;
    spec.policy.epsilon = epsilon;
    spec.policy.open_sense_steps = open_j;
    spec.policy.replan = replan;
    spec.p_dist = distribution();
    spec.seed = resolved_seed();
    spec.trials = trials;
    return spec;
}

json to_json(const ExperimentConfig& c) {
    json doc = json::object();
    write(doc, "sinr1_db", c.sinr1_db);
    write(doc, "sinr2_db", c.sinr2_db);
    write(doc, "signal_power", c.signal_power);
    write(doc, "noise_power", c.noise_power);
    write(doc, "noise_plus_interference_power", c.noise_plus_interference_power);
    doc["coding"] = c.coding;
    doc["T"] = c.T;
    doc["policy"] = c.policy;
    write(doc, "max_sense", c.max_sense);
    doc["epsilon"] = c.epsilon;
    write(doc, "open_j", c.open_j);
    doc["replan"] = c.replan;
    doc["p_dist"] = c.p_dist;
    doc["trials"] = c.trials;
    write(doc, "seed", c.seed);
    write(doc, "out", c.out);
    doc["trace"] = c.trace;
    doc["threads"] = c.threads;
    doc["sweep_over"] = c.sweep_over;
    write(doc, "sweep_range", c.sweep_range);
    return doc;
}

ExperimentConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (!known_keys().contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    ExperimentConfig c;
    const bool has_linear =
        doc.contains("signal_power") || doc.contains("noise_power") || doc.contains("noise_plus_interference_power");
    if (has_linear && !doc.contains("sinr1_db") && !doc.contains("sinr2_db")) {
        c.sinr1_db.reset();
        c.sinr2_db.reset();
    }
    read(doc, "sinr1_db", c.sinr1_db);
    read(doc, "sinr2_db", c.sinr2_db);
    read(doc, "signal_power", c.signal_power);
    read(doc, "noise_power", c.noise_power);
    read(doc, "noise_plus_interference_power", c.noise_plus_interference_power);
    read(doc, "coding", c.coding);
    read(doc, "T", c.T);
    read(doc, "policy", c.policy);
    read(doc, "max_sense", c.max_sense);
    read(doc, "epsilon", c.epsilon);
    read(doc, "open_j", c.open_j);
    read(doc, "replan", c.replan);
    read(doc, "p_dist", c.p_dist);
    read(doc, "trials", c.trials);
    read(doc, "seed", c.seed);
    read(doc, "out", c.out);
    read(doc, "trace", c.trace);
    read(doc, "threads", c.threads);
    read(doc, "sweep_over", c.sweep_over);
    read(doc, "sweep_range", c.sweep_range);
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return config_from_json(doc);
}

SweepRange parse_range(const std::string& text) {
    SweepRange range;
    const auto first_colon = text.find(':');
    if (first_colon == std::string::npos) throw ConfigError("range '" + text + "': expected a:b or a:b:step");
    const auto second_colon = text.find(':', first_colon + 1);
    range.first = parse_double(text.substr(0, first_colon), "range");
    if (second_colon == std::string::npos) {
        range.last = parse_double(text.substr(first_colon + 1), "range");
    } else {
        range.last = parse_double(text.substr(first_colon + 1, second_colon - first_colon - 1), "range");
        range.step = parse_double(text.substr(second_colon + 1), "range");
    }
    if (!(range.step > 0.0) || range.last < range.first) {
        throw ConfigError("range '" + text + "': need first <= last and a positive step");
    }
    return range;
}

}  // namespace sos::cli
