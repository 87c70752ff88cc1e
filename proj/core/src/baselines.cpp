#include "sense_or_send/baselines.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "sense_or_send/csv.hpp"

namespace sos {

namespace {

// Known-p rate on the closed interval [0,1].
Rate known_rate(const ChannelConfig& cfg, Probability p) {
    const LinkChoice choice = make_link_choice(cfg, optimal_alpha_for_known_p(cfg, p));
    return choice.rate_code2 + choice.rate_code1 * (1.0 - p);
}

double parse_number(std::string_view text, const std::string& context) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw std::invalid_argument("bad number '" + std::string(text) + "' in " + context);
    return value;
}

}  // namespace

GreedyConfig::GreedyConfig(double eps) : epsilon(eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("epsilon must lie in [0,1]");
}

Action greedy_action(const GreedyConfig& cfg, Probability rng_draw) {
    return rng_draw < cfg.epsilon ? Action::Sense : Action::Communicate;
}

PDistribution PDistribution::uniform(double lo, double hi) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw std::domain_error("uniform p distribution requires 0 <= a < b <= 1");
    }
    return {lo, hi};
}

PDistribution PDistribution::fixed(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("fixed p must lie in [0,1]");
    return {p, p};
}

PDistribution PDistribution::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("p distribution '" + text + "': expected kind:params");
    const std::string kind = text.substr(0, colon);
    const std::string_view params = std::string_view(text).substr(colon + 1);
    if (kind == "fixed") return fixed(parse_number(params, text));
    if (kind == "uniform") {
        const auto comma = params.find(',');
        if (comma == std::string_view::npos) throw std::invalid_argument("p distribution '" + text + "': expected uniform:a,b");
        return uniform(parse_number(params.substr(0, comma), text), parse_number(params.substr(comma + 1), text));
    }
    throw std::invalid_argument("p distribution '" + text + "': unknown kind '" + kind + "'");
}

std::string PDistribution::to_string() const {
    if (is_fixed()) return "fixed:" + format_double(lo_);
    return "uniform:" + format_double(lo_) + "," + format_double(hi_);
}

double known_p_policy_value(const ChannelConfig& cfg, std::int64_t horizon, const PDistribution& dist,
                            int intervals) {
    if (horizon < 0) throw std::domain_error("horizon must be nonnegative");
    const auto t = static_cast<double>(horizon);
    if (dist.is_fixed()) return t * known_rate(cfg, dist.lo());
    if (intervals < 2 || intervals % 2 != 0) throw std::domain_error("Simpson quadrature needs an even interval count");

    const double a = dist.lo();
    const double b = dist.hi();
    const double h = (b - a) / intervals;
    double sum = known_rate(cfg, a) + known_rate(cfg, b);
    for (int idx = 1; idx < intervals; ++idx) {
        sum += (idx % 2 == 1 ? 4.0 : 2.0) * known_rate(cfg, a + h * idx);
    }
    const double integral = sum * h / 3.0;
    return t * integral / (b - a);
}

}  // namespace sos
