#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "sense_or_send/csv.hpp"

namespace sos::cli {

namespace {

std::vector<double> expand(const SweepRange& range) {
    const auto count = static_cast<std::size_t>(std::floor((range.last - range.first) / range.step + 1e-9)) + 1;
    std::vector<double> values(count);
    for (std::size_t idx = 0; idx < count; ++idx) values[idx] = range.first + range.step * static_cast<double>(idx);
    return values;
}

int sweep_sense_steps(const ExperimentConfig& config, std::ostream& csv, std::ostream& summary) {
    const ChannelConfig channel = config.channel();
    const std::int64_t horizon = config.T;
    const SweepRange range =
        parse_range(config.sweep_range.value_or("0:" + std::to_string(std::min<std::int64_t>(horizon, 60))));
    const OpenLoopPlan open = optimal_open_loop({0, 0}, horizon, channel);

    csv << "sense_steps,open_loop_value,closed_loop_value\n";
    for (double raw : expand(range)) {
        const auto j = static_cast<std::int64_t>(std::llround(raw));
        if (j < 0 || j > horizon) throw ConfigError("sweep value " + std::to_string(j) + " outside [0, T]");
        const DecisionTable table = reduced_trellis_solve({0, 0, 0}, horizon, channel, j);
        CsvRow(csv) << j << open.gain_profile[static_cast<std::size_t>(j)].value << table.root_value();
    }
    const double closed = reduced_trellis_solve({0, 0, 0}, horizon, channel).root_value();
    summary << "known_p_value=" << format_double(known_p_policy_value(channel, horizon, config.distribution()))
            << " closed_loop_value=" << format_double(closed) << " open_loop_value=" << format_double(open.expected_gain)
            << " open_loop_j_star=" << open.sense_steps << '\n';
    return kExitOk;
}

int sweep_epsilon(const ExperimentConfig& config, std::ostream& csv, std::ostream& summary) {
    const SweepRange range = parse_range(config.sweep_range.value_or("0:0.1:0.01"));
    TrialSpec spec = config.trial_spec();
    spec.policy.kind = PolicyKind::Greedy;

    csv << "epsilon,mean_total_rate,standard_error\n";
    double best_eps = 0.0;
    double best_mean = -1.0;
    for (double eps : expand(range)) {
        spec.policy.epsilon = eps;
        const BatchResult batch = Simulator(spec).run_batch(config.threads);
        CsvRow(csv) << eps << batch.mean_total_rate << batch.standard_error;
        if (batch.mean_total_rate > best_mean) {
            best_mean = batch.mean_total_rate;
            best_eps = eps;
        }
    }
    summary << "best_epsilon=" << format_double(best_eps) << " best_mean_total_rate=" << format_double(best_mean)
            << '\n';
    return kExitOk;
}

}  // namespace

int cmd_solve_open(const CommandOptions& options, std::ostream& csv, std::ostream& summary) {
    const ExperimentConfig& config = options.config;
    const OpenLoopPlan plan = optimal_open_loop({0, 0}, config.T, config.channel());
    csv << "j,g,value\n";
    for (const auto& point : plan.gain_profile) CsvRow(csv) << point.j << point.g << point.value;
    summary << "j_star=" << plan.sense_steps << " expected_gain=" << format_double(plan.expected_gain) << '\n';
    return kExitOk;
}

int cmd_solve_closed(const CommandOptions& options, std::ostream& csv, std::ostream& summary) {
    const ExperimentConfig& config = options.config;
    const ChannelConfig channel = config.channel();
    const DecisionTable table = reduced_trellis_solve({0, 0, 0}, config.T, channel, config.max_sense);

    csv << "j,m,k,n,i,stop_value,continue_value,value,decision\n";
    for (std::int64_t j = 0; j <= table.depth(); ++j) {
        for (std::int64_t m = 0; m <= j; ++m) {
            const TrellisNode& node = table.node(j, m);
            const MdpState s = table.state_at(j, m);
            CsvRow(csv) << j << m << s.k << s.n << s.i << node.stop_value << node.continue_value << node.value
                        << to_string(node.decision);
        }
    }
    summary << "root_value=" << format_double(table.root_value());
    if (options.oracle) {
        const FullSolution full = full_backward_induction(config.T, channel);
        summary << " oracle_value=" << format_double(full.root_value())
                << " oracle_abs_diff=" << format_double(std::abs(full.root_value() - table.root_value()));
    }
    summary << '\n';
    return kExitOk;
}

int cmd_simulate(const CommandOptions& options, std::ostream& csv, std::ostream& summary) {
    const ExperimentConfig& config = options.config;
    const Simulator sim(config.trial_spec());
    if (config.trace) {
        const TrialOutcome outcome = sim.run_trial(0, true);
        write_trajectory_csv(csv, *outcome.trajectory);
        summary << "p=" << format_double(outcome.record.p) << " total_rate=" << format_double(outcome.record.total_rate)
                << " sense_slots=" << outcome.record.sense_slots << " switch_slot="
                << (outcome.record.switch_slot ? std::to_string(*outcome.record.switch_slot) : std::string("none"))
                << '\n';
        return kExitOk;
    }
    const BatchResult batch = sim.run_batch(config.threads);
    write_trials_csv(csv, batch.trials);
    summary << "policy=" << config.policy << " trials=" << batch.trials.size()
            << " mean_total_rate=" << format_double(batch.mean_total_rate)
            << " standard_error=" << format_double(batch.standard_error) << '\n';
    return kExitOk;
}

int cmd_sweep(const CommandOptions& options, std::ostream& csv, std::ostream& summary) {
    if (options.config.sweep_over == "epsilon") return sweep_epsilon(options.config, csv, summary);
    return sweep_sense_steps(options.config, csv, summary);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sensing vs. communication policy engine and simulator", "sense_or_send"};
    app.fallthrough();
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::int64_t> horizon, max_sense, trials, open_j;
    std::optional<double> sinr1_db, sinr2_db, epsilon;
    std::optional<std::string> coding, policy, p_dist, out_path, over, range;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    bool trace = false;
    bool replan = false;
    bool oracle = false;

    app.add_option("--config", config_path, "JSON experiment config");
    app.add_option("--T", horizon, "Horizon in slots");
    app.add_option("--sinr1-db", sinr1_db, "SINR without interference (dB)");
    app.add_option("--sinr2-db", sinr2_db, "SINR with interference (dB)");
    app.add_option("--coding", coding, "sp or single")->check(CLI::IsMember({"sp", "single"}));
    app.add_option("--policy", policy, "open, closed, greedy or known-p")
        ->check(CLI::IsMember({"open", "closed", "greedy", "known-p"}));
    app.add_option("--max-sense", max_sense, "Closed-loop cap on sensing steps");
    app.add_option("--epsilon", epsilon, "Greedy exploration probability");
    app.add_option("--open-j", open_j, "Open-loop: fixed number of sensing steps");
    app.add_flag("--replan", replan, "Open-loop: re-plan every slot while sensing");
    app.add_option("--p-dist", p_dist, "uniform:a,b or fixed:p");
    app.add_option("--trials", trials, "Monte Carlo trials");
    app.add_option("--seed", seed, "Base seed (fallback: $SENSE_OR_SEND_SEED, then 1)");
    app.add_option("--out", out_path, "CSV output path (default stdout)");
    app.add_flag("--trace", trace, "simulate: single-trial per-slot trajectory");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_option("--over", over, "sweep: sense-steps or epsilon");
    app.add_option("--range", range, "sweep: a:b or a:b:step");
    app.add_flag("--oracle", oracle, "solve-closed: cross-check with full backward induction")->group("");

    auto* solve_open = app.add_subcommand("solve-open", "Open-loop gain profile and optimal sensing steps");
    auto* solve_closed = app.add_subcommand("solve-closed", "Closed-loop decision table and root value");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo evaluation of a policy");
    auto* sweep = app.add_subcommand("sweep", "Value vs. sensing cap, or greedy mean vs. epsilon");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    CommandOptions options;
    options.oracle = oracle;
    try {
        ExperimentConfig& c = options.config;
        if (config_path) c = load_config(*config_path);
        if (sinr1_db || sinr2_db) {
            c.signal_power.reset();
            c.noise_power.reset();
            c.noise_plus_interference_power.reset();
            if (sinr1_db) c.sinr1_db = sinr1_db;
            if (sinr2_db) c.sinr2_db = sinr2_db;
        }
        if (horizon) c.T = *horizon;
        if (coding) c.coding = *coding;
        if (policy) c.policy = *policy;
        if (max_sense) c.max_sense = max_sense;
        if (epsilon) c.epsilon = *epsilon;
        if (open_j) c.open_j = open_j;
        if (replan) c.replan = true;
        if (p_dist) c.p_dist = *p_dist;
        if (trials) c.trials = *trials;
        if (seed) c.seed = seed;
        if (out_path) c.out = out_path;
        if (trace) c.trace = true;
        if (threads) c.threads = *threads;
        if (over) c.sweep_over = *over;
        if (range) c.sweep_range = range;
        c.validate();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::unique_ptr<std::ofstream> file;
    std::ostream* csv = &out;
    std::ostream* summary = &err;
    if (options.config.out) {
        file = std::make_unique<std::ofstream>(*options.config.out);
        if (!*file) {
            err << "error: cannot open output file '" << *options.config.out << "'\n";
            return kExitRuntime;
        }
        csv = file.get();
        summary = &out;
    }

    try {
        int code = kExitOk;
        if (solve_open->parsed()) code = cmd_solve_open(options, *csv, *summary);
        if (solve_closed->parsed()) code = cmd_solve_closed(options, *csv, *summary);
        if (simulate->parsed()) code = cmd_simulate(options, *csv, *summary);
        if (sweep->parsed()) code = cmd_sweep(options, *csv, *summary);
        if (file) {
            file->flush();
            if (!*file) {
                err << "error: failed writing '" << *options.config.out << "'\n";
                return kExitRuntime;
            }
        }
        return code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace sos::cli
