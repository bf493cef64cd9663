// d2dshare command-line front end.
//
//   d2dshare run    --experiment <trial|sweep-links|sweep-utilization|sweep-range> ...
//   d2dshare plot   <sweep.csv | sinr_samples.csv> --out chart.svg
//   d2dshare verify <instance.txt>
//
// `run` writes trial_log.csv, sweep.csv, sinr_samples.csv and manifest.json
// into --out-dir. Exit codes: 0 success, 1 runtime failure, 2 usage/config
// error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2dshare/config_io.hpp"
#include "d2dshare/experiment.hpp"
#include "d2dshare/heuristics.hpp"
#include "d2dshare/solver.hpp"
#include "svg_chart.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "d2dshare 1.0.0";

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct RunArgs {
    std::string config_path;
    std::string experiment;
    int trials = 1000;
    bool fast = false;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
};

int cmd_run(const RunArgs& args) {
    json cfg_json;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << args.config_path << "\n";
            return 2;
        }
        try {
            cfg_json = json::parse(in);
        } catch (const json::parse_error& e) {
            std::cerr << "error: " << args.config_path << ": " << e.what() << "\n";
            return 2;
        }
    } else {
        cfg_json = d2dshare::config_to_json(d2dshare::ScenarioConfig{});
    }

    d2dshare::ScenarioConfig cfg;
    try {
        for (const auto& kv : args.overrides) d2dshare::apply_override(cfg_json, kv);
        if (args.seed) cfg_json["rng_seed"] = *args.seed;
        cfg = d2dshare::config_from_json(cfg_json);
    } catch (const d2dshare::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    int trials = args.fast ? 200 : args.trials;
    d2dshare::RelaxPolicy relax{true};

    d2dshare::SweepResult sweep;
    try {
        if (args.experiment == "trial") {
            sweep.axis = "num_links";
            sweep.points.push_back(d2dshare::aggregate_point(
                cfg.num_d2d_links, d2dshare::run_trials(cfg, trials, relax)));
        } else if (args.experiment == "sweep-links") {
            sweep = d2dshare::sweep_links(cfg, {10, 16, 20, 30, 40}, trials, relax);
        } else if (args.experiment == "sweep-utilization") {
            sweep = d2dshare::sweep_utilization(cfg, {0.2, 0.4, 0.6, 0.8, 1.0}, trials, relax);
        } else if (args.experiment == "sweep-range") {
            sweep = d2dshare::sweep_range(cfg, {25, 50, 75, 100, 125, 150}, trials, relax);
        } else {
            std::cerr << "error: unknown experiment '" << args.experiment << "'\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    bool any_feasible = false;
    for (const auto& pt : sweep.points)
        for (const auto& m : pt.methods)
            if (m.n_feasible > 0) any_feasible = true;
    if (!any_feasible) {
        std::cerr << "error: no feasible trial in any sweep point; check thresholds\n";
        return 1;
    }

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    auto out = [&](const char* name) { return (fs::path(args.out_dir) / name).string(); };

    std::string started = iso_timestamp();
    {
        std::ofstream f(out("trial_log.csv"));
        d2dshare::write_trial_log_csv(f, sweep);
    }
    {
        std::ofstream f(out("sweep.csv"));
        d2dshare::write_sweep_csv(f, sweep);
    }
    {
        std::ofstream f(out("sinr_samples.csv"));
        d2dshare::write_sinr_samples_csv(f, sweep);
    }
    {
        json manifest;
        manifest["tool_version"] = kToolVersion;
        manifest["experiment"] = args.experiment;
        manifest["trials"] = trials;
        manifest["seed"] = cfg.rng_seed;
        manifest["config"] = d2dshare::config_to_json(cfg);
        manifest["started"] = started;
        manifest["finished"] = iso_timestamp();
        manifest["outputs"] = {out("trial_log.csv"), out("sweep.csv"), out("sinr_samples.csv")};
        std::ofstream f(out("manifest.json"));
        f << manifest.dump(2) << "\n";
    }
    std::cout << "wrote " << out("trial_log.csv") << ", " << out("sweep.csv") << ", "
              << out("sinr_samples.csv") << ", " << out("manifest.json") << "\n";
    return 0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

int cmd_plot(const std::string& csv_path, const std::string& out_path) {
    std::ifstream in(csv_path);
    if (!in) {
        std::cerr << "error: cannot open " << csv_path << "\n";
        return 1;
    }
    std::string header;
    std::getline(in, header);
    auto cols = split_csv_line(header);

    auto col_index = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return static_cast<int>(i);
        return -1;
    };

    bool is_sweep = col_index("mean_sum_rate_bps") >= 0;
    bool is_sinr = col_index("sinr_db") >= 0;
    if (!is_sweep && !is_sinr) {
        std::cerr << "error: unrecognized CSV schema in " << csv_path << "\n";
        return 1;
    }

    std::ofstream svg(out_path);
    if (!svg) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 1;
    }

    if (is_sweep) {
        int c_axis = col_index("axis"), c_val = col_index("axis_value"),
            c_method = col_index("method"), c_mean = col_index("mean_sum_rate_bps"),
            c_ci = col_index("ci95_bps");
        std::map<std::string, d2dshare::plot::Series> series;
        std::string axis_name = "axis";
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto f = split_csv_line(line);
            axis_name = f[c_axis];
            auto& s = series[f[c_method]];
            s.label = f[c_method];
            s.x.push_back(std::stod(f[c_val]));
            s.y.push_back(std::stod(f[c_mean]) / 1e6);
            s.err.push_back(std::stod(f[c_ci]) / 1e6);
            ++rows;
        }
        if (rows == 0) {
            std::cerr << "error: " << csv_path << " has no data rows\n";
            return 1;
        }
        d2dshare::plot::LineChart chart("Sum-rate vs " + axis_name, axis_name,
                                        "mean sum-rate (Mbit/s)");
        for (auto& [name, s] : series) chart.add_series(std::move(s));
        chart.render(svg);
    } else {
        int c_method = col_index("method"), c_kind = col_index("kind"),
            c_sinr = col_index("sinr_db");
        std::map<std::string, std::vector<double>> samples;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto f = split_csv_line(line);
            if (f[c_kind] != "effective") continue;
            samples[f[c_method]].push_back(std::stod(f[c_sinr]));
        }
        if (samples.empty()) {
            std::cerr << "error: " << csv_path << " has no effective-SINR rows\n";
            return 1;
        }
        d2dshare::plot::LineChart chart("D2D SINR CDF", "SINR (dB)", "CDF");
        for (auto& [name, vals] : samples) {
            std::sort(vals.begin(), vals.end());
            d2dshare::plot::Series s;
            s.label = name;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                s.x.push_back(vals[i]);
                s.y.push_back(static_cast<double>(i + 1) / static_cast<double>(vals.size()));
            }
            chart.add_series(std::move(s));
        }
        chart.render(svg);
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_verify(const std::string& instance_path) {
    std::ifstream in(instance_path);
    if (!in) {
        std::cerr << "error: cannot open " << instance_path << "\n";
        return 1;
    }
    d2dshare::AllocationProblem p;
    try {
        p = d2dshare::load_problem(in);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    auto report = [&](const char* name, const d2dshare::Allocation& a) {
        std::cout << name << ": status=" << d2dshare::to_string(a.status)
                  << " objective=" << a.objective_bps;
        auto violations = d2dshare::verify(a, p);
        if (a.status == d2dshare::AllocStatus::optimal ||
            a.status == d2dshare::AllocStatus::feasible) {
            std::cout << " violations=" << violations.size();
            for (const auto& v : violations) std::cout << "\n    " << v;
        }
        std::cout << "\n";
    };

    auto [exact, stats] = d2dshare::solve_exact(p);
    report("solve_exact", exact);
    std::cout << "  nodes=" << stats.nodes_explored << " wall_time_s=" << stats.wall_time_s
              << "\n";

    if (p.num_links() <= 5 && p.num_rbs() <= 10) {
        auto oracle = d2dshare::solve_oracle(p);
        report("solve_oracle", oracle);
        bool match = std::fabs(oracle.objective_bps - exact.objective_bps) <=
                     1e-9 * std::max(1.0, std::fabs(oracle.objective_bps));
        std::cout << "oracle match: " << (match ? "yes" : "NO") << "\n";
    } else {
        std::cout << "solve_oracle: skipped (instance exceeds 5 links x 10 RBs guard)\n";
    }

    // Heuristic over the fused view; receiver slices alternate by row.
    std::vector<d2dshare::TenantId> receivers(p.links.size());
    for (std::size_t i = 0; i < receivers.size(); ++i) receivers[i] = i % 2;
    report("inter_tenant_heuristic", d2dshare::inter_tenant_heuristic(p, receivers).first);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inter-tenant D2D resource sharing simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Execute an experiment and write CSV + manifest");
    run->add_option("--config", run_args.config_path, "Config JSON file (defaults built in)");
    run->add_option("--experiment", run_args.experiment,
                    "trial | sweep-links | sweep-utilization | sweep-range")
        ->required();
    run->add_option("--trials", run_args.trials, "Monte Carlo trials per sweep point");
    run->add_flag("--fast", run_args.fast, "Shortcut for 200 trials per point");
    std::uint64_t seed_val = 0;
    auto* seed_opt = run->add_option("--seed", seed_val, "Override rng_seed");
    run->add_option("--set", run_args.overrides, "Config override key=value (repeatable)");
    run->add_option("--out-dir", run_args.out_dir, "Output directory");

    std::string plot_csv, plot_out = "chart.svg";
    auto* plot = app.add_subcommand("plot", "Render a sweep or SINR-sample CSV as SVG");
    plot->add_option("csv", plot_csv, "Input CSV")->required();
    plot->add_option("--out", plot_out, "Output SVG path");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Cross-check a serialized problem instance");
    verify->add_option("instance", verify_path, "Instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            if (seed_opt->count()) run_args.seed = seed_val;
            return cmd_run(run_args);
        }
        if (plot->parsed()) return cmd_plot(plot_csv, plot_out);
        if (verify->parsed()) return cmd_verify(verify_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
