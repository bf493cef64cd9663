#pragma once

// Seeded Monte Carlo harness: per trial, one shared topology/channel
// realization feeds all four allocation methods, so method comparisons use
// common random numbers. Trials run concurrently (each derives its own RNG
// stream from (rng_seed, trial_index)); aggregation is ordered by trial
// index, so concurrency never changes the output.

#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "d2dshare/channel.hpp"
#include "d2dshare/config.hpp"
#include "d2dshare/heuristics.hpp"
#include "d2dshare/problem.hpp"
#include "d2dshare/scheduler.hpp"
#include "d2dshare/solver.hpp"
#include "d2dshare/stats.hpp"
#include "d2dshare/topology.hpp"

namespace d2dshare {

enum class Method : int {
    inter_optimal = 0,
    inter_heuristic = 1,
    intra_optimal = 2,
    intra_heuristic = 3,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::inter_optimal: return "inter_optimal";
        case Method::inter_heuristic: return "inter_heuristic";
        case Method::intra_optimal: return "intra_optimal";
        case Method::intra_heuristic: return "intra_heuristic";
    }
    return "?";
}

constexpr std::array<Method, 4> kAllMethods = {Method::inter_optimal, Method::inter_heuristic,
                                               Method::intra_optimal, Method::intra_heuristic};

struct MethodResult {
    double objective_bps = 0.0;
    bool feasible = false;
    bool relaxed = false;  // links were dropped to reach feasibility
    double wall_time_s = 0.0;
    int links_served = 0;
    /// One rate-equivalent SINR sample per served link (dB):
    /// gamma_eff = 2^(r_tot / (m * B_RB)) - 1, m = RBs held.
    std::vector<double> eff_sinr_db;
    /// One sample per assigned RB (dB), the raw per-RB receive SINR.
    std::vector<double> per_rb_sinr_db;
};

struct TrialResult {
    std::uint64_t trial_index = 0;
    std::uint64_t derived_seed = 0;
    int num_links = 0;
    double mean_link_length_m = 0.0;
    std::array<MethodResult, 4> methods;
};

/// Full per-trial state, for tests that need the allocations themselves.
struct TrialDetail {
    Topology topology;
    CueSchedule schedule;
    ChannelRealization channel;
    AllocationProblem fused_problem;  // over all links
    std::array<Allocation, 4> allocations;
    TrialResult result;
};

struct RelaxPolicy {
    /// When true, an infeasible method reruns with the weakest link (lowest
    /// best single-RB rate) dropped, repeatedly, until feasible or empty.
    bool drop_links = false;
};

namespace detail {

inline std::vector<double> link_sinr_samples(const Allocation& a, const ChannelRealization& ch,
                                             bool per_rb) {
    std::vector<double> out;
    for (const auto& [link, rbs] : a.assigned) {
        if (rbs.empty()) continue;
        if (per_rb) {
            for (RbId rb : rbs) out.push_back(linear_to_db(d2d_sinr(ch, link, rb)));
        } else {
            double r_tot = 0.0;
            for (RbId rb : rbs) r_tot += ch.rate_table[link][rb];
            double m = static_cast<double>(rbs.size());
            double eff = std::pow(2.0, r_tot / (m * ch.rb_bandwidth_hz)) - 1.0;
            out.push_back(linear_to_db(eff));
        }
    }
    return out;
}

/// Drops the weakest link (smallest best-rate over the fused table) from
/// `links`; returns false when nothing remains to drop.
inline bool drop_weakest(std::vector<LinkId>& links, const ChannelRealization& ch) {
    if (links.empty()) return false;
    std::size_t worst = 0;
    double worst_best = -1.0;
    for (std::size_t j = 0; j < links.size(); ++j) {
        double best = 0.0;
        for (double r : ch.rate_table[links[j]]) best = std::max(best, r);
        if (worst_best < 0.0 || best < worst_best) {
            worst_best = best;
            worst = j;
        }
    }
    links.erase(links.begin() + worst);
    return true;
}

inline bool is_feasible(AllocStatus s) {
    return s == AllocStatus::optimal || s == AllocStatus::feasible;
}

/// Runs `run` on a shrinking link set until it returns a feasible
/// allocation. Records whether relaxation was used.
inline MethodResult run_with_relaxation(const ChannelRealization& ch, std::vector<LinkId> links,
                                        const RelaxPolicy& relax,
                                        const std::function<Allocation(const std::vector<LinkId>&)>& run,
                                        Allocation* out_alloc) {
    MethodResult mr;
    auto t0 = std::chrono::steady_clock::now();
    Allocation a;
    bool relaxed = false;
    for (;;) {
        if (links.empty()) {
            a = Allocation{};
            a.status = AllocStatus::infeasible;
            break;
        }
        a = run(links);
        if (is_feasible(a.status)) break;
        if (!relax.drop_links) break;
        drop_weakest(links, ch);
        relaxed = true;
    }
    mr.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    mr.feasible = is_feasible(a.status);
    mr.relaxed = relaxed && mr.feasible;
    mr.objective_bps = mr.feasible ? a.objective_bps : 0.0;
    mr.links_served = static_cast<int>(links.size());
    if (mr.feasible) {
        mr.eff_sinr_db = link_sinr_samples(a, ch, false);
        mr.per_rb_sinr_db = link_sinr_samples(a, ch, true);
    }
    if (out_alloc) *out_alloc = a;
    return mr;
}

}  // namespace detail

/// One Monte Carlo trial: topology, CUE schedule, channel realization, then
/// all four methods on the same realization.
inline TrialDetail run_trial_detailed(const ScenarioConfig& cfg, std::uint64_t trial_index,
                                      const RelaxPolicy& relax = {},
                                      const SolveOptions& solve_opts = {}) {
    cfg.validate();
    TrialDetail d;
    d.result.trial_index = trial_index;
    d.result.derived_seed = Rng::derive(cfg.rng_seed, trial_index);

    Rng topo_rng(Rng::derive(d.result.derived_seed, 0));
    d.topology = generate_topology(cfg, topo_rng);
    d.schedule = schedule_cues(d.topology, cfg, trial_index);
    Rng chan_rng(Rng::derive(d.result.derived_seed, 1));
    d.channel = build_rate_table(d.topology, d.schedule, cfg, chan_rng);

    d.result.num_links = cfg.num_d2d_links;
    if (cfg.num_d2d_links > 0) {
        double len = 0.0;
        for (const auto& l : d.topology.d2d_links) len += l.length_m();
        d.result.mean_link_length_m = len / cfg.num_d2d_links;
    }

    std::vector<LinkId> all_links(cfg.num_d2d_links);
    for (int i = 0; i < cfg.num_d2d_links; ++i) all_links[i] = i;
    if (all_links.empty()) return d;

    d.fused_problem = build_problem(d.channel, d.topology, ProblemScope::fused(), all_links,
                                    cfg.l_max, cfg.r_th_bps);

    auto receiver_tenants = [&](const std::vector<LinkId>& links) {
        std::vector<TenantId> rt(links.size());
        for (std::size_t j = 0; j < links.size(); ++j)
            rt[j] = d.topology.d2d_links[links[j]].receiver_tenant;
        return rt;
    };

    auto& res = d.result.methods;
    res[0] = detail::run_with_relaxation(
        d.channel, all_links, relax,
        [&](const std::vector<LinkId>& links) {
            auto p = build_problem(d.channel, d.topology, ProblemScope::fused(), links, cfg.l_max,
                                   cfg.r_th_bps);
            return solve_exact(p, solve_opts).first;
        },
        &d.allocations[0]);
    res[1] = detail::run_with_relaxation(
        d.channel, all_links, relax,
        [&](const std::vector<LinkId>& links) {
            auto p = build_problem(d.channel, d.topology, ProblemScope::fused(), links, cfg.l_max,
                                   cfg.r_th_bps);
            return inter_tenant_heuristic(p, receiver_tenants(links)).first;
        },
        &d.allocations[1]);
    res[2] = detail::run_with_relaxation(
        d.channel, all_links, relax,
        [&](const std::vector<LinkId>& links) {
            return intra_tenant_optimal(d.channel, d.topology, links, cfg.l_max, cfg.r_th_bps,
                                        solve_opts)
                .combined;
        },
        &d.allocations[2]);
    res[3] = detail::run_with_relaxation(
        d.channel, all_links, relax,
        [&](const std::vector<LinkId>& links) {
            return intra_tenant_heuristic(d.channel, d.topology, links, cfg.l_max, cfg.r_th_bps)
                .combined;
        },
        &d.allocations[3]);
    return d;
}

inline TrialResult run_trial(const ScenarioConfig& cfg, std::uint64_t trial_index,
                             const RelaxPolicy& relax = {}) {
    return run_trial_detailed(cfg, trial_index, relax).result;
}

// ---- sweeps ----

struct MethodAggregate {
    double mean_bps = 0.0;
    double ci95_bps = 0.0;
    int n_feasible = 0;
    int n_relaxed = 0;
    double mean_wall_time_s = 0.0;
    std::vector<double> pooled_eff_sinr_db;
    std::vector<double> pooled_per_rb_sinr_db;
};

struct SweepPoint {
    double axis_value = 0.0;
    std::array<MethodAggregate, 4> methods;
    std::vector<TrialResult> trials;
};

struct SweepResult {
    std::string axis;  // num_links | utilization_b | max_range_m
    std::vector<SweepPoint> points;
};

inline std::vector<TrialResult> run_trials(const ScenarioConfig& cfg, int trials,
                                           const RelaxPolicy& relax = {}, int num_threads = 0) {
    std::vector<TrialResult> results(trials);
    if (num_threads <= 0)
        num_threads = static_cast<int>(std::thread::hardware_concurrency());
    num_threads = std::max(1, std::min(num_threads, trials));
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int w = 0; w < num_threads; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                int t = next.fetch_add(1);
                if (t >= trials) return;
                results[t] = run_trial(cfg, static_cast<std::uint64_t>(t), relax);
            }
        });
    }
    for (auto& th : workers) th.join();
    return results;
}

inline SweepPoint aggregate_point(double axis_value, std::vector<TrialResult> trials) {
    SweepPoint pt;
    pt.axis_value = axis_value;
    for (int m = 0; m < 4; ++m) {
        std::vector<double> objectives, times;
        auto& agg = pt.methods[m];
        for (const auto& tr : trials) {
            const auto& mr = tr.methods[m];
            times.push_back(mr.wall_time_s);
            if (!mr.feasible) continue;
            ++agg.n_feasible;
            if (mr.relaxed) ++agg.n_relaxed;
            objectives.push_back(mr.objective_bps);
            agg.pooled_eff_sinr_db.insert(agg.pooled_eff_sinr_db.end(), mr.eff_sinr_db.begin(),
                                          mr.eff_sinr_db.end());
            agg.pooled_per_rb_sinr_db.insert(agg.pooled_per_rb_sinr_db.end(),
                                             mr.per_rb_sinr_db.begin(), mr.per_rb_sinr_db.end());
        }
        if (!objectives.empty()) {
            agg.mean_bps = mean(objectives);
            agg.ci95_bps = ci95_halfwidth(objectives);
        }
        if (!times.empty()) agg.mean_wall_time_s = mean(times);
    }
    pt.trials = std::move(trials);
    return pt;
}

/// Sum-rate vs number of D2D links.
inline SweepResult sweep_links(ScenarioConfig cfg, const std::vector<int>& values, int trials,
                               const RelaxPolicy& relax = {}) {
    SweepResult sweep;
    sweep.axis = "num_links";
    for (int v : values) {
        cfg.num_d2d_links = v;
        sweep.points.push_back(aggregate_point(v, run_trials(cfg, trials, relax)));
    }
    return sweep;
}

/// Sum-rate vs tenant B's utilization; tenant A stays at its configured
/// level (full occupancy in the published comparison).
inline SweepResult sweep_utilization(ScenarioConfig cfg, const std::vector<double>& values,
                                     int trials, const RelaxPolicy& relax = {}) {
    SweepResult sweep;
    sweep.axis = "utilization_b";
    for (double v : values) {
        cfg.cue_utilization[1] = v;
        sweep.points.push_back(aggregate_point(v, run_trials(cfg, trials, relax)));
    }
    return sweep;
}

/// Sum-rate vs maximum allowed D2D link range (meters).
inline SweepResult sweep_range(ScenarioConfig cfg, const std::vector<double>& values, int trials,
                               const RelaxPolicy& relax = {}) {
    SweepResult sweep;
    sweep.axis = "max_range_m";
    for (double v : values) {
        cfg.max_d2d_range_m = v;
        sweep.points.push_back(aggregate_point(v, run_trials(cfg, trials, relax)));
    }
    return sweep;
}

inline EmpiricalCdf sinr_cdf(const std::vector<double>& samples_db) {
    return EmpiricalCdf(samples_db);
}

// ---- CSV output ----
//
// Doubles are printed with %.9g so re-running a sweep with the same seed
// reproduces files byte for byte.

inline std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Wall-clock timings are deliberately left out of the CSVs: everything
// written here is a pure function of (config, seed), so re-runs match byte
// for byte.
inline void write_trial_log_csv(std::ostream& os, const SweepResult& sweep) {
    os << "axis,axis_value,trial,seed,method,objective_bps,feasible,relaxed,links_served\n";
    for (const auto& pt : sweep.points) {
        for (const auto& tr : pt.trials) {
            for (int m = 0; m < 4; ++m) {
                const auto& mr = tr.methods[m];
                os << sweep.axis << ',' << csv_double(pt.axis_value) << ',' << tr.trial_index << ','
                   << tr.derived_seed << ',' << method_name(static_cast<Method>(m)) << ','
                   << csv_double(mr.objective_bps) << ',' << (mr.feasible ? 1 : 0) << ','
                   << (mr.relaxed ? 1 : 0) << ',' << mr.links_served << '\n';
            }
        }
    }
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << "axis,axis_value,method,mean_sum_rate_bps,ci95_bps,n_feasible,n_relaxed\n";
    for (const auto& pt : sweep.points) {
        for (int m = 0; m < 4; ++m) {
            const auto& agg = pt.methods[m];
            os << sweep.axis << ',' << csv_double(pt.axis_value) << ','
               << method_name(static_cast<Method>(m)) << ',' << csv_double(agg.mean_bps) << ','
               << csv_double(agg.ci95_bps) << ',' << agg.n_feasible << ',' << agg.n_relaxed << '\n';
        }
    }
}

inline void write_sinr_samples_csv(std::ostream& os, const SweepResult& sweep) {
    os << "axis,axis_value,method,kind,sinr_db\n";
    for (const auto& pt : sweep.points) {
        for (int m = 0; m < 4; ++m) {
            const auto& agg = pt.methods[m];
            for (double s : agg.pooled_eff_sinr_db)
                os << sweep.axis << ',' << csv_double(pt.axis_value) << ','
                   << method_name(static_cast<Method>(m)) << ",effective," << csv_double(s) << '\n';
            for (double s : agg.pooled_per_rb_sinr_db)
                os << sweep.axis << ',' << csv_double(pt.axis_value) << ','
                   << method_name(static_cast<Method>(m)) << ",per_rb," << csv_double(s) << '\n';
        }
    }
}

}  // namespace d2dshare
