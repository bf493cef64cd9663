#pragma once

// The sum-rate maximization instance shared by the exact solver, the
// brute-force oracle and the heuristics: maximize sum of rate[i][k] over
// chosen (link, RB) pairs subject to
//   - each RB used by at most one link,
//   - each link holding between 1 and l_max RBs,
//   - each link's total rate >= r_th,
//   - no masked pair (rate 0) ever assigned.

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2dshare/channel.hpp"

namespace d2dshare {

struct AllocationProblem {
    std::vector<LinkId> links;  // link ids in scope
    std::vector<RbId> rbs;      // RB ids in scope (columns)
    /// rate[row][col] in bit/s, aligned with links/rbs; 0 = infeasible pair.
    std::vector<std::vector<double>> rate;
    int l_max = 1;
    double r_th = 0.0;

    int num_links() const { return static_cast<int>(links.size()); }
    int num_rbs() const { return static_cast<int>(rbs.size()); }
};

enum class AllocStatus { optimal, feasible, infeasible, budget_exceeded };

inline const char* to_string(AllocStatus s) {
    switch (s) {
        case AllocStatus::optimal: return "optimal";
        case AllocStatus::feasible: return "feasible";
        case AllocStatus::infeasible: return "infeasible";
        case AllocStatus::budget_exceeded: return "budget-exceeded";
    }
    return "?";
}

struct Allocation {
    std::map<LinkId, std::vector<RbId>> assigned;
    std::map<LinkId, double> per_link_rate_bps;
    double objective_bps = 0.0;
    AllocStatus status = AllocStatus::infeasible;
};

struct SolveStats {
    long long nodes_explored = 0;
    double wall_time_s = 0.0;
    double bound_gap = 0.0;  // 0 for optimal
};

struct ProblemScope {
    /// nullopt = fused pool (all tenants); otherwise a single tenant's pool.
    std::optional<TenantId> tenant;
    static ProblemScope fused() { return {std::nullopt}; }
};

/// Restricts the precomputed rate table to the scoped RB columns and the
/// given link set. Fused scope concatenates all tenants' pools in order.
inline AllocationProblem build_problem(const ChannelRealization& ch, const Topology& topo,
                                       ProblemScope scope, const std::vector<LinkId>& links,
                                       int l_max, double r_th) {
    if (links.empty()) throw std::invalid_argument("build_problem: empty link set");

    AllocationProblem p;
    p.links = links;
    p.l_max = l_max;
    p.r_th = r_th;
    if (scope.tenant) {
        TenantId n = *scope.tenant;
        if (n < 0 || n >= static_cast<int>(topo.rb_pools.size()))
            throw std::invalid_argument("build_problem: unknown tenant");
        p.rbs = topo.rb_pools[n];
    } else {
        p.rbs = topo.fused_pool();
    }
    if (p.rbs.empty()) throw std::invalid_argument("build_problem: empty RB scope");

    p.rate.assign(links.size(), std::vector<double>(p.rbs.size()));
    for (std::size_t r = 0; r < links.size(); ++r)
        for (std::size_t c = 0; c < p.rbs.size(); ++c)
            p.rate[r][c] = ch.rate_table[links[r]][p.rbs[c]];
    return p;
}

/// Checks an allocation against every constraint; returns one message per
/// violation (empty = valid). Constraint tags: min-RBs, max-RBs, min-rate,
/// orthogonality, mask.
inline std::vector<std::string> verify(const Allocation& a, const AllocationProblem& p) {
    std::vector<std::string> out;
    std::map<LinkId, int> row_of;
    for (int r = 0; r < p.num_links(); ++r) row_of[p.links[r]] = r;
    std::map<RbId, int> col_of;
    for (int c = 0; c < p.num_rbs(); ++c) col_of[p.rbs[c]] = c;

    std::set<RbId> used;
    double total = 0.0;
    for (const auto& [link, rbs] : a.assigned) {
        auto it = row_of.find(link);
        if (it == row_of.end()) {
            out.push_back("unknown link " + std::to_string(link));
            continue;
        }
        int row = it->second;
        if (static_cast<int>(rbs.size()) > p.l_max)
            out.push_back("max-RBs: link " + std::to_string(link) + " holds " +
                          std::to_string(rbs.size()) + " RBs, cap " + std::to_string(p.l_max));
        double link_rate = 0.0;
        for (RbId rb : rbs) {
            auto cit = col_of.find(rb);
            if (cit == col_of.end()) {
                out.push_back("RB " + std::to_string(rb) + " outside problem scope");
                continue;
            }
            if (!used.insert(rb).second)
                out.push_back("orthogonality: RB " + std::to_string(rb) + " assigned twice");
            double r = p.rate[row][cit->second];
            if (r <= 0.0)
                out.push_back("mask: link " + std::to_string(link) + " assigned infeasible RB " +
                              std::to_string(rb));
            link_rate += r;
        }
        if (link_rate < p.r_th - 1e-9)
            out.push_back("min-rate: link " + std::to_string(link) + " achieves " +
                          std::to_string(link_rate) + " < " + std::to_string(p.r_th));
        total += link_rate;
    }
    for (LinkId link : p.links) {
        auto it = a.assigned.find(link);
        if (it == a.assigned.end() || it->second.empty())
            out.push_back("min-RBs: link " + std::to_string(link) + " holds no RB");
    }
    if (std::fabs(total - a.objective_bps) > 1e-6 * std::max(1.0, std::fabs(total)))
        out.push_back("objective mismatch: recomputed " + std::to_string(total) +
                      " vs reported " + std::to_string(a.objective_bps));
    return out;
}

// ---- plain-text instance format (regression fixtures) ----
//
//   line 1: I K l_max r_th
//   lines 2..I+1: K whitespace-separated rates (bit/s)
//
// Links and RBs are implicitly 0..I-1 and 0..K-1.

inline void save_problem(const AllocationProblem& p, std::ostream& os) {
    os << p.num_links() << ' ' << p.num_rbs() << ' ' << p.l_max << ' ' << p.r_th << '\n';
    for (const auto& row : p.rate) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
        os << '\n';
    }
}

inline AllocationProblem load_problem(std::istream& is) {
    AllocationProblem p;
    int num_links = 0, num_rbs = 0;
    if (!(is >> num_links >> num_rbs >> p.l_max >> p.r_th))
        throw std::runtime_error("instance file: malformed header");
    if (num_links < 1 || num_rbs < 1 || p.l_max < 1)
        throw std::runtime_error("instance file: non-positive dimensions");
    for (int i = 0; i < num_links; ++i) p.links.push_back(i);
    for (int k = 0; k < num_rbs; ++k) p.rbs.push_back(k);
    p.rate.assign(num_links, std::vector<double>(num_rbs));
    for (int i = 0; i < num_links; ++i)
        for (int k = 0; k < num_rbs; ++k)
            if (!(is >> p.rate[i][k]))
                throw std::runtime_error("instance file: truncated rate matrix");
    return p;
}

}  // namespace d2dshare
