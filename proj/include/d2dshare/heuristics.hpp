#pragma once

// Baseline allocators: the round-based inter-tenant greedy (alternating the
// served receiver slice each iteration) and the two intra-tenant methods
// that restrict every tenant to its own pool and its initiated links.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "d2dshare/problem.hpp"
#include "d2dshare/solver.hpp"

namespace d2dshare {

struct TraceStep {
    int round = 0;
    LinkId link = -1;
    RbId rb = -1;  // -1 when skipped
    std::string skip_reason;
};

enum class HeuristicTermination { pool_exhausted, all_at_lmax, sinr_blocked };

struct HeuristicTrace {
    std::vector<TraceStep> steps;
    HeuristicTermination termination = HeuristicTermination::pool_exhausted;
};

namespace detail {

/// Round-based greedy over a fixed link service order: each round gives
/// every link (in order) its best still-free, unmasked RB, until the pool
/// runs dry, every link sits at l_max, or a full round assigns nothing.
inline std::pair<Allocation, HeuristicTrace> greedy_rounds(const AllocationProblem& p,
                                                           const std::vector<int>& serve_order) {
    const int num_rbs = p.num_rbs();
    std::vector<char> rb_taken(num_rbs, 0);
    std::vector<std::vector<int>> picked(p.num_links());
    HeuristicTrace trace;

    int free_rbs = 0;
    for (int c = 0; c < num_rbs; ++c) ++free_rbs;

    for (int round = 1;; ++round) {
        bool assigned_any = false;
        bool all_at_cap = true;
        for (int row : serve_order) {
            if (static_cast<int>(picked[row].size()) >= p.l_max) continue;
            all_at_cap = false;
            // Best unmasked free RB for this link; ties -> lowest RB id.
            int best_col = -1;
            double best_rate = 0.0;
            for (int c = 0; c < num_rbs; ++c) {
                if (rb_taken[c] || p.rate[row][c] <= 0.0) continue;
                if (p.rate[row][c] > best_rate) {
                    best_rate = p.rate[row][c];
                    best_col = c;
                }
            }
            if (best_col < 0) {
                trace.steps.push_back({round, p.links[row], -1, "no feasible RB"});
                continue;
            }
            rb_taken[best_col] = 1;
            --free_rbs;
            picked[row].push_back(best_col);
            trace.steps.push_back({round, p.links[row], p.rbs[best_col], {}});
            assigned_any = true;
        }
        if (all_at_cap) {
            trace.termination = HeuristicTermination::all_at_lmax;
            break;
        }
        if (free_rbs == 0) {
            trace.termination = HeuristicTermination::pool_exhausted;
            break;
        }
        if (!assigned_any) {
            trace.termination = HeuristicTermination::sinr_blocked;
            break;
        }
    }

    Allocation a;
    bool every_link_serviced = true;
    for (int row = 0; row < p.num_links(); ++row) {
        LinkId link = p.links[row];
        double link_rate = 0.0;
        for (int c : picked[row]) {
            a.assigned[link].push_back(p.rbs[c]);
            link_rate += p.rate[row][c];
        }
        std::sort(a.assigned[link].begin(), a.assigned[link].end());
        a.per_link_rate_bps[link] = link_rate;
        a.objective_bps += link_rate;
        if (picked[row].empty() || link_rate < p.r_th - 1e-12) every_link_serviced = false;
    }
    a.status = every_link_serviced ? AllocStatus::feasible : AllocStatus::infeasible;
    return {a, trace};
}

}  // namespace detail

/// Inter-tenant greedy over the fused pool. The service order interleaves
/// the two receiver-slice queues (each ordered by link id): odd iterations
/// serve a link whose receiver is in tenant 0, even iterations tenant 1.
/// When one queue empties the other keeps the round going.
inline std::pair<Allocation, HeuristicTrace> inter_tenant_heuristic(
    const AllocationProblem& p, const std::vector<TenantId>& receiver_tenant) {
    if (receiver_tenant.size() != p.links.size())
        throw std::invalid_argument("receiver_tenant must align with problem links");

    std::vector<int> queue_a, queue_b;
    for (int row = 0; row < p.num_links(); ++row)
        (receiver_tenant[row] == 0 ? queue_a : queue_b).push_back(row);

    std::vector<int> serve_order;
    std::size_t ia = 0, ib = 0;
    for (int slot = 0; slot < p.num_links(); ++slot) {
        bool want_a = slot % 2 == 0;
        if (want_a && ia < queue_a.size()) serve_order.push_back(queue_a[ia++]);
        else if (!want_a && ib < queue_b.size()) serve_order.push_back(queue_b[ib++]);
        else if (ia < queue_a.size()) serve_order.push_back(queue_a[ia++]);
        else serve_order.push_back(queue_b[ib++]);
    }
    return detail::greedy_rounds(p, serve_order);
}

/// Combined result of per-tenant decoupled allocation.
struct SplitAllocation {
    Allocation combined;
    std::vector<AllocStatus> tenant_status;  // per tenant (skipped tenants: optimal/feasible trivially)
    std::vector<SolveStats> tenant_stats;    // empty for the heuristic variant
};

namespace detail {

inline std::vector<std::vector<LinkId>> links_by_initiator(const Topology& topo,
                                                           const std::vector<LinkId>& links) {
    std::vector<std::vector<LinkId>> split(topo.rb_pools.size());
    for (LinkId i : links) split[topo.d2d_links[i].initiator_tenant].push_back(i);
    return split;
}

inline void merge(Allocation& into, const Allocation& part) {
    for (const auto& [link, rbs] : part.assigned) into.assigned[link] = rbs;
    for (const auto& [link, r] : part.per_link_rate_bps) into.per_link_rate_bps[link] = r;
    into.objective_bps += part.objective_bps;
}

}  // namespace detail

/// Each tenant solves its own exact problem over its own pool, for the
/// links its subscribers initiated; the union is feasible by pool
/// disjointness. Any infeasible tenant marks the whole result infeasible
/// (per-tenant statuses retained).
inline SplitAllocation intra_tenant_optimal(const ChannelRealization& ch, const Topology& topo,
                                            const std::vector<LinkId>& links, int l_max,
                                            double r_th, const SolveOptions& opts = {}) {
    SplitAllocation out;
    out.combined.status = AllocStatus::optimal;
    auto split = detail::links_by_initiator(topo, links);
    for (TenantId n = 0; n < static_cast<TenantId>(split.size()); ++n) {
        if (split[n].empty()) {
            out.tenant_status.push_back(AllocStatus::optimal);
            out.tenant_stats.push_back({});
            continue;
        }
        auto p = build_problem(ch, topo, ProblemScope{n}, split[n], l_max, r_th);
        auto [alloc, stats] = solve_exact(p, opts);
        out.tenant_status.push_back(alloc.status);
        out.tenant_stats.push_back(stats);
        if (alloc.status == AllocStatus::optimal || alloc.status == AllocStatus::feasible)
            detail::merge(out.combined, alloc);
        else
            out.combined.status = alloc.status;
    }
    return out;
}

/// Greedy counterpart of intra_tenant_optimal: per tenant, the round-based
/// greedy over that tenant's pool with a single queue ordered by link id.
inline SplitAllocation intra_tenant_heuristic(const ChannelRealization& ch, const Topology& topo,
                                              const std::vector<LinkId>& links, int l_max,
                                              double r_th) {
    SplitAllocation out;
    out.combined.status = AllocStatus::feasible;
    auto split = detail::links_by_initiator(topo, links);
    for (TenantId n = 0; n < static_cast<TenantId>(split.size()); ++n) {
        if (split[n].empty()) {
            out.tenant_status.push_back(AllocStatus::feasible);
            continue;
        }
        auto p = build_problem(ch, topo, ProblemScope{n}, split[n], l_max, r_th);
        std::vector<int> serve_order(p.num_links());
        for (int r = 0; r < p.num_links(); ++r) serve_order[r] = r;
        auto [alloc, trace] = detail::greedy_rounds(p, serve_order);
        out.tenant_status.push_back(alloc.status);
        if (alloc.status == AllocStatus::feasible)
            detail::merge(out.combined, alloc);
        else {
            detail::merge(out.combined, alloc);  // keep partials for diagnostics
            out.combined.status = AllocStatus::infeasible;
        }
    }
    return out;
}

}  // namespace d2dshare
