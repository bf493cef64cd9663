#pragma once

// Exact solver: depth-first branch-and-bound tailored to the instance
// family (tens of links, up to ~100 RBs, small per-link cardinality cap).
//
// Links are processed in order of decreasing best-single-RB rate. A node
// branches on the current link's RB subset (sizes 1..l_max from the RBs
// still free, near-best-first). The upper bound at a node is the incumbent
// objective plus, for every remaining link, the sum of its l_max largest
// rates among free RBs — a relaxation that ignores cross-link disjointness
// and is therefore always valid. A second, RB-side bound (top rates over
// free RBs capped by remaining capacity) is taken when tighter.
//
// A greedy warm start seeds the incumbent, so most of the first link's
// subset space prunes immediately.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "d2dshare/problem.hpp"

namespace d2dshare {

struct SolveOptions {
    /// 0 = unlimited. When exceeded the solver returns status
    /// budget_exceeded with the best incumbent found (never a silently
    /// suboptimal "optimal").
    long long node_budget = 0;
};

namespace detail {

/// Exact solver for the problem without the per-link rate floor: with only
/// the RB-disjointness and 1..l_max cardinality constraints left, the
/// instance is a transportation problem (links supply 1..l_max units, RBs
/// absorb one), solved by successive shortest augmenting paths with node
/// potentials. A mandatory high-profit unit per link realizes the >= 1 RB
/// lower bound; augmentation stops once the best path stops paying.
struct FlowSolver {
    struct Edge {
        int to;
        int cap;
        double cost;  // negated rate: we minimize
        int rev;      // index of the reverse edge in graph[to]
    };

    const AllocationProblem& p;
    int num_links, num_rbs, S, T, nodes;
    std::vector<std::vector<Edge>> graph;
    long long augmentations = 0;

    explicit FlowSolver(const AllocationProblem& prob)
        : p(prob), num_links(prob.num_links()), num_rbs(prob.num_rbs()) {
        S = 0;
        T = 1 + num_links + num_rbs;
        nodes = T + 1;
        graph.resize(nodes);
        double rate_sum = 0.0;
        for (int r = 0; r < num_links; ++r)
            for (int c = 0; c < num_rbs; ++c) rate_sum += p.rate[r][c];
        const double kMandatory = 2.0 * rate_sum + 1.0;
        for (int r = 0; r < num_links; ++r) {
            add_edge(S, 1 + r, 1, -kMandatory);  // the link's required RB
            if (p.l_max > 1) add_edge(S, 1 + r, p.l_max - 1, 0.0);
            for (int c = 0; c < num_rbs; ++c)
                if (p.rate[r][c] > 0.0) add_edge(1 + r, 1 + num_links + c, 1, -p.rate[r][c]);
        }
        for (int c = 0; c < num_rbs; ++c) add_edge(1 + num_links + c, T, 1, 0.0);
    }

    void add_edge(int from, int to, int cap, double cost) {
        graph[from].push_back({to, cap, cost, static_cast<int>(graph[to].size())});
        graph[to].push_back({from, 0, -cost, static_cast<int>(graph[from].size()) - 1});
    }

    /// Optimal row -> column sets ignoring r_th; empty optional = some link
    /// cannot receive any RB.
    std::optional<std::vector<std::vector<int>>> solve() {
        std::vector<double> pot(nodes, 0.0);
        // Initial potentials over the flow-free DAG (S -> links -> RBs -> T)
        // in topological order, so Dijkstra sees non-negative reduced costs.
        const double kInf = std::numeric_limits<double>::infinity();
        std::vector<double> dist(nodes, kInf);
        dist[S] = 0.0;
        auto relax_from = [&](int u) {
            for (const Edge& e : graph[u])
                if (e.cap > 0 && dist[u] + e.cost < dist[e.to]) dist[e.to] = dist[u] + e.cost;
        };
        relax_from(S);
        for (int r = 0; r < num_links; ++r) relax_from(1 + r);
        for (int c = 0; c < num_rbs; ++c) relax_from(1 + num_links + c);
        for (int v = 0; v < nodes; ++v) pot[v] = dist[v] < kInf ? dist[v] : 0.0;

        std::vector<int> prev_node(nodes), prev_edge(nodes);
        for (;;) {
            // Dijkstra on reduced costs.
            std::vector<double> d(nodes, kInf);
            std::vector<char> done(nodes, 0);
            d[S] = 0.0;
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            pq.emplace(0.0, S);
            while (!pq.empty()) {
                auto [du, u] = pq.top();
                pq.pop();
                if (done[u]) continue;
                done[u] = 1;
                for (std::size_t j = 0; j < graph[u].size(); ++j) {
                    const Edge& e = graph[u][j];
                    if (e.cap <= 0 || done[e.to]) continue;
                    double rc = std::max(0.0, e.cost + pot[u] - pot[e.to]);
                    if (du + rc < d[e.to]) {
                        d[e.to] = du + rc;
                        prev_node[e.to] = u;
                        prev_edge[e.to] = static_cast<int>(j);
                        pq.emplace(d[e.to], e.to);
                    }
                }
            }
            if (d[T] == kInf) break;
            for (int v = 0; v < nodes; ++v)
                if (d[v] < kInf) pot[v] += d[v];
            // True cost of this unit; stop once it is no longer profitable.
            double path_cost = 0.0;
            for (int v = T; v != S; v = prev_node[v])
                path_cost += graph[prev_node[v]][prev_edge[v]].cost;
            if (path_cost >= -1e-12) break;
            for (int v = T; v != S; v = prev_node[v]) {
                Edge& e = graph[prev_node[v]][prev_edge[v]];
                --e.cap;
                ++graph[e.to][e.rev].cap;
            }
            ++augmentations;
        }

        // Every mandatory unit must have been pushed.
        for (const Edge& e : graph[S])
            if (e.cost < 0.0 && e.cap > 0) return std::nullopt;

        std::vector<std::vector<int>> picked(num_links);
        for (int r = 0; r < num_links; ++r)
            for (const Edge& e : graph[1 + r]) {
                int c = e.to - 1 - num_links;
                if (c >= 0 && c < num_rbs && e.cost < 0.0 && e.cap == 0) picked[r].push_back(c);
            }
        return picked;
    }
};

struct BnB {
    const AllocationProblem& p;
    const SolveOptions& opts;
    int num_links;
    int num_rbs;

    std::vector<int> order;                       // link rows, best-first
    std::vector<std::vector<int>> cols_sorted;    // per row: cols by rate desc, zeros excluded
    std::vector<char> rb_used;
    std::vector<std::vector<int>> chosen;         // per depth: chosen cols

    double incumbent = -1.0;                      // best feasible objective
    std::vector<std::vector<int>> best_choice;    // per depth
    long long nodes = 0;
    bool budget_hit = false;

    explicit BnB(const AllocationProblem& prob, const SolveOptions& o)
        : p(prob), opts(o), num_links(prob.num_links()), num_rbs(prob.num_rbs()) {
        cols_sorted.resize(num_links);
        for (int r = 0; r < num_links; ++r) {
            for (int c = 0; c < num_rbs; ++c)
                if (p.rate[r][c] > 0.0) cols_sorted[r].push_back(c);
            std::sort(cols_sorted[r].begin(), cols_sorted[r].end(),
                      [&](int a, int b) { return p.rate[r][a] > p.rate[r][b]; });
        }
        order.resize(num_links);
        for (int r = 0; r < num_links; ++r) order[r] = r;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double ra = cols_sorted[a].empty() ? 0.0 : p.rate[a][cols_sorted[a][0]];
            double rb = cols_sorted[b].empty() ? 0.0 : p.rate[b][cols_sorted[b][0]];
            return ra > rb;
        });
        rb_used.assign(num_rbs, 0);
        chosen.resize(num_links);
        best_choice.resize(num_links);
    }

    /// Sum of the row's `cap` largest rates among free RBs. Also reports
    /// whether the row can meet r_th at all.
    double row_bound(int row, int cap, bool& can_serve) const {
        double sum = 0.0;
        int taken = 0;
        for (int c : cols_sorted[row]) {
            if (rb_used[c]) continue;
            sum += p.rate[row][c];
            if (++taken == cap) break;
        }
        can_serve = taken >= 1 && sum >= p.r_th - 1e-12;
        return sum;
    }

    /// Upper bound on what links order[depth..] can still add; -1 when some
    /// remaining link is provably unservable (prune as infeasible branch).
    double future_bound(int depth) {
        double link_side = 0.0;
        int remaining_links = num_links - depth;
        for (int d = depth; d < num_links; ++d) {
            bool ok = false;
            link_side += row_bound(order[d], p.l_max, ok);
            if (!ok) return -1.0;
        }
        // RB-side: best achievable per free RB, truncated to total capacity.
        long long capacity = static_cast<long long>(remaining_links) * p.l_max;
        std::vector<double> best_per_rb;
        best_per_rb.reserve(num_rbs);
        for (int c = 0; c < num_rbs; ++c) {
            if (rb_used[c]) continue;
            double best = 0.0;
            for (int d = depth; d < num_links; ++d)
                best = std::max(best, p.rate[order[d]][c]);
            if (best > 0.0) best_per_rb.push_back(best);
        }
        double rb_side = 0.0;
        if (static_cast<long long>(best_per_rb.size()) > capacity) {
            std::nth_element(best_per_rb.begin(), best_per_rb.begin() + capacity,
                             best_per_rb.end(), std::greater<>());
            for (long long j = 0; j < capacity; ++j) rb_side += best_per_rb[j];
        } else {
            for (double v : best_per_rb) rb_side += v;
        }
        return std::min(link_side, rb_side);
    }

    void dfs(int depth, double acc) {
        if (budget_hit) return;
        if (depth == num_links) {
            if (acc > incumbent) {
                incumbent = acc;
                best_choice = chosen;
            }
            return;
        }
        double fb = future_bound(depth);
        if (fb < 0.0) return;  // some remaining link cannot be served
        if (acc + fb <= incumbent * (1.0 + 1e-12)) return;

        // Separate bound on the links after this one (RBs of the current
        // link not yet removed, so this stays a valid over-estimate).
        double rest = depth + 1 < num_links ? future_bound(depth + 1) : 0.0;

        std::vector<int> current;  // per-depth: dfs below reuses deeper scratch
        current.reserve(p.l_max);
        enumerate(depth, order[depth], 0, 0.0, acc, rest, current);
    }

    /// Enumerates this row's subsets over its sorted free columns,
    /// descending prefix sums first. `start` indexes into cols_sorted[row].
    void enumerate(int depth, int row, int start, double subset_sum, double acc, double rest,
                   std::vector<int>& current) {
        if (budget_hit) return;
        const auto& cols = cols_sorted[row];

        if (!current.empty() && static_cast<int>(current.size()) <= p.l_max &&
            subset_sum >= p.r_th - 1e-12) {
            ++nodes;
            if (opts.node_budget > 0 && nodes > opts.node_budget) {
                budget_hit = true;
                return;
            }
            chosen[depth] = current;
            for (int c : current) rb_used[c] = 1;
            dfs(depth + 1, acc + subset_sum);
            for (int c : current) rb_used[c] = 0;
        }

        if (static_cast<int>(current.size()) == p.l_max) return;

        for (std::size_t j = start; j < cols.size(); ++j) {
            int c = cols[j];
            if (rb_used[c]) continue;
            // Best completion of this partial subset: extend with the next
            // largest free rates up to l_max.
            double best_ext = p.rate[row][c];
            int slots = p.l_max - static_cast<int>(current.size()) - 1;
            for (std::size_t j2 = j + 1; j2 < cols.size() && slots > 0; ++j2) {
                if (rb_used[cols[j2]]) continue;
                best_ext += p.rate[row][cols[j2]];
                --slots;
            }
            if (acc + subset_sum + best_ext + rest <= incumbent * (1.0 + 1e-12))
                break;  // columns are sorted: later j only get worse
            current.push_back(c);
            enumerate(depth, row, static_cast<int>(j) + 1, subset_sum + p.rate[row][c], acc, rest,
                      current);
            current.pop_back();
            if (budget_hit) return;
        }
    }

    /// Greedy warm start: links in solver order, each takes its l_max best
    /// free RBs. Skipped (incumbent stays empty) when the greedy fill
    /// leaves some link short of an RB or of r_th.
    void warm_start() {
        std::vector<char> used(num_rbs, 0);
        std::vector<std::vector<int>> pick(num_links);
        double total = 0.0;
        for (int d = 0; d < num_links; ++d) {
            int row = order[d];
            double got = 0.0;
            for (int c : cols_sorted[row]) {
                if (used[c]) continue;
                if (static_cast<int>(pick[d].size()) == p.l_max) break;
                pick[d].push_back(c);
                used[c] = 1;
                got += p.rate[row][c];
            }
            if (pick[d].empty() || got < p.r_th - 1e-12) return;  // no warm start
            total += got;
        }
        incumbent = total;
        best_choice = pick;
    }
};

}  // namespace detail

/// Exact optimum of the allocation problem, or status infeasible when no
/// assignment satisfies the constraints over the feasibility mask.
inline std::pair<Allocation, SolveStats> solve_exact(const AllocationProblem& p,
                                                     const SolveOptions& opts = {}) {
    auto t0 = std::chrono::steady_clock::now();

    // Fast exact path: ignore the per-link rate floor and solve the
    // remaining transportation problem optimally. Its objective bounds the
    // full problem from above, so when the flow solution happens to satisfy
    // r_th on every link (always true when the SINR mask already implies
    // r_th per RB) it is the optimum and no search is needed. A node budget
    // signals the caller wants bounded branch-and-bound work, so the
    // shortcut is skipped to keep budget_exceeded semantics intact.
    if (opts.node_budget == 0 && p.num_links() > 0) {
        detail::FlowSolver flow(p);
        auto picked = flow.solve();
        SolveStats stats;
        stats.nodes_explored = flow.augmentations;
        Allocation a;
        if (!picked) {
            a.status = AllocStatus::infeasible;
            stats.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return {a, stats};
        }
        bool meets_r_th = true;
        for (int r = 0; r < p.num_links() && meets_r_th; ++r) {
            double sum = 0.0;
            for (int c : (*picked)[r]) sum += p.rate[r][c];
            meets_r_th = sum >= p.r_th - 1e-12;
        }
        if (meets_r_th) {
            a.status = AllocStatus::optimal;
            for (int r = 0; r < p.num_links(); ++r) {
                LinkId link = p.links[r];
                double link_rate = 0.0;
                for (int c : (*picked)[r]) {
                    a.assigned[link].push_back(p.rbs[c]);
                    link_rate += p.rate[r][c];
                }
                std::sort(a.assigned[link].begin(), a.assigned[link].end());
                a.per_link_rate_bps[link] = link_rate;
                a.objective_bps += link_rate;
            }
            stats.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return {a, stats};
        }
        // r_th binds on some link: fall through to branch-and-bound.
    }

    detail::BnB bnb(p, opts);
    double root_bound = bnb.future_bound(0);
    bnb.warm_start();
    bnb.dfs(0, 0.0);

    SolveStats stats;
    stats.nodes_explored = bnb.nodes;
    stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Allocation a;
    if (bnb.incumbent < 0.0) {
        a.status = bnb.budget_hit ? AllocStatus::budget_exceeded : AllocStatus::infeasible;
        stats.bound_gap = bnb.budget_hit ? 1.0 : 0.0;
        return {a, stats};
    }
    a.status = bnb.budget_hit ? AllocStatus::budget_exceeded : AllocStatus::optimal;
    stats.bound_gap =
        bnb.budget_hit && root_bound > 0.0 ? (root_bound - bnb.incumbent) / root_bound : 0.0;
    for (int d = 0; d < bnb.num_links; ++d) {
        int row = bnb.order[d];
        LinkId link = p.links[row];
        double link_rate = 0.0;
        for (int c : bnb.best_choice[d]) {
            a.assigned[link].push_back(p.rbs[c]);
            link_rate += p.rate[row][c];
        }
        std::sort(a.assigned[link].begin(), a.assigned[link].end());
        a.per_link_rate_bps[link] = link_rate;
        a.objective_bps += link_rate;
    }
    return {a, stats};
}

/// Exhaustive reference optimum for small instances. Guarded to <= 5 links
/// and <= 10 RBs; completely independent of the branch-and-bound path.
inline Allocation solve_oracle(const AllocationProblem& p) {
    if (p.num_links() > 5 || p.num_rbs() > 10)
        throw std::invalid_argument("solve_oracle: instance exceeds 5 links x 10 RBs guard");

    const int num_links = p.num_links();
    const int num_rbs = p.num_rbs();

    double best = -1.0;
    std::vector<std::vector<int>> best_sets;
    std::vector<std::vector<int>> sets(num_links);
    std::vector<char> used(num_rbs, 0);

    // Plain recursion over all subset assignments, no bounding at all.
    auto rec = [&](auto&& self, int link) -> void {
        if (link == num_links) {
            double total = 0.0;
            for (int i = 0; i < num_links; ++i)
                for (int c : sets[i]) total += p.rate[i][c];
            if (total > best) {
                best = total;
                best_sets = sets;
            }
            return;
        }
        std::vector<int>& subset = sets[link];
        auto choose = [&](auto&& chooser, int start) -> void {
            if (!subset.empty()) {
                double sum = 0.0;
                bool masked = false;
                for (int c : subset) {
                    if (p.rate[link][c] <= 0.0) masked = true;
                    sum += p.rate[link][c];
                }
                if (!masked && sum >= p.r_th - 1e-12) self(self, link + 1);
            }
            if (static_cast<int>(subset.size()) == p.l_max) return;
            for (int c = start; c < num_rbs; ++c) {
                if (used[c]) continue;
                used[c] = 1;
                subset.push_back(c);
                chooser(chooser, c + 1);
                subset.pop_back();
                used[c] = 0;
            }
        };
        choose(choose, 0);
    };
    if (num_links == 0) {
        Allocation a;
        a.status = AllocStatus::optimal;
        a.objective_bps = 0.0;
        return a;
    }
    rec(rec, 0);

    Allocation a;
    if (best < 0.0) {
        a.status = AllocStatus::infeasible;
        return a;
    }
    a.status = AllocStatus::optimal;
    for (int i = 0; i < num_links; ++i) {
        LinkId link = p.links[i];
        double link_rate = 0.0;
        for (int c : best_sets[i]) {
            a.assigned[link].push_back(p.rbs[c]);
            link_rate += p.rate[i][c];
        }
        std::sort(a.assigned[link].begin(), a.assigned[link].end());
        a.per_link_rate_bps[link] = link_rate;
        a.objective_bps += link_rate;
    }
    return a;
}

}  // namespace d2dshare
