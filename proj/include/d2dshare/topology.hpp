#pragma once

// Random multi-tenant topology: CUEs and cross-tenant D2D pairs dropped
// uniformly over a hexagonal cell, with per-tenant disjoint RB pools.

#include <vector>

#include "d2dshare/config.hpp"
#include "d2dshare/geometry.hpp"
#include "d2dshare/rng.hpp"

namespace d2dshare {

struct Cue {
    Point position;
    TenantId tenant = 0;
};

struct D2dLink {
    Point tx_position;
    Point rx_position;
    TenantId initiator_tenant = 0;  // tenant of the device opening the session
    TenantId receiver_tenant = 1;

    double length_m() const { return distance(tx_position, rx_position); }
};

struct Topology {
    Point bs_position{0.0, 0.0};
    std::vector<Cue> cues;
    std::vector<D2dLink> d2d_links;
    /// rb_pools[n] lists tenant n's RB ids; pools are pairwise disjoint and
    /// their union (in tenant order) is the fused pool.
    std::vector<std::vector<RbId>> rb_pools;

    int total_rbs() const {
        int k = 0;
        for (const auto& pool : rb_pools) k += static_cast<int>(pool.size());
        return k;
    }

    std::vector<RbId> fused_pool() const {
        std::vector<RbId> all;
        for (const auto& pool : rb_pools)
            all.insert(all.end(), pool.begin(), pool.end());
        return all;
    }
};

/// Draws a random topology. CUE and D2D transmitter positions are uniform
/// over the hexagon; each receiver is uniform in the disc of radius
/// max_d2d_range_m around its transmitter, resampled until inside the cell.
/// Initiator tenants follow cfg.d2d_initiator_tenant: a fixed tenant when
/// >= 0, otherwise alternating A,B,A,B,... by link index. The receiver is
/// always the other tenant (two-tenant model). `initiator_override`, when
/// non-empty, replaces both with an explicit per-link tenant list.
inline Topology generate_topology(const ScenarioConfig& cfg, Rng& rng,
                                  const std::vector<TenantId>& initiator_override = {}) {
    cfg.validate();

    Topology topo;
    topo.bs_position = {0.0, 0.0};

    // RB ids are dense and global: tenant 0 owns [0, K_0), tenant 1 the next
    // K_1 ids, and so on.
    topo.rb_pools.resize(cfg.num_tenants);
    RbId next_rb = 0;
    for (int n = 0; n < cfg.num_tenants; ++n)
        for (int k = 0; k < cfg.rb_pool_sizes[n]; ++k) topo.rb_pools[n].push_back(next_rb++);

    const std::vector<int> counts = cue_counts_per_tenant(cfg);
    for (int n = 0; n < cfg.num_tenants; ++n) {
        for (int c = 0; c < counts[n]; ++c) {
            Cue cue;
            cue.position = sample_in_hexagon(cfg.cell_radius_m, rng);
            cue.tenant = n;
            topo.cues.push_back(cue);
        }
    }

    if (!initiator_override.empty() &&
        initiator_override.size() != static_cast<std::size_t>(cfg.num_d2d_links))
        throw ConfigError("initiator_override must list one tenant per link");

    // Each link draws from its own derived sub-stream. Rejection sampling
    // then only consumes draws local to that link, so sweeping a parameter
    // (say the D2D range) perturbs one link's geometry without shifting
    // every later link's draws — the sweep points stay paired.
    const std::uint64_t link_stream = rng.bits();
    for (int i = 0; i < cfg.num_d2d_links; ++i) {
        Rng link_rng(Rng::derive(link_stream, static_cast<std::uint64_t>(i)));
        D2dLink link;
        if (!initiator_override.empty())
            link.initiator_tenant = initiator_override[i];
        else if (cfg.d2d_initiator_tenant >= 0)
            link.initiator_tenant = cfg.d2d_initiator_tenant;
        else
            link.initiator_tenant = i % 2;
        link.receiver_tenant = 1 - link.initiator_tenant;
        link.tx_position = sample_in_hexagon(cfg.cell_radius_m, link_rng);
        do {
            link.rx_position = sample_in_disc(link.tx_position, cfg.max_d2d_range_m, link_rng);
        } while (!point_in_hexagon(link.rx_position, cfg.cell_radius_m));
        topo.d2d_links.push_back(link);
    }

    return topo;
}

}  // namespace d2dshare
