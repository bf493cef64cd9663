#pragma once

// Scenario configuration: every tunable of the simulated single-cell,
// multi-tenant D2D underlay. Defaults follow the LTE-A style parameter set
// used throughout the experiments (400 m hexagonal cell, 180 kHz RBs,
// -174 dBm/Hz noise floor, 8 dB lognormal shadowing).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace d2dshare {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using TenantId = int;
using RbId = int;
using LinkId = int;
using CueId = int;

struct ScenarioConfig {
    int num_tenants = 2;

    double cell_radius_m = 400.0;
    double max_d2d_range_m = 100.0;

    int num_cues = 75;
    int num_d2d_links = 20;

    /// Per-tenant fraction of CUEs, summing to 1.
    std::vector<double> cue_split{2.0 / 3.0, 1.0 / 3.0};
    /// Per-tenant RB pool sizes K_n.
    std::vector<int> rb_pool_sizes{50, 25};
    /// Per-tenant fraction of the pool occupied by active CUEs.
    std::vector<double> cue_utilization{1.0, 1.0};

    double p_cue_dbm = 20.0;
    double p_due_dbm = 15.0;

    /// Tenant initiating every D2D link, or -1 to alternate A,B,A,B,...
    /// by link index. Pinning all links to one tenant models the case where
    /// a single slice originates the direct sessions.
    int d2d_initiator_tenant = -1;

    int l_max = 4;
    double gamma_th_db = 0.0;        // D2D decoding threshold
    double gamma_tilde_th_db = 5.0;  // protected cellular uplink threshold
    double r_th_bps = 180e3;         // per-link minimum rate

    double shadowing_sigma_db = 8.0;
    double noise_psd_dbm_hz = -174.0;
    double rb_bandwidth_hz = 180e3;

    /// Inter-cell interference, fixed to 0 in the single-cell model; kept as
    /// a knob for forward compatibility.
    double intercell_interference_w = 0.0;

    std::uint64_t rng_seed = 1;

    int total_rbs() const {
        return std::accumulate(rb_pool_sizes.begin(), rb_pool_sizes.end(), 0);
    }

    /// Throws ConfigError on the first violated invariant.
    void validate() const {
        if (num_tenants < 2) throw ConfigError("num_tenants must be >= 2");
        if (cell_radius_m <= 0) throw ConfigError("cell_radius_m must be > 0");
        if (max_d2d_range_m <= 0) throw ConfigError("max_d2d_range_m must be > 0");
        if (num_cues < 0) throw ConfigError("num_cues must be >= 0");
        if (num_d2d_links < 0) throw ConfigError("num_d2d_links must be >= 0");
        if (d2d_initiator_tenant < -1 || d2d_initiator_tenant >= num_tenants)
            throw ConfigError("d2d_initiator_tenant must be -1 or a valid tenant id");
        if (l_max < 1) throw ConfigError("l_max must be >= 1");
        if (rb_bandwidth_hz <= 0) throw ConfigError("rb_bandwidth_hz must be > 0");
        if (shadowing_sigma_db < 0) throw ConfigError("shadowing_sigma_db must be >= 0");
        auto check_len = [&](std::size_t len, const char* name) {
            if (len != static_cast<std::size_t>(num_tenants))
                throw ConfigError(std::string(name) + " must have one entry per tenant");
        };
        check_len(cue_split.size(), "cue_split");
        check_len(rb_pool_sizes.size(), "rb_pool_sizes");
        check_len(cue_utilization.size(), "cue_utilization");
        double split_sum = 0.0;
        for (double f : cue_split) {
            if (f < 0.0 || f > 1.0) throw ConfigError("cue_split entries must be in [0,1]");
            split_sum += f;
        }
        if (std::fabs(split_sum - 1.0) > 1e-6) throw ConfigError("cue_split must sum to 1");
        for (double u : cue_utilization)
            if (u < 0.0 || u > 1.0) throw ConfigError("cue_utilization entries must be in [0,1]");
        for (int k : rb_pool_sizes)
            if (k < 1) throw ConfigError("rb_pool_sizes entries must be >= 1");
        if (num_d2d_links > total_rbs())
            throw ConfigError("num_d2d_links exceeds total RBs; every link needs one RB");
    }
};

/// CUE counts per tenant via largest-remainder rounding; ties broken by
/// tenant id. Always sums to total.
inline std::vector<int> cue_counts_per_tenant(const ScenarioConfig& cfg) {
    const int total = cfg.num_cues;
    std::vector<int> counts(cfg.num_tenants);
    std::vector<std::pair<double, int>> remainders;  // (-fraction, tenant)
    int assigned = 0;
    for (int n = 0; n < cfg.num_tenants; ++n) {
        double quota = cfg.cue_split[n] * total;
        counts[n] = static_cast<int>(std::floor(quota));
        assigned += counts[n];
        remainders.push_back({-(quota - counts[n]), n});
    }
    std::sort(remainders.begin(), remainders.end());
    for (int i = 0; i < total - assigned; ++i) counts[remainders[i].second] += 1;
    return counts;
}

}  // namespace d2dshare
