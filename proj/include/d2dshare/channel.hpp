#pragma once

// Link budget and rate model.
//
// The channel is frequency-flat: a gain is drawn once per link pair per
// trial (path loss + lognormal shadowing) and does not vary across RBs.
// Rate differences across RBs therefore come solely from which CUE, if any,
// occupies each RB. Inter-cell interference is fixed to 0 (single cell).
//
// The rate table embeds feasibility: entry (i, k) is 0 whenever the D2D
// SINR on RB k falls below gamma_th or assigning link i to k would push the
// co-channel CUE's uplink SINR below gamma_tilde_th. Since allocations keep
// D2D links mutually orthogonal, both checks are pairwise and can be baked
// into the data once.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "d2dshare/config.hpp"
#include "d2dshare/rng.hpp"
#include "d2dshare/scheduler.hpp"
#include "d2dshare/topology.hpp"
#include "d2dshare/units.hpp"

namespace d2dshare {

/// 3GPP-style D2D path loss, d in kilometers.
inline double path_loss_d2d_db(double d_km) {
    if (d_km <= 0.0) throw std::domain_error("path loss undefined for d <= 0");
    return 148.0 + 40.0 * std::log10(d_km);
}

/// 3GPP-style cellular (UE-BS) path loss, d in kilometers.
inline double path_loss_cue_db(double d_km) {
    if (d_km <= 0.0) throw std::domain_error("path loss undefined for d <= 0");
    return 128.1 + 37.6 * std::log10(d_km);
}

/// Linear link gain from path loss plus a shadowing sample (both dB).
inline double link_gain(double pl_db, double shadow_db) {
    return std::pow(10.0, -(pl_db + shadow_db) / 10.0);
}

/// Thermal noise power over `bw_hz` given the noise PSD in dBm/Hz.
inline double noise_power_w(double psd_dbm_hz, double bw_hz) {
    if (bw_hz <= 0.0) throw std::domain_error("bandwidth must be > 0");
    return dbm_to_watts(psd_dbm_hz + 10.0 * std::log10(bw_hz));
}

/// Shannon capacity over one RB.
inline double shannon_rate(double sinr, double bw_hz) {
    return bw_hz * std::log2(1.0 + sinr);
}

struct ChannelRealization {
    std::vector<double> g_dd;               // desired-link gain per D2D link
    std::vector<std::vector<double>> g_cd;  // [cue][link]: CUE tx -> D2D rx
    std::vector<double> g_cb;               // CUE -> BS
    std::vector<double> g_db;               // D2D tx -> BS

    /// rate_table[link][rb], bit/s; 0 marks an infeasible (masked) pair.
    std::vector<std::vector<double>> rate_table;

    /// rb_cue[rb] = occupying CUE, or -1 when the RB is idle this trial.
    std::vector<CueId> rb_cue;

    double noise_power_w = 0.0;
    double p_cue_w = 0.0;
    double p_due_w = 0.0;
    double gamma_th = 0.0;        // linear
    double gamma_tilde_th = 0.0;  // linear
    double intercell_interference_w = 0.0;
    double rb_bandwidth_hz = 0.0;
};

/// D2D receive SINR of `link` on `rb` given the co-channel CUE (if any).
/// D2D-to-D2D interference never appears: allocations are orthogonal.
inline double d2d_sinr(const ChannelRealization& ch, LinkId link, RbId rb) {
    if (rb < 0 || rb >= static_cast<RbId>(ch.rb_cue.size()))
        throw std::out_of_range("unknown RB id");
    double denom = ch.noise_power_w + ch.intercell_interference_w;
    CueId cue = ch.rb_cue[rb];
    if (cue >= 0) denom += ch.g_cd[cue][link] * ch.p_cue_w;
    return ch.g_dd[link] * ch.p_due_w / denom;
}

/// True iff the CUE's uplink still meets gamma_tilde_th when `link`
/// transmits on the CUE's RB.
inline bool cue_protection_ok(const ChannelRealization& ch, CueId cue, LinkId link) {
    double denom = ch.g_db[link] * ch.p_due_w + ch.noise_power_w + ch.intercell_interference_w;
    return ch.g_cb[cue] * ch.p_cue_w / denom >= ch.gamma_tilde_th;
}

/// Draws all shadowing samples and precomputes the (link x RB) rate table.
/// Gains are capped at 1.0 (shadowing never amplifies past the physical
/// ceiling); distances are clamped to 1 m before the path-loss evaluation.
inline ChannelRealization build_rate_table(const Topology& topo, const CueSchedule& sched,
                                           const ScenarioConfig& cfg, Rng& rng) {
    const int num_links = static_cast<int>(topo.d2d_links.size());
    const int num_cues = static_cast<int>(topo.cues.size());
    const int num_rbs = topo.total_rbs();

    ChannelRealization ch;
    ch.noise_power_w = noise_power_w(cfg.noise_psd_dbm_hz, cfg.rb_bandwidth_hz);
    ch.p_cue_w = dbm_to_watts(cfg.p_cue_dbm);
    ch.p_due_w = dbm_to_watts(cfg.p_due_dbm);
    ch.gamma_th = db_to_linear(cfg.gamma_th_db);
    ch.gamma_tilde_th = db_to_linear(cfg.gamma_tilde_th_db);
    ch.intercell_interference_w = cfg.intercell_interference_w;
    ch.rb_bandwidth_hz = cfg.rb_bandwidth_hz;

    auto gain = [&](const Point& a, const Point& b, bool d2d_model) {
        double d_km = std::max(distance(a, b), 1.0) / 1000.0;  // 1 m clamp
        double pl = d2d_model ? path_loss_d2d_db(d_km) : path_loss_cue_db(d_km);
        double shadow = cfg.shadowing_sigma_db > 0.0 ? rng.normal(0.0, cfg.shadowing_sigma_db) : 0.0;
        return std::min(1.0, link_gain(pl, shadow));
    };

    // Draw order is fixed and independent of the CUE schedule, so a given
    // (topology, seed) always yields the same gains.
    ch.g_dd.resize(num_links);
    for (int i = 0; i < num_links; ++i)
        ch.g_dd[i] = gain(topo.d2d_links[i].tx_position, topo.d2d_links[i].rx_position, true);

    ch.g_db.resize(num_links);
    for (int i = 0; i < num_links; ++i)
        ch.g_db[i] = gain(topo.d2d_links[i].tx_position, topo.bs_position, false);

    ch.g_cb.resize(num_cues);
    for (int c = 0; c < num_cues; ++c)
        ch.g_cb[c] = gain(topo.cues[c].position, topo.bs_position, false);

    ch.g_cd.assign(num_cues, std::vector<double>(num_links));
    for (int c = 0; c < num_cues; ++c)
        for (int i = 0; i < num_links; ++i)
            ch.g_cd[c][i] = gain(topo.cues[c].position, topo.d2d_links[i].rx_position, true);

    ch.rb_cue.assign(num_rbs, -1);
    for (const auto& [rb, cue] : sched.rb_to_cue) ch.rb_cue[rb] = cue;

    ch.rate_table.assign(num_links, std::vector<double>(num_rbs, 0.0));
    for (int i = 0; i < num_links; ++i) {
        for (RbId k = 0; k < num_rbs; ++k) {
            double sinr = d2d_sinr(ch, i, k);
            if (sinr < ch.gamma_th) continue;
            CueId cue = ch.rb_cue[k];
            if (cue >= 0 && !cue_protection_ok(ch, cue, i)) continue;
            ch.rate_table[i][k] = shannon_rate(sinr, cfg.rb_bandwidth_hz);
        }
    }
    return ch;
}

}  // namespace d2dshare
