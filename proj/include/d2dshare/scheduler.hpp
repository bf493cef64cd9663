#pragma once

// Round-robin cellular scheduling: each active CUE occupies exactly one RB
// from its own tenant's pool, orthogonally.

#include <cmath>
#include <map>

#include "d2dshare/config.hpp"
#include "d2dshare/topology.hpp"

namespace d2dshare {

struct CueSchedule {
    std::map<RbId, CueId> rb_to_cue;
    std::map<CueId, RbId> cue_to_rb;
};

/// Per tenant, occupies the first ceil(utilization_n * K_n) RBs of the pool
/// (starting from an offset that rotates with trial_index, so no RB is
/// systematically favored across trials) with that tenant's lowest-index
/// CUEs. CUEs beyond the occupied count stay inactive for this trial.
inline CueSchedule schedule_cues(const Topology& topo, const ScenarioConfig& cfg,
                                 std::uint64_t trial_index) {
    CueSchedule sched;
    for (int n = 0; n < cfg.num_tenants; ++n) {
        const auto& pool = topo.rb_pools[n];
        const int k_n = static_cast<int>(pool.size());
        if (k_n == 0) {
            if (cfg.cue_utilization[n] > 0.0)
                throw ConfigError("tenant has positive utilization but an empty RB pool");
            continue;
        }

        std::vector<CueId> tenant_cues;
        for (std::size_t c = 0; c < topo.cues.size(); ++c)
            if (topo.cues[c].tenant == n) tenant_cues.push_back(static_cast<CueId>(c));

        const int wanted = static_cast<int>(std::ceil(cfg.cue_utilization[n] * k_n));
        const int occupied = std::min<int>(wanted, static_cast<int>(tenant_cues.size()));

        const int offset = static_cast<int>(trial_index % k_n);
        for (int j = 0; j < occupied; ++j) {
            RbId rb = pool[(offset + j) % k_n];
            CueId cue = tenant_cues[j];
            sched.rb_to_cue[rb] = cue;
            sched.cue_to_rb[cue] = rb;
        }
    }
    return sched;
}

}  // namespace d2dshare
