#include <doctest.h>

#include <set>

#include "d2dshare/scheduler.hpp"

using namespace d2dshare;

namespace {

ScenarioConfig cfg_with(int cues, std::vector<double> split, std::vector<int> pools,
                        std::vector<double> util) {
    ScenarioConfig cfg;
    cfg.num_cues = cues;
    cfg.cue_split = std::move(split);
    cfg.rb_pool_sizes = std::move(pools);
    cfg.cue_utilization = std::move(util);
    cfg.num_d2d_links = 1;
    return cfg;
}

}  // namespace

TEST_CASE("full utilization with matching CUE count is a bijection") {
    auto cfg = cfg_with(75, {2.0 / 3.0, 1.0 / 3.0}, {50, 25}, {1.0, 1.0});
    Rng rng(5);
    Topology topo = generate_topology(cfg, rng);
    auto sched = schedule_cues(topo, cfg, 0);
    CHECK(sched.rb_to_cue.size() == 75);
    CHECK(sched.cue_to_rb.size() == 75);
    // injective both ways
    std::set<CueId> cues;
    for (const auto& [rb, cue] : sched.rb_to_cue) CHECK(cues.insert(cue).second);
    // each CUE's RB in its own tenant's pool
    for (const auto& [cue, rb] : sched.cue_to_rb) {
        const auto& pool = topo.rb_pools[topo.cues[cue].tenant];
        CHECK(std::find(pool.begin(), pool.end(), rb) != pool.end());
    }
}

TEST_CASE("zero utilization gives an empty schedule") {
    auto cfg = cfg_with(50, {0.5, 0.5}, {25, 25}, {0.0, 0.0});
    Rng rng(5);
    Topology topo = generate_topology(cfg, rng);
    auto sched = schedule_cues(topo, cfg, 3);
    CHECK(sched.rb_to_cue.empty());
}

TEST_CASE("partial utilization occupies ceil(u*K) RBs") {
    auto cfg = cfg_with(50, {0.5, 0.5}, {50, 25}, {0.0, 0.2});
    Rng rng(5);
    Topology topo = generate_topology(cfg, rng);
    auto sched = schedule_cues(topo, cfg, 0);
    CHECK(sched.rb_to_cue.size() == 5);  // ceil(0.2 * 25)
    for (const auto& [rb, cue] : sched.rb_to_cue) CHECK(topo.cues[cue].tenant == 1);
}

TEST_CASE("occupied count is min(ceil(u*K), C_n)") {
    // tenant 0: 3 CUEs but 10 RBs at 100% -> only 3 occupied
    auto cfg = cfg_with(6, {0.5, 0.5}, {10, 10}, {1.0, 1.0});
    Rng rng(5);
    Topology topo = generate_topology(cfg, rng);
    auto sched = schedule_cues(topo, cfg, 0);
    CHECK(sched.rb_to_cue.size() == 6);
}

TEST_CASE("round-robin offset rotates across trials") {
    auto cfg = cfg_with(50, {0.5, 0.5}, {10, 10}, {0.5, 0.5});
    Rng rng(5);
    Topology topo = generate_topology(cfg, rng);

    std::map<RbId, int> occupancy;
    const int trials = 20;  // two full rotations of K=10
    for (int t = 0; t < trials; ++t) {
        auto sched = schedule_cues(topo, cfg, t);
        for (const auto& [rb, cue] : sched.rb_to_cue) occupancy[rb] += 1;
    }
    // fairness: every RB occupied at least floor(trials * u) times
    for (int n = 0; n < 2; ++n)
        for (RbId rb : topo.rb_pools[n]) CHECK(occupancy[rb] >= trials / 2);
}
