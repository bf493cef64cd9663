#include <doctest.h>

#include <sstream>

#include "d2dshare/rng.hpp"
#include "d2dshare/solver.hpp"

using namespace d2dshare;

namespace {

AllocationProblem make_problem(std::vector<std::vector<double>> rate, int l_max, double r_th) {
    AllocationProblem p;
    p.rate = std::move(rate);
    p.l_max = l_max;
    p.r_th = r_th;
    for (std::size_t i = 0; i < p.rate.size(); ++i) p.links.push_back(static_cast<int>(i));
    for (std::size_t k = 0; k < p.rate[0].size(); ++k) p.rbs.push_back(static_cast<int>(k));
    return p;
}

AllocationProblem random_problem(Rng& rng) {
    int links = 1 + static_cast<int>(rng.uniform(0, 5));
    int rbs = 1 + static_cast<int>(rng.uniform(0, 10));
    std::vector<std::vector<double>> rate(links, std::vector<double>(rbs));
    for (auto& row : rate)
        for (auto& v : row) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.1, 10.0);
    int l_max = 1 + static_cast<int>(rng.uniform(0, 3));
    double r_th = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 6.0);
    return make_problem(std::move(rate), std::min(l_max, 3), r_th);
}

bool objectives_match(double a, double b) {
    return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TEST_CASE("two links, two RBs: assignment avoids the greedy trap") {
    auto p = make_problem({{5, 1}, {1, 4}}, 1, 0);
    auto [a, stats] = solve_exact(p);
    CHECK(a.status == AllocStatus::optimal);
    CHECK(a.objective_bps == doctest::Approx(9.0));
    CHECK(a.assigned[0] == std::vector<RbId>{0});
    CHECK(a.assigned[1] == std::vector<RbId>{1});
    CHECK(stats.bound_gap == 0.0);
    CHECK(verify(a, p).empty());
}

TEST_CASE("tied optima: objective is asserted, labeling is free") {
    auto p = make_problem({{5, 4}, {5, 4}}, 1, 0);
    auto [a, stats] = solve_exact(p);
    CHECK(a.objective_bps == doctest::Approx(9.0));
    CHECK(solve_oracle(p).objective_bps == doctest::Approx(9.0));
}

TEST_CASE("all-zero row is infeasible") {
    auto p = make_problem({{1, 2}, {0, 0}}, 1, 0);
    auto [a, stats] = solve_exact(p);
    CHECK(a.status == AllocStatus::infeasible);
    CHECK(solve_oracle(p).status == AllocStatus::infeasible);
}

TEST_CASE("single link takes its top-l_max RBs") {
    auto p = make_problem({{3, 7, 2}}, 2, 0);
    auto [a, stats] = solve_exact(p);
    CHECK(a.objective_bps == doctest::Approx(10.0));
    CHECK(a.assigned[0] == std::vector<RbId>{0, 1});
}

TEST_CASE("min-rate constraint forces larger subsets") {
    // each RB alone is below r_th=5; pairs are needed
    auto p = make_problem({{3, 3, 4}}, 2, 5);
    auto [a, stats] = solve_exact(p);
    CHECK(a.status == AllocStatus::optimal);
    CHECK(a.objective_bps == doctest::Approx(7.0));  // {3,4}
    CHECK(objectives_match(a.objective_bps, solve_oracle(p).objective_bps));
}

TEST_CASE("min-rate can make the instance infeasible") {
    auto p = make_problem({{1, 1}, {1, 1}}, 1, 1.5);
    auto [a, stats] = solve_exact(p);
    CHECK(a.status == AllocStatus::infeasible);
    CHECK(solve_oracle(p).status == AllocStatus::infeasible);
}

TEST_CASE("oracle equivalence over random instances") {
    Rng rng(2024);
    for (int iter = 0; iter < 1000; ++iter) {
        auto p = random_problem(rng);
        auto [exact, stats] = solve_exact(p);
        auto oracle = solve_oracle(p);
        REQUIRE(exact.status != AllocStatus::budget_exceeded);
        if (oracle.status == AllocStatus::infeasible) {
            REQUIRE(exact.status == AllocStatus::infeasible);
        } else {
            REQUIRE(exact.status == AllocStatus::optimal);
            REQUIRE_MESSAGE(objectives_match(exact.objective_bps, oracle.objective_bps),
                            "iter ", iter, ": exact=", exact.objective_bps,
                            " oracle=", oracle.objective_bps);
            REQUIRE(verify(exact, p).empty());
        }
    }
}

TEST_CASE("monotone in l_max") {
    Rng rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        auto p = random_problem(rng);
        p.r_th = 0.0;
        double prev = -1.0;
        for (int lm = 1; lm <= 3; ++lm) {
            p.l_max = lm;
            auto [a, stats] = solve_exact(p);
            if (a.status != AllocStatus::optimal) break;
            CHECK(a.objective_bps >= prev - 1e-9);
            prev = a.objective_bps;
        }
    }
}

TEST_CASE("node budget is reported, never silent") {
    // large enough to exercise the budget path
    Rng rng(5);
    std::vector<std::vector<double>> rate(12, std::vector<double>(30));
    for (auto& row : rate)
        for (auto& v : row) v = rng.uniform(0.1, 10.0);
    auto p = make_problem(std::move(rate), 3, 0);
    auto [a, stats] = solve_exact(p, SolveOptions{5});
    CHECK(a.status == AllocStatus::budget_exceeded);
    CHECK(stats.nodes_explored >= 5);
}

TEST_CASE("oracle guard refuses oversized instances") {
    std::vector<std::vector<double>> rate(6, std::vector<double>(4, 1.0));
    auto p = make_problem(std::move(rate), 1, 0);
    CHECK_THROWS_AS(solve_oracle(p), std::invalid_argument);
}

TEST_CASE("verify flags constraint violations by name") {
    auto p = make_problem({{5, 1, 0}, {1, 4, 0}}, 1, 0);
    Allocation a;
    a.status = AllocStatus::feasible;

    SUBCASE("RB shared between two links") {
        a.assigned = {{0, {0}}, {1, {0}}};
        a.objective_bps = 6.0;
        a.per_link_rate_bps = {{0, 5.0}, {1, 1.0}};
        auto v = verify(a, p);
        REQUIRE_FALSE(v.empty());
        CHECK(v[0].find("orthogonality") != std::string::npos);
    }
    SUBCASE("over the cardinality cap") {
        a.assigned = {{0, {0, 1}}, {1, {2}}};
        auto v = verify(a, p);
        bool found = false;
        for (const auto& msg : v)
            if (msg.find("max-RBs") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("masked pair") {
        a.assigned = {{0, {2}}, {1, {1}}};
        auto v = verify(a, p);
        bool found = false;
        for (const auto& msg : v)
            if (msg.find("mask") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("missing link") {
        a.assigned = {{0, {0}}};
        a.objective_bps = 5.0;
        a.per_link_rate_bps = {{0, 5.0}};
        auto v = verify(a, p);
        bool found = false;
        for (const auto& msg : v)
            if (msg.find("min-RBs") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("instance serialization round trip") {
    auto p = make_problem({{5, 1.25}, {1, 4}}, 2, 1.5);
    std::stringstream ss;
    save_problem(p, ss);
    auto q = load_problem(ss);
    CHECK(q.num_links() == 2);
    CHECK(q.num_rbs() == 2);
    CHECK(q.l_max == 2);
    CHECK(q.r_th == doctest::Approx(1.5));
    CHECK(q.rate[0][1] == doctest::Approx(1.25));

    std::stringstream bad("2 x nonsense");
    CHECK_THROWS(load_problem(bad));
}
