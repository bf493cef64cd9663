#include <doctest.h>

#include "d2dshare/geometry.hpp"
#include "d2dshare/rng.hpp"

using namespace d2dshare;

namespace {

// Independent half-plane-intersection oracle for the flat-top hexagon:
// inside iff the point is on the inner side of all six edges.
bool hexagon_oracle(const Point& p, double r) {
    const double pi = 3.14159265358979323846;
    for (int e = 0; e < 6; ++e) {
        // Edge midpoint normal directions for a flat-top hexagon point at
        // angles 30 + 60e degrees; apothem r*sqrt(3)/2.
        double ang = pi / 6.0 + e * pi / 3.0;
        double nx = std::cos(ang), ny = std::sin(ang);
        if (p.x * nx + p.y * ny > r * std::sqrt(3.0) / 2.0 + 1e-12) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("hexagon membership basics") {
    CHECK(point_in_hexagon({0, 0}, 400));
    CHECK_FALSE(point_in_hexagon({400 * 1.01, 0}, 400));
    // inradius of the flat-top hexagon is r*sqrt(3)/2
    CHECK(point_in_hexagon({0, 400 * std::sqrt(3.0) / 2.0 * 0.999}, 400));
    CHECK_FALSE(point_in_hexagon({0, 400 * std::sqrt(3.0) / 2.0 * 1.001}, 400));
    CHECK(point_in_hexagon({400, 0}, 400));  // vertex on boundary
    CHECK_THROWS_AS(point_in_hexagon({0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("hexagon membership matches half-plane oracle") {
    Rng rng(7);
    int checked = 0;
    for (int i = 0; i < 20000; ++i) {
        Point p{rng.uniform(-500, 500), rng.uniform(-500, 500)};
        // skip points within float-noise of the boundary
        bool a = point_in_hexagon(p, 400);
        bool b = hexagon_oracle(p, 400);
        if (a != b) {
            CHECK_MESSAGE(a == b, "disagreement at (", p.x, ",", p.y, ")");
        }
        ++checked;
    }
    CHECK(checked == 20000);
}

TEST_CASE("hexagon sampling stays inside and covers corners") {
    Rng rng(11);
    bool near_right_vertex = false;
    for (int i = 0; i < 20000; ++i) {
        Point p = sample_in_hexagon(300, rng);
        REQUIRE(point_in_hexagon(p, 300));
        if (p.x > 280) near_right_vertex = true;
    }
    CHECK(near_right_vertex);  // rejection sampling reaches the vertices
}

TEST_CASE("disc sampling is area-proportional") {
    Rng rng(13);
    const int n = 40000;
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = distance({0, 0}, sample_in_disc({0, 0}, 100, rng));
    std::sort(d.begin(), d.end());
    // median distance of uniform-in-disc is r/sqrt(2)
    CHECK(d[n / 2] == doctest::Approx(100.0 / std::sqrt(2.0)).epsilon(0.02));
    CHECK(d.back() <= 100.0);
}
