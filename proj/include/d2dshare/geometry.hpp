#pragma once

#include <cmath>
#include <stdexcept>

#include "d2dshare/rng.hpp"

namespace d2dshare {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// True iff p lies inside (or on the boundary of) the flat-top regular
/// hexagon of circumradius `radius` centered at the origin. The flat edges
/// are horizontal, at y = +-radius*sqrt(3)/2.
inline bool point_in_hexagon(const Point& p, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("hexagon radius must be > 0");
    const double s3 = std::sqrt(3.0);
    const double ax = std::fabs(p.x);
    const double ay = std::fabs(p.y);
    return ay <= radius * s3 / 2.0 && s3 * ax + ay <= s3 * radius;
}

/// Uniform sample inside the hexagon, by rejection from the bounding box.
inline Point sample_in_hexagon(double radius, Rng& rng) {
    const double half_height = radius * std::sqrt(3.0) / 2.0;
    for (;;) {
        Point p{rng.uniform(-radius, radius), rng.uniform(-half_height, half_height)};
        if (point_in_hexagon(p, radius)) return p;
    }
}

/// Uniform sample inside the disc of radius `r` around `center`
/// (area-proportional: radius = r * sqrt(u)).
inline Point sample_in_disc(const Point& center, double r, Rng& rng) {
    const double rho = r * std::sqrt(rng.uniform());
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    return {center.x + rho * std::cos(theta), center.y + rho * std::sin(theta)};
}

}  // namespace d2dshare
