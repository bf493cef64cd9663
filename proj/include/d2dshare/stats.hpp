#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace d2dshare {

inline double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean of empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/// Half-width of the 95% confidence interval (normal approximation).
inline double ci95_halfwidth(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return 1.959963984540054 * sample_stddev(v) / std::sqrt(static_cast<double>(v.size()));
}

/// Empirical CDF with percentile queries by linear interpolation.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
        if (sorted_.empty()) throw std::invalid_argument("empty sample set");
        std::sort(sorted_.begin(), sorted_.end());
    }

    /// Value at percentile p in [0, 100].
    double percentile(double p) const {
        if (p < 0.0 || p > 100.0) throw std::invalid_argument("percentile outside [0,100]");
        if (sorted_.size() == 1) return sorted_.front();
        double pos = p / 100.0 * static_cast<double>(sorted_.size() - 1);
        auto lo = static_cast<std::size_t>(std::floor(pos));
        auto hi = std::min(lo + 1, sorted_.size() - 1);
        double frac = pos - static_cast<double>(lo);
        return sorted_[lo] * (1.0 - frac) + sorted_[hi] * frac;
    }

    const std::vector<double>& sorted_samples() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

}  // namespace d2dshare
