#include "cutwalk/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace cutwalk {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - spread), std::min(1.0, center + spread)};
}

Interval mean_normal_interval(double mean, double sample_sd, std::uint64_t n, double z) {
    if (n == 0) return {mean, mean};
    const double se = sample_sd / std::sqrt(static_cast<double>(n));
    return {mean - z * se, mean + z * se};
}

LineFit least_squares_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("least_squares_line needs >= 2 points");
    const double n = static_cast<double>(xs.size());
    KahanSum sx, sy, sxx, sxy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx.add(xs[i]);
        sy.add(ys[i]);
        sxx.add(xs[i] * xs[i]);
        sxy.add(xs[i] * ys[i]);
    }
    const double det = n * sxx.value() - sx.value() * sx.value();
    if (det == 0.0) throw std::invalid_argument("least_squares_line: degenerate x values");
    LineFit fit;
    fit.slope = (n * sxy.value() - sx.value() * sy.value()) / det;
    fit.intercept = (sy.value() - fit.slope * sx.value()) / n;
    KahanSum rss;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        rss.add(r * r);
    }
    fit.rms_residual = std::sqrt(rss.value() / n);
    return fit;
}

double sample_mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = sample_mean(xs);
    KahanSum s;
    for (double x : xs) s.add((x - m) * (x - m));
    return std::sqrt(s.value() / static_cast<double>(xs.size() - 1));
}

}  // namespace cutwalk
