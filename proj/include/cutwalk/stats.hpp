#pragma once

#include <cstdint>
#include <vector>

namespace cutwalk {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double half_width() const { return (hi - lo) / 2.0; }
};

/// Wilson score interval for a binomial proportion (default 95%).
/// Well-behaved for proportions near 0, which cut densities on boundary
/// cases routinely are.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

/// Normal-approximation interval for a mean given a sample standard deviation.
Interval mean_normal_interval(double mean, double sample_sd, std::uint64_t n,
                              double z = 1.959963984540054);

/// Compensated accumulation; 1e7-term sums must hold 1e-12 tolerances.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

LineFit least_squares_line(const std::vector<double>& xs, const std::vector<double>& ys);

double sample_mean(const std::vector<double>& xs);
double sample_sd(const std::vector<double>& xs);  // unbiased (n-1)

}  // namespace cutwalk
