#ifndef RELUANGLE_STATS_HPP
#define RELUANGLE_STATS_HPP

#include <cstdint>
#include <span>

namespace reluangle::stats {

struct KSResult {
    double statistic = 0;  // sup-norm distance D in [0,1]
    double p_value = 0;    // asymptotic Kolmogorov distribution
    std::int64_t sample_size = 0;
};

// One-sample two-sided Kolmogorov-Smirnov test of `sample` against
// Normal(mu, sigma^2). The p-value uses the asymptotic series
// 2 sum_k (-1)^{k-1} exp(-2 k^2 m D^2); adequate for the large samples this
// project works with, conservative below m ~ 50.
KSResult ks_test_normal(std::span<const double> sample, double mu, double sigma);

struct Interval {
    double lo = 0, hi = 0;
};

// Normal-approximation confidence interval for the mean: xbar +/- z s/sqrt(m).
Interval mean_ci(std::span<const double> sample, double level);

// Large-sample CI for the variance from the asymptotic law of the sample
// variance, Var(s^2) ~ (m4 - s^4)/m.
Interval variance_ci(std::span<const double> sample, double level);

}  // namespace reluangle::stats

#endif
