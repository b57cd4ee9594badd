#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "rng.hpp"

namespace reluangle::stats {

namespace {

void moments(std::span<const double> sample, double& mean, double& var, double& m4) {
    const double m = static_cast<double>(sample.size());
    mean = 0;
    for (double x : sample) mean += x;
    mean /= m;
    var = 0;
    m4 = 0;
    for (double x : sample) {
        const double d = x - mean;
        var += d * d;
        m4 += d * d * d * d;
    }
    var /= (m - 1);
    m4 /= m;
}

}  // namespace

KSResult ks_test_normal(std::span<const double> sample, double mu, double sigma) {
    if (sample.size() < 8) throw invalid_argument_error("ks_test_normal: need sample size >= 8");
    if (!(sigma > 0.0)) throw domain_error("ks_test_normal: sigma must be positive");

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = rng::normal_cdf((sorted[i] - mu) / sigma);
        d = std::max(d, (static_cast<double>(i) + 1) / m - f);
        d = std::max(d, f - static_cast<double>(i) / m);
    }

    const double lambda_sq = m * d * d;
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 1000; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda_sq);
        p += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    p = std::clamp(2.0 * p, 0.0, 1.0);

    KSResult out;
    out.statistic = d;
    out.p_value = p;
    out.sample_size = static_cast<std::int64_t>(sorted.size());
    return out;
}

Interval mean_ci(std::span<const double> sample, double level) {
    if (sample.size() < 2) throw invalid_argument_error("mean_ci: need sample size >= 2");
    if (!(level > 0.0 && level < 1.0)) throw domain_error("mean_ci: level must be in (0,1)");
    double mean, var, m4;
    moments(sample, mean, var, m4);
    const double z = rng::inverse_normal_cdf(0.5 + level / 2);
    const double half = z * std::sqrt(var / static_cast<double>(sample.size()));
    return {mean - half, mean + half};
}

Interval variance_ci(std::span<const double> sample, double level) {
    if (sample.size() < 2) throw invalid_argument_error("variance_ci: need sample size >= 2");
    if (!(level > 0.0 && level < 1.0)) throw domain_error("variance_ci: level must be in (0,1)");
    double mean, var, m4;
    moments(sample, mean, var, m4);
    const double z = rng::inverse_normal_cdf(0.5 + level / 2);
    const double se = std::sqrt(std::max(0.0, m4 - var * var) / static_cast<double>(sample.size()));
    return {var - z * se, var + z * se};
}

}  // namespace reluangle::stats
