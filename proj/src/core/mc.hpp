#ifndef RELUANGLE_MC_HPP
#define RELUANGLE_MC_HPP

#include <cstdint>
#include <functional>

namespace reluangle::oracle {

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

// Sample mean of f(G, G_hat) over i.i.d. correlated standard Gaussian pairs,
// G_hat = G cos(theta) + W sin(theta). Deterministic given the seed.
McResult mc_expectation(const std::function<double(double, double)>& f, double theta,
                        std::int64_t samples, std::uint64_t seed);

// Empirical moments of the norm-ratio variable R and of R sin^2 built
// directly from n correlated pairs per trial. cov is Cov(R sin^2, R).
struct RStatistics {
    double mean_R = 0, var_R = 0, mean_Rsin2 = 0, var_Rsin2 = 0, cov = 0;
    double se_mean_R = 0, se_var_R = 0, se_mean_Rsin2 = 0, se_var_Rsin2 = 0, se_cov = 0;
    std::int64_t trials = 0;
};

RStatistics mc_R_statistics(double theta, int n, std::int64_t trials, std::uint64_t seed);

}  // namespace reluangle::oracle

#endif
