#ifndef RELUANGLE_DYNAMICS_HPP
#define RELUANGLE_DYNAMICS_HPP

#include <cstdint>
#include <vector>

namespace reluangle::dynamics {

// Width-dependent drift constant: ln((n+5)/(n-1)) - 10n/(n+5)^2 + 6n/(n-1)^2,
// = 2/n + O(n^-2). Requires n >= 2.
double rho(int n);

// Exact moments of R and R sin^2 as polynomials in 1/n (all irreducible
// patterns contribute at most n^-3, so there is no remainder).
struct RMoments {
    double E_R;
    double Var_R;
    double E_Rsin2;
    double Var_Rsin2;
    double Cov;  // Cov(R sin^2, R)
};
RMoments moments_of_R(double theta, int n);

struct LayerLaw {
    double mu;
    double sigma_sq;
};

// Below this angle the exact sigma^2 expression turns 0/0 and the law
// delegates to the small-angle series.
inline constexpr double kSmallThetaSwitch = 1e-3;

// Conditional law of ln sin^2(theta') given theta at width n, from the exact
// leading-order moment expressions built on J11, J22, J31. theta must lie
// strictly inside (0, pi).
LayerLaw layer_law(double theta, int n);

// Same exact expressions evaluated in 384-bit arithmetic with no small-angle
// switch; used by validation where double precision cancels out.
LayerLaw layer_law_hp(double theta, int n);

// Small-theta series for mu and sigma^2 (through theta^2, error O(theta^3)).
LayerLaw asymptotic_law(double theta, int n);

// One deterministic small-angle step: theta' with
// ln sin^2(theta') = ln sin^2(theta) - (2/(3 pi)) theta - rho(n).
double simple_update(double theta, int n);

// Deterministic infinite-width step: cos(theta') = 2 J11(theta).
double infinite_width_update(double theta);

enum class PredictMode { kMeanChain, kGaussianSampling };

struct LayerPrediction {
    int layer = 0;
    double mean = 0;       // mean of ln sin^2 theta at this layer
    double variance = 0;   // ensemble variance; one-step sigma^2 in mean-chain mode
    double q05 = 0, q25 = 0, q50 = 0, q75 = 0, q95 = 0;  // NaN in mean-chain mode
    double theta_point = 0;  // angle implied by `mean`
    std::int64_t clamped = 0;  // sampled ln sin^2 > 0 clamped to 0 at this layer
};

struct TrajectoryPrediction {
    PredictMode mode;
    std::vector<LayerPrediction> layers;  // index 0 echoes the input angle
    std::int64_t total_clamped = 0;
};

// Multi-layer prediction. widths[i] is the width of hidden layer i+1, i.e.
// the number of Gaussian pairs behind the transition into that layer.
// Mean-chain mode iterates theta through mu deterministically; sampling mode
// draws ln sin^2 from the conditional Gaussian per chain. rho_zero adds
// rho(n) back to every mu, the infinite-width-style toggle.
TrajectoryPrediction predict_trajectory(double theta0, const std::vector<int>& widths,
                                        PredictMode mode, int ensemble, std::uint64_t seed,
                                        bool rho_zero = false);

}  // namespace reluangle::dynamics

#endif
