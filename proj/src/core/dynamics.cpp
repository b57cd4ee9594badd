#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "common.hpp"
#include "jfun.hpp"
#include "mpreal_ops.hpp"
#include "rng.hpp"

namespace reluangle::dynamics {

namespace {

void check_width(int n, const char* what) {
    if (n < 2) throw domain_error(std::string(what) + ": width must be >= 2, got " + std::to_string(n));
}

void check_open_angle(double theta, const char* what) {
    if (!(theta > 0.0 && theta < kPi))
        throw domain_error(std::string(what) + ": angle must lie strictly in (0, pi)");
}

template <class Real>
struct LawT {
    Real mu, sigma_sq;
};

// Exact leading-order law from the moment expressions. Shared between the
// double path and the 384-bit path.
template <class Real>
LawT<Real> law_exact_t(Real theta, int n) {
    using namespace reluangle::gauss::detail;
    using ops = real_ops<Real>;
    JRecursive<Real> j(theta);
    const Real j11 = j.eval(1, 1), j22 = j.eval(2, 2), j31 = j.eval(3, 1);
    const Real nn = n;
    const Real e_r = (4 * j22 - 1 + nn) / nn;
    const Real e_rs = (nn - 1) * (1 - 4 * j11 * j11) / nn;
    const Real v1 = -8 * j11 * j11 * j11 * j11 + 8 * j11 * j11 * j22 + 4 * j11 * j11 -
                    8 * j11 * j31 + j22 + 1;
    const Real var_r = 8 * (j22 + 1) / nn;
    const Real var_rs = 8 * v1 / nn;
    const Real cov = 8 * (2 * j11 * j11 - 4 * j11 * j31 + j22 + 1) / nn;
    LawT<Real> out;
    out.mu = ops::log(e_rs) - ops::log(e_r) - var_rs / (2 * e_rs * e_rs) +
             var_r / (2 * e_r * e_r);
    out.sigma_sq = var_rs / (e_rs * e_rs) + var_r / (e_r * e_r) - 2 * cov / (e_rs * e_r);
    return out;
}

}  // namespace

double rho(int n) {
    check_width(n, "rho");
    const double nd = n;
    return std::log((nd + 5) / (nd - 1)) - 10 * nd / ((nd + 5) * (nd + 5)) +
           6 * nd / ((nd - 1) * (nd - 1));
}

RMoments moments_of_R(double theta, int n) {
    Angle::checked(theta);
    check_width(n, "moments_of_R");
    using gauss::j_closed;
    const double j11 = j_closed(1, 1, theta);
    const double j22 = j_closed(2, 2, theta);
    const double j31 = j_closed(3, 1, theta);
    const double j33 = j_closed(3, 3, theta);
    const double j42 = j_closed(4, 2, theta);
    const double j44 = j_closed(4, 4, theta);
    const double nd = n, n2 = nd * nd, n3 = n2 * nd;

    RMoments m;
    m.E_R = (4 * j22 - 1) / nd + 1;
    m.Var_R = 8 * (j22 + 1) / nd +
              16 / n2 * (2 * j42 - 2.5 * j22 + j22 * j22 + 0.625) +
              16 / n3 * (j44 - 2 * j42 - 2 * j22 * j22 + 2 * j22 - 1.125);
    m.E_Rsin2 = (nd - 1) * (1 - 4 * j11 * j11) / nd;
    m.Var_Rsin2 =
        8 / nd *
            (-8 * std::pow(j11, 4) + 8 * j11 * j11 * j22 + 4 * j11 * j11 - 8 * j11 * j31 +
             j22 + 1) +
        2 / n2 *
            (80 * std::pow(j11, 4) - 96 * j11 * j11 * j22 - 40 * j11 * j11 + 96 * j11 * j31 +
             24 * j22 * j22 - 12 * j22 - 32 * j31 * j31 + 5) +
        2 / n3 *
            (-48 * std::pow(j11, 4) + 64 * j11 * j11 * j22 + 24 * j11 * j11 - 64 * j11 * j31 -
             24 * j22 * j22 + 8 * j22 + 32 * j31 * j31 - 9);
    m.Cov = 1 / nd * (16 * j11 * j11 - 32 * j11 * j31 + 8 * j22 + 8) +
            1 / n2 *
                (32 * j11 * j11 * j22 - 40 * j11 * j11 + 96 * j11 * j31 - 32 * j11 * j33 +
                 16 * j22 * j22 - 32 * j22 - 32 * j31 * j31 + 16 * j42 + 10) +
            1 / n3 *
                (24 * j11 * j11 - 32 * j11 * j11 * j22 - 64 * j11 * j31 + 32 * j11 * j33 -
                 16 * j22 * j22 + 24 * j22 + 32 * j31 * j31 - 16 * j42 - 18);
    return m;
}

LayerLaw layer_law(double theta, int n) {
    check_width(n, "layer_law");
    check_open_angle(theta, "layer_law");
    if (theta < kSmallThetaSwitch) return asymptotic_law(theta, n);
    const auto law = law_exact_t<double>(theta, n);
    return {law.mu, law.sigma_sq};
}

LayerLaw layer_law_hp(double theta, int n) {
    check_width(n, "layer_law_hp");
    check_open_angle(theta, "layer_law_hp");
    const auto law = law_exact_t<reluangle::hp::MpReal>(reluangle::hp::MpReal(theta), n);
    return {law.mu.to_double(), law.sigma_sq.to_double()};
}

LayerLaw asymptotic_law(double theta, int n) {
    check_width(n, "asymptotic_law");
    if (!(theta > 0.0)) throw domain_error("asymptotic_law: angle must be positive");
    const double nd = n;
    const double s = std::sin(theta);
    LayerLaw out;
    out.mu = std::log(s * s) - 2.0 / (3 * kPi) * theta - rho(n) - 8 * theta / (15 * kPi * nd) -
             (2.0 / (9 * kPi * kPi) - 68.0 / (45 * kPi * kPi * nd)) * theta * theta;
    out.sigma_sq = 8 / nd - 64.0 / (15 * kPi) * theta / nd -
                   (8 + 296.0 / (45 * kPi)) * theta * theta / nd;
    return out;
}

double simple_update(double theta, int n) {
    check_width(n, "simple_update");
    if (!(theta > 0.0 && theta <= kPi / 2))
        throw domain_error("simple_update: angle must lie in (0, pi/2]");
    const double s = std::sin(theta);
    const double arg = s * s * std::exp(-2.0 / (3 * kPi) * theta - rho(n));
    if (!(arg >= 0.0 && arg <= 1.0))
        throw consistency_error("simple_update: sin^2 left [0,1]");
    return std::asin(std::sqrt(arg));
}

double infinite_width_update(double theta) {
    Angle::checked(theta);
    const double c = 2 * gauss::j_base(1, 1, theta);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

TrajectoryPrediction predict_trajectory(double theta0, const std::vector<int>& widths,
                                        PredictMode mode, int ensemble, std::uint64_t seed,
                                        bool rho_zero) {
    if (!(theta0 > 0.0 && theta0 <= kPi / 2))
        throw domain_error("predict_trajectory: theta0 must lie in (0, pi/2]");
    for (int w : widths) check_width(w, "predict_trajectory");
    if (mode == PredictMode::kGaussianSampling && ensemble < 1)
        throw invalid_argument_error("predict_trajectory: ensemble must be >= 1");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    TrajectoryPrediction out;
    out.mode = mode;
    const double x0 = std::log(std::sin(theta0) * std::sin(theta0));

    LayerPrediction l0;
    l0.layer = 0;
    l0.mean = x0;
    l0.variance = 0.0;
    l0.q05 = l0.q25 = l0.q50 = l0.q75 = l0.q95 =
        (mode == PredictMode::kGaussianSampling) ? x0 : nan;
    l0.theta_point = theta0;
    out.layers.push_back(l0);

    const int depth = static_cast<int>(widths.size());

    if (mode == PredictMode::kMeanChain) {
        double theta = theta0;
        for (int l = 0; l < depth; ++l) {
            auto law = layer_law(theta, widths[l]);
            if (rho_zero) law.mu += rho(widths[l]);
            const double x = law.mu;
            theta = std::asin(std::sqrt(std::min(1.0, std::exp(x))));
            LayerPrediction p;
            p.layer = l + 1;
            p.mean = x;
            p.variance = law.sigma_sq;  // one-step conditional variance only
            p.q05 = p.q25 = p.q50 = p.q75 = p.q95 = nan;
            p.theta_point = theta;
            out.layers.push_back(p);
        }
        return out;
    }

    // Gaussian sampling: independent chains, one derived stream per chain.
    std::vector<double> theta_chain(ensemble, theta0);
    std::vector<std::vector<double>> xs(depth, std::vector<double>(ensemble));
    std::vector<std::int64_t> clamped(depth, 0);
    for (int c = 0; c < ensemble; ++c) {
        rng::Philox gen(seed, static_cast<std::uint64_t>(c));
        double theta = theta0;
        for (int l = 0; l < depth; ++l) {
            auto law = layer_law(theta, widths[l]);
            if (rho_zero) law.mu += rho(widths[l]);
            double x = law.mu + std::sqrt(law.sigma_sq) * gen.next_normal();
            if (x > 0.0) {
                x = 0.0;
                ++clamped[l];
            }
            xs[l][c] = x;
            theta = std::asin(std::sqrt(std::exp(x)));
        }
    }

    for (int l = 0; l < depth; ++l) {
        auto& v = xs[l];
        double mean = 0;
        for (double x : v) mean += x;
        mean /= ensemble;
        double var = 0;
        for (double x : v) var += (x - mean) * (x - mean);
        var = (ensemble > 1) ? var / (ensemble - 1) : 0.0;
        std::sort(v.begin(), v.end());
        auto quantile = [&](double p) {
            if (ensemble == 1) return v[0];
            const double pos = p * (ensemble - 1);
            const std::size_t k = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(k);
            return (k + 1 < v.size()) ? v[k] * (1 - frac) + v[k + 1] * frac : v[k];
        };
        LayerPrediction p;
        p.layer = l + 1;
        p.mean = mean;
        p.variance = var;
        p.q05 = quantile(0.05);
        p.q25 = quantile(0.25);
        p.q50 = quantile(0.50);
        p.q75 = quantile(0.75);
        p.q95 = quantile(0.95);
        p.theta_point = std::asin(std::sqrt(std::min(1.0, std::exp(mean))));
        p.clamped = clamped[l];
        out.total_clamped += clamped[l];
        out.layers.push_back(p);
    }
    return out;
}

}  // namespace reluangle::dynamics
