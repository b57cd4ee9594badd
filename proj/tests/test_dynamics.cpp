#include <doctest.h>

#include <cmath>
#include <vector>

#include "common.hpp"
#include "dynamics.hpp"
#include "jfun.hpp"
#include "mc.hpp"

using namespace reluangle;
using namespace reluangle::dynamics;

namespace {

// The mean/variance formulas written out as single expressions, an
// algebraic cross-check of the building-block form in the library.
LayerLaw law_display(double t, double n) {
    const double j11 = gauss::j_closed(1, 1, t);
    const double j22 = gauss::j_closed(2, 2, t);
    const double j31 = gauss::j_closed(3, 1, t);
    const double num = 8 * j11 * j11 * j22 - 8 * std::pow(j11, 4) + 4 * j11 * j11 -
                       8 * j11 * j31 + j22 + 1;
    LayerLaw out;
    out.mu = std::log((n - 1) * (1 - 4 * j11 * j11) / (4 * j22 - 1 + n)) +
             4 * (j22 + 1) / (n * std::pow((4 * j22 - 1) / n + 1, 2)) -
             4 * num / (n * std::pow(1 - 1 / n, 2) * std::pow(1 - 4 * j11 * j11, 2));
    out.sigma_sq = 8 * n * (j22 + 1) / std::pow(4 * j22 - 1 + n, 2) +
                   8 * n * num / (std::pow(n - 1, 2) * std::pow(1 - 4 * j11 * j11, 2)) -
                   16 * n * (2 * j11 * j11 - 4 * j11 * j31 + j22 + 1) /
                       ((4 * j22 - 1 + n) * (n - 1) * (1 - 4 * j11 * j11));
    return out;
}

}  // namespace

TEST_CASE("rho pinned values and limit") {
    CHECK(rho(2) == doctest::Approx(13.537746883749191).epsilon(1e-14));
    CHECK(rho(256) == doctest::Approx(0.009298357937435800).epsilon(1e-13));
    CHECK(std::abs(1e6 * rho(1000000) - 2.0) < 1e-4);
    CHECK_THROWS_AS(rho(1), domain_error);
}

TEST_CASE("moments_of_R anchors") {
    CHECK(moments_of_R(kPi / 2, 16).E_R == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(moments_of_R(kPi / 2, 7).E_R == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(moments_of_R(0.0, 10).E_R == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("moments_of_R agrees with the Monte Carlo oracle at (0.5, 8)") {
    const auto mc = oracle::mc_R_statistics(0.5, 8, 400000, 12345);
    const auto m = moments_of_R(0.5, 8);
    CHECK(std::abs(m.E_R - mc.mean_R) <= 4 * mc.se_mean_R);
    CHECK(std::abs(m.Var_R - mc.var_R) <= 4 * mc.se_var_R);
    CHECK(std::abs(m.E_Rsin2 - mc.mean_Rsin2) <= 4 * mc.se_mean_Rsin2);
    CHECK(std::abs(m.Var_Rsin2 - mc.var_Rsin2) <= 4 * mc.se_var_Rsin2);
    CHECK(std::abs(m.Cov - mc.cov) <= 4 * mc.se_cov);
}

TEST_CASE("moments_of_R consistency across a grid") {
    for (double t : {0.05, 0.3, 0.9, 1.6, 2.4, 3.0})
        for (int n : {2, 4, 16, 64, 512, 4096}) {
            const auto m = moments_of_R(t, n);
            CAPTURE(t);
            CAPTURE(n);
            CHECK(m.Var_R >= 0);
            CHECK(m.Var_Rsin2 >= 0);
            CHECK(std::abs(m.Cov) <= std::sqrt(m.Var_R * m.Var_Rsin2) + 1e-15);
        }
}

TEST_CASE("layer_law matches the single-expression form") {
    for (double t : {0.05, 0.3, 1.0, 2.0, 2.8})
        for (int n : {2, 8, 64, 1024}) {
            const auto got = layer_law(t, n);
            const auto want = law_display(t, n);
            CAPTURE(t);
            CAPTURE(n);
            CHECK(got.mu == doctest::Approx(want.mu).epsilon(1e-11));
            CHECK(got.sigma_sq == doctest::Approx(want.sigma_sq).epsilon(1e-9));
        }
}

TEST_CASE("layer_law pinned values at (0.3, 64)") {
    const auto law = layer_law(0.3, 64);
    CHECK(law.mu == doctest::Approx(-2.5543083397814980).epsilon(1e-12));
    CHECK(law.sigma_sq == doctest::Approx(0.09460547801421780).epsilon(1e-10));
}

TEST_CASE("layer_law small-angle behavior") {
    // sigma^2 -> 8/n and mu - ln sin^2 -> -rho(n) under the series branch
    const auto law = layer_law(1e-6, 256);
    CHECK(std::abs(law.sigma_sq - 8.0 / 256) <= 1e-3 * (8.0 / 256));
    const double lnsin2 = std::log(std::sin(1e-6) * std::sin(1e-6));
    CHECK(std::abs(law.mu - lnsin2 + rho(256)) <= 1e-4);
}

TEST_CASE("layer_law rejects the singular endpoints") {
    CHECK_THROWS_AS(layer_law(0.0, 64), domain_error);
    CHECK_THROWS_AS(layer_law(kPi, 64), domain_error);
    CHECK_THROWS_AS(layer_law(0.5, 1), domain_error);
}

TEST_CASE("hp evaluation agrees with double away from the switch") {
    for (double t : {0.05, 0.4, 1.2})
        for (int n : {16, 256}) {
            const auto a = layer_law(t, n);
            const auto b = layer_law_hp(t, n);
            CHECK(a.mu == doctest::Approx(b.mu).epsilon(1e-10));
            CHECK(a.sigma_sq == doctest::Approx(b.sigma_sq).epsilon(1e-8));
        }
}

TEST_CASE("switch continuity: mu nearly continuous, sigma^2 within the n^-2 envelope") {
    // The series branch carries the exact rho(n) constant, so mu is continuous
    // to ~1e-6 relative. The displayed sigma^2 differs from 8/n by ~10/n
    // relative at fixed n (an O(n^-2) absolute effect the small-theta series
    // does not model), so only the envelope can be asserted for it.
    for (int n : {64, 256, 1024}) {
        const auto exact = layer_law_hp(kSmallThetaSwitch, n);
        const auto series = asymptotic_law(kSmallThetaSwitch, n);
        CAPTURE(n);
        CHECK(std::abs(exact.mu - series.mu) <= 1e-6 * std::abs(exact.mu));
        CHECK(std::abs(exact.sigma_sq - series.sigma_sq) <=
              11.0 / n * std::abs(exact.sigma_sq));
    }
}

TEST_CASE("asymptotic_law pinned values") {
    const auto law = asymptotic_law(0.1, 256);
    CHECK(law.mu == doctest::Approx(-4.639309140136069).epsilon(1e-13));
    CHECK(law.sigma_sq == doctest::Approx(0.030325195566160347).epsilon(1e-13));
    CHECK(asymptotic_law(1e-30, 512).sigma_sq == doctest::Approx(8.0 / 512).epsilon(1e-12));
}

TEST_CASE("asymptotic and exact laws agree to cubic order in theta") {
    // Regression on the fitted constants C = max |mu_asym - mu_exact| / theta^3.
    // At fixed n an O(n^-2 theta) mismatch survives, so C grows toward the
    // small-theta end; the frozen bounds pin the observed behavior.
    const std::vector<int> widths = {64, 256, 1024};
    const std::vector<double> c_mu_bound = {25000.0, 2000.0, 200.0};
    for (std::size_t k = 0; k < widths.size(); ++k) {
        double c_mu = 0;
        for (double t = 1e-4; t <= 0.05; t *= 1.5) {
            const auto exact = layer_law_hp(t, widths[k]);
            const auto series = asymptotic_law(t, widths[k]);
            c_mu = std::max(c_mu, std::abs(series.mu - exact.mu) / (t * t * t));
        }
        CAPTURE(widths[k]);
        CHECK(c_mu <= c_mu_bound[k]);
    }
}

TEST_CASE("mu shrinks the angle in expectation") {
    for (double t = 0.01; t <= 1.0; t += 0.055)
        for (int n : {2, 16, 256, 4096}) {
            const double lnsin2 = std::log(std::sin(t) * std::sin(t));
            CAPTURE(t);
            CAPTURE(n);
            CHECK(layer_law(t, n).mu < lnsin2);
        }
}

TEST_CASE("n sigma^2 stays in [0, 8] and tends to 8") {
    // The [0, 8] band is an O(1/n)-regime statement; at n <= 5 the exact
    // law's n^-2 corrections push n sigma^2 as high as ~36, so the band is
    // asserted from n = 6 up and only positivity below.
    for (double t = 0.01; t <= 1.0; t += 0.055) {
        for (int n : {6, 16, 256, 4096}) {
            const double v = layer_law(t, n).sigma_sq * n;
            CAPTURE(t);
            CAPTURE(n);
            CHECK(v >= 0.0);
            CHECK(v <= 8.0 + 1e-9);
        }
        for (int n : {2, 4}) CHECK(layer_law(t, n).sigma_sq >= 0.0);
    }
    CHECK(layer_law(2e-4, 4096).sigma_sq * 4096 == doctest::Approx(8.0).epsilon(1e-3));
}

TEST_CASE("simple_update contracts and hits the pinned value") {
    CHECK(simple_update(0.1, 256) == doctest::Approx(0.09848067983821152).epsilon(1e-13));
    for (double t : {0.01, 0.3, 1.2, kPi / 2})
        for (int n : {2, 64, 1024}) CHECK(simple_update(t, n) < t);
    CHECK_THROWS_AS(simple_update(0.0, 64), domain_error);
    CHECK_THROWS_AS(simple_update(2.0, 64), domain_error);
}

TEST_CASE("simple_update chain obeys the exponential bound") {
    const int n = 256, L = 40;
    double t = 0.1;
    double rho_sum = 0;
    for (int l = 0; l < L; ++l) {
        t = simple_update(t, n);
        rho_sum += rho(n);
        CHECK(t <= 0.1 * std::exp(-rho_sum / 2) * (1 + 1e-12));
    }
}

TEST_CASE("infinite_width_update fixed point and pinned value") {
    CHECK(infinite_width_update(0.0) == doctest::Approx(0.0));
    CHECK(infinite_width_update(kPi / 2) == doctest::Approx(1.2468502198629159).epsilon(1e-13));
}

TEST_CASE("infinite width iteration decays like 1/l") {
    // l theta^l climbs toward 3 pi with an O(1/l) offset 3 pi / theta0; from
    // theta0 = 0.1 the drift between l = 500 and l = 1000 is ~8%.
    double t = 0.1;
    std::vector<double> snapshots;
    for (int l = 1; l <= 1000; ++l) {
        t = infinite_width_update(t);
        if (l == 500 || l == 1000) snapshots.push_back(l * t);
    }
    CHECK(snapshots[1] > snapshots[0]);
    CHECK(snapshots[1] < 3 * kPi);
    const double drift = (snapshots[1] - snapshots[0]) / snapshots[1];
    CHECK(drift == doctest::Approx(0.0805).epsilon(0.05));
    // removing the theta0 offset exposes the limit: (l + 3pi/theta0) theta^l
    CHECK((1000 + 3 * kPi / 0.1) * t == doctest::Approx(3 * kPi).epsilon(0.02));
}

TEST_CASE("predict_trajectory: depth 0 echoes the input") {
    const auto p = predict_trajectory(0.25, {}, PredictMode::kMeanChain, 1, 0);
    REQUIRE(p.layers.size() == 1);
    CHECK(p.layers[0].mean == doctest::Approx(std::log(std::sin(0.25) * std::sin(0.25))));
    CHECK(p.layers[0].variance == 0.0);
}

TEST_CASE("predict_trajectory: sampling mean matches the one-step law") {
    const std::vector<int> widths(1, 256);
    const auto p = predict_trajectory(0.3, widths, PredictMode::kGaussianSampling, 20000, 7);
    const auto law = layer_law(0.3, 256);
    REQUIRE(p.layers.size() == 2);
    const double se = std::sqrt(law.sigma_sq / 20000);
    CHECK(std::abs(p.layers[1].mean - law.mu) <= 4 * se);
    CHECK(p.layers[1].variance == doctest::Approx(law.sigma_sq).epsilon(0.05));
}

TEST_CASE("predict_trajectory: sampling variance grows with depth") {
    const std::vector<int> widths(30, 256);
    const auto p = predict_trajectory(0.1, widths, PredictMode::kGaussianSampling, 4000, 11);
    for (std::size_t l = 1; l < p.layers.size(); ++l)
        CHECK(p.layers[l].variance >= p.layers[l - 1].variance * 0.98);
}

TEST_CASE("rho_zero mean chain differs by the accumulated rho") {
    const std::vector<int> widths(30, 256);
    const auto full = predict_trajectory(0.1, widths, PredictMode::kMeanChain, 1, 0, false);
    const auto nr = predict_trajectory(0.1, widths, PredictMode::kMeanChain, 1, 0, true);
    const double diff = nr.layers[30].mean - full.layers[30].mean;
    const double want = 30 * rho(256);
    CHECK(std::abs(diff - want) <= 0.25 * want);
}

TEST_CASE("predict_trajectory is deterministic in the seed") {
    const std::vector<int> widths(5, 64);
    const auto a = predict_trajectory(0.2, widths, PredictMode::kGaussianSampling, 500, 99);
    const auto b = predict_trajectory(0.2, widths, PredictMode::kGaussianSampling, 500, 99);
    for (std::size_t l = 0; l < a.layers.size(); ++l) {
        CHECK(a.layers[l].mean == b.layers[l].mean);
        CHECK(a.layers[l].q75 == b.layers[l].q75);
    }
}
