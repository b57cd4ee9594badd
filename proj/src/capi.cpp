#include "reluangle.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "combinatorics.hpp"
#include "common.hpp"
#include "dynamics.hpp"
#include "jfun.hpp"
#include "jfun_hp.hpp"
#include "mc.hpp"
#include "netsim.hpp"
#include "quadrature.hpp"
#include "stats.hpp"

using namespace reluangle;

namespace {

thread_local std::string g_last_error;

template <class Fn>
ra_status guarded(Fn&& fn) {
    try {
        fn();
        return RA_OK;
    } catch (const domain_error& e) {
        g_last_error = e.what();
        return RA_ERR_DOMAIN;
    } catch (const invalid_argument_error& e) {
        g_last_error = e.what();
        return RA_ERR_INVALID_ARGUMENT;
    } catch (const accuracy_error& e) {
        g_last_error = e.what();
        return RA_ERR_ACCURACY_NOT_REACHED;
    } catch (const overflow_error& e) {
        g_last_error = e.what();
        return RA_ERR_OVERFLOW;
    } catch (const budget_error& e) {
        g_last_error = e.what();
        return RA_ERR_BUDGET_EXCEEDED;
    } catch (const consistency_error& e) {
        g_last_error = e.what();
        return RA_ERR_CONSISTENCY;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RA_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return RA_ERR_INTERNAL;
    }
}

ra_status require(bool ok, const char* msg) {
    if (ok) return RA_OK;
    g_last_error = msg;
    return RA_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

struct ra_trajectory {
    dynamics::TrajectoryPrediction value;
};

struct ra_ensemble {
    sim::EnsembleResult value;
};

const char* ra_status_name(ra_status status) {
    switch (status) {
        case RA_OK: return "ok";
        case RA_ERR_DOMAIN: return "domain-error";
        case RA_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case RA_ERR_ACCURACY_NOT_REACHED: return "accuracy-not-reached";
        case RA_ERR_OVERFLOW: return "arithmetic-overflow";
        case RA_ERR_BUDGET_EXCEEDED: return "budget-exceeded";
        case RA_ERR_CONSISTENCY: return "internal-consistency";
        case RA_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* ra_last_error_message(void) { return g_last_error.c_str(); }

const char* ra_version(void) { return "0.1.0"; }

ra_status ra_phi_moment(int k, double* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = gauss::phi_moment(k); });
}

ra_status ra_j_base(int a, int b, double theta, double* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = gauss::j_base(a, b, theta); });
}

ra_status ra_j_recursive(int a, int b, double theta, double* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = gauss::j_recursive(a, b, theta); });
}

ra_status ra_j_closed(int a, int b, double theta, double* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = gauss::j_closed(a, b, theta); });
}

ra_status ra_j_routes_hp(int a, int b, int num, int den, double* value, double* rel_diff) {
    if (auto s = require(value && rel_diff, "null out"); s != RA_OK) return s;
    return guarded([&] {
        const auto cmp = gauss::hp::compare_routes(a, b, num, den);
        *value = cmp.value;
        *rel_diff = cmp.rel_diff;
    });
}

ra_status ra_bessel_p(int a, int b, int64_t* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = bessel::P(a, b); });
}

ra_status ra_bessel_q(int a, int b, int64_t* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = bessel::Q(a, b); });
}

ra_status ra_bessel_p_rec(int a, int b, int64_t* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = bessel::P_rec(a, b); });
}

ra_status ra_bessel_q_rec(int a, int b, int64_t* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = bessel::Q_rec(a, b); });
}

ra_status ra_j_quadrature(int a, int b, double theta, double target_abs_err,
                          int64_t max_nodes, double* estimate, double* error_bound) {
    if (auto s = require(estimate && error_bound, "null out"); s != RA_OK) return s;
    *estimate = 0.0;
    *error_bound = 0.0;
    return guarded([&] {
        try {
            const auto r = oracle::j_quadrature(a, b, theta, target_abs_err,
                                                max_nodes > 0 ? max_nodes : 8'000'000);
            *estimate = r.estimate;
            *error_bound = r.error_bound;
        } catch (const accuracy_error& e) {
            *estimate = e.estimate;
            *error_bound = e.achieved_bound;
            throw;
        }
    });
}

ra_status ra_mc_expectation(ra_fn2 f, void* ctx, double theta, int64_t samples,
                            uint64_t seed, double* estimate, double* std_error) {
    if (auto s = require(f && estimate && std_error, "null argument"); s != RA_OK) return s;
    return guarded([&] {
        const auto r = oracle::mc_expectation(
            [f, ctx](double g, double h) { return f(g, h, ctx); }, theta, samples, seed);
        *estimate = r.estimate;
        *std_error = r.std_error;
    });
}

ra_status ra_mc_r_statistics(double theta, int n, int64_t trials, uint64_t seed,
                             ra_r_statistics* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] {
        const auto r = oracle::mc_R_statistics(theta, n, trials, seed);
        *out = {r.mean_R, r.var_R, r.mean_Rsin2, r.var_Rsin2, r.cov,
                r.se_mean_R, r.se_var_R, r.se_mean_Rsin2, r.se_var_Rsin2, r.se_cov,
                r.trials};
    });
}

ra_status ra_rho(int n, double* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = dynamics::rho(n); });
}

ra_status ra_moments_of_r(double theta, int n, ra_r_moments* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] {
        const auto m = dynamics::moments_of_R(theta, n);
        *out = {m.E_R, m.Var_R, m.E_Rsin2, m.Var_Rsin2, m.Cov};
    });
}

ra_status ra_layer_law(double theta, int n, double* mu, double* sigma_sq) {
    if (auto s = require(mu && sigma_sq, "null out"); s != RA_OK) return s;
    return guarded([&] {
        const auto law = dynamics::layer_law(theta, n);
        *mu = law.mu;
        *sigma_sq = law.sigma_sq;
    });
}

ra_status ra_layer_law_hp(double theta, int n, double* mu, double* sigma_sq) {
    if (auto s = require(mu && sigma_sq, "null out"); s != RA_OK) return s;
    return guarded([&] {
        const auto law = dynamics::layer_law_hp(theta, n);
        *mu = law.mu;
        *sigma_sq = law.sigma_sq;
    });
}

ra_status ra_asymptotic_law(double theta, int n, double* mu, double* sigma_sq) {
    if (auto s = require(mu && sigma_sq, "null out"); s != RA_OK) return s;
    return guarded([&] {
        const auto law = dynamics::asymptotic_law(theta, n);
        *mu = law.mu;
        *sigma_sq = law.sigma_sq;
    });
}

ra_status ra_simple_update(double theta, int n, double* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = dynamics::simple_update(theta, n); });
}

ra_status ra_infinite_width_update(double theta, double* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] { *out = dynamics::infinite_width_update(theta); });
}

ra_status ra_predict_trajectory(double theta0, const int* widths, int depth, int mode,
                                int ensemble, uint64_t seed, unsigned flags,
                                ra_trajectory** out) {
    if (auto s = require(out && (depth == 0 || widths), "null argument"); s != RA_OK) return s;
    if (auto s = require(depth >= 0, "negative depth"); s != RA_OK) return s;
    if (auto s = require(mode == RA_PREDICT_MEAN_CHAIN || mode == RA_PREDICT_GAUSSIAN_SAMPLING,
                         "unknown prediction mode");
        s != RA_OK)
        return s;
    *out = nullptr;
    return guarded([&] {
        const std::vector<int> w(widths, widths + depth);
        auto pred = dynamics::predict_trajectory(
            theta0, w,
            mode == RA_PREDICT_MEAN_CHAIN ? dynamics::PredictMode::kMeanChain
                                          : dynamics::PredictMode::kGaussianSampling,
            ensemble, seed, (flags & RA_FLAG_RHO_ZERO) != 0);
        *out = new ra_trajectory{std::move(pred)};
    });
}

int ra_trajectory_layers(const ra_trajectory* t) {
    return t ? static_cast<int>(t->value.layers.size()) : 0;
}

ra_status ra_trajectory_row(const ra_trajectory* t, int index, ra_layer_prediction* out) {
    if (auto s = require(t && out, "null argument"); s != RA_OK) return s;
    if (auto s = require(index >= 0 && index < static_cast<int>(t->value.layers.size()),
                         "row index out of range");
        s != RA_OK)
        return s;
    const auto& l = t->value.layers[index];
    *out = {l.layer, l.mean, l.variance, l.q05, l.q25, l.q50, l.q75, l.q95,
            l.theta_point, l.clamped};
    return RA_OK;
}

void ra_trajectory_free(ra_trajectory* t) { delete t; }

ra_status ra_simulate_ensemble(double theta0, const int* widths, int depth, int input_dim,
                               int64_t trials, uint64_t seed, int keep_raw,
                               ra_ensemble** out) {
    if (auto s = require(out && widths && depth >= 1, "null or empty widths"); s != RA_OK)
        return s;
    *out = nullptr;
    return guarded([&] {
        sim::NetworkConfig cfg;
        cfg.input_dim = input_dim;
        cfg.widths.assign(widths, widths + depth);
        cfg.seed = seed;
        auto res = sim::run_ensemble(cfg, theta0, trials, keep_raw != 0);
        *out = new ra_ensemble{std::move(res)};
    });
}

int ra_ensemble_layers(const ra_ensemble* e) {
    return e ? static_cast<int>(e->value.layers.size()) : 0;
}

ra_status ra_ensemble_row(const ra_ensemble* e, int index, ra_layer_stats* out) {
    if (auto s = require(e && out, "null argument"); s != RA_OK) return s;
    if (auto s = require(index >= 0 && index < static_cast<int>(e->value.layers.size()),
                         "row index out of range");
        s != RA_OK)
        return s;
    const auto& l = e->value.layers[index];
    *out = {l.layer, l.trials_effective, l.mean_ln_sin2, l.var_ln_sin2, l.se_mean,
            l.q05, l.q25, l.q50, l.q75, l.q95, l.mean_theta, l.degenerate_count};
    return RA_OK;
}

ra_status ra_ensemble_raw(const ra_ensemble* e, int layer, const double** values,
                          int64_t* count) {
    if (auto s = require(e && values && count, "null argument"); s != RA_OK) return s;
    if (auto s = require(!e->value.raw.empty(), "ensemble was run without keep_raw");
        s != RA_OK)
        return s;
    if (auto s = require(layer >= 1 && layer <= static_cast<int>(e->value.raw.size()),
                         "layer out of range");
        s != RA_OK)
        return s;
    *values = e->value.raw[layer - 1].data();
    *count = static_cast<int64_t>(e->value.raw[layer - 1].size());
    return RA_OK;
}

void ra_ensemble_free(ra_ensemble* e) { delete e; }

ra_status ra_ks_test_normal(const double* sample, int64_t size, double mu, double sigma,
                            double* statistic, double* p_value) {
    if (auto s = require(sample && statistic && p_value && size >= 0, "null argument");
        s != RA_OK)
        return s;
    return guarded([&] {
        const auto r = stats::ks_test_normal({sample, static_cast<std::size_t>(size)}, mu, sigma);
        *statistic = r.statistic;
        *p_value = r.p_value;
    });
}

ra_status ra_mean_ci(const double* sample, int64_t size, double level, double* lo, double* hi) {
    if (auto s = require(sample && lo && hi && size >= 0, "null argument"); s != RA_OK) return s;
    return guarded([&] {
        const auto r = stats::mean_ci({sample, static_cast<std::size_t>(size)}, level);
        *lo = r.lo;
        *hi = r.hi;
    });
}

ra_status ra_variance_ci(const double* sample, int64_t size, double level, double* lo,
                         double* hi) {
    if (auto s = require(sample && lo && hi && size >= 0, "null argument"); s != RA_OK) return s;
    return guarded([&] {
        const auto r = stats::variance_ci({sample, static_cast<std::size_t>(size)}, level);
        *lo = r.lo;
        *hi = r.hi;
    });
}

ra_status ra_path_weight_sum(ra_scheme scheme, int from_a, int from_b, int to_a, int to_b,
                             int naive_dfs, int64_t* coeffs, int max_degree, int* degree) {
    if (auto s = require(coeffs && degree && max_degree >= 0, "null or negative-size output");
        s != RA_OK)
        return s;
    return guarded([&] {
        comb::Scheme sc;
        switch (scheme) {
            case RA_SCHEME_J: sc = comb::Scheme::kJ; break;
            case RA_SCHEME_JSTAR: sc = comb::Scheme::kJStar; break;
            case RA_SCHEME_P: sc = comb::Scheme::kP; break;
            case RA_SCHEME_Q: sc = comb::Scheme::kQ; break;
            default: throw invalid_argument_error("unknown scheme");
        }
        const auto poly =
            comb::path_weight_sum(sc, {from_a, from_b}, {to_a, to_b}, naive_dfs != 0);
        std::memset(coeffs, 0, sizeof(int64_t) * (max_degree + 1));
        int deg = -1;
        for (const auto& [k, c] : poly) {
            if (k > max_degree)
                throw invalid_argument_error("polynomial degree exceeds the output buffer");
            coeffs[k] = c;
            if (c != 0 && k > deg) deg = k;
        }
        *degree = deg;
    });
}

ra_status ra_count_irreducible(int k_points, int n, int64_t budget, int64_t* out) {
    if (auto s = require(out, "null out"); s != RA_OK) return s;
    return guarded([&] {
        *out = comb::count_irreducible(k_points, n, budget > 0 ? budget : 400'000'000);
    });
}

ra_status ra_pattern_table_check(ra_moment_kind kind, int n, double theta, double* residual) {
    if (auto s = require(residual, "null out"); s != RA_OK) return s;
    return guarded([&] {
        comb::MomentKind mk;
        switch (kind) {
            case RA_MOMENT_VAR_R: mk = comb::MomentKind::kVarR; break;
            case RA_MOMENT_VAR_RSIN2: mk = comb::MomentKind::kVarRsin2; break;
            case RA_MOMENT_COV: mk = comb::MomentKind::kCov; break;
            default: throw invalid_argument_error("unknown moment kind");
        }
        *residual = comb::pattern_table_check(mk, n, theta);
    });
}

}  // extern "C"
