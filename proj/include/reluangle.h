/*
 * reluangle — exact mixed ReLU-Gaussian moments J_{a,b}(theta), Bessel-number
 * combinatorics, finite-width angle-evolution laws for deep ReLU networks,
 * and the oracles (quadrature, brute-force enumeration, Monte Carlo) that
 * validate them.
 *
 * C API: every entry point returns ra_status; results go through out
 * parameters. Bulk results are owned by opaque handles with row accessors.
 * All functions are thread-safe; Monte Carlo entry points honor the
 * RELUANGLE_THREADS environment variable and produce results that are
 * bitwise independent of the thread count.
 */
#ifndef RELUANGLE_H
#define RELUANGLE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ra_status {
    RA_OK = 0,
    RA_ERR_DOMAIN = 1,            /* argument outside the mathematical domain */
    RA_ERR_INVALID_ARGUMENT = 2,  /* malformed call (null pointer, bad size) */
    RA_ERR_ACCURACY_NOT_REACHED = 3,
    RA_ERR_OVERFLOW = 4,          /* exact integer result does not fit */
    RA_ERR_BUDGET_EXCEEDED = 5,
    RA_ERR_CONSISTENCY = 6,       /* internal exactness assertion failed */
    RA_ERR_INTERNAL = 7
} ra_status;

const char* ra_status_name(ra_status status);

/* Detail message of the most recent failure on this thread. */
const char* ra_last_error_message(void);

const char* ra_version(void);

/* -------- mixed ReLU-Gaussian moments -------- */

/* E[phi(G)^k] for k >= 0. */
ra_status ra_phi_moment(int k, double* out);

/* Seed moments; (a,b) must be (0,0), (1,0), (0,1) or (1,1); theta in [0,pi]. */
ra_status ra_j_base(int a, int b, double theta, double* out);

/* J_{a,b}(theta) by dynamic programming over the recurrences. */
ra_status ra_j_recursive(int a, int b, double theta, double* out);

/* J_{a,b}(theta) by the non-recursive route (explicit sums / Bessel-number
 * linear combination). Agrees with ra_j_recursive. */
ra_status ra_j_closed(int a, int b, double theta, double* out);

/* Both routes evaluated at theta = pi*num/den in 384-bit arithmetic;
 * returns the double-rounded value and their relative difference. */
ra_status ra_j_routes_hp(int a, int b, int num, int den, double* value, double* rel_diff);

/* -------- Bessel numbers -------- */

ra_status ra_bessel_p(int a, int b, int64_t* out);
ra_status ra_bessel_q(int a, int b, int64_t* out);
ra_status ra_bessel_p_rec(int a, int b, int64_t* out);
ra_status ra_bessel_q_rec(int a, int b, int64_t* out);

/* -------- oracles -------- */

/* Deterministic quadrature for J_{a,b}(theta) with an absolute error target.
 * On RA_ERR_ACCURACY_NOT_REACHED, *estimate and *error_bound carry the best
 * achieved values. max_nodes <= 0 selects the default budget. */
ra_status ra_j_quadrature(int a, int b, double theta, double target_abs_err,
                          int64_t max_nodes, double* estimate, double* error_bound);

typedef double (*ra_fn2)(double g, double g_hat, void* ctx);

/* Sample mean of f over correlated standard Gaussian pairs with correlation
 * cos(theta); deterministic given the seed. */
ra_status ra_mc_expectation(ra_fn2 f, void* ctx, double theta, int64_t samples,
                            uint64_t seed, double* estimate, double* std_error);

typedef struct ra_r_statistics {
    double mean_R, var_R, mean_Rsin2, var_Rsin2, cov;
    double se_mean_R, se_var_R, se_mean_Rsin2, se_var_Rsin2, se_cov;
    int64_t trials;
} ra_r_statistics;

/* Empirical moments of R and R sin^2 from n correlated pairs per trial. */
ra_status ra_mc_r_statistics(double theta, int n, int64_t trials, uint64_t seed,
                             ra_r_statistics* out);

/* -------- angle dynamics -------- */

ra_status ra_rho(int n, double* out);

typedef struct ra_r_moments {
    double E_R, Var_R, E_Rsin2, Var_Rsin2, Cov;
} ra_r_moments;

/* Exact closed-form moments of R and R sin^2 (complete in powers of 1/n). */
ra_status ra_moments_of_r(double theta, int n, ra_r_moments* out);

/* Conditional law of ln sin^2(theta') given theta at width n; theta strictly
 * inside (0, pi). Below theta = 1e-3 the small-angle series is substituted. */
ra_status ra_layer_law(double theta, int n, double* mu, double* sigma_sq);

/* The exact law evaluated in 384-bit arithmetic, no small-angle switch. */
ra_status ra_layer_law_hp(double theta, int n, double* mu, double* sigma_sq);

/* Small-angle series for the law (error O(theta^3)). */
ra_status ra_asymptotic_law(double theta, int n, double* mu, double* sigma_sq);

/* One deterministic small-angle step; theta in (0, pi/2]. */
ra_status ra_simple_update(double theta, int n, double* out);

/* Deterministic infinite-width step cos(theta') = 2 J11(theta). */
ra_status ra_infinite_width_update(double theta, double* out);

#define RA_PREDICT_MEAN_CHAIN 0
#define RA_PREDICT_GAUSSIAN_SAMPLING 1

/* Adds rho(n) back to every conditional mean (infinite-width-style toggle). */
#define RA_FLAG_RHO_ZERO 1u

typedef struct ra_trajectory ra_trajectory;

typedef struct ra_layer_prediction {
    int layer;
    double mean;       /* mean of ln sin^2 theta at this layer */
    double variance;   /* ensemble variance; one-step sigma^2 in mean-chain mode */
    double q05, q25, q50, q75, q95; /* NaN in mean-chain mode */
    double theta_point;
    int64_t clamped;   /* sampled ln sin^2 > 0 clamped to 0 at this layer */
} ra_layer_prediction;

/* widths[i] is the width of hidden layer i+1. Row 0 echoes the input. */
ra_status ra_predict_trajectory(double theta0, const int* widths, int depth, int mode,
                                int ensemble, uint64_t seed, unsigned flags,
                                ra_trajectory** out);
int ra_trajectory_layers(const ra_trajectory* t);
ra_status ra_trajectory_row(const ra_trajectory* t, int index, ra_layer_prediction* out);
void ra_trajectory_free(ra_trajectory* t);

/* -------- network simulator -------- */

typedef struct ra_ensemble ra_ensemble;

typedef struct ra_layer_stats {
    int layer;
    int64_t trials_effective;
    double mean_ln_sin2, var_ln_sin2, se_mean;
    double q05, q25, q50, q75, q95;
    double mean_theta;
    int64_t degenerate_count;
} ra_layer_stats;

/* Monte Carlo over independently initialized ReLU networks. keep_raw retains
 * the per-trial per-layer ln sin^2 values behind ra_ensemble_raw. */
ra_status ra_simulate_ensemble(double theta0, const int* widths, int depth, int input_dim,
                               int64_t trials, uint64_t seed, int keep_raw,
                               ra_ensemble** out);
int ra_ensemble_layers(const ra_ensemble* e);
ra_status ra_ensemble_row(const ra_ensemble* e, int index, ra_layer_stats* out);
/* layer is 1-based; *values points at trials doubles (NaN once degenerate). */
ra_status ra_ensemble_raw(const ra_ensemble* e, int layer, const double** values,
                          int64_t* count);
void ra_ensemble_free(ra_ensemble* e);

/* -------- statistics -------- */

/* One-sample two-sided KS test against Normal(mu, sigma^2); asymptotic
 * p-value; needs size >= 8. */
ra_status ra_ks_test_normal(const double* sample, int64_t size, double mu, double sigma,
                            double* statistic, double* p_value);
ra_status ra_mean_ci(const double* sample, int64_t size, double level, double* lo,
                     double* hi);
ra_status ra_variance_ci(const double* sample, int64_t size, double level, double* lo,
                         double* hi);

/* -------- combinatorial oracles -------- */

typedef enum ra_scheme {
    RA_SCHEME_J = 0,
    RA_SCHEME_JSTAR = 1,
    RA_SCHEME_P = 2,
    RA_SCHEME_Q = 3
} ra_scheme;

/* Weighted path sum as a polynomial in cos(theta): coeffs[k] receives the
 * coefficient of cos^k for k <= max_degree; *degree gets the highest
 * non-zero power (-1 for the zero polynomial). */
ra_status ra_path_weight_sum(ra_scheme scheme, int from_a, int from_b, int to_a, int to_b,
                             int naive_dfs, int64_t* coeffs, int max_degree, int* degree);

/* Brute-force count of irreducible index configurations in [n]^{2k},
 * k in {2,3,4}. budget <= 0 selects the default. */
ra_status ra_count_irreducible(int k_points, int n, int64_t budget, int64_t* out);

typedef enum ra_moment_kind {
    RA_MOMENT_VAR_R = 0,
    RA_MOMENT_VAR_RSIN2 = 1,
    RA_MOMENT_COV = 2
} ra_moment_kind;

/* |direct pattern-table reconstruction - closed form|, n in [2,8]. */
ra_status ra_pattern_table_check(ra_moment_kind kind, int n, double theta, double* residual);

#ifdef __cplusplus
}
#endif

#endif /* RELUANGLE_H */
