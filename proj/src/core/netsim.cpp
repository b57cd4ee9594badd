#include "netsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "common.hpp"
#include "rng.hpp"

namespace reluangle::sim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int thread_count() {
    if (const char* env = std::getenv("RELUANGLE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

double angle_between(const std::vector<double>& u, const std::vector<double>& v) {
    double uu = 0, vv = 0, uv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uu += u[i] * u[i];
        vv += v[i] * v[i];
        uv += u[i] * v[i];
    }
    if (uv == uu && uv == vv) return 0.0;  // bitwise-identical vectors
    const double c = uv / (std::sqrt(uu) * std::sqrt(vv));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double ln_sin2(double theta) {
    const double s = std::sin(theta);
    if (s == 0.0) return kNaN;  // explicitly NaN-marked, never -inf in output
    return std::log(s * s);
}

void check_config(const NetworkConfig& config) {
    if (config.input_dim < 2) throw invalid_argument_error("net config: input_dim must be >= 2");
    if (config.widths.empty()) throw invalid_argument_error("net config: depth must be >= 1");
    for (int w : config.widths)
        if (w < 1) throw invalid_argument_error("net config: widths must be >= 1");
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> make_input_pair(double theta0, int dim) {
    Angle::checked(theta0);
    if (dim < 2) throw invalid_argument_error("make_input_pair: dim must be >= 2");
    std::vector<double> a(dim, 0.0), b(dim, 0.0);
    a[0] = 1.0;
    b[0] = std::cos(theta0);
    b[1] = std::sin(theta0);
    return {a, b};
}

namespace {

// The ensemble gives every trial its own Philox stream under the master seed.
TrialTrace run_trial_stream(const NetworkConfig& config, double theta0, std::uint64_t stream);

}  // namespace

TrialTrace run_trial(const NetworkConfig& config, double theta0) {
    check_config(config);
    Angle::checked(theta0);
    return run_trial_stream(config, theta0, 0);
}

namespace {

TrialTrace run_trial_stream(const NetworkConfig& config, double theta0, std::uint64_t stream) {
    auto [xa, xb] = make_input_pair(theta0, config.input_dim);

    const int depth = config.depth();
    TrialTrace trace;
    trace.theta.assign(depth + 1, kNaN);
    trace.ln_sin2.assign(depth + 1, kNaN);
    trace.phi_norm_sq_a.assign(depth + 1, 0.0);
    trace.phi_norm_sq_b.assign(depth + 1, 0.0);
    trace.z_norm_sq_a.assign(depth + 1, 0.0);
    trace.z_norm_sq_b.assign(depth + 1, 0.0);
    trace.degenerate.assign(depth + 1, false);

    trace.theta[0] = theta0;
    trace.ln_sin2[0] = ln_sin2(theta0);
    trace.phi_norm_sq_a[0] = trace.z_norm_sq_a[0] = 1.0;
    trace.phi_norm_sq_b[0] = trace.z_norm_sq_b[0] = 1.0;

    rng::Philox gen(config.seed, stream);
    std::vector<double> pa = xa, pb = xb;  // previous post-activations
    std::vector<double> za, zb;
    bool dead = false;
    for (int l = 1; l <= depth; ++l) {
        if (dead) {
            trace.degenerate[l] = true;
            continue;
        }
        const int n_out = config.widths[l - 1];
        const int n_in = static_cast<int>(pa.size());
        const double scale = (l == 1) ? 1.0 : std::sqrt(2.0 / n_in);
        za.assign(n_out, 0.0);
        zb.assign(n_out, 0.0);
        for (int i = 0; i < n_out; ++i) {
            double da = 0, db = 0;
            for (int j = 0; j < n_in; ++j) {
                const double w = gen.next_normal();
                da += w * pa[j];
                db += w * pb[j];
            }
            za[i] = scale * da;
            zb[i] = scale * db;
        }
        double na = 0, nb = 0, zna = 0, znb = 0;
        for (int i = 0; i < n_out; ++i) {
            zna += za[i] * za[i];
            znb += zb[i] * zb[i];
            za[i] = std::max(za[i], 0.0);
            zb[i] = std::max(zb[i], 0.0);
            na += za[i] * za[i];
            nb += zb[i] * zb[i];
        }
        trace.z_norm_sq_a[l] = zna;
        trace.z_norm_sq_b[l] = znb;
        trace.phi_norm_sq_a[l] = na;
        trace.phi_norm_sq_b[l] = nb;
        if (na == 0.0 || nb == 0.0) {
            dead = true;
            trace.degenerate[l] = true;
            continue;
        }
        trace.theta[l] = angle_between(za, zb);
        trace.ln_sin2[l] = ln_sin2(trace.theta[l]);
        pa.swap(za);
        pb.swap(zb);
    }
    return trace;
}

}  // namespace

EnsembleResult run_ensemble(const NetworkConfig& config, double theta0, std::int64_t trials,
                            bool keep_raw) {
    check_config(config);
    Angle::checked(theta0);
    if (trials < 1) throw invalid_argument_error("run_ensemble: trials must be >= 1");
    const int depth = config.depth();

    // values[l][t]: ln sin^2 at layer l+1 for trial t (NaN once degenerate);
    // thetas likewise.
    std::vector<std::vector<double>> values(depth, std::vector<double>(trials));
    std::vector<std::vector<double>> thetas(depth, std::vector<double>(trials));

    const int threads = thread_count();
    auto run_range = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            const TrialTrace trace =
                run_trial_stream(config, theta0, static_cast<std::uint64_t>(t));
            for (int l = 0; l < depth; ++l) {
                values[l][t] = trace.ln_sin2[l + 1];
                thetas[l][t] = trace.theta[l + 1];
            }
        }
    };
    if (threads == 1) {
        run_range(0, trials);
    } else {
        std::atomic<std::int64_t> next{0};
        constexpr std::int64_t kChunk = 64;
        auto worker = [&] {
            for (;;) {
                const std::int64_t begin = next.fetch_add(kChunk);
                if (begin >= trials) return;
                run_range(begin, std::min(begin + kChunk, trials));
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    EnsembleResult out;
    out.layers.resize(depth + 1);
    auto& l0 = out.layers[0];
    l0.layer = 0;
    l0.trials_effective = trials;
    l0.mean_ln_sin2 = ln_sin2(theta0);
    l0.var_ln_sin2 = 0;
    l0.q05 = l0.q25 = l0.q50 = l0.q75 = l0.q95 = l0.mean_ln_sin2;
    l0.mean_theta = theta0;

    std::vector<double> good;
    for (int l = 0; l < depth; ++l) {
        auto& st = out.layers[l + 1];
        st.layer = l + 1;
        good.clear();
        double theta_sum = 0;
        for (std::int64_t t = 0; t < trials; ++t) {
            if (std::isnan(thetas[l][t])) continue;
            good.push_back(values[l][t]);
            theta_sum += thetas[l][t];
        }
        st.trials_effective = static_cast<std::int64_t>(good.size());
        st.degenerate_count = trials - st.trials_effective;
        if (good.empty() || std::any_of(good.begin(), good.end(),
                                        [](double x) { return std::isnan(x); })) {
            // theta == 0 exactly (identical inputs) yields NaN ln sin^2.
            st.mean_ln_sin2 = st.var_ln_sin2 = st.se_mean = kNaN;
            st.q05 = st.q25 = st.q50 = st.q75 = st.q95 = kNaN;
            st.mean_theta = good.empty() ? kNaN : theta_sum / static_cast<double>(st.trials_effective);
        } else {
            const double m = static_cast<double>(good.size());
            double mean = 0;
            for (double x : good) mean += x;
            mean /= m;
            double var = kNaN;  // NaN-marked below two effective trials
            if (good.size() > 1) {
                var = 0;
                for (double x : good) var += (x - mean) * (x - mean);
                var /= (m - 1);
            }
            std::sort(good.begin(), good.end());
            auto quantile = [&](double p) {
                if (good.size() == 1) return good[0];
                const double pos = p * (m - 1);
                const std::size_t k = static_cast<std::size_t>(pos);
                const double frac = pos - static_cast<double>(k);
                return (k + 1 < good.size()) ? good[k] * (1 - frac) + good[k + 1] * frac
                                             : good[k];
            };
            st.mean_ln_sin2 = mean;
            st.var_ln_sin2 = var;
            st.se_mean = std::isnan(var) ? kNaN : std::sqrt(var / m);
            st.q05 = quantile(0.05);
            st.q25 = quantile(0.25);
            st.q50 = quantile(0.50);
            st.q75 = quantile(0.75);
            st.q95 = quantile(0.95);
            st.mean_theta = theta_sum / m;
        }
    }
    if (keep_raw) out.raw = std::move(values);
    return out;
}

}  // namespace reluangle::sim
