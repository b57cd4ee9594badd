#include "mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "common.hpp"
#include "rng.hpp"

namespace reluangle::oracle {

namespace {

inline double relu(double x) { return x > 0.0 ? x : 0.0; }

int thread_count() {
    if (const char* env = std::getenv("RELUANGLE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

// Runs fn(t) for t in [0, total) across threads in fixed-size chunks.
// Results must be written by index, which keeps the output identical for
// any thread count.
template <class Fn>
void parallel_trials(std::int64_t total, const Fn& fn) {
    const int threads = thread_count();
    if (threads == 1) {
        for (std::int64_t t = 0; t < total; ++t) fn(t);
        return;
    }
    constexpr std::int64_t kChunk = 8192;
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t begin = next.fetch_add(kChunk);
            if (begin >= total) return;
            const std::int64_t end = std::min(begin + kChunk, total);
            for (std::int64_t t = begin; t < end; ++t) fn(t);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

McResult mc_expectation(const std::function<double(double, double)>& f, double theta,
                        std::int64_t samples, std::uint64_t seed) {
    Angle::checked(theta);
    if (samples < 2) throw invalid_argument_error("mc_expectation: need samples >= 2");
    const double c = std::cos(theta), s = std::sin(theta);
    rng::Philox gen(seed, 0);
    // Welford accumulation.
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t i = 1; i <= samples; ++i) {
        const double g = gen.next_normal();
        const double w = gen.next_normal();
        const double v = f(g, g * c + w * s);
        const double d = v - mean;
        mean += d / static_cast<double>(i);
        m2 += d * (v - mean);
    }
    McResult out;
    out.estimate = mean;
    out.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
    out.samples = samples;
    return out;
}

RStatistics mc_R_statistics(double theta, int n, std::int64_t trials, std::uint64_t seed) {
    Angle::checked(theta);
    if (n < 2) throw invalid_argument_error("mc_R_statistics: need n >= 2");
    if (trials < 2) throw invalid_argument_error("mc_R_statistics: need trials >= 2");

    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<double> R(trials), Rs(trials);
    parallel_trials(trials, [&](std::int64_t t) {
        rng::Philox gen(seed, static_cast<std::uint64_t>(t));
        double s2x = 0.0, s2y = 0.0, sxy = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = gen.next_normal();
            const double w = gen.next_normal();
            const double x = relu(g);
            const double y = relu(g * c + w * s);
            s2x += x * x;
            s2y += y * y;
            sxy += x * y;
        }
        const double inv = 4.0 / (static_cast<double>(n) * n);
        R[t] = inv * s2x * s2y;
        Rs[t] = inv * (s2x * s2y - sxy * sxy);
    });

    const double T = static_cast<double>(trials);
    double sum_r = 0, sum_rs = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        sum_r += R[t];
        sum_rs += Rs[t];
    }
    const double mr = sum_r / T, mrs = sum_rs / T;

    // Central moments needed for the estimates and their standard errors.
    double c2r = 0, c2rs = 0, c11 = 0, c4r = 0, c4rs = 0, c22 = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        const double dr = R[t] - mr, drs = Rs[t] - mrs;
        c2r += dr * dr;
        c2rs += drs * drs;
        c11 += dr * drs;
        c4r += dr * dr * dr * dr;
        c4rs += drs * drs * drs * drs;
        c22 += dr * dr * drs * drs;
    }
    const double var_r = c2r / (T - 1), var_rs = c2rs / (T - 1), cov = c11 / (T - 1);
    const double m4r = c4r / T, m4rs = c4rs / T, m22 = c22 / T;
    const double s2r = c2r / T, s2rs = c2rs / T, scov = c11 / T;

    RStatistics out;
    out.mean_R = mr;
    out.var_R = var_r;
    out.mean_Rsin2 = mrs;
    out.var_Rsin2 = var_rs;
    out.cov = cov;
    out.se_mean_R = std::sqrt(s2r / T);
    out.se_mean_Rsin2 = std::sqrt(s2rs / T);
    out.se_var_R = std::sqrt(std::max(0.0, m4r - s2r * s2r) / T);
    out.se_var_Rsin2 = std::sqrt(std::max(0.0, m4rs - s2rs * s2rs) / T);
    out.se_cov = std::sqrt(std::max(0.0, m22 - scov * scov) / T);
    out.trials = trials;
    return out;
}

}  // namespace reluangle::oracle
