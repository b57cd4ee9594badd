#ifndef RELUANGLE_NETSIM_HPP
#define RELUANGLE_NETSIM_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace reluangle::sim {

struct NetworkConfig {
    int input_dim = 2;
    std::vector<int> widths;  // hidden layer widths n_1 .. n_L
    std::uint64_t seed = 0;

    int depth() const { return static_cast<int>(widths.size()); }
};

// Two unit vectors in R^dim with inner product exactly cos(theta0).
std::pair<std::vector<double>, std::vector<double>> make_input_pair(double theta0, int dim);

// Per-layer record of one propagated input pair. Layer index 0 is the input.
struct TrialTrace {
    std::vector<double> theta;          // angle per layer; NaN once degenerate
    std::vector<double> ln_sin2;        // ln sin^2(theta); NaN at theta == 0 or degenerate
    std::vector<double> phi_norm_sq_a;  // post-activation squared norms
    std::vector<double> phi_norm_sq_b;
    std::vector<double> z_norm_sq_a;    // pre-activation squared norms (0 at layer 0 slot: inputs)
    std::vector<double> z_norm_sq_b;
    std::vector<bool> degenerate;       // a zero post-activation vector at/before this layer
};

// Propagates the pair through freshly sampled standard-normal weights:
// z^1 = W^1 x, then z^{l+1} = sqrt(2/n_l) W^{l+1} phi(z^l). Never aborts on a
// dead layer; the trace is flagged degenerate from that layer on.
TrialTrace run_trial(const NetworkConfig& config, double theta0);

struct LayerEnsembleStats {
    int layer = 0;
    std::int64_t trials_effective = 0;  // trials not yet degenerate at this layer
    double mean_ln_sin2 = 0;
    double var_ln_sin2 = 0;
    double se_mean = 0;
    double q05 = 0, q25 = 0, q50 = 0, q75 = 0, q95 = 0;
    double mean_theta = 0;
    std::int64_t degenerate_count = 0;
};

struct EnsembleResult {
    std::vector<LayerEnsembleStats> layers;  // index 0 is the input layer
    // raw[l][t]: ln sin^2(theta) of trial t at layer l+1 (kept only on request;
    // degenerate trials carry NaN).
    std::vector<std::vector<double>> raw;
};

// Aggregates run_trial over independent per-trial streams derived from
// (seed, trial index); identical output for any thread count.
EnsembleResult run_ensemble(const NetworkConfig& config, double theta0, std::int64_t trials,
                            bool keep_raw = false);

}  // namespace reluangle::sim

#endif
