// Acceptance suite: one check per numbered criterion, each printing a
// single PASS/FAIL line (plus detail lines) and contributing to the exit
// code. Criteria 9 and 11 drive the command-line tool end to end; the
// binary locates it through --cli or the RELUANGLE_CLI environment variable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
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

#include "../tools/output.hpp"

using namespace reluangle;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed6 = 600;
constexpr std::uint64_t kSeed7 = 700;
constexpr std::uint64_t kSeed8 = 800;
constexpr std::uint64_t kSeedSim9 = 901;
constexpr std::uint64_t kSeedPredict9 = 902;

struct Context {
    std::string cli;
    fs::path workdir;
    bool verbose = true;
    int sub_pass = 0;
    int sub_fail = 0;

    void sub(bool ok, const std::string& what) {
        if (verbose) std::printf("    %s %s\n", ok ? "[ok]  " : "[FAIL]", what.c_str());
        if (ok) ++sub_pass;
        else ++sub_fail;
    }
};

std::string fmt(double v) { return tools::format_double(v); }

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_cli(const Context& ctx, const std::string& args, const fs::path& cwd = {}) {
    std::string cmd;
    if (!cwd.empty()) cmd = "cd " + cwd.string() + " && ";
    cmd += ctx.cli + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

// The independent low-order formula table, normalized.
double table_entry(int a, int b, double t) {
    if (a > b) std::swap(a, b);
    const double s = std::sin(t), c = std::cos(t);
    double num = -1;
    if (a == 0 && b == 0) num = kPi - t;
    else if (a == 0 && b == 1) num = c + 1;
    else if (a == 0 && b == 2) num = (kPi - t) + s * c;
    else if (a == 0 && b == 3) num = 2 * (c + 1) + s * s * c;
    else if (a == 1 && b == 1) num = s + (kPi - t) * c;
    else if (a == 1 && b == 2) num = (c + 1) * (c + 1);
    else if (a == 1 && b == 3) num = 3 * (kPi - t) * c + s * c * c + 2 * s;
    else if (a == 2 && b == 2) num = (kPi - t) * (2 * c * c + 1) + 3 * s * c;
    else if (a == 2 && b == 3) num = 3 * c * (c + 1) * (c + 1) + 2 * (c + 1) + s * s * c;
    else if (a == 3 && b == 3)
        num = (kPi - t) * (6 * c * c + 9) * c + 5 * s * c * c + (6 * c * c + 4) * s;
    return num / norm_constant(a + b);
}

// ------------------------------------------------------------ criterion 1

bool criterion_1(Context& ctx) {
    // Routes compared in 384-bit arithmetic: double precision cannot hold
    // 1e-10 relative near theta = pi at a+b = 14 (cancellation ~ 20 digits).
    double worst_rel = 0;
    for (int a = 0; a <= 14; ++a)
        for (int b = a; a + b <= 14; ++b)
            for (int i = 1; i <= 100; ++i) {
                const auto cmp = gauss::hp::compare_routes(a, b, i, 101);
                worst_rel = std::max(worst_rel, cmp.rel_diff);
            }
    ctx.sub(worst_rel <= 1e-10,
            "recursive == closed, a+b <= 14, 100-point grid; worst rel " + fmt(worst_rel));

    double worst_quad = 0;
    for (int a = 0; a <= 4; ++a)
        for (int b = a; b <= 4; ++b)
            for (int i = 1; i <= 100; ++i) {
                const double t = kPi * i / 101;
                const auto q = oracle::j_quadrature(a, b, t, 1e-9);
                worst_quad =
                    std::max(worst_quad, std::abs(q.estimate - gauss::j_closed(a, b, t)));
            }
    ctx.sub(worst_quad <= 1e-8,
            "closed == quadrature, a,b <= 4, same grid; worst abs " + fmt(worst_quad));
    return worst_rel <= 1e-10 && worst_quad <= 1e-8;
}

// ------------------------------------------------------------ criterion 2

bool criterion_2(Context& ctx) {
    double worst = 0;
    for (int a = 0; a <= 3; ++a)
        for (int b = a; b <= 3; ++b)
            for (int i = 1; i <= 100; ++i) {
                const double t = kPi * i / 101;
                const double want = table_entry(a, b, t);
                const double got = gauss::j_closed(a, b, t);
                worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
            }
    ctx.sub(worst <= 1e-12, "10 low-order closed formulas vs j_closed; worst " + fmt(worst));
    return worst <= 1e-12;
}

// ------------------------------------------------------------ criterion 3

bool criterion_3(Context& ctx) {
    bool equal = true;
    for (int a = 0; a <= 30; ++a)
        for (int b = 0; b <= a; ++b)
            equal = equal && bessel::P(a, b) == bessel::P_rec(a, b) &&
                    bessel::Q(a, b) == bessel::Q_rec(a, b);
    ctx.sub(equal, "closed == recursion exactly, 0 <= b <= a <= 30");
    const bool constants = bessel::P(6, 0) == 15 && bessel::P(6, 2) == 45 &&
                           bessel::P(6, 4) == 15 && bessel::P(6, 6) == 1 &&
                           bessel::Q(5, 1) == 33 && bessel::Q(5, 3) == 14 &&
                           bessel::Q(5, 5) == 1;
    ctx.sub(constants, "worked constants {15,45,15,1} and {33,14,1}");
    return equal && constants;
}

// ------------------------------------------------------------ criterion 4

bool criterion_4(Context& ctx) {
    bool jstar_ok = true;
    for (int a = 0; a <= 8; ++a)
        for (int b = a; b <= 12; ++b)
            for (int n = 0; n <= b; ++n) {
                const auto w0 = comb::path_weight_sum(comb::Scheme::kJStar, {0, n}, {a, b});
                const std::int64_t p = bessel::P(a, b - n);
                jstar_ok = jstar_ok && ((p == 0 && w0.empty()) ||
                                        (w0.size() == 1 && w0.count(0) && w0.at(0) == p));
                if (a >= 1 && n >= 1) {
                    const auto w1 =
                        comb::path_weight_sum(comb::Scheme::kJStar, {1, n}, {a, b});
                    const std::int64_t q = bessel::Q(a - 1, b - n);
                    jstar_ok = jstar_ok && ((q == 0 && w1.empty()) ||
                                            (w1.size() == 1 && w1.count(0) && w1.at(0) == q));
                }
            }
    ctx.sub(jstar_ok, "J* path sums equal P and Q exactly (a <= 8, b <= 12)");

    bool j_ok = true;
    auto falling = [](int b, int k) {
        std::int64_t r = 1;
        for (int i = 0; i < k; ++i) r *= (b - i);
        return r;
    };
    for (int a = 2; a <= 8; ++a)
        for (int b = a; b <= 12; ++b)
            for (int n = 0; n <= b; ++n) {
                const auto w0 = comb::path_weight_sum(comb::Scheme::kJ, {0, n}, {a, b});
                const std::int64_t q1 = (b - n - 1 >= 0) ? bessel::Q(a - 1, b - n - 1) : 0;
                const std::int64_t want0 = falling(b, b - n) * (bessel::P(a, b - n) - q1);
                j_ok = j_ok && ((want0 == 0 && w0.empty()) ||
                                (w0.size() == 1 && w0.count(b - n) && w0.at(b - n) == want0));
                if (n >= 1) {
                    const auto w1 = comb::path_weight_sum(comb::Scheme::kJ, {1, n}, {a, b});
                    const std::int64_t want1 = falling(b, b - n) * bessel::Q(a - 1, b - n);
                    j_ok = j_ok &&
                           ((want1 == 0 && w1.empty()) ||
                            (w1.size() == 1 && w1.count(b - n) && w1.at(b - n) == want1));
                }
            }
    ctx.sub(j_ok, "J path sums equal the falling-factorial coefficient formula");
    return jstar_ok && j_ok;
}

// ------------------------------------------------------------ criterion 5

bool criterion_5(Context& ctx) {
    auto fall = [](std::int64_t n, int k) {
        std::int64_t r = 1;
        for (int i = 0; i < k; ++i) r *= (n - i);
        return r;
    };
    bool k3 = true;
    for (int n = 4; n <= 8; ++n)
        k3 = k3 && comb::count_irreducible(3, n) ==
                       32 * fall(n, 4) + 68 * fall(n, 3) + 28 * fall(n, 2) + fall(n, 1);
    ctx.sub(k3, "k=3 counts match 32(n)_4 + 68(n)_3 + 28(n)_2 + (n)_1 for n in {4..8}");
    bool k4 = true;
    for (int n = 4; n <= 6; ++n)
        k4 = k4 && comb::count_irreducible(4, n) ==
                       48 * fall(n, 6) + 544 * fall(n, 5) + 1268 * fall(n, 4) +
                           844 * fall(n, 3) + 123 * fall(n, 2) + fall(n, 1);
    ctx.sub(k4, "k=4 counts match 48(n)_6 + 544(n)_5 + ... for n in {4,5,6}");
    return k3 && k4;
}

// ------------------------------------------------------------ criterion 6

bool criterion_6(Context& ctx, tools::Table* artifact) {
    bool all = true;
    int combo = 0;
    for (double theta : {0.1, 0.5, 1.0})
        for (int n : {4, 8, 16}) {
            const auto mc = oracle::mc_R_statistics(theta, n, 1000000, kSeed6 + combo);
            const auto m = dynamics::moments_of_R(theta, n);
            const double g1 = std::abs(m.E_R - mc.mean_R) / mc.se_mean_R;
            const double g2 = std::abs(m.Var_R - mc.var_R) / mc.se_var_R;
            const double g3 = std::abs(m.E_Rsin2 - mc.mean_Rsin2) / mc.se_mean_Rsin2;
            const double g4 = std::abs(m.Var_Rsin2 - mc.var_Rsin2) / mc.se_var_Rsin2;
            const double g5 = std::abs(m.Cov - mc.cov) / mc.se_cov;
            const bool ok = g1 <= 4 && g2 <= 4 && g3 <= 4 && g4 <= 4 && g5 <= 4;
            all = all && ok;
            ctx.sub(ok, "theta=" + fmt(theta) + " n=" + std::to_string(n) +
                            " max gap " + fmt(std::max({g1, g2, g3, g4, g5})) + " SE");
            if (artifact)
                artifact->add_row({theta, std::int64_t(n), mc.mean_R, mc.var_R, mc.mean_Rsin2,
                                   mc.var_Rsin2, mc.cov});
            ++combo;
        }

    double worst_res = 0;
    for (int n = 2; n <= 8; ++n)
        for (double theta : {0.1, 0.5, 1.0})
            for (int kind = 0; kind < 3; ++kind)
                worst_res = std::max(
                    worst_res, comb::pattern_table_check(
                                   static_cast<comb::MomentKind>(kind), n, theta));
    ctx.sub(worst_res <= 1e-10, "pattern-table residuals; worst " + fmt(worst_res));
    return all && worst_res <= 1e-10;
}

// ------------------------------------------------------------ criterion 7

bool criterion_7(Context& ctx, tools::Table* artifact) {
    // The variance checks at n = 256 measure the law's own O(n^-2)
    // truncation (relative error ~ 14/n) against a +/-1.8% statistical band;
    // they fail for every seed. See the README for the analysis.
    bool all = true;
    int combo = 0;
    for (double theta : {0.05, 0.3, 0.8})
        for (int n : {256, 1024}) {
            sim::NetworkConfig cfg;
            cfg.input_dim = 2;
            cfg.widths = {n};
            cfg.seed = kSeed7 + combo;
            const auto res = sim::run_ensemble(cfg, theta, 100000, true);
            const auto& st = res.layers[1];
            const auto law = dynamics::layer_law(theta, n);

            const double gap_mean = std::abs(st.mean_ln_sin2 - law.mu) / st.se_mean;
            // kurtosis-corrected standard error of the sample variance
            const auto& xs = res.raw[0];
            double m4 = 0;
            for (double x : xs) {
                const double d = x - st.mean_ln_sin2;
                m4 += d * d * d * d;
            }
            m4 /= static_cast<double>(xs.size());
            const double se_var = std::sqrt(
                std::max(0.0, m4 - st.var_ln_sin2 * st.var_ln_sin2) / xs.size());
            const double gap_var = std::abs(st.var_ln_sin2 - law.sigma_sq) / se_var;

            const bool mean_ok = gap_mean <= 4;
            const bool var_ok = gap_var <= 4;
            all = all && mean_ok && var_ok;
            ctx.sub(mean_ok, "mean  theta=" + fmt(theta) + " n=" + std::to_string(n) +
                                 ": gap " + fmt(gap_mean) + " SE");
            ctx.sub(var_ok, "var   theta=" + fmt(theta) + " n=" + std::to_string(n) +
                                ": gap " + fmt(gap_var) + " SE");
            if (artifact)
                artifact->add_row({theta, std::int64_t(n), st.mean_ln_sin2, st.var_ln_sin2,
                                   law.mu, law.sigma_sq});
            ++combo;
        }
    return all;
}

// ------------------------------------------------------------ criterion 8

bool criterion_8(Context& ctx, tools::Table* artifact) {
    sim::NetworkConfig cfg;
    cfg.input_dim = 2;
    cfg.widths = {1024};
    cfg.seed = kSeed8;
    const auto res = sim::run_ensemble(cfg, 0.005, 10000, false);
    const double var = res.layers[1].var_ln_sin2;
    const double target = 8.0 / 1024;
    const double rel = std::abs(var - target) / target;
    ctx.sub(rel <= 0.15, "sample var " + fmt(var) + " vs 8/1024 = " + fmt(target) +
                             " (rel " + fmt(rel) + ")");
    if (artifact) artifact->add_row({0.005, std::int64_t(1024), var, target, rel});
    return rel <= 0.15;
}

// ------------------------------------------------------------ criterion 9

struct PredictionRows {
    std::map<int, std::array<double, 3>> sampling;  // layer -> mean, var, n/a
    std::map<int, double> mean_chain;
    std::map<int, double> infinite_width;
};

PredictionRows read_prediction(const fs::path& path) {
    const auto csv = tools::read_csv(path.string());
    const int c_pred = csv.column("predictor"), c_layer = csv.column("layer");
    const int c_mean = csv.column("mean_ln_sin2"), c_var = csv.column("var_ln_sin2");
    if (c_pred < 0 || c_layer < 0 || c_mean < 0 || c_var < 0)
        throw std::runtime_error("prediction schema mismatch");
    PredictionRows out;
    for (const auto& row : csv.rows) {
        const int layer = std::stoi(row[c_layer]);
        const double mean = tools::parse_double(row[c_mean]);
        if (row[c_pred] == "gaussian_sampling")
            out.sampling[layer] = {mean, tools::parse_double(row[c_var]), 0.0};
        else if (row[c_pred] == "mean_chain") out.mean_chain[layer] = mean;
        else if (row[c_pred] == "infinite_width") out.infinite_width[layer] = mean;
    }
    return out;
}

bool criterion_9(Context& ctx) {
    const fs::path dir = ctx.workdir / "c9";
    fs::create_directories(dir);
    const auto sim_csv = dir / "sim.csv";
    const auto pred_csv = dir / "pred.csv";
    {
        std::ostringstream cmd;
        cmd << "simulate --theta0 0.1 --widths 256 --depth 30 --trials 2000 --seed "
            << kSeedSim9 << " --keep-raw --out " << sim_csv.string();
        if (run_cli(ctx, cmd.str()) != 0) {
            ctx.sub(false, "CLI simulate failed");
            return false;
        }
    }
    {
        std::ostringstream cmd;
        cmd << "predict --theta0 0.1 --widths 256 --depth 30 --ensemble 5000 --seed "
            << kSeedPredict9 << " --out " << pred_csv.string();
        if (run_cli(ctx, cmd.str()) != 0) {
            ctx.sub(false, "CLI predict failed");
            return false;
        }
    }

    const auto sim = tools::read_csv(sim_csv.string());
    const int s_layer = sim.column("layer"), s_mean = sim.column("mean_ln_sin2");
    const int s_var = sim.column("var_ln_sin2"), s_count = sim.column("trials_effective");
    const auto pred = read_prediction(pred_csv);

    // (a) per-layer empirical mean within 4 combined standard errors
    bool mean_ok = true;
    double worst_gap = 0;
    int worst_layer = -1;
    for (const auto& row : sim.rows) {
        const int layer = std::stoi(row[s_layer]);
        if (layer < 1) continue;
        const double emp_mean = tools::parse_double(row[s_mean]);
        const double emp_var = tools::parse_double(row[s_var]);
        const double m = tools::parse_double(row[s_count]);
        const auto it = pred.sampling.find(layer);
        if (it == pred.sampling.end()) {
            mean_ok = false;
            continue;
        }
        const double se = std::sqrt(emp_var / m + it->second[1] / 5000.0);
        const double gap = std::abs(emp_mean - it->second[0]) / se;
        if (gap > worst_gap) {
            worst_gap = gap;
            worst_layer = layer;
        }
        mean_ok = mean_ok && gap <= 4;
    }
    ctx.sub(mean_ok, "(a) per-layer mean within 4 SE; worst " + fmt(worst_gap) +
                         " SE at layer " + std::to_string(worst_layer));

    // (b) KS at layers 1 and 30 against the predicted Gaussian
    const auto raw = tools::read_csv(sim_csv.string() + ".raw.csv");
    const int r_layer = raw.column("layer"), r_val = raw.column("ln_sin2");
    bool ks_ok = true;
    for (int layer : {1, 30}) {
        std::vector<double> xs;
        for (const auto& row : raw.rows)
            if (std::stoi(row[r_layer]) == layer) {
                const double v = tools::parse_double(row[r_val]);
                if (!std::isnan(v)) xs.push_back(v);
            }
        const auto& p = pred.sampling.at(layer);
        const auto ks = stats::ks_test_normal(xs, p[0], std::sqrt(p[1]));
        const bool ok = ks.p_value >= 0.01;
        ks_ok = ks_ok && ok;
        ctx.sub(ok, "(b) KS layer " + std::to_string(layer) + ": p = " + fmt(ks.p_value));
    }

    // (c) infinite-width error at layer 30 strictly exceeds the mean chain's
    double emp30 = 0;
    for (const auto& row : sim.rows)
        if (std::stoi(row[s_layer]) == 30) emp30 = tools::parse_double(row[s_mean]);
    const double err_iw = std::abs(pred.infinite_width.at(30) - emp30);
    const double err_mc = std::abs(pred.mean_chain.at(30) - emp30);
    const bool c_ok = err_iw > err_mc;
    ctx.sub(c_ok, "(c) layer-30 |error|: infinite width " + fmt(err_iw) + " > mean chain " +
                      fmt(err_mc));
    return mean_ok && ks_ok && c_ok;
}

// ------------------------------------------------------------ criterion 10

bool criterion_10(Context& ctx) {
    // (a) endpoint relative change of l*theta^l. The update map forces
    // 1/theta^l = 1/theta0 + l/(3 pi) + O(log l), so the change between
    // l = 500 and l = 1000 is ~8% for theta0 = 0.1; the stated 1% bound is
    // unattainable before l ~ 9400. Reported honestly.
    double t = 0.1;
    double x500 = 0, x1000 = 0;
    for (int l = 1; l <= 1000; ++l) {
        t = dynamics::infinite_width_update(t);
        if (l == 500) x500 = 500 * t;
        if (l == 1000) x1000 = 1000 * t;
    }
    const double change = std::abs(x1000 - x500) / x1000;
    const bool a_ok = change < 0.01;
    ctx.sub(a_ok, "(a) l*theta^l change 500->1000: " + fmt(change) +
                      " (required < 0.01; offset 3pi/theta0 makes this ~0.08)");

    // offset-corrected limit, demonstrating the 1/l law itself holds
    const double corrected = (1000 + 3 * kPi / 0.1) * t;
    ctx.sub(std::abs(corrected - 3 * kPi) / (3 * kPi) < 0.02,
            "    1/l law check: (l + 3pi/theta0) theta^l = " + fmt(corrected) +
                " vs 3pi = " + fmt(3 * kPi));

    // (b) simple_update: ln theta decays linearly with slope ~ -rho/2
    double u = 0.1;
    double ln1500 = 0, ln2000 = 0;
    for (int l = 1; l <= 2000; ++l) {
        u = dynamics::simple_update(u, 256);
        if (l == 1500) ln1500 = std::log(u);
        if (l == 2000) ln2000 = std::log(u);
    }
    const double slope = (ln2000 - ln1500) / 500.0;
    const double want = -dynamics::rho(256) / 2;
    const bool b_ok = std::abs(slope - want) <= 0.10 * std::abs(want);
    ctx.sub(b_ok, "(b) ln theta slope " + fmt(slope) + " vs -rho(256)/2 = " + fmt(want));
    return a_ok && b_ok;
}

// ------------------------------------------------------------ criterion 11

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool files_equal(const fs::path& a, const fs::path& b) { return slurp(a) == slurp(b); }

void write_artifacts_6_7_8(Context& ctx, const fs::path& dir) {
    fs::create_directories(dir);
    tools::Timer timer;
    tools::Table t6;
    t6.columns = {"theta", "n", "mean_R", "var_R", "mean_Rsin2", "var_Rsin2", "cov"};
    tools::Table t7;
    t7.columns = {"theta", "n", "emp_mean", "emp_var", "law_mu", "law_sigma_sq"};
    tools::Table t8;
    t8.columns = {"theta", "n", "sample_var", "target", "rel_diff"};
    Context quiet = ctx;  // reuse the cli path; discard counters and output
    quiet.verbose = false;
    std::printf("    (re-running criteria 6-8 computations for determinism artifacts)\n");
    criterion_6(quiet, &t6);
    criterion_7(quiet, &t7);
    criterion_8(quiet, &t8);
    auto manifest = nlohmann::json::object();
    manifest["command"] = "acceptance-artifacts";
    manifest["schema_version"] = 1;
    tools::emit((dir / "c6.csv").string(), "csv", t6, manifest, timer);
    tools::emit((dir / "c7.csv").string(), "csv", t7, manifest, timer);
    tools::emit((dir / "c8.csv").string(), "csv", t8, manifest, timer);
}

void run_cli_pipeline_9(Context& ctx, const fs::path& dir) {
    fs::create_directories(dir);
    // Relative paths and a per-run working directory keep the two command
    // lines literally identical, so the manifests must match byte for byte.
    std::ostringstream sim, pred, cmp;
    sim << "simulate --theta0 0.1 --widths 256 --depth 30 --trials 2000 --seed " << kSeedSim9
        << " --keep-raw --out sim.csv";
    pred << "predict --theta0 0.1 --widths 256 --depth 30 --ensemble 5000 --seed "
         << kSeedPredict9 << " --out pred.csv";
    cmp << "compare --prediction pred.csv --simulation-raw sim.csv.raw.csv"
        << " --layers 1,30 --alpha 0.01 --out cmp.csv";
    if (run_cli(ctx, sim.str(), dir) != 0) throw std::runtime_error("simulate failed");
    if (run_cli(ctx, pred.str(), dir) != 0) throw std::runtime_error("predict failed");
    // compare exits 1 when a layer fails statistically; the report files are
    // written either way and only they matter for the determinism check.
    const int rc = run_cli(ctx, cmp.str(), dir);
    if (rc != 0 && WEXITSTATUS(rc) != 1) throw std::runtime_error("compare errored");
}

bool criterion_11(Context& ctx) {
    const fs::path d1 = ctx.workdir / "c11_run1";
    const fs::path d2 = ctx.workdir / "c11_run2";
    write_artifacts_6_7_8(ctx, d1);
    write_artifacts_6_7_8(ctx, d2);
    bool ok = true;
    for (const char* name : {"c6.csv", "c7.csv", "c8.csv"}) {
        const bool eq = files_equal(d1 / name, d2 / name) &&
                        files_equal(d1 / (std::string(name) + ".manifest.json"),
                                    d2 / (std::string(name) + ".manifest.json"));
        ctx.sub(eq, std::string("criteria 6-8 artifact ") + name + " byte-identical");
        ok = ok && eq;
    }

    run_cli_pipeline_9(ctx, d1 / "cli");
    run_cli_pipeline_9(ctx, d2 / "cli");
    for (const char* name :
         {"sim.csv", "sim.csv.manifest.json", "sim.csv.raw.csv", "pred.csv",
          "pred.csv.manifest.json", "cmp.csv", "cmp.csv.manifest.json"}) {
        const bool eq = files_equal(d1 / "cli" / name, d2 / "cli" / name);
        ctx.sub(eq, std::string("criterion-9 CLI output ") + name + " byte-identical");
        ok = ok && eq;
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    Context ctx;
    if (const char* env = std::getenv("RELUANGLE_CLI")) ctx.cli = env;
    ctx.workdir = fs::temp_directory_path() / "reluangle_acceptance";
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) selected = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--cli") == 0 && i + 1 < argc) ctx.cli = argv[++i];
        else if (std::strcmp(argv[i], "--workdir") == 0 && i + 1 < argc) ctx.workdir = argv[++i];
        else {
            std::fprintf(stderr, "usage: acceptance [--criterion N] [--cli PATH] [--workdir DIR]\n");
            return 2;
        }
    }
    fs::create_directories(ctx.workdir);

    using CriterionFn = std::function<bool(Context&)>;
    struct Criterion {
        std::string name;
        CriterionFn fn;
        double budget_s;  // 0 = no runtime bound
    };
    const std::vector<Criterion> criteria = {
        {"J-function triple agreement (recursive/closed/quadrature)", criterion_1, 60},
        {"low-order formula table reproduction", criterion_2, 60},
        {"Bessel closed form == recursion + worked constants", criterion_3, 1},
        {"path-sum oracle equals the Bessel coefficient formulas", criterion_4, 30},
        {"irreducible-count oracle equals the coefficient polynomials", criterion_5, 120},
        {"R-moment formulas vs Monte Carlo + pattern tables",
         [](Context& c) { return criterion_6(c, nullptr); }, 300},
        {"single-layer law vs 1e5-network simulation",
         [](Context& c) { return criterion_7(c, nullptr); }, 300},
        {"sigma^2 -> 8/n limit at width 1024",
         [](Context& c) { return criterion_8(c, nullptr); }, 60},
        {"depth-30 reproduction at desk scale (via CLI)", criterion_9, 600},
        {"decay-rate properties", criterion_10, 60},
        {"determinism: byte-identical reruns of criteria 6-9", criterion_11, 0},
    };

    if ((selected == 9 || selected == 11 || selected == 0) && ctx.cli.empty()) {
        std::fprintf(stderr,
                     "criteria 9/11 need the CLI path (--cli or RELUANGLE_CLI)\n");
        return 2;
    }

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (selected != 0 && number != selected) continue;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].fn(ctx);
        } catch (const std::exception& e) {
            std::printf("    [FAIL] exception: %s\n", e.what());
        }
        const double secs = elapsed_s(t0);
        if (criteria[i].budget_s > 0 && secs > criteria[i].budget_s) {
            ctx.sub(false, "runtime " + fmt(secs) + "s exceeds the " +
                               fmt(criteria[i].budget_s) + "s budget");
            ok = false;
        }
        std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", number,
                    criteria[i].name.c_str(), secs);
        if (!ok) ++failures;
    }
    return failures;
}
