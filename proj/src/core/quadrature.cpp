#include "quadrature.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"
#include "jfun.hpp"

namespace reluangle::oracle {

namespace {

// Gauss-Legendre nodes/weights on [0,1], computed once by Newton iteration
// on the Legendre polynomial.
struct GaussRule {
    std::vector<double> x, w;
};

GaussRule make_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Initial guess on [-1,1], then Newton.
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-16) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        r.x[i] = 0.5 * (t + 1.0);
        r.w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
}

const GaussRule& rule_lo() {
    static const GaussRule r = make_rule(12);
    return r;
}

const GaussRule& rule_hi() {
    static const GaussRule r = make_rule(18);
    return r;
}

struct Integrand {
    int a, b;
    double rho;        // cos theta
    double inv_one_minus_rho2;
    double norm;       // 1 / (2 pi sqrt(1 - rho^2))

    double operator()(double u, double v) const {
        const double gu = u / (1.0 - u);
        const double gv = v / (1.0 - v);
        const double e = gu * gu - 2.0 * rho * gu * gv + gv * gv;
        const double dens = norm * std::exp(-0.5 * e * inv_one_minus_rho2);
        if (dens == 0.0) return 0.0;
        double mono = 1.0;
        for (int k = 0; k < a; ++k) mono *= gu;
        for (int k = 0; k < b; ++k) mono *= gv;
        const double ju = 1.0 / ((1.0 - u) * (1.0 - u));
        const double jv = 1.0 / ((1.0 - v) * (1.0 - v));
        return mono * dens * ju * jv;
    }
};

// One panel rectangle with its embedded error estimate (orders 12 vs 18).
struct Panel {
    double u0, u1, v0, v1;
    double value;  // high-order estimate
    double err;    // |high - low|
};

double tensor_gl(const Integrand& f, const GaussRule& rule, double u0, double u1, double v0,
                 double v1) {
    const int n = static_cast<int>(rule.x.size());
    const double hu = u1 - u0, hv = v1 - v0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = u0 + hu * rule.x[i];
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += rule.w[j] * f(u, v0 + hv * rule.x[j]);
        total += rule.w[i] * row;
    }
    return total * hu * hv;
}

Panel evaluate_panel(const Integrand& f, double u0, double u1, double v0, double v1) {
    const double lo = tensor_gl(f, rule_lo(), u0, u1, v0, v1);
    const double hi = tensor_gl(f, rule_hi(), u0, u1, v0, v1);
    return {u0, u1, v0, v1, hi, std::abs(hi - lo)};
}

}  // namespace

QuadratureResult j_quadrature(int a, int b, double theta, double target_abs_err,
                              std::int64_t max_nodes) {
    JIndex::checked(a, b);
    Angle::checked(theta);
    if (!(target_abs_err > 0.0))
        throw invalid_argument_error("j_quadrature: target_abs_err must be positive");

    QuadratureResult out;
    if (theta == 0.0) {
        out.estimate = gauss::phi_moment(a + b);
        return out;
    }
    if (theta == kPi) {
        out.estimate = 0.0;
        return out;
    }

    const double rho = std::cos(theta);
    Integrand f{a, b, rho, 1.0 / (1.0 - rho * rho),
                1.0 / (2.0 * kPi * std::sqrt(1.0 - rho * rho))};

    // Adaptive refinement: keep a worklist of panels, always split the one
    // with the largest embedded error into four. This concentrates nodes on
    // the narrow density ridge that appears as cos(theta) -> +/-1.
    const std::int64_t panel_cost =
        static_cast<std::int64_t>(rule_lo().x.size()) * rule_lo().x.size() +
        static_cast<std::int64_t>(rule_hi().x.size()) * rule_hi().x.size();

    std::vector<Panel> panels;
    const int k0 = 4;
    for (int i = 0; i < k0; ++i)
        for (int j = 0; j < k0; ++j) {
            panels.push_back(evaluate_panel(f, double(i) / k0, double(i + 1) / k0,
                                            double(j) / k0, double(j + 1) / k0));
            out.nodes_used += panel_cost;
        }

    auto totals = [&panels] {
        double v = 0, e = 0;
        for (const Panel& p : panels) {
            v += p.value;
            e += p.err;
        }
        return std::pair{v, e};
    };

    for (;;) {
        const auto [value, err] = totals();
        if (err <= target_abs_err) {
            out.estimate = value;
            out.error_bound = err;
            return out;
        }
        if (out.nodes_used + 4 * panel_cost > max_nodes)
            throw accuracy_error("j_quadrature: target " + std::to_string(target_abs_err) +
                                     " not reached within node budget; achieved " +
                                     std::to_string(err),
                                 err, value);
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        const Panel p = panels[worst];
        panels.erase(panels.begin() + static_cast<std::ptrdiff_t>(worst));
        const double um = 0.5 * (p.u0 + p.u1), vm = 0.5 * (p.v0 + p.v1);
        panels.push_back(evaluate_panel(f, p.u0, um, p.v0, vm));
        panels.push_back(evaluate_panel(f, um, p.u1, p.v0, vm));
        panels.push_back(evaluate_panel(f, p.u0, um, vm, p.v1));
        panels.push_back(evaluate_panel(f, um, p.u1, vm, p.v1));
        out.nodes_used += 4 * panel_cost;
    }
}

}  // namespace reluangle::oracle
