#ifndef RELUANGLE_QUADRATURE_HPP
#define RELUANGLE_QUADRATURE_HPP

#include <cstdint>

namespace reluangle::oracle {

struct QuadratureResult {
    double estimate = 0.0;
    double error_bound = 0.0;
    std::int64_t nodes_used = 0;
};

// Deterministic quadrature oracle for J_{a,b}(theta): integrates
// g^a h^b against the correlated bivariate normal density (correlation
// cos theta) over the positive quadrant in (g, h) coordinates, so the
// integrand stays smooth and the indicators live entirely in the domain.
// Each semi-infinite axis is mapped to (0,1) by g = u/(1-u); tensorized
// Gauss-Legendre panels are refined until the embedded error estimate
// meets target_abs_err. theta in {0, pi} reduces to the 1-D moments.
//
// Throws accuracy_error (carrying the achieved bound) if the node budget
// runs out first.
QuadratureResult j_quadrature(int a, int b, double theta, double target_abs_err,
                              std::int64_t max_nodes = 8'000'000);

}  // namespace reluangle::oracle

#endif
