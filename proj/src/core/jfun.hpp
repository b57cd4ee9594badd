#ifndef RELUANGLE_JFUN_HPP
#define RELUANGLE_JFUN_HPP

namespace reluangle::gauss {

// E[phi(G)^k] for standard Gaussian G and ReLU phi; k >= 0.
double phi_moment(int k);

// The three seed moments J_{0,0}, J_{1,0}, J_{1,1}; (a, b) must be one of
// (0,0), (1,0), (0,1), (1,1).
double j_base(int a, int b, double theta);

// J_{a,b}(theta) = E[phi^a(G) phi^b(G_hat)], correlation cos(theta), by
// dynamic programming over the recurrences.
double j_recursive(int a, int b, double theta);

// Same value by the non-recursive route: double-factorial sums for the low
// rows, Bessel-number linear combination otherwise.
double j_closed(int a, int b, double theta);

}  // namespace reluangle::gauss

#endif
