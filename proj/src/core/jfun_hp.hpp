#ifndef RELUANGLE_JFUN_HP_HPP
#define RELUANGLE_JFUN_HP_HPP

namespace reluangle::gauss::hp {

struct RouteComparison {
    double value;     // J_{a,b} at theta, rounded to double
    double rel_diff;  // |recursive - closed| / max(|recursive|, |closed|)
};

// Evaluates both J_{a,b} routes at theta = pi * num / den in 384-bit
// arithmetic. The recurrences cancel catastrophically near theta = pi at
// high order; extended precision keeps the route comparison meaningful
// there. rel_diff is 0 when both routes are exactly zero.
RouteComparison compare_routes(int a, int b, int num, int den);

}  // namespace reluangle::gauss::hp

#endif
