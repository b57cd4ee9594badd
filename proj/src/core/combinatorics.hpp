#ifndef RELUANGLE_COMBINATORICS_HPP
#define RELUANGLE_COMBINATORICS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>

namespace reluangle::comb {

// The four recursion graphs. Edges run into (a,b) from (a-2,b) with an
// integer weight and from (a-1,b-1) with weight 1 (J*: also into row 1),
// b cos(theta) (J), or 1 (P, Q). Rows 0 and 1 are the sources of the J
// graph; (0,0) is the single source of P and Q.
enum class Scheme { kJ, kJStar, kP, kQ };

using Vertex = std::pair<int, int>;  // (a, b)

// Exact polynomial in cos(theta): key = power, value = integer coefficient.
using CosPolynomial = std::map<int, std::int64_t>;

// Sum over all directed paths of the product of edge weights. Unreachable
// pairs give the zero polynomial. naive_dfs switches to plain exhaustive
// path enumeration (exponential; keep a small).
CosPolynomial path_weight_sum(Scheme scheme, Vertex from, Vertex to, bool naive_dfs = false);

// Number of irreducible index configurations in [n]^{2k}: configurations of
// k pairs in which every pair shares an index with the union of the others.
// Enumerates all n^{2k} tuples; refuses (budget_error carrying the required
// count) if that exceeds `budget`.
std::int64_t count_irreducible(int k_points, int n, std::int64_t budget = 400'000'000);

// Canonical pattern of an index configuration: indices renamed to a,b,c,...
// in order of first occurrence, pairs joined by '|' (e.g. "ab|ac").
std::string pattern_of(std::span<const int> config);

// All irreducible patterns on k pairs (k = 2 gives the classical 11).
std::set<std::string> irreducible_patterns(int k_points);

enum class MomentKind { kVarR, kVarRsin2, kCov };

// Reconstructs Var[R], Var[R sin^2] or Cov(R sin^2, R) by direct summation
// over all index configurations, classifying each by pattern and inserting
// the per-pattern expectation expressed through the mixed moments. Returns
// the absolute difference against the closed-form moment value; both are
// exact in n, so the residual is pure rounding.
double pattern_table_check(MomentKind kind, int n, double theta);

}  // namespace reluangle::comb

#endif
