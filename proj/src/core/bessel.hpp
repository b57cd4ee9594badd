#ifndef RELUANGLE_BESSEL_HPP
#define RELUANGLE_BESSEL_HPP

#include <cstdint>

namespace reluangle::bessel {

// Bessel numbers of the second kind P(a,b) and the companion family Q(a,b).
// Both vanish unless a >= b >= 0 with a == b (mod 2). All arithmetic is
// exact; values that do not fit in int64 raise overflow_error.
//
// Closed forms:
//   P(a,b) = a! / (b! ((a-b)/2)! 2^((a-b)/2))
//   Q(a,b) = ((a+b)/2)!/b! * 2^((b-a)/2) * sum_{i=0}^{(a-b)/2} C(a+1, i)
// The 2^((b-a)/2) factor in Q is a negative power of two for a > b; the
// computation keeps an exact numerator and asserts divisibility.
std::int64_t P(int a, int b);
std::int64_t Q(int a, int b);

// The same numbers computed purely from the recursions
//   P(a,b) = (a-1) P(a-2,b) + P(a-1,b-1),   P(0,0) = 1, P(n,n) = P(n-1,n-1)
//   Q(a,b) =  a    Q(a-2,b) + Q(a-1,b-1),   same seeds
// with the convention P(a,-1) = Q(a,-1) = 0.
std::int64_t P_rec(int a, int b);
std::int64_t Q_rec(int a, int b);

// Exact binomial coefficient, overflow-checked.
std::int64_t binomial(int n, int k);

}  // namespace reluangle::bessel

#endif
