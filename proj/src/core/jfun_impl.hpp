#ifndef RELUANGLE_JFUN_IMPL_HPP
#define RELUANGLE_JFUN_IMPL_HPP

// Templated evaluation of the mixed ReLU-Gaussian moments J_{a,b}(theta).
// Instantiated for double (public surface) and __float128 (used where the
// recurrences cancel heavily, near theta = pi at high order).

#include <cmath>
#include <vector>

#include "bessel.hpp"
#include "common.hpp"

namespace reluangle::gauss::detail {

template <class Real>
struct real_ops;

template <>
struct real_ops<double> {
    static double pi() { return kPi; }
    static double sin(double x) { return std::sin(x); }
    static double cos(double x) { return std::cos(x); }
    static double sqrt(double x) { return std::sqrt(x); }
    static double log(double x) { return std::log(x); }
};

// Double factorial n!! with (-1)!! = 0!! = 1, as an exact small integer in Real.
template <class Real>
Real dfact(int n) {
    Real r = 1;
    for (int k = n; k >= 2; k -= 2) r *= k;
    return r;
}

// Falling factorial (b)_k = b (b-1) ... (b-k+1), (b)_0 = 1.
template <class Real>
Real falling(int b, int k) {
    Real r = 1;
    for (int i = 0; i < k; ++i) r *= (b - i);
    return r;
}

template <class Real>
Real pow_int(Real x, int k) {
    Real r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

template <class Real>
Real norm_const(int parity) {
    using ops = real_ops<Real>;
    const Real two_pi = 2 * ops::pi();
    return (parity % 2 == 0) ? two_pi : 2 * ops::sqrt(two_pi);
}

// E[phi(G)^k]: (k-1)!!/2 for even k, (k-1)!!/sqrt(2 pi) for odd k.
template <class Real>
Real phi_moment_t(int k) {
    using ops = real_ops<Real>;
    if (k % 2 == 0) return dfact<Real>(k - 1) / 2;
    return dfact<Real>(k - 1) / ops::sqrt(2 * ops::pi());
}

template <class Real>
Real j00(Real theta) {
    using ops = real_ops<Real>;
    return (ops::pi() - theta) / (2 * ops::pi());
}

template <class Real>
Real j10(Real theta) {
    using ops = real_ops<Real>;
    return (1 + ops::cos(theta)) / norm_const<Real>(1);
}

template <class Real>
Real j11(Real theta) {
    using ops = real_ops<Real>;
    return (ops::sin(theta) + (ops::pi() - theta) * ops::cos(theta)) / (2 * ops::pi());
}

// Explicit formula for J_{n,0}.
template <class Real>
Real j0_explicit(int n, Real theta) {
    using ops = real_ops<Real>;
    if (n == 0) return j00(theta);
    if (n == 1) return j10(theta);
    const Real s = ops::sin(theta);
    Real sum = 0;
    Real s_pow = (n % 2 == 0) ? s : s * s;  // sin^i for the first i
    for (int i = (n % 2 == 0) ? 1 : 2; i < n; i += 2) {
        sum += dfact<Real>(i - 1) / dfact<Real>(i) * s_pow;
        s_pow *= s * s;
    }
    const Real base = (n % 2 == 0) ? j00(theta) : j10(theta);
    return dfact<Real>(n - 1) * (base + ops::cos(theta) / norm_const<Real>(n) * sum);
}

// Explicit formula for J_{n,1}, built on the explicit J_{i,0}.
template <class Real>
Real j1_explicit(int n, Real theta) {
    using ops = real_ops<Real>;
    if (n == 0) return j10(theta);
    if (n == 1) return j11(theta);
    Real sum = 0;
    for (int i = (n % 2 == 0) ? 1 : 2; i < n; i += 2)
        sum += j0_explicit(i, theta) / dfact<Real>(i);
    const Real base = (n % 2 == 0) ? j10(theta) : j11(theta);
    return dfact<Real>(n - 1) * (base + ops::cos(theta) * sum);
}

// Dynamic programming over the two recurrences, seeded by the explicit low
// orders. Symmetry forces a <= b before recursing; the wedge then stays
// canonical. The memo table lives per call so evaluation is pure.
template <class Real>
class JRecursive {
  public:
    explicit JRecursive(Real theta)
        : theta_(theta),
          sin_(real_ops<Real>::sin(theta)),
          cos_(real_ops<Real>::cos(theta)) {}

    Real eval(int a, int b) {
        if (a > b) std::swap(a, b);
        if (a == 0) return row0(b);
        if (a == 1) return row1(b);
        ensure_table(a, b);
        return table_[idx(a, b)];
    }

  private:
    // J_{m,0} by the single-index recurrence.
    Real row0(int m) {
        if (static_cast<int>(row0_.size()) > m) return row0_[m];
        if (row0_.empty()) row0_ = {j00(theta_), j10(theta_)};
        while (static_cast<int>(row0_.size()) <= m) {
            const int k = static_cast<int>(row0_.size());
            const Real tail =
                pow_int(sin_, k - 1) * cos_ / norm_const<Real>(k) * dfact<Real>(k - 2);
            row0_.push_back((k - 1) * row0_[k - 2] + tail);
        }
        return row0_[m];
    }

    // J_{m,1} by the two-index recurrence along b = 1.
    Real row1(int m) {
        if (static_cast<int>(row1_.size()) > m) return row1_[m];
        if (row1_.empty()) row1_ = {j10(theta_), j11(theta_)};
        while (static_cast<int>(row1_.size()) <= m) {
            const int k = static_cast<int>(row1_.size());
            row1_.push_back((k - 1) * row1_[k - 2] + cos_ * row0(k - 1));
        }
        return row1_[m];
    }

    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * (bmax_ + 1) + b; }

    void ensure_table(int a, int b) {
        if (a <= amax_ && b <= bmax_ && done_) return;
        amax_ = a;
        bmax_ = b;
        table_.assign(static_cast<std::size_t>(a + 1) * (b + 1), Real(0));
        // Fill the wedge 2 <= aa <= bb <= b reachable below (a, b).
        for (int aa = 2; aa <= a; ++aa) {
            for (int bb = aa; bb <= b; ++bb) {
                const Real down = (aa - 2 == 0)   ? row0(bb)
                                  : (aa - 2 == 1) ? row1(bb)
                                                  : table_[idx(aa - 2, bb)];
                const Real diag = (aa - 1 == 1) ? row1(bb - 1) : table_[idx(aa - 1, bb - 1)];
                table_[idx(aa, bb)] = (aa - 1) * down + bb * cos_ * diag;
            }
        }
        done_ = true;
    }

    Real theta_, sin_, cos_;
    std::vector<Real> row0_, row1_, table_;
    int amax_ = -1, bmax_ = -1;
    bool done_ = false;
};

template <class Real>
Real j_recursive_t(int a, int b, Real theta) {
    JRecursive<Real> rec(theta);
    return rec.eval(a, b);
}

// Non-recursive evaluation: explicit double-factorial sums for the b <= 1
// rows, otherwise the linear combination over J_{0,n}, J_{1,n} with exact
// integer Bessel-number coefficients.
template <class Real>
Real j_closed_t(int a, int b, Real theta) {
    using ops = real_ops<Real>;
    if (a > b) std::swap(a, b);
    if (a == 0) return j0_explicit(b, theta);
    if (a == 1) return j1_explicit(b, theta);
    const Real c = ops::cos(theta);
    Real total = 0;
    for (int i = 1; i <= a; ++i) {
        const Real w = falling<Real>(b, a - i) * pow_int(c, a - i);
        if (i % 2 == 0) {
            const std::int64_t p = bessel::P(a, a - i);
            const std::int64_t q = (a - 1 - i >= 0) ? bessel::Q(a - 1, a - 1 - i) : 0;
            total += w * Real(p - q) * j0_explicit(b - a + i, theta);
        } else {
            const std::int64_t q = bessel::Q(a - 1, a - i);
            total += w * Real(q) * j1_explicit(b - a + i, theta);
        }
    }
    return total;
}

}  // namespace reluangle::gauss::detail

#endif
