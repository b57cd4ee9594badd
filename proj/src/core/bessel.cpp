#include "bessel.hpp"

#include <limits>
#include <map>
#include <string>
#include <utility>

#include "common.hpp"

namespace reluangle::bessel {

namespace {

using i128 = __int128;

constexpr i128 kMaxI64 = std::numeric_limits<std::int64_t>::max();

i128 checked_mul(i128 x, i128 y, const char* what) {
    if (x == 0 || y == 0) return 0;
    i128 limit = (i128(1) << 120);
    if (x > limit / y)
        throw overflow_error(std::string(what) + ": intermediate exceeds 128-bit budget");
    return x * y;
}

std::int64_t to_i64(i128 v, const char* what) {
    if (v > kMaxI64)
        throw overflow_error(std::string(what) + ": result does not fit in int64");
    return static_cast<std::int64_t>(v);
}

bool lattice_zero(int a, int b) { return a < b || ((a - b) % 2 != 0); }

void check_args(int a, int b, const char* what) {
    if (a < 0 || b < 0)
        throw invalid_argument_error(std::string(what) + ": indices must be non-negative");
}

}  // namespace

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    i128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = checked_mul(r, n - k + i, "binomial");
        r /= i;
    }
    return to_i64(r, "binomial");
}

std::int64_t P(int a, int b) {
    check_args(a, b, "P");
    if (lattice_zero(a, b)) return 0;
    // a!/(b! m! 2^m) with m = (a-b)/2 equals C(a,b) * (a-b-1)!!.
    const int m = (a - b) / 2;
    i128 r = binomial(a, b);
    for (int k = 2 * m - 1; k >= 3; k -= 2) r = checked_mul(r, k, "P");
    return to_i64(r, "P");
}

std::int64_t Q(int a, int b) {
    check_args(a, b, "Q");
    if (lattice_zero(a, b)) return 0;
    const int m = (a - b) / 2;
    // ((a+b)/2)!/b! as a rising product, times the binomial tail, then the
    // exact division by 2^m.
    i128 num = 1;
    for (int k = b + 1; k <= (a + b) / 2; ++k) num = checked_mul(num, k, "Q");
    i128 s = 0;
    for (int i = 0; i <= m; ++i) s += binomial(a + 1, i);
    num = checked_mul(num, s, "Q");
    for (int k = 0; k < m; ++k) {
        if (num % 2 != 0)
            throw consistency_error("Q(" + std::to_string(a) + "," + std::to_string(b) +
                                    "): non-integral result, power-of-two division failed");
        num /= 2;
    }
    return to_i64(num, "Q");
}

namespace {

// Shared recursion driver; vertical coefficient is (a-1) for P and a for Q.
std::int64_t pq_rec(int a, int b, bool is_q) {
    if (b < 0) return 0;
    if (lattice_zero(a, b)) return 0;
    std::map<std::pair<int, int>, i128> memo;
    auto eval = [&](auto&& self, int aa, int bb) -> i128 {
        if (bb < 0) return 0;
        if (aa < bb || ((aa - bb) % 2 != 0)) return 0;
        if (aa == 0 && bb == 0) return 1;
        if (aa == bb) return self(self, aa - 1, bb - 1);
        auto it = memo.find({aa, bb});
        if (it != memo.end()) return it->second;
        i128 vert = checked_mul(is_q ? aa : aa - 1, self(self, aa - 2, bb), "PQ_rec");
        i128 v = vert + self(self, aa - 1, bb - 1);
        memo.emplace(std::make_pair(aa, bb), v);
        return v;
    };
    return to_i64(eval(eval, a, b), is_q ? "Q_rec" : "P_rec");
}

}  // namespace

std::int64_t P_rec(int a, int b) {
    check_args(a, b, "P_rec");
    return pq_rec(a, b, false);
}

std::int64_t Q_rec(int a, int b) {
    check_args(a, b, "Q_rec");
    return pq_rec(a, b, true);
}

}  // namespace reluangle::bessel
