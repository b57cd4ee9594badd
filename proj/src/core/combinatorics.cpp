#include "combinatorics.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "dynamics.hpp"
#include "jfun.hpp"

namespace reluangle::comb {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    const __int128 s = static_cast<__int128>(x) + y;
    if (s > INT64_MAX || s < INT64_MIN) throw overflow_error("path weight overflow");
    return static_cast<std::int64_t>(s);
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    const __int128 p = static_cast<__int128>(x) * y;
    if (p > INT64_MAX || p < INT64_MIN) throw overflow_error("path weight overflow");
    return static_cast<std::int64_t>(p);
}

void poly_add_scaled(CosPolynomial& acc, const CosPolynomial& p, std::int64_t coef, int power) {
    for (const auto& [k, c] : p) {
        auto& slot = acc[k + power];
        slot = checked_add(slot, checked_mul(c, coef));
    }
}

void poly_trim(CosPolynomial& p) {
    for (auto it = p.begin(); it != p.end();) {
        if (it->second == 0) it = p.erase(it);
        else ++it;
    }
}

bool vertex_valid(Scheme scheme, Vertex v) {
    const auto [a, b] = v;
    if (a < 0 || b < 0) return false;
    if (scheme == Scheme::kP || scheme == Scheme::kQ) return b <= a;
    return a <= b;
}

// Edges incoming to `v`, as (source, integer coefficient, cos power).
struct Edge {
    Vertex from;
    std::int64_t coef;
    int cos_power;
};

std::vector<Edge> incoming(Scheme scheme, Vertex v) {
    const auto [a, b] = v;
    std::vector<Edge> edges;
    const bool diag_allowed = (scheme == Scheme::kJ) ? a >= 2 : a >= 1;
    if (diag_allowed && vertex_valid(scheme, {a - 1, b - 1})) {
        if (scheme == Scheme::kJ) edges.push_back({{a - 1, b - 1}, b, 1});
        else edges.push_back({{a - 1, b - 1}, 1, 0});
    }
    if (a >= 2 && vertex_valid(scheme, {a - 2, b})) {
        const std::int64_t w = (scheme == Scheme::kQ) ? a : a - 1;
        if (w != 0) edges.push_back({{a - 2, b}, w, 0});
    }
    return edges;
}

constexpr int kLatticeLimit = 30;

void check_bounds(Scheme scheme, Vertex from, Vertex to) {
    if (!vertex_valid(scheme, from) || !vertex_valid(scheme, to))
        throw invalid_argument_error("path_weight_sum: vertex outside the scheme lattice");
    if (to.first > kLatticeLimit || to.second > 2 * kLatticeLimit)
        throw invalid_argument_error("path_weight_sum: lattice bound exceeded (a <= 30)");
}

CosPolynomial paths_dp(Scheme scheme, Vertex from, Vertex to) {
    std::map<Vertex, CosPolynomial> memo;
    auto eval = [&](auto&& self, Vertex v) -> const CosPolynomial& {
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        CosPolynomial w;
        if (v == from) {
            w[0] = 1;
        } else if (v.first >= from.first && v.second >= from.second) {
            for (const Edge& e : incoming(scheme, v))
                poly_add_scaled(w, self(self, e.from), e.coef, e.cos_power);
            poly_trim(w);
        }
        return memo.emplace(v, std::move(w)).first->second;
    };
    return eval(eval, to);
}

// Exhaustive backward walk, the dumbest possible oracle.
void paths_dfs(Scheme scheme, Vertex from, Vertex v, std::int64_t coef, int power,
               CosPolynomial& acc) {
    if (v == from) {
        auto& slot = acc[power];
        slot = checked_add(slot, coef);
        return;
    }
    if (v.first < from.first || v.second < from.second) return;
    for (const Edge& e : incoming(scheme, v))
        paths_dfs(scheme, from, e.from, checked_mul(coef, e.coef), power + e.cos_power, acc);
}

}  // namespace

CosPolynomial path_weight_sum(Scheme scheme, Vertex from, Vertex to, bool naive_dfs) {
    check_bounds(scheme, from, to);
    if (naive_dfs) {
        if (to.first > 10)
            throw invalid_argument_error("path_weight_sum: naive DFS limited to a <= 10");
        CosPolynomial acc;
        paths_dfs(scheme, from, to, 1, 0, acc);
        poly_trim(acc);
        return acc;
    }
    return paths_dp(scheme, from, to);
}

std::int64_t count_irreducible(int k_points, int n, std::int64_t budget) {
    if (k_points < 2 || k_points > 4)
        throw invalid_argument_error("count_irreducible: k must be in {2,3,4}");
    if (n < 1) throw invalid_argument_error("count_irreducible: n must be >= 1");
    double total_d = 1;
    for (int i = 0; i < 2 * k_points; ++i) total_d *= n;
    if (total_d > static_cast<double>(budget))
        throw budget_error("count_irreducible: enumeration of n^(2k) tuples exceeds budget",
                           static_cast<std::uint64_t>(total_d));
    const std::int64_t total = static_cast<std::int64_t>(total_d);

    const int k = k_points;
    std::array<int, 8> idx{};
    std::int64_t count = 0;
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        for (int i = 0; i < 2 * k; ++i) {
            idx[i] = static_cast<int>(c % n);
            c /= n;
        }
        bool irreducible = true;
        for (int p = 0; p < k && irreducible; ++p) {
            const int ip = idx[2 * p], jp = idx[2 * p + 1];
            bool shares = false;
            for (int q = 0; q < k && !shares; ++q) {
                if (q == p) continue;
                shares = (idx[2 * q] == ip || idx[2 * q + 1] == ip || idx[2 * q] == jp ||
                          idx[2 * q + 1] == jp);
            }
            irreducible = shares;  // a point sharing nothing is reducible
        }
        if (irreducible) ++count;
    }
    return count;
}

std::string pattern_of(std::span<const int> config) {
    std::map<int, char> names;
    std::string out;
    out.reserve(config.size() + config.size() / 2);
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (i > 0 && i % 2 == 0) out.push_back('|');
        auto [it, inserted] = names.emplace(config[i], static_cast<char>('a' + names.size()));
        out.push_back(it->second);
    }
    return out;
}

std::set<std::string> irreducible_patterns(int k_points) {
    const int n = 2 * k_points;  // enough labels to realize every pattern
    std::set<std::string> out;
    std::vector<int> idx(2 * k_points);
    std::int64_t total = 1;
    for (int i = 0; i < 2 * k_points; ++i) total *= n;
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        for (int i = 0; i < 2 * k_points; ++i) {
            idx[i] = static_cast<int>(c % n);
            c /= n;
        }
        bool irreducible = true;
        for (int p = 0; p < k_points && irreducible; ++p) {
            bool shares = false;
            for (int q = 0; q < k_points && !shares; ++q) {
                if (q == p) continue;
                shares = (idx[2 * q] == idx[2 * p] || idx[2 * q + 1] == idx[2 * p] ||
                          idx[2 * q] == idx[2 * p + 1] || idx[2 * q + 1] == idx[2 * p + 1]);
            }
            irreducible = shares;
        }
        if (irreducible) out.insert(pattern_of(idx));
    }
    return out;
}

namespace {

// A monomial in the phi-powers of (G_i, Ghat_i): per slot (first or second
// index of the point) a power on the G side and on the Ghat side.
struct Monomial {
    int coef;
    int g_i, h_i;  // powers attached to the first index of the point
    int g_j, h_j;  // powers attached to the second index
};

// phi^2(G_i) phi^2(Ghat_j)
constexpr std::array<Monomial, 1> kNormMonomials = {{{1, 2, 0, 0, 2}}};
// (phi(G_i) phi(Ghat_j) - phi(G_j) phi(Ghat_i))^2
constexpr std::array<Monomial, 3> kAntisymMonomials = {
    {{1, 2, 0, 0, 2}, {-2, 1, 1, 1, 1}, {1, 0, 2, 2, 0}}};

// E[phi^p(G) phi^q(Ghat)] for one shared index.
class MixedMomentTable {
  public:
    explicit MixedMomentTable(double theta) {
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; q <= 4; ++q) {
                if (p == 0 && q == 0) m_[p][q] = 1.0;
                else if (q == 0) m_[p][q] = gauss::phi_moment(p);
                else if (p == 0) m_[p][q] = gauss::phi_moment(q);
                else m_[p][q] = gauss::j_closed(p, q, theta);
            }
    }
    double operator()(int p, int q) const { return m_[p][q]; }

  private:
    double m_[5][5];
};

template <std::size_t N>
double expect_product(const MixedMomentTable& mm, std::span<const Monomial> f1,
                      std::span<const Monomial> f2, const std::array<int, N>& cfg) {
    // cfg = (i1, j1, i2, j2); accumulate exponents per concrete index and
    // factorize the expectation across independent indices.
    double total = 0;
    for (const Monomial& a : f1)
        for (const Monomial& b : f2) {
            int gp[4] = {0, 0, 0, 0}, hp[4] = {0, 0, 0, 0};
            gp[cfg[0]] += a.g_i;
            hp[cfg[0]] += a.h_i;
            gp[cfg[1]] += a.g_j;
            hp[cfg[1]] += a.h_j;
            gp[cfg[2]] += b.g_i;
            hp[cfg[2]] += b.h_i;
            gp[cfg[3]] += b.g_j;
            hp[cfg[3]] += b.h_j;
            double e = a.coef * b.coef;
            for (int v = 0; v < 4; ++v)
                if (gp[v] | hp[v]) e *= mm(gp[v], hp[v]);
            total += e;
        }
    return total;
}

double expect_single(const MixedMomentTable& mm, std::span<const Monomial> f, int i, int j) {
    double total = 0;
    for (const Monomial& a : f) {
        int gp[2] = {0, 0}, hp[2] = {0, 0};
        const int ii = 0, jj = (j == i) ? 0 : 1;
        gp[ii] += a.g_i;
        hp[ii] += a.h_i;
        gp[jj] += a.g_j;
        hp[jj] += a.h_j;
        double e = a.coef;
        for (int v = 0; v < 2; ++v)
            if (gp[v] | hp[v]) e *= mm(gp[v], hp[v]);
        total += e;
    }
    return total;
}

}  // namespace

double pattern_table_check(MomentKind kind, int n, double theta) {
    if (n < 2 || n > 8) throw invalid_argument_error("pattern_table_check: n must be in [2,8]");
    Angle::checked(theta);

    const MixedMomentTable mm(theta);
    std::span<const Monomial> f1, f2;
    double prefactor = 0;
    switch (kind) {
        case MomentKind::kVarR:
            f1 = f2 = kNormMonomials;
            prefactor = 16.0;
            break;
        case MomentKind::kVarRsin2:
            f1 = f2 = kAntisymMonomials;
            prefactor = 4.0;
            break;
        case MomentKind::kCov:
            f1 = kAntisymMonomials;
            f2 = kNormMonomials;
            prefactor = 8.0;
            break;
    }
    const double n4 = std::pow(static_cast<double>(n), 4);

    // Sum per pattern: every configuration in a pattern contributes the same
    // expectation, so evaluate once per pattern on the canonical relabeling.
    std::map<std::string, double> pattern_value;
    double sum = 0;
    std::array<int, 4> cfg{};
    for (cfg[0] = 0; cfg[0] < n; ++cfg[0])
        for (cfg[1] = 0; cfg[1] < n; ++cfg[1])
            for (cfg[2] = 0; cfg[2] < n; ++cfg[2])
                for (cfg[3] = 0; cfg[3] < n; ++cfg[3]) {
                    // reducible configurations factorize and cancel exactly
                    const bool shares = cfg[0] == cfg[2] || cfg[0] == cfg[3] ||
                                        cfg[1] == cfg[2] || cfg[1] == cfg[3];
                    if (!shares) continue;
                    const std::string pat = pattern_of(cfg);
                    auto it = pattern_value.find(pat);
                    if (it == pattern_value.end()) {
                        // canonical representative: relabel to 0,1,2,...
                        std::array<int, 4> rep{};
                        std::map<int, int> names;
                        for (int i = 0; i < 4; ++i)
                            rep[i] = names.emplace(cfg[i], static_cast<int>(names.size()))
                                         .first->second;
                        const double e12 = expect_product(mm, f1, f2, rep);
                        const double e1 = expect_single(mm, f1, rep[0], rep[1]);
                        const double e2 = expect_single(mm, f2, rep[2], rep[3]);
                        it = pattern_value.emplace(pat, e12 - e1 * e2).first;
                    }
                    sum += it->second;
                }
    const double direct = prefactor / n4 * sum;

    const auto closed = dynamics::moments_of_R(theta, n);
    double want = 0;
    switch (kind) {
        case MomentKind::kVarR: want = closed.Var_R; break;
        case MomentKind::kVarRsin2: want = closed.Var_Rsin2; break;
        case MomentKind::kCov: want = closed.Cov; break;
    }
    return std::abs(direct - want);
}

}  // namespace reluangle::comb
