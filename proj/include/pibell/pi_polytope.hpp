#ifndef PIBELL_PI_POLYTOPE_HPP
#define PIBELL_PI_POLYTOPE_HPP

#include <array>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"

namespace pibell::polytope {

using i64 = std::int64_t;

// Number of parties with outcome a for setting 0 and outcome b for setting 1,
// stored at index 3a + b.
struct LdsCounts {
    std::array<i64, 9> c{};

    i64 operator()(int a, int b) const { return c[static_cast<std::size_t>(3 * a + b)]; }
    i64& operator()(int a, int b) { return c[static_cast<std::size_t>(3 * a + b)]; }
    i64 n() const { return std::accumulate(c.begin(), c.end(), i64{0}); }
    auto operator<=>(const LdsCounts&) const = default;
};

// Symmetrised one- and two-body sums (P0, P00, P10, P11, P01).
struct PiPoint {
    i64 p0 = 0, p00 = 0, p10 = 0, p11 = 0, p01 = 0;

    std::array<i64, 5> as_array() const { return {p0, p00, p10, p11, p01}; }
    auto operator<=>(const PiPoint&) const = default;
};

using Coeffs = std::array<i64, 5>;

// alpha = (1, 1, 0, 0, -2), classical bound 0
inline constexpr Coeffs kBellCoeffs{1, 1, 0, 0, -2};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / (n - k + i)) return std::numeric_limits<std::uint64_t>::max();
        r = r * (n - k + i) / i;
    }
    return r;
}

// Strategies up to n = 20 by default.
inline constexpr std::uint64_t kDefaultBudget = 3108105;

inline std::uint64_t lds_count(int n) { return binomial(static_cast<std::uint64_t>(n) + 8, 8); }

// Streams all compositions of n into `parts` non-negative parts, starting
// at (n, 0, ..., 0).
class Compositions {
public:
    Compositions(int n, int parts) : n_(n), parts_(parts), cur_(static_cast<std::size_t>(parts), 0) {
        if (n < 0 || parts < 1) throw InputError("compositions: need n >= 0 and parts >= 1");
        cur_[0] = n;
    }

    const std::vector<i64>& current() const { return cur_; }

    bool next() {
        const std::size_t last = cur_.size() - 1;
        if (cur_[last] == n_) return false;
        i64 t = cur_[last];
        cur_[last] = 0;
        std::size_t j = last - 1;
        while (cur_[j] == 0) --j;
        cur_[j] -= 1;
        cur_[j + 1] = t + 1;
        return true;
    }

private:
    i64 n_;
    int parts_;
    std::vector<i64> cur_;
};

class LdsRange {
public:
    explicit LdsRange(int n) : n_(n) {
        if (n < 1) throw InputError("enumerate_lds: n must be >= 1, got " + std::to_string(n));
    }

    class iterator {
    public:
        using value_type = LdsCounts;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        explicit iterator(int n) : gen_(Compositions(n, 9)) { load(); }

        const LdsCounts& operator*() const { return value_; }
        const LdsCounts* operator->() const { return &value_; }
        iterator& operator++() {
            if (!gen_->next()) gen_.reset();
            else load();
            return *this;
        }
        void operator++(int) { ++*this; }
        bool operator==(std::default_sentinel_t) const { return !gen_.has_value(); }

    private:
        void load() { std::copy(gen_->current().begin(), gen_->current().end(), value_.c.begin()); }

        std::optional<Compositions> gen_;
        LdsCounts value_;
    };

    iterator begin() const { return iterator(n_); }
    std::default_sentinel_t end() const { return {}; }

private:
    int n_;
};

inline LdsRange enumerate_lds(int n) { return LdsRange(n); }

// P_{a|x}: parties answering a to setting x.
inline i64 marginal(const LdsCounts& s, int a, int x) {
    i64 m = 0;
    for (int k = 0; k < 3; ++k) m += x == 0 ? s(a, k) : s(k, a);
    return m;
}

// P_{ab|xy}: ordered pairs of distinct parties answering a to x and b to y.
inline i64 correlator(const LdsCounts& s, int a, int b, int x, int y) {
    i64 both = 0;
    if (x == y) both = a == b ? marginal(s, a, x) : 0;
    else both = x == 0 ? s(a, b) : s(b, a);
    return marginal(s, a, x) * marginal(s, b, y) - both;
}

inline PiPoint lds_to_pipoint(const LdsCounts& s) {
    auto p1 = [&](int a, int x) { return marginal(s, a, x); };
    auto p2 = [&](int a, int b, int x, int y) { return correlator(s, a, b, x, y); };
    PiPoint q;
    q.p0 = p1(0, 0) + p1(0, 1) + p1(1, 0) + p1(1, 1);
    q.p00 = p2(0, 0, 0, 0) + p2(0, 0, 1, 1) + p2(1, 1, 0, 0) + p2(1, 1, 1, 1);
    q.p10 = p2(0, 0, 0, 1) + p2(1, 1, 0, 1);
    q.p11 = p2(0, 1, 0, 0) + p2(0, 1, 1, 1);
    q.p01 = p2(0, 1, 0, 1) + p2(0, 1, 1, 0);
    return q;
}

template <class Scalar>
Scalar bell_value(const PiPoint& q, const std::array<Scalar, 5>& alpha, Scalar shift) {
    const auto v = q.as_array();
    Scalar s = -shift;
    for (std::size_t k = 0; k < 5; ++k) s += alpha[k] * static_cast<Scalar>(v[k]);
    return s;
}

inline i64 bell_value(const PiPoint& q) { return bell_value<i64>(q, kBellCoeffs, 0); }

struct ClassicalMinimum {
    i64 value = 0;
    LdsCounts argmin;
    std::uint64_t strategies = 0;
};

inline void check_budget(int n, std::uint64_t budget) {
    if (n < 1) throw InputError("n must be >= 1, got " + std::to_string(n));
    const std::uint64_t need = lds_count(n);
    if (need > budget)
        throw ResourceError("enumeration of n=" + std::to_string(n) + " needs " + std::to_string(need) +
                                " strategies, budget is " + std::to_string(budget),
                            need);
}

// Calls f(counts) for every strategy. Work is split by c_00 so chunks can run
// on separate threads; f(chunk, counts) receives the chunk index.
template <class F>
void for_each_lds_chunked(int n, F&& f) {
    parallel_for(static_cast<std::size_t>(n) + 1, [&](std::size_t chunk) {
        const i64 c00 = static_cast<i64>(n) - static_cast<i64>(chunk);
        const int rest = static_cast<int>(chunk);
        LdsCounts s;
        s.c[0] = c00;
        Compositions gen(rest, 8);
        do {
            std::copy(gen.current().begin(), gen.current().end(), s.c.begin() + 1);
            f(chunk, s);
        } while (gen.next());
    });
}

inline ClassicalMinimum classical_minimum(int n, const Coeffs& alpha = kBellCoeffs, i64 shift = 0,
                                          std::uint64_t budget = kDefaultBudget) {
    check_budget(n, budget);
    const std::size_t chunks = static_cast<std::size_t>(n) + 1;
    std::vector<ClassicalMinimum> best(chunks);
    std::vector<bool> seen(chunks, false);
    for_each_lds_chunked(n, [&](std::size_t k, const LdsCounts& s) {
        const i64 v = bell_value<i64>(lds_to_pipoint(s), alpha, shift);
        ++best[k].strategies;
        if (!seen[k] || v < best[k].value) {
            best[k].value = v;
            best[k].argmin = s;
            seen[k] = true;
        }
    });
    ClassicalMinimum out = best[0];
    out.strategies = 0;
    for (std::size_t k = 0; k < chunks; ++k) {
        out.strategies += best[k].strategies;
        if (best[k].value < out.value) {
            out.value = best[k].value;
            out.argmin = best[k].argmin;
        }
    }
    return out;
}

// Integer matrix acting on (c00, c11, c02, c20, c12, c21).
inline Eigen::Matrix<i64, 6, 6> i_lds_matrix() {
    Eigen::Matrix<i64, 6, 6> m;
    m << 2, -2, 1, 1, -1, -1,
        -2, 2, -1, -1, 1, 1,
        1, -1, 1, 0, 0, -1,
        1, -1, 0, 1, -1, 0,
        -1, 1, 0, -1, 1, 0,
        -1, 1, -1, 0, 0, 1;
    return m;
}

inline Eigen::Matrix<i64, 6, 1> i_lds_vector(const LdsCounts& s) {
    Eigen::Matrix<i64, 6, 1> v;
    v << s(0, 0), s(1, 1), s(0, 2), s(2, 0), s(1, 2), s(2, 1);
    return v;
}

inline i64 i_lds_form(const LdsCounts& s) {
    const auto v = i_lds_vector(s);
    return v.dot(i_lds_matrix() * v);
}

// B_LDS - c^T I c, which should equal 2 (c10 + c01).
inline i64 certificate_remainder(const LdsCounts& s) { return bell_value(lds_to_pipoint(s)) - i_lds_form(s); }

// Uniform random composition of n into 9 parts.
template <class Rng>
LdsCounts random_lds(int n, Rng& rng) {
    // choose 8 bar positions among n + 8 slots
    std::vector<int> slots(static_cast<std::size_t>(n) + 8);
    std::iota(slots.begin(), slots.end(), 0);
    std::vector<int> bars(8);
    std::sample(slots.begin(), slots.end(), bars.begin(), 8, rng);
    LdsCounts s;
    int prev = -1;
    for (std::size_t k = 0; k < 8; ++k) {
        s.c[k] = bars[k] - prev - 1;
        prev = bars[k];
    }
    s.c[8] = static_cast<i64>(n) + 8 - prev - 1;
    return s;
}

struct PsdCertificate {
    bool psd = false;
    double min_eigenvalue = 0.0;
    std::size_t samples = 0;
    bool identity_holds = false;
};

inline PsdCertificate verify_psd_certificate(std::size_t samples = 10000, std::uint64_t seed = 1, int max_n = 20) {
    PsdCertificate out;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(i_lds_matrix().cast<double>(),
                                                                  Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues()(0);
    out.psd = out.min_eigenvalue >= -1e-10;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(1, max_n);
    out.identity_holds = true;
    for (std::size_t k = 0; k < samples; ++k) {
        const LdsCounts s = random_lds(pick_n(rng), rng);
        const i64 rem = certificate_remainder(s);
        if (rem != 2 * (s(1, 0) + s(0, 1)) || rem < 0) out.identity_holds = false;
    }
    out.samples = samples;
    return out;
}

// Exact rank of a set of integer rows by fraction-free elimination.
inline int integer_rank(std::vector<std::array<i64, 5>> rows) {
    int rank = 0;
    const std::size_t m = rows.size();
    for (std::size_t col = 0; col < 5 && static_cast<std::size_t>(rank) < m; ++col) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < m && rows[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
        const auto& p = rows[static_cast<std::size_t>(rank)];
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < m; ++r) {
            if (rows[r][col] == 0) continue;
            const i64 a = p[col], b = rows[r][col];
            i64 g = 0;
            for (std::size_t k = 0; k < 5; ++k) {
                rows[r][k] = a * rows[r][k] - b * p[k];
                g = std::gcd(g, rows[r][k]);
            }
            if (g > 1)
                for (auto& v : rows[r]) v /= g;
        }
        ++rank;
    }
    return rank;
}

inline int affine_rank(const std::vector<PiPoint>& pts) {
    if (pts.empty()) return -1;
    std::vector<std::array<i64, 5>> diffs;
    const auto base = pts.front().as_array();
    for (std::size_t k = 1; k < pts.size(); ++k) {
        auto v = pts[k].as_array();
        for (std::size_t j = 0; j < 5; ++j) v[j] -= base[j];
        diffs.push_back(v);
    }
    return integer_rank(std::move(diffs));
}

struct FacetReport {
    int n = 0;
    std::vector<LdsCounts> saturating;      // every strategy reaching the bound
    std::vector<PiPoint> saturating_points;  // distinct symmetrised points
    int affine_rank = -1;
    bool tight() const { return affine_rank == 4; }
};

inline FacetReport facet_check(int n, const Coeffs& alpha = kBellCoeffs, i64 shift = 0,
                               std::uint64_t budget = kDefaultBudget) {
    check_budget(n, budget);
    std::vector<std::vector<LdsCounts>> found(static_cast<std::size_t>(n) + 1);
    for_each_lds_chunked(n, [&](std::size_t k, const LdsCounts& s) {
        if (bell_value<i64>(lds_to_pipoint(s), alpha, shift) == 0) found[k].push_back(s);
    });
    FacetReport r;
    r.n = n;
    std::set<PiPoint> distinct;
    for (auto& chunk : found)
        for (auto& s : chunk) {
            r.saturating.push_back(s);
            distinct.insert(lds_to_pipoint(s));
        }
    r.saturating_points.assign(distinct.begin(), distinct.end());
    r.affine_rank = affine_rank(r.saturating_points);
    return r;
}

}  // namespace pibell::polytope

#endif
