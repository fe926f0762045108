#pragma once

#include <algorithm>
#include <cstddef>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "polynomial.hpp"
#include "poset.hpp"

namespace poset_zeta {

namespace detail {

/// Process-wide triangles of f_{i,d} and F_{i,d}.  They only ever grow, and
/// a column is published complete, so concurrent readers see the same values
/// a single-threaded fill would produce.
class SubdivisionTables {
public:
    static SubdivisionTables& instance() {
        static SubdivisionTables tables;
        return tables;
    }

    /// f_{i,d} for 0 <= i <= d; the -1 conventions are handled by the caller.
    Integer f(long i, long d) {
        std::lock_guard lock(mutex_);
        extend_f(d);
        return f_[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
    }

    Rational big_f(long i, long d) {
        std::lock_guard lock(mutex_);
        extend_big_f(d);
        return big_f_[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
    }

    long f_columns() {
        std::lock_guard lock(mutex_);
        return static_cast<long>(f_.size());
    }

    long big_f_columns() {
        std::lock_guard lock(mutex_);
        return static_cast<long>(big_f_.size());
    }

    /// Seeds complete columns 0..n-1 (e.g. from an on-disk cache).  Columns
    /// already present win; seeding never shrinks the tables.
    void seed_f(std::vector<std::vector<Integer>> columns) {
        std::lock_guard lock(mutex_);
        for (std::size_t d = f_.size(); d < columns.size(); ++d) f_.push_back(std::move(columns[d]));
    }

    void seed_big_f(std::vector<std::vector<Rational>> columns) {
        std::lock_guard lock(mutex_);
        for (std::size_t d = big_f_.size(); d < columns.size(); ++d) big_f_.push_back(std::move(columns[d]));
    }

private:
    // f_{i,d} = sum_{j=i}^{d} C(d+1, j) f_{i-1, j-1}, with f_{-1,-1} = 1.
    Integer f_unlocked(long i, long d) const {
        if (i == -1) return d == -1 ? 1 : 0;
        if (d < 0 || i > d) return 0;
        return f_[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
    }

    void extend_f(long d) {
        while (static_cast<long>(f_.size()) <= d) {
            const long col = static_cast<long>(f_.size());
            std::vector<Integer> column(static_cast<std::size_t>(col + 1));
            for (long i = 0; i <= col; ++i) {
                Integer sum = 0;
                for (long j = i; j <= col; ++j) sum += binomial(col + 1, j) * f_unlocked(i - 1, j - 1);
                column[static_cast<std::size_t>(i)] = sum;
            }
            f_.push_back(std::move(column));
        }
    }

    // F_{i,d} = (sum_{j=i+1}^{d} f_{i,j} F_{j,d}) / ((d+1)! - (i+1)!), F_{d,d} = 1.
    void extend_big_f(long d) {
        extend_f(d);
        while (static_cast<long>(big_f_.size()) <= d) {
            const long col = static_cast<long>(big_f_.size());
            std::vector<Rational> column(static_cast<std::size_t>(col + 1));
            column[static_cast<std::size_t>(col)] = 1;
            const Integer top = factorial(static_cast<unsigned long>(col + 1));
            for (long i = col - 1; i >= 0; --i) {
                Rational sum = 0;
                for (long j = i + 1; j <= col; ++j)
                    sum += Rational(f_unlocked(i, j)) * column[static_cast<std::size_t>(j)];
                sum /= Rational(top - factorial(static_cast<unsigned long>(i + 1)));
                column[static_cast<std::size_t>(i)] = sum;
            }
            big_f_.push_back(std::move(column));
        }
    }

    std::mutex mutex_;
    std::vector<std::vector<Integer>> f_;
    std::vector<std::vector<Rational>> big_f_;
};

inline void require_matrix_dimension(long d) {
    if (d < 0) fail(ErrorCode::IndexOutOfRange, "dimension must be nonnegative, got " + std::to_string(d));
}

} // namespace detail

/// Number of length-i chains of Sd(P) whose top is a fixed d-chain of P.
/// Total on i, d >= -1 with f_{-1,-1} = 1 and f_{-1,d} = 0 for d >= 0.
inline Integer f_number(long i, long d) {
    if (i < -1 || d < -1) fail(ErrorCode::IndexOutOfRange, "f_number needs i, d >= -1");
    if (i == -1) return d == -1 ? 1 : 0;
    if (d == -1 || i > d) return 0;
    return detail::SubdivisionTables::instance().f(i, d);
}

/// F_{i,d} for -1 <= i <= d (F_{-1,d} = 0, F_{d,d} = 1).
inline Rational big_F_number(long i, long d) {
    if (d < 0 || i < -1 || i > d)
        fail(ErrorCode::IndexOutOfRange,
             "F_{" + std::to_string(i) + "," + std::to_string(d) + "} is outside -1 <= i <= d");
    if (i == -1) return 0;
    return detail::SubdivisionTables::instance().big_f(i, d);
}

/// (F_{-1,d}, ..., F_{d,d})
inline std::vector<Rational> F_vector(long d) {
    detail::require_matrix_dimension(d);
    std::vector<Rational> v;
    for (long i = -1; i <= d; ++i) v.push_back(big_F_number(i, d));
    return v;
}

/// F_d(s) = sum_{i=-1}^{d} F_{i,d} s^(d-i)
inline ExactPolynomial F_polynomial(long d) {
    detail::require_matrix_dimension(d);
    std::vector<Rational> c(static_cast<std::size_t>(d + 2));
    for (long i = -1; i <= d; ++i) c[static_cast<std::size_t>(d - i)] = big_F_number(i, d);
    return ExactPolynomial(std::move(c));
}

/// (H_{0,d}, ..., H_{d+1,d}) with F_d(s - 1) = sum_i H_{i,d} s^i.
inline std::vector<Rational> H_vector(long d) {
    const ExactPolynomial shifted = F_polynomial(d).shifted(-1);
    std::vector<Rational> h(static_cast<std::size_t>(d + 2));
    for (long i = 0; i <= d + 1; ++i) h[static_cast<std::size_t>(i)] = shifted.coefficient(i);
    return h;
}

inline Rational H_number(long i, long d) {
    if (d < 0 || i < 0 || i > d + 1) fail(ErrorCode::IndexOutOfRange, "H_{i,d} needs 0 <= i <= d+1");
    return H_vector(d)[static_cast<std::size_t>(i)];
}

/// H_d(s) = sum_{i=0}^{d+1} H_{i,d} s^(d-i).  For d >= 1 the s^d and s^-1
/// coefficients vanish, leaving degree d-1 with leading coefficient H_{1,d}.
inline ExactPolynomial H_polynomial(long d) {
    const auto h = H_vector(d);
    // H_{d+1,d} multiplies s^-1; it is zero for every d.
    std::vector<Rational> c(static_cast<std::size_t>(d + 1));
    for (long i = 0; i <= d; ++i) c[static_cast<std::size_t>(d - i)] = h[static_cast<std::size_t>(i)];
    return ExactPolynomial(std::move(c));
}

enum class DescentMethod { recurrence, brute_force };

inline constexpr long kMaxBruteForceDescentDimension = 8;

/// H_d = (h_{i,j})_{-1 <= i,j <= d} with h_{i,j} = A(d+2, i+1, j+2), the
/// number of permutations of [d+2] starting at j+2 with i+1 descents.
inline ExactMatrix descent_matrix(long d, DescentMethod method = DescentMethod::recurrence) {
    detail::require_matrix_dimension(d);
    const std::size_t n = static_cast<std::size_t>(d + 2);
    if (method == DescentMethod::brute_force) {
        if (d > kMaxBruteForceDescentDimension)
            fail(ErrorCode::BruteForceTooLarge,
                 "brute-force descent enumeration is limited to d <= " + std::to_string(kMaxBruteForceDescentDimension));
        std::vector<std::vector<long>> count(n, std::vector<long>(n, 0));
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            std::size_t des = 0;
            for (std::size_t k = 0; k + 1 < n; ++k)
                if (perm[k] > perm[k + 1]) ++des;
            // row i = des - 1 -> slot des; column j = perm[0] - 2 -> slot perm[0] - 1
            ++count[des][static_cast<std::size_t>(perm[0] - 1)];
        } while (std::next_permutation(perm.begin(), perm.end()));
        ExactMatrix h(n, n, 1);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                h.at(static_cast<long>(r) - 1, static_cast<long>(c) - 1) = count[r][c];
        return h;
    }

    // h^{(d)}_{i,j} = sum_{l=-1}^{j-1} h^{(d-1)}_{i-1,l} + sum_{l=j}^{d-1} h^{(d-1)}_{i,l},
    // starting from h^{(-1)} = (1).
    ExactMatrix prev(1, 1, 1);
    prev.at(-1, -1) = 1;
    for (long e = 0; e <= d; ++e) {
        ExactMatrix cur(static_cast<std::size_t>(e + 2), static_cast<std::size_t>(e + 2), 1);
        for (long i = -1; i <= e; ++i)
            for (long j = -1; j <= e; ++j) {
                Rational v = 0;
                for (long l = -1; l <= j - 1; ++l) v += prev.get_or_zero(i - 1, l);
                for (long l = j; l <= e - 1; ++l) v += prev.get_or_zero(i, l);
                cur.at(i, j) = v;
            }
        prev = std::move(cur);
    }
    return prev;
}

/// F_d = (f_{i,j})_{-1 <= i,j <= d}, or F'_d = (f_{i,j})_{0 <= i,j <= d}.
inline ExactMatrix f_matrix(long d, bool primed) {
    detail::require_matrix_dimension(d);
    const long lo = primed ? 0 : -1;
    const std::size_t n = static_cast<std::size_t>(d - lo + 1);
    ExactMatrix m(n, n, static_cast<int>(-lo));
    for (long i = lo; i <= d; ++i)
        for (long j = lo; j <= d; ++j) m.at(i, j) = Rational(f_number(i, j));
    return m;
}

/// T_d = ((-1)^(d+1+i+j) C(d-j, i+1)) or its inverse T'_d = (C(j+1, d-i)).
inline ExactMatrix taylor_matrix(long d, bool inverse) {
    detail::require_matrix_dimension(d);
    const std::size_t n = static_cast<std::size_t>(d + 2);
    ExactMatrix t(n, n, 1);
    for (long i = -1; i <= d; ++i)
        for (long j = -1; j <= d; ++j) {
            if (inverse) {
                t.at(i, j) = Rational(binomial(j + 1, d - i));
            } else {
                Integer v = binomial(d - j, i + 1);
                if ((d + 1 + i + j) % 2 != 0) v = -v;
                t.at(i, j) = Rational(v);
            }
        }
    return t;
}

struct SimilarityReport {
    long d = 0;
    bool taylor_inverse = false;    // T_d T'_d = I
    bool similarity = false;        // T_d F_d T'_d = H_d
    bool f_eigenvector = false;     // F_d F = (d+1)! F
    bool h_eigenvector = false;     // H_d H = (d+1)! H
    bool taylor_maps_f_to_h = false;  // T_d F = H

    bool ok() const { return taylor_inverse && similarity && f_eigenvector && h_eigenvector && taylor_maps_f_to_h; }
};

inline SimilarityReport verify_similarity(long d) {
    SimilarityReport r;
    r.d = d;
    const ExactMatrix t = taylor_matrix(d, false);
    const ExactMatrix ti = taylor_matrix(d, true);
    const ExactMatrix f = f_matrix(d, false);
    const ExactMatrix h = descent_matrix(d);
    const std::size_t n = static_cast<std::size_t>(d + 2);
    r.taylor_inverse = (t * ti) == ExactMatrix::identity(n, 1);
    r.similarity = (t * f * ti) == h;

    const Rational lambda(factorial(static_cast<unsigned long>(d + 1)));
    auto scaled = [&](std::vector<Rational> v) {
        for (auto& x : v) x *= lambda;
        return v;
    };
    const auto fv = F_vector(d);
    const auto hv = H_vector(d);
    r.f_eigenvector = f.apply(fv) == scaled(fv);
    r.h_eigenvector = h.apply(hv) == scaled(hv);
    r.taylor_maps_f_to_h = t.apply(fv) == hv;
    return r;
}

/// Applies F'_d k times: the chain vector of Sd^k(P) from that of P.
inline ChainVector transfer_iterate(const ChainVector& start, unsigned long k) {
    if (start.counts.empty()) fail(ErrorCode::EmptyPoset, "empty chain vector");
    const long d = start.dimension();
    std::vector<std::vector<Integer>> fp(static_cast<std::size_t>(d + 1));
    for (long i = 0; i <= d; ++i)
        for (long j = 0; j <= d; ++j) fp[static_cast<std::size_t>(i)].push_back(f_number(i, j));
    ChainVector v = start;
    for (unsigned long step = 0; step < k; ++step) {
        ChainVector next;
        next.counts.assign(v.counts.size(), 0);
        for (long i = 0; i <= d; ++i)
            for (long j = i; j <= d; ++j)
                next.counts[static_cast<std::size_t>(i)] += fp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                                            v.counts[static_cast<std::size_t>(j)];
        v = std::move(next);
    }
    return v;
}

/// Constants C_{j,i} of the decomposition
///   N̄_i^{(k)} = sum_{j=0}^{d-i} C_{j,i} ((d+1-j)!)^k.
struct SpectralConstants {
    long d = 0;
    ExactMatrix C;  // C.at(j, i); zero for j > d - i

    Rational at(long j, long i) const { return C.at(j, i); }

    ChainVector reconstruct(unsigned long k) const {
        ChainVector v;
        for (long i = 0; i <= d; ++i) {
            Rational sum = 0;
            for (long j = 0; j <= d - i; ++j)
                sum += C.at(j, i) * Rational(pow_ui(factorial(static_cast<unsigned long>(d + 1 - j)), k));
            if (sum.get_den() != 1) fail(ErrorCode::InvalidConfig, "non-integral reconstruction");
            v.counts.push_back(sum.get_num());
        }
        return v;
    }
};

/// Exact eigendecomposition of the upper-triangular F'_d, whose eigenvalues
/// 1!, ..., (d+1)! are distinct.
inline SpectralConstants spectral_constants(const ChainVector& v) {
    const long d = v.dimension();
    if (d < 1) fail(ErrorCode::DimensionZero, "spectral constants need dimension >= 1");
    const std::size_t n = static_cast<std::size_t>(d + 1);

    // eig[m] is the eigenvector for (m+1)!, normalized with eig[m][m] = 1.
    std::vector<std::vector<Rational>> eig(n, std::vector<Rational>(n, 0));
    for (long m = 0; m <= d; ++m) {
        auto& e = eig[static_cast<std::size_t>(m)];
        e[static_cast<std::size_t>(m)] = 1;
        const Integer lambda = factorial(static_cast<unsigned long>(m + 1));
        for (long i = m - 1; i >= 0; --i) {
            Rational sum = 0;
            for (long l = i + 1; l <= m; ++l) sum += Rational(f_number(i, l)) * e[static_cast<std::size_t>(l)];
            e[static_cast<std::size_t>(i)] = sum / Rational(lambda - factorial(static_cast<unsigned long>(i + 1)));
        }
    }

    // Solve sum_m c_m eig[m] = N̄ by back substitution (eig is unit upper triangular).
    std::vector<Rational> coeff(n, 0);
    for (long m = d; m >= 0; --m) {
        Rational r(v.counts[static_cast<std::size_t>(m)]);
        for (long l = m + 1; l <= d; ++l) r -= coeff[static_cast<std::size_t>(l)] * eig[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)];
        coeff[static_cast<std::size_t>(m)] = r;
    }

    SpectralConstants sc;
    sc.d = d;
    sc.C = ExactMatrix(n, n);
    for (long j = 0; j <= d; ++j)
        for (long i = 0; i <= d - j; ++i) {
            const std::size_t m = static_cast<std::size_t>(d - j);
            sc.C.at(j, i) = coeff[m] * eig[m][static_cast<std::size_t>(i)];
        }
    return sc;
}

inline SpectralConstants spectral_constants(const Poset& p) { return spectral_constants(strict_chain_vector(p)); }

struct RowPropertiesReport {
    long d = 0;
    bool top_row_powers_of_two = false;
    bool monotone_chain = false;
    bool rotational_symmetry = false;

    bool ok() const { return top_row_powers_of_two && monotone_chain && rotational_symmetry; }
};

/// Row structure of H_d: h_{0,j} = 2^(d-j); the monotone chain
///   h_{0,d} <= ... <= h_{0,-1} <= h_{1,d} <= ... <= h_{R,d} <= ... <= h_{R,N}
/// with R = floor((d-1)/2) and N = -1 (d even) or R (d odd); and
/// h_{i,j} = h_{d-1-i,d-1-j}.
inline RowPropertiesReport h_row_properties(long d) {
    if (d < 1) fail(ErrorCode::IndexOutOfRange, "row properties need d >= 1");
    const ExactMatrix h = descent_matrix(d);
    RowPropertiesReport r;
    r.d = d;

    r.top_row_powers_of_two = true;
    for (long j = 0; j <= d; ++j)
        if (h.at(0, j) != Rational(pow_ui(Integer(2), static_cast<unsigned long>(d - j)))) r.top_row_powers_of_two = false;

    const long last_row = (d - 1) / 2;
    const long stop = d % 2 == 0 ? -1 : last_row;
    std::vector<Rational> chain;
    for (long i = 0; i <= last_row; ++i) {
        const long end = i == last_row ? stop : -1;
        for (long j = d; j >= end; --j) chain.push_back(h.at(i, j));
    }
    r.monotone_chain = std::is_sorted(chain.begin(), chain.end());

    r.rotational_symmetry = true;
    for (long i = -1; i <= d; ++i)
        for (long j = -1; j <= d; ++j)
            if (h.at(i, j) != h.at(d - 1 - i, d - 1 - j)) r.rotational_symmetry = false;
    return r;
}

struct H1BoundsRow {
    long d = 0;
    Rational H1;
    bool lower_bound = false;  // sqrt(2)^d / ((d+1)! d) <= H_{1,d}
    bool upper_bound = false;  // H_{1,d} <= 2^(d+1) / (d+1)!
    bool positive = false;     // H_{i,d} > 0 for 1 <= i <= d
    bool self_reciprocal = false;

    bool ok() const { return lower_bound && upper_bound && positive && self_reciprocal; }
};

/// The irrational lower bound is checked by squaring:
/// 2^d <= (H_{1,d} (d+1)! d)^2.
inline std::vector<H1BoundsRow> H1_bounds_check(long d_max) {
    if (d_max < 1) fail(ErrorCode::IndexOutOfRange, "d_max must be >= 1");
    std::vector<H1BoundsRow> rows;
    for (long d = 1; d <= d_max; ++d) {
        const auto h = H_vector(d);
        const Rational fact(factorial(static_cast<unsigned long>(d + 1)));
        H1BoundsRow row;
        row.d = d;
        row.H1 = h[1];
        const Rational scaled = row.H1 * fact * Rational(d);
        row.lower_bound = Rational(pow_ui(Integer(2), static_cast<unsigned long>(d))) <= scaled * scaled;
        row.upper_bound = row.H1 <= Rational(pow_ui(Integer(2), static_cast<unsigned long>(d + 1))) / fact;
        row.positive = std::all_of(h.begin() + 1, h.begin() + d + 1, [](const Rational& x) { return x > 0; });
        row.self_reciprocal = true;
        for (long i = 0; i <= d + 1; ++i)
            if (h[static_cast<std::size_t>(i)] != h[static_cast<std::size_t>(d + 1 - i)]) row.self_reciprocal = false;
        rows.push_back(row);
    }
    return rows;
}

} // namespace poset_zeta
