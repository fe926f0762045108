#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "polynomial.hpp"
#include "poset.hpp"

namespace poset_zeta {

/// Quotient of integer polynomials in lowest terms.  Normalized so that the
/// numerator and denominator share no rational factor and the lowest nonzero
/// coefficient of the denominator is positive.
class RationalFunction {
public:
    RationalFunction(ExactPolynomial numerator, ExactPolynomial denominator) {
        if (denominator.is_zero()) fail(ErrorCode::InvalidConfig, "rational function with zero denominator");
        const ExactPolynomial g = gcd(numerator, denominator);
        num_ = numerator.divmod(g).first;
        den_ = denominator.divmod(g).first;
        normalize();
    }

    const ExactPolynomial& numerator() const { return num_; }
    const ExactPolynomial& denominator() const { return den_; }

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

private:
    void normalize() {
        // Clear denominators, then divide out the common content.
        Integer lcm_den = 1;
        for (const auto* p : {&num_, &den_})
            for (const auto& c : p->coefficients()) lcm_den = lcm(lcm_den, Integer(c.get_den()));
        Integer content = 0;
        for (const auto* p : {&num_, &den_})
            for (const auto& c : p->coefficients()) content = gcd(content, Integer(c * lcm_den));
        Rational scale(lcm_den, content);
        scale.canonicalize();
        const auto& dc = den_.coefficients();
        for (const auto& c : dc)
            if (c != 0) {
                if (c < 0) scale = -scale;
                break;
            }
        num_ = scale * num_;
        den_ = scale * den_;
    }

    ExactPolynomial num_;
    ExactPolynomial den_;
};

/// Entry (i, j) is 1 iff element i <= element j.
inline ExactMatrix adjacency_matrix(const Poset& p) {
    require_nonempty(p);
    ExactMatrix a(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        a.at(static_cast<long>(i), static_cast<long>(i)) = 1;
        for (std::size_t j : p.above(i)) a.at(static_cast<long>(i), static_cast<long>(j)) = 1;
    }
    return a;
}

/// Fraction-free (Bareiss) elimination over Q[s]; every division is exact.
inline ExactPolynomial determinant(std::vector<std::vector<ExactPolynomial>> m) {
    const std::size_t n = m.size();
    if (n == 0) return ExactPolynomial::constant(1);
    ExactPolynomial prev = ExactPolynomial::constant(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return {};
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                auto [q, rem] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divmod(prev);
                if (!rem.is_zero()) fail(ErrorCode::InvalidConfig, "inexact Bareiss division");
                m[i][j] = std::move(q);
            }
            m[i][k] = ExactPolynomial{};
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// I - A s as a matrix of polynomials, optionally plus the all-ones matrix.
inline std::vector<std::vector<ExactPolynomial>> resolvent_matrix(const ExactMatrix& a, bool plus_ones) {
    const std::size_t n = a.rows();
    std::vector<std::vector<ExactPolynomial>> m(n, std::vector<ExactPolynomial>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational c0 = (i == j ? 1 : 0) + (plus_ones ? 1 : 0);
            m[i][j] = ExactPolynomial{c0, -a.at(static_cast<long>(i), static_cast<long>(j))};
        }
    return m;
}

/// Z_P(s) = sum(adj(I - A s)) / det(I - A s), reduced.  The adjugate sum is
/// obtained from the determinant lemma: det(M + 1 1^t) = det M + 1^t adj(M) 1.
inline RationalFunction zeta_rational(const Poset& p) {
    const ExactMatrix a = adjacency_matrix(p);
    const ExactPolynomial det = determinant(resolvent_matrix(a, false));
    const ExactPolynomial adj_sum = determinant(resolvent_matrix(a, true)) - det;
    return RationalFunction(adj_sum, det);
}

/// First K+1 Taylor coefficients at s = 0.
inline std::vector<Rational> series_expand(const RationalFunction& f, std::size_t K) {
    const ExactPolynomial& den = f.denominator();
    const Rational d0 = den.coefficient(0);
    if (d0 == 0) fail(ErrorCode::PoleAtOrigin, "denominator vanishes at s = 0");
    std::vector<Rational> out(K + 1);
    for (std::size_t m = 0; m <= K; ++m) {
        Rational acc = f.numerator().coefficient(static_cast<long>(m));
        for (long j = 1; j <= den.degree() && static_cast<std::size_t>(j) <= m; ++j)
            acc -= den.coefficient(j) * out[m - static_cast<std::size_t>(j)];
        out[m] = acc / d0;
    }
    return out;
}

/// g(s) = sum_i N̄_i s^i (1 - s)^(d - i)
inline ExactPolynomial g_polynomial(const ChainVector& v) {
    const long d = v.dimension();
    ExactPolynomial g;
    for (long i = 0; i <= d; ++i)
        g += ExactPolynomial::monomial(Rational(v.counts[static_cast<std::size_t>(i)]), static_cast<std::size_t>(i)) *
             ExactPolynomial::binomial_power(1, -1, static_cast<std::size_t>(d - i));
    return g;
}

inline ExactPolynomial g_polynomial(const Poset& p) { return g_polynomial(strict_chain_vector(p)); }

/// -(coefficient of 1/s) in the Laurent expansion at infinity.
inline Rational residue_at_infinity(const RationalFunction& f) {
    const long dn = f.numerator().degree();
    const long dd = f.denominator().degree();
    if (dn < 0) return 0;
    if (dn > dd + 1)
        fail(ErrorCode::DivergentAtInfinity, "numerator degree exceeds denominator degree + 1");
    // With t = 1/s: f = t^(dd - dn) * Nrev(t) / Drev(t), Drev(0) != 0.
    const long shift = dd - dn;
    const long wanted = 1 - shift;
    if (wanted < 0) return 0;
    const RationalFunction in_t(f.numerator().reversed(static_cast<std::size_t>(dn)),
                                f.denominator().reversed(static_cast<std::size_t>(dd)));
    const auto series = series_expand(in_t, static_cast<std::size_t>(wanted));
    return -series[static_cast<std::size_t>(wanted)];
}

} // namespace poset_zeta
