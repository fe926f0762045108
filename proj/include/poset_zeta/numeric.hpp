#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "error.hpp"

namespace poset_zeta {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// C(n, k) with C(n, k) = 0 for k < 0 or k > n; n is nonnegative here.
inline Integer binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Integer pow_ui(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_ui(const Rational& base, unsigned long e) {
    Rational r(pow_ui(Integer(base.get_num()), e), pow_ui(Integer(base.get_den()), e));
    r.canonicalize();
    return r;
}

inline int sign(const Integer& x) { return sgn(x); }
inline int sign(const Rational& x) { return sgn(x); }

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_exact_string(const Rational& q) { return q.get_str(10); }

inline std::string to_exact_string(const Integer& z) { return z.get_str(); }

/// Accepts "p/q" or a plain integer; the result is canonical.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        fail(ErrorCode::ParseError, "malformed rational '" + s + "'");
    q.canonicalize();
    return q;
}

} // namespace poset_zeta
