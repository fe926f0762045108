#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "numeric.hpp"

namespace poset_zeta {

/// RAII handle for an MPFR float with an explicit binary precision.  Binary
/// operations round to the larger precision of their operands.
class Real {
public:
    explicit Real(long precision_bits = 53) { mpfr_init2(v_, precision_bits); mpfr_set_zero(v_, 1); }
    Real(double x, long precision_bits) : Real(precision_bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const Rational& q, long precision_bits) : Real(precision_bits) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(const Integer& z, long precision_bits) : Real(precision_bits) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }

    Real(const Real& o) : Real(o.precision()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept : Real(o.precision()) { mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.precision());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    Real rounded(long precision_bits) const {
        Real r(precision_bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// log2|x| as a double, valid far outside the double exponent range;
    /// -inf for zero.
    double log2_abs() const {
        if (mpfr_zero_p(v_)) return -INFINITY;
        long e = 0;
        const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log2(std::fabs(m)) + static_cast<double>(e);
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Decimal scientific notation with the given number of significant digits.
    std::string to_string(int digits = 20) const {
        if (mpfr_zero_p(v_)) return "0";
        char* raw = nullptr;
        const std::string fmt = "%." + std::to_string(digits - 1) + "Re";
        mpfr_asprintf(&raw, fmt.c_str(), v_);
        std::string s(raw);
        mpfr_free_str(raw);
        return s;
    }

    static Real pi(long precision_bits) {
        Real r(precision_bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    /// x * 2^e
    friend Real ldexp(const Real& x, long e) {
        Real r(x.precision());
        mpfr_mul_2si(r.v_, x.v_, e, MPFR_RNDN);
        return r;
    }

    friend Real operator-(const Real& a) {
        Real r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define POSET_ZETA_REAL_BINOP(op, fn)                                          \
    friend Real operator op(const Real& a, const Real& b) {                    \
        Real r(std::max(a.precision(), b.precision()));                        \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                       \
        return r;                                                              \
    }                                                                          \
    Real& operator op##=(const Real& b) { return *this = *this op b; }
    POSET_ZETA_REAL_BINOP(+, mpfr_add)
    POSET_ZETA_REAL_BINOP(-, mpfr_sub)
    POSET_ZETA_REAL_BINOP(*, mpfr_mul)
    POSET_ZETA_REAL_BINOP(/, mpfr_div)
#undef POSET_ZETA_REAL_BINOP

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return b < a; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return b <= a; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend Real abs(const Real& a) {
        Real r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) {
        Real r(a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) {
        Real r(std::max(a.precision(), b.precision()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend std::pair<Real, Real> sin_cos(const Real& a) {
        Real s(a.precision()), c(a.precision());
        mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN);
        return {std::move(s), std::move(c)};
    }

private:
    mpfr_t v_;
};

struct Complex {
    Real re;
    Real im;

    explicit Complex(long precision_bits = 53) : re(precision_bits), im(precision_bits) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    long precision() const { return re.precision(); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        // Scale by the larger component of b to keep the intermediate products bounded.
        if (abs(b.re) >= abs(b.im)) {
            const Real t = b.im / b.re;
            const Real den = b.re + b.im * t;
            return {(a.re + a.im * t) / den, (a.im - a.re * t) / den};
        }
        const Real t = b.re / b.im;
        const Real den = b.re * t + b.im;
        return {(a.re * t + a.im) / den, (a.im * t - a.re) / den};
    }
    Complex& operator+=(const Complex& b) { return *this = *this + b; }
    Complex& operator-=(const Complex& b) { return *this = *this - b; }

    friend Real abs(const Complex& a) { return hypot(a.re, a.im); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

} // namespace poset_zeta
