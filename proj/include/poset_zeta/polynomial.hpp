#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace poset_zeta {

/// Dense univariate polynomial, coefficient i multiplies s^i.
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and has degree -1.
template <typename Coeff>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }
    explicit Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const Coeff& c) { return Polynomial(std::vector<Coeff>{c}); }

    static Polynomial monomial(const Coeff& c, std::size_t power) {
        std::vector<Coeff> v(power + 1, Coeff(0));
        v[power] = c;
        return Polynomial(std::move(v));
    }

    /// (a + b s)^n
    static Polynomial binomial_power(const Coeff& a, const Coeff& b, std::size_t n) {
        Polynomial base{a, b};
        Polynomial r = constant(Coeff(1));
        for (std::size_t i = 0; i < n; ++i) r = r * base;
        return r;
    }

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    const std::vector<Coeff>& coefficients() const { return coeffs_; }

    Coeff coefficient(long i) const {
        if (i < 0 || i > degree()) return Coeff(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }

    Coeff leading() const { return is_zero() ? Coeff(0) : coeffs_.back(); }

    template <typename X>
    X evaluate(const X& x) const {
        X acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + X(*it);
        return acc;
    }

    Coeff operator()(const Coeff& x) const { return evaluate<Coeff>(x); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Coeff> r(std::max(a.coeffs_.size(), b.coeffs_.size()), Coeff(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator-(const Polynomial& a) {
        std::vector<Coeff> r = a.coeffs_;
        for (auto& c : r) c = -c;
        return Polynomial(std::move(r));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Coeff> r(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(r));
    }

    friend Polynomial operator*(const Coeff& c, const Polynomial& p) {
        std::vector<Coeff> r = p.coeffs_;
        for (auto& x : r) x *= c;
        return Polynomial(std::move(r));
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Quotient and remainder; Coeff must be a field.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        if (divisor.is_zero()) fail(ErrorCode::InvalidConfig, "polynomial division by zero");
        std::vector<Coeff> rem = coeffs_;
        const long dd = divisor.degree();
        if (degree() < dd) return {Polynomial{}, *this};
        std::vector<Coeff> quot(static_cast<std::size_t>(degree() - dd + 1), Coeff(0));
        const Coeff lead = divisor.leading();
        for (long k = degree() - dd; k >= 0; --k) {
            const Coeff q = rem[static_cast<std::size_t>(k + dd)] / lead;
            quot[static_cast<std::size_t>(k)] = q;
            if (q == 0) continue;
            for (long j = 0; j <= dd; ++j)
                rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
        }
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    /// p(s + shift)
    Polynomial shifted(const Coeff& shift) const {
        // Horner in the ring: acc <- acc * (s + shift) + c
        Polynomial acc;
        const Polynomial lin{shift, Coeff(1)};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + constant(*it);
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Coeff> r(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = Coeff(static_cast<long>(i)) * coeffs_[i];
        return Polynomial(std::move(r));
    }

    /// Coefficient vector reversed about degree n: s^n p(1/s).
    Polynomial reversed(std::size_t n) const {
        std::vector<Coeff> r(n + 1, Coeff(0));
        for (std::size_t i = 0; i < coeffs_.size() && i <= n; ++i) r[n - i] = coeffs_[i];
        return Polynomial(std::move(r));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Coeff> coeffs_;
};

using ExactPolynomial = Polynomial<Rational>;

/// Monic gcd over the rationals.
inline ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return Rational(1) / a.leading() * a;
}

inline ExactPolynomial to_exact(const Polynomial<Integer>& p) {
    std::vector<Rational> v;
    v.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) v.emplace_back(c);
    return ExactPolynomial(std::move(v));
}

inline bool has_integer_coefficients(const ExactPolynomial& p) {
    return std::all_of(p.coefficients().begin(), p.coefficients().end(),
                       [](const Rational& c) { return c.get_den() == 1; });
}

/// Exact coefficient list, lowest degree first: "[c0, c1, ...]".
inline std::string to_coefficient_string(const ExactPolynomial& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
        if (i) out += ", ";
        out += to_exact_string(p.coefficients()[i]);
    }
    if (p.is_zero()) out += "0";
    return out + "]";
}

} // namespace poset_zeta
