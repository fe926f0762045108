#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poset.hpp"
#include "sd_combinatorics.hpp"

namespace poset_zeta {

inline constexpr std::int64_t kDefaultSieveCap = 10'000'000;
inline constexpr std::int64_t kDefaultExplicitPosetCap = 5'000;

/// Smallest-prime-factor table with Möbius values and prime-factor counts
/// for 1..n, filled by a linear sieve.
class SquarefreeTable {
public:
    explicit SquarefreeTable(std::int64_t n) : n_(n) {
        const auto size = static_cast<std::size_t>(n + 1);
        spf_.assign(size, 0);
        mu_.assign(size, 0);
        omega_.assign(size, 0);
        if (n >= 1) mu_[1] = 1;
        std::vector<std::uint32_t> primes;
        for (std::size_t i = 2; i < size; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                primes.push_back(static_cast<std::uint32_t>(i));
                mu_[i] = -1;
                omega_[i] = 1;
            }
            for (std::uint32_t p : primes) {
                const std::size_t m = i * p;
                if (p > spf_[i] || m >= size) break;
                spf_[m] = p;
                omega_[m] = static_cast<std::uint8_t>(omega_[i] + 1);
                mu_[m] = (p == spf_[i]) ? 0 : static_cast<std::int8_t>(-mu_[i]);
            }
        }
    }

    std::int64_t n() const { return n_; }

    bool is_squarefree(std::int64_t k) const { return k >= 1 && mu_[static_cast<std::size_t>(k)] != 0; }
    int mobius(std::int64_t k) const { return mu_[static_cast<std::size_t>(k)]; }

    /// Number of prime factors with multiplicity (the weight).
    int weight(std::int64_t k) const { return omega_[static_cast<std::size_t>(k)]; }

    std::vector<std::int64_t> prime_factors(std::int64_t k) const {
        std::vector<std::int64_t> out;
        while (k > 1) {
            const std::int64_t p = spf_[static_cast<std::size_t>(k)];
            if (out.empty() || out.back() != p) out.push_back(p);
            k /= p;
        }
        return out;
    }

    /// Squarefree integers 2 <= k <= limit (limit defaults to n).
    std::vector<std::int64_t> squarefree_values(std::optional<std::int64_t> limit = std::nullopt) const {
        std::vector<std::int64_t> out;
        const std::int64_t top = limit.value_or(n_);
        for (std::int64_t k = 2; k <= top; ++k)
            if (is_squarefree(k)) out.push_back(k);
        return out;
    }

    /// Divisors d of squarefree k with 2 <= d < k.
    std::vector<std::int64_t> proper_divisors(std::int64_t k) const {
        const auto primes = prime_factors(k);
        std::vector<std::int64_t> out;
        const std::size_t full = (std::size_t{1} << primes.size()) - 1;
        for (std::size_t mask = 1; mask < full; ++mask) {
            std::int64_t d = 1;
            for (std::size_t b = 0; b < primes.size(); ++b)
                if (mask >> b & 1u) d *= primes[b];
            out.push_back(d);
        }
        return out;
    }

private:
    std::int64_t n_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint8_t> omega_;
};

inline SquarefreeTable squarefree_sieve(std::int64_t n, std::int64_t cap = kDefaultSieveCap) {
    if (n < 1) fail(ErrorCode::InvalidConfig, "sieve bound must be >= 1");
    if (n > cap) fail(ErrorCode::RangeTooLarge, "sieve bound " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    return SquarefreeTable(n);
}

/// Squarefree 2..n ordered by divisibility.
inline Poset build_Pn(const SquarefreeTable& table, std::int64_t n, std::int64_t cap = kDefaultExplicitPosetCap) {
    if (n < 2) fail(ErrorCode::InvalidConfig, "P_n needs n >= 2");
    if (n > cap) fail(ErrorCode::RangeTooLarge, "explicit P_n is limited to n <= " + std::to_string(cap));
    if (n > table.n()) fail(ErrorCode::InvalidConfig, "sieve table too small for n");
    const auto values = table.squarefree_values(n);
    std::vector<std::size_t> index(static_cast<std::size_t>(n + 1), 0);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < values.size(); ++i) {
        index[static_cast<std::size_t>(values[i])] = i;
        labels.push_back(std::to_string(values[i]));
    }
    // Divisibility is transitive, so listing every proper divisor already
    // gives the closed relation.
    detail::BitMatrix less(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::int64_t a : table.proper_divisors(values[i])) less.set(index[static_cast<std::size_t>(a)], i);
    return Poset::from_closed_relation(std::move(labels), std::move(less));
}

inline Poset build_Pn(std::int64_t n, std::int64_t cap = kDefaultExplicitPosetCap) {
    if (n < 2) fail(ErrorCode::InvalidConfig, "P_n needs n >= 2");
    if (n > cap) fail(ErrorCode::RangeTooLarge, "explicit P_n is limited to n <= " + std::to_string(cap));
    return build_Pn(squarefree_sieve(n), n, cap);
}

/// M(n) = sum_{m <= n} mu(m)
inline std::int64_t mertens(const SquarefreeTable& table, std::int64_t n) {
    if (n > table.n()) fail(ErrorCode::InvalidConfig, "sieve table too small for n");
    std::int64_t sum = 0;
    for (std::int64_t m = 1; m <= n; ++m) sum += table.mobius(m);
    return sum;
}

inline std::int64_t mertens(std::int64_t n) {
    if (n < 1) return 0;
    return mertens(squarefree_sieve(n), n);
}

enum class ChiMethod { sieve, poset };

/// chi(P_n) = sum over squarefree 2 <= k <= n of (-1)^(weight(k) - 1).
inline std::int64_t chi_Pn(const SquarefreeTable& table, std::int64_t n, ChiMethod method = ChiMethod::sieve,
                           std::int64_t poset_cap = kDefaultExplicitPosetCap) {
    if (n < 2) fail(ErrorCode::InvalidConfig, "P_n needs n >= 2");
    if (method == ChiMethod::poset) return euler_characteristic(build_Pn(table, n, poset_cap)).get_si();
    if (n > table.n()) fail(ErrorCode::InvalidConfig, "sieve table too small for n");
    std::int64_t chi = 0;
    for (std::int64_t k = 2; k <= n; ++k)
        if (table.is_squarefree(k)) chi += table.weight(k) % 2 == 1 ? 1 : -1;
    return chi;
}

inline std::int64_t chi_Pn(std::int64_t n, ChiMethod method = ChiMethod::sieve) {
    if (n < 2) fail(ErrorCode::InvalidConfig, "P_n needs n >= 2");
    return chi_Pn(squarefree_sieve(n), n, method);
}

/// Largest d with p_1 p_2 ... p_{d+1} <= n (primorial brackets).
inline long dim_Pn(std::int64_t n) {
    if (n < 2) fail(ErrorCode::InvalidConfig, "P_n needs n >= 2");
    Integer primorial = 1;
    long d = -1;
    for (std::int64_t p = 2;; ++p) {
        bool prime = true;
        for (std::int64_t q = 2; q * q <= p; ++q)
            if (p % q == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        primorial *= p;
        if (primorial > n) return d;
        ++d;
    }
}

/// pi_d(x): squarefree m <= x with exactly d prime factors.
inline std::int64_t pi_weight(const SquarefreeTable& table, int d, std::int64_t x) {
    if (x > table.n()) fail(ErrorCode::InvalidConfig, "sieve table too small for x");
    std::int64_t count = 0;
    for (std::int64_t m = 2; m <= x; ++m)
        if (table.is_squarefree(m) && table.weight(m) == d) ++count;
    return count;
}

inline std::int64_t pi_weight(int d, std::int64_t x, std::int64_t cap = kDefaultSieveCap) {
    if (d < 1) fail(ErrorCode::InvalidConfig, "weight must be >= 1");
    if (x < 2) return 0;
    return pi_weight(squarefree_sieve(x, cap), d, x);
}

/// N̄_{d}(P_n) for d = dim P_n.  Level-by-level DP over the divisibility DAG;
/// an element at level L of a chain has weight >= L + 1, which prunes
/// every lower-weight element from the higher levels.
inline Integer top_chain_count(const SquarefreeTable& table, std::int64_t n, long d) {
    if (n > table.n()) fail(ErrorCode::InvalidConfig, "sieve table too small for n");
    const auto values = table.squarefree_values(n);
    std::vector<std::uint64_t> level(static_cast<std::size_t>(n + 1), 0);
    for (std::int64_t m : values) level[static_cast<std::size_t>(m)] = 1;
    for (long L = 1; L <= d; ++L) {
        std::vector<std::uint64_t> next(level.size(), 0);
        for (std::int64_t m : values) {
            if (table.weight(m) < L + 1) continue;
            std::uint64_t sum = 0;
            for (std::int64_t a : table.proper_divisors(m))
                if (table.weight(a) >= L) sum += level[static_cast<std::size_t>(a)];
            next[static_cast<std::size_t>(m)] = sum;
        }
        level = std::move(next);
    }
    Integer total = 0;
    for (std::int64_t m : values) total += Integer(static_cast<unsigned long>(level[static_cast<std::size_t>(m)]));
    return total;
}

struct AlphaRecord {
    std::int64_t n = 0;
    long d = 0;
    std::int64_t chi = 0;
    std::int64_t mertens = 0;
    Integer top_chains;
    Rational H1;
    std::optional<Rational> alpha;  // undefined when chi = 0
};

/// alpha_n = H_{1,d_n} N̄_{d_n}(P_n) / chi(P_n)
inline AlphaRecord alpha_record(const SquarefreeTable& table, std::int64_t n) {
    if (n < 6) fail(ErrorCode::InvalidConfig, "alpha_n needs n >= 6 (dim P_n >= 1)");
    AlphaRecord r;
    r.n = n;
    r.d = dim_Pn(n);
    r.chi = chi_Pn(table, n);
    r.mertens = mertens(table, n);
    r.top_chains = top_chain_count(table, n, r.d);
    r.H1 = H_number(1, r.d);
    if (r.chi != 0) r.alpha = r.H1 * Rational(r.top_chains) / Rational(Integer(static_cast<long>(r.chi)));
    return r;
}

inline AlphaRecord alpha_record(std::int64_t n) {
    if (n < 6) fail(ErrorCode::InvalidConfig, "alpha_n needs n >= 6 (dim P_n >= 1)");
    return alpha_record(squarefree_sieve(n), n);
}

struct DimensionRow {
    std::int64_t n = 0;
    long d = 0;
    double log_ratio = 0;  // log n / log log n
    double ratio = 0;      // d / (log n / log log n)
    bool in_band = false;
};

/// Compares d_n with log n / log log n; the asymptotic O-constant is not
/// quantified, so only membership in [band_lo, band_hi] is reported.
inline std::vector<DimensionRow> dim_asymptotic_report(const std::vector<std::int64_t>& ns, double band_lo = 0.3,
                                                       double band_hi = 3.0) {
    std::vector<DimensionRow> rows;
    for (std::int64_t n : ns) {
        if (n < 16) fail(ErrorCode::InvalidConfig, "dim report needs n >= 16 so that log log n > 1");
        DimensionRow r;
        r.n = n;
        r.d = dim_Pn(n);
        const double ln = std::log(static_cast<double>(n));
        r.log_ratio = ln / std::log(ln);
        r.ratio = static_cast<double>(r.d) / r.log_ratio;
        r.in_band = r.ratio >= band_lo && r.ratio <= band_hi;
        rows.push_back(r);
    }
    return rows;
}

} // namespace poset_zeta
