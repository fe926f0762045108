#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "real.hpp"
#include "sd_combinatorics.hpp"
#include "zeta_series.hpp"

namespace poset_zeta {

inline constexpr long kDefaultPrecisionBits = 256;
inline constexpr int kMaxAberthSweeps = 1000;

/// Roots of a real polynomial, sorted by (re, im).  residuals[i] is the
/// relative backward error |p(z)| / sum_k |a_k| |z|^k of roots[i].
struct RootSet {
    std::vector<Complex> roots;
    std::vector<Real> residuals;
    long precision_bits = kDefaultPrecisionBits;
};

namespace detail {

struct Evaluation {
    Complex value;
    Complex derivative;
    Real magnitude;  // sum_k |a_k| |z|^k
};

inline Evaluation evaluate_with_derivative(const std::vector<Real>& a, const Complex& z, long prec) {
    Evaluation e{Complex(prec), Complex(prec), Real(prec)};
    const Real az = abs(z);
    for (std::size_t k = a.size(); k-- > 0;) {
        e.derivative = e.derivative * z + e.value;
        e.value = e.value * z + Complex(a[k], Real(prec));
        e.magnitude = e.magnitude * az + abs(a[k]);
    }
    return e;
}

inline Real backward_error(const std::vector<Real>& a, const Complex& z, long prec) {
    const Evaluation e = evaluate_with_derivative(a, z, prec);
    if (e.magnitude.is_zero()) return Real(prec);
    return abs(e.value) / e.magnitude;
}

/// Starting points on circles whose radii come from the upper convex hull of
/// (k, log2|a_k|), so roots of very different magnitudes each get a start
/// near the right scale.
inline std::vector<Complex> newton_polygon_starts(const std::vector<Real>& a, long prec) {
    const std::size_t n = a.size() - 1;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k <= n; ++k)
        if (!a[k].is_zero()) pts.emplace_back(static_cast<double>(k), a[k].log2_abs());
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& b = hull.back();
            const double cross = (b.first - o.first) * (p.second - o.second) - (b.second - o.second) * (p.first - o.first);
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    std::vector<Complex> starts;
    const Real two_pi = ldexp(Real::pi(prec), 1);
    const double offset = 0.7;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const auto [i, li] = hull[s];
        const auto [j, lj] = hull[s + 1];
        const auto count = static_cast<std::size_t>(j - i);
        const double log2_radius = (li - lj) / (j - i);
        const double whole = std::floor(log2_radius);
        const Real radius = ldexp(Real(std::exp2(log2_radius - whole), prec), static_cast<long>(whole));
        for (std::size_t m = 0; m < count; ++m) {
            const double frac = static_cast<double>(m) / static_cast<double>(count) + i / static_cast<double>(n);
            const Real angle = two_pi * Real(frac, prec) + Real(offset, prec);
            auto [sn, cs] = sin_cos(angle);
            starts.emplace_back(radius * cs, radius * sn);
        }
    }
    return starts;
}

/// Aberth-Ehrlich simultaneous iteration (Gauss-Seidel updates) on a
/// polynomial with nonzero constant and leading coefficients.
inline std::vector<Complex> aberth(const std::vector<Real>& a, long prec) {
    const std::size_t n = a.size() - 1;
    std::vector<Complex> z = newton_polygon_starts(a, prec);
    std::vector<bool> done(n, false);
    const double slack = 2.0 * std::log2(static_cast<double>(n + 1)) + 4.0;
    const Real noise_floor = ldexp(Real(1.0, prec), -prec + static_cast<long>(std::ceil(slack)));
    const Real step_floor = ldexp(Real(1.0, prec), -prec + 2);
    for (int sweep = 0; sweep < kMaxAberthSweeps; ++sweep) {
        bool all_done = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            const Evaluation e = evaluate_with_derivative(a, z[i], prec);
            if (e.value.is_zero() || abs(e.value) <= noise_floor * e.magnitude) {
                done[i] = true;
                continue;
            }
            all_done = false;
            const Complex ratio = e.value / e.derivative;
            Complex repulsion(prec);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const Complex diff = z[i] - z[j];
                if (!diff.is_zero()) repulsion += Complex(Real(1.0, prec), Real(prec)) / diff;
            }
            const Complex denom = Complex(Real(1.0, prec), Real(prec)) - ratio * repulsion;
            const Complex step = denom.is_zero() ? ratio : ratio / denom;
            z[i] -= step;
            if (abs(step) <= step_floor * abs(z[i])) done[i] = true;
        }
        if (all_done) return z;
    }
    if (std::all_of(done.begin(), done.end(), [](bool b) { return b; })) return z;
    fail(ErrorCode::NoConvergence, "Aberth iteration exceeded " + std::to_string(kMaxAberthSweeps) + " sweeps");
}

inline bool lexicographic_less(const Complex& x, const Complex& y) {
    if (x.re < y.re) return true;
    if (y.re < x.re) return false;
    return x.im < y.im;
}

} // namespace detail

/// All complex roots of p.  The polynomial is divided by its largest
/// coefficient in exact arithmetic before rounding to floating point.
inline RootSet find_roots(const ExactPolynomial& p, long precision_bits = kDefaultPrecisionBits) {
    if (p.degree() < 1) fail(ErrorCode::DegreeZero, "polynomial has no roots (degree < 1)");
    if (precision_bits < 53) fail(ErrorCode::InvalidConfig, "precision_bits must be >= 53");
    const long work = precision_bits + 32;

    Rational scale = 0;
    for (const auto& c : p.coefficients()) scale = std::max(scale, Rational(abs(c)));

    // Exact zero roots first; they need no iteration.
    std::size_t zeros = 0;
    while (p.coefficient(static_cast<long>(zeros)) == 0) ++zeros;
    std::vector<Real> all_coeffs;
    for (const auto& c : p.coefficients()) all_coeffs.emplace_back(Rational(c / scale), work);
    const std::vector<Real> coeffs(all_coeffs.begin() + static_cast<long>(zeros), all_coeffs.end());

    std::vector<Complex> roots(zeros, Complex(work));
    const std::size_t rest = coeffs.size() - 1;
    if (rest == 1) {
        const Rational root = -p.coefficient(static_cast<long>(zeros)) / p.coefficient(static_cast<long>(zeros) + 1);
        roots.emplace_back(Real(root, work), Real(work));
    } else if (rest > 1) {
        for (auto& z : detail::aberth(coeffs, work)) roots.push_back(std::move(z));
    }

    RootSet out;
    out.precision_bits = precision_bits;
    const Real tolerance = ldexp(Real(1.0, work), -precision_bits / 2);
    const Real im_threshold = ldexp(Real(1.0, work), -precision_bits / 2);
    for (auto& z : roots) {
        // Real coefficients: a root whose imaginary part is below the
        // resolution and which still satisfies the residual test is real.
        if (!z.im.is_zero() && abs(z.im) <= im_threshold * std::max(Real(1.0, work), abs(z))) {
            Complex snapped(z.re, Real(work));
            if (detail::backward_error(all_coeffs, snapped, work) <= tolerance) z = std::move(snapped);
        }
        Real r = detail::backward_error(all_coeffs, z, work);
        if (r > tolerance)
            fail(ErrorCode::NoConvergence, "root residual " + r.to_string(6) + " above 2^-" + std::to_string(precision_bits / 2));
        out.roots.emplace_back(z.re.rounded(precision_bits), z.im.rounded(precision_bits));
        out.residuals.push_back(std::move(r));
    }
    std::vector<std::size_t> idx(out.roots.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return detail::lexicographic_less(out.roots[a], out.roots[b]);
    });
    RootSet sorted;
    sorted.precision_bits = precision_bits;
    for (std::size_t i : idx) {
        sorted.roots.push_back(out.roots[i]);
        sorted.residuals.push_back(out.residuals[i]);
    }
    return sorted;
}

inline void require_positive_dimension(const ChainVector& v) {
    if (v.dimension() < 1) fail(ErrorCode::DimensionZero, "dimension must be >= 1");
}

/// g_{P^{(k)}}(s) from the chain vector of P via the transfer matrix.
inline ExactPolynomial g_k_polynomial(const ChainVector& v, unsigned long k) {
    require_positive_dimension(v);
    return g_polynomial(transfer_iterate(v, k));
}

inline ExactPolynomial g_k_polynomial(const Poset& p, unsigned long k) {
    return g_k_polynomial(strict_chain_vector(p), k);
}

/// Largest k with ((d+1)!)^k < 2^200.
inline unsigned long default_k_max(long d) {
    const Integer base = factorial(static_cast<unsigned long>(d + 1));
    const Integer limit = pow_ui(Integer(2), 200);
    unsigned long k = 0;
    Integer acc = base;
    while (acc < limit) {
        ++k;
        acc *= base;
    }
    return k;
}

struct TheoremConfig {
    unsigned long k_min = 0;
    std::optional<unsigned long> k_max;  // default_k_max(d) when unset
    long precision_bits = kDefaultPrecisionBits;
    double es_tolerance = 1e-2;
    double product_tolerance = 1e-3;
    double match_tolerance = 1e-3;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct TrajectoryRecord {
    unsigned long k = 0;
    ExactPolynomial g;
    Complex beta1;
    Real abs_beta1;
    bool beta1_real = false;
    Real es_ratio;
    std::vector<Complex> other_roots;     // other_roots[t] is matched to target t
    std::vector<double> match_distances;  // |other_roots[t] - target t|
    Complex product_of_others;
    double max_match_distance = 0;
    double product_distance = 0;  // |product - (-1)^(d-1)|
};

struct TargetRoot {
    Complex root;
    int multiplicity = 1;
};

struct TrajectoryReport {
    long d = 0;
    Integer chi;
    Integer top_chains;  // N̄_d(P)
    Rational H1;
    long precision_bits = kDefaultPrecisionBits;
    std::vector<Complex> h_roots;   // roots of H_d, the limits of the bounded zeros
    std::vector<TargetRoot> h_root_clusters;
    std::vector<TrajectoryRecord> records;

    std::optional<unsigned long> k0;           // beta1 real and |beta1| increasing from here on
    std::optional<unsigned long> es_burn_in;   // |ES - 1| non-increasing from here on
    std::optional<unsigned long> product_burn_in;  // product distance non-increasing from here on
    bool es_converged = false;
    bool product_converged = false;
    bool match_converged = false;
    TheoremConfig config;
};

namespace detail {

/// Minimum total-distance perfect matching between equally sized root lists
/// (bitmask dynamic programming; sizes here are at most a dozen).
inline std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    if (n == 0) return {};
    if (n > 20) fail(ErrorCode::InvalidConfig, "assignment too large");
    const std::size_t full = std::size_t{1} << n;
    std::vector<double> best(full, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> choice(full, 0);
    best[0] = 0;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (!std::isfinite(best[mask])) continue;
        const auto t = static_cast<std::size_t>(std::popcount(mask));  // next target
        if (t >= n) continue;
        for (std::size_t r = 0; r < n; ++r) {
            if (mask >> r & 1u) continue;
            const std::size_t next = mask | (std::size_t{1} << r);
            const double c = best[mask] + cost[r][t];
            if (c < best[next]) {
                best[next] = c;
                choice[next] = r;
            }
        }
    }
    // assignment[t] = root matched to target t
    std::vector<std::size_t> assignment(n);
    std::size_t mask = full - 1;
    for (std::size_t t = n; t-- > 0;) {
        assignment[t] = choice[mask];
        mask &= ~(std::size_t{1} << choice[mask]);
    }
    return assignment;
}

inline bool is_real(const Complex& z, long precision_bits) {
    const Real scale = std::max(Real(1.0, precision_bits), abs(z));
    return abs(z.im) <= ldexp(scale, -precision_bits / 2);
}

/// Index of the maximum-modulus root; near-ties prefer a real root, then
/// the lexicographically smallest (re, im).
inline std::size_t max_modulus_index(const std::vector<Complex>& roots, long precision_bits) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i) {
        const Real a = abs(roots[i]);
        const Real b = abs(roots[best]);
        const Real tol = ldexp(std::max(a, b), -precision_bits / 2);
        if (a > b + tol) {
            best = i;
        } else if (abs(a - b) <= tol) {
            const bool ri = is_real(roots[i], precision_bits);
            const bool rb = is_real(roots[best], precision_bits);
            if ((ri && !rb) || (ri == rb && lexicographic_less(roots[i], roots[best]))) best = i;
        }
    }
    return best;
}

inline double distance(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    pool.clear();
    if (error) std::rethrow_exception(error);
}

} // namespace detail

/// Tracks the zeros of g_{P^{(k)}} for k_min <= k <= k_max: the diverging
/// maximum-modulus zero beta1, its growth ratio against
/// ((d+1)!)^k H_{1,d} N̄_d / chi, and the remaining zeros against the roots
/// of H_d.
inline TrajectoryReport theorem_report(const ChainVector& start, TheoremConfig config = {}) {
    require_positive_dimension(start);
    const long d = start.dimension();
    const Integer chi = euler_characteristic(start);
    if (chi == 0) fail(ErrorCode::ZeroEulerCharacteristic, "Euler characteristic is zero");
    const long bits = config.precision_bits;
    const unsigned long k_max = config.k_max.value_or(default_k_max(d));
    if (k_max < config.k_min) fail(ErrorCode::InvalidConfig, "k_max < k_min");

    TrajectoryReport report;
    report.d = d;
    report.chi = chi;
    report.top_chains = start.counts.back();
    report.H1 = H_number(1, d);
    report.precision_bits = bits;
    report.config = config;
    report.config.k_max = k_max;

    if (d >= 2) {
        report.h_roots = find_roots(H_polynomial(d), bits).roots;
        const Real radius = ldexp(Real(1.0, bits), -bits / 8);
        for (const auto& r : report.h_roots) {
            auto it = std::find_if(report.h_root_clusters.begin(), report.h_root_clusters.end(),
                                   [&](const TargetRoot& c) { return abs(c.root - r) <= radius; });
            if (it == report.h_root_clusters.end()) report.h_root_clusters.push_back({r, 1});
            else ++it->multiplicity;
        }
    }

    const std::size_t count = k_max - config.k_min + 1;
    std::vector<ChainVector> vectors;
    ChainVector v = transfer_iterate(start, config.k_min);
    for (std::size_t idx = 0; idx < count; ++idx) {
        vectors.push_back(v);
        if (idx + 1 < count) v = transfer_iterate(v, 1);
    }

    const Rational growth_base(factorial(static_cast<unsigned long>(d + 1)));
    const Rational es_denominator_unit = report.H1 * Rational(report.top_chains) / Rational(abs(chi));
    const Complex product_target(Real(d % 2 == 1 ? 1.0 : -1.0, bits), Real(bits));

    report.records.resize(count);
    detail::parallel_for(count, config.threads, [&](std::size_t idx) {
        TrajectoryRecord rec;
        rec.k = config.k_min + idx;
        rec.g = g_polynomial(vectors[idx]);
        RootSet rs = find_roots(rec.g, bits);
        const std::size_t top = detail::max_modulus_index(rs.roots, bits);
        rec.beta1 = rs.roots[top];
        rec.abs_beta1 = abs(rec.beta1);
        rec.beta1_real = detail::is_real(rec.beta1, bits);
        const Rational expected = pow_ui(growth_base, rec.k) * es_denominator_unit;
        rec.es_ratio = rec.abs_beta1 / Real(expected, bits);

        std::vector<Complex> others;
        for (std::size_t i = 0; i < rs.roots.size(); ++i)
            if (i != top) others.push_back(rs.roots[i]);
        rec.product_of_others = Complex(Real(1.0, bits), Real(bits));
        for (const auto& z : others) rec.product_of_others = rec.product_of_others * z;
        rec.product_distance = detail::distance(rec.product_of_others, product_target);

        if (others.size() == report.h_roots.size()) {
            std::vector<std::vector<double>> cost(others.size(), std::vector<double>(others.size()));
            for (std::size_t r = 0; r < others.size(); ++r)
                for (std::size_t t = 0; t < others.size(); ++t) cost[r][t] = detail::distance(others[r], report.h_roots[t]);
            for (std::size_t r : detail::min_cost_assignment(cost)) rec.other_roots.push_back(others[r]);
            for (std::size_t t = 0; t < rec.other_roots.size(); ++t) {
                rec.match_distances.push_back(detail::distance(rec.other_roots[t], report.h_roots[t]));
                rec.max_match_distance = std::max(rec.max_match_distance, rec.match_distances.back());
            }
        } else {
            // Degree dropped (cannot happen with chi != 0); report unmatched.
            rec.other_roots = std::move(others);
            rec.max_match_distance = std::numeric_limits<double>::infinity();
        }
        report.records[idx] = std::move(rec);
    });

    const auto& recs = report.records;
    // Burn-in indices: the earliest start of a suffix on which the property holds.
    auto suffix_start = [&](auto&& holds_at) -> std::optional<unsigned long> {
        std::optional<unsigned long> start_k;
        for (std::size_t i = recs.size(); i-- > 0;) {
            if (!holds_at(i)) break;
            start_k = recs[i].k;
        }
        return start_k;
    };
    report.k0 = suffix_start([&](std::size_t i) {
        return recs[i].beta1_real && (i + 1 == recs.size() || recs[i + 1].abs_beta1 > recs[i].abs_beta1);
    });
    auto es_gap = [&](std::size_t i) { return std::fabs(recs[i].es_ratio.to_double() - 1.0); };
    report.es_burn_in = suffix_start([&](std::size_t i) { return i + 1 == recs.size() || es_gap(i + 1) <= es_gap(i); });
    report.product_burn_in = suffix_start(
        [&](std::size_t i) { return i + 1 == recs.size() || recs[i + 1].product_distance <= recs[i].product_distance; });

    const auto& last = recs.back();
    report.es_converged = es_gap(recs.size() - 1) <= config.es_tolerance;
    report.product_converged = last.product_distance <= config.product_tolerance;
    report.match_converged = last.max_match_distance <= config.match_tolerance;
    return report;
}

inline TrajectoryReport theorem_report(const Poset& p, TheoremConfig config = {}) {
    return theorem_report(strict_chain_vector(p), std::move(config));
}

} // namespace poset_zeta
