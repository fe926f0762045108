#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "poset_zeta/render.hpp"
#include "poset_zeta/root_dynamics.hpp"

using namespace poset_zeta;

namespace {

double dist(const Complex& a, double re, double im) {
    return std::hypot(a.re.to_double() - re, a.im.to_double() - im);
}

ExactPolynomial from_roots(const std::vector<long>& roots) {
    ExactPolynomial p({1});
    for (long r : roots) p = p * ExactPolynomial({Rational(-r), 1});
    return p;
}

} // namespace

TEST(RootDynamics, LinearRootIsExact) {
    const RootSet rs = find_roots(ExactPolynomial({2, -1}), 256);
    ASSERT_EQ(rs.roots.size(), 1u);
    EXPECT_TRUE(rs.roots[0].re == Real(2.0, 256));
    EXPECT_TRUE(rs.roots[0].im.is_zero());
    EXPECT_EQ(rs.precision_bits, 256);
}

TEST(RootDynamics, IntegerRootsSorted) {
    const RootSet rs = find_roots(from_roots({3, -7, 1, 12, -2}), 200);
    const std::vector<double> expected{-7, -2, 1, 3, 12};
    ASSERT_EQ(rs.roots.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_LT(dist(rs.roots[i], expected[i], 0), 1e-40);
        EXPECT_TRUE(rs.roots[i].im.is_zero());
    }
}

TEST(RootDynamics, ConjugatePairs) {
    const RootSet rs = find_roots(ExactPolynomial({1, 0, 1}), 128);
    ASSERT_EQ(rs.roots.size(), 2u);
    // real parts are only zero to working precision, so the pair order is not pinned
    const double lo = std::min(rs.roots[0].im.to_double(), rs.roots[1].im.to_double());
    for (const auto& z : rs.roots) EXPECT_LT(std::fabs(z.re.to_double()), 1e-30);
    EXPECT_NEAR(lo, -1, 1e-30);
    EXPECT_NEAR(rs.roots[0].im.to_double() + rs.roots[1].im.to_double(), 0, 1e-30);

    std::mt19937_64 rng(oracle::seed());
    std::uniform_int_distribution<long> coeff(-50, 50);
    for (int t = 0; t < 30; ++t) {
        std::vector<Rational> c;
        for (int i = 0; i < 9; ++i) c.emplace_back(coeff(rng));
        if (c.back() == 0) c.back() = 1;
        if (c.front() == 0) c.front() = 3;
        const RootSet r = find_roots(ExactPolynomial(c), 192);
        ASSERT_EQ(r.roots.size(), 8u);
        for (const auto& z : r.roots) {
            const Complex conj(z.re, -z.im);
            double best = 1e300;
            for (const auto& w : r.roots) best = std::min(best, abs(w - conj).to_double());
            EXPECT_LT(best, 1e-40);
        }
    }
}

TEST(RootDynamics, VietaAndResiduals) {
    std::mt19937_64 rng(oracle::seed() + 1);
    std::uniform_int_distribution<long> coeff(-1000, 1000);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> c;
        for (int i = 0; i < 7; ++i) c.emplace_back(coeff(rng));
        c.front() = c.front() == 0 ? 1 : c.front();
        c.back() = c.back() == 0 ? 1 : c.back();
        const ExactPolynomial p(c);
        const RootSet rs = find_roots(p, 256);
        Complex sum(256), prod(Real(1.0, 256), Real(256));
        for (const auto& z : rs.roots) {
            sum += z;
            prod = prod * z;
        }
        const double want_sum = -Rational(c[5] / c[6]).get_d();
        const double want_prod = Rational(c[0] / c[6]).get_d();  // degree 6: (-1)^6 a0/a6
        EXPECT_NEAR(sum.re.to_double(), want_sum, 1e-12 * std::max(1.0, std::fabs(want_sum)));
        EXPECT_NEAR(prod.re.to_double(), want_prod, 1e-12 * std::max(1.0, std::fabs(want_prod)));
        const Real limit = ldexp(Real(1.0, 256), -128);
        for (const auto& r : rs.residuals) EXPECT_TRUE(r <= limit);
    }
}

TEST(RootDynamics, PrecisionRefinementAgrees) {
    const ExactPolynomial p = g_k_polynomial(ChainVector{{7, 12, 6}}, 5);
    const RootSet lo = find_roots(p, 128);
    const RootSet hi = find_roots(p, 512);
    ASSERT_EQ(lo.roots.size(), hi.roots.size());
    for (std::size_t i = 0; i < lo.roots.size(); ++i) EXPECT_LT(abs(lo.roots[i] - hi.roots[i]).log2_abs(), -60);
}

TEST(RootDynamics, ZeroAndRepeatedRoots) {
    const RootSet z = find_roots(ExactPolynomial({0, 0, -1, 1}), 128);  // s^2 (s - 1)
    ASSERT_EQ(z.roots.size(), 3u);
    EXPECT_TRUE(z.roots[0].is_zero());
    EXPECT_TRUE(z.roots[1].is_zero());
    EXPECT_LT(dist(z.roots[2], 1, 0), 1e-30);

    const RootSet d = find_roots(from_roots({-5, -5}), 256);
    for (const auto& r : d.roots) {
        EXPECT_LT(dist(r, -5, 0), 1e-30);
        EXPECT_TRUE(r.im.is_zero());
    }
}

TEST(RootDynamics, ErrorPaths) {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ParseError;
    };
    EXPECT_EQ(code([] { find_roots(ExactPolynomial({5}), 128); }), ErrorCode::DegreeZero);
    EXPECT_EQ(code([] { find_roots(ExactPolynomial({1, 1}), 40); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code([] { theorem_report(ChainVector{{5}}); }), ErrorCode::DimensionZero);
    EXPECT_EQ(code([] { theorem_report(ChainVector{{4, 4}}); }), ErrorCode::ZeroEulerCharacteristic);
}

TEST(RootDynamics, GkMatchesTransfer) {
    const ChainVector v{{7, 12, 6}};
    for (unsigned long k = 0; k <= 4; ++k) EXPECT_EQ(g_k_polynomial(v, k), g_polynomial(transfer_iterate(v, k)));
}

TEST(RootDynamics, DefaultKMax) {
    for (long d = 1; d <= 6; ++d) {
        const unsigned long k = default_k_max(d);
        const Integer f = factorial(static_cast<unsigned long>(d + 1));
        const Integer limit = pow_ui(Integer(2), 200);
        EXPECT_LT(pow_ui(f, k), limit);
        EXPECT_GE(pow_ui(f, k + 1), limit);
    }
}

TEST(RootDynamics, AssignmentMatchesPermutationSearch) {
    std::mt19937_64 rng(oracle::seed() + 2);
    std::uniform_real_distribution<double> u(0, 10);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + t % 6;
        std::vector<std::vector<double>> cost(n, std::vector<double>(n));
        for (auto& row : cost)
            for (auto& c : row) c = u(rng);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = 1e300;
        do {
            double s = 0;
            for (std::size_t tt = 0; tt < n; ++tt) s += cost[perm[tt]][tt];
            best = std::min(best, s);
        } while (std::next_permutation(perm.begin(), perm.end()));
        const auto a = detail::min_cost_assignment(cost);
        double got = 0;
        for (std::size_t tt = 0; tt < n; ++tt) got += cost[a[tt]][tt];
        EXPECT_NEAR(got, best, 1e-9);
    }
}

TEST(RootDynamics, P6MaximalRootIsExact) {
    TheoremConfig config;
    config.k_max = 20;
    const TrajectoryReport r = theorem_report(ChainVector{{4, 2}}, config);
    ASSERT_EQ(r.records.size(), 21u);
    for (const auto& rec : r.records) {
        const Integer expected = pow_ui(Integer(2), rec.k) + 1;
        EXPECT_TRUE(rec.beta1.re == Real(expected, 256)) << rec.k;
        EXPECT_TRUE(rec.beta1.im.is_zero());
    }
}

TEST(RootDynamics, SimplexTrajectoryConverges) {
    TheoremConfig config;
    config.k_max = 8;
    const TrajectoryReport r = theorem_report(ChainVector{{7, 12, 6}}, config);
    EXPECT_EQ(r.d, 2);
    EXPECT_EQ(r.chi, 1);
    ASSERT_TRUE(r.k0.has_value());
    EXPECT_TRUE(r.es_converged);
    EXPECT_TRUE(r.product_converged);
    EXPECT_TRUE(r.match_converged);
    ASSERT_EQ(r.h_roots.size(), 1u);
    EXPECT_LT(dist(r.h_roots[0], -1, 0), 1e-60);
    // the ratio approaches 1 and the bounded root approaches -1 monotonically from k = 2
    for (std::size_t i = 3; i < r.records.size(); ++i) {
        EXPECT_LE(std::fabs(r.records[i].es_ratio.to_double() - 1), std::fabs(r.records[i - 1].es_ratio.to_double() - 1));
        EXPECT_LE(r.records[i].product_distance, r.records[i - 1].product_distance);
    }
}

TEST(RootDynamics, ThreadCountDoesNotChangeOutput) {
    TheoremConfig one;
    one.k_max = 6;
    one.threads = 1;
    TheoremConfig many = one;
    many.threads = 4;
    const ChainVector v{{128, 252, 150, 24}};
    EXPECT_EQ(to_csv(trajectory_table(theorem_report(v, one))), to_csv(trajectory_table(theorem_report(v, many))));
}

TEST(RootDynamics, HRootsOfDimensionThree) {
    TheoremConfig config;
    config.k_max = 1;
    const TrajectoryReport r = theorem_report(ChainVector{{128, 252, 150, 24}}, config);
    ASSERT_EQ(r.h_roots.size(), 2u);
    const double s33 = std::sqrt(33.0);
    EXPECT_LT(dist(r.h_roots[0], (-7 - s33) / 4, 0), 1e-12);
    EXPECT_LT(dist(r.h_roots[1], (-7 + s33) / 4, 0), 1e-12);
}
