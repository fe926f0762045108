#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "poset_zeta/zeta_series.hpp"

using namespace poset_zeta;

namespace {

Rational frac(long a, long b) {
    Rational q{Integer(a), Integer(b)};
    q.canonicalize();
    return q;
}

std::vector<oracle::RandomPoset> sample(std::size_t count, std::size_t max_size, std::uint64_t salt) {
    std::mt19937_64 rng(oracle::seed() ^ salt);
    std::uniform_int_distribution<std::size_t> size(1, max_size);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    std::vector<oracle::RandomPoset> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(oracle::random_poset(size(rng), density(rng), rng));
    return out;
}

} // namespace

TEST(ZetaSeries, P6ClosedForm) {
    const Poset p = build_poset({"2", "3", "5", "6"}, {{"2", "6"}, {"3", "6"}});
    const RationalFunction z = zeta_rational(p);
    EXPECT_EQ(z.numerator(), ExactPolynomial({4, -2}));
    EXPECT_EQ(z.denominator(), ExactPolynomial({1, -2, 1}));
    EXPECT_EQ(residue_at_infinity(z), 2);
    const auto s = series_expand(z, 4);
    EXPECT_EQ(s, (std::vector<Rational>{4, 6, 8, 10, 12}));
}

TEST(ZetaSeries, AntichainIsConstantGeometric) {
    const Poset p = build_poset({"a", "b", "c"}, {});
    const RationalFunction z = zeta_rational(p);
    // 3 / (1 - s)
    EXPECT_EQ(z.numerator(), ExactPolynomial({3}));
    EXPECT_EQ(z.denominator(), ExactPolynomial({1, -1}));
    EXPECT_EQ(residue_at_infinity(z), 3);
}

TEST(ZetaSeries, SeriesCountsWeakChains) {
    for (const auto& rp : sample(60, 7, 1)) {
        const Poset p = build_poset(rp.labels, rp.pairs);
        const auto strict = oracle::strict_chains(rp.closed);
        const auto series = series_expand(zeta_rational(p), 12);
        for (unsigned i = 0; i <= 12; ++i) {
            EXPECT_EQ(series[i], Rational(oracle::weak_from_strict(strict, i)));
            if (i <= 4) EXPECT_EQ(series[i], Rational(oracle::weak_chains_enumerated(rp.closed, i)));
        }
    }
}

TEST(ZetaSeries, ResidueAtInfinityIsEulerCharacteristic) {
    for (const auto& rp : sample(80, 7, 2)) {
        const Poset p = build_poset(rp.labels, rp.pairs);
        Integer chi = 0;
        const auto strict = oracle::strict_chains(rp.closed);
        for (std::size_t i = 0; i < strict.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * strict[i];
        EXPECT_EQ(residue_at_infinity(zeta_rational(p)), Rational(chi));
    }
}

TEST(ZetaSeries, ZetaIsGOverPowerOfOneMinusS) {
    for (const auto& rp : sample(40, 7, 3)) {
        const Poset p = build_poset(rp.labels, rp.pairs);
        const ChainVector v = strict_chain_vector(p);
        const RationalFunction expected(g_polynomial(v),
                                        ExactPolynomial::binomial_power(1, -1, static_cast<std::size_t>(v.dimension() + 1)));
        EXPECT_EQ(zeta_rational(p), expected);
    }
}

TEST(ZetaSeries, NormalizedForm) {
    const RationalFunction f(ExactPolynomial({frac(1, 2), frac(1, 2)}), ExactPolynomial({Rational(-3), 0, 3}));
    // (1 + s) / (6 (s^2 - 1)) = 1 / (6 (s - 1)) = -1 / (6 - 6s)
    EXPECT_EQ(f.numerator(), ExactPolynomial({-1}));
    EXPECT_EQ(f.denominator(), ExactPolynomial({6, -6}));
}

TEST(ZetaSeries, ErrorPaths) {
    const RationalFunction pole(ExactPolynomial({1}), ExactPolynomial({0, 1}));
    EXPECT_THROW(series_expand(pole, 3), Error);
    try {
        series_expand(pole, 3);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PoleAtOrigin);
    }
    const RationalFunction grows(ExactPolynomial({0, 0, 0, 1}), ExactPolynomial({1, 1}));
    try {
        residue_at_infinity(grows);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DivergentAtInfinity);
    }
    // s^2 / (1 + s) = s - 1 + 1/(1+s): residue -1
    EXPECT_EQ(residue_at_infinity(RationalFunction(ExactPolynomial({0, 0, 1}), ExactPolynomial({1, 1}))), -1);
}

TEST(Numeric, RationalRoundTrip) {
    std::mt19937_64 rng(oracle::seed());
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int t = 0; t < 500; ++t) {
        const Rational q = frac(num(rng), den(rng));
        EXPECT_EQ(parse_rational(to_exact_string(q)), q);
    }
    EXPECT_EQ(to_exact_string(frac(6, 4)), "3/2");
    EXPECT_EQ(to_exact_string(frac(4, 2)), "2");
    EXPECT_EQ(parse_rational("12351860/372316571"), Rational(Integer(12351860), Integer(372316571)));
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("x"), Error);
    EXPECT_THROW(parse_rational(""), Error);
}

TEST(Polynomial, Arithmetic) {
    const ExactPolynomial p({1, 2, 1});  // (1 + s)^2
    EXPECT_EQ(p.shifted(-1), ExactPolynomial({0, 0, 1}));
    const auto [q, r] = p.divmod(ExactPolynomial({1, 1}));
    EXPECT_EQ(q, ExactPolynomial({1, 1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(gcd(p, ExactPolynomial({-1, 0, 1})), ExactPolynomial({1, 1}));
    EXPECT_EQ(p.derivative(), ExactPolynomial({2, 2}));
    EXPECT_EQ(ExactPolynomial::binomial_power(1, -1, 3), ExactPolynomial({1, -3, 3, -1}));
    EXPECT_EQ(to_coefficient_string(ExactPolynomial({frac(1, 2), -3})), "[1/2, -3]");
    EXPECT_EQ(ExactPolynomial().degree(), -1);
}
