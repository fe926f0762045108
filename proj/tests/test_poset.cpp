#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "poset_zeta/poset.hpp"
#include "poset_zeta/poset_json.hpp"
#include "poset_zeta/sd_combinatorics.hpp"

using namespace poset_zeta;

namespace {

Poset p6() { return build_poset({"2", "3", "5", "6"}, {{"2", "6"}, {"3", "6"}}); }

oracle::Relation relation_of(const Poset& p) {
    oracle::Relation r(p.size(), std::vector<bool>(p.size(), false));
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b) r[a][b] = p.less(a, b);
    return r;
}

std::vector<oracle::RandomPoset> random_posets(std::size_t count, std::size_t max_size) {
    std::mt19937_64 rng(oracle::seed());
    std::uniform_int_distribution<std::size_t> size(1, max_size);
    std::uniform_real_distribution<double> density(0.1, 0.8);
    std::vector<oracle::RandomPoset> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(oracle::random_poset(size(rng), density(rng), rng));
    return out;
}

// Chain counts of an explicitly built poset: subset enumeration when small,
// otherwise the DP (itself checked against enumeration above).
ChainVector chains_of_explicit(const Poset& p) {
    if (p.size() <= 16) return ChainVector{oracle::strict_chains(relation_of(p))};
    return strict_chain_vector(p);
}

} // namespace

TEST(Poset, BuildTakesTransitiveClosure) {
    const Poset p = build_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    EXPECT_TRUE(p.less(0, 2));
    EXPECT_FALSE(p.less(2, 0));
    EXPECT_EQ(p.relation_count(), 3u);
    EXPECT_EQ(p.cover_relations().size(), 2u);
}

TEST(Poset, ErrorPaths) {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidConfig;
    };
    EXPECT_EQ(code([] { build_poset({"a", "a"}, {}); }), ErrorCode::DuplicateLabel);
    EXPECT_EQ(code([] { build_poset({"a"}, {{"a", "z"}}); }), ErrorCode::UnknownLabel);
    EXPECT_EQ(code([] { build_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }), ErrorCode::CycleDetected);
    EXPECT_EQ(code([] { build_poset({"a"}, {{"a", "a"}}); }), ErrorCode::CycleDetected);
    EXPECT_EQ(code([] { strict_chain_vector(build_poset({}, {})); }), ErrorCode::EmptyPoset);
    EXPECT_EQ(code([] { barycentric_subdivision(p6(), 5); }), ErrorCode::SubdivisionTooLarge);
}

TEST(Poset, P6ChainVector) {
    const ChainVector v = strict_chain_vector(p6());
    ASSERT_EQ(v.counts.size(), 2u);
    EXPECT_EQ(v[0], 4);
    EXPECT_EQ(v[1], 2);
    EXPECT_EQ(dimension(p6()), 1);
    EXPECT_EQ(euler_characteristic(p6()), 2);
}

TEST(Poset, StrictChainsMatchSubsetEnumeration) {
    for (const auto& rp : random_posets(200, 7)) {
        const Poset p = build_poset(rp.labels, rp.pairs);
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b) ASSERT_EQ(p.less(a, b), rp.closed[a][b]);
        const auto expected = oracle::strict_chains(rp.closed);
        EXPECT_EQ(strict_chain_vector(p).counts, expected);
        EXPECT_EQ(dimension(p), static_cast<long>(expected.size()) - 1);
    }
}

TEST(Poset, WeakChainsMatchEnumeration) {
    for (const auto& rp : random_posets(60, 6)) {
        const Poset p = build_poset(rp.labels, rp.pairs);
        for (unsigned i = 0; i <= 5; ++i) EXPECT_EQ(weak_chain_count(p, i), oracle::weak_chains_enumerated(rp.closed, i));
    }
}

TEST(Poset, SubdivisionElementsAreChains) {
    const Poset sd = barycentric_subdivision(p6());
    ASSERT_EQ(sd.size(), 6u);
    EXPECT_EQ(sd.label(0), "{2}");
    EXPECT_EQ(sd.label(4), "{2,6}");
    EXPECT_EQ(sd.label(5), "{3,6}");
    // {2} < {2,6} and {6} < {2,6}; {3} is not below {2,6}
    EXPECT_TRUE(sd.less(0, 4));
    EXPECT_TRUE(sd.less(3, 4));
    EXPECT_FALSE(sd.less(1, 4));
}

TEST(Poset, EulerCharacteristicInvariantUnderSubdivision) {
    for (const auto& rp : random_posets(40, 6)) {
        const Poset p = build_poset(rp.labels, rp.pairs);
        const Poset sd = barycentric_subdivision(p);
        EXPECT_EQ(euler_characteristic(sd), euler_characteristic(p));
        EXPECT_EQ(dimension(sd), dimension(p));
        // top chains of Sd(P) are top chains of P times (d+1)!
        const long d = dimension(p);
        EXPECT_EQ(strict_chain_vector(sd)[static_cast<std::size_t>(d)],
                  strict_chain_vector(p)[static_cast<std::size_t>(d)] * factorial(static_cast<unsigned long>(d + 1)));
    }
}

TEST(Poset, TransferIterateMatchesExplicitSubdivision) {
    for (const auto& rp : random_posets(25, 5)) {
        Poset p = build_poset(rp.labels, rp.pairs);
        const ChainVector v = strict_chain_vector(p);
        for (unsigned k = 1; k <= 2; ++k) {
            const ChainVector next = transfer_iterate(v, k - 1);
            if (std::accumulate(next.counts.begin(), next.counts.end(), Integer(0)) > kDefaultSubdivisionCap) break;
            p = barycentric_subdivision(p);
            EXPECT_EQ(transfer_iterate(v, k), chains_of_explicit(p));
        }
    }
}

TEST(Poset, JsonRoundTrip) {
    for (const auto& rp : random_posets(30, 7)) {
        const Poset p = build_poset(rp.labels, rp.pairs);
        const Poset q = poset_from_json_text(poset_to_json(p).dump());
        ASSERT_EQ(q.labels(), p.labels());
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b) EXPECT_EQ(q.less(a, b), p.less(a, b));
    }
    const Poset sd = barycentric_subdivision(barycentric_subdivision(p6()));
    const Poset back = poset_from_json_text(poset_to_json(sd).dump());
    EXPECT_EQ(relation_of(back), relation_of(sd));
}

TEST(Poset, JsonParseErrors) {
    EXPECT_THROW(poset_from_json_text("{"), Error);
    EXPECT_THROW(poset_from_json_text(R"({"elements": [1]})"), Error);
    EXPECT_THROW(poset_from_json_text(R"({"elements": ["a"], "relations": [["a"]]})"), Error);
}
