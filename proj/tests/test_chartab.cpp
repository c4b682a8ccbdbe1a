#include "oracles.hpp"

#include "qrdeg/chartab.hpp"
#include "qrdeg/corpus.hpp"
#include "qrdeg/normal.hpp"

#include <gtest/gtest.h>

using namespace qrdeg;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<std::uint64_t>> c) { return Permutation::from_cycles(n, c); }

Group symmetric(std::size_t n) {
    std::vector<std::uint64_t> all;
    for (std::uint64_t i = 1; i <= n; ++i) all.push_back(i);
    return Group({cyc(n, {{1, 2}}), cyc(n, {all})});
}

struct Named {
    std::string name;
    Group g;
};

std::vector<Named> groups() {
    std::vector<Named> v;
    v.push_back({"C12", Group({cyc(12, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}})})});
    v.push_back({"C2xC4", Group({cyc(6, {{1, 2}}), cyc(6, {{3, 4, 5, 6}})})});
    v.push_back({"S3", symmetric(3)});
    v.push_back({"S4", symmetric(4)});
    v.push_back({"S5", symmetric(5)});
    v.push_back({"A5", alternating_group(5)});
    v.push_back({"SL2(3)", sl_group(2, 3)});
    v.push_back({"SL2(5)", sl_group(2, 5)});
    v.push_back({"PSL2(7)", psl_group(2, 7)});
    v.push_back({"SL2(7)", sl_group(2, 7)});
    v.push_back({"A6", alternating_group(6)});
    v.push_back({"PSL2(8)", psl_group(2, 8)});
    return v;
}

} // namespace

TEST(Dixon, DegreesAreConsistentWithBruteForceInvariants) {
    for (auto& [name, g] : groups()) {
        SCOPED_TRACE(name);
        auto cdata = character_degrees(g);
        const auto& d = cdata.degrees;
        auto elems = oracle::closure(g.generators());
        auto bc = oracle::classes(elems);
        EXPECT_EQ(d.k, bc.members.size());
        EXPECT_EQ(d.degrees.size(), bc.members.size());
        EXPECT_EQ(d.sum_of_squares(), g.order());
        EXPECT_EQ(d.linear_count(), elems.size() / oracle::derived_order(elems));
        for (auto x : d.degrees) EXPECT_EQ(elems.size() % x, 0u);
        auto cands = oracle::degree_candidates(elems.size(), bc.members.size(), d.linear_count());
        std::vector<std::uint64_t> got(d.degrees.begin(), d.degrees.end());
        EXPECT_NE(std::find(cands.begin(), cands.end(), got), cands.end());
        if (cands.size() == 1) { EXPECT_EQ(got, cands[0]); }
    }
}

TEST(Dixon, AbelianGroupsHaveOnlyLinearCharacters) {
    auto g = Group({cyc(6, {{1, 2}}), cyc(6, {{3, 4, 5, 6}})});
    auto d = character_degrees(g).degrees;
    EXPECT_EQ(d.degrees, std::vector<std::uint64_t>(8, 1));
    EXPECT_EQ(d.d0(), 1u);
    EXPECT_FALSE(d.perfect());
}

TEST(Dixon, UniquelyDeterminedSmallCases) {
    // each of these is pinned down by k, |G:G'| and the square sum alone
    EXPECT_EQ(character_degrees(symmetric(4)).degrees.degrees, (std::vector<std::uint64_t>{1, 1, 2, 3, 3}));
    EXPECT_EQ(character_degrees(alternating_group(5)).degrees.degrees, (std::vector<std::uint64_t>{1, 3, 3, 4, 5}));
    EXPECT_EQ(oracle::degree_candidates(60, 5, 1), (std::vector<std::vector<std::uint64_t>>{{1, 3, 3, 4, 5}}));
}

TEST(Dixon, IndependentOfPrimeSearchSeed) {
    auto g = sl_group(2, 7);
    auto cd = conjugacy_classes(g);
    auto cc = class_constants(g, cd);
    auto a = dixon_degrees(cd, cc, g.size(), 1), b = dixon_degrees(cd, cc, g.size(), 987654321);
    EXPECT_EQ(a.degrees, b.degrees);
    EXPECT_GT(a.prime, 336u);
    EXPECT_EQ((a.prime - 1) % cd.exponent(), 0u);
}

TEST(Dixon, TrivialGroupHasNoD0) { EXPECT_THROW(d0(Group::trivial(3)), InvalidInput); }

TEST(Invariants, QuotientsDoNotLowerD0) {
    for (auto& [name, g] : groups()) {
        SCOPED_TRACE(name);
        auto cdata = character_degrees(g);
        if (g.order() == 1) continue;
        auto cc = class_constants(g, cdata.classes);
        auto ns = structure_audit(g, cdata.classes, cc);
        const auto dg = cdata.degrees.d0();
        for (std::size_t i = 0; i < ns.members.size(); ++i) {
            if (ns.orders[i] == 1 || BigInt(ns.orders[i]) == g.order()) continue;
            auto q = quotient(g, ns.normal_subgroups[i]);
            EXPECT_GE(d0(q), dg) << "N of order " << ns.orders[i];
        }
    }
}

TEST(Invariants, DirectProductTakesTheMinimum) {
    std::vector<Group> gs{alternating_group(5), psl_group(2, 7), sl_group(2, 3), symmetric(3)};
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i; j < gs.size(); ++j) {
            if (gs[i].order() * gs[j].order() > 12000) continue;
            EXPECT_EQ(d0(direct_product(gs[i], gs[j])), std::min(d0(gs[i]), d0(gs[j]))) << i << " " << j;
        }
}

TEST(Invariants, PerfectGroupBounds) {
    for (auto& [name, g] : groups()) {
        auto cdata = character_degrees(g);
        const auto& d = cdata.degrees;
        if (!d.perfect() || g.order() == 1) continue;
        SCOPED_TRACE(name);
        const auto d0v = d.d0();
        // noncentral classes have at least d0 + 1 elements
        for (std::size_t i = 1; i < cdata.classes.count(); ++i)
            if (cdata.classes.sizes[i] > 1) { EXPECT_GE(cdata.classes.sizes[i], d0v + 1); }
        // k <= |G|^(1 - 2 alpha)  <=>  k d0^2 <= |G|
        EXPECT_LE(BigInt(d.k) * d0v * d0v, g.order());
        // r_n <= n^(1/alpha - 2)
        const double inv_alpha = std::log(g.order().convert_to<double>()) / std::log(double(d0v));
        std::map<std::uint64_t, std::uint64_t> r;
        for (auto x : d.degrees) ++r[x];
        for (auto [n, rn] : r)
            if (n > 1) { EXPECT_LE(std::log(double(rn)), (inv_alpha - 2) * std::log(double(n)) + 1e-9) << n; }
    }
}
