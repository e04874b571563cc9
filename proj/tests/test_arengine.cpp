#include <dgar/arengine.hpp>
#include <dgar/fixtures.hpp>

#include "support/helpers.hpp"
#include "support/random_objects.hpp"

#include <gtest/gtest.h>

using namespace dgar;
using Q = Rational;
using dgar::testing::cone_on;
using dgar::testing::sphere;

namespace {

AlgebraPtr<Q> fx(const std::string &name) { return share(fixture<Q>(name)); }

bool isomorphic(const SemiFreeModule<Q> &a, const SemiFreeModule<Q> &b) {
    return iso_test(a, b).verdict == IsoVerdict::Isomorphic;
}

} // namespace

TEST(Gorenstein, CertifiesFixtures) {
    const std::vector<std::pair<std::string, int>> cases = {
        {"sphere:2", 2}, {"sphere:3", 3}, {"sphere:4", 4}, {"sphere:5", 5},   {"prodspheres:2,2", 4},
        {"ex62", 6},     {"cp3", 6},      {"exterior:3,5", 8}, {"rigged:gor0235", 5}};
    for (auto &[name, d] : cases) {
        auto c = gorenstein_check(fx(name));
        EXPECT_TRUE(c.certified) << name << ": " << c.failure;
        EXPECT_EQ(c.d, d) << name;
        EXPECT_TRUE(c.top_minus_one_vanishes) << name;
        EXPECT_TRUE(c.da_witness_verified) << name;
    }
}

TEST(Gorenstein, RefutesDegeneratePairing) {
    auto c = gorenstein_check(fx("rigged:nongor"));
    EXPECT_FALSE(c.certified);
    EXPECT_FALSE(c.failure.empty());
    EXPECT_THROW(gorenstein_check(fx("rigged:twoidem")), PreconditionError);
}

TEST(Gorenstein, PairingMatrices) {
    auto c = gorenstein_check(fx("prodspheres:2,2"));
    ASSERT_TRUE(c.certified);
    const auto &P = c.pairing_left.at(2);
    EXPECT_EQ(P.rows(), 2u);
    EXPECT_EQ(rank(P), 2u);
    // x y = y x = top, x^2 = y^2 = 0
    EXPECT_TRUE(P(0, 0).is_zero());
    EXPECT_TRUE(P(1, 1).is_zero());
    EXPECT_FALSE(P(0, 1).is_zero());
}

TEST(Serre, DimensionIdentityOnRandomPairs) {
    std::mt19937_64 rng(dgar::testing::suite_seed(41));
    for (const char *name : {"sphere:2", "sphere:3", "prodspheres:2,2"}) {
        auto A = fx(name);
        auto c = gorenstein_check(A);
        for (int k = 0; k < 5; ++k) {
            auto x = dgar::testing::random_compact(A, rng, 2);
            auto y = dgar::testing::random_compact(A, rng, 2);
            auto r = serre_dim_check(x, y, c);
            EXPECT_TRUE(r.holds) << name << ": " << r.hom_xy << " vs " << r.hom_y_sx;
        }
    }
}

TEST(Translate, ConeOverSphere) {
    auto A = sphere(2);
    auto c = gorenstein_check(A);
    auto C1 = cone_on(A, 2, {Q(1)});
    auto t = ar_translate(C1, c);
    ASSERT_TRUE(t.check.has_value());
    EXPECT_EQ(t.check->verdict, IsoVerdict::Isomorphic);
    EXPECT_EQ(f_invariant(t.result).value, f_invariant(C1).value);
    auto tA = ar_translate(free_module(A, {0}), c);
    EXPECT_TRUE(isomorphic(tA.result, free_module(A, {-1})));
}

TEST(Triangle, EndsAtFreeModule) {
    for (int d : {2, 3}) {
        auto A = sphere(d);
        auto c = gorenstein_check(A);
        auto t = ar_triangle(free_module(A, {0}), c);
        EXPECT_EQ(t.socle_dim, 1u);
        EXPECT_FALSE(t.socle_flag);
        EXPECT_EQ(t.f_y, 2u);
        EXPECT_TRUE(t.additive);
    }
}

TEST(Triangle, RejectsDecomposable) {
    auto A = sphere(2);
    auto c = gorenstein_check(A);
    EXPECT_THROW(ar_triangle(free_module(A, {0, 0}), c), PreconditionError);
}

TEST(Family, AdmissibleTuples) {
    EXPECT_EQ(admissible_alphas(3), (std::vector<std::vector<int>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}}));
    EXPECT_EQ(admissible_alphas(4).size(), 8u);
    EXPECT_FALSE(alpha_admissible({1, 1}));
    EXPECT_FALSE(alpha_admissible({0, 2}));
}

TEST(Family, SphereStepsOfFirstKind) {
    for (int d : {2, 3}) {
        auto ctx = family_context(sphere(d));
        EXPECT_FALSE(ctx.e.has_value());
        auto F = build_family(ctx, {0, 0, 0});
        EXPECT_TRUE(F.invariants_ok());
        EXPECT_EQ(F.e_list, (std::vector<int>{d, 2 * d - 1, 3 * d - 2}));
        for (auto &r : F.endo) {
            EXPECT_EQ(r.dim_now, 1u);
            EXPECT_EQ(r.dim_ext, 0u);
        }
        EXPECT_THROW(build_family(ctx, {1}), PreconditionError);
    }
}

TEST(Family, DegreesForAlternatingTuple) {
    auto A = share(product_of_spheres<Q>(2, 3));
    auto ctx = family_context(A);
    ASSERT_TRUE(ctx.cert.certified);
    ASSERT_EQ(ctx.e, 3);
    const int d = 5, e = 3;
    auto F = build_family(ctx, {1, 0, 1});
    EXPECT_EQ(F.e_list, (std::vector<int>{e, e + d - 1, 2 * e + d - 2}));
    EXPECT_EQ(F.eA_list, (std::vector<int>{e, d, e}));
    for (auto &l : F.logs)
        for (auto &entry : l)
            EXPECT_TRUE(entry.ok) << entry.check << " " << entry.detail;
}

TEST(Family, ProductOfTwoSpheres) {
    auto ctx = family_context(fx("prodspheres:2,2"));
    ASSERT_EQ(ctx.e, 2);
    for (auto &alpha : admissible_alphas(3)) {
        auto F = build_family(ctx, alpha);
        EXPECT_TRUE(F.invariants_ok());
        EXPECT_EQ(f_invariant(F.module()).value, ExtCount::finite(4));
        EXPECT_EQ(endo_algebra(F.module()).algebra.dim(), 1u);
    }
    EXPECT_THROW(build_family(ctx, {1, 1}), InputError);
}

TEST(Family, NonzeroExtensionModule) {
    auto A = fx("rigged:gor0235");
    auto ctx = family_context(A, 3);
    auto F = build_family(ctx, {1});
    ASSERT_EQ(F.endo.size(), 1u);
    const auto &r = F.endo[0];
    EXPECT_EQ(r.dim_ext, 1u);
    EXPECT_EQ(r.dim_now, 2u);
    EXPECT_TRUE(r.ok());
    // independent count: H^0 of the endomorphism complex
    const auto &C1 = F.module();
    EXPECT_EQ(Cohomology<Q>(hom_complex(C1, C1.total()).complex()).dim(0), 2u);
    EXPECT_EQ(is_local(endo_algebra(C1).algebra).verdict, LocalVerdict::Local);
}

TEST(Pencil, OneParameterFamily) {
    auto ctx = family_context(fx("prodspheres:2,2"));
    std::vector<SemiFreeModule<Q>> mods;
    for (auto lam : std::vector<std::pair<Q, Q>>{{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(1)}}) {
        auto p = build_pencil(ctx, std::nullopt, lam);
        EXPECT_EQ(p.f, 2u);
        EXPECT_TRUE(p.local);
        mods.push_back(p.module);
    }
    for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::size_t j = 0; j < mods.size(); ++j)
            EXPECT_EQ(isomorphic(mods[i], mods[j]), i == j) << i << "," << j;
    auto p = build_pencil(ctx, std::nullopt, {Q(1), Q(2)});
    auto q = build_pencil(ctx, std::nullopt, {Q(2), Q(4)});
    EXPECT_TRUE(isomorphic(p.module, q.module));
    EXPECT_THROW(build_pencil(ctx, std::nullopt, {Q(0), Q(0)}), InputError);
    EXPECT_THROW(build_pencil(family_context(sphere(4)), std::nullopt, {Q(1), Q(0)}), PreconditionError);
}

TEST(Components, ShiftsOfFreeModule) {
    auto A = sphere(3);
    auto c = gorenstein_check(A);
    auto F = free_module(A, {0});
    for (int s = 1; s <= 4; ++s) {
        auto r = component_certificate(F, shift(F, s), c);
        if (s % 2 == 0) {
            EXPECT_EQ(r.verdict, ComponentVerdict::SameComponentWitness) << s;
            EXPECT_EQ(r.j, -s / 2);
        } else {
            EXPECT_EQ(r.verdict, ComponentVerdict::DifferentComponents) << s;
        }
    }
    auto C1 = cone_on(A, 3, {Q(1)});
    EXPECT_EQ(component_certificate(F, C1, c).verdict, ComponentVerdict::Inconclusive);
}

TEST(Level, SphereFamily) {
    auto ctx = family_context(sphere(2));
    auto F = build_family(ctx, {0, 0}, false);
    for (std::size_t n = 0; n < F.chain.size(); ++n) {
        auto L = level_certificate(F.chain[n]);
        EXPECT_EQ(L.upper_bound, n + 1);
        EXPECT_TRUE(L.exact) << "n=" << n << " " << L.note;
        EXPECT_TRUE(L.ghosts_vanish);
        EXPECT_EQ(L.ghosts.size(), n);
    }
}
