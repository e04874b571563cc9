#include <dgar/dot.hpp>
#include <dgar/fixtures.hpp>
#include <dgar/io.hpp>

#include "support/helpers.hpp"

#include <gtest/gtest.h>

using namespace dgar;
using Q = Rational;

namespace {

const std::vector<std::string> kFixtures = {"sphere:2",     "sphere:5",       "prodspheres:2,2", "prodspheres:2,4",
                                            "cp3",          "ex62",           "exterior",        "exterior:3,5",
                                            "rigged:nongor", "rigged:gor0235", "rigged:acyclic",  "rigged:twoidem",
                                            "rigged:upper3"};

std::string pointer_of(const json &doc) {
    try {
        algebra_from_json<Q>(doc);
    } catch (const DocumentError &e) {
        return e.pointer;
    }
    return "<none>";
}

} // namespace

TEST(Fixtures, AllValidate) {
    for (auto &name : kFixtures)
        EXPECT_TRUE(validate(fixture<Q>(name)).ok()) << name;
    EXPECT_EQ(fixture<Q>("ex62"), fixture<Q>("prodspheres:2,4"));
    EXPECT_EQ(fixture<Q>("exterior"), exterior<Q>({3, 5}));
}

TEST(Fixtures, BadNames) {
    for (const char *bad : {"sphere", "sphere:x", "sphere:1", "prodspheres:2", "rigged:none", "torus", "cp3:1"})
        EXPECT_THROW(fixture<Q>(bad), InputError) << bad;
}

TEST(Json, AlgebraRoundTrip) {
    for (auto &name : kFixtures) {
        auto A = fixture<Q>(name);
        auto doc = algebra_to_json(A);
        auto B = algebra_from_json<Q>(doc);
        EXPECT_EQ(A, B) << name;
        EXPECT_EQ(algebra_to_json(B), doc) << name;
        EXPECT_EQ(algebra_from_json<Q>(json::parse(doc.dump())), A) << name;
    }
}

TEST(Json, RationalScalarsAreStrings) {
    DGAlgebraData<Q> d;
    d.dims = {1, 0, 1};
    d.unit = {Q(1)};
    d.mul[{0, 0}] = {Q(1)};
    d.mul[{0, 1}] = {Q(1)};
    d.mul[{1, 0}] = {Q(1)};
    auto doc = algebra_to_json(DGAlgebra<Q>(d));
    EXPECT_EQ(doc["unit"][0], "1");
    auto L = free_module(share(DGAlgebra<Q>(d)), {0, 1});
    typename SemiFreeModule<Q>::CoeffMap c;
    c[{1, 0}] = {Q(-3, 4)};
    SemiFreeModule<Q> M(L.alg(), L.gens(), c);
    auto mdoc = module_to_json(M);
    EXPECT_EQ(mdoc["coefficients"][0][3][0], "-3/4");
    EXPECT_EQ(mdoc.dump().find('.'), std::string::npos);
}

TEST(Json, ModuleRoundTrip) {
    auto A = share(fixture<Q>("prodspheres:2,2"));
    auto ctx = family_context(A);
    for (auto &alpha : admissible_alphas(2)) {
        auto F = build_family(ctx, alpha, false);
        const auto &C = F.module();
        auto doc = module_to_json(C);
        auto D = module_from_json(A, doc);
        EXPECT_EQ(D.gens(), C.gens());
        EXPECT_EQ(D.coeffs(), C.coeffs());
        EXPECT_EQ(module_to_json(D), doc);
    }
}

TEST(Json, PrimeFieldDocuments) {
    GFp::Scope scope(5);
    auto A = sphere_model<GFp>(3);
    auto doc = algebra_to_json(A);
    EXPECT_EQ(doc["field"]["GFp"], 5);
    EXPECT_TRUE(doc["unit"][0].is_number_integer());
    EXPECT_EQ(algebra_from_json<GFp>(doc), A);
    EXPECT_EQ(document_field(doc), FieldSpec::prime(5));
    EXPECT_THROW(algebra_from_json<GFp>(algebra_to_json(fixture<Q>("sphere:2"))), DocumentError);
}

TEST(Json, ErrorsCarryPointers) {
    auto doc = algebra_to_json(fixture<Q>("sphere:2"));
    {
        auto bad = doc;
        bad["mul"][1][4] = json::array({"1", "2"});
        EXPECT_EQ(pointer_of(bad), "/mul/1/4");
    }
    {
        auto bad = doc;
        bad["unit"][0] = "1/0";
        EXPECT_EQ(pointer_of(bad), "/unit/0");
    }
    {
        auto bad = doc;
        bad["unit"][0] = 0.5;
        EXPECT_EQ(pointer_of(bad), "/unit/0");
    }
    {
        auto bad = doc;
        bad.erase("degrees");
        EXPECT_EQ(pointer_of(bad), "/degrees");
    }
    {
        auto bad = doc;
        bad["degrees"][1]["degree"] = 7;
        EXPECT_EQ(pointer_of(bad), "/degrees/1/degree");
    }
    {
        // x * x = 1 breaks the grading of products
        auto bad = doc;
        bad["mul"].push_back(json::array({2, 0, 2, 0, json::array({"1"})}));
        EXPECT_EQ(pointer_of(bad), "/mul/3/4");
    }
    {
        // Leibniz failure: d(1) = x
        auto bad = algebra_to_json(truncated_polynomial<Q>(1, 2));
        bad["diff"] = json::array({json::array({0, json::array({json::array({"1"})})})});
        EXPECT_EQ(pointer_of(bad), "");
    }
}

TEST(Dot, FamilyTreeLeaves) {
    auto ctx = family_context(share(fixture<Q>("prodspheres:2,2")));
    auto g3 = family_tree(ctx, 3);
    EXPECT_EQ(g3.leaf_count(), 5u);
    EXPECT_EQ(to_dot(g3), to_dot(family_tree(ctx, 3)));
    auto g0 = family_tree(ctx, 0);
    EXPECT_EQ(g0.nodes.size(), 1u);
    EXPECT_TRUE(g0.edges.empty());
    const auto text = to_dot(g3);
    EXPECT_NE(text.find("label=\"Second\""), std::string::npos);
    EXPECT_NE(text.find("C_(1,0,1)\\nf=4"), std::string::npos);
}

TEST(Dot, PencilLeavesAreParallel) {
    auto ctx = family_context(share(fixture<Q>("prodspheres:2,2")));
    auto g = pencil_graph(ctx, std::nullopt, {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(2)}});
    EXPECT_EQ(g.leaf_count(), 3u);
    for (auto &e : g.edges)
        EXPECT_EQ(e.from, "A");
    EXPECT_NE(to_dot(g).find("[1:2]"), std::string::npos);
}

TEST(Hash, StableAndSensitive) {
    auto a = algebra_to_json(fixture<Q>("sphere:2"));
    auto b = algebra_to_json(fixture<Q>("sphere:3"));
    EXPECT_EQ(document_hash(a), document_hash(algebra_to_json(fixture<Q>("sphere:2"))));
    EXPECT_NE(document_hash(a), document_hash(b));
    EXPECT_EQ(document_hash(a).size(), 16u);
}
