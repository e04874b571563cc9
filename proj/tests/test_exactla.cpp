#include <dgar/exactla.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace dgar;
using Q = Rational;

namespace {

Matrix<Q> mat(std::vector<std::vector<long>> rows) {
    Matrix<Q> m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = Q(rows[i][j]);
    return m;
}

Vec<Q> vec(std::vector<long> v) {
    Vec<Q> r;
    for (long x : v)
        r.push_back(Q(x));
    return r;
}

// Oracle: determinant by cofactor expansion, rank as the largest nonzero minor.
Q det(const std::vector<std::vector<Q>> &m) {
    const std::size_t n = m.size();
    if (n == 0)
        return Q(1);
    Q r(0);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Q>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Q> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(m[i][k]);
            sub.push_back(row);
        }
        Q term = m[0][j] * det(sub);
        r = (j % 2 == 0) ? r + term : r - term;
    }
    return r;
}

std::size_t minor_rank(const Matrix<Q> &m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t best = 0;
    for (unsigned rs = 1; rs < (1u << R); ++rs)
        for (unsigned cs = 1; cs < (1u << C); ++cs) {
            std::size_t k = __builtin_popcount(rs);
            if (k != static_cast<std::size_t>(__builtin_popcount(cs)) || k <= best)
                continue;
            std::vector<std::vector<Q>> sub;
            for (std::size_t i = 0; i < R; ++i) {
                if (!(rs >> i & 1))
                    continue;
                std::vector<Q> row;
                for (std::size_t j = 0; j < C; ++j)
                    if (cs >> j & 1)
                        row.push_back(m(i, j));
                sub.push_back(row);
            }
            if (!det(sub).is_zero())
                best = k;
        }
    return best;
}

Matrix<Q> random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c, int lo = -2, int hi = 2) {
    std::uniform_int_distribution<int> dist(lo, hi);
    Matrix<Q> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = Q(dist(rng));
    return m;
}

} // namespace

TEST(ExactLA, ZeroMatrix) {
    auto r = rank_kernel_image(Matrix<Q>(2, 3));
    EXPECT_EQ(r.rank, 0u);
    EXPECT_EQ(r.kernel.dim(), 3u);
    EXPECT_EQ(r.image.dim(), 0u);
}

TEST(ExactLA, Identity) {
    auto r = rank_kernel_image(Matrix<Q>::identity(4));
    EXPECT_EQ(r.rank, 4u);
    EXPECT_EQ(r.kernel.dim(), 0u);
}

TEST(ExactLA, RankOneKernel) {
    auto r = rank_kernel_image(mat({{1, 2}, {2, 4}}));
    EXPECT_EQ(r.rank, 1u);
    ASSERT_EQ(r.kernel.dim(), 1u);
    // canonical echelon form of span(-2, 1) is (1, -1/2)
    EXPECT_EQ(r.kernel, (SubspaceBasis<Q>::span(2, {vec({-2, 1})})));
    EXPECT_EQ(r.kernel.vector(0), (Vec<Q>{Q(1), Q(-1, 2)}));
}

TEST(ExactLA, Solve) {
    auto b = vec({4, -1, 7});
    EXPECT_EQ(*solve(Matrix<Q>::identity(3), b), b);
    EXPECT_FALSE(solve(Matrix<Q>(2, 2), vec({1, 0})).has_value());
    EXPECT_EQ(*solve(mat({{1, 1}}), vec({3})), vec({3, 0}));
}

TEST(ExactLA, Complement) {
    auto whole = SubspaceBasis<Q>::whole(2);
    EXPECT_EQ(complement(whole, whole).dim(), 0u);
    EXPECT_EQ(complement(SubspaceBasis<Q>(2), whole), whole);
    auto line = SubspaceBasis<Q>::span(2, {vec({1, 1})});
    EXPECT_EQ(complement(line, whole), (SubspaceBasis<Q>::span(2, {vec({1, 0})})));
    auto a = SubspaceBasis<Q>::span(3, {vec({1, 0, 0})});
    auto b = SubspaceBasis<Q>::span(3, {vec({0, 1, 0})});
    EXPECT_THROW(complement(a, b), Error);
}

TEST(ExactLA, Intersect) {
    auto a = SubspaceBasis<Q>::span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
    auto b = SubspaceBasis<Q>::span(3, {vec({0, 1, 0}), vec({0, 0, 1})});
    EXPECT_EQ(intersect(a, a), a);
    EXPECT_EQ(intersect(a, b), (SubspaceBasis<Q>::span(3, {vec({0, 1, 0})})));
    auto l1 = SubspaceBasis<Q>::span(2, {vec({1, 2})});
    auto l2 = SubspaceBasis<Q>::span(2, {vec({1, 3})});
    EXPECT_EQ(intersect(l1, l2).dim(), 0u);
    EXPECT_THROW(intersect(a, l1), Error);
}

TEST(ExactLA, RankMatchesMinorOracle) {
    std::mt19937 rng(11);
    for (int it = 0; it < 60; ++it) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        auto m = random_matrix(rng, r, c, -1, 1);
        EXPECT_EQ(rank(m), minor_rank(m));
        EXPECT_EQ(rank(m), rank(m.transpose()));
    }
}

TEST(ExactLA, RankNullity) {
    std::mt19937 rng(12);
    for (int it = 0; it < 50; ++it) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        auto m = random_matrix(rng, r, c);
        auto rki = rank_kernel_image(m);
        EXPECT_EQ(rki.rank + rki.kernel.dim(), c);
        for (auto &v : rki.kernel.vectors())
            EXPECT_TRUE(is_zero_vec(m.apply(v)));
        for (std::size_t j = 0; j < c; ++j)
            EXPECT_TRUE(rki.image.contains(m.col(j)));
    }
}

TEST(ExactLA, DimensionFormulaAndComplement) {
    std::mt19937 rng(13);
    for (int it = 0; it < 50; ++it) {
        const std::size_t n = 2 + rng() % 5;
        auto a = image(random_matrix(rng, n, rng() % (n + 1)));
        auto b = image(random_matrix(rng, n, rng() % (n + 1)));
        EXPECT_EQ(a.dim() + b.dim(), intersect(a, b).dim() + sum(a, b).dim());
        auto s = sum(a, b);
        auto c = complement(a, s);
        EXPECT_EQ(sum(a, c), s);
        EXPECT_EQ(intersect(a, c).dim(), 0u);
    }
}

TEST(ExactLA, SolveRandom) {
    std::mt19937 rng(14);
    for (int it = 0; it < 50; ++it) {
        auto m = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5);
        Vec<Q> x(m.cols());
        for (auto &e : x)
            e = Q(static_cast<long>(rng() % 5) - 2);
        auto b = m.apply(x);
        auto y = solve(m, b);
        ASSERT_TRUE(y.has_value());
        EXPECT_EQ(m.apply(*y), b);
    }
}

TEST(ExactLA, RationalAndPrimeRanksAgreeOnFixedMatrices) {
    std::mt19937 rng(15);
    for (int it = 0; it < 30; ++it) {
        auto m = random_matrix(rng, 4, 4);
        GFp::Scope scope(1000003);
        Matrix<GFp> mp(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                mp(i, j) = GFp(m(i, j).value().get_num().get_si());
        EXPECT_EQ(rank(m), rank(mp));
    }
}

TEST(ExactLA, PrimeFieldArithmetic) {
    GFp::Scope scope(7);
    GFp a(3), b(5);
    EXPECT_EQ((a * b).value(), 1u);
    EXPECT_EQ((a / b * b).value(), 3u);
    EXPECT_EQ((-a).value(), 4u);
    EXPECT_EQ(GFp(-1).value(), 6u);
    EXPECT_THROW(GFp::Scope bad(8), InputError);
}

TEST(ExactLA, Inverse) {
    auto m = mat({{2, 1}, {1, 1}});
    auto inv = inverse(m);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(m * *inv, Matrix<Q>::identity(2));
    EXPECT_FALSE(inverse(mat({{1, 2}, {2, 4}})).has_value());
}
