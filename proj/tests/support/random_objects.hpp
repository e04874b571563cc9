#ifndef DGAR_TESTS_RANDOM_OBJECTS_HPP
#define DGAR_TESTS_RANDOM_OBJECTS_HPP

#include <dgar/dgmodule.hpp>

#include <cstdlib>
#include <random>

namespace dgar::testing {

inline std::uint64_t suite_seed(std::uint64_t fallback) {
    if (const char *s = std::getenv("DGA_AR_SEED"))
        return std::strtoull(s, nullptr, 10);
    return fallback;
}

template <class K>
K small_scalar(std::mt19937_64 &rng, int bound = 2) {
    std::uniform_int_distribution<int> d(-bound, bound);
    return K(d(rng));
}

// Random cycle of L in total degree t, biased towards nonzero classes.
template <class K>
Vec<K> random_cycle(const SemiFreeModule<K> &L, int t, std::mt19937_64 &rng) {
    const auto &M = L.total();
    auto Z = kernel(M.d(t));
    Vec<K> v(M.dim(t), K(0));
    for (auto &z : Z.vectors())
        axpy(v, small_scalar<K>(rng), z);
    return v;
}

// Iterated cones of maps Sigma^{-e}A -> L starting from a shifted copy of A.
template <class K>
SemiFreeModule<K> random_compact(const AlgebraPtr<K> &A, std::mt19937_64 &rng, int steps, int start_range = 2) {
    std::uniform_int_distribution<int> sd(-start_range, start_range);
    SemiFreeModule<K> L = free_module(A, {sd(rng)});
    for (int s = 0; s < steps; ++s) {
        auto H = cohomology_module(L);
        std::vector<int> cand;
        for (auto &[deg, n] : H.table().dims)
            cand.push_back(deg);
        int e;
        if (!cand.empty() && rng() % 5 != 0) {
            e = cand[rng() % cand.size()];
        } else {
            std::uniform_int_distribution<int> ed(L.min_degree() - 1, L.max_degree() + A->hi() + 1);
            e = ed(rng);
        }
        auto src = free_module(A, {e});
        GenMap<K> f;
        f.images.push_back(random_cycle(L, e, rng));
        L = mapping_cone(src, L, f);
    }
    return L;
}

// Random finite left module: dual of a random compact right module, or the augmentation.
template <class K>
FiniteModule<K> random_finite_left(const AlgebraPtr<K> &A, std::mt19937_64 &rng) {
    if (rng() % 6 == 0)
        return augmentation_module(A, Side::Left);
    auto L = random_compact(A, rng, static_cast<int>(rng() % 3));
    return dual(L.total());
}

} // namespace dgar::testing

#endif
