#ifndef DGAR_TESTS_HELPERS_HPP
#define DGAR_TESTS_HELPERS_HPP

#include <dgar/dgmodule.hpp>

namespace dgar::testing {

inline AlgebraPtr<Rational> sphere(int d) { return share(sphere_model<Rational>(d)); }

// cone of Sigma^{-e}A -> A sending the generator to z in A^e
template <class K>
SemiFreeModule<K> cone_on(const AlgebraPtr<K> &A, int e, Vec<K> z) {
    auto src = free_module(A, {e});
    auto tgt = free_module(A, {0});
    GenMap<K> f;
    f.images.push_back(std::move(z));
    return mapping_cone(src, tgt, f);
}

inline CohomologyTable table_of(std::map<int, std::size_t> dims) {
    CohomologyTable t;
    for (auto &[d, n] : dims)
        if (n) {
            t.dims[d] = n;
            if (!t.inf)
                t.inf = d;
            t.sup = d;
        }
    return t;
}

} // namespace dgar::testing

#endif
