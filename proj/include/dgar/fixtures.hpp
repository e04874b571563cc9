#ifndef DGAR_FIXTURES_HPP
#define DGAR_FIXTURES_HPP

#include "dgalgebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dgar {

namespace fixtures {

template <class K>
Vec<K> basis_vec(std::size_t n, std::size_t i) {
    return unit_vec<K>(n, i);
}

// k + k a + k b with a, b in degree 2 and all products of a, b zero.
template <class K>
DGAlgebra<K> nongorenstein() {
    DGAlgebraData<K> d;
    d.dims = {1, 0, 2};
    d.labels = {{"1"}, {}, {"a", "b"}};
    d.unit = {K(1)};
    d.mul[{0, 0}] = {K(1)};
    for (std::size_t i = 1; i <= 2; ++i) {
        d.mul[{0, i}] = basis_vec<K>(2, i - 1);
        d.mul[{i, 0}] = basis_vec<K>(2, i - 1);
    }
    return DGAlgebra<K>(d);
}

// H*(S^2 x S^3) with an acyclic pair u (deg 2) -> v (deg 3); products with u, v vanish.
template <class K>
DGAlgebra<K> gorenstein0235() {
    DGAlgebraData<K> d;
    d.dims = {1, 0, 2, 2, 0, 1};
    d.labels = {{"1"}, {}, {"x", "u"}, {"y", "v"}, {}, {"xy"}};
    d.unit = {K(1)};
    // global basis: 0 = 1, 1 = x, 2 = u, 3 = y, 4 = v, 5 = xy
    d.mul[{0, 0}] = {K(1)};
    for (std::size_t i = 1; i <= 4; ++i) {
        d.mul[{0, i}] = basis_vec<K>(2, (i - 1) % 2);
        d.mul[{i, 0}] = basis_vec<K>(2, (i - 1) % 2);
    }
    d.mul[{0, 5}] = {K(1)};
    d.mul[{5, 0}] = {K(1)};
    d.mul[{1, 3}] = {K(1)};
    d.mul[{3, 1}] = {K(1)};
    Matrix<K> m(2, 2);
    m(1, 1) = K(1);
    d.diff[2] = m;
    return DGAlgebra<K>(d);
}

// k x k in degree 0.
template <class K>
DGAlgebra<K> two_idempotents() {
    DGAlgebraData<K> d;
    d.dims = {2};
    d.labels = {{"e1", "e2"}};
    d.unit = {K(1), K(1)};
    d.mul[{0, 0}] = {K(1), K(0)};
    d.mul[{1, 1}] = {K(0), K(1)};
    return DGAlgebra<K>(d);
}

// Noncommutative algebra in degree 0 with basis 1, a, b: a^2 = a, ab = b, ba = b^2 = 0.
template <class K>
DGAlgebra<K> upper3() {
    DGAlgebraData<K> d;
    d.dims = {3};
    d.labels = {{"1", "a", "b"}};
    d.unit = {K(1), K(0), K(0)};
    for (std::size_t i = 0; i < 3; ++i) {
        d.mul[{0, i}] = basis_vec<K>(3, i);
        d.mul[{i, 0}] = basis_vec<K>(3, i);
    }
    d.mul[{1, 1}] = basis_vec<K>(3, 1);
    d.mul[{1, 2}] = basis_vec<K>(3, 2);
    return DGAlgebra<K>(d);
}

// S^2 with an acyclic pair u (deg 2) -> v (deg 3) adjoined.
template <class K>
DGAlgebra<K> sphere_with_acyclic_pair() {
    DGAlgebraData<K> d;
    d.dims = {1, 0, 2, 1};
    d.labels = {{"1"}, {}, {"x", "u"}, {"v"}};
    d.unit = {K(1)};
    d.mul[{0, 0}] = {K(1)};
    d.mul[{0, 1}] = {K(1), K(0)};
    d.mul[{1, 0}] = {K(1), K(0)};
    d.mul[{0, 2}] = {K(0), K(1)};
    d.mul[{2, 0}] = {K(0), K(1)};
    d.mul[{0, 3}] = {K(1)};
    d.mul[{3, 0}] = {K(1)};
    Matrix<K> m(1, 2);
    m(0, 1) = K(1);
    d.diff[2] = m;
    return DGAlgebra<K>(d);
}

inline std::vector<int> parse_ints(const std::string &s, const std::string &name) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception &) {
            throw InputError("fixture " + name + ": bad integer '" + tok + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

} // namespace fixtures

struct FixtureInfo {
    std::string name, description;
};

inline std::vector<FixtureInfo> fixture_list() {
    return {
        {"sphere:d", "cochains on S^d: k[x]/(x^2), |x| = d"},
        {"prodspheres:e,d", "H*(S^e) tensor H*(S^d), formal"},
        {"cp3", "k[x]/(x^4), |x| = 2"},
        {"ex62", "prodspheres:2,4"},
        {"exterior:a,b,...", "exterior algebra on generators of the given degrees (default 3,5)"},
        {"rigged:nongor", "k + k^2 in degree 2 with zero products; not Gorenstein"},
        {"rigged:gor0235", "H*(S^2 x S^3) plus an acyclic pair in degrees 2, 3"},
        {"rigged:acyclic", "S^2 plus an acyclic pair in degrees 2, 3"},
        {"rigged:twoidem", "k x k in degree 0"},
        {"rigged:upper3", "noncommutative 3-dimensional algebra in degree 0"},
    };
}

template <class K>
DGAlgebra<K> fixture(const std::string &spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto args = [&](std::size_t n) {
        auto v = fixtures::parse_ints(rest, spec);
        if (v.size() != n)
            throw InputError("fixture " + spec + ": expected " + std::to_string(n) + " parameter(s)");
        return v;
    };
    if (head == "sphere") {
        const int d = args(1)[0];
        if (d < 2)
            throw InputError("fixture " + spec + ": need d >= 2");
        return sphere_model<K>(d);
    }
    if (head == "prodspheres") {
        auto v = args(2);
        if (v[0] < 2 || v[1] < 2)
            throw InputError("fixture " + spec + ": need e, d >= 2");
        return product_of_spheres<K>(v[0], v[1]);
    }
    if (head == "cp3" && rest.empty())
        return truncated_polynomial<K>(2, 4);
    if (head == "ex62" && rest.empty())
        return product_of_spheres<K>(2, 4);
    if (head == "exterior")
        return exterior<K>(rest.empty() ? std::vector<int>{3, 5} : fixtures::parse_ints(rest, spec));
    if (head == "rigged") {
        if (rest == "nongor")
            return fixtures::nongorenstein<K>();
        if (rest == "gor0235")
            return fixtures::gorenstein0235<K>();
        if (rest == "acyclic")
            return fixtures::sphere_with_acyclic_pair<K>();
        if (rest == "twoidem")
            return fixtures::two_idempotents<K>();
        if (rest == "upper3")
            return fixtures::upper3<K>();
    }
    throw InputError("unknown fixture '" + spec + "'");
}

} // namespace dgar

#endif
