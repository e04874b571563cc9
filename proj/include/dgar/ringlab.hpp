#ifndef DGAR_RINGLAB_HPP
#define DGAR_RINGLAB_HPP

#include "resolve.hpp"

#include <random>
#include <string>
#include <variant>

namespace dgar {

// Finite-dimensional associative algebra given by structure constants.
template <class K>
class FDAlgebra {
public:
    FDAlgebra() = default;
    FDAlgebra(std::size_t n, std::vector<Vec<K>> products, Vec<K> unit)
        : n_(n), prod_(std::move(products)), unit_(std::move(unit)) {
        if (prod_.size() != n_ * n_ || unit_.size() != n_)
            throw InputError("FDAlgebra: table sizes do not match the dimension");
        for (auto &p : prod_)
            if (p.size() != n_)
                throw InputError("FDAlgebra: product vector has wrong length");
    }

    static FDAlgebra field() { return FDAlgebra(1, {{K(1)}}, {K(1)}); }

    // Full matrix algebra M_m(k), basis E_ij at index i*m + j.
    static FDAlgebra matrix_algebra(std::size_t m) {
        const std::size_t n = m * m;
        std::vector<Vec<K>> p(n * n, Vec<K>(n, K(0)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t l = 0; l < m; ++l)
                    p[(i * m + j) * n + (j * m + l)][i * m + l] = K(1);
        Vec<K> u(n, K(0));
        for (std::size_t i = 0; i < m; ++i)
            u[i * m + i] = K(1);
        return FDAlgebra(n, p, u);
    }

    static FDAlgebra product(const FDAlgebra &a, const FDAlgebra &b) {
        const std::size_t n = a.n_ + b.n_;
        std::vector<Vec<K>> p(n * n, Vec<K>(n, K(0)));
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t j = 0; j < a.n_; ++j)
                for (std::size_t k = 0; k < a.n_; ++k)
                    p[i * n + j][k] = a.prod_[i * a.n_ + j][k];
        for (std::size_t i = 0; i < b.n_; ++i)
            for (std::size_t j = 0; j < b.n_; ++j)
                for (std::size_t k = 0; k < b.n_; ++k)
                    p[(a.n_ + i) * n + a.n_ + j][a.n_ + k] = b.prod_[i * b.n_ + j][k];
        return FDAlgebra(n, p, concat(a.unit_, b.unit_));
    }

    std::size_t dim() const { return n_; }
    const Vec<K> &unit() const { return unit_; }
    const Vec<K> &basis_product(std::size_t i, std::size_t j) const { return prod_[i * n_ + j]; }

    Vec<K> mul(const Vec<K> &a, const Vec<K> &b) const {
        Vec<K> r(n_, K(0));
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i].is_zero())
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!b[j].is_zero())
                    axpy(r, a[i] * b[j], prod_[i * n_ + j]);
        }
        return r;
    }
    Matrix<K> left_mult(const Vec<K> &a) const {
        Matrix<K> m(n_, n_);
        for (std::size_t j = 0; j < n_; ++j)
            m.set_col(j, mul(a, unit_vec<K>(n_, j)));
        return m;
    }
    Matrix<K> right_mult(const Vec<K> &a) const {
        Matrix<K> m(n_, n_);
        for (std::size_t j = 0; j < n_; ++j)
            m.set_col(j, mul(unit_vec<K>(n_, j), a));
        return m;
    }
    bool is_unit(const Vec<K> &a) const { return n_ > 0 && inverse(left_mult(a)).has_value(); }

    ValidationReport validate() const {
        ValidationReport r;
        for (std::size_t i = 0; i < n_; ++i) {
            Vec<K> ei = unit_vec<K>(n_, i);
            if (mul(unit_, ei) != ei || mul(ei, unit_) != ei)
                r.add("unit", {i});
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k)
                    if (mul(prod_[i * n_ + j], unit_vec<K>(n_, k)) != mul(ei, prod_[j * n_ + k]))
                        r.add("associativity", {i, j, k});
        }
        return r;
    }

private:
    std::size_t n_ = 0;
    std::vector<Vec<K>> prod_;
    Vec<K> unit_;
};

// Subalgebra (possibly with a different unit, e.g. a corner eRe) spanned by a subspace.
template <class K>
FDAlgebra<K> restrict_algebra(const FDAlgebra<K> &R, const SubspaceBasis<K> &S, const Vec<K> &unit) {
    const std::size_t m = S.dim();
    std::vector<Vec<K>> p(m * m);
    auto vs = S.vectors();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            auto c = S.coordinates(R.mul(vs[i], vs[j]));
            if (!c)
                throw Error("restrict_algebra: subspace not closed under multiplication");
            p[i * m + j] = *c;
        }
    auto u = S.coordinates(unit);
    if (!u)
        throw Error("restrict_algebra: unit outside the subspace");
    return FDAlgebra<K>(m, p, *u);
}

template <class K>
struct RadicalData {
    SubspaceBasis<K> radical;
    std::size_t semisimple_dim = 0;
    bool split_over_k = false; // quotient known to be a product of copies of k
    std::size_t nilpotency_index = 0;
};

namespace detail {

template <class K>
SubspaceBasis<K> ideal_product(const FDAlgebra<K> &R, const SubspaceBasis<K> &I, const SubspaceBasis<K> &J) {
    std::vector<Vec<K>> v;
    for (auto &a : I.vectors())
        for (auto &b : J.vectors())
            v.push_back(R.mul(a, b));
    return SubspaceBasis<K>::span(R.dim(), v);
}

} // namespace detail

// Jacobson radical in characteristic 0: kernel of the trace form Tr(L_{xy}).
template <class K>
RadicalData<K> radical(const FDAlgebra<K> &R) {
    if constexpr (!K::char_zero) {
        throw Unsupported("radical: only characteristic 0 is supported");
    } else {
        if (!R.validate().ok())
            throw PreconditionError("radical: algebra is not associative and unital");
        const std::size_t n = R.dim();
        std::vector<Matrix<K>> L;
        for (std::size_t i = 0; i < n; ++i)
            L.push_back(R.left_mult(unit_vec<K>(n, i)));
        Matrix<K> G(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                K tr(0);
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l)
                        tr += L[i](k, l) * L[j](l, k);
                G(i, j) = tr;
            }
        RadicalData<K> d;
        d.radical = kernel(G);
        d.semisimple_dim = n - d.radical.dim();
        // two-sided ideal and nilpotent
        auto whole = SubspaceBasis<K>::whole(n);
        if (!d.radical.contains(detail::ideal_product(R, whole, d.radical)) ||
            !d.radical.contains(detail::ideal_product(R, d.radical, whole)))
            throw Error("radical: trace-form kernel is not a two-sided ideal");
        SubspaceBasis<K> P = d.radical;
        std::size_t k = 1;
        while (P.dim() > 0) {
            if (k > n + 1)
                throw Error("radical: trace-form kernel is not nilpotent");
            P = detail::ideal_product(R, P, d.radical);
            ++k;
        }
        d.nilpotency_index = k;
        d.split_over_k = d.semisimple_dim <= 1;
        return d;
    }
}

namespace poly {

// Coefficient vectors, lowest degree first, no trailing zeros (zero polynomial is empty).
template <class K>
using Poly = std::vector<K>;

template <class K>
void trim(Poly<K> &p) {
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

template <class K>
Poly<K> mul(const Poly<K> &a, const Poly<K> &b) {
    if (a.empty() || b.empty())
        return {};
    Poly<K> r(a.size() + b.size() - 1, K(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

template <class K>
Poly<K> sub(Poly<K> a, const Poly<K> &b) {
    if (a.size() < b.size())
        a.resize(b.size(), K(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(Poly<K> a, const Poly<K> &b) {
    if (b.empty())
        throw Error("polynomial division by zero");
    Poly<K> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, K(0));
    const K lead = b.back().inverse();
    while (a.size() >= b.size() && !a.empty()) {
        const std::size_t s = a.size() - b.size();
        const K c = a.back() * lead;
        q[s] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[s + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

// Extended gcd: returns (g, s, t) with s a + t b = g.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> ext_gcd(Poly<K> a, Poly<K> b) {
    Poly<K> s0{K(1)}, s1{}, t0{}, t1{K(1)};
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r;
        auto s2 = sub(s0, mul(q, s1));
        auto t2 = sub(t0, mul(q, t1));
        s0 = s1, s1 = s2, t0 = t1, t1 = t2;
    }
    return {a, s0, t0};
}

template <class K>
K eval(const Poly<K> &p, const K &x) {
    K r(0);
    for (std::size_t i = p.size(); i-- > 0;)
        r = r * x + p[i];
    return r;
}

// Rational roots by the rational root theorem; gives up on very large coefficients.
inline std::vector<Rational> rational_roots(Poly<Rational> p) {
    trim(p);
    std::vector<Rational> roots;
    if (p.size() <= 1)
        return roots;
    std::size_t z = 0;
    while (z < p.size() && p[z].is_zero())
        ++z;
    if (z > 0)
        roots.push_back(Rational(0));
    p.erase(p.begin(), p.begin() + z);
    if (p.size() <= 1)
        return roots;
    mpz_class l = 1;
    for (auto &c : p)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (auto &c : p)
        ic.push_back(mpz_class(c.value() * l));
    auto divisors = [](mpz_class n) -> std::optional<std::vector<mpz_class>> {
        n = abs(n);
        if (n > mpz_class("1000000000000"))
            return std::nullopt;
        std::vector<mpz_class> d;
        for (mpz_class q = 1; q * q <= n; ++q)
            if (n % q == 0) {
                d.push_back(q);
                if (q * q != n)
                    d.push_back(n / q);
            }
        return d;
    };
    auto dp = divisors(ic.front()), dq = divisors(ic.back());
    if (!dp || !dq)
        return roots;
    for (auto &a : *dp)
        for (auto &b : *dq)
            for (int s : {1, -1}) {
                Rational r(mpq_class(s * a, b));
                if (eval(p, r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end())
                    roots.push_back(r);
            }
    return roots;
}

} // namespace poly

namespace detail {

template <class K>
Vec<K> poly_of_element(const FDAlgebra<K> &R, const poly::Poly<K> &p, const Vec<K> &x) {
    Vec<K> r(R.dim(), K(0)), pw = R.unit();
    for (std::size_t i = 0; i < p.size(); ++i) {
        axpy(r, p[i], pw);
        pw = R.mul(pw, x);
    }
    return r;
}

// Minimal polynomial of the image of x in R / I (monic, lowest degree first).
template <class K>
poly::Poly<K> min_poly_mod(const FDAlgebra<K> &R, const SubspaceBasis<K> &I, const Vec<K> &x) {
    const std::size_t n = R.dim();
    std::vector<Vec<K>> pw{R.unit()};
    for (std::size_t k = 1; k <= n + 1; ++k) {
        Vec<K> next = R.mul(pw.back(), x);
        // solve next = sum c_i pw_i mod I
        std::vector<Vec<K>> cols = pw;
        for (auto &v : I.vectors())
            cols.push_back(v);
        auto sol = solve(Matrix<K>::from_columns(cols, n), next);
        if (sol) {
            poly::Poly<K> p(k + 1, K(0));
            for (std::size_t i = 0; i < k; ++i)
                p[i] = -(*sol)[i];
            p[k] = K(1);
            return p;
        }
        pw.push_back(next);
    }
    throw Error("min_poly_mod: no relation found");
}

template <class K>
Vec<K> lift_idempotent(const FDAlgebra<K> &R, Vec<K> e) {
    for (int it = 0; it < 64; ++it) {
        Vec<K> e2 = R.mul(e, e);
        if (e2 == e)
            return e;
        Vec<K> e3 = R.mul(e2, e);
        Vec<K> n = scaled(e2, K(3));
        axpy(n, K(-2), e3);
        e = n;
    }
    throw Error("lift_idempotent: no convergence");
}

} // namespace detail

// Nontrivial idempotent of R found through a split factor of a minimal polynomial
// in R/rad, or nothing when the candidates are exhausted.
template <class K>
std::optional<Vec<K>> find_idempotent(const FDAlgebra<K> &R, const RadicalData<K> &rd, std::uint64_t seed = 1) {
    if constexpr (!K::char_zero) {
        (void)R, (void)rd, (void)seed;
        throw Unsupported("find_idempotent: only characteristic 0 is supported");
    } else {
        if (rd.semisimple_dim <= 1)
            return std::nullopt;
        const std::size_t n = R.dim();
        auto comp = complement(rd.radical, SubspaceBasis<K>::whole(n)).vectors();
        std::vector<Vec<K>> cands = comp;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = i + 1; j < comp.size(); ++j) {
                Vec<K> v = comp[i];
                axpy(v, K(2), comp[j]);
                cands.push_back(v);
            }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> dist(-3, 3);
        for (int k = 0; k < 24; ++k) {
            Vec<K> v(n, K(0));
            for (auto &c : comp)
                axpy(v, K(dist(rng)), c);
            cands.push_back(v);
        }
        for (auto &x : cands) {
            auto mu = detail::min_poly_mod(R, rd.radical, x);
            if (mu.size() < 3)
                continue;
            for (auto &r : poly::rational_roots(mu)) {
                // mu = (t - r)^m g with g(r) != 0
                poly::Poly<K> lin{-r, K(1)}, u{K(1)}, g = mu;
                while (true) {
                    auto [q, rem] = poly::divmod(g, lin);
                    if (!rem.empty())
                        break;
                    g = q;
                    u = poly::mul(u, lin);
                }
                if (g.size() < 2)
                    continue;
                auto [gcd, s, t] = poly::ext_gcd(u, g);
                if (gcd.size() != 1)
                    continue;
                // e0 = t g / gcd is 1 mod (t - r)^m and 0 mod g
                auto e0poly = poly::mul(t, g);
                for (auto &c : e0poly)
                    c = c / gcd[0];
                Vec<K> e = detail::lift_idempotent(R, detail::poly_of_element(R, e0poly, x));
                if (!is_zero_vec(e) && e != R.unit())
                    return e;
            }
        }
        return std::nullopt;
    }
}

enum class LocalVerdict { Local, NotLocal, Inconclusive };

inline std::string to_string(LocalVerdict v) {
    switch (v) {
    case LocalVerdict::Local:
        return "Local";
    case LocalVerdict::NotLocal:
        return "NotLocal";
    default:
        return "Inconclusive";
    }
}

template <class K>
struct LocalityReport {
    LocalVerdict verdict = LocalVerdict::Inconclusive;
    RadicalData<K> radical;
    std::optional<Vec<K>> idempotent; // witness for NotLocal
};

template <class K>
LocalityReport<K> is_local(const FDAlgebra<K> &R) {
    LocalityReport<K> rep;
    if (R.dim() == 0) {
        rep.verdict = LocalVerdict::NotLocal;
        return rep;
    }
    rep.radical = radical(R);
    if (rep.radical.semisimple_dim == 1) {
        rep.verdict = LocalVerdict::Local;
        return rep;
    }
    rep.idempotent = find_idempotent(R, rep.radical);
    rep.verdict = rep.idempotent ? LocalVerdict::NotLocal : LocalVerdict::Inconclusive;
    return rep;
}

// Bimodule over an FDAlgebra: left and right action matrices per basis element.
template <class K>
struct FDBimodule {
    std::size_t dim = 0;
    std::vector<Matrix<K>> left, right;

    static FDBimodule regular(const FDAlgebra<K> &R) {
        FDBimodule m;
        m.dim = R.dim();
        for (std::size_t i = 0; i < R.dim(); ++i) {
            m.left.push_back(R.left_mult(unit_vec<K>(R.dim(), i)));
            m.right.push_back(R.right_mult(unit_vec<K>(R.dim(), i)));
        }
        return m;
    }
    Matrix<K> left_elem(const Vec<K> &r) const {
        Matrix<K> m(dim, dim);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!r[i].is_zero())
                m = m + left[i].scaled(r[i]);
        return m;
    }
    Matrix<K> right_elem(const Vec<K> &r) const {
        Matrix<K> m(dim, dim);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!r[i].is_zero())
                m = m + right[i].scaled(r[i]);
        return m;
    }
};

template <class K>
ValidationReport validate(const FDAlgebra<K> &R, const FDBimodule<K> &M) {
    ValidationReport r;
    const std::size_t n = R.dim();
    if (M.left.size() != n || M.right.size() != n) {
        r.add("shape", {});
        return r;
    }
    if (!(M.left_elem(R.unit()) == Matrix<K>::identity(M.dim)) || !(M.right_elem(R.unit()) == Matrix<K>::identity(M.dim)))
        r.add("unit", {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto &p = R.basis_product(i, j);
            // (ri rj) m = ri (rj m);  m (ri rj) = (m ri) rj;  (ri m) rj = ri (m rj)
            if (!(M.left_elem(p) == M.left[i] * M.left[j]))
                r.add("left associativity", {i, j});
            if (!(M.right_elem(p) == M.right[j] * M.right[i]))
                r.add("right associativity", {i, j});
            if (!(M.right[j] * M.left[i] == M.left[i] * M.right[j]))
                r.add("compatibility", {i, j});
        }
    return r;
}

// R ⋉ M with (r, m)(r', m') = (rr', m r' + r m').
template <class K>
FDAlgebra<K> trivial_extension(const FDAlgebra<K> &R, const FDBimodule<K> &M) {
    auto rep = validate(R, M);
    if (!rep.ok())
        throw PreconditionError("trivial_extension: bimodule axiom '" + rep.failures.front().axiom + "' fails");
    const std::size_t n = R.dim(), d = M.dim, N = n + d;
    std::vector<Vec<K>> p(N * N, Vec<K>(N, K(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                p[i * N + j][k] = R.basis_product(i, j)[k];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < d; ++a) {
            // r_i . m_a and m_a . r_i
            for (std::size_t b = 0; b < d; ++b) {
                p[i * N + n + a][n + b] = M.left[i](b, a);
                p[(n + a) * N + i][n + b] = M.right[i](b, a);
            }
        }
    Vec<K> u = R.unit();
    u.resize(N, K(0));
    return FDAlgebra<K>(N, p, u);
}

// ---------------------------------------------------------------------------
// Endomorphism algebras of semi-free modules

template <class K>
struct EndoAlgebra {
    FDAlgebra<K> algebra; // basis = chosen representative classes, product = composition f g = f o g
    HomD<K> hom;
};

template <class K>
EndoAlgebra<K> endo_algebra(const SemiFreeModule<K> &L) {
    HomD<K> H = hom_D(L, L);
    const std::size_t n = H.dim();
    std::vector<Vec<K>> p(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p[i * n + j] = H.coords(compose(L, L.total(), H.basis()[i], H.basis()[j], L));
    Vec<K> u = n ? H.coords(identity_map(L)) : Vec<K>();
    return {FDAlgebra<K>(n, p, u), std::move(H)};
}

// Degree-0 cycles of End(L): the strict endomorphism algebra of the presentation.
template <class K>
struct StrictEndo {
    FDAlgebra<K> algebra;
    SubspaceBasis<K> cycles; // inside Hom^0
    HomComplex<K> hom;
    GenMap<K> map(const Vec<K> &coords) const {
        Vec<K> v(cycles.ambient_dim(), K(0));
        auto vs = cycles.vectors();
        for (std::size_t i = 0; i < coords.size(); ++i)
            axpy(v, coords[i], vs[i]);
        return hom.decode(0, v);
    }
};

template <class K>
StrictEndo<K> strict_endo_algebra(const SemiFreeModule<K> &L) {
    HomComplex<K> hc = hom_complex(L, L.total());
    auto Z = kernel(hc.complex().d(0));
    const std::size_t n = Z.dim();
    auto zs = Z.vectors();
    std::vector<GenMap<K>> maps;
    for (auto &z : zs)
        maps.push_back(hc.decode(0, z));
    std::vector<Vec<K>> p(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p[i * n + j] = *Z.coordinates(hc.encode(compose(L, L.total(), maps[i], maps[j], L)));
    Vec<K> u = n ? *Z.coordinates(hc.encode(identity_map(L))) : Vec<K>();
    return {FDAlgebra<K>(n, p, u), Z, std::move(hc)};
}

// ---------------------------------------------------------------------------
// Isomorphism test through the composition pairing

enum class IsoVerdict { Isomorphic, NotIsomorphic, Inconclusive };

inline std::string to_string(IsoVerdict v) {
    switch (v) {
    case IsoVerdict::Isomorphic:
        return "Isomorphic";
    case IsoVerdict::NotIsomorphic:
        return "NotIsomorphic";
    default:
        return "Inconclusive";
    }
}

template <class K>
struct IsoResult {
    IsoVerdict verdict = IsoVerdict::Inconclusive;
    std::optional<GenMap<K>> f, g; // f: c -> c2, g: c2 -> c
    bool strict = false;           // f is an isomorphism of DG modules
    std::size_t hom_dim = 0, hom_back_dim = 0;
    std::string reason;
};

namespace detail {

// Functional End(c) -> End(c)/rad = k, normalized at the unit.
template <class K>
Vec<K> residue_functional(const FDAlgebra<K> &E, const RadicalData<K> &rd) {
    const std::size_t n = E.dim();
    // phi vanishes on rad and phi(1) = 1
    std::vector<Vec<K>> rows = rd.radical.vectors();
    rows.push_back(E.unit());
    Vec<K> rhs(rows.size(), K(0));
    rhs.back() = K(1);
    auto phi = solve(Matrix<K>::from_rows(rows, n), rhs);
    if (!phi)
        throw Error("residue_functional: unit lies in the radical");
    return *phi;
}

template <class K>
K dot(const Vec<K> &a, const Vec<K> &b) {
    K s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

template <class K>
bool total_map_invertible(const SemiFreeModule<K> &c, const SemiFreeModule<K> &c2, const GenMap<K> &f) {
    const auto &T = c.total(), &T2 = c2.total();
    const int lo = std::min(T.lo(), T2.lo()), hi = std::max(T.hi(), T2.hi());
    for (int t = lo; t <= hi; ++t) {
        if (T.dim(t) != T2.dim(t))
            return false;
        if (T.dim(t) == 0)
            continue;
        if (!inverse(map_matrix(c, T2, f, t)))
            return false;
    }
    return true;
}

// Non-local case: an isomorphism c -> c2 forces Hom(c, c2), Hom(c2, c), End(c), End(c2) and H* to agree.
// Isomorphisms form a nonempty Zariski-open subset of Hom(c, c2) when one exists, so generic
// combinations are tried; a candidate is accepted only once both one-sided inverses are solved for.
template <class K>
IsoResult<K> iso_by_inverses(const SemiFreeModule<K> &c, const SemiFreeModule<K> &c2, const EndoAlgebra<K> &E1,
                             const EndoAlgebra<K> &E2, const HomD<K> &H12, const HomD<K> &H21) {
    IsoResult<K> res;
    res.hom_dim = H12.dim();
    res.hom_back_dim = H21.dim();
    const std::size_t n = E1.algebra.dim();
    if (!(cohomology_module(c).table() == cohomology_module(c2).table()) || E2.algebra.dim() != n ||
        H12.dim() != n || H21.dim() != n) {
        res.verdict = IsoVerdict::NotIsomorphic;
        res.reason = "cohomology or Hom dimensions differ";
        return res;
    }
    std::mt19937_64 rng(0x15);
    constexpr int attempts = 16;
    for (int k = 0; k < attempts; ++k) {
        Vec<K> w(n);
        for (auto &x : w)
            x = K(static_cast<long>(rng() % 97) - 48);
        const GenMap<K> f = H12.from_coords(w);
        Matrix<K> right(n, n), left(n, n);
        for (std::size_t b = 0; b < n; ++b) {
            const GenMap<K> &g = H21.basis()[b];
            right.set_col(b, E2.hom.coords(compose(c, c2.total(), f, g, c2)));
            left.set_col(b, E1.hom.coords(compose(c2, c.total(), g, f, c)));
        }
        auto gr = solve(right, E2.algebra.unit());
        auto gl = solve(left, E1.algebra.unit());
        if (!gr || !gl)
            continue;
        res.verdict = IsoVerdict::Isomorphic;
        res.f = f;
        res.g = H21.from_coords(*gr);
        if (c.is_minimal() && c2.is_minimal())
            res.strict = total_map_invertible(c, c2, f);
        res.reason = "generic map has verified left and right inverses";
        return res;
    }
    res.reason = "endomorphism algebras are not both local and no generic map was invertible";
    return res;
}

} // namespace detail

template <class K>
IsoResult<K> iso_test(const SemiFreeModule<K> &c, const SemiFreeModule<K> &c2) {
    IsoResult<K> res;
    if (!same_algebra(c.alg(), c2.alg()))
        throw InputError("iso_test: algebras differ");
    const bool z1 = cohomology_module(c).table().is_zero(), z2 = cohomology_module(c2).table().is_zero();
    if (z1 || z2) {
        if (z1 && z2) {
            res.verdict = IsoVerdict::Isomorphic;
            res.f = zero_map(c, c2.total());
            res.g = zero_map(c2, c.total());
            res.reason = "both objects are zero in the derived category";
        } else {
            res.verdict = IsoVerdict::NotIsomorphic;
            res.reason = "exactly one object is zero";
        }
        return res;
    }
    auto E1 = endo_algebra(c), E2 = endo_algebra(c2);
    auto H12 = hom_D(c, c2), H21 = hom_D(c2, c);
    res.hom_dim = H12.dim();
    res.hom_back_dim = H21.dim();
    auto l1 = is_local(E1.algebra), l2 = is_local(E2.algebra);
    if (l1.verdict != LocalVerdict::Local || l2.verdict != LocalVerdict::Local)
        return detail::iso_by_inverses(c, c2, E1, E2, H12, H21);
    const Vec<K> phi = detail::residue_functional(E1.algebra, l1.radical);
    for (std::size_t a = 0; a < H12.dim(); ++a)
        for (std::size_t b = 0; b < H21.dim(); ++b) {
            const GenMap<K> &f = H12.basis()[a];
            const GenMap<K> &g = H21.basis()[b];
            const K p = detail::dot(phi, E1.hom.coords(compose(c2, c.total(), g, f, c)));
            if (p.is_zero())
                continue;
            GenMap<K> gs = scale_map(g, p.inverse());
            const Vec<K> gf = E1.hom.coords(compose(c2, c.total(), gs, f, c));
            const Vec<K> fg = E2.hom.coords(compose(c, c2.total(), f, gs, c2));
            if (!E1.algebra.is_unit(gf) || !E2.algebra.is_unit(fg)) {
                res.reason = "pairing nonzero but composites failed to verify as units";
                return res;
            }
            res.verdict = IsoVerdict::Isomorphic;
            res.f = f;
            res.g = gs;
            if (c.is_minimal() && c2.is_minimal())
                res.strict = detail::total_map_invertible(c, c2, f);
            res.reason = "composition pairing is nonzero";
            return res;
        }
    res.verdict = IsoVerdict::NotIsomorphic;
    res.reason = "composition pairing into End/rad vanishes identically";
    return res;
}

// ---------------------------------------------------------------------------
// Decomposition into indecomposables

template <class K>
FiniteModule<K> submodule(const FiniteModule<K> &M, const std::map<int, SubspaceBasis<K>> &S) {
    auto at = [&](int t) {
        auto it = S.find(t);
        return it == S.end() ? SubspaceBasis<K>(M.dim(t)) : it->second;
    };
    std::vector<std::size_t> dims;
    for (int t = M.lo(); t <= M.hi(); ++t)
        dims.push_back(at(t).dim());
    auto express = [&](int t, const Vec<K> &v) {
        auto c = at(t).coordinates(v);
        if (!c)
            throw Error("submodule: subspace not closed under d and the action");
        return *c;
    };
    return make_finite_module<K>(
        M.alg(), M.lo(), dims,
        [&](int t, std::size_t c, std::size_t r) {
            Matrix<K> m(r, c);
            auto vs = at(t).vectors();
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (r)
                    m.set_col(j, express(t + 1, M.apply_d(t, vs[j])));
                else if (!is_zero_vec(M.apply_d(t, vs[j])))
                    throw Error("submodule: not closed under d");
            return m;
        },
        [&](int t, std::size_t b, std::size_t c, std::size_t r) {
            Matrix<K> m(r, c);
            const int u = M.alg()->degree_of(b);
            auto vs = at(t).vectors();
            for (std::size_t j = 0; j < vs.size(); ++j) {
                Vec<K> img = M.act(t, b).apply(vs[j]);
                if (r)
                    m.set_col(j, express(t + u, img));
                else if (!is_zero_vec(img))
                    throw Error("submodule: not closed under the action");
            }
            return m;
        },
        M.side());
}

template <class K>
struct Decomposition {
    bool obstruction = false;
    std::string reason;
    std::vector<SemiFreeModule<K>> summands;
    std::vector<Vec<K>> idempotents; // in strict endomorphism coordinates
};

template <class K>
Decomposition<K> decompose(const SemiFreeModule<K> &y) {
    Decomposition<K> out;
    SemiFreeModule<K> L = y;
    if (!y.is_minimal()) {
        auto R = minimal_semifree_resolution(y.total(), default_cutoff(y.total()));
        if (!R.terminated)
            throw PreconditionError("decompose: object is not compact within the cutoff");
        L = R.resolution;
    }
    if (L.rank() == 0)
        return out;
    auto Z = strict_endo_algebra(L);
    const auto &E = Z.algebra;
    std::vector<Vec<K>> stack{E.unit()}, prim;
    while (!stack.empty()) {
        Vec<K> e = stack.back();
        stack.pop_back();
        std::vector<Vec<K>> span;
        for (std::size_t i = 0; i < E.dim(); ++i)
            span.push_back(E.mul(E.mul(e, unit_vec<K>(E.dim(), i)), e));
        auto S = SubspaceBasis<K>::span(E.dim(), span);
        FDAlgebra<K> corner = restrict_algebra(E, S, e);
        auto rd = radical(corner);
        if (rd.semisimple_dim == 1) {
            prim.push_back(e);
            continue;
        }
        auto f = find_idempotent(corner, rd);
        if (!f) {
            out.obstruction = true;
            out.reason = "semisimple quotient of a corner algebra is not split over the base field";
            return out;
        }
        Vec<K> fv(E.dim(), K(0));
        auto sv = S.vectors();
        for (std::size_t i = 0; i < f->size(); ++i)
            axpy(fv, (*f)[i], sv[i]);
        Vec<K> rest = e;
        axpy(rest, K(-1), fv);
        stack.push_back(rest);
        stack.push_back(fv);
    }
    for (auto &e : prim) {
        GenMap<K> m = Z.map(e);
        std::map<int, SubspaceBasis<K>> img;
        for (int t = L.total().lo(); t <= L.total().hi(); ++t)
            img[t] = image(map_matrix(L, L.total(), m, t));
        FiniteModule<K> part = submodule(L.total(), img);
        auto R = minimal_semifree_resolution(part, default_cutoff(part));
        if (!R.terminated)
            throw Error("decompose: summand resolution did not terminate");
        out.summands.push_back(R.resolution);
        out.idempotents.push_back(e);
    }
    return out;
}

} // namespace dgar

#endif
