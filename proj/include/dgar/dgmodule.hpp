#ifndef DGAR_DGMODULE_HPP
#define DGAR_DGMODULE_HPP

#include "dgalgebra.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dgar {

// Which way the stored algebra acts. Left modules over A are stored as right
// modules over A^op with a x = (-1)^{|a||x|} x a.
enum class Side { Right, Left };

// Finite-dimensional right DG module over alg(): graded pieces, differential
// and action matrices per (degree, algebra basis element).
template <class K>
class FiniteModule {
public:
    FiniteModule() = default;
    FiniteModule(AlgebraPtr<K> alg, int lo, std::vector<std::size_t> dims, std::vector<Matrix<K>> diff,
                 std::vector<Matrix<K>> action, Side side = Side::Right)
        : alg_(std::move(alg)), lo_(lo), dims_(std::move(dims)), diff_(std::move(diff)), act_(std::move(action)),
          side_(side) {
        const std::size_t n = alg_->total_dim();
        if (diff_.size() != dims_.size() || act_.size() != dims_.size() * n)
            throw InputError("FiniteModule: table sizes do not match the degree window");
        for (int t = lo_; t <= hi(); ++t) {
            const auto &m = diff_[t - lo_];
            if (m.rows() != dim(t + 1) || m.cols() != dim(t))
                throw InputError("FiniteModule: differential in degree " + std::to_string(t) + " has wrong shape");
            for (std::size_t b = 0; b < n; ++b) {
                const auto &a = act_[(t - lo_) * n + b];
                if (a.rows() != dim(t + alg_->degree_of(b)) || a.cols() != dim(t))
                    throw InputError("FiniteModule: action matrix has wrong shape");
            }
        }
    }

    // The zero module.
    static FiniteModule zero(AlgebraPtr<K> alg, Side side = Side::Right) {
        return FiniteModule(std::move(alg), 0, {}, {}, {}, side);
    }

    const AlgebraPtr<K> &alg() const { return alg_; }
    Side side() const { return side_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    std::size_t dim(int t) const {
        if (t < lo_ || t > hi())
            return 0;
        return dims_[t - lo_];
    }
    std::size_t total_dim() const {
        std::size_t s = 0;
        for (auto d : dims_)
            s += d;
        return s;
    }
    const std::vector<std::size_t> &dims() const { return dims_; }

    Matrix<K> d(int t) const {
        if (t < lo_ || t > hi())
            return Matrix<K>(dim(t + 1), dim(t));
        return diff_[t - lo_];
    }
    Vec<K> apply_d(int t, const Vec<K> &v) const {
        if (t < lo_ || t > hi())
            return Vec<K>(dim(t + 1), K(0));
        return diff_[t - lo_].apply(v);
    }
    // Action of basis element b on M^t.
    Matrix<K> act(int t, std::size_t b) const {
        if (t < lo_ || t > hi())
            return Matrix<K>(dim(t + alg_->degree_of(b)), dim(t));
        return act_[(t - lo_) * alg_->total_dim() + b];
    }
    // x a for x in M^t and homogeneous a in A^s.
    Vec<K> act(int t, const Vec<K> &x, int s, const Vec<K> &a) const {
        Vec<K> r(dim(t + s), K(0));
        if (r.empty() || x.empty())
            return r;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero())
                axpy(r, a[i], act(t, alg_->global(s, i)).apply(x));
        return r;
    }

    Complex<K> as_complex() const {
        Complex<K> c;
        c.lo = lo_;
        c.dims = dims_;
        c.diff = diff_;
        return c;
    }

    const std::vector<Matrix<K>> &diff_tables() const { return diff_; }
    const std::vector<Matrix<K>> &action_tables() const { return act_; }

private:
    AlgebraPtr<K> alg_;
    int lo_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<Matrix<K>> diff_;
    std::vector<Matrix<K>> act_;
    Side side_ = Side::Right;
};

template <class K>
ValidationReport validate(const FiniteModule<K> &m) {
    ValidationReport r;
    const auto &A = *m.alg();
    const std::size_t n = A.total_dim();
    for (int t = m.lo(); t <= m.hi(); ++t) {
        if (!(m.d(t + 1) * m.d(t)).is_zero())
            r.add("d^2 = 0", {static_cast<std::size_t>(t - m.lo())});
        for (std::size_t x = 0; x < m.dim(t); ++x) {
            Vec<K> ex = unit_vec<K>(m.dim(t), x);
            if (m.act(t, ex, 0, A.unit()) != ex)
                r.add("unit", {static_cast<std::size_t>(t - m.lo()), x});
            Vec<K> dx = m.apply_d(t, ex);
            for (std::size_t a = 0; a < n; ++a) {
                const int s = A.degree_of(a);
                Vec<K> ea = unit_vec<K>(A.dim(s), A.local_of(a));
                Vec<K> xa = m.act(t, a).apply(ex);
                // d(xa) = d(x)a + (-1)^{|x|} x d(a)
                Vec<K> lhs = m.apply_d(t + s, xa);
                Vec<K> rhs = m.act(t + 1, a).apply(dx);
                axpy(rhs, signed_one<K>(t), m.act(t, ex, s + 1, A.apply_d(s, ea)));
                if (lhs != rhs)
                    r.add("Leibniz", {static_cast<std::size_t>(t - m.lo()), x, a});
                for (std::size_t b = 0; b < n; ++b) {
                    const int u = A.degree_of(b);
                    Vec<K> lhs2 = m.act(t + s, b).apply(xa);
                    Vec<K> rhs2 = m.act(t, ex, s + u, A.product(a, b));
                    if (lhs2 != rhs2)
                        r.add("associativity", {static_cast<std::size_t>(t - m.lo()), x, a, b});
                }
            }
        }
    }
    return r;
}

template <class K>
Cohomology<K> cohomology_module(const FiniteModule<K> &m) {
    return Cohomology<K>(m.as_complex());
}

// Sigma^n M: (Sigma^n M)^i = M^{i+n}, differential (-1)^n d, action unchanged.
template <class K>
FiniteModule<K> shift(const FiniteModule<K> &m, int n) {
    std::vector<Matrix<K>> diff = m.diff_tables();
    if (n % 2 != 0)
        for (auto &d : diff)
            d = d.scaled(K(-1));
    return FiniteModule<K>(m.alg(), m.lo() - n, m.dims(), diff, m.action_tables(), m.side());
}

// Builds a FiniteModule from a degree window and callbacks for d and the action.
template <class K, class DiffFn, class ActFn>
FiniteModule<K> make_finite_module(AlgebraPtr<K> alg, int lo, std::vector<std::size_t> dims, DiffFn dfn, ActFn afn,
                                   Side side = Side::Right) {
    const std::size_t n = alg->total_dim();
    const int hi = lo + static_cast<int>(dims.size()) - 1;
    auto dim = [&](int t) -> std::size_t { return (t < lo || t > hi) ? 0 : dims[t - lo]; };
    std::vector<Matrix<K>> diff, act;
    for (int t = lo; t <= hi; ++t) {
        diff.push_back(dfn(t, dim(t), dim(t + 1)));
        for (std::size_t b = 0; b < n; ++b)
            act.push_back(afn(t, b, dim(t), dim(t + alg->degree_of(b))));
    }
    return FiniteModule<K>(std::move(alg), lo, std::move(dims), std::move(diff), std::move(act), side);
}

// A regarded as a right module over itself.
template <class K>
FiniteModule<K> regular_module(const AlgebraPtr<K> &alg) {
    const auto &A = *alg;
    std::vector<std::size_t> dims;
    for (int t = A.lo(); t <= A.hi(); ++t)
        dims.push_back(A.dim(t));
    return make_finite_module<K>(
        alg, A.lo(), dims, [&](int t, std::size_t, std::size_t) { return A.d(t); },
        [&](int t, std::size_t b, std::size_t, std::size_t) { return A.right_mult(t, b); });
}

// k = A/A^{>=1}, as a right A-module (Side::Right) or left A-module (stored over A^op).
template <class K>
FiniteModule<K> augmentation_module(const AlgebraPtr<K> &alg, Side side = Side::Right) {
    if (!alg->is_simply_connected_model())
        throw PreconditionError("augmentation_module: algebra is not a simply connected model");
    AlgebraPtr<K> acting = side == Side::Right ? alg : share(opposite(*alg));
    const K scale = alg->unit()[0].inverse();
    const std::size_t e0 = alg->global(0, 0);
    return make_finite_module<K>(
        acting, 0, {1}, [](int, std::size_t c, std::size_t r) { return Matrix<K>(r, c); },
        [&](int, std::size_t b, std::size_t c, std::size_t r) {
            Matrix<K> m(r, c);
            if (b == e0)
                m(0, 0) = scale;
            return m;
        },
        side);
}

// ---------------------------------------------------------------------------
// Semi-free modules

struct Generator {
    std::string label;
    int degree = 0;
    bool operator==(const Generator &) const = default;
};

template <class K>
class SemiFreeModule {
public:
    using CoeffMap = std::map<std::pair<std::size_t, std::size_t>, Vec<K>>; // (j, i) with i < j

    SemiFreeModule() = default;
    SemiFreeModule(AlgebraPtr<K> alg, std::vector<Generator> gens, CoeffMap coeffs)
        : alg_(std::move(alg)), gens_(std::move(gens)) {
        const auto &A = *alg_;
        for (auto &[key, v] : coeffs) {
            auto [j, i] = key;
            if (i >= j || j >= gens_.size())
                throw InputError("SemiFreeModule: coefficient (" + std::to_string(j) + "," + std::to_string(i) +
                                 ") is not strictly lower triangular");
            const int s = gens_[j].degree - gens_[i].degree + 1;
            if (v.size() != A.dim(s))
                throw InputError("SemiFreeModule: coefficient (" + std::to_string(j) + "," + std::to_string(i) +
                                 ") must lie in A^" + std::to_string(s));
            if (!is_zero_vec(v))
                coeffs_[key] = v;
        }
        materialize();
        for (int t = total_.lo(); t <= total_.hi(); ++t)
            if (!(total_.d(t + 1) * total_.d(t)).is_zero())
                throw PreconditionError("SemiFreeModule: d^2 != 0 (degree " + std::to_string(t) + ")");
    }

    const AlgebraPtr<K> &alg() const { return alg_; }
    const std::vector<Generator> &gens() const { return gens_; }
    std::size_t rank() const { return gens_.size(); }
    int degree(std::size_t j) const { return gens_[j].degree; }
    const CoeffMap &coeffs() const { return coeffs_; }
    Vec<K> coeff(std::size_t j, std::size_t i) const {
        auto it = coeffs_.find({j, i});
        if (it != coeffs_.end())
            return it->second;
        return Vec<K>(alg_->dim(gens_[j].degree - gens_[i].degree + 1), K(0));
    }
    const FiniteModule<K> &total() const { return total_; }

    // Position of g_j . b (b a global basis index of A) in total degree deg g_j + |b|.
    std::size_t index_of(std::size_t j, std::size_t b) const { return index_[j * alg_->total_dim() + b]; }
    // g_j . a for homogeneous a in A^{t - deg g_j}, as a vector of total degree t.
    Vec<K> embed(std::size_t j, int t, const Vec<K> &a) const {
        Vec<K> v(total_.dim(t), K(0));
        const int s = t - gens_[j].degree;
        for (std::size_t x = 0; x < a.size(); ++x)
            if (!a[x].is_zero())
                v[index_of(j, alg_->global(s, x))] += a[x];
        return v;
    }
    // Coefficient in A^{t - deg g_j} of g_j inside v in total degree t.
    Vec<K> component(std::size_t j, int t, const Vec<K> &v) const {
        const int s = t - gens_[j].degree;
        Vec<K> a(alg_->dim(s), K(0));
        for (std::size_t x = 0; x < a.size(); ++x)
            a[x] = v[index_of(j, alg_->global(s, x))];
        return a;
    }
    // The generator g_j as a vector in total degree deg g_j.
    Vec<K> generator_vector(std::size_t j) const { return embed(j, gens_[j].degree, alg_->unit()); }

    bool is_minimal() const {
        for (auto &[key, v] : coeffs_)
            if (gens_[key.first].degree - gens_[key.second].degree + 1 == 0 && !is_zero_vec(v))
                return false;
        return true;
    }

    int min_degree() const {
        int m = gens_.empty() ? 0 : gens_[0].degree;
        for (auto &g : gens_)
            m = std::min(m, g.degree);
        return m;
    }
    int max_degree() const {
        int m = gens_.empty() ? 0 : gens_[0].degree;
        for (auto &g : gens_)
            m = std::max(m, g.degree);
        return m;
    }

private:
    void materialize() {
        const auto &A = *alg_;
        const std::size_t n = A.total_dim();
        if (gens_.empty() || n == 0) {
            total_ = FiniteModule<K>::zero(alg_);
            return;
        }
        const int lo = min_degree() + A.lo(), hi = max_degree() + A.hi();
        std::vector<std::size_t> dims(hi - lo + 1, 0);
        index_.assign(gens_.size() * n, 0);
        for (int t = lo; t <= hi; ++t)
            for (std::size_t j = 0; j < gens_.size(); ++j)
                for (std::size_t b = 0; b < n; ++b)
                    if (gens_[j].degree + A.degree_of(b) == t)
                        index_[j * n + b] = dims[t - lo]++;
        auto dimt = [&](int t) -> std::size_t { return (t < lo || t > hi) ? 0 : dims[t - lo]; };
        std::vector<Matrix<K>> diff, act;
        for (int t = lo; t <= hi; ++t) {
            Matrix<K> d(dimt(t + 1), dimt(t));
            for (std::size_t j = 0; j < gens_.size(); ++j) {
                const int gj = gens_[j].degree;
                for (std::size_t b = 0; b < n; ++b) {
                    const int s = A.degree_of(b);
                    if (gj + s != t)
                        continue;
                    const std::size_t col = index_[j * n + b];
                    Vec<K> eb = unit_vec<K>(A.dim(s), A.local_of(b));
                    // d(g_j b) = sum_i g_i (c_ji b) + (-1)^{deg g_j} g_j d(b)
                    for (std::size_t i = 0; i < j; ++i) {
                        auto it = coeffs_.find({j, i});
                        if (it == coeffs_.end())
                            continue;
                        const int cs = gj - gens_[i].degree + 1;
                        Vec<K> cb = A.mul(cs, it->second, s, eb);
                        const int ts = cs + s;
                        for (std::size_t x = 0; x < cb.size(); ++x)
                            if (!cb[x].is_zero())
                                d(index_[i * n + A.global(ts, x)], col) += cb[x];
                    }
                    Vec<K> db = A.apply_d(s, eb);
                    const K sg = signed_one<K>(gj);
                    for (std::size_t x = 0; x < db.size(); ++x)
                        if (!db[x].is_zero())
                            d(index_[j * n + A.global(s + 1, x)], col) += sg * db[x];
                }
            }
            diff.push_back(std::move(d));
            for (std::size_t a = 0; a < n; ++a) {
                const int u = A.degree_of(a);
                Matrix<K> m(dimt(t + u), dimt(t));
                for (std::size_t j = 0; j < gens_.size(); ++j)
                    for (std::size_t b = 0; b < n; ++b) {
                        if (gens_[j].degree + A.degree_of(b) != t)
                            continue;
                        const Vec<K> &p = A.product(b, a);
                        const int ts = A.degree_of(b) + u;
                        for (std::size_t x = 0; x < p.size(); ++x)
                            if (!p[x].is_zero())
                                m(index_[j * n + A.global(ts, x)], index_[j * n + b]) += p[x];
                    }
                act.push_back(std::move(m));
            }
        }
        total_ = FiniteModule<K>(alg_, lo, dims, std::move(diff), std::move(act));
    }

    AlgebraPtr<K> alg_;
    std::vector<Generator> gens_;
    CoeffMap coeffs_;
    std::vector<std::size_t> index_;
    FiniteModule<K> total_;
};

template <class K>
SemiFreeModule<K> free_module(const AlgebraPtr<K> &alg, const std::vector<int> &degrees) {
    std::vector<Generator> g;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        g.push_back({"g" + std::to_string(i), degrees[i]});
    return SemiFreeModule<K>(alg, g, {});
}

template <class K>
bool is_minimal(const SemiFreeModule<K> &l) {
    return l.is_minimal();
}

template <class K>
Cohomology<K> cohomology_module(const SemiFreeModule<K> &l) {
    return cohomology_module(l.total());
}

template <class K>
SemiFreeModule<K> shift(const SemiFreeModule<K> &l, int n) {
    std::vector<Generator> g = l.gens();
    for (auto &x : g)
        x.degree -= n;
    typename SemiFreeModule<K>::CoeffMap c = l.coeffs();
    if (n % 2 != 0)
        for (auto &[k, v] : c)
            v = scaled(v, K(-1));
    return SemiFreeModule<K>(l.alg(), g, c);
}

template <class K>
SemiFreeModule<K> direct_sum(const SemiFreeModule<K> &a, const SemiFreeModule<K> &b) {
    if (!same_algebra(a.alg(), b.alg()))
        throw InputError("direct_sum: algebras differ");
    std::vector<Generator> g = a.gens();
    for (auto &x : b.gens())
        g.push_back(x);
    typename SemiFreeModule<K>::CoeffMap c = a.coeffs();
    for (auto &[k, v] : b.coeffs())
        c[{k.first + a.rank(), k.second + a.rank()}] = v;
    return SemiFreeModule<K>(a.alg(), g, c);
}

// Reorders generators; perm[new] = old. Must keep the coefficient matrix lower triangular.
template <class K>
SemiFreeModule<K> permute_generators(const SemiFreeModule<K> &l, const std::vector<std::size_t> &perm) {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        inv[perm[i]] = i;
    std::vector<Generator> g;
    for (auto p : perm)
        g.push_back(l.gens()[p]);
    typename SemiFreeModule<K>::CoeffMap c;
    for (auto &[k, v] : l.coeffs())
        c[{inv[k.first], inv[k.second]}] = v;
    return SemiFreeModule<K>(l.alg(), g, c);
}

// ---------------------------------------------------------------------------
// Maps out of semi-free modules, determined by generator images.

template <class K>
struct GenMap {
    int degree = 0;
    std::vector<Vec<K>> images; // images[j] in N^{deg g_j + degree}
};

// Matrix of f on L^t -> N^{t + deg f}.
template <class K>
Matrix<K> map_matrix(const SemiFreeModule<K> &L, const FiniteModule<K> &N, const GenMap<K> &f, int t) {
    const auto &A = *L.alg();
    Matrix<K> m(N.dim(t + f.degree), L.total().dim(t));
    for (std::size_t j = 0; j < L.rank(); ++j) {
        const int gj = L.degree(j);
        const int s = t - gj;
        for (std::size_t x = 0; x < A.dim(s); ++x) {
            const std::size_t b = A.global(s, x);
            m.set_col(L.index_of(j, b), N.act(gj + f.degree, b).apply(f.images[j]));
        }
    }
    return m;
}

// d_N f = (-1)^{deg f} f d_L, checked on generators.
template <class K>
bool is_chain_map(const SemiFreeModule<K> &L, const FiniteModule<K> &N, const GenMap<K> &f) {
    for (std::size_t j = 0; j < L.rank(); ++j) {
        const int gj = L.degree(j);
        Vec<K> lhs = N.apply_d(gj + f.degree, f.images[j]);
        Vec<K> dg = L.total().apply_d(gj, L.generator_vector(j));
        Vec<K> rhs = map_matrix(L, N, f, gj + 1).apply(dg);
        if (f.degree % 2 != 0)
            rhs = scaled(rhs, K(-1));
        if (lhs != rhs)
            return false;
    }
    return true;
}

template <class K>
GenMap<K> identity_map(const SemiFreeModule<K> &L) {
    GenMap<K> f;
    for (std::size_t j = 0; j < L.rank(); ++j)
        f.images.push_back(L.generator_vector(j));
    return f;
}

template <class K>
GenMap<K> zero_map(const SemiFreeModule<K> &L, const FiniteModule<K> &N, int degree = 0) {
    GenMap<K> f;
    f.degree = degree;
    for (std::size_t j = 0; j < L.rank(); ++j)
        f.images.push_back(Vec<K>(N.dim(L.degree(j) + degree), K(0)));
    return f;
}

// g o f for f: L -> M and g: M -> N.
template <class K>
GenMap<K> compose(const SemiFreeModule<K> &M, const FiniteModule<K> &N, const GenMap<K> &g, const GenMap<K> &f,
                  const SemiFreeModule<K> &L) {
    GenMap<K> h;
    h.degree = f.degree + g.degree;
    for (std::size_t j = 0; j < L.rank(); ++j)
        h.images.push_back(map_matrix(M, N, g, L.degree(j) + f.degree).apply(f.images[j]));
    return h;
}

template <class K>
GenMap<K> add_maps(const GenMap<K> &a, const GenMap<K> &b, const K &s = K(1)) {
    GenMap<K> r = a;
    for (std::size_t j = 0; j < r.images.size(); ++j)
        axpy(r.images[j], s, b.images[j]);
    return r;
}

template <class K>
GenMap<K> scale_map(const GenMap<K> &a, const K &s) {
    GenMap<K> r = a;
    for (auto &v : r.images)
        v = scaled(v, s);
    return r;
}

// Sigma^n applied to a map between semi-free modules keeps the generator images;
// only the vectors are reinterpreted in the shifted modules.
template <class K>
GenMap<K> shift_map(const GenMap<K> &f) {
    return f;
}

// Mapping cone of a degree-0 chain map f: M -> N. Generators: those of N,
// then those of M moved down by one; d(Sigma m_j) = -sum (Sigma m_l) c_jl + f(m_j).
template <class K>
SemiFreeModule<K> mapping_cone(const SemiFreeModule<K> &M, const SemiFreeModule<K> &N, const GenMap<K> &f) {
    if (!same_algebra(M.alg(), N.alg()))
        throw InputError("mapping_cone: algebras differ");
    if (f.degree != 0)
        throw PreconditionError("mapping_cone: map must have degree 0");
    if (!is_chain_map(M, N.total(), f))
        throw PreconditionError("mapping_cone: chain condition violated");
    const std::size_t p = N.rank();
    std::vector<Generator> g = N.gens();
    for (auto x : M.gens()) {
        x.degree -= 1;
        x.label = "s" + x.label;
        g.push_back(x);
    }
    typename SemiFreeModule<K>::CoeffMap c = N.coeffs();
    for (auto &[k, v] : M.coeffs())
        c[{k.first + p, k.second + p}] = scaled(v, K(-1));
    for (std::size_t j = 0; j < M.rank(); ++j)
        for (std::size_t i = 0; i < p; ++i) {
            Vec<K> a = N.component(i, M.degree(j), f.images[j]);
            if (!is_zero_vec(a))
                c[{p + j, i}] = a;
        }
    return SemiFreeModule<K>(M.alg(), g, c);
}

// ---------------------------------------------------------------------------
// k-duality

// (DM)^n = (M^{-n})*, d^n = (-1)^{n+1} (d_M^{-n-1})^T, and for a in A^l acting
// on (DM)^n: (-1)^{l m} (R_a^m)^T with m = -n-l. Result is over A^op.
template <class K>
FiniteModule<K> dual(const FiniteModule<K> &m) {
    auto op = share(opposite(*m.alg()));
    const auto &A = *m.alg();
    if (m.dims().empty())
        return FiniteModule<K>::zero(op, m.side() == Side::Right ? Side::Left : Side::Right);
    std::vector<std::size_t> dims(m.dims().rbegin(), m.dims().rend());
    return make_finite_module<K>(
        op, -m.hi(), dims,
        [&](int n, std::size_t, std::size_t) { return m.d(-n - 1).transpose().scaled(signed_one<K>(n + 1)); },
        [&](int n, std::size_t a, std::size_t, std::size_t) {
            const int l = A.degree_of(a);
            const int mm = -n - l;
            return m.act(mm, a).transpose().scaled(signed_one<K>(static_cast<long>(l) * mm));
        },
        m.side() == Side::Right ? Side::Left : Side::Right);
}

// ---------------------------------------------------------------------------
// Bimodules: a left action of `left` on top of a right module.

template <class K>
struct Bimodule {
    AlgebraPtr<K> left;
    FiniteModule<K> module;       // right module over the right algebra
    std::vector<Matrix<K>> lact; // index (t - lo) * dim(left) + a : M^t -> M^{t+|a|}

    Matrix<K> left_act(std::size_t a, int t) const {
        const auto &m = module;
        if (t < m.lo() || t > m.hi())
            return Matrix<K>(m.dim(t + left->degree_of(a)), m.dim(t));
        return lact[(t - m.lo()) * left->total_dim() + a];
    }
    // a x for homogeneous a in left^s and x in M^t.
    Vec<K> left_act(int s, const Vec<K> &a, int t, const Vec<K> &x) const {
        Vec<K> r(module.dim(s + t), K(0));
        if (r.empty() || x.empty())
            return r;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero())
                axpy(r, a[i], left_act(left->global(s, i), t).apply(x));
        return r;
    }
};

template <class K>
ValidationReport validate(const Bimodule<K> &bm) {
    ValidationReport r = validate(bm.module);
    const auto &L = *bm.left;
    const auto &m = bm.module;
    const auto &R = *m.alg();
    for (int t = m.lo(); t <= m.hi(); ++t)
        for (std::size_t x = 0; x < m.dim(t); ++x) {
            Vec<K> ex = unit_vec<K>(m.dim(t), x);
            if (bm.left_act(0, L.unit(), t, ex) != ex)
                r.add("left unit", {static_cast<std::size_t>(t - m.lo()), x});
            for (std::size_t a = 0; a < L.total_dim(); ++a) {
                const int s = L.degree_of(a);
                Vec<K> ea = unit_vec<K>(L.dim(s), L.local_of(a));
                Vec<K> ax = bm.left_act(a, t).apply(ex);
                // d(ax) = d(a)x + (-1)^{|a|} a d(x)
                Vec<K> rhs = bm.left_act(s + 1, L.apply_d(s, ea), t, ex);
                axpy(rhs, signed_one<K>(s), bm.left_act(a, t + 1).apply(m.apply_d(t, ex)));
                if (m.apply_d(s + t, ax) != rhs)
                    r.add("left Leibniz", {static_cast<std::size_t>(t - m.lo()), x, a});
                for (std::size_t b = 0; b < L.total_dim(); ++b) {
                    const int u = L.degree_of(b);
                    // (ba)x = b(ax)
                    if (bm.left_act(u + s, L.product(b, a), t, ex) != bm.left_act(b, s + t).apply(ax))
                        r.add("left associativity", {static_cast<std::size_t>(t - m.lo()), x, b, a});
                }
                for (std::size_t c = 0; c < R.total_dim(); ++c)
                    // (ax)c = a(xc)
                    if (m.act(s + t, c).apply(ax) != bm.left_act(a, t + R.degree_of(c)).apply(m.act(t, c).apply(ex)))
                        r.add("bimodule compatibility", {static_cast<std::size_t>(t - m.lo()), x, a, c});
            }
        }
    return r;
}

// A right A^op-module X viewed as a left A-module complex: a x = (-1)^{|a||x|} x a.
// The right algebra of the result is the ground field.
template <class K>
Bimodule<K> as_left_module(const FiniteModule<K> &x, const AlgebraPtr<K> &A) {
    if (!(opposite(*A) == *x.alg()))
        throw InputError("as_left_module: module is not over the opposite algebra");
    auto k = share(field_algebra<K>());
    Bimodule<K> bm;
    bm.left = A;
    bm.module = make_finite_module<K>(
        k, x.lo(), x.dims(), [&](int t, std::size_t, std::size_t) { return x.d(t); },
        [&](int, std::size_t, std::size_t c, std::size_t) { return Matrix<K>::identity(c); });
    for (int t = x.lo(); t <= x.hi(); ++t)
        for (std::size_t a = 0; a < A->total_dim(); ++a)
            bm.lact.push_back(x.act(t, a).scaled(signed_one<K>(static_cast<long>(A->degree_of(a)) * t)));
    return bm;
}

// DA as an (A, A)-bimodule: left action from the dual of A_A, (a f)(x) =
// (-1)^{ln+lm} f(xa); right action (f b)(x) = f(bx).
template <class K>
Bimodule<K> dual_bimodule(const AlgebraPtr<K> &alg) {
    const auto &A = *alg;
    FiniteModule<K> DAop = dual(regular_module(alg)); // right over A^op
    std::vector<std::size_t> dims = DAop.dims();
    Bimodule<K> bm;
    bm.left = alg;
    bm.module = make_finite_module<K>(
        alg, DAop.lo(), dims, [&](int t, std::size_t, std::size_t) { return DAop.d(t); },
        [&](int n, std::size_t b, std::size_t, std::size_t) {
            const int l = A.degree_of(b);
            return A.left_mult(b, -n - l).transpose();
        });
    for (int t = DAop.lo(); t <= DAop.hi(); ++t)
        for (std::size_t a = 0; a < A.total_dim(); ++a)
            bm.lact.push_back(DAop.act(t, a).scaled(signed_one<K>(static_cast<long>(A.degree_of(a)) * t)));
    return bm;
}

// L ⊗_A X: d(g ⊗ x) = sum_l g_l ⊗ c_jl x + (-1)^{|g|} g ⊗ dx, (g ⊗ x) b = g ⊗ xb.
template <class K>
FiniteModule<K> tensor(const SemiFreeModule<K> &L, const Bimodule<K> &X) {
    if (!same_algebra(L.alg(), X.left))
        throw InputError("tensor: sides do not match");
    const auto &M = X.module;
    const auto &R = *M.alg();
    if (L.rank() == 0 || M.dims().empty())
        return FiniteModule<K>::zero(M.alg());
    const int lo = L.min_degree() + M.lo(), hi = L.max_degree() + M.hi();
    std::vector<std::size_t> dims(hi - lo + 1, 0);
    // offset of block (g_j ⊗ M^{t - deg g_j}) in degree t
    std::vector<std::vector<std::size_t>> off(hi - lo + 1, std::vector<std::size_t>(L.rank(), 0));
    for (int t = lo; t <= hi; ++t)
        for (std::size_t j = 0; j < L.rank(); ++j) {
            off[t - lo][j] = dims[t - lo];
            dims[t - lo] += M.dim(t - L.degree(j));
        }
    auto dimt = [&](int t) -> std::size_t { return (t < lo || t > hi) ? 0 : dims[t - lo]; };
    auto place = [&](Matrix<K> &m, int t_row, std::size_t jr, int t_col, std::size_t jc, const Matrix<K> &blk) {
        for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t c = 0; c < blk.cols(); ++c)
                if (!blk(r, c).is_zero())
                    m(off[t_row - lo][jr] + r, off[t_col - lo][jc] + c) += blk(r, c);
    };
    return make_finite_module<K>(
        M.alg(), lo, dims,
        [&](int t, std::size_t, std::size_t) {
            Matrix<K> d(dimt(t + 1), dimt(t));
            if (t + 1 > hi)
                return d;
            for (std::size_t j = 0; j < L.rank(); ++j) {
                const int s = t - L.degree(j);
                if (M.dim(s) == 0)
                    continue;
                place(d, t + 1, j, t, j, M.d(s).scaled(signed_one<K>(L.degree(j))));
                for (std::size_t l = 0; l < j; ++l) {
                    auto it = L.coeffs().find({j, l});
                    if (it == L.coeffs().end())
                        continue;
                    const int cs = L.degree(j) - L.degree(l) + 1;
                    Matrix<K> blk(M.dim(s + cs), M.dim(s));
                    for (std::size_t x = 0; x < it->second.size(); ++x)
                        if (!it->second[x].is_zero())
                            blk = blk + X.left_act(L.alg()->global(cs, x), s).scaled(it->second[x]);
                    place(d, t + 1, l, t, j, blk);
                }
            }
            return d;
        },
        [&](int t, std::size_t b, std::size_t, std::size_t) {
            const int u = R.degree_of(b);
            Matrix<K> m(dimt(t + u), dimt(t));
            if (t + u < lo || t + u > hi)
                return m;
            for (std::size_t j = 0; j < L.rank(); ++j) {
                const int s = t - L.degree(j);
                if (M.dim(s) == 0)
                    continue;
                place(m, t + u, j, t, j, M.act(s, b));
            }
            return m;
        });
}

// L ⊗_A X for a left module X stored over A^op; the result is a complex (module over k).
template <class K>
FiniteModule<K> tensor(const SemiFreeModule<K> &L, const FiniteModule<K> &X) {
    return tensor(L, as_left_module(X, L.alg()));
}

// ---------------------------------------------------------------------------
// Hom complexes

template <class K>
class HomComplex {
public:
    // Hom^i = prod_j N^{deg g_j + i}, (df)(g_j) = d_N f(g_j) - (-1)^i f(d g_j).
    HomComplex(SemiFreeModule<K> L, FiniteModule<K> N) : L_(std::move(L)), N_(std::move(N)) {
        if (!same_algebra(L_.alg(), N_.alg()))
            throw InputError("hom_complex: algebras differ");
        if (L_.rank() == 0 || N_.dims().empty()) {
            c_.lo = 0;
            return;
        }
        c_.lo = N_.lo() - L_.max_degree();
        const int hi = N_.hi() - L_.min_degree();
        for (int i = c_.lo; i <= hi; ++i) {
            std::vector<std::size_t> o;
            std::size_t tot = 0;
            for (std::size_t j = 0; j < L_.rank(); ++j) {
                o.push_back(tot);
                tot += N_.dim(L_.degree(j) + i);
            }
            off_.push_back(o);
            c_.dims.push_back(tot);
        }
        const auto &A = *L_.alg();
        for (int i = c_.lo; i <= hi; ++i) {
            Matrix<K> d(c_.dim(i + 1), c_.dim(i));
            const K sgn = signed_one<K>(i + 1); // -(-1)^i
            if (c_.dim(i + 1) > 0)
                for (std::size_t j = 0; j < L_.rank(); ++j) {
                    const int gj = L_.degree(j);
                    // d_N on the g_j slot
                    Matrix<K> dn = N_.d(gj + i);
                    for (std::size_t r = 0; r < dn.rows(); ++r)
                        for (std::size_t c = 0; c < dn.cols(); ++c)
                            if (!dn(r, c).is_zero())
                                d(offset(i + 1, j) + r, offset(i, j) + c) += dn(r, c);
                    // -(-1)^i f(g_l) c_jl
                    for (std::size_t l = 0; l < j; ++l) {
                        auto it = L_.coeffs().find({j, l});
                        if (it == L_.coeffs().end())
                            continue;
                        const int cs = gj - L_.degree(l) + 1;
                        const int src = L_.degree(l) + i;
                        for (std::size_t x = 0; x < it->second.size(); ++x) {
                            if (it->second[x].is_zero())
                                continue;
                            Matrix<K> blk = N_.act(src, A.global(cs, x));
                            const K f = sgn * it->second[x];
                            for (std::size_t r = 0; r < blk.rows(); ++r)
                                for (std::size_t c = 0; c < blk.cols(); ++c)
                                    if (!blk(r, c).is_zero())
                                        d(offset(i + 1, j) + r, offset(i, l) + c) += f * blk(r, c);
                        }
                    }
                }
            c_.diff.push_back(std::move(d));
        }
    }

    const Complex<K> &complex() const { return c_; }
    const SemiFreeModule<K> &source() const { return L_; }
    const FiniteModule<K> &target() const { return N_; }

    GenMap<K> decode(int i, const Vec<K> &v) const {
        GenMap<K> f;
        f.degree = i;
        for (std::size_t j = 0; j < L_.rank(); ++j) {
            const std::size_t n = N_.dim(L_.degree(j) + i);
            const std::size_t o = c_.dim(i) == 0 ? 0 : offset(i, j);
            f.images.push_back(n == 0 ? Vec<K>() : Vec<K>(v.begin() + o, v.begin() + o + n));
        }
        return f;
    }
    Vec<K> encode(const GenMap<K> &f) const {
        Vec<K> v;
        for (auto &x : f.images)
            v.insert(v.end(), x.begin(), x.end());
        return v;
    }

private:
    std::size_t offset(int i, std::size_t j) const { return off_[i - c_.lo][j]; }

    SemiFreeModule<K> L_;
    FiniteModule<K> N_;
    Complex<K> c_;
    std::vector<std::vector<std::size_t>> off_;
};

template <class K>
HomComplex<K> hom_complex(const SemiFreeModule<K> &L, const FiniteModule<K> &N) {
    return HomComplex<K>(L, N);
}

// Morphisms L -> Sigma^i N in the derived category, as H^i of the Hom complex.
template <class K>
class HomD {
public:
    HomD(const SemiFreeModule<K> &L, const FiniteModule<K> &N, int degree = 0)
        : hc_(L, N), coh_(hc_.complex()), degree_(degree) {
        for (auto &r : coh_.reps(degree))
            basis_.push_back(hc_.decode(degree, r));
    }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<GenMap<K>> &basis() const { return basis_; }
    int degree() const { return degree_; }
    const HomComplex<K> &hom_complex() const { return hc_; }
    const Cohomology<K> &cohomology() const { return coh_; }

    bool is_cycle(const GenMap<K> &f) const { return coh_.is_cycle(degree_, hc_.encode(f)); }
    // Class of a cycle in the chosen basis.
    Vec<K> coords(const GenMap<K> &f) const {
        if (dim() == 0)
            return {};
        return coh_.class_coords(degree_, hc_.encode(f));
    }
    bool is_zero_class(const GenMap<K> &f) const { return is_zero_vec(coords(f)); }
    GenMap<K> from_coords(const Vec<K> &c) const {
        GenMap<K> f = zero_map(hc_.source(), hc_.target(), degree_);
        for (std::size_t i = 0; i < c.size(); ++i)
            f = add_maps(f, basis_[i], c[i]);
        return f;
    }

private:
    HomComplex<K> hc_;
    Cohomology<K> coh_;
    int degree_;
    std::vector<GenMap<K>> basis_;
};

template <class K>
HomD<K> hom_D(const SemiFreeModule<K> &L, const FiniteModule<K> &N, int degree = 0) {
    return HomD<K>(L, N, degree);
}
template <class K>
HomD<K> hom_D(const SemiFreeModule<K> &L, const SemiFreeModule<K> &N, int degree = 0) {
    return HomD<K>(L, N.total(), degree);
}

} // namespace dgar

#endif
