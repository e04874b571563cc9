#ifndef DGAR_DGALGEBRA_HPP
#define DGAR_DGALGEBRA_HPP

#include "cochain.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgar {

// Raw tables from which a DGAlgebra is built. Basis elements are numbered
// globally in order of degree, then position inside the degree.
template <class K>
struct DGAlgebraData {
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::string>> labels;
    Vec<K> unit;                                              // in degree 0
    std::map<std::pair<std::size_t, std::size_t>, Vec<K>> mul; // (a, b) -> ab in degree |a|+|b|
    std::map<int, Matrix<K>> diff;                            // A^i -> A^{i+1}

    std::size_t global(int deg, std::size_t local) const {
        std::size_t g = 0;
        for (int t = lo; t < deg; ++t)
            g += dims[t - lo];
        return g + local;
    }
    std::size_t dim(int deg) const {
        if (deg < lo || deg >= lo + static_cast<int>(dims.size()))
            return 0;
        return dims[deg - lo];
    }
};

struct ValidationFailure {
    std::string axiom;
    std::vector<std::size_t> witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationFailure> failures;
    bool ok() const { return failures.empty(); }
    bool has(const std::string &axiom) const {
        for (auto &f : failures)
            if (f.axiom == axiom)
                return true;
        return false;
    }
    void add(std::string axiom, std::vector<std::size_t> witness, std::string detail = {}) {
        if (failures.size() < 64)
            failures.push_back({std::move(axiom), std::move(witness), std::move(detail)});
    }
};

template <class K>
class DGAlgebra {
public:
    explicit DGAlgebra(DGAlgebraData<K> data) : field_(K::spec()) {
        // Tighten the degree range.
        while (!data.dims.empty() && data.dims.front() == 0) {
            data.dims.erase(data.dims.begin());
            if (!data.labels.empty())
                data.labels.erase(data.labels.begin());
            ++data.lo;
        }
        while (!data.dims.empty() && data.dims.back() == 0) {
            data.dims.pop_back();
            if (!data.labels.empty() && data.labels.size() > data.dims.size())
                data.labels.pop_back();
        }
        lo_ = data.dims.empty() ? 0 : data.lo;
        dims_ = data.dims;
        for (int t = lo_; t <= hi(); ++t) {
            offsets_.push_back(n_);
            for (std::size_t i = 0; i < dims_[t - lo_]; ++i) {
                deg_of_.push_back(t);
                local_of_.push_back(i);
            }
            n_ += dims_[t - lo_];
        }
        labels_ = data.labels;
        labels_.resize(dims_.size());
        for (int t = lo_; t <= hi(); ++t) {
            auto &l = labels_[t - lo_];
            if (l.size() != dims_[t - lo_]) {
                l.clear();
                for (std::size_t i = 0; i < dims_[t - lo_]; ++i)
                    l.push_back("e" + std::to_string(t) + "_" + std::to_string(i));
            }
        }
        if (data.unit.size() != dim(0))
            throw InputError("unit vector has wrong length for degree 0");
        unit_ = data.unit;
        prod_.assign(n_ * n_, Vec<K>());
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                prod_[a * n_ + b] = Vec<K>(dim(deg_of_[a] + deg_of_[b]), K(0));
        for (auto &[key, v] : data.mul) {
            auto [a, b] = key;
            if (a >= n_ || b >= n_)
                throw InputError("product index out of range");
            const int t = deg_of_[a] + deg_of_[b];
            if (t < lo_ || t > hi()) {
                if (!is_zero_vec(v))
                    grading_violations_.push_back({a, b});
                continue;
            }
            if (v.size() != dim(t))
                throw InputError("product vector has wrong length");
            prod_[a * n_ + b] = v;
        }
        for (int t = lo_; t <= hi(); ++t) {
            auto it = data.diff.find(t);
            if (it == data.diff.end()) {
                diff_.push_back(Matrix<K>(dim(t + 1), dim(t)));
            } else {
                if (it->second.rows() != dim(t + 1) || it->second.cols() != dim(t))
                    throw InputError("differential in degree " + std::to_string(t) + " has wrong shape");
                diff_.push_back(it->second);
            }
        }
        for (auto &[t, m] : data.diff)
            if ((t < lo_ || t > hi()) && !m.is_zero())
                grading_violations_.push_back({static_cast<std::size_t>(-1), static_cast<std::size_t>(t)});
    }

    static DGAlgebraData<K> field_data() {
        DGAlgebraData<K> d;
        d.lo = 0;
        d.dims = {1};
        d.labels = {{"1"}};
        d.unit = {K(1)};
        d.mul[{0, 0}] = {K(1)};
        return d;
    }

    const FieldSpec &field() const { return field_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    std::size_t dim(int deg) const {
        if (deg < lo_ || deg > hi())
            return 0;
        return dims_[deg - lo_];
    }
    std::size_t total_dim() const { return n_; }
    int degree_of(std::size_t g) const { return deg_of_[g]; }
    std::size_t local_of(std::size_t g) const { return local_of_[g]; }
    std::size_t global(int deg, std::size_t local) const { return offsets_[deg - lo_] + local; }
    const std::string &label(std::size_t g) const { return labels_[deg_of_[g] - lo_][local_of_[g]]; }
    const std::vector<std::vector<std::string>> &labels() const { return labels_; }
    const Vec<K> &unit() const { return unit_; }
    const std::vector<std::pair<std::size_t, std::size_t>> &grading_violations() const { return grading_violations_; }

    // Product of basis elements a, b, as a vector in degree |a|+|b|.
    const Vec<K> &product(std::size_t a, std::size_t b) const { return prod_[a * n_ + b]; }

    Matrix<K> d(int deg) const {
        if (deg < lo_ || deg > hi())
            return Matrix<K>(dim(deg + 1), dim(deg));
        return diff_[deg - lo_];
    }
    Vec<K> apply_d(int deg, const Vec<K> &v) const {
        if (deg < lo_ || deg > hi())
            return Vec<K>(dim(deg + 1), K(0));
        return diff_[deg - lo_].apply(v);
    }

    // Product of homogeneous elements a in A^i and b in A^j.
    Vec<K> mul(int i, const Vec<K> &a, int j, const Vec<K> &b) const {
        Vec<K> r(dim(i + j), K(0));
        if (r.empty())
            return r;
        for (std::size_t x = 0; x < a.size(); ++x) {
            if (a[x].is_zero())
                continue;
            for (std::size_t y = 0; y < b.size(); ++y) {
                if (b[y].is_zero())
                    continue;
                axpy(r, a[x] * b[y], product(global(i, x), global(j, y)));
            }
        }
        return r;
    }

    // Matrix of x -> x b on A^i for a basis element b.
    Matrix<K> right_mult(int i, std::size_t b) const {
        const int t = i + deg_of_[b];
        Matrix<K> m(dim(t), dim(i));
        for (std::size_t x = 0; x < dim(i); ++x)
            m.set_col(x, product(global(i, x), b));
        return m;
    }
    // Matrix of x -> a x on A^i for a basis element a.
    Matrix<K> left_mult(std::size_t a, int i) const {
        const int t = i + deg_of_[a];
        Matrix<K> m(dim(t), dim(i));
        for (std::size_t x = 0; x < dim(i); ++x)
            m.set_col(x, product(a, global(i, x)));
        return m;
    }

    Complex<K> as_complex() const {
        Complex<K> c;
        c.lo = lo_;
        c.dims = dims_;
        c.diff = diff_;
        return c;
    }

    bool has_zero_differential() const {
        for (auto &m : diff_)
            if (!m.is_zero())
                return false;
        return true;
    }

    // A^{<0} = 0, A^0 = k.1, A^1 = 0.
    bool is_simply_connected_model() const {
        if (n_ == 0 || lo_ < 0 || dim(0) != 1 || dim(1) != 0)
            return false;
        return !is_zero_vec(unit_);
    }

    DGAlgebraData<K> data() const {
        DGAlgebraData<K> d;
        d.lo = lo_;
        d.dims = dims_;
        d.labels = labels_;
        d.unit = unit_;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (!is_zero_vec(product(a, b)))
                    d.mul[{a, b}] = product(a, b);
        for (int t = lo_; t <= hi(); ++t)
            if (!diff_[t - lo_].is_zero())
                d.diff[t] = diff_[t - lo_];
        return d;
    }

    friend bool operator==(const DGAlgebra &x, const DGAlgebra &y) {
        return x.field_ == y.field_ && x.lo_ == y.lo_ && x.dims_ == y.dims_ && x.unit_ == y.unit_ &&
               x.prod_ == y.prod_ && x.diff_ == y.diff_;
    }

private:
    FieldSpec field_;
    int lo_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_, local_of_;
    std::vector<int> deg_of_;
    std::size_t n_ = 0;
    std::vector<std::vector<std::string>> labels_;
    Vec<K> unit_;
    std::vector<Vec<K>> prod_;
    std::vector<Matrix<K>> diff_;
    std::vector<std::pair<std::size_t, std::size_t>> grading_violations_;
};

template <class K>
using AlgebraPtr = std::shared_ptr<const DGAlgebra<K>>;

template <class K>
AlgebraPtr<K> share(DGAlgebra<K> a) {
    return std::make_shared<const DGAlgebra<K>>(std::move(a));
}

template <class K>
bool same_algebra(const AlgebraPtr<K> &a, const AlgebraPtr<K> &b) {
    return a == b || *a == *b;
}

template <class K>
ValidationReport validate(const DGAlgebra<K> &a) {
    ValidationReport r;
    const std::size_t n = a.total_dim();
    for (auto &[x, y] : a.grading_violations())
        r.add("grading bounds", {x, y}, "nonzero entry outside the degree range");
    for (int t = a.lo(); t <= a.hi(); ++t) {
        auto dd = a.d(t + 1) * a.d(t);
        for (std::size_t j = 0; j < dd.cols(); ++j)
            if (!is_zero_vec(dd.col(j)))
                r.add("d^2 = 0", {a.global(t, j)});
    }
    // unit
    const Vec<K> &u = a.unit();
    for (std::size_t b = 0; b < n; ++b) {
        const int t = a.degree_of(b);
        Vec<K> eb = unit_vec<K>(a.dim(t), a.local_of(b));
        if (a.mul(0, u, t, eb) != eb)
            r.add("unit", {b}, "1.b != b");
        if (a.mul(t, eb, 0, u) != eb)
            r.add("unit", {b}, "b.1 != b");
    }
    // Leibniz: d(xy) = d(x)y + (-1)^{|x|} x d(y)
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const int i = a.degree_of(x), j = a.degree_of(y);
            Vec<K> ex = unit_vec<K>(a.dim(i), a.local_of(x));
            Vec<K> ey = unit_vec<K>(a.dim(j), a.local_of(y));
            Vec<K> lhs = a.apply_d(i + j, a.product(x, y));
            Vec<K> rhs = a.mul(i + 1, a.apply_d(i, ex), j, ey);
            axpy(rhs, signed_one<K>(i), a.mul(i, ex, j + 1, a.apply_d(j, ey)));
            if (lhs != rhs)
                r.add("Leibniz", {x, y});
        }
    // associativity on basis triples
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const int i = a.degree_of(x), j = a.degree_of(y);
            const Vec<K> &xy = a.product(x, y);
            for (std::size_t z = 0; z < n; ++z) {
                const int k = a.degree_of(z);
                Vec<K> ez = unit_vec<K>(a.dim(k), a.local_of(z));
                Vec<K> ex = unit_vec<K>(a.dim(i), a.local_of(x));
                if (a.mul(i + j, xy, k, ez) != a.mul(i, ex, j + k, a.product(y, z)))
                    r.add("associativity", {x, y, z});
            }
        }
    return r;
}

template <class K>
void require_valid(const DGAlgebra<K> &a, const std::string &what) {
    auto rep = validate(a);
    if (!rep.ok()) {
        const auto &f = rep.failures.front();
        std::string w;
        for (auto i : f.witness)
            w += " " + std::to_string(i);
        throw PreconditionError(what + ": invalid DG algebra (" + f.axiom + " fails at" + w + ")");
    }
}

template <class K>
Cohomology<K> cohomology(const DGAlgebra<K> &a) {
    return Cohomology<K>(a.as_complex());
}

template <class K>
struct CohomologyRing {
    DGAlgebra<K> ring; // zero differential
    Cohomology<K> data;
    CohomologyTable table() const { return data.table(); }
};

template <class K>
CohomologyRing<K> cohomology_ring(const DGAlgebra<K> &a) {
    require_valid(a, "cohomology_ring");
    Cohomology<K> h = cohomology(a);
    const auto &tab = h.table();
    DGAlgebraData<K> d;
    if (tab.is_zero()) {
        d.dims = {};
        d.unit = {};
        return {DGAlgebra<K>(d), h};
    }
    d.lo = *tab.inf;
    for (int t = *tab.inf; t <= *tab.sup; ++t) {
        d.dims.push_back(tab.dim(t));
        std::vector<std::string> l;
        for (std::size_t i = 0; i < tab.dim(t); ++i)
            l.push_back("h" + std::to_string(t) + "_" + std::to_string(i));
        d.labels.push_back(l);
    }
    if (tab.dim(0) > 0)
        d.unit = h.class_coords(0, a.unit());
    for (int i = *tab.inf; i <= *tab.sup; ++i)
        for (std::size_t x = 0; x < tab.dim(i); ++x)
            for (int j = *tab.inf; j <= *tab.sup; ++j)
                for (std::size_t y = 0; y < tab.dim(j); ++y) {
                    if (tab.dim(i + j) == 0)
                        continue;
                    Vec<K> p = a.mul(i, h.reps(i)[x], j, h.reps(j)[y]);
                    d.mul[{d.global(i, x), d.global(j, y)}] = h.class_coords(i + j, p);
                }
    if (d.dims.size() > 0 && tab.dim(0) == 0)
        throw Error("cohomology_ring: H^0 vanishes, no unit");
    return {DGAlgebra<K>(d), h};
}

// ---- builders ----

template <class K>
DGAlgebra<K> field_algebra() {
    return DGAlgebra<K>(DGAlgebra<K>::field_data());
}

template <class K>
DGAlgebra<K> truncated_polynomial(int gen_degree, int power, const std::string &name = "x") {
    if (power < 1)
        throw InputError("truncated_polynomial: power must be >= 1");
    if (gen_degree == 0 && power > 1)
        throw InputError("truncated_polynomial: generator degree must be nonzero");
    if (gen_degree % 2 != 0 && power > 2 && K::characteristic() != 2)
        throw InputError("truncated_polynomial: odd generator squares to zero unless characteristic 2");
    DGAlgebraData<K> d;
    const int lo = std::min(0, gen_degree * (power - 1));
    const int hi = std::max(0, gen_degree * (power - 1));
    d.lo = lo;
    d.dims.assign(hi - lo + 1, 0);
    d.labels.assign(hi - lo + 1, {});
    for (int k = 0; k < power; ++k) {
        d.dims[gen_degree * k - lo] = 1;
        d.labels[gen_degree * k - lo] = {k == 0 ? "1" : (k == 1 ? name : name + "^" + std::to_string(k))};
    }
    d.unit = {K(1)};
    for (int a = 0; a < power; ++a)
        for (int b = 0; a + b < power; ++b)
            d.mul[{d.global(gen_degree * a, 0), d.global(gen_degree * b, 0)}] = {K(1)};
    return DGAlgebra<K>(d);
}

template <class K>
DGAlgebra<K> relabel(const DGAlgebra<K> &a, const std::vector<std::vector<std::string>> &labels) {
    auto d = a.data();
    d.labels = labels;
    return DGAlgebra<K>(d);
}

namespace detail {
inline std::string tensor_label(const std::string &x, const std::string &y) {
    if (x == "1")
        return y;
    if (y == "1")
        return x;
    return x + y;
}
} // namespace detail

// (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb', d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db.
template <class K>
DGAlgebra<K> tensor_product(const DGAlgebra<K> &A, const DGAlgebra<K> &B) {
    if (!(A.field() == B.field()))
        throw InputError("tensor_product: field mismatch");
    DGAlgebraData<K> d;
    const std::size_t na = A.total_dim(), nb = B.total_dim();
    if (na == 0 || nb == 0) {
        d.dims = {};
        return DGAlgebra<K>(d);
    }
    d.lo = A.lo() + B.lo();
    const int hi = A.hi() + B.hi();
    d.dims.assign(hi - d.lo + 1, 0);
    d.labels.assign(hi - d.lo + 1, {});
    // local index of pair (a, b) inside its total degree
    std::vector<std::size_t> pos(na * nb);
    for (int t = d.lo; t <= hi; ++t)
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = 0; b < nb; ++b)
                if (A.degree_of(a) + B.degree_of(b) == t) {
                    pos[a * nb + b] = d.dims[t - d.lo]++;
                    d.labels[t - d.lo].push_back(detail::tensor_label(A.label(a), B.label(b)));
                }
    auto deg = [&](std::size_t a, std::size_t b) { return A.degree_of(a) + B.degree_of(b); };
    auto gidx = [&](std::size_t a, std::size_t b) { return d.global(deg(a, b), pos[a * nb + b]); };
    // unit
    d.unit.assign(d.dim(0), K(0));
    for (std::size_t i = 0; i < A.dim(0); ++i)
        for (std::size_t j = 0; j < B.dim(0); ++j) {
            std::size_t a = A.global(0, i), b = B.global(0, j);
            d.unit[pos[a * nb + b]] += A.unit()[i] * B.unit()[j];
        }
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t a2 = 0; a2 < na; ++a2)
                for (std::size_t b2 = 0; b2 < nb; ++b2) {
                    const Vec<K> &pa = A.product(a, a2);
                    const Vec<K> &pb = B.product(b, b2);
                    if (is_zero_vec(pa) || is_zero_vec(pb))
                        continue;
                    const int ta = A.degree_of(a) + A.degree_of(a2);
                    const int tb = B.degree_of(b) + B.degree_of(b2);
                    const K sign = signed_one<K>(static_cast<long>(B.degree_of(b)) * A.degree_of(a2));
                    Vec<K> v(d.dim(ta + tb), K(0));
                    for (std::size_t x = 0; x < pa.size(); ++x)
                        for (std::size_t y = 0; y < pb.size(); ++y)
                            if (!pa[x].is_zero() && !pb[y].is_zero())
                                v[pos[A.global(ta, x) * nb + B.global(tb, y)]] += sign * pa[x] * pb[y];
                    d.mul[{gidx(a, b), gidx(a2, b2)}] = v;
                }
    for (int t = d.lo; t <= hi; ++t) {
        Matrix<K> m(d.dim(t + 1), d.dim(t));
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = 0; b < nb; ++b) {
                if (deg(a, b) != t)
                    continue;
                const int i = A.degree_of(a), j = B.degree_of(b);
                const std::size_t col = pos[a * nb + b];
                Vec<K> da = A.apply_d(i, unit_vec<K>(A.dim(i), A.local_of(a)));
                for (std::size_t x = 0; x < da.size(); ++x)
                    if (!da[x].is_zero())
                        m(pos[A.global(i + 1, x) * nb + b], col) += da[x];
                Vec<K> db = B.apply_d(j, unit_vec<K>(B.dim(j), B.local_of(b)));
                const K s = signed_one<K>(i);
                for (std::size_t y = 0; y < db.size(); ++y)
                    if (!db[y].is_zero())
                        m(pos[a * nb + B.global(j + 1, y)], col) += s * db[y];
            }
        if (m.rows() > 0 && m.cols() > 0)
            d.diff[t] = m;
    }
    return DGAlgebra<K>(d);
}

// a .op b = (-1)^{|a||b|} b a
template <class K>
DGAlgebra<K> opposite(const DGAlgebra<K> &A) {
    auto d = A.data();
    d.mul.clear();
    const std::size_t n = A.total_dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const Vec<K> &p = A.product(b, a);
            if (is_zero_vec(p))
                continue;
            d.mul[{a, b}] = scaled(p, signed_one<K>(static_cast<long>(A.degree_of(a)) * A.degree_of(b)));
        }
    return DGAlgebra<K>(d);
}

template <class K>
DGAlgebra<K> exterior(const std::vector<int> &degrees) {
    static const char *names[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
    DGAlgebra<K> r = field_algebra<K>();
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const std::string nm = i < 8 ? names[i] : "x" + std::to_string(i);
        r = tensor_product(r, truncated_polynomial<K>(degrees[i], 2, nm));
    }
    return r;
}

template <class K>
DGAlgebra<K> sphere_model(int d) {
    if (d < 1)
        throw InputError("sphere_model: dimension must be positive");
    return truncated_polynomial<K>(d, 2, "x");
}

template <class K>
DGAlgebra<K> formal(const DGAlgebra<K> &graded) {
    auto d = graded.data();
    d.diff.clear();
    return DGAlgebra<K>(d);
}

template <class K>
DGAlgebra<K> product_of_spheres(int e, int d) {
    return tensor_product(truncated_polynomial<K>(e, 2, "x"), truncated_polynomial<K>(d, 2, "y"));
}

// Quotient A/J for a graded subspace J given per degree. Throws unless J is a DG ideal.
template <class K>
DGAlgebra<K> quotient_algebra(const DGAlgebra<K> &A, const std::map<int, SubspaceBasis<K>> &J) {
    auto Jat = [&](int t) {
        auto it = J.find(t);
        return it == J.end() ? SubspaceBasis<K>(A.dim(t)) : it->second;
    };
    for (int t = A.lo(); t <= A.hi(); ++t) {
        const auto Jt = Jat(t);
        for (auto &v : Jt.vectors()) {
            if (!Jat(t + 1).contains(A.apply_d(t, v)))
                throw Error("quotient_algebra: J not closed under d in degree " + std::to_string(t));
            for (std::size_t b = 0; b < A.total_dim(); ++b) {
                const int s = A.degree_of(b);
                Vec<K> eb = unit_vec<K>(A.dim(s), A.local_of(b));
                if (!Jat(t + s).contains(A.mul(t, v, s, eb)) || !Jat(s + t).contains(A.mul(s, eb, t, v)))
                    throw Error("quotient_algebra: J is not a two-sided ideal in degree " + std::to_string(t));
            }
        }
    }
    DGAlgebraData<K> d;
    d.lo = A.lo();
    std::vector<std::vector<Vec<K>>> lifts;
    std::vector<Matrix<K>> proj_sys;
    for (int t = A.lo(); t <= A.hi(); ++t) {
        const auto Jt = Jat(t);
        auto C = complement(Jt, SubspaceBasis<K>::whole(A.dim(t)));
        auto cv = C.vectors();
        d.dims.push_back(cv.size());
        std::vector<std::string> lab;
        for (auto &v : cv) {
            std::size_t nz = 0, at = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero())
                    ++nz, at = i;
            lab.push_back(nz == 1 ? A.label(A.global(t, at)) : "[" + vec_to_string(v) + "]");
        }
        d.labels.push_back(lab);
        auto cols = cv;
        for (auto &j : Jt.vectors())
            cols.push_back(j);
        proj_sys.push_back(Matrix<K>::from_columns(cols, A.dim(t)));
        lifts.push_back(cv);
    }
    auto project = [&](int t, const Vec<K> &v) -> Vec<K> {
        if (t < A.lo() || t > A.hi())
            return {};
        auto x = solve(proj_sys[t - A.lo()], v);
        return Vec<K>(x->begin(), x->begin() + lifts[t - A.lo()].size());
    };
    d.unit = project(0, A.unit());
    if (A.dim(0) == 0)
        d.unit = {};
    for (int i = A.lo(); i <= A.hi(); ++i)
        for (std::size_t x = 0; x < lifts[i - A.lo()].size(); ++x)
            for (int j = A.lo(); j <= A.hi(); ++j)
                for (std::size_t y = 0; y < lifts[j - A.lo()].size(); ++y) {
                    if (i + j > A.hi() || d.dim(i + j) == 0)
                        continue;
                    Vec<K> p = project(i + j, A.mul(i, lifts[i - A.lo()][x], j, lifts[j - A.lo()][y]));
                    if (!is_zero_vec(p))
                        d.mul[{d.global(i, x), d.global(j, y)}] = p;
                }
    for (int t = A.lo(); t <= A.hi(); ++t) {
        Matrix<K> m(d.dim(t + 1), d.dim(t));
        for (std::size_t x = 0; x < d.dim(t); ++x) {
            Vec<K> img = A.apply_d(t, lifts[t - A.lo()][x]);
            if (t + 1 <= A.hi())
                m.set_col(x, project(t + 1, img));
        }
        d.diff[t] = m;
    }
    return DGAlgebra<K>(d);
}

// Right truncation of a simply connected model at d = sup H*A, or at an explicit
// top degree when the input carries spurious cohomology above it (free models).
template <class K>
DGAlgebra<K> truncate_model(const DGAlgebra<K> &A, std::optional<int> top = std::nullopt) {
    if (!A.is_simply_connected_model())
        throw PreconditionError("truncate_model: need A^{<0} = 0, A^0 = k, A^1 = 0");
    require_valid(A, "truncate_model");
    auto H = cohomology(A);
    const int d = top ? *top : *H.table().sup;
    std::map<int, SubspaceBasis<K>> J;
    auto whole = [&](int t) { return SubspaceBasis<K>::whole(A.dim(t)); };
    // J^{d-1}: a copy of Im d^{d-1}, i.e. a complement of the cycles
    J[d - 1] = complement(kernel(A.d(d - 1)), whole(d - 1));
    J[d] = sum(image(A.d(d - 1)), complement(kernel(A.d(d)), whole(d)));
    for (int t = d + 1; t <= A.hi(); ++t)
        J[t] = whole(t);
    DGAlgebra<K> Q = quotient_algebra(A, J);
    CohomologyTable expect;
    for (auto &[deg, n] : H.table().dims)
        if (deg <= d) {
            expect.dims[deg] = n;
            if (!expect.inf)
                expect.inf = deg;
            expect.sup = deg;
        }
    if (!(cohomology(Q).table() == expect))
        throw Error("truncate_model: quotient changed the cohomology in degrees <= " + std::to_string(d));
    require_valid(Q, "truncate_model result");
    return Q;
}

// Tensor algebra model (TV, d) -> A built degree by degree up to a cutoff.
template <class K>
struct FreeModel {
    DGAlgebra<K> model;                  // TV / TV^{>cutoff}
    std::vector<int> generator_degrees;  // V, in order of creation
    std::map<int, Matrix<K>> to_target; // m: model^t -> A^t
    int cutoff = 0;
};

namespace detail {

struct Words {
    std::vector<std::vector<std::vector<std::size_t>>> by_degree; // degree -> words
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;
};

inline Words enumerate_words(const std::vector<int> &gdeg, int maxdeg) {
    Words w;
    w.by_degree.assign(maxdeg + 1, {});
    w.index.assign(maxdeg + 1, {});
    w.by_degree[0].push_back({});
    for (int t = 1; t <= maxdeg; ++t)
        for (std::size_t g = 0; g < gdeg.size(); ++g) {
            const int r = t - gdeg[g];
            if (r < 0)
                continue;
            for (auto &tail : w.by_degree[r]) {
                std::vector<std::size_t> word{g};
                word.insert(word.end(), tail.begin(), tail.end());
                w.by_degree[t].push_back(word);
            }
        }
    for (int t = 0; t <= maxdeg; ++t) {
        std::sort(w.by_degree[t].begin(), w.by_degree[t].end());
        for (std::size_t i = 0; i < w.by_degree[t].size(); ++i)
            w.index[t][w.by_degree[t][i]] = i;
    }
    return w;
}

} // namespace detail

template <class K>
FreeModel<K> free_model(const DGAlgebra<K> &A, int cutoff) {
    require_valid(A, "free_model");
    if (A.lo() < 0)
        throw PreconditionError("free_model: algebra has negative degrees");
    auto H = cohomology(A);
    if (H.dim(0) != 1 || H.dim(1) != 0)
        throw PreconditionError("free_model: need H^0 = k and H^1 = 0");
    const auto tab = H.table();
    if (tab.sup && cutoff < *tab.sup + 1)
        throw PreconditionError("free_model: cutoff must be at least sup H*A + 1");
    const int maxdeg = cutoff + 2;
    std::vector<int> gdeg;
    std::vector<std::map<std::vector<std::size_t>, K>> gd; // d of each generator
    std::vector<Vec<K>> gm;                                // image in A

    struct TV {
        detail::Words w;
        std::vector<Matrix<K>> d, m; // per degree t: TV^t -> TV^{t+1}, TV^t -> A^t
    };
    auto build = [&]() {
        TV tv;
        tv.w = detail::enumerate_words(gdeg, maxdeg);
        auto dim = [&](int t) { return t > maxdeg ? std::size_t(0) : tv.w.by_degree[t].size(); };
        for (int t = 0; t <= maxdeg; ++t) {
            Matrix<K> d(dim(t + 1), dim(t)), m(A.dim(t), dim(t));
            for (std::size_t c = 0; c < dim(t); ++c) {
                const auto &word = tv.w.by_degree[t][c];
                // m(word) = product of generator images
                Vec<K> acc = A.unit();
                int deg = 0;
                for (auto g : word) {
                    acc = A.mul(deg, acc, gdeg[g], gm[g]);
                    deg += gdeg[g];
                }
                if (A.dim(t))
                    m.set_col(c, word.empty() ? A.unit() : acc);
                // Leibniz on the word
                if (t + 1 > maxdeg)
                    continue;
                int pre = 0;
                for (std::size_t i = 0; i < word.size(); ++i) {
                    for (auto &[sub, coef] : gd[word[i]]) {
                        std::vector<std::size_t> nw(word.begin(), word.begin() + i);
                        nw.insert(nw.end(), sub.begin(), sub.end());
                        nw.insert(nw.end(), word.begin() + i + 1, word.end());
                        d(tv.w.index[t + 1].at(nw), c) += signed_one<K>(pre) * coef;
                    }
                    pre += gdeg[word[i]];
                }
            }
            tv.d.push_back(d);
            tv.m.push_back(m);
        }
        return tv;
    };
    auto complex_of = [&](const TV &tv) {
        Complex<K> c;
        c.lo = 0;
        for (int t = 0; t <= maxdeg; ++t)
            c.dims.push_back(tv.w.by_degree[t].size());
        c.diff = tv.d;
        return c;
    };
    auto induced = [&](const TV &tv, const Cohomology<K> &HT, int t) {
        Matrix<K> h(H.dim(t), HT.dim(t));
        for (std::size_t c = 0; c < HT.dim(t); ++c)
            if (H.dim(t))
                h.set_col(c, H.class_coords(t, tv.m[t].apply(HT.reps(t)[c])));
        return h;
    };

    for (int k = 2; k <= cutoff; ++k) {
        TV tv = build();
        Cohomology<K> HT(complex_of(tv));
        // classes of H^k(A) not yet hit
        Matrix<K> hk = induced(tv, HT, k);
        std::vector<Vec<K>> fresh;
        if (H.dim(k))
            for (auto &c : complement(image(hk), SubspaceBasis<K>::whole(H.dim(k))).vectors())
                fresh.push_back(H.cycle_from_coords(k, c, A.dim(k)));
        // classes of H^{k+1}(TV) mapping to zero
        std::vector<Vec<K>> dead;
        if (HT.dim(k + 1))
            for (auto &c : kernel(induced(tv, HT, k + 1)).vectors())
                dead.push_back(HT.cycle_from_coords(k + 1, c, tv.w.by_degree[k + 1].size()));
        for (auto &z : fresh) {
            gdeg.push_back(k);
            gd.push_back({});
            gm.push_back(z);
        }
        for (auto &z : dead) {
            std::map<std::vector<std::size_t>, K> dz;
            for (std::size_t i = 0; i < z.size(); ++i)
                if (!z[i].is_zero())
                    dz[tv.w.by_degree[k + 1][i]] = z[i];
            auto pre = solve(A.d(k), tv.m[k + 1].apply(z));
            if (!pre)
                throw Error("free_model: image of a dead class is not a boundary");
            gdeg.push_back(k);
            gd.push_back(dz);
            gm.push_back(*pre);
        }
    }
    TV tv = build();
    Cohomology<K> HT(complex_of(tv));
    for (int t = 0; t <= cutoff; ++t) {
        Matrix<K> h = induced(tv, HT, t);
        if (HT.dim(t) != H.dim(t) || rank(h) != H.dim(t))
            throw Error("free_model: comparison map is not a quasi-isomorphism in degree " + std::to_string(t));
    }
    // materialize TV / TV^{>cutoff}
    std::vector<std::string> gname;
    std::map<int, std::size_t> count;
    for (int g : gdeg)
        gname.push_back("v" + std::to_string(g) + "_" + std::to_string(count[g]++));
    DGAlgebraData<K> data;
    data.lo = 0;
    for (int t = 0; t <= cutoff; ++t) {
        data.dims.push_back(tv.w.by_degree[t].size());
        std::vector<std::string> lab;
        for (auto &word : tv.w.by_degree[t]) {
            std::string s;
            for (auto g : word)
                s += (s.empty() ? "" : "*") + gname[g];
            lab.push_back(word.empty() ? "1" : s);
        }
        data.labels.push_back(lab);
    }
    data.unit = {K(1)};
    for (int i = 0; i <= cutoff; ++i)
        for (std::size_t x = 0; x < data.dim(i); ++x)
            for (int j = 0; i + j <= cutoff; ++j)
                for (std::size_t y = 0; y < data.dim(j); ++y) {
                    auto w = tv.w.by_degree[i][x];
                    const auto &v = tv.w.by_degree[j][y];
                    w.insert(w.end(), v.begin(), v.end());
                    Vec<K> p(data.dim(i + j), K(0));
                    p[tv.w.index[i + j].at(w)] = K(1);
                    data.mul[{data.global(i, x), data.global(j, y)}] = p;
                }
    std::map<int, Matrix<K>> to_target;
    for (int t = 0; t <= cutoff; ++t) {
        if (t < cutoff)
            data.diff[t] = tv.d[t];
        to_target[t] = tv.m[t];
    }
    FreeModel<K> out{DGAlgebra<K>(data), gdeg, to_target, cutoff};
    require_valid(out.model, "free_model result");
    return out;
}

} // namespace dgar

#endif
