#ifndef DGAR_EXACTLA_HPP
#define DGAR_EXACTLA_HPP

#include "field.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dgar {

template <class K>
using Vec = std::vector<K>;

template <class K>
bool is_zero_vec(const Vec<K> &v) {
    return std::all_of(v.begin(), v.end(), [](const K &x) { return x.is_zero(); });
}

template <class K>
void axpy(Vec<K> &y, const K &a, const Vec<K> &x) {
    if (a.is_zero())
        return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero())
            y[i] += a * x[i];
}

template <class K>
Vec<K> scaled(const Vec<K> &x, const K &a) {
    Vec<K> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = a * x[i];
    return r;
}

template <class K>
Vec<K> unit_vec(std::size_t n, std::size_t i) {
    Vec<K> v(n, K(0));
    v[i] = K(1);
    return v;
}

template <class K>
Vec<K> concat(const Vec<K> &a, const Vec<K> &b) {
    Vec<K> r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// Dense row-major matrix.
template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = K(1);
        return m;
    }
    static Matrix from_rows(const std::vector<Vec<K>> &rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw Error("from_rows: ragged rows");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(const std::vector<Vec<K>> &cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw Error("from_columns: ragged columns");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    K &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const K &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<K> row(std::size_t i) const { return Vec<K>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vec<K> col(std::size_t j) const {
        Vec<K> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }
    void set_col(std::size_t j, const Vec<K> &v) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = v[i];
    }

    bool is_zero() const { return is_zero_vec(data_); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Vec<K> apply(const Vec<K> &v) const {
        if (v.size() != cols_)
            throw Error("matrix-vector size mismatch");
        Vec<K> r(rows_, K(0));
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j].is_zero())
                continue;
            for (std::size_t i = 0; i < rows_; ++i)
                if (!(*this)(i, j).is_zero())
                    r[i] += (*this)(i, j) * v[j];
        }
        return r;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_)
            throw Error("matrix product size mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const K &x = a(i, k);
                if (x.is_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero())
                        c(i, j) += x * b(k, j);
            }
        return c;
    }
    friend Matrix operator+(Matrix a, const Matrix &b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw Error("matrix sum size mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw Error("matrix difference size mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }
    Matrix scaled(const K &s) const {
        Matrix r(*this);
        for (auto &x : r.data_)
            x *= s;
        return r;
    }
    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // Columns [c0, c0 + n).
    Matrix col_block(std::size_t c0, std::size_t n) const {
        Matrix r(rows_, n);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) = (*this)(i, c0 + j);
        return r;
    }
    static Matrix hstack(const Matrix &a, const Matrix &b) {
        if (a.rows_ != b.rows_)
            throw Error("hstack row mismatch");
        Matrix r(a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j)
                r(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j)
                r(i, a.cols_ + j) = b(i, j);
        }
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<K> data_;
};

template <class K>
struct Echelon {
    Matrix<K> reduced;
    std::vector<std::size_t> pivots; // pivot column of row r
};

// Reduced row echelon form by Gauss-Jordan elimination.
template <class K>
Echelon<K> rref(Matrix<K> m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        const K inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            const K f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero())
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix<K> out(r, m.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j);
    return {std::move(out), std::move(pivots)};
}

template <class K>
std::size_t rank(const Matrix<K> &m) {
    return rref(m).pivots.size();
}

// Subspace of K^n held as the rows of its reduced echelon basis.
template <class K>
class SubspaceBasis {
public:
    SubspaceBasis() = default;
    explicit SubspaceBasis(std::size_t ambient) : ambient_(ambient), rows_(0, ambient) {}

    static SubspaceBasis span(std::size_t ambient, const std::vector<Vec<K>> &vectors) {
        SubspaceBasis s(ambient);
        if (vectors.empty())
            return s;
        auto e = rref(Matrix<K>::from_rows(vectors, ambient));
        s.rows_ = std::move(e.reduced);
        s.pivots_ = std::move(e.pivots);
        return s;
    }
    static SubspaceBasis whole(std::size_t ambient) {
        std::vector<Vec<K>> v;
        for (std::size_t i = 0; i < ambient; ++i)
            v.push_back(unit_vec<K>(ambient, i));
        return span(ambient, v);
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return pivots_.size(); }
    const std::vector<std::size_t> &pivots() const { return pivots_; }
    Vec<K> vector(std::size_t i) const { return rows_.row(i); }
    std::vector<Vec<K>> vectors() const {
        std::vector<Vec<K>> v;
        for (std::size_t i = 0; i < dim(); ++i)
            v.push_back(rows_.row(i));
        return v;
    }

    // Coordinates with respect to the echelon basis, absent if v is outside.
    std::optional<Vec<K>> coordinates(const Vec<K> &v) const {
        if (v.size() != ambient_)
            throw Error("coordinates: ambient mismatch");
        Vec<K> c(dim());
        Vec<K> rest = v;
        for (std::size_t i = 0; i < dim(); ++i) {
            c[i] = rest[pivots_[i]];
            if (!c[i].is_zero())
                for (std::size_t j = 0; j < ambient_; ++j)
                    if (!rows_(i, j).is_zero())
                        rest[j] -= c[i] * rows_(i, j);
        }
        if (!is_zero_vec(rest))
            return std::nullopt;
        return c;
    }
    bool contains(const Vec<K> &v) const { return coordinates(v).has_value(); }
    bool contains(const SubspaceBasis &o) const {
        for (std::size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.vector(i)))
                return false;
        return true;
    }

    friend bool operator==(const SubspaceBasis &a, const SubspaceBasis &b) {
        return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
    }

private:
    std::size_t ambient_ = 0;
    Matrix<K> rows_;
    std::vector<std::size_t> pivots_;
};

template <class K>
struct RankKernelImage {
    std::size_t rank = 0;
    SubspaceBasis<K> kernel;
    SubspaceBasis<K> image;
};

template <class K>
SubspaceBasis<K> kernel(const Matrix<K> &m) {
    auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vec<K>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vec<K> v(m.cols(), K(0));
        v[f] = K(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return SubspaceBasis<K>::span(m.cols(), basis);
}

template <class K>
SubspaceBasis<K> image(const Matrix<K> &m) {
    std::vector<Vec<K>> cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        cols.push_back(m.col(j));
    return SubspaceBasis<K>::span(m.rows(), cols);
}

template <class K>
RankKernelImage<K> rank_kernel_image(const Matrix<K> &m) {
    RankKernelImage<K> r;
    r.kernel = kernel(m);
    r.image = image(m);
    r.rank = r.image.dim();
    return r;
}

// Particular solution of m x = b with free variables set to zero.
template <class K>
std::optional<Vec<K>> solve(const Matrix<K> &m, const Vec<K> &b) {
    if (b.size() != m.rows())
        throw Error("solve: dimension mismatch");
    Matrix<K> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto e = rref(aug);
    Vec<K> x(m.cols(), K(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == m.cols())
            return std::nullopt;
        x[e.pivots[r]] = e.reduced(r, m.cols());
    }
    return x;
}

// inside = sub + result, greedily adding echelon basis vectors of `inside`
// in order; the chosen span is returned in canonical form.
template <class K>
SubspaceBasis<K> complement(const SubspaceBasis<K> &sub, const SubspaceBasis<K> &inside) {
    if (sub.ambient_dim() != inside.ambient_dim())
        throw Error("complement: ambient mismatch");
    if (!inside.contains(sub))
        throw Error("complement: subspace not contained");
    std::vector<Vec<K>> acc = sub.vectors();
    std::vector<Vec<K>> chosen;
    std::size_t have = sub.dim();
    for (std::size_t i = 0; i < inside.dim() && have < inside.dim(); ++i) {
        acc.push_back(inside.vector(i));
        if (rank(Matrix<K>::from_rows(acc, sub.ambient_dim())) > have) {
            chosen.push_back(inside.vector(i));
            ++have;
        } else {
            acc.pop_back();
        }
    }
    return SubspaceBasis<K>::span(sub.ambient_dim(), chosen);
}

template <class K>
SubspaceBasis<K> sum(const SubspaceBasis<K> &a, const SubspaceBasis<K> &b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw Error("sum: ambient mismatch");
    auto v = a.vectors();
    for (auto &x : b.vectors())
        v.push_back(x);
    return SubspaceBasis<K>::span(a.ambient_dim(), v);
}

template <class K>
SubspaceBasis<K> intersect(const SubspaceBasis<K> &a, const SubspaceBasis<K> &b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw Error("intersect: ambient mismatch");
    const std::size_t n = a.ambient_dim();
    // Solve sum u_i a_i - sum v_j b_j = 0.
    Matrix<K> m(n, a.dim() + b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        m.set_col(i, a.vector(i));
    for (std::size_t j = 0; j < b.dim(); ++j) {
        auto v = b.vector(j);
        for (auto &x : v)
            x = -x;
        m.set_col(a.dim() + j, v);
    }
    auto ker = kernel(m);
    std::vector<Vec<K>> out;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        auto w = ker.vector(k);
        Vec<K> x(n, K(0));
        for (std::size_t i = 0; i < a.dim(); ++i)
            axpy(x, w[i], a.vector(i));
        out.push_back(std::move(x));
    }
    return SubspaceBasis<K>::span(n, out);
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K> &m) {
    if (m.rows() != m.cols())
        return std::nullopt;
    const std::size_t n = m.rows();
    auto e = rref(Matrix<K>::hstack(m, Matrix<K>::identity(n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        return std::nullopt;
    return e.reduced.col_block(n, n);
}

template <class K>
std::string vec_to_string(const Vec<K> &v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += v[i].to_string();
    }
    return s + ")";
}

} // namespace dgar

#endif
