#ifndef DGAR_COCHAIN_HPP
#define DGAR_COCHAIN_HPP

#include "exactla.hpp"

#include <map>
#include <optional>

namespace dgar {

// Bounded cochain complex of finite-dimensional vector spaces, degrees lo..lo+dims.size()-1.
template <class K>
struct Complex {
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix<K>> diff; // diff[i]: C^{lo+i} -> C^{lo+i+1}

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    std::size_t dim(int deg) const {
        if (deg < lo || deg > hi())
            return 0;
        return dims[deg - lo];
    }
    Matrix<K> d(int deg) const {
        if (deg < lo || deg > hi())
            return Matrix<K>(dim(deg + 1), dim(deg));
        return diff[deg - lo];
    }
};

// Per-degree dimensions of a cohomology, with support bounds.
struct CohomologyTable {
    std::map<int, std::size_t> dims; // only nonzero entries
    std::optional<int> inf, sup;

    std::size_t dim(int deg) const {
        auto it = dims.find(deg);
        return it == dims.end() ? 0 : it->second;
    }
    std::size_t total() const {
        std::size_t t = 0;
        for (auto &[d, n] : dims)
            t += n;
        return t;
    }
    bool is_zero() const { return dims.empty(); }
    CohomologyTable shifted(int n) const {
        // table of Sigma^n X: degree i moves to i - n
        CohomologyTable t;
        for (auto &[d, k] : dims)
            t.dims[d - n] = k;
        if (inf)
            t.inf = *inf - n;
        if (sup)
            t.sup = *sup - n;
        return t;
    }
    bool operator==(const CohomologyTable &) const = default;
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (auto &[d, n] : dims) {
            if (!first)
                s += ", ";
            first = false;
            s += std::to_string(d) + ":" + std::to_string(n);
        }
        return s + "}";
    }
};

template <class K>
struct DegreeCohomology {
    SubspaceBasis<K> cycles, boundaries;
    std::vector<Vec<K>> reps; // canonical complement basis of boundaries in cycles
    Matrix<K> reps_then_boundaries;
};

// Cohomology of a bounded complex with canonical representatives and class coordinates.
template <class K>
class Cohomology {
public:
    Cohomology() = default;
    explicit Cohomology(const Complex<K> &c) : lo_(c.lo) {
        for (int deg = c.lo; deg <= c.hi(); ++deg) {
            DegreeCohomology<K> h;
            h.cycles = kernel(c.d(deg));
            h.boundaries = image(c.d(deg - 1));
            if (h.boundaries.ambient_dim() != c.dim(deg))
                h.boundaries = SubspaceBasis<K>(c.dim(deg));
            auto comp = complement(h.boundaries, h.cycles);
            h.reps = comp.vectors();
            std::vector<Vec<K>> cols = h.reps;
            for (auto &b : h.boundaries.vectors())
                cols.push_back(b);
            h.reps_then_boundaries = Matrix<K>::from_columns(cols, c.dim(deg));
            if (!h.reps.empty()) {
                table_.dims[deg] = h.reps.size();
                if (!table_.inf)
                    table_.inf = deg;
                table_.sup = deg;
            }
            per_.push_back(std::move(h));
        }
    }

    const CohomologyTable &table() const { return table_; }
    std::size_t dim(int deg) const { return table_.dim(deg); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(per_.size()) - 1; }

    const std::vector<Vec<K>> &reps(int deg) const {
        static const std::vector<Vec<K>> none;
        if (deg < lo_ || deg > hi())
            return none;
        return per_[deg - lo_].reps;
    }
    const SubspaceBasis<K> &cycles(int deg) const { return at(deg).cycles; }
    const SubspaceBasis<K> &boundaries(int deg) const { return at(deg).boundaries; }

    bool is_cycle(int deg, const Vec<K> &v) const {
        if (deg < lo_ || deg > hi())
            return true;
        return per_[deg - lo_].cycles.contains(v);
    }
    bool is_boundary(int deg, const Vec<K> &v) const {
        if (deg < lo_ || deg > hi())
            return true;
        return per_[deg - lo_].boundaries.contains(v);
    }

    // Coordinates of the class of a cycle in the representative basis.
    Vec<K> class_coords(int deg, const Vec<K> &v) const {
        if (deg < lo_ || deg > hi())
            return {};
        const auto &h = per_[deg - lo_];
        auto x = solve(h.reps_then_boundaries, v);
        if (!x)
            throw Error("class_coords: vector is not a cycle in degree " + std::to_string(deg));
        return Vec<K>(x->begin(), x->begin() + h.reps.size());
    }

    // Representative cycle for given class coordinates.
    Vec<K> cycle_from_coords(int deg, const Vec<K> &coords, std::size_t ambient) const {
        Vec<K> v(ambient, K(0));
        const auto &r = reps(deg);
        for (std::size_t i = 0; i < r.size(); ++i)
            axpy(v, coords[i], r[i]);
        return v;
    }

private:
    const DegreeCohomology<K> &at(int deg) const {
        if (deg < lo_ || deg > hi())
            throw Error("cohomology degree out of window");
        return per_[deg - lo_];
    }

    int lo_ = 0;
    std::vector<DegreeCohomology<K>> per_;
    CohomologyTable table_;
};

} // namespace dgar

#endif
