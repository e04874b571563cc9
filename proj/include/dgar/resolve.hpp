#ifndef DGAR_RESOLVE_HPP
#define DGAR_RESOLVE_HPP

#include "dgmodule.hpp"

#include <optional>
#include <string>

namespace dgar {

// A count in N_0 or the explicit infinity marker.
class ExtCount {
public:
    static ExtCount finite(std::size_t n) { return ExtCount(n, false); }
    static ExtCount infinity() { return ExtCount(0, true); }
    bool is_infinite() const { return inf_; }
    std::size_t value() const {
        if (inf_)
            throw Error("ExtCount: value of infinity requested");
        return n_;
    }
    std::string to_string() const { return inf_ ? std::string("inf") : std::to_string(n_); }
    bool operator==(const ExtCount &) const = default;

private:
    ExtCount(std::size_t n, bool inf) : n_(n), inf_(inf) {}
    std::size_t n_ = 0;
    bool inf_ = false;
};

template <class K>
struct MinimalResolution {
    struct Layer {
        int degree = 0;            // step degree t
        std::size_t new_classes = 0; // generators of degree t hitting new classes
        std::size_t killers = 0;     // generators of degree t-1 killing Ker H^t
    };

    FiniteModule<K> target;
    SemiFreeModule<K> resolution;
    GenMap<K> quasi_iso;
    std::vector<Layer> layers;
    bool terminated = false;
    int cutoff = 0;
    std::optional<int> inf; // inf H*(target)
    std::map<int, std::size_t> betti;

    std::size_t generator_count() const { return resolution.rank(); }

    // Multiplicities in the order of the filtration: gamma[0] counts the new classes
    // in degree i, gamma[j-i+1] the kernel killers in degree j, delta[j-i-1] the new
    // classes in degree j > i.
    std::vector<std::size_t> gamma() const {
        std::vector<std::size_t> g;
        if (!inf)
            return g;
        for (auto &l : layers) {
            const std::size_t idx_new = 0;
            if (l.degree == *inf) {
                if (g.size() < 1)
                    g.resize(1, 0);
                g[idx_new] += l.new_classes;
            }
            const int j = l.degree - 1; // killer degree
            const std::size_t k = static_cast<std::size_t>(j - *inf + 1);
            if (l.killers && j >= *inf) {
                if (g.size() <= k)
                    g.resize(k + 1, 0);
                g[k] += l.killers;
            }
        }
        return g;
    }
    std::vector<std::size_t> delta() const {
        std::vector<std::size_t> d;
        if (!inf)
            return d;
        for (auto &l : layers)
            if (l.degree > *inf && l.new_classes) {
                const std::size_t k = static_cast<std::size_t>(l.degree - *inf - 1);
                if (d.size() <= k)
                    d.resize(k + 1, 0);
                d[k] += l.new_classes;
            }
        return d;
    }
    // beta_i = gamma_0 + gamma_1, beta_j = delta_{j-i-1} + gamma_{j-i+1} for j > i.
    bool betti_recurrence_holds() const {
        if (!inf)
            return betti.empty();
        auto g = gamma(), d = delta();
        auto at = [](const std::vector<std::size_t> &v, long k) -> std::size_t {
            return (k < 0 || static_cast<std::size_t>(k) >= v.size()) ? 0 : v[k];
        };
        const int i = *inf;
        int top = i;
        for (auto &[deg, n] : betti)
            top = std::max(top, deg);
        for (int j = i; j <= top + 1; ++j) {
            std::size_t b = betti.count(j) ? betti.at(j) : 0;
            std::size_t pred = j == i ? at(g, 0) + at(g, 1) : at(d, j - i - 1) + at(g, j - i + 1);
            if (b != pred)
                return false;
        }
        for (auto &[deg, n] : betti)
            if (deg < i && n)
                return false;
        return true;
    }
};

namespace detail {

template <class K>
Matrix<K> induced_on_cohomology(const Matrix<K> &f, int t, const Cohomology<K> &Hs, const Cohomology<K> &Ht) {
    Matrix<K> m(Ht.dim(t), Hs.dim(t));
    const auto &reps = Hs.reps(t);
    for (std::size_t c = 0; c < reps.size(); ++c)
        if (Ht.dim(t) > 0)
            m.set_col(c, Ht.class_coords(t, f.apply(reps[c])));
    return m;
}

template <class K>
bool is_quasi_iso(const SemiFreeModule<K> &L, const FiniteModule<K> &M, const GenMap<K> &a, const Cohomology<K> &HL,
                  const Cohomology<K> &HM) {
    const int lo = std::min(L.total().lo(), M.lo()), hi = std::max(L.total().hi(), M.hi());
    for (int t = lo; t <= hi; ++t) {
        if (HL.dim(t) != HM.dim(t))
            return false;
        if (HL.dim(t) == 0)
            continue;
        if (rank(induced_on_cohomology(map_matrix(L, M, a, t), t, HL, HM)) != HM.dim(t))
            return false;
    }
    return true;
}

} // namespace detail

template <class K>
MinimalResolution<K> minimal_semifree_resolution(const FiniteModule<K> &M, int cutoff) {
    const AlgebraPtr<K> &alg = M.alg();
    if (!alg->is_simply_connected_model())
        throw PreconditionError("minimal_semifree_resolution: algebra is not a simply connected model");
    MinimalResolution<K> R;
    R.target = M;
    R.cutoff = cutoff;
    const auto HM = cohomology_module(M);
    R.inf = HM.table().inf;
    std::vector<Generator> gens;
    typename SemiFreeModule<K>::CoeffMap coeffs;
    std::vector<Vec<K>> images;
    auto build = [&] { return SemiFreeModule<K>(alg, gens, coeffs); };
    SemiFreeModule<K> L = build();
    GenMap<K> alpha;
    if (!R.inf) {
        R.resolution = L;
        R.quasi_iso = alpha;
        R.terminated = true;
        return R;
    }
    for (int t = *R.inf; t <= cutoff + 1; ++t) {
        alpha.images = images;
        const auto HL = cohomology_module(L);
        if (detail::is_quasi_iso(L, M, alpha, HL, HM)) {
            R.terminated = true;
            break;
        }
        typename MinimalResolution<K>::Layer layer;
        layer.degree = t;
        const Matrix<K> at = map_matrix(L, M, alpha, t);
        const Matrix<K> h = detail::induced_on_cohomology(at, t, HL, HM);
        // classes of H^t(M) missed by the current map
        std::vector<Vec<K>> fresh;
        if (HM.dim(t) > 0 && t <= cutoff) {
            auto comp = complement(image(h), SubspaceBasis<K>::whole(HM.dim(t)));
            for (auto &c : comp.vectors())
                fresh.push_back(HM.cycle_from_coords(t, c, M.dim(t)));
        }
        // kernel of H^t on the current resolution
        std::vector<Vec<K>> ys;
        if (HL.dim(t) > 0)
            for (auto &kv : kernel(h).vectors())
                ys.push_back(HL.cycle_from_coords(t, kv, L.total().dim(t)));
        const std::size_t old = gens.size();
        for (std::size_t c = 0; c < fresh.size(); ++c) {
            gens.push_back({"g" + std::to_string(gens.size()), t});
            images.push_back(fresh[c]);
        }
        for (auto &y : ys) {
            const std::size_t j = gens.size();
            gens.push_back({"g" + std::to_string(j), t - 1});
            for (std::size_t i = 0; i < old; ++i) {
                Vec<K> c = L.component(i, t, y);
                if (!is_zero_vec(c))
                    coeffs[{j, i}] = c;
            }
            auto m = solve(M.d(t - 1), at.apply(y));
            if (!m)
                throw Error("minimal_semifree_resolution: kernel class has no preimage");
            images.push_back(*m);
        }
        layer.new_classes = fresh.size();
        layer.killers = ys.size();
        if (layer.new_classes || layer.killers) {
            R.layers.push_back(layer);
            L = build();
        }
    }
    alpha.images = images;
    // the last permitted step may already have completed the resolution
    if (!R.terminated)
        R.terminated = detail::is_quasi_iso(L, M, alpha, cohomology_module(L), HM);
    R.resolution = L;
    R.quasi_iso = alpha;
    for (auto &g : L.gens())
        R.betti[g.degree]++;
    if (!R.resolution.is_minimal())
        throw Error("minimal_semifree_resolution: result is not minimal");
    if (!is_chain_map(L, M, alpha))
        throw Error("minimal_semifree_resolution: comparison map is not a chain map");
    return R;
}

template <class K>
MinimalResolution<K> minimal_semifree_resolution(const SemiFreeModule<K> &L, int cutoff) {
    return minimal_semifree_resolution(L.total(), cutoff);
}

// Generators of a compact minimal resolution sit in degrees <= sup H*M, so this
// bound always suffices for compact objects.
template <class K>
int default_cutoff(const FiniteModule<K> &M) {
    auto t = cohomology_module(M).table();
    return t.sup ? *t.sup + 1 : 0;
}

template <class K>
struct FInvariant {
    ExtCount value = ExtCount::finite(0);
    std::size_t via_hom = 0, via_tensor = 0; // meaningful when finite
    MinimalResolution<K> resolution;
};

template <class K>
FInvariant<K> f_invariant(const FiniteModule<K> &M, std::optional<int> cutoff = std::nullopt) {
    FInvariant<K> F;
    F.resolution = minimal_semifree_resolution(M, cutoff ? *cutoff : default_cutoff(M));
    if (!F.resolution.terminated) {
        F.value = ExtCount::infinity();
        return F;
    }
    const auto &L = F.resolution.resolution;
    const auto &alg = M.alg();
    F.via_hom = Cohomology<K>(hom_complex(L, augmentation_module(alg)).complex()).table().total();
    F.via_tensor = cohomology_module(tensor(L, augmentation_module(alg, Side::Left))).table().total();
    if (F.via_hom != F.via_tensor || F.via_hom != L.rank())
        throw Error("f_invariant: the two computations disagree (" + std::to_string(F.via_hom) + " vs " +
                    std::to_string(F.via_tensor) + ", " + std::to_string(L.rank()) + " generators)");
    F.value = ExtCount::finite(F.via_hom);
    return F;
}

template <class K>
FInvariant<K> f_invariant(const SemiFreeModule<K> &L, std::optional<int> cutoff = std::nullopt) {
    return f_invariant(L.total(), cutoff);
}

template <class K>
struct Compactness {
    bool compact = false; // false means "not within cutoff", which is no proof
    MinimalResolution<K> witness;
    std::string note() const {
        return compact ? "compact: minimal resolution terminates"
                       : "not within cutoff: the resolution did not terminate; this does not prove non-compactness";
    }
};

template <class K>
Compactness<K> is_compact(const FiniteModule<K> &M, int cutoff) {
    Compactness<K> c;
    c.witness = minimal_semifree_resolution(M, cutoff);
    c.compact = c.witness.terminated;
    return c;
}

template <class K>
Compactness<K> is_compact(const SemiFreeModule<K> &L, int cutoff) {
    return is_compact(L.total(), cutoff);
}

struct Amplitude {
    int inf = 0, sup = 0, amp = 0;
};

inline Amplitude amplitude(const CohomologyTable &t) {
    if (!t.inf || !t.sup)
        throw PreconditionError("amplitude: cohomology vanishes, amplitude undefined");
    return {*t.inf, *t.sup, *t.sup - *t.inf};
}

template <class K>
Amplitude amplitude(const FiniteModule<K> &M) {
    return amplitude(cohomology_module(M).table());
}

template <class K>
Amplitude amplitude(const SemiFreeModule<K> &L) {
    return amplitude(L.total());
}

// Top layer of a terminated resolution: generators of maximal degree w whose
// span splits off the underlying graded module. Returns (w, count), or nothing
// when the check fails.
template <class K>
std::optional<std::pair<int, std::size_t>> top_split_off(const MinimalResolution<K> &R) {
    const auto &L = R.resolution;
    if (!R.terminated || L.rank() == 0)
        return std::nullopt;
    const int w = L.max_degree();
    std::size_t count = 0;
    for (std::size_t j = 0; j < L.rank(); ++j)
        if (L.degree(j) == w)
            ++count;
    for (auto &[key, v] : L.coeffs())
        if (L.degree(key.second) == w)
            return std::nullopt;
    return std::make_pair(w, count);
}

} // namespace dgar

#endif
