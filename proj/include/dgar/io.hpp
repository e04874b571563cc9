#ifndef DGAR_IO_HPP
#define DGAR_IO_HPP

#include "dgmodule.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace dgar {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

// Parse failure located by a JSON pointer into the offending document.
struct DocumentError : InputError {
    std::string pointer;
    DocumentError(std::string ptr, const std::string &msg)
        : InputError((ptr.empty() ? std::string("/") : ptr) + ": " + msg), pointer(std::move(ptr)) {}
};

namespace io {

inline std::string at(const std::string &ptr, const std::string &key) { return ptr + "/" + key; }
inline std::string at(const std::string &ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const json &member(const json &j, const std::string &ptr, const std::string &key) {
    if (!j.is_object())
        throw DocumentError(ptr, "expected an object");
    if (!j.contains(key))
        throw DocumentError(at(ptr, key), "missing member");
    return j.at(key);
}

inline const json &array(const json &j, const std::string &ptr) {
    if (!j.is_array())
        throw DocumentError(ptr, "expected an array");
    return j;
}

inline long long integer(const json &j, const std::string &ptr) {
    if (!j.is_number_integer())
        throw DocumentError(ptr, "expected an integer");
    return j.get<long long>();
}

inline std::size_t index(const json &j, const std::string &ptr) {
    const long long v = integer(j, ptr);
    if (v < 0)
        throw DocumentError(ptr, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

} // namespace io

inline json field_to_json(const FieldSpec &f) {
    if (f.kind == FieldSpec::Kind::Rationals)
        return "Q";
    return json{{"GFp", f.p}};
}

inline FieldSpec field_from_json(const json &j, const std::string &ptr = "/field") {
    if (j.is_string() && j.get<std::string>() == "Q")
        return FieldSpec::rationals();
    if (j.is_object() && j.contains("GFp")) {
        const long long p = io::integer(j.at("GFp"), io::at(ptr, "GFp"));
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
            throw DocumentError(io::at(ptr, "GFp"), "modulus must be prime");
        return FieldSpec::prime(static_cast<std::uint64_t>(p));
    }
    throw DocumentError(ptr, "field must be \"Q\" or {\"GFp\": p}");
}

// Field declared by a document, defaulting to Q when absent.
inline FieldSpec document_field(const json &doc) {
    return doc.is_object() && doc.contains("field") ? field_from_json(doc.at("field")) : FieldSpec::rationals();
}

inline json scalar_to_json(const Rational &x) { return x.to_string(); }
inline json scalar_to_json(const GFp &x) { return x.value(); }

template <class K>
K scalar_from_json(const json &j, const std::string &ptr);

template <>
inline Rational scalar_from_json<Rational>(const json &j, const std::string &ptr) {
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (!j.is_string())
        throw DocumentError(ptr, "rational scalars are \"p/q\" strings");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const InputError &e) {
        throw DocumentError(ptr, e.what());
    }
}

template <>
inline GFp scalar_from_json<GFp>(const json &j, const std::string &ptr) {
    if (!j.is_number_integer())
        throw DocumentError(ptr, "GF(p) scalars are integers");
    return GFp(j.get<long>());
}

template <class K>
json vec_to_json(const Vec<K> &v) {
    json a = json::array();
    for (auto &x : v)
        a.push_back(scalar_to_json(x));
    return a;
}

template <class K>
Vec<K> vec_from_json(const json &j, const std::string &ptr, std::optional<std::size_t> size = std::nullopt) {
    io::array(j, ptr);
    if (size && j.size() != *size)
        throw DocumentError(ptr, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
    Vec<K> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(scalar_from_json<K>(j[i], io::at(ptr, i)));
    return v;
}

template <class K>
json matrix_to_json(const Matrix<K> &m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        a.push_back(vec_to_json(m.row(r)));
    return a;
}

template <class K>
Matrix<K> matrix_from_json(const json &j, const std::string &ptr, std::size_t rows, std::size_t cols) {
    io::array(j, ptr);
    if (j.size() != rows)
        throw DocumentError(ptr, "expected " + std::to_string(rows) + " rows");
    std::vector<Vec<K>> rs;
    for (std::size_t r = 0; r < rows; ++r)
        rs.push_back(vec_from_json<K>(j[r], io::at(ptr, r), cols));
    return Matrix<K>::from_rows(rs, cols);
}

// ---------------------------------------------------------------------------
// DG algebra documents

template <class K>
json algebra_to_json(const DGAlgebra<K> &A) {
    json doc;
    doc["schema_version"] = schema_version;
    doc["field"] = field_to_json(K::spec());
    const auto d = A.data();
    json degs = json::array();
    for (int t = A.lo(); t <= A.hi(); ++t) {
        json labels = json::array();
        for (auto &l : A.labels()[t - A.lo()])
            labels.push_back(l);
        degs.push_back({{"degree", t}, {"dim", A.dim(t)}, {"labels", labels}});
    }
    doc["degrees"] = degs;
    doc["unit"] = vec_to_json(d.unit);
    json mul = json::array();
    for (auto &[key, v] : d.mul) {
        const int i = A.degree_of(key.first), j = A.degree_of(key.second);
        mul.push_back({i, A.local_of(key.first), j, A.local_of(key.second), vec_to_json(v)});
    }
    doc["mul"] = mul;
    json diff = json::array();
    for (auto &[t, m] : d.diff)
        diff.push_back({t, matrix_to_json(m)});
    doc["diff"] = diff;
    return doc;
}

// With check = false the axioms are left to the caller (the validate command reports them).
template <class K>
DGAlgebra<K> algebra_from_json(const json &doc, bool check = true) {
    using io::at;
    if (!doc.is_object())
        throw DocumentError("", "algebra document must be an object");
    if (io::integer(io::member(doc, "", "schema_version"), "/schema_version") != schema_version)
        throw DocumentError("/schema_version", "unsupported schema version");
    if (!(document_field(doc) == K::spec()))
        throw DocumentError("/field", "field does not match the active field " + K::spec().name());
    DGAlgebraData<K> d;
    const auto &degs = io::array(io::member(doc, "", "degrees"), "/degrees");
    if (degs.empty())
        throw DocumentError("/degrees", "at least one degree is required");
    for (std::size_t k = 0; k < degs.size(); ++k) {
        const std::string p = at("/degrees", k);
        const int t = static_cast<int>(io::integer(io::member(degs[k], p, "degree"), at(p, "degree")));
        const std::size_t n = io::index(io::member(degs[k], p, "dim"), at(p, "dim"));
        if (k == 0)
            d.lo = t;
        else if (t != d.lo + static_cast<int>(k))
            throw DocumentError(at(p, "degree"), "degrees must be consecutive and increasing");
        d.dims.push_back(n);
        std::vector<std::string> labels;
        if (degs[k].contains("labels")) {
            const auto &l = io::array(degs[k].at("labels"), at(p, "labels"));
            if (l.size() != n)
                throw DocumentError(at(p, "labels"), "expected " + std::to_string(n) + " labels");
            for (std::size_t i = 0; i < n; ++i) {
                if (!l[i].is_string())
                    throw DocumentError(at(at(p, "labels"), i), "labels are strings");
                labels.push_back(l[i].get<std::string>());
            }
        }
        d.labels.push_back(labels);
    }
    d.unit = vec_from_json<K>(io::member(doc, "", "unit"), "/unit", d.dim(0));
    if (doc.contains("mul")) {
        const auto &mul = io::array(doc.at("mul"), "/mul");
        for (std::size_t k = 0; k < mul.size(); ++k) {
            const std::string p = at("/mul", k);
            const auto &e = io::array(mul[k], p);
            if (e.size() != 5)
                throw DocumentError(p, "entries are [i, a, j, b, coefficients]");
            const int i = static_cast<int>(io::integer(e[0], at(p, 0)));
            const std::size_t a = io::index(e[1], at(p, 1));
            const int j = static_cast<int>(io::integer(e[2], at(p, 2)));
            const std::size_t b = io::index(e[3], at(p, 3));
            if (a >= d.dim(i))
                throw DocumentError(at(p, 1), "basis index out of range in degree " + std::to_string(i));
            if (b >= d.dim(j))
                throw DocumentError(at(p, 3), "basis index out of range in degree " + std::to_string(j));
            auto key = std::make_pair(d.global(i, a), d.global(j, b));
            if (d.mul.count(key))
                throw DocumentError(p, "duplicate product entry");
            d.mul[key] = vec_from_json<K>(e[4], at(p, 4), d.dim(i + j));
        }
    }
    if (doc.contains("diff")) {
        const auto &diff = io::array(doc.at("diff"), "/diff");
        for (std::size_t k = 0; k < diff.size(); ++k) {
            const std::string p = at("/diff", k);
            const auto &e = io::array(diff[k], p);
            if (e.size() != 2)
                throw DocumentError(p, "entries are [degree, matrix]");
            const int t = static_cast<int>(io::integer(e[0], at(p, 0)));
            if (d.diff.count(t))
                throw DocumentError(p, "duplicate differential entry");
            d.diff[t] = matrix_from_json<K>(e[1], at(p, 1), d.dim(t + 1), d.dim(t));
        }
    }
    DGAlgebra<K> A(d);
    auto rep = check ? validate(A) : ValidationReport{};
    if (!rep.ok()) {
        const auto &f = rep.failures.front();
        std::string w;
        for (auto i : f.witness)
            w += " " + std::to_string(i);
        throw DocumentError("", "not a DG algebra: " + f.axiom + " fails at basis" + w);
    }
    return A;
}

// ---------------------------------------------------------------------------
// semi-free module documents: generators and coefficients [j, i, degree, vector]

template <class K>
json module_to_json(const SemiFreeModule<K> &L) {
    json doc;
    doc["schema_version"] = schema_version;
    doc["field"] = field_to_json(K::spec());
    json gens = json::array();
    for (auto &g : L.gens())
        gens.push_back({{"label", g.label}, {"degree", g.degree}});
    doc["generators"] = gens;
    json co = json::array();
    for (auto &[key, v] : L.coeffs())
        co.push_back({key.first, key.second, L.degree(key.first) - L.degree(key.second) + 1, vec_to_json(v)});
    doc["coefficients"] = co;
    return doc;
}

template <class K>
SemiFreeModule<K> module_from_json(const AlgebraPtr<K> &alg, const json &doc) {
    using io::at;
    if (!doc.is_object())
        throw DocumentError("", "module document must be an object");
    if (io::integer(io::member(doc, "", "schema_version"), "/schema_version") != schema_version)
        throw DocumentError("/schema_version", "unsupported schema version");
    if (!(document_field(doc) == K::spec()))
        throw DocumentError("/field", "field does not match the algebra");
    std::vector<Generator> gens;
    const auto &g = io::array(io::member(doc, "", "generators"), "/generators");
    for (std::size_t k = 0; k < g.size(); ++k) {
        const std::string p = at("/generators", k);
        Generator x;
        x.degree = static_cast<int>(io::integer(io::member(g[k], p, "degree"), at(p, "degree")));
        x.label = g[k].contains("label") && g[k].at("label").is_string() ? g[k].at("label").get<std::string>()
                                                                          : "g" + std::to_string(k);
        gens.push_back(x);
    }
    typename SemiFreeModule<K>::CoeffMap coeffs;
    if (doc.contains("coefficients")) {
        const auto &c = io::array(doc.at("coefficients"), "/coefficients");
        for (std::size_t k = 0; k < c.size(); ++k) {
            const std::string p = at("/coefficients", k);
            const auto &e = io::array(c[k], p);
            if (e.size() != 4)
                throw DocumentError(p, "entries are [j, i, degree, vector]");
            const std::size_t j = io::index(e[0], at(p, 0)), i = io::index(e[1], at(p, 1));
            if (i >= j || j >= gens.size())
                throw DocumentError(p, "coefficients must satisfy i < j < rank");
            const int s = static_cast<int>(io::integer(e[2], at(p, 2)));
            if (s != gens[j].degree - gens[i].degree + 1)
                throw DocumentError(at(p, 2), "degree must be deg g_j - deg g_i + 1");
            coeffs[{j, i}] = vec_from_json<K>(e[3], at(p, 3), alg->dim(s));
        }
    }
    try {
        return SemiFreeModule<K>(alg, gens, coeffs);
    } catch (const PreconditionError &e) {
        throw DocumentError("/coefficients", e.what());
    }
}

inline json table_to_json(const CohomologyTable &t) {
    json a = json::object();
    for (auto &[d, n] : t.dims)
        a[std::to_string(d)] = n;
    return a;
}

// FNV-1a over the canonical dump; stable across runs and platforms.
inline std::string document_hash(const json &doc) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : doc.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace dgar

#endif
