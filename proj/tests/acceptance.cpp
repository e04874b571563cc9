#include <dgar/dot.hpp>
#include <dgar/fixtures.hpp>

#include "support/random_objects.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace dgar;
using Q = Rational;

namespace {

// Every comparison below is exact; these pin the sample sizes and ranges.
constexpr int kFamilyDepth = 6;            // criterion 1: n = 0..6
constexpr int kAmplitudeInstances = 50;    // criterion 11: per fixture algebra
constexpr int kAmplitudeMaxDraws = 400;
constexpr int kSerrePairs = 20;            // criterion 13: per Gorenstein fixture
constexpr int kKoszulRange = 10;           // criterion 12: j = 0..10
constexpr int kLevelDepth = 3;             // criterion 10: n = 0..3
constexpr int kUniquenessInstances = 6;    // criterion 14: per algebra

AlgebraPtr<Q> fx(const std::string &name) { return share(fixture<Q>(name)); }

std::string tuple(const std::vector<int> &a) { return detail::tuple_name(a); }

bool isomorphic(const SemiFreeModule<Q> &a, const SemiFreeModule<Q> &b) {
    return iso_test(a, b).verdict == IsoVerdict::Isomorphic;
}

std::size_t end_dim_oracle(const SemiFreeModule<Q> &c) {
    return Cohomology<Q>(hom_complex(c, c.total()).complex()).dim(0);
}

struct Check {
    std::ostream &log;
    bool ok = true;
    void expect(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            log << "    failed: " << what << "\n";
        }
    }
};

// ---------------------------------------------------------------------------

bool c1_f_invariant(Check &ck) {
    for (int d : {2, 3}) {
        auto ctx = family_context(fx("sphere:" + std::to_string(d)));
        auto F = build_family(ctx, std::vector<int>(kFamilyDepth, 0), false);
        for (std::size_t n = 0; n < F.chain.size(); ++n) {
            const auto &C = F.chain[n];
            auto f = f_invariant(C);
            // independent route on the presentation itself: dim H*(C tensor k)
            const auto tor = cohomology_module(tensor(C, augmentation_module(C.alg(), Side::Left))).table().total();
            const std::string at = "sphere:" + std::to_string(d) + " C_" + std::to_string(n);
            ck.expect(f.value == ExtCount::finite(n + 1), at + ": f = " + f.value.to_string());
            ck.expect(f.via_hom == n + 1 && f.via_tensor == n + 1, at + ": routes disagree");
            ck.expect(tor == n + 1, at + ": dim H*(C tensor k) = " + std::to_string(tor));
        }
    }
    return ck.ok;
}

bool c2_gorenstein(Check &ck) {
    const std::vector<std::pair<std::string, int>> cases = {
        {"sphere:2", 2}, {"sphere:3", 3}, {"sphere:4", 4}, {"sphere:5", 5},  {"prodspheres:2,2", 4},
        {"prodspheres:2,4", 6}, {"cp3", 6}, {"exterior:3,5", 8}};
    for (auto &[name, d] : cases) {
        auto c = gorenstein_check(fx(name));
        ck.expect(c.certified, name + " not certified: " + c.failure);
        ck.expect(c.d == d, name + " dimension " + std::to_string(c.d));
        ck.expect(c.top_minus_one_vanishes, name + ": H^{d-1} != 0");
    }
    auto bad = gorenstein_check(fx("rigged:nongor"));
    ck.expect(!bad.certified, "rigged:nongor certified");
    return ck.ok;
}

bool c3_kunneth(Check &ck) {
    auto t = cohomology(*fx("prodspheres:2,2")).table();
    const std::vector<std::size_t> want = {1, 0, 2, 0, 1};
    for (int i = 0; i <= 4; ++i)
        ck.expect(t.dim(i) == want[i], "H^" + std::to_string(i) + " = " + std::to_string(t.dim(i)));
    ck.expect(t.total() == 4, "extra classes");
    // oracle: convolution of the factor tables
    auto s = cohomology(*fx("sphere:2")).table();
    for (int i = 0; i <= 4; ++i) {
        std::size_t conv = 0;
        for (int j = 0; j <= i; ++j)
            conv += s.dim(j) * s.dim(i - j);
        ck.expect(conv == t.dim(i), "convolution mismatch in degree " + std::to_string(i));
    }
    return ck.ok;
}

bool c4_pencil(Check &ck) {
    auto ctx = family_context(fx("prodspheres:2,2"));
    const std::vector<std::pair<Q, Q>> lams = {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(1)}, {Q(1), Q(2)}, {Q(2), Q(4)}};
    std::vector<Pencil<Q>> ps;
    for (auto &l : lams) {
        ps.push_back(build_pencil(ctx, std::nullopt, l));
        const auto &p = ps.back();
        const std::string at = "[" + l.first.to_string() + ":" + l.second.to_string() + "]";
        ck.expect(p.f == 2, at + ": f = " + std::to_string(p.f));
        ck.expect(p.endo_dim == 1 && p.local, at + ": End not k");
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) {
            const bool proportional = (lams[i].first * lams[j].second - lams[i].second * lams[j].first).is_zero();
            auto r = iso_test(ps[i].module, ps[j].module);
            const bool iso = r.verdict == IsoVerdict::Isomorphic;
            ck.expect(r.verdict != IsoVerdict::Inconclusive, "inconclusive pair");
            ck.expect(iso == proportional, "pair " + std::to_string(i) + "," + std::to_string(j) + ": " +
                                               to_string(r.verdict));
        }
    return ck.ok;
}

bool c5_family_separation(Check &ck) {
    auto ctx = family_context(fx("prodspheres:2,2"));
    ck.expect(ctx.e == 2 && ctx.cert.d == 4, "e = 2, d = 4 expected");
    auto alphas = admissible_alphas(3);
    ck.expect(alphas.size() == 5, "|M_3| = " + std::to_string(alphas.size()));
    std::vector<SemiFreeModule<Q>> mods;
    std::vector<CohomologyTable> tables;
    for (auto &a : alphas) {
        auto F = build_family(ctx, a, false);
        mods.push_back(F.module());
        tables.push_back(cohomology_module(F.module()).table());
        ck.expect(f_invariant(F.module()).value == ExtCount::finite(4), "C_" + tuple(a) + ": f != 4");
        ck.expect(F.invariants_ok(), "C_" + tuple(a) + ": construction log has failures");
    }
    for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::size_t j = i + 1; j < mods.size(); ++j) {
            const std::string at = tuple(alphas[i]) + " vs " + tuple(alphas[j]);
            ck.expect(!(tables[i] == tables[j]), at + ": equal cohomology tables");
            auto r = component_certificate(mods[i], mods[j], ctx.cert);
            ck.expect(r.verdict == ComponentVerdict::DifferentComponents, at + ": " + to_string(r.verdict));
        }
    return ck.ok;
}

bool c6_shift_components(Check &ck) {
    auto A = fx("sphere:3");
    auto cert = gorenstein_check(A);
    auto F = free_module(A, {0});
    auto r1 = component_certificate(F, shift(F, 1), cert);
    auto r2 = component_certificate(F, shift(F, 2), cert);
    ck.expect(r1.verdict == ComponentVerdict::DifferentComponents, "(A, Sigma A): " + to_string(r1.verdict));
    ck.expect(r2.verdict == ComponentVerdict::SameComponentWitness, "(A, Sigma^2 A): " + to_string(r2.verdict));
    return ck.ok;
}

bool c7_endo_recursion(Check &ck) {
    {
        auto A = fx("rigged:gor0235");
        auto ctx = family_context(A, 3);
        auto F = build_family(ctx, {1});
        const auto &r = F.endo.at(0);
        const std::size_t h2 = cohomology(*A).dim(2);
        ck.expect(h2 == 1, "dim H^2 A = " + std::to_string(h2));
        ck.expect(r.dim_now == 1 + h2, "dim End(C_1) = " + std::to_string(r.dim_now));
        ck.expect(end_dim_oracle(F.module()) == 1 + h2, "oracle disagrees");
        ck.expect(r.kernel_square_zero && r.kernel_dim == h2, "kernel not a square-zero ideal of dim H^2 A");
        ck.expect(r.splitting_found && r.splitting_section && r.splitting_multiplicative, "splitting not verified");
        ck.expect(r.ok(), "recursion check failed");
        ck.expect(F.invariants_ok(), "construction log has failures");
    }
    std::vector<std::pair<std::string, std::vector<std::vector<int>>>> cases = {
        {"sphere:2", {{0, 0, 0}}}, {"sphere:3", {{0, 0, 0}}}, {"prodspheres:2,2", admissible_alphas(3)}};
    for (auto &[name, alphas] : cases) {
        auto ctx = family_context(fx(name));
        for (auto &a : alphas) {
            auto F = build_family(ctx, a);
            for (std::size_t i = 0; i < F.endo.size(); ++i) {
                const auto &r = F.endo[i];
                const std::string at = name + " C_" + tuple(a) + " step " + std::to_string(i + 1);
                ck.expect(r.ok() && r.dim_ext == 0 && r.dim_now == 1, at + ": End not k");
                ck.expect(end_dim_oracle(F.chain[i + 1]) == 1, at + ": oracle disagrees");
            }
        }
    }
    return ck.ok;
}

bool c8_ar_triangle(Check &ck) {
    for (int d : {2, 3}) {
        auto A = fx("sphere:" + std::to_string(d));
        auto cert = gorenstein_check(A);
        auto t = ar_triangle(free_module(A, {0}), cert);
        auto C1 = build_family(family_context(A), {0}, false).module();
        const std::string at = "sphere:" + std::to_string(d);
        ck.expect(isomorphic(t.y, shift(C1, d - 1)), at + ": middle term not Sigma^{d-1} C_1");
        ck.expect(t.f_y == 2 && t.f_z == 1 && t.f_tau == 1 && t.additive, at + ": f not additive");
        ck.expect(t.socle_dim == 1, at + ": socle dim " + std::to_string(t.socle_dim));
    }
    return ck.ok;
}

bool c9_translate(Check &ck) {
    auto check = [&](const std::string &at, const SemiFreeModule<Q> &c, const GorensteinCertificate<Q> &cert) {
        auto t = ar_translate(c, cert);
        ck.expect(t.check && t.check->verdict == IsoVerdict::Isomorphic, at + ": translate not Sigma^{d-1}");
        ck.expect(isomorphic(t.result, shift(c, cert.d - 1)), at + ": independent iso test failed");
    };
    {
        auto ctx = family_context(fx("sphere:2"));
        auto F = build_family(ctx, {0, 0}, false);
        for (std::size_t n = 0; n < F.chain.size(); ++n)
            check("sphere:2 C_" + std::to_string(n), F.chain[n], ctx.cert);
    }
    {
        auto ctx = family_context(fx("prodspheres:2,2"));
        check("prodspheres:2,2 C_[1:1]", build_pencil(ctx, std::nullopt, {Q(1), Q(1)}).module, ctx.cert);
    }
    return ck.ok;
}

bool c10_level(Check &ck) {
    auto F = build_family(family_context(fx("sphere:2")), std::vector<int>(kLevelDepth, 0), false);
    for (std::size_t n = 0; n < F.chain.size(); ++n) {
        auto L = level_certificate(F.chain[n]);
        const std::string at = "C_" + std::to_string(n);
        ck.expect(L.exact && L.upper_bound == n + 1 && L.lower_bound == n + 1,
                  at + ": bounds " + std::to_string(L.lower_bound) + ".." + std::to_string(L.upper_bound) + " " + L.note);
        ck.expect(L.ghosts.size() == n && L.ghosts_vanish && L.composite_nonzero && L.cone_identified,
                  at + ": ghost sequence not verified");
    }
    return ck.ok;
}

bool c11_amplitude(Check &ck) {
    std::mt19937_64 rng(dgar::testing::suite_seed(1101));
    for (const char *name : {"sphere:2", "sphere:3", "sphere:4", "prodspheres:2,2", "cp3", "rigged:gor0235",
                             "rigged:acyclic", "rigged:nongor"}) {
        auto A = fx(name);
        const int ampA = amplitude(cohomology(*A).table()).amp;
        int done = 0, draws = 0;
        while (done < kAmplitudeInstances && draws++ < kAmplitudeMaxDraws) {
            auto M = dgar::testing::random_compact(A, rng, static_cast<int>(rng() % 3));
            auto X = dgar::testing::random_finite_left(A, rng);
            auto HM = cohomology_module(M).table(), HX = cohomology_module(X).table();
            if (HM.is_zero() || HX.is_zero())
                continue;
            auto T = cohomology_module(tensor(M, X)).table();
            auto m = amplitude(HM), x = amplitude(HX);
            const std::string at = std::string(name) + " #" + std::to_string(done);
            ck.expect(!T.is_zero() && *T.inf == m.inf + x.inf, at + ": inf formula");
            ck.expect(!T.is_zero() && *T.sup >= m.inf + x.sup, at + ": sup bound");
            ck.expect(!T.is_zero() && amplitude(T).amp >= x.amp, at + ": amp(M tensor X) >= amp X");
            ck.expect(m.amp >= ampA, at + ": amp M >= amp A");
            ++done;
        }
        ck.expect(done == kAmplitudeInstances, std::string(name) + ": only " + std::to_string(done) + " instances");
    }
    return ck.ok;
}

bool c12_koszul(Check &ck) {
    for (int d : {2, 3, 4}) {
        auto A = fx("sphere:" + std::to_string(d));
        const int cutoff = kKoszulRange * (d - 1);
        auto c = is_compact(augmentation_module(A), cutoff);
        ck.expect(!c.compact && c.note().rfind("not within cutoff", 0) == 0, "k_A reported compact");
        std::map<int, std::size_t> want;
        for (int j = 0; j <= kKoszulRange; ++j)
            want[j * (d - 1)] = 1;
        ck.expect(c.witness.betti == want, "sphere:" + std::to_string(d) + ": generator degrees differ");
    }
    return ck.ok;
}

bool c13_serre(Check &ck) {
    std::mt19937_64 rng(dgar::testing::suite_seed(1301));
    for (const char *name : {"sphere:2", "sphere:3", "sphere:4", "sphere:5", "prodspheres:2,2", "prodspheres:2,4",
                             "cp3", "exterior:3,5", "rigged:gor0235"}) {
        auto A = fx(name);
        auto cert = gorenstein_check(A);
        for (int k = 0; k < kSerrePairs; ++k) {
            auto x = dgar::testing::random_compact(A, rng, static_cast<int>(rng() % 3));
            auto y = dgar::testing::random_compact(A, rng, static_cast<int>(rng() % 3));
            auto r = serre_dim_check(x, y, cert);
            ck.expect(r.holds, std::string(name) + " pair " + std::to_string(k) + ": " + std::to_string(r.hom_xy) +
                                   " vs " + std::to_string(r.hom_y_sx));
        }
    }
    return ck.ok;
}

// The same module written in a permuted basis of each graded piece.
FiniteModule<Q> permuted(const FiniteModule<Q> &M, std::mt19937_64 &rng) {
    std::map<int, Matrix<Q>> P, Pinv;
    auto perm = [&](int t) -> const Matrix<Q> & {
        if (!P.count(t)) {
            std::vector<std::size_t> p(M.dim(t));
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            Matrix<Q> m(p.size(), p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                m(p[i], i) = Q(1);
            P[t] = m;
            Pinv[t] = *inverse(m);
        }
        return P.at(t);
    };
    const auto &A = *M.alg();
    return make_finite_module<Q>(
        M.alg(), M.lo(), M.dims(),
        [&](int t, std::size_t, std::size_t) {
            perm(t);
            return perm(t + 1) * M.d(t) * Pinv.at(t);
        },
        [&](int t, std::size_t b, std::size_t, std::size_t) {
            perm(t);
            return perm(t + A.degree_of(b)) * M.act(t, b) * Pinv.at(t);
        },
        M.side());
}

bool c14_uniqueness(Check &ck) {
    std::mt19937_64 rng(dgar::testing::suite_seed(1401));
    for (const char *name : {"sphere:2", "sphere:3", "prodspheres:2,2"}) {
        auto A = fx(name);
        for (int k = 0; k < kUniquenessInstances; ++k) {
            auto M = dgar::testing::random_compact(A, rng, 2 + static_cast<int>(rng() % 2)).total();
            auto M2 = permuted(M, rng);
            auto R1 = minimal_semifree_resolution(M, default_cutoff(M));
            auto R2 = minimal_semifree_resolution(M2, default_cutoff(M2));
            const std::string at = std::string(name) + " #" + std::to_string(k);
            ck.expect(R1.terminated && R2.terminated, at + ": resolution did not terminate");
            auto r = iso_test(R1.resolution, R2.resolution);
            ck.expect(r.verdict == IsoVerdict::Isomorphic, at + ": " + to_string(r.verdict) + " " + r.reason);
            ck.expect(R1.resolution.rank() == 0 || r.strict, at + ": witness is not a strict isomorphism");
        }
    }
    return ck.ok;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool(Check &)>>> criteria = {
        {"f-invariant of C_n equals n+1 over sphere:2 and sphere:3", c1_f_invariant},
        {"Gorenstein certification and refutation", c2_gorenstein},
        {"Kunneth dimensions of prodspheres:2,2", c3_kunneth},
        {"pencil separation over prodspheres:2,2", c4_pencil},
        {"family separation over M_3", c5_family_separation},
        {"shift components over sphere:3", c6_shift_components},
        {"endomorphism recursion", c7_endo_recursion},
        {"AR triangle ending at A", c8_ar_triangle},
        {"AR translate is Sigma^{d-1}", c9_translate},
        {"level certificates over sphere:2", c10_level},
        {"amplitude inequalities on random instances", c11_amplitude},
        {"resolution of k_A within cutoff", c12_koszul},
        {"Serre dimension identity on random pairs", c13_serre},
        {"uniqueness of minimal resolutions", c14_uniqueness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::ostringstream details;
        Check ck{details};
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].second(ck);
        } catch (const std::exception &e) {
            details << "    exception: " << e.what() << "\n";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << " (" << secs << " s)\n"
                  << details.str() << std::flush;
        failed += !ok;
    }
    return failed ? 1 : 0;
}
