#include <dgar/dot.hpp>
#include <dgar/fixtures.hpp>
#include <dgar/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace dgar;

namespace {

enum Exit { Success = 0, Refuted = 1, BadInput = 2, Undecided = 3 };

struct Options {
    std::string command, kind, algebra, output;
    std::vector<std::string> alpha, lambda, files;
    std::vector<int> shifts;
    std::optional<int> e, n, cutoff;
    std::optional<std::uint64_t> prime;
    bool json = false, ring = false, no_endo = false;
    unsigned jobs = 1;
};

struct Outcome {
    int code = Success;
    std::string verdict;
    json result = json::object();
    std::ostringstream text;
};

// Documents are cached so that stdin can be consulted more than once.
json read_json(const std::string &path) {
    static std::map<std::string, json> cache;
    if (auto it = cache.find(path); it != cache.end())
        return it->second;
    std::ifstream file;
    std::istream *in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file)
            throw InputError("cannot open '" + path + "'");
        in = &file;
    }
    try {
        return cache[path] = json::parse(*in);
    } catch (const json::parse_error &e) {
        throw InputError(path + ": malformed JSON (" + e.what() + ")");
    }
}

bool looks_like_file(const std::string &s) {
    return s == "-" || s.find('/') != std::string::npos || (s.size() > 5 && s.substr(s.size() - 5) == ".json");
}

FieldSpec field_of(const Options &o) {
    if (looks_like_file(o.algebra))
        return document_field(read_json(o.algebra));
    return o.prime ? FieldSpec::prime(*o.prime) : FieldSpec::rationals();
}

template <class K>
DGAlgebra<K> load_algebra(const Options &o, bool check = true) {
    if (looks_like_file(o.algebra))
        return algebra_from_json<K>(read_json(o.algebra), check);
    return fixture<K>(o.algebra);
}

std::vector<int> parse_tuple(const std::string &s) {
    if (s.empty())
        return {};
    return fixtures::parse_ints(s, "'" + s + "'");
}

template <class K>
std::pair<K, K> parse_lambda(const std::string &s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw InputError("lambda must be given as l1,l2");
    auto one = [](const std::string &t) {
        if constexpr (K::char_zero)
            return Rational::parse(t);
        else
            return K(std::stol(t));
    };
    return {one(s.substr(0, comma)), one(s.substr(comma + 1))};
}

// Run fn(i) for i < n on up to `jobs` threads, each with the caller's field active.
template <class K, class Fn>
void parallel_for(unsigned jobs, std::size_t n, Fn fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    const FieldSpec spec = K::spec();
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
        pool.emplace_back([&] {
            std::optional<GFp::Scope> scope;
            if (spec.kind == FieldSpec::Kind::PrimeField)
                scope.emplace(spec.p);
            for (std::size_t i; (i = next++) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto &th : pool)
        th.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

template <class K>
struct Session {
    const Options &opt;
    AlgebraPtr<K> alg;
    std::optional<FamilyContext<K>> ctx_;

    const FamilyContext<K> &ctx() {
        if (!ctx_)
            ctx_ = family_context(alg, opt.e);
        return *ctx_;
    }

    struct Object {
        std::string name;
        SemiFreeModule<K> module;
    };

    std::vector<Object> objects(std::size_t want = 0) {
        std::vector<Object> out;
        const auto &k = opt.kind;
        if (k == "A" || k == "free") {
            auto shifts = opt.shifts.empty() ? std::vector<int>{0} : opt.shifts;
            if (want == 2 && shifts.size() == 1 && shifts[0] != 0)
                shifts.insert(shifts.begin(), 0);
            for (int s : shifts)
                out.push_back({s ? "Sigma^" + std::to_string(s) + " A" : "A", free_module(alg, {-s})});
        } else if (k == "family") {
            auto alphas = opt.alpha.empty() ? std::vector<std::string>{""} : opt.alpha;
            for (auto &a : alphas) {
                auto t = parse_tuple(a);
                out.push_back({"C_" + detail::tuple_name(t), build_family(ctx(), t, false).module()});
            }
        } else if (k == "pencil") {
            if (opt.lambda.empty())
                throw InputError("pencil objects need --lambda");
            for (auto &l : opt.lambda) {
                auto lam = parse_lambda<K>(l);
                out.push_back({"C_[" + lam.first.to_string() + ":" + lam.second.to_string() + "]",
                               build_pencil(ctx(), opt.e, lam).module});
            }
        } else if (k == "module") {
            if (opt.files.empty())
                throw InputError("module objects need --file");
            for (auto &f : opt.files)
                out.push_back({f, module_from_json(alg, read_json(f))});
        } else {
            throw InputError("unknown object kind '" + k + "' (A, family, pencil, module)");
        }
        if (want && out.size() != want)
            throw InputError("this command needs exactly " + std::to_string(want) + " objects, got " +
                             std::to_string(out.size()));
        return out;
    }
};

std::string degrees_string(const std::vector<int> &d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? " " : "") + std::to_string(d[i]);
    return s;
}

template <class K>
std::vector<int> generator_degrees(const SemiFreeModule<K> &L) {
    std::vector<int> d;
    for (auto &g : L.gens())
        d.push_back(g.degree);
    return d;
}

json log_json(const std::vector<LogEntry> &log) {
    json a = json::array();
    for (auto &e : log)
        a.push_back({{"check", e.check}, {"ok", e.ok}, {"detail", e.detail}});
    return a;
}

int worst(int a, int b) {
    auto rank = [](int c) { return c == Success ? 0 : c == Undecided ? 1 : 2; };
    return rank(a) >= rank(b) ? a : b;
}

// ---------------------------------------------------------------------------

template <class K>
void cmd_validate(const Options &o, Outcome &out) {
    auto A = load_algebra<K>(o, false);
    auto rep = validate(A);
    json fails = json::array();
    for (auto &f : rep.failures) {
        fails.push_back({{"axiom", f.axiom}, {"witness", f.witness}, {"detail", f.detail}});
        out.text << "FAIL " << f.axiom << " " << f.detail << "\n";
    }
    out.result["failures"] = fails;
    out.result["simply_connected_model"] = A.is_simply_connected_model();
    out.code = rep.ok() ? Success : Refuted;
    out.verdict = rep.ok() ? "valid" : "invalid";
    out.text << out.verdict << "\n";
}

template <class K>
void cmd_cohomology(Session<K> &s, Outcome &out) {
    auto HR = cohomology_ring(*s.alg);
    out.result["table"] = table_to_json(HR.table());
    out.text << "H* = " << HR.table().to_string() << "\n";
    if (s.opt.ring) {
        out.result["ring"] = algebra_to_json(HR.ring);
        out.text << out.result["ring"].dump(2) << "\n";
    }
    out.verdict = "computed";
}

template <class K>
void cmd_gorenstein(Session<K> &s, Outcome &out) {
    auto c = gorenstein_check(s.alg);
    out.result["certified"] = c.certified;
    out.result["dimension"] = c.d;
    out.result["table"] = table_to_json(c.table);
    out.result["failure"] = c.failure;
    out.result["top_minus_one_vanishes"] = c.top_minus_one_vanishes;
    out.result["da_witness_verified"] = c.da_witness_verified;
    if (c.da_witness)
        out.result["da_witness"] = vec_to_json(*c.da_witness);
    out.code = c.certified ? Success : Refuted;
    out.verdict = c.certified ? "Gorenstein" : "not certified";
    out.text << out.verdict;
    if (c.certified)
        out.text << ", dimension " << c.d << (c.da_witness_verified ? ", DA ~ Sigma^d A verified" : "");
    else
        out.text << ": " << c.failure;
    out.text << "\n";
}

template <class K>
json resolution_json(const MinimalResolution<K> &R) {
    json betti = json::object();
    for (auto &[d, n] : R.betti)
        betti[std::to_string(d)] = n;
    return {{"terminated", R.terminated},
            {"cutoff", R.cutoff},
            {"betti", betti},
            {"module", module_to_json(R.resolution)}};
}

template <class K>
void cmd_resolve(Session<K> &s, Outcome &out) {
    std::vector<std::pair<std::string, FiniteModule<K>>> targets;
    if (s.opt.kind == "kA")
        targets.push_back({"k_A", augmentation_module(s.alg)});
    else
        for (auto &ob : s.objects())
            targets.push_back({ob.name, ob.module.total()});
    std::vector<MinimalResolution<K>> res(targets.size());
    parallel_for<K>(s.opt.jobs, targets.size(), [&](std::size_t i) {
        const int cut = s.opt.cutoff ? *s.opt.cutoff : default_cutoff(targets[i].second);
        res[i] = minimal_semifree_resolution(targets[i].second, cut);
    });
    json arr = json::array();
    for (std::size_t i = 0; i < res.size(); ++i) {
        auto j = resolution_json(res[i]);
        j["object"] = targets[i].first;
        arr.push_back(j);
        out.text << targets[i].first << ": generators in degrees " << degrees_string(generator_degrees(res[i].resolution))
                 << (res[i].terminated ? " (terminated)" : " (NotWithinCutoff " + std::to_string(res[i].cutoff) + ")")
                 << "\n";
        out.code = worst(out.code, res[i].terminated ? Success : Undecided);
    }
    out.result["resolutions"] = arr;
    out.verdict = out.code == Success ? "compact" : "NotWithinCutoff";
}

template <class K>
void cmd_f(Session<K> &s, Outcome &out) {
    std::vector<std::pair<std::string, FiniteModule<K>>> targets;
    if (s.opt.kind == "kA")
        targets.push_back({"k_A", augmentation_module(s.alg)});
    else
        for (auto &ob : s.objects())
            targets.push_back({ob.name, ob.module.total()});
    std::vector<ExtCount> vals(targets.size(), ExtCount::finite(0));
    parallel_for<K>(s.opt.jobs, targets.size(),
                    [&](std::size_t i) { vals[i] = f_invariant(targets[i].second, s.opt.cutoff).value; });
    json arr = json::array();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        arr.push_back({{"object", targets[i].first}, {"f", vals[i].to_string()}});
        if (targets.size() == 1)
            out.text << vals[i].to_string() << "\n";
        else
            out.text << targets[i].first << ": " << vals[i].to_string() << "\n";
        out.code = worst(out.code, vals[i].is_infinite() ? Undecided : Success);
    }
    out.result["values"] = arr;
    out.verdict = out.code == Success ? "finite" : "NotWithinCutoff";
}

template <class K>
json endo_recursion_json(const EndoRecursion<K> &r) {
    return {{"dim_prev", r.dim_prev},
            {"dim_now", r.dim_now},
            {"dim_extension", r.dim_ext},
            {"kernel_dim", r.kernel_dim},
            {"inclusion_iso", r.inclusion_iso},
            {"restriction_multiplicative", r.restriction_multiplicative},
            {"kernel_square_zero", r.kernel_square_zero},
            {"kernel_ideal", r.kernel_ideal},
            {"splitting_found", r.splitting_found},
            {"splitting_section", r.splitting_section},
            {"splitting_multiplicative", r.splitting_multiplicative},
            {"ok", r.ok()}};
}

template <class K>
void cmd_family(Session<K> &s, Outcome &out) {
    auto alphas = s.opt.alpha.empty() ? std::vector<std::string>{""} : s.opt.alpha;
    const auto &ctx = s.ctx();
    std::vector<Family<K>> fams(alphas.size());
    parallel_for<K>(s.opt.jobs, alphas.size(),
                    [&](std::size_t i) { fams[i] = build_family(ctx, parse_tuple(alphas[i]), !s.opt.no_endo); });
    json arr = json::array();
    for (auto &F : fams) {
        json steps = json::array();
        for (std::size_t i = 0; i < F.logs.size(); ++i) {
            json st = {{"kind", F.alpha[i] ? "Second" : "First"},
                       {"e_n", F.e_list[i]},
                       {"e_n_A", F.eA_list[i]},
                       {"zeta", vec_to_json(F.zeta[i])},
                       {"log", log_json(F.logs[i])}};
            if (i < F.endo.size())
                st["endo_recursion"] = endo_recursion_json(F.endo[i]);
            steps.push_back(st);
        }
        const auto f = f_invariant(F.module()).value;
        arr.push_back({{"alpha", F.alpha},
                       {"e", F.e ? json(*F.e) : json(nullptr)},
                       {"d", F.d},
                       {"f", f.to_string()},
                       {"table", table_to_json(cohomology_module(F.module()).table())},
                       {"steps", steps},
                       {"module", module_to_json(F.module())},
                       {"invariants_ok", F.invariants_ok()}});
        out.text << "C_" << detail::tuple_name(F.alpha) << ": f = " << f.to_string()
                 << ", e_n = " << degrees_string(F.e_list)
                 << ", H* = " << cohomology_module(F.module()).table().to_string()
                 << (F.invariants_ok() ? ", invariants ok" : ", INVARIANT FAILURE") << "\n";
        for (auto &l : F.logs)
            for (auto &e : l)
                if (!e.ok)
                    out.text << "  failed: " << e.check << " " << e.detail << "\n";
        out.code = worst(out.code, F.invariants_ok() ? Success : Refuted);
    }
    out.result["plan"] = {{"d", ctx.cert.d}, {"e", ctx.e ? json(*ctx.e) : json(nullptr)}};
    out.result["families"] = arr;
    out.verdict = out.code == Success ? "constructed" : "invariant failure";
}

template <class K>
void cmd_pencil(Session<K> &s, Outcome &out) {
    if (s.opt.lambda.empty())
        throw InputError("pencil needs --lambda");
    json arr = json::array();
    for (auto &l : s.opt.lambda) {
        auto p = build_pencil(s.ctx(), s.opt.e, parse_lambda<K>(l));
        arr.push_back({{"lambda", {scalar_to_json(p.lambda.first), scalar_to_json(p.lambda.second)}},
                       {"e", p.e},
                       {"f", p.f},
                       {"endo_dim", p.endo_dim},
                       {"local", p.local},
                       {"module", module_to_json(p.module)}});
        out.text << "C_[" << p.lambda.first.to_string() << ":" << p.lambda.second.to_string() << "]: f = " << p.f
                 << ", dim End = " << p.endo_dim << (p.local ? ", local" : ", not local") << "\n";
    }
    out.result["pencil"] = arr;
    out.verdict = "constructed";
}

template <class K>
void cmd_endo(Session<K> &s, Outcome &out) {
    auto obs = s.objects();
    json arr = json::array();
    for (auto &ob : obs) {
        auto E = endo_algebra(ob.module);
        auto loc = is_local(E.algebra);
        arr.push_back({{"object", ob.name},
                       {"dim", E.algebra.dim()},
                       {"radical_dim", loc.radical.radical.dim()},
                       {"verdict", to_string(loc.verdict)}});
        out.text << ob.name << ": dim End = " << E.algebra.dim() << ", radical " << loc.radical.radical.dim() << ", "
                 << to_string(loc.verdict) << "\n";
        out.code = worst(out.code, loc.verdict == LocalVerdict::Local      ? Success
                                   : loc.verdict == LocalVerdict::NotLocal ? Refuted
                                                                           : Undecided);
    }
    out.result["objects"] = arr;
    out.verdict = out.code == Success ? "local" : out.code == Refuted ? "not local" : "inconclusive";
}

template <class K>
void cmd_iso(Session<K> &s, Outcome &out) {
    auto obs = s.objects(2);
    auto r = iso_test(obs[0].module, obs[1].module);
    out.verdict = to_string(r.verdict);
    out.result = {{"objects", {obs[0].name, obs[1].name}},
                  {"verdict", out.verdict},
                  {"strict", r.strict},
                  {"reason", r.reason}};
    out.code = r.verdict == IsoVerdict::Isomorphic ? Success : r.verdict == IsoVerdict::NotIsomorphic ? Refuted : Undecided;
    out.text << obs[0].name << " vs " << obs[1].name << ": " << out.verdict << "\n";
}

template <class K>
void cmd_translate(Session<K> &s, Outcome &out) {
    auto cert = gorenstein_check(s.alg);
    auto obs = s.objects();
    json arr = json::array();
    for (auto &ob : obs) {
        auto t = ar_translate(ob.module, cert);
        std::string v = t.check ? to_string(t.check->verdict) : "Inconclusive";
        arr.push_back({{"object", ob.name},
                       {"generator_degrees", generator_degrees(t.result)},
                       {"iso_to_shift", v},
                       {"module", module_to_json(t.result)}});
        out.text << "tau " << ob.name << ": generators in degrees " << degrees_string(generator_degrees(t.result))
                 << ", vs Sigma^" << cert.d - 1 << ": " << v << "\n";
        out.code = worst(out.code, v == "Isomorphic" ? Success : v == "NotIsomorphic" ? Refuted : Undecided);
    }
    out.result["translates"] = arr;
    out.verdict = out.code == Success ? "Sigma^{d-1}" : "unverified";
}

template <class K>
void cmd_ar_triangle(Session<K> &s, Outcome &out) {
    auto cert = gorenstein_check(s.alg);
    json arr = json::array();
    for (auto &ob : s.objects()) {
        auto t = ar_triangle(ob.module, cert);
        arr.push_back({{"object", ob.name},
                       {"socle_dim", t.socle_dim},
                       {"socle_flag", t.socle_flag},
                       {"f_tau", t.f_tau},
                       {"f_middle", t.f_y},
                       {"f_end", t.f_z},
                       {"additive", t.additive},
                       {"middle_summands", t.y_summands},
                       {"middle", module_to_json(t.y)}});
        out.text << "tau Z -> Y -> Z for Z = " << ob.name << ": f(Y) = " << t.f_y << ", f(Z) = " << t.f_z
                 << ", f(tau Z) = " << t.f_tau << ", socle dim " << t.socle_dim << (t.socle_flag ? " (flagged)" : "")
                 << "\n";
        out.code = worst(out.code, t.additive ? Success : Refuted);
    }
    out.result["triangles"] = arr;
    out.verdict = out.code == Success ? "additive" : "not additive";
}

template <class K>
void cmd_separate(Session<K> &s, Outcome &out) {
    auto cert = gorenstein_check(s.alg);
    auto obs = s.objects(2);
    auto r = component_certificate(obs[0].module, obs[1].module, cert);
    out.verdict = to_string(r.verdict);
    out.result = {{"objects", {obs[0].name, obs[1].name}},
                  {"verdict", out.verdict},
                  {"f", {r.f1.to_string(), r.f2.to_string()}},
                  {"inf", {r.inf1, r.inf2}},
                  {"j", r.j ? json(*r.j) : json(nullptr)},
                  {"iso", r.iso ? json(to_string(r.iso->verdict)) : json(nullptr)},
                  {"note", r.note}};
    out.code = r.verdict == ComponentVerdict::Inconclusive ? Undecided : Success;
    out.text << out.verdict << " (" << r.note << ")\n";
}

template <class K>
void cmd_level(Session<K> &s, Outcome &out) {
    json arr = json::array();
    for (auto &ob : s.objects()) {
        auto L = level_certificate(ob.module);
        arr.push_back({{"object", ob.name},
                       {"lower", L.lower_bound},
                       {"upper", L.upper_bound},
                       {"exact", L.exact},
                       {"ghosts", L.ghosts.size()},
                       {"ghosts_vanish", L.ghosts_vanish},
                       {"composite_nonzero", L.composite_nonzero},
                       {"cone_identified", L.cone_identified},
                       {"note", L.note}});
        out.text << "level " << ob.name << ": ";
        if (L.exact)
            out.text << L.upper_bound;
        else
            out.text << "between " << L.lower_bound << " and " << L.upper_bound;
        out.text << "\n";
        out.code = worst(out.code, L.exact ? Success : Undecided);
    }
    out.result["levels"] = arr;
    out.verdict = out.code == Success ? "exact" : "bounds only";
}

template <class K>
void cmd_export_dot(Session<K> &s, Outcome &out) {
    DotGraph g;
    if (s.opt.kind == "family")
        g = family_tree(s.ctx(), s.opt.n ? static_cast<std::size_t>(*s.opt.n) : 3);
    else if (s.opt.kind == "pencil") {
        std::vector<std::pair<K, K>> lams;
        for (auto &l : s.opt.lambda)
            lams.push_back(parse_lambda<K>(l));
        g = pencil_graph(s.ctx(), s.opt.e, lams);
    } else
        throw InputError("export-dot supports family and pencil");
    const std::string dot = to_dot(g);
    if (!s.opt.output.empty()) {
        std::ofstream f(s.opt.output);
        if (!f)
            throw InputError("cannot write '" + s.opt.output + "'");
        f << dot;
        out.text << "wrote " << s.opt.output << " (" << g.nodes.size() << " nodes, " << g.leaf_count() << " leaves)\n";
    } else {
        out.text << dot;
    }
    out.result = {{"nodes", g.nodes.size()}, {"leaves", g.leaf_count()}, {"dot", dot}};
    out.verdict = "exported";
}

template <class K>
int run(const Options &o, Outcome &out) {
    if (o.command == "validate") {
        cmd_validate<K>(o, out);
        return out.code;
    }
    Session<K> s{o, share(load_algebra<K>(o)), std::nullopt};
    out.result["algebra"] = {{"source", o.algebra},
                             {"field", field_to_json(K::spec())},
                             {"hash", document_hash(algebra_to_json(*s.alg))}};
    json saved = out.result;
    if (o.command == "cohomology")
        cmd_cohomology(s, out);
    else if (o.command == "gorenstein")
        cmd_gorenstein(s, out);
    else if (o.command == "resolve")
        cmd_resolve(s, out);
    else if (o.command == "f")
        cmd_f(s, out);
    else if (o.command == "family")
        cmd_family(s, out);
    else if (o.command == "pencil")
        cmd_pencil(s, out);
    else if (o.command == "endo")
        cmd_endo(s, out);
    else if (o.command == "iso")
        cmd_iso(s, out);
    else if (o.command == "translate")
        cmd_translate(s, out);
    else if (o.command == "ar-triangle")
        cmd_ar_triangle(s, out);
    else if (o.command == "separate")
        cmd_separate(s, out);
    else if (o.command == "level")
        cmd_level(s, out);
    else if (o.command == "export-dot")
        cmd_export_dot(s, out);
    out.result["algebra"] = saved["algebra"];
    return out.code;
}

json report(const Options &o, const Outcome &out) {
    json r;
    r["schema_version"] = schema_version;
    r["command"] = o.command;
    r["exit_code"] = out.code;
    r["verdict"] = out.verdict;
    r["result"] = out.result;
    const char *seed = std::getenv("DGA_AR_SEED");
    r["provenance"] = {{"seed", seed ? json(seed) : json(nullptr)}, {"jobs", o.jobs}};
    return r;
}

void add_object_options(CLI::App *c, Options &o) {
    c->add_option("kind", o.kind, "object kind: A, family, pencil, module (kA for resolve and f)")->required();
    c->add_option("algebra", o.algebra, "fixture name or algebra JSON file ('-' for stdin)")->required();
    c->add_option("--alpha", o.alpha, "family tuple, e.g. 0,1,0 (repeatable)");
    c->add_option("--lambda", o.lambda, "pencil coordinates l1,l2 (repeatable)");
    c->add_option("--shift", o.shifts, "shift of A (repeatable)")->allow_extra_args(false);
    c->add_option("--file", o.files, "module JSON document (repeatable)");
    c->add_option("--e", o.e, "interior degree for second-kind steps and pencils");
    c->add_option("--cutoff", o.cutoff, "resolution cutoff degree");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact computations in derived categories of DG algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json, "print a JSON report");
    app.add_option("--jobs", o.jobs, "worker threads for independent workloads")->check(CLI::PositiveNumber);
    app.add_option("--prime", o.prime, "use GF(p) for built-in fixtures");

    auto algebra_only = [&](const std::string &name, const std::string &desc) {
        auto *c = app.add_subcommand(name, desc);
        c->add_option("algebra", o.algebra, "fixture name or algebra JSON file ('-' for stdin)")->required();
        c->add_option("--e", o.e, "interior degree");
        return c;
    };
    algebra_only("validate", "check the DG algebra axioms");
    algebra_only("cohomology", "cohomology table")->add_flag("--ring", o.ring, "emit the cohomology ring");
    algebra_only("gorenstein", "certify the Gorenstein property");
    auto *fam = algebra_only("family", "build iterated cone families C_alpha");
    fam->add_option("--alpha", o.alpha, "tuple in {0,1} without neighbouring 1s (repeatable)");
    fam->add_flag("--no-endo", o.no_endo, "skip the endomorphism recursion check");
    algebra_only("pencil", "build the cones C_lambda")->add_option("--lambda", o.lambda, "l1,l2 (repeatable)");
    for (auto [name, desc] : std::vector<std::pair<const char *, const char *>>{
             {"resolve", "minimal semi-free resolution"},
             {"f", "f-invariant"},
             {"endo", "endomorphism algebra and locality"},
             {"iso", "isomorphism test between two objects"},
             {"translate", "AR translate"},
             {"ar-triangle", "AR triangle ending at an indecomposable"},
             {"separate", "component certificate for two objects"},
             {"level", "level certificate"},
         })
        add_object_options(app.add_subcommand(name, desc), o);
    auto *dot = app.add_subcommand("export-dot", "DOT graph of a family tree or pencil");
    add_object_options(dot, o);
    dot->add_option("--n", o.n, "depth of the family tree");
    dot->add_option("--output,-o", o.output, "output file");
    auto *fx = app.add_subcommand("fixtures", "built-in fixtures");
    fx->require_subcommand(1);
    fx->add_subcommand("list", "list fixture names");
    fx->add_subcommand("show", "print a fixture as an algebra JSON document")
        ->add_option("name", o.algebra, "fixture name")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? Success : BadInput;
    }
    o.command = app.get_subcommands().front()->get_name();
    if (o.command == "fixtures" && app.get_subcommands().front()->got_subcommand("show")) {
        try {
            const FieldSpec field = o.prime ? FieldSpec::prime(*o.prime) : FieldSpec::rationals();
            if (field.kind == FieldSpec::Kind::Rationals) {
                std::cout << algebra_to_json(fixture<Rational>(o.algebra)).dump(2) << "\n";
            } else {
                GFp::Scope scope(field.p);
                std::cout << algebra_to_json(fixture<GFp>(o.algebra)).dump(2) << "\n";
            }
        } catch (const std::exception &e) {
            std::cerr << "error (input): " << e.what() << "\n";
            return BadInput;
        }
        return Success;
    }
    if (o.command == "fixtures") {
        json arr = json::array();
        for (auto &f : fixture_list()) {
            arr.push_back({{"name", f.name}, {"description", f.description}});
            if (!o.json)
                std::cout << f.name << "\t" << f.description << "\n";
        }
        if (o.json)
            std::cout << json{{"schema_version", schema_version}, {"fixtures", arr}}.dump(2) << "\n";
        return Success;
    }

    Outcome out;
    try {
        const FieldSpec field = field_of(o);
        if (field.kind == FieldSpec::Kind::Rationals) {
            run<Rational>(o, out);
        } else {
            GFp::Scope scope(field.p);
            run<GFp>(o, out);
        }
    } catch (const std::exception &e) {
        out = Outcome{};
        out.code = BadInput;
        const auto *doc = dynamic_cast<const DocumentError *>(&e);
        std::string kind = doc                                                ? "document"
                           : dynamic_cast<const InputError *>(&e)             ? "input"
                           : dynamic_cast<const PreconditionError *>(&e)      ? "precondition"
                           : dynamic_cast<const Unsupported *>(&e)            ? "unsupported"
                                                                              : "error";
        out.verdict = "error";
        out.result = {{"error", kind}, {"message", e.what()}};
        if (doc)
            out.result["pointer"] = doc->pointer;
        if (o.json)
            std::cout << report(o, out).dump(2) << "\n";
        else
            std::cerr << "error (" << kind << "): " << e.what() << "\n";
        return out.code;
    }
    if (o.json)
        std::cout << report(o, out).dump(2) << "\n";
    else
        std::cout << out.text.str();
    return out.code;
}
