#include "vhm/io.hpp"

#include <algorithm>
#include <cmath>

namespace vhm {

Verdict parse_verdict(const std::string& s)
{
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "inconclusive") return Verdict::inconclusive;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where)
{
    const std::string path = where.empty() ? key : where + "." + key;
    if (!obj.is_object()) throw SchemaError(where.empty() ? "(root)" : where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path, "missing required field");
    return *it;
}

std::string join(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

long long get_int(const Json& v, const std::string& path, long long lo, long long hi)
{
    if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
    const long long x = v.get<long long>();
    if (x < lo || x > hi) {
        throw SchemaError(path, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }
    return x;
}

double get_real(const Json& v, const std::string& path)
{
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    return v.get<double>();
}

std::string get_string(const Json& v, const std::string& path)
{
    if (!v.is_string()) throw SchemaError(path, "expected a string");
    return v.get<std::string>();
}

Complex get_complex(const Json& v, const std::string& path)
{
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2) throw SchemaError(path, "expected a complex number [re, im]");
    return {get_real(v[0], path + "[0]"), get_real(v[1], path + "[1]")};
}

Json terms_json(const Space& sp, const CVector& coeffs)
{
    Json out = Json::array();
    const int d = sp.coeff_dim();
    for (std::size_t o = 0; o < sp.order().size(); ++o) {
        const CVector a = coeffs.segment(sp.offset(o), d);
        if (a.isZero(0.0)) continue;
        Json c = Json::array();
        for (int i = 0; i < d; ++i) c.push_back(complex_json(a[i]));
        out.push_back({{"exponents", sp.order().at(o).exponents()}, {"coefficient", std::move(c)}});
    }
    return out;
}

ClosureMode parse_closure(const Json& v, const std::string& path)
{
    const std::string s = get_string(v, path);
    if (s == "module") return ClosureMode::module;
    if (s == "linear") return ClosureMode::linear;
    throw SchemaError(path, "expected \"module\" or \"linear\"");
}

ActingAlgebra parse_algebra(const Json& v, const std::string& path)
{
    const std::string s = get_string(v, path);
    if (s == "full") return ActingAlgebra::full;
    if (s == "vanishing-at-0") return ActingAlgebra::vanishing_at_zero;
    throw SchemaError(path, "expected \"full\" or \"vanishing-at-0\"");
}

Tolerances parse_tolerances(const Json& v, Tolerances t)
{
    const std::string where = "tolerances";
    if (!v.is_object()) throw SchemaError(where, "expected an object");
    const std::pair<const char*, double*> fields[] = {{"rank", &t.rank}, {"orth", &t.orth}, {"mem", &t.mem},
                                                     {"fail", &t.fail}};
    for (const auto& [key, slot] : fields) {
        auto it = v.find(key);
        if (it == v.end()) continue;
        const double x = get_real(*it, join(where, key));
        if (!(x > 0.0) || !std::isfinite(x)) throw SchemaError(join(where, key), "must be positive");
        *slot = x;
    }
    for (auto it = v.begin(); it != v.end(); ++it) {
        const std::string& k = it.key();
        if (k != "rank" && k != "orth" && k != "mem" && k != "fail") throw SchemaError(where + "." + k, "unknown tolerance");
    }
    return t;
}

}  // namespace

Json element_json(const Element& f) { return terms_json(f.space(), f.coeffs()); }

Element element_from_json(const Json& terms, const SpacePtr& space, const std::string& where)
{
    if (!terms.is_array()) throw SchemaError(where, "expected a list of terms");
    const int n = space->variables();
    const int d = space->coeff_dim();
    Element f = Element::zero(space);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string tp = at(where, t);
        const Json& ex = require(terms[t], "exponents", tp);
        if (!ex.is_array() || static_cast<int>(ex.size()) != n) {
            throw SchemaError(join(tp, "exponents"), "expected " + std::to_string(n) + " exponents");
        }
        std::vector<int> e;
        for (std::size_t j = 0; j < ex.size(); ++j) {
            e.push_back(static_cast<int>(get_int(ex[j], at(join(tp, "exponents"), j), 0, 1 << 20)));
        }
        const MultiIndex m(std::move(e));
        if (m.degree() > space->max_degree()) {
            throw SchemaError(join(tp, "exponents"), "degree " + std::to_string(m.degree()) + " exceeds N = " +
                                                         std::to_string(space->max_degree()));
        }
        const Json& c = require(terms[t], "coefficient", tp);
        const std::string cp = join(tp, "coefficient");
        if (!c.is_array() || static_cast<int>(c.size()) != d) {
            throw SchemaError(cp, "expected " + std::to_string(d) + " complex entries");
        }
        const std::size_t o = space->order().index_of(m);
        for (int i = 0; i < d; ++i) {
            f.coeffs()[space->offset(o, i)] += get_complex(c[static_cast<std::size_t>(i)], at(cp, static_cast<std::size_t>(i)));
        }
    }
    return f;
}

LoadedScenario parse_scenario(const Json& doc, const Tolerances& defaults)
{
    if (!doc.is_object()) throw SchemaError("(root)", "expected an object");
    const long long version = get_int(require(doc, "version", ""), "version", 0, 1 << 20);
    if (version != kScenarioVersion) {
        throw SchemaError("version", "unsupported version " + std::to_string(version) + " (expected " +
                                         std::to_string(kScenarioVersion) + ")");
    }
    static const char* known[] = {"version", "name", "space", "generators", "builtin", "closure_mode",
                                  "acting_algebra", "horizon", "tolerances", "seed", "expected", "note"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }) ==
            std::end(known)) {
            throw SchemaError(it.key(), "unknown field");
        }
    }

    LoadedScenario out{{}, defaults, std::nullopt};
    Scenario& s = out.scenario;
    const bool builtin = doc.contains("builtin");
    if (builtin) {
        if (doc.contains("generators")) throw SchemaError("generators", "not allowed together with builtin");
        const Json& b = doc["builtin"];
        const std::string name = get_string(require(b, "name", "builtin"), "builtin.name");
        ExampleParams params;
        if (b.contains("params")) {
            const Json& p = b["params"];
            if (!p.is_object()) throw SchemaError("builtin.params", "expected an object");
            if (p.contains("a")) params.a = get_complex(p["a"], "builtin.params.a");
            if (p.contains("N")) params.N = static_cast<int>(get_int(p["N"], "builtin.params.N", 0, 64));
            if (p.contains("horizon")) {
                params.horizon = static_cast<int>(get_int(p["horizon"], "builtin.params.horizon", 0, 64));
            }
        }
        try {
            s = example(name, params);
        } catch (const std::invalid_argument& e) {
            throw SchemaError("builtin", e.what());
        }
    } else {
        const Json& space = require(doc, "space", "");
        const int n = static_cast<int>(get_int(require(space, "n", "space"), "space.n", 1, 16));
        const int d = static_cast<int>(get_int(require(space, "d", "space"), "space.d", 1, 64));
        const int N = static_cast<int>(get_int(require(space, "N", "space"), "space.N", 0, 64));
        s.space = make_space(n, d, N);
        s.name = "scenario";
        const Json& gens = require(doc, "generators", "");
        if (!gens.is_array() || gens.empty()) throw SchemaError("generators", "expected a nonempty list");
        for (std::size_t g = 0; g < gens.size(); ++g) {
            Element e = element_from_json(gens[g], s.space, at("generators", g));
            if (e.norm() == 0.0) throw SchemaError(at("generators", g), "generator is zero");
            s.generators.push_back(std::move(e));
        }
    }
    if (doc.contains("name")) s.name = get_string(doc["name"], "name");
    if (doc.contains("closure_mode")) s.closure = parse_closure(doc["closure_mode"], "closure_mode");
    if (doc.contains("acting_algebra")) s.algebra = parse_algebra(doc["acting_algebra"], "acting_algebra");
    if (doc.contains("horizon")) {
        s.horizon = static_cast<int>(get_int(doc["horizon"], "horizon", -1, s.space->max_degree()));
    }
    if (doc.contains("note")) s.note = get_string(doc["note"], "note");
    if (doc.contains("tolerances")) out.tol = parse_tolerances(doc["tolerances"], defaults);
    if (doc.contains("seed")) {
        const Json& v = doc["seed"];
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            throw SchemaError("seed", "expected a nonnegative integer");
        }
        out.seed = v.get<std::uint64_t>();
    }
    if (doc.contains("expected")) {
        const Json& e = doc["expected"];
        auto verdict = [&](const char* key) {
            const std::string path = join("expected", key);
            try {
                return parse_verdict(get_string(require(e, key, "expected"), path));
            } catch (const SchemaError&) {
                throw;
            } catch (const std::invalid_argument& err) {
                throw SchemaError(path, err.what());
            }
        };
        s.expected = ExpectedVerdicts{verdict("invariant"), verdict("near_inner"), verdict("full_projection")};
    }
    return out;
}

LoadedScenario parse_scenario_text(const std::string& text, const Tolerances& defaults)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("(document)", e.what());
    }
    return parse_scenario(doc, defaults);
}

Json tolerances_json(const Tolerances& t)
{
    return {{"rank", t.rank}, {"orth", t.orth}, {"mem", t.mem}, {"fail", t.fail}};
}

Json serialize_scenario(const Scenario& s, const std::optional<Tolerances>& tol, std::optional<std::uint64_t> seed)
{
    const Space& sp = *s.space;
    Json doc;
    doc["version"] = kScenarioVersion;
    doc["name"] = s.name;
    doc["space"] = {{"n", sp.variables()}, {"d", sp.coeff_dim()}, {"N", sp.max_degree()}};
    Json gens = Json::array();
    for (const Element& g : s.generators) gens.push_back(element_json(g));
    doc["generators"] = std::move(gens);
    doc["closure_mode"] = to_string(s.closure);
    doc["acting_algebra"] = to_string(s.algebra);
    doc["horizon"] = s.horizon;
    if (tol) doc["tolerances"] = tolerances_json(*tol);
    if (seed) doc["seed"] = *seed;
    if (s.expected) {
        doc["expected"] = {{"invariant", to_string(s.expected->invariant)},
                           {"near_inner", to_string(s.expected->near_inner)},
                           {"full_projection", to_string(s.expected->full_projection)}};
    }
    if (!s.note.empty()) doc["note"] = s.note;
    return doc;
}

Json poly_json(const Poly& p)
{
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) terms.push_back({{"exponents", m.exponents()}, {"coefficient", complex_json(c)}});
    return {{"text", p.to_string()}, {"terms", std::move(terms)}};
}

Json decomposition_json(const GradedDecomposition& D)
{
    const Space& sp = D.V.space();
    Json levels = Json::array();
    for (int k = 0; k < D.levels(); ++k) {
        const auto ki = static_cast<std::size_t>(k);
        const LevelMap& L = D.level_maps[ki];
        Json lvl{{"k", k}, {"dim", D.dims[ki]}};
        lvl["sigma_min"] = L.rank() > 0 ? Json(L.sigma.minCoeff()) : Json(nullptr);
        lvl["sigma_max"] = L.rank() > 0 ? Json(L.sigma.maxCoeff()) : Json(nullptr);
        lvl["gram_residual"] = D.components[ki].gram_residual();
        levels.push_back(std::move(lvl));
    }
    return {{"space", {{"n", sp.variables()}, {"d", sp.coeff_dim()}, {"N", sp.max_degree()}}},
            {"dim_V", D.V.size()},
            {"dims", D.dims},
            {"levels", std::move(levels)}};
}

Json report_json(const PropertyReport& r)
{
    Json ws = Json::array();
    for (const Witness& w : r.witnesses) {
        Json coords = Json::array();
        for (Eigen::Index i = 0; i < w.h_coords.size(); ++i) coords.push_back(complex_json(w.h_coords[i]));
        ws.push_back({{"r", poly_json(w.r)},
                      {"k", w.k},
                      {"m", w.m},
                      {"h_index", w.h_index},
                      {"h_coords", std::move(coords)},
                      {"h", element_json(w.h)},
                      {"g", element_json(w.g)},
                      {"probe", element_json(w.probe)},
                      {"magnitude", w.magnitude},
                      {"gap", w.gap}});
    }
    return {{"property", to_string(r.property)},
            {"verdict", to_string(r.verdict)},
            {"max_violation", r.max_violation},
            {"pass_threshold", r.pass_threshold},
            {"fail_threshold", r.fail_threshold},
            {"pairs_checked", r.pairs_checked},
            {"boundary_skips", r.boundary_skips},
            {"witness_total", r.witness_total},
            {"witnesses", std::move(ws)},
            {"notes", r.notes}};
}

Json theorem_json(const TheoremVerdict& v)
{
    Json out;
    out["decomposition"] = decomposition_json(v.decomposition);
    out["verdicts"] = {{"invariant", to_string(v.invariant.verdict)},
                       {"near_inner", to_string(v.near_inner.verdict)},
                       {"full_projection", to_string(v.full_projection.verdict)},
                       {"weak_near_inner", to_string(v.weak_near_inner.verdict)}};
    out["biconditional_holds"] = v.biconditional_holds ? Json(*v.biconditional_holds) : Json(nullptr);
    out["counterexample"] = v.counterexample;
    out["reports"] = Json::array({report_json(v.invariant), report_json(v.near_inner), report_json(v.full_projection),
                                  report_json(v.weak_near_inner)});
    return out;
}

Json synthesis_json(const SynthesisTrace& t)
{
    Json levels = Json::array();
    for (std::size_t m = 0; m < t.g_series.size(); ++m) {
        levels.push_back({{"m", m},
                          {"g", element_json(t.g_series[m])},
                          {"g_norm", t.g_series[m].norm()},
                          {"residual_ord", t.residual_ords[m].to_string()},
                          {"partial_norm_sq", t.partial_norms[m]}});
    }
    Json out{{"r", poly_json(t.r)},
             {"component", t.component},
             {"h", element_json(t.h)},
             {"rh", element_json(t.rh)},
             {"rh_norm_sq", t.rh.squared_norm()},
             {"levels", std::move(levels)},
             {"final_residual", t.final_residual},
             {"ill_conditioned", t.ill_conditioned},
             {"succeeded", t.succeeded()}};
    out["failure"] = t.failure ? Json{{"level", t.failure->level}, {"residual", t.failure->residual}} : Json(nullptr);
    return out;
}

Json axioms_json(const AxiomReport& r)
{
    Json axioms = Json::array();
    for (const AxiomResult& a : r.axioms) {
        axioms.push_back({{"id", a.id},
                          {"verdict", to_string(a.verdict)},
                          {"samples", a.samples},
                          {"violations", a.violations},
                          {"worst", a.worst},
                          {"witness", a.witness.empty() ? Json(nullptr) : Json(a.witness)}});
    }
    return {{"seed", r.seed}, {"all_pass", r.all_pass()}, {"axioms", std::move(axioms)}};
}

Json usc_json(const UscReport& r)
{
    Json samples = Json::array();
    for (const UscSequence& s : r.samples) {
        samples.push_back({{"kind", s.kind},
                           {"ord_limit", s.limit_ord.to_string()},
                           {"limsup_ord", s.limsup_ord.to_string()},
                           {"final_distance", s.final_distance},
                           {"violation", s.violation},
                           {"strict", s.strict}});
    }
    return {{"sequences", r.sequences},
            {"violations", r.violations},
            {"strict_witnesses", r.strict_witnesses},
            {"samples", std::move(samples)}};
}

}  // namespace vhm
