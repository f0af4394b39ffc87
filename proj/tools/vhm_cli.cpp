// Command-line front end: decompose, check, verify, synthesize, axioms, fuzz, corpus.
//
// Exit codes: 0 success, 1 expected-verdict mismatch or biconditional failure,
// 2 input error, 3 internal error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vhm/io.hpp"

namespace {

using namespace vhm;

constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kInternal = 3;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Flags {
    std::string scenario_path;
    std::string builtin;
    int degree = -1;
    int horizon = -2;
    double tol_mem = -1.0;
    double tol_orth = -1.0;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string property = "near-inner";
    std::string r;
    std::string h;
    std::size_t count = 200;
    int n = 0;
    int d = 1;
    std::size_t samples = 500;
    bool timing = false;
};

Tolerances tolerances(const Flags& f, Tolerances base)
{
    if (f.tol_mem > 0.0) base.mem = f.tol_mem;
    if (f.tol_orth > 0.0) base.orth = f.tol_orth;
    return base;
}

LoadedScenario load(const Flags& f)
{
    const Tolerances env = Tolerances::from_environment();
    if (f.scenario_path.empty() == f.builtin.empty()) {
        throw InputError("exactly one of --scenario and --builtin is required");
    }
    LoadedScenario ls;
    if (!f.builtin.empty()) {
        ExampleParams params;
        params.N = f.degree;
        ls = LoadedScenario{example(f.builtin, params), env, std::nullopt};
    } else {
        std::ifstream in(f.scenario_path);
        if (!in) throw InputError("cannot read scenario file " + f.scenario_path);
        std::stringstream buf;
        buf << in.rdbuf();
        Json doc;
        try {
            doc = Json::parse(buf.str());
        } catch (const Json::parse_error& e) {
            throw SchemaError("(document)", e.what());
        }
        if (f.degree >= 0 && doc.contains("builtin")) {
            doc["builtin"]["params"]["N"] = f.degree;
        }
        ls = parse_scenario(doc, env);
    }
    if (f.horizon >= -1) ls.scenario.horizon = f.horizon;
    ls.tol = tolerances(f, ls.tol);
    if (f.seed) ls.seed = f.seed;
    return ls;
}

Json header(const std::string& command, const Flags& f, std::optional<std::uint64_t> seed)
{
    Json j;
    j["tool"] = "vhm";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["jobs"] = f.jobs;
    return j;
}

Json expected_json(const ExpectedVerdicts& e)
{
    return {{"invariant", to_string(e.invariant)},
            {"near_inner", to_string(e.near_inner)},
            {"full_projection", to_string(e.full_projection)}};
}

bool matches(const ExpectedVerdicts& e, const TheoremVerdict& v)
{
    return e.invariant == v.invariant.verdict && e.near_inner == v.near_inner.verdict &&
           e.full_projection == v.full_projection.verdict;
}

std::string triple(const TheoremVerdict& v)
{
    return "(" + to_string(v.invariant.verdict) + ", " + to_string(v.near_inner.verdict) + ", " +
           to_string(v.full_projection.verdict) + ")";
}

std::string biconditional_text(const TheoremVerdict& v)
{
    if (!v.biconditional_holds) return "abstained";
    return *v.biconditional_holds ? "holds" : "FAILS";
}

int emit(Json& out, const std::vector<std::string>& summary, int code)
{
    out["summary"] = summary;
    out["exit_code"] = code;
    std::cout << out.dump(2) << '\n';
    return code;
}

template <class Fn>
double timed(bool enabled, Fn&& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    if (!enabled) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_decompose(const Flags& f)
{
    const LoadedScenario ls = load(f);
    Json out = header("decompose", f, ls.seed);
    out["scenario"] = serialize_scenario(ls.scenario, ls.tol, ls.seed);
    const GradedDecomposition D = decompose_subspace(build_subspace(ls.scenario, ls.tol), ls.tol);
    out["decomposition"] = decomposition_json(D);
    Json bases = Json::array();
    for (int k = 0; k < D.levels(); ++k) {
        Json vs = Json::array();
        for (const Element& v : D.components[static_cast<std::size_t>(k)].vectors()) vs.push_back(element_json(v));
        bases.push_back(std::move(vs));
    }
    out["components"] = std::move(bases);
    std::ostringstream dims;
    for (std::size_t k = 0; k < D.dims.size(); ++k) dims << (k ? "," : "") << D.dims[k];
    return emit(out, {ls.scenario.name + ": dim V = " + std::to_string(D.V.size()) + ", dims W_k = (" + dims.str() + ")"},
                0);
}

int cmd_check(const Flags& f)
{
    const LoadedScenario ls = load(f);
    const Scenario& s = ls.scenario;
    const CheckOptions opt = check_options(s, ls.tol, f.jobs);
    const SubspaceBasis V = build_subspace(s, ls.tol);
    PropertyReport rep;
    std::optional<Verdict> expected;
    const auto D = [&] { return decompose_subspace(V, ls.tol); };
    if (f.property == "near-inner") {
        rep = is_near_inner_decomposition(D(), opt);
        if (s.expected) expected = s.expected->near_inner;
    } else if (f.property == "weak-near-inner") {
        rep = is_weakly_near_inner(D(), opt);
    } else if (f.property == "full-projection") {
        rep = has_full_projection(D(), opt);
        if (s.expected) expected = s.expected->full_projection;
    } else if (f.property == "invariant") {
        rep = is_R1_invariant(D(), opt);
        if (s.expected) expected = s.expected->invariant;
    } else if (f.property == "generator-criterion") {
        rep = generator_criterion_report(D(), opt);
        if (s.expected) expected = s.expected->invariant;
    } else if (f.property == "submodule") {
        rep = unital_lift(V, s.algebra, static_cast<unsigned>(f.samples), ls.seed.value_or(1), opt);
    } else {
        throw InputError("unknown property '" + f.property + "'");
    }
    Json out = header("check", f, ls.seed);
    out["scenario"] = serialize_scenario(s, ls.tol, ls.seed);
    out["report"] = report_json(rep);
    std::string line = s.name + ": " + f.property + " " + to_string(rep.verdict);
    int code = 0;
    if (expected) {
        out["expected"] = to_string(*expected);
        if (*expected != rep.verdict) {
            code = kMismatch;
            line += " (expected " + to_string(*expected) + ")";
        }
    }
    return emit(out, {line}, code);
}

int cmd_verify(const Flags& f)
{
    const LoadedScenario ls = load(f);
    const Scenario& s = ls.scenario;
    Json out = header("verify", f, ls.seed);
    out["scenario"] = serialize_scenario(s, ls.tol, ls.seed);
    std::optional<TheoremVerdict> v;
    const double secs = timed(f.timing, [&] {
        v = verify_beurling(build_subspace(s, ls.tol), check_options(s, ls.tol, f.jobs));
    });
    out["theorem"] = theorem_json(*v);
    if (f.timing) out["timing_seconds"] = secs;
    std::vector<std::string> summary{s.name + ": (invariant, near-inner, full-projection) = " + triple(*v) +
                                     ", biconditional " + biconditional_text(*v)};
    int code = v->counterexample ? kMismatch : 0;
    if (s.expected) {
        out["expected"] = expected_json(*s.expected);
        if (!matches(*s.expected, *v)) {
            code = kMismatch;
            summary.push_back("verdicts differ from the expected triple");
        }
    }
    return emit(out, summary, code);
}

std::pair<int, Eigen::Index> parse_h(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InputError("--h expects <component,index>");
    try {
        return {std::stoi(text.substr(0, comma)), static_cast<Eigen::Index>(std::stol(text.substr(comma + 1)))};
    } catch (const std::exception&) {
        throw InputError("--h expects <component,index>");
    }
}

int cmd_synthesize(const Flags& f)
{
    const LoadedScenario ls = load(f);
    const Scenario& s = ls.scenario;
    if (f.r.empty() || f.h.empty()) throw InputError("synthesize requires --r and --h");
    const Poly r = parse_poly(f.r, s.space->variables());
    const auto [k, i] = parse_h(f.h);
    const GradedDecomposition D = decompose_subspace(build_subspace(s, ls.tol), ls.tol);
    if (k < 0 || k >= D.levels() || i < 0 || i >= D.components[static_cast<std::size_t>(k)].size()) {
        throw InputError("--h " + f.h + " names no basis vector (W_" + std::to_string(k) + " has dimension " +
                         (k >= 0 && k < D.levels() ? std::to_string(D.dims[static_cast<std::size_t>(k)]) : "0") +
                         ")");
    }
    const SynthesisTrace t = synthesize(D, r, D.components[static_cast<std::size_t>(k)].vector(i),
                                        check_options(s, ls.tol, f.jobs));
    Json out = header("synthesize", f, ls.seed);
    out["scenario"] = serialize_scenario(s, ls.tol, ls.seed);
    out["trace"] = synthesis_json(t);
    std::string line = s.name + ": synthesis of r*h for r = " + r.to_string() + ", h = W_" + std::to_string(k) + "[" +
                       std::to_string(i) + "] ";
    line += t.succeeded() ? "succeeded, final residual " + std::to_string(t.final_residual)
                          : "stopped at level " + std::to_string(t.failure->level) + " (block outside P_m(W_m), residual " +
                                std::to_string(t.failure->residual) + ")";
    return emit(out, {line}, 0);
}

int cmd_axioms(const Flags& f)
{
    SpacePtr space;
    std::uint64_t seed = f.seed.value_or(1);
    if (!f.scenario_path.empty() || !f.builtin.empty()) {
        const LoadedScenario ls = load(f);
        space = ls.scenario.space;
        seed = ls.seed.value_or(seed);
    } else {
        space = make_space(f.n > 0 ? f.n : 2, f.d, f.degree >= 0 ? f.degree : 6);
    }
    const AxiomReport rep = check_axioms(space, seed, f.samples);
    const UscReport usc = usc_probe(space, seed);
    Json out = header("axioms", f, seed);
    out["space"] = {{"n", space->variables()}, {"d", space->coeff_dim()}, {"N", space->max_degree()}};
    out["axioms"] = axioms_json(rep);
    out["usc_probe"] = usc_json(usc);
    const bool ok = rep.all_pass() && usc.violations == 0;
    std::vector<std::string> summary;
    for (const AxiomResult& a : rep.axioms) {
        summary.push_back(a.id + ": " + to_string(a.verdict) + " (" + std::to_string(a.samples) + " samples)");
    }
    summary.push_back("usc probe: " + std::to_string(usc.sequences) + " sequences, " + std::to_string(usc.violations) +
                      " violations, " + std::to_string(usc.strict_witnesses) + " strict witnesses");
    return emit(out, summary, ok ? 0 : kMismatch);
}

int cmd_fuzz(const Flags& f)
{
    const std::uint64_t first = f.seed.value_or(1);
    const Tolerances tol = tolerances(f, Tolerances::from_environment());
    std::size_t held = 0, abstained = 0, failed = 0, mismatched = 0;
    Json counterexamples = Json::array();
    Json results = Json::array();
    for (std::size_t i = 0; i < f.count; ++i) {
        const std::uint64_t seed = first + i;
        RandomScenarioParams p;
        p.seed = seed;
        p.n = f.n > 0 ? f.n : static_cast<int>(1 + seed % 3);
        p.d = f.d;
        p.N = f.degree >= 0 ? f.degree : static_cast<int>(4 + (seed / 3) % 5);
        p.invariant = seed % 2 == 0;
        const Scenario s = random_scenario(p);
        CheckOptions opt = check_options(s, tol, f.jobs);
        const TheoremVerdict v = verify_beurling(build_subspace(s, tol), opt);
        const bool bad_expectation = s.expected && !matches(*s.expected, v);
        if (!v.biconditional_holds) ++abstained;
        else if (*v.biconditional_holds) ++held;
        else ++failed;
        if (bad_expectation) ++mismatched;
        results.push_back({{"seed", seed},
                           {"name", s.name},
                           {"note", s.note},
                           {"dim_V", v.decomposition.V.size()},
                           {"verdicts", triple(v)},
                           {"biconditional", biconditional_text(v)}});
        if (v.counterexample || bad_expectation) {
            Json dump{{"scenario", serialize_scenario(s, tol, seed)}, {"verdicts", triple(v)}};
            dump["theorem"] = theorem_json(v);
            counterexamples.push_back(std::move(dump));
        }
    }
    Json out = header("fuzz", f, first);
    out["scenarios"] = f.count;
    out["biconditional_held"] = held;
    out["abstained"] = abstained;
    out["counterexamples_found"] = failed;
    out["expectation_mismatches"] = mismatched;
    out["results"] = std::move(results);
    out["counterexamples"] = std::move(counterexamples);
    const std::string line = std::to_string(f.count) + " scenarios: biconditional held " + std::to_string(held) +
                             ", abstained " + std::to_string(abstained) + ", failed " + std::to_string(failed) +
                             ", expectation mismatches " + std::to_string(mismatched);
    return emit(out, {line}, failed + mismatched > 0 ? kMismatch : 0);
}

int cmd_corpus(const Flags& f)
{
    const Tolerances tol = tolerances(f, Tolerances::from_environment());
    Json entries = Json::array();
    std::vector<std::string> summary;
    bool ok = true;
    for (const std::string& name : example_names()) {
        ExampleParams params;
        params.N = f.degree;
        const Scenario s = example(name, params);
        const TheoremVerdict v = verify_beurling(build_subspace(s, tol), check_options(s, tol, f.jobs));
        const bool match = matches(*s.expected, v) && !v.counterexample;
        ok = ok && match;
        entries.push_back({{"name", name},
                           {"expected", expected_json(*s.expected)},
                           {"match", match},
                           {"theorem", theorem_json(v)}});
        summary.push_back(name + ": " + triple(v) + (match ? " matches" : " MISMATCH") + ", biconditional " +
                          biconditional_text(v));
    }
    Json out = header("corpus", f, std::nullopt);
    out["entries"] = std::move(entries);
    return emit(out, summary, ok ? 0 : kMismatch);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Valuation Hilbert module toolkit: graded decompositions and Beurling-type invariance checks"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1, 1);
    Flags f;

    auto scenario_flags = [&](CLI::App* c) {
        c->add_option("--scenario", f.scenario_path, "Scenario file (JSON)");
        c->add_option("--builtin", f.builtin, "Builtin example: ex6.2, ex6.7, ex7.4, eq3.17");
        c->add_option("--horizon", f.horizon, "Highest level examined (-1: N)")->check(CLI::Range(-1, 64));
    };
    auto common_flags = [&](CLI::App* c) {
        c->add_option("--degree", f.degree, "Truncation degree N")->check(CLI::Range(0, 64));
        c->add_option("--tol-mem", f.tol_mem, "Membership tolerance")->check(CLI::PositiveNumber);
        c->add_option("--tol-orth", f.tol_orth, "Orthogonality tolerance")->check(CLI::PositiveNumber);
        c->add_option("--seed", f.seed, "Seed");
        c->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
        c->add_flag("--timing", f.timing, "Include wall-clock timings (reports are then not byte-reproducible)");
    };

    std::map<std::string, std::function<int(const Flags&)>> handlers{
        {"decompose", cmd_decompose}, {"check", cmd_check},   {"verify", cmd_verify}, {"synthesize", cmd_synthesize},
        {"axioms", cmd_axioms},       {"fuzz", cmd_fuzz},     {"corpus", cmd_corpus}};

    auto* decompose = app.add_subcommand("decompose", "Near homogeneous decomposition of a scenario's subspace");
    auto* check = app.add_subcommand("check", "Check a single property");
    auto* verify = app.add_subcommand("verify", "Invariance, near inner and full projection verdicts");
    auto* synth = app.add_subcommand("synthesize", "Constructive synthesis of r*h from the components");
    auto* axioms = app.add_subcommand("axioms", "Valuation axiom suite and semicontinuity probe");
    auto* fuzz = app.add_subcommand("fuzz", "Random scenario sweep of the biconditional");
    auto* corpus = app.add_subcommand("corpus", "Run every builtin against its expected verdicts");
    for (auto* c : {decompose, check, verify, synth, axioms}) scenario_flags(c);
    for (auto* c : {decompose, check, verify, synth, axioms, fuzz, corpus}) common_flags(c);
    check->add_option("--property", f.property,
                      "near-inner, weak-near-inner, full-projection, invariant, generator-criterion, submodule");
    check->add_option("--samples", f.samples, "Samples for the submodule check");
    synth->add_option("--r", f.r, "Multiplier polynomial, e.g. z1^2 or 'z1 + 2*z2'");
    synth->add_option("--h", f.h, "Component basis vector as <component,index>");
    axioms->add_option("--n", f.n, "Variables when no scenario is given")->check(CLI::Range(1, 8));
    axioms->add_option("--d", f.d, "Coefficient dimension when no scenario is given")->check(CLI::Range(1, 16));
    axioms->add_option("--samples", f.samples, "Samples per axiom");
    fuzz->add_option("--count", f.count, "Number of seeds, starting at --seed");
    fuzz->add_option("--n", f.n, "Fix the variable count (default: cycle 1..3)")->check(CLI::Range(1, 8));
    fuzz->add_option("--d", f.d, "Coefficient dimension")->check(CLI::Range(1, 16));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        for (const auto& [name, fn] : handlers) {
            if (app.got_subcommand(name)) return fn(f);
        }
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const SchemaError& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
