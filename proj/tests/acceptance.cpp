// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vhm/algebra.hpp"
#include "vhm/corpus.hpp"

using namespace vhm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// ---------------------------------------------------------------- corpus

Outcome corpus_table()
{
    Outcome o;
    const auto t0 = Clock::now();
    for (const std::string& name : example_names()) {
        const Scenario s = example(name);
        CheckOptions opt = check_options(s);
        opt.max_witnesses = std::numeric_limits<std::size_t>::max();
        const TheoremVerdict v = verify_beurling(build_subspace(s), opt);
        const ExpectedVerdicts& e = *s.expected;
        o.require(v.invariant.verdict == e.invariant && v.near_inner.verdict == e.near_inner &&
                      v.full_projection.verdict == e.full_projection,
                  name + " verdicts differ");
        o.require(v.biconditional_holds.value_or(false), name + " biconditional not decided true");

        if (name == "ex6.7") {
            // P_2 of the probe lies along z1 z2, outside span{z1^2, z2^2}.
            const auto sp = v.decomposition.V.space_ptr();
            const Element z1z2 = Element::monomial(sp, MultiIndex{1, 1});
            const Element z11 = Element::monomial(sp, MultiIndex{2, 0});
            const Element z22 = Element::monomial(sp, MultiIndex{0, 2});
            bool found = false;
            for (const Witness& w : v.full_projection.witnesses) {
                if (w.m != 2) continue;
                const Element p2 = w.probe.block(2);
                const bool along = std::abs(std::abs(inner(p2, z1z2)) - p2.norm()) <= 1e-9 && p2.norm() > 0.5;
                const bool outside = std::abs(inner(p2, z11)) <= 1e-12 && std::abs(inner(p2, z22)) <= 1e-12;
                found = found || (along && outside);
            }
            o.require(found, "ex6.7 has no P_2(z1 z2) full-projection witness");
        }
        if (name == "ex7.4") {
            bool found = false;
            for (const Witness& w : v.near_inner.witnesses) found = found || std::abs(w.magnitude - 1.5) <= 1e-6;
            o.require(found, "ex7.4 has no near-inner witness of magnitude 1.5");
        }
    }
    const double t = seconds_since(t0);
    o.require(t <= 10.0, "runtime " + fmt("%.2f", t) + " s");
    if (o.pass) o.detail = "4/4 scenarios match with witnesses, " + fmt("%.3f", t) + " s";
    return o;
}

// ---------------------------------------------------------------- fuzz

struct FuzzCase {
    Scenario scenario;
    TheoremVerdict verdict;
};

RandomScenarioParams fuzz_params(std::uint64_t i)
{
    RandomScenarioParams p;
    p.seed = 1000 + i;
    p.n = 1 + static_cast<int>(i % 3);
    p.N = 4 + static_cast<int>((i / 3) % 5);
    p.d = 1 + static_cast<int>((i / 15) % 2);
    p.invariant = (i / 30) % 2 == 0 ? i % 2 == 0 : i % 2 == 1;
    return p;
}

constexpr std::size_t kFuzzCount = 240;

std::vector<FuzzCase>& fuzz_cases()
{
    static std::vector<FuzzCase> cases;
    return cases;
}

double& fuzz_seconds()
{
    static double t = 0.0;
    return t;
}

void run_fuzz()
{
    const auto t0 = Clock::now();
    auto& cases = fuzz_cases();
    for (std::size_t i = 0; i < kFuzzCount; ++i) {
        Scenario s = random_scenario(fuzz_params(i));
        TheoremVerdict v = verify_beurling(build_subspace(s), check_options(s));
        cases.push_back({std::move(s), std::move(v)});
    }
    fuzz_seconds() = seconds_since(t0);
}

Outcome theorem_fuzz()
{
    Outcome o;
    std::size_t abstained = 0, held = 0, invariant = 0;
    bool n_seen[4] = {}, N_seen[9] = {};
    for (const FuzzCase& c : fuzz_cases()) {
        n_seen[c.scenario.space->variables()] = true;
        N_seen[c.scenario.space->max_degree()] = true;
        if (c.verdict.invariant.verdict == Verdict::pass) ++invariant;
        if (!c.verdict.biconditional_holds) {
            ++abstained;
            continue;
        }
        if (*c.verdict.biconditional_holds) ++held;
        else o.require(false, c.scenario.name + " is a counterexample");
    }
    const std::size_t total = fuzz_cases().size();
    o.require(total >= 200, "only " + std::to_string(total) + " scenarios");
    o.require(n_seen[1] && n_seen[2] && n_seen[3], "n in {1,2,3} not covered");
    for (int N = 4; N <= 8; ++N) o.require(N_seen[N], "N = " + std::to_string(N) + " not covered");
    o.require(invariant > 0 && invariant < total, "not a mix of invariant and non-invariant");
    o.require(abstained * 20 < total, "abstention " + std::to_string(abstained) + "/" + std::to_string(total));
    o.require(fuzz_seconds() <= 120.0, "runtime " + fmt("%.1f", fuzz_seconds()) + " s");
    if (o.pass) {
        o.detail = std::to_string(held) + "/" + std::to_string(total) + " held, " + std::to_string(abstained) +
                   " abstained, " + std::to_string(invariant) + " invariant, " + fmt("%.1f", fuzz_seconds()) + " s";
    }
    return o;
}

// ---------------------------------------------------------------- decomposition

Outcome decomposition_suite()
{
    Outcome o;
    std::mt19937_64 rng(2718);
    double worst_orth = 0.0, worst_rec = 0.0;
    for (const FuzzCase& c : fuzz_cases()) {
        const GradedDecomposition& D = c.verdict.decomposition;
        const std::string& name = c.scenario.name;
        Eigen::Index total = 0;
        for (Eigen::Index d : D.dims) total += d;
        o.require(total == D.V.size(), name + ": sum of dims != dim V");

        const CMatrix G = D.graded_basis();
        const double orth =
            G.cols() == 0 ? 0.0 : (G.adjoint() * G - CMatrix::Identity(G.cols(), G.cols())).cwiseAbs().maxCoeff();
        worst_orth = std::max(worst_orth, orth);
        o.require(orth <= 1e-9, name + ": orthogonality " + fmt("%.2e", orth));

        for (int k = 0; k < D.levels(); ++k) {
            const auto& W = D.components[static_cast<std::size_t>(k)];
            if (W.empty()) continue;
            o.require(analyze_LW(W, k).constant_ord, name + ": ord not constant on W_" + std::to_string(k));
        }
        if (D.V.empty()) continue;
        const Element h(D.V.space_ptr(), D.V.matrix() * oracle::gaussian_vector(rng, D.V.size()));
        const double rec = decompose_element(D, h).reconstruction_residual / h.norm();
        worst_rec = std::max(worst_rec, rec);
        o.require(rec <= 1e-10, name + ": reconstruction " + fmt("%.2e", rec));
    }

    std::size_t samples = 0, agree = 0;
    for (std::size_t i = 0; samples < 1000; i = (i + 1) % fuzz_cases().size()) {
        const GradedDecomposition& D = fuzz_cases()[i].verdict.decomposition;
        const int j = std::uniform_int_distribution<int>(0, D.levels())(rng);
        const auto& Vj = D.series[static_cast<std::size_t>(j)];
        const Element h(D.V.space_ptr(), Vj.matrix() * oracle::gaussian_vector(rng, Vj.size()));
        ++samples;
        if (ord_via_components(D, h) == h.ord()) ++agree;
    }
    o.require(agree == samples, "ord_via_components disagrees on " + std::to_string(samples - agree) + " samples");
    if (o.pass) {
        o.detail = std::to_string(fuzz_cases().size()) + " instances, orthogonality <= " + fmt("%.1e", worst_orth) +
                   ", reconstruction <= " + fmt("%.1e", worst_rec) + " |h|, ord agreement " +
                   std::to_string(agree) + "/" + std::to_string(samples);
    }
    return o;
}

// ---------------------------------------------------------------- synthesis

// Synthesizes r*h for every monomial r and component basis vector h whose product is untruncated.
void synthesis_sweep(const GradedDecomposition& D, const std::string& name, Outcome& o, std::size_t& pairs)
{
    const Space& sp = D.V.space();
    CheckOptions opt;
    const auto family = acting_family(sp, sp.max_degree(), opt);
    for (int k = 0; k < D.levels(); ++k) {
        const auto& W = D.components[static_cast<std::size_t>(k)];
        for (Eigen::Index i = 0; i < W.size(); ++i) {
            const Element h = W.vector(i);
            for (const Poly& r : family) {
                if (r.max_degree() + h.support_degree() > sp.max_degree()) continue;
                ++pairs;
                const SynthesisTrace t = synthesize(D, r, h);
                const double scale = t.rh.norm();
                o.require(t.succeeded(), name + ": synthesis of " + r.to_string() + " * W_" + std::to_string(k) +
                                             " failed");
                o.require(t.final_residual <= 1e-8 * scale, name + ": final residual " + fmt("%.2e", t.final_residual));
                double prev = 0.0;
                for (double pn : t.partial_norms) {
                    o.require(pn >= prev - 1e-12 * t.rh.squared_norm(), name + ": partial norms decrease");
                    o.require(pn <= t.rh.squared_norm() * (1.0 + 1e-10) + 1e-12, name + ": partial norm exceeds |rh|^2");
                    prev = pn;
                }
            }
        }
    }
}

Outcome synthesis()
{
    Outcome o;
    std::size_t pairs = 0, instances = 0;
    for (const FuzzCase& c : fuzz_cases()) {
        if (c.verdict.invariant.verdict != Verdict::pass) continue;
        ++instances;
        synthesis_sweep(c.verdict.decomposition, c.scenario.name, o, pairs);
    }
    synthesis_sweep(decompose_subspace(build_subspace(example("ex6.2"))), "ex6.2", o, pairs);

    const auto D = decompose_subspace(build_subspace(example("ex6.7")));
    const auto sp = D.V.space_ptr();
    const auto t = synthesize(D, Poly::variable(2, 0), Element::monomial(sp, MultiIndex{0, 1}));
    o.require(!t.succeeded() && t.failure->level == 2, "ex6.7 does not fail at m = 2");
    if (o.pass) {
        o.detail = std::to_string(pairs) + " exact pairs on " + std::to_string(instances) +
                   " invariant instances + ex6.2 succeed; ex6.7 stops at m = 2";
    }
    return o;
}

// ---------------------------------------------------------------- axioms

Outcome axiom_suite()
{
    Outcome o;
    std::size_t checks = 0, strict = 0;
    for (int n = 1; n <= 3; ++n) {
        const auto sp = make_space(n, 2, 6);
        const AxiomReport rep = check_axioms(sp, 500 + static_cast<std::uint64_t>(n), 500);
        for (const AxiomResult& a : rep.axioms) {
            ++checks;
            o.require(a.verdict == Verdict::pass && a.violations == 0,
                      "n=" + std::to_string(n) + " " + a.id + ": " + a.witness);
        }
        const UscReport usc = usc_probe(sp, 77 + static_cast<std::uint64_t>(n), 100);
        o.require(usc.violations == 0, "usc violations on n=" + std::to_string(n));
        o.require(usc.strict_witnesses >= 1, "no strict usc witness on n=" + std::to_string(n));
        strict += usc.strict_witnesses;
    }
    if (o.pass) {
        o.detail = std::to_string(checks) + " axiom checks x 500 samples pass; usc 0 violations, " +
                   std::to_string(strict) + " strict witnesses";
    }
    return o;
}

// ---------------------------------------------------------------- Blaschke

Outcome blaschke_fidelity()
{
    // 1 - ||B||^2 equals the tail exactly, so summation rounding can push it a few ulps past the bound.
    const double allowance = 8 * std::numeric_limits<double>::epsilon();
    Outcome o;
    double worst = 0.0;
    for (const double a : {0.5, 0.9}) {
        const int N = 24;
        const auto sp = make_space(1, 1, N);
        const Element b = blaschke_element(sp, a);
        const double tail = (1 - a * a) * std::pow(a, 2 * N);
        const double gap = std::abs(1.0 - b.squared_norm());
        worst = std::max(worst, gap / tail);
        o.require(gap <= tail + allowance, "a=" + fmt("%.1f", a) + ": |1-|B|^2| = " + fmt("%.3e", gap));
        for (int k = 1; k <= 4; ++k) {
            const Element zkb = oracle::multiply(Poly::monomial(1, MultiIndex{k}), b);
            const double ip = std::abs(inner(b, zkb));
            const double bound = (1 - a * a) * std::pow(a, 2 * N - k);
            worst = std::max(worst, ip / bound);
            o.require(ip <= bound + allowance, "a=" + fmt("%.1f", a) + ", k=" + std::to_string(k) + ": " + fmt("%.3e", ip));
        }
    }
    if (o.pass) o.detail = "(0.5,24), (0.9,24), k=1..4 within the tail bound (largest value/bound " + fmt("%.6f", worst) + ")";
    return o;
}

// ---------------------------------------------------------------- one-way implications

Outcome one_way()
{
    Outcome o;
    std::size_t inv = 0, non_inv = 0;
    for (const FuzzCase& c : fuzz_cases()) {
        const TheoremVerdict& v = c.verdict;
        if (v.invariant.verdict != Verdict::pass) {
            ++non_inv;
            continue;
        }
        ++inv;
        o.require(v.near_inner.verdict != Verdict::fail, c.scenario.name + ": invariant but near-inner fails");
        o.require(v.full_projection.verdict != Verdict::fail, c.scenario.name + ": invariant but full projection fails");
    }
    for (const std::string& name : example_names()) {
        const Scenario s = example(name);
        const TheoremVerdict v = verify_beurling(build_subspace(s), check_options(s));
        if (v.invariant.verdict == Verdict::pass) {
            o.require(v.near_inner.verdict != Verdict::fail && v.full_projection.verdict != Verdict::fail,
                      name + " violates an implication");
        }
    }
    if (o.pass) {
        o.detail = std::to_string(inv) + " invariant instances, none with a failing near-inner or full-projection verdict (" +
                   std::to_string(non_inv) + " non-invariant)";
    }
    return o;
}

}  // namespace

int main()
{
    run_fuzz();
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"corpus verdict table", corpus_table},
        {"theorem fuzz", theorem_fuzz},
        {"decomposition suite", decomposition_suite},
        {"synthesis", synthesis},
        {"axiom suite", axiom_suite},
        {"Blaschke fidelity", blaschke_fidelity},
        {"one-way implications", one_way},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
