#include "vhm/corpus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "vhm/algebra.hpp"

namespace vhm {

std::string to_string(ClosureMode c) { return c == ClosureMode::module ? "module" : "linear"; }

std::string to_string(ActingAlgebra a) { return a == ActingAlgebra::full ? "full" : "vanishing-at-0"; }

Element blaschke_element(const SpacePtr& space, Complex a)
{
    if (space->variables() != 1) throw std::invalid_argument("blaschke_element: needs a one-variable space");
    const double r = std::abs(a);
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("blaschke_coeffs: need 0 < |a| < 1");
    Element b = Element::zero(space);
    const Complex abar = std::conj(a);
    const double scale = 1.0 - r * r;
    b.coeffs()[space->offset(0)] = a;
    Complex power = 1.0;
    for (int k = 1; k <= space->max_degree(); ++k) {
        b.coeffs()[space->offset(static_cast<std::size_t>(k))] = -scale * power;
        power *= abar;
    }
    return b;
}

Element blaschke_coeffs(Complex a, int N) { return blaschke_element(make_space(1, 1, N), a); }

double blaschke_tail(Complex a, int N)
{
    const double r = std::abs(a);
    return (1.0 - r * r) * std::pow(r, 2.0 * N);
}

namespace {

ExpectedVerdicts expect(Verdict inv, Verdict ni, Verdict fp) { return {inv, ni, fp}; }

// Default horizon for the Blaschke-based entries: the checks stop where the
// truncation tail of z^j B (squared norm ~ |a|^(2(N-j))) could reach the
// orthogonality tolerance.
int blaschke_horizon(Complex a, int N)
{
    const double r = std::abs(a);
    const int reach = static_cast<int>(std::floor(std::log(1e-12) / (2.0 * std::log(r))));
    return std::max(2, std::min(N, N - reach));
}

Element shifted(const Element& f, int j)
{
    return mul_poly(Poly::monomial(1, MultiIndex{j}), f).product;
}

}  // namespace

const std::vector<std::string>& example_names()
{
    static const std::vector<std::string> names{"ex6.2", "ex6.7", "ex7.4", "eq3.17"};
    return names;
}

Scenario example(const std::string& name, const ExampleParams& params)
{
    Scenario s;
    s.name = name;
    if (name == "ex6.2") {
        s.space = make_space(2, 1, params.N < 0 ? 4 : params.N);
        s.horizon = params.horizon;
        s.generators = {Element::monomial(s.space, {1, 0}), Element::monomial(s.space, {0, 1})};
        s.closure = ClosureMode::module;
        s.expected = expect(Verdict::pass, Verdict::pass, Verdict::pass);
        s.note = "submodule generated by the coordinate functions";
        return s;
    }
    if (name == "ex6.7") {
        s.space = make_space(2, 1, params.N < 0 ? 3 : params.N);
        s.horizon = params.horizon;
        const MultiIndex missing{1, 1};
        for (const MultiIndex& m : s.space->order().table()) {
            if (m.degree() >= 1 && m != missing) s.generators.push_back(Element::monomial(s.space, m));
        }
        s.closure = ClosureMode::linear;
        s.expected = expect(Verdict::fail, Verdict::pass, Verdict::fail);
        s.note = "all monomials of degree >= 1 except z1*z2";
        return s;
    }
    if (name == "ex7.4" || name == "eq3.17") {
        const int N = params.N < 0 ? 24 : params.N;
        if (N < 2) throw std::invalid_argument(name + ": needs N >= 2");
        s.space = make_space(1, 1, N);
        s.horizon = params.horizon < 0 ? blaschke_horizon(params.a, N) : params.horizon;
        const Element b = blaschke_element(s.space, params.a);
        s.closure = ClosureMode::linear;
        // The generator list stops at the horizon D: far below N the truncated
        // shifts z^j B are still orthonormal to working precision, while near N
        // they span every polynomial and the subspace degenerates.
        const int D = s.horizon;
        const std::string cut = " (j <= horizon " + std::to_string(D) + ", coefficients truncated at N = " +
                                std::to_string(N) + ")";
        if (name == "ex7.4") {
            s.generators = {Element::monomial(s.space, {0}), Element::monomial(s.space, {1})};
            for (int j = 2; j <= std::max(2, D); ++j) s.generators.push_back(shifted(b, j));
            s.expected = expect(Verdict::fail, Verdict::fail, Verdict::pass);
            s.note = "span{1, z, z^j B} for a simple Blaschke factor B" + cut;
        } else {
            for (int j = 0; 2 * j <= D; ++j) s.generators.push_back(shifted(b, 2 * j));
            s.expected = expect(Verdict::fail, Verdict::pass, Verdict::fail);
            s.note = "span{z^(2j) B} for a simple Blaschke factor B" + cut;
        }
        return s;
    }
    throw std::invalid_argument("unknown example '" + name + "' (expected ex6.2, ex6.7, ex7.4 or eq3.17)");
}

SubspaceBasis build_subspace(const Scenario& s, const Tolerances& tol)
{
    if (s.generators.empty()) return SubspaceBasis(s.space);
    if (s.closure == ClosureMode::module) return module_closure(s.generators, s.space, tol.rank).basis;
    return linear_closure(s.generators, tol.rank);
}

CheckOptions check_options(const Scenario& s, const Tolerances& tol, unsigned jobs)
{
    CheckOptions opt;
    opt.tol = tol;
    opt.horizon = s.horizon;
    opt.jobs = jobs;
    return opt;
}

Scenario random_scenario(const RandomScenarioParams& p)
{
    if (p.n < 1 || p.d < 1 || p.N < 2) throw std::invalid_argument("random_scenario: need n, d >= 1 and N >= 2");
    std::mt19937_64 rng(p.seed);
    Scenario s;
    s.space = make_space(p.n, p.d, p.N);
    const int top = p.max_generator_degree < 0 ? p.N - 2 : std::min(p.max_generator_degree, p.N);
    std::uniform_int_distribution<int> count(std::max(1, p.min_generators), std::max(1, p.max_generators));

    std::vector<Element> gens;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) gens.push_back(random_element(rng, s.space, top, 0.0));

    const std::string tag = "n" + std::to_string(p.n) + "-d" + std::to_string(p.d) + "-N" + std::to_string(p.N) +
                            "-s" + std::to_string(p.seed);
    if (p.invariant) {
        s.name = "random-invariant-" + tag;
        s.generators = std::move(gens);
        s.closure = ClosureMode::module;
        s.expected = expect(Verdict::pass, Verdict::pass, Verdict::pass);
        s.note = "module closure of random polynomial generators";
        return s;
    }

    s.name = "random-" + tag;
    s.closure = ClosureMode::linear;
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
        s.generators = std::move(gens);
        s.note = "linear span of random polynomials";
        break;
    case 1: {
        const GradedDecomposition D = decompose_subspace(module_closure(gens, s.space).basis);
        std::vector<std::pair<int, Eigen::Index>> slots;
        for (int lvl = 0; lvl < D.levels(); ++lvl) {
            for (Eigen::Index i = 0; i < D.components[static_cast<std::size_t>(lvl)].size(); ++i) {
                slots.emplace_back(lvl, i);
            }
        }
        const auto drop = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
        for (const auto& [lvl, i] : slots) {
            if (lvl == drop.first && i == drop.second) continue;
            s.generators.push_back(D.components[static_cast<std::size_t>(lvl)].vector(i));
        }
        s.note = "module closure with the graded basis vector " + std::to_string(drop.second) + " of W_" +
                 std::to_string(drop.first) + " deleted";
        break;
    }
    default: {
        s.generators = module_closure(gens, s.space).basis.vectors();
        s.generators.push_back(random_element(rng, s.space, top, 0.0));
        s.note = "module closure plus one extra random polynomial";
        break;
    }
    }
    return s;
}

namespace {

constexpr int kSequenceLength = 64;

UscSequence run_sequence(const std::string& kind, const Element& f, const Element& g)
{
    UscSequence out;
    out.kind = kind;
    out.limit_ord = f.ord();
    Ord tail_max(0);
    Ord tail_min = Ord::infinity();
    bool first = true;
    Element fj = f;
    for (int j = kSequenceLength / 2; j <= kSequenceLength; ++j) {
        const double t = 1.0 / j;
        fj = kind == "scaled" ? f * Complex(1.0 + t) : f + g * Complex(t);
        const Ord o = fj.ord();
        tail_max = first ? o : std::max(tail_max, o);
        tail_min = std::min(tail_min, o);
        first = false;
    }
    out.limsup_ord = tail_max;
    out.final_distance = (fj - f).norm();
    out.violation = out.limsup_ord > out.limit_ord;
    out.strict = tail_max == tail_min && tail_max < out.limit_ord;
    return out;
}

void record(UscReport& rep, UscSequence seq)
{
    ++rep.sequences;
    if (seq.violation) ++rep.violations;
    if (seq.strict) ++rep.strict_witnesses;
    if (rep.samples.size() < 8) rep.samples.push_back(std::move(seq));
}

}  // namespace

UscReport usc_probe(const SpacePtr& space, std::uint64_t seed, std::size_t count)
{
    UscReport rep;
    const int n = space->variables();
    const int N = space->max_degree();
    std::mt19937_64 rng(seed);

    // Ord drops under a vanishing perturbation: z1^2 + 1/j.
    if (N >= 2 && count > 0) {
        const Element f = Element::monomial(space, MultiIndex::unit(n, 0) + MultiIndex::unit(n, 0));
        record(rep, run_sequence("perturbed", f, Element::monomial(space, MultiIndex::zero(n))));
    }
    // Continuity where f(0) != 0.
    if (N >= 1 && rep.sequences < count) {
        const Element f = Element::monomial(space, MultiIndex::zero(n)) + Element::monomial(space, MultiIndex::unit(n, 0));
        record(rep, run_sequence("perturbed", f, Element::monomial(space, MultiIndex::unit(n, 0))));
    }
    while (rep.sequences < count) {
        const bool perturbed = rep.sequences % 2 == 0 && N >= 1;
        Element f = random_element(rng, space, N, 0.0);
        if (perturbed) {
            f = f - f.below(1);
            if (f.norm() == 0.0) continue;
            const Element g = random_element(rng, space, f.ord().value() - 1, 0.0);
            record(rep, run_sequence("perturbed", f, g));
        } else {
            record(rep, run_sequence("scaled", f, Element::zero(space)));
        }
    }
    return rep;
}

}  // namespace vhm
