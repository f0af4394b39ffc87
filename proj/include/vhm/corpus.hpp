#pragma once

// Scenario constructors: the worked examples, Blaschke factor expansions,
// seeded random scenarios for fuzzing, and the upper-semicontinuity probe.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhm/beurling.hpp"

namespace vhm {

enum class ClosureMode { linear, module };

std::string to_string(ClosureMode c);
std::string to_string(ActingAlgebra a);

struct ExpectedVerdicts {
    Verdict invariant;
    Verdict near_inner;
    Verdict full_projection;
};

struct Scenario {
    std::string name;
    SpacePtr space;
    int horizon = -1;  // -1: check every level up to N
    std::vector<Element> generators;
    ClosureMode closure = ClosureMode::module;
    ActingAlgebra algebra = ActingAlgebra::full;
    std::optional<ExpectedVerdicts> expected;
    std::string note;
};

/// B(z) = (a - z) / (1 - conj(a) z) truncated at degree N: c_0 = a,
/// c_k = -(1 - |a|^2) conj(a)^(k-1). Throws std::invalid_argument unless 0 < |a| < 1.
Element blaschke_coeffs(Complex a, int N);
/// The same series placed in an existing one-variable space.
Element blaschke_element(const SpacePtr& space, Complex a);
/// (1 - |a|^2) |a|^(2N): the squared norm of the discarded tail.
double blaschke_tail(Complex a, int N);

struct ExampleParams {
    Complex a = 0.5;
    int N = -1;        // -1: the example's default
    int horizon = -1;  // -1: the example's default
};

/// Names: ex6.2, ex6.7, ex7.4, eq3.17. Throws std::invalid_argument otherwise.
Scenario example(const std::string& name, const ExampleParams& params = {});
const std::vector<std::string>& example_names();

/// The subspace spanned (linear) or generated (module) by the scenario's generators.
SubspaceBasis build_subspace(const Scenario& s, const Tolerances& tol = {});

/// Options carried from a scenario into the checkers.
CheckOptions check_options(const Scenario& s, const Tolerances& tol = {}, unsigned jobs = 1);

struct RandomScenarioParams {
    std::uint64_t seed = 1;
    int n = 2;
    int d = 1;
    int N = 6;
    int min_generators = 1;
    int max_generators = 3;
    int max_generator_degree = -1;  // -1: N - 2
    bool invariant = true;
};

/// Deterministic in the seed. Invariant scenarios are module closures of
/// random polynomial generators; the others are linear spans of random
/// polynomials, or module closures with one graded basis vector deleted.
Scenario random_scenario(const RandomScenarioParams& p);

struct UscSequence {
    std::string kind;              // "perturbed" (f + g/j) or "scaled" (f (1 + 1/j))
    Ord limit_ord;                 // ord(f)
    Ord limsup_ord;                // max of ord(f_j) over the tail of the sequence
    double final_distance = 0.0;   // ||f_J - f||
    bool violation = false;        // limsup > ord(f)
    bool strict = false;           // lim ord(f_j) < ord(f)
};

struct UscReport {
    std::size_t sequences = 0;
    std::size_t violations = 0;
    std::size_t strict_witnesses = 0;
    std::vector<UscSequence> samples;  // the first few, for display
};

/// Seeded norm-convergent sequences f_j -> f; checks limsup ord(f_j) <= ord(f).
UscReport usc_probe(const SpacePtr& space, std::uint64_t seed, std::size_t count = 100);

}  // namespace vhm
