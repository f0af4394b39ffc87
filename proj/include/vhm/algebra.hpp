#pragma once

// Sample-based harness for the valuation-algebra and valuation-module axioms
// of the polynomial algebra C[z_1, ..., z_n] acting on a truncated space.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vhm/elements.hpp"
#include "vhm/properties.hpp"

namespace vhm {

struct AxiomResult {
    std::string id;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst = 0.0;    // largest violation magnitude (ord gap, or 1 for a boolean failure)
    std::string witness;   // first violating sample, empty when none
    Verdict verdict = Verdict::pass;
};

struct AxiomReport {
    std::uint64_t seed = 0;
    std::vector<AxiomResult> axioms;

    bool all_pass() const;
    const AxiomResult& find(const std::string& id) const;
};

/// Random polynomial with Gaussian-integer coefficients on a random support of
/// degree <= max_degree; zero with probability zero_rate.
Poly random_poly(std::mt19937_64& rng, int n, int min_degree, int max_degree, double zero_rate = 0.05);

/// Random element of `space` with Gaussian-integer coefficients of degree <= max_degree.
Element random_element(std::mt19937_64& rng, const SpacePtr& space, int max_degree, double zero_rate = 0.05);

/// Runs every axiom on `samples` seeded samples. Violations are reported, not thrown.
AxiomReport check_axioms(const SpacePtr& space, std::uint64_t seed, std::size_t samples = 500);

}  // namespace vhm
