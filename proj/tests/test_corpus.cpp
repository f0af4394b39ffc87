#include <doctest.h>

#include "oracles.hpp"
#include "vhm/io.hpp"

using namespace vhm;

TEST_CASE("Blaschke coefficients match long division")
{
    for (const Complex a : {Complex(0.5), Complex(0.9), Complex(0.3, -0.4), Complex(-0.7, 0.1)}) {
        CAPTURE(a);
        const int N = 24;
        const Element b = blaschke_coeffs(a, N);
        const auto div = oracle::blaschke_by_division(a, N);
        for (int k = 0; k <= N; ++k) CHECK(std::abs(b.coeffs()[k] - div[static_cast<std::size_t>(k)]) <= 1e-15);
        // ||B_N||^2 = 1 - tail, up to rounding.
        CHECK(std::abs(1.0 - b.squared_norm() - blaschke_tail(a, N)) <= 8 * std::numeric_limits<double>::epsilon());
    }
}

TEST_CASE("Blaschke example values")
{
    const Element b = blaschke_coeffs(0.5, 3);
    CHECK(b.coeffs()[0] == Complex(0.5));
    CHECK(b.coeffs()[1] == Complex(-0.75));
    CHECK(b.coeffs()[2] == Complex(-0.375));
    CHECK(b.coeffs()[3] == Complex(-0.1875));
    CHECK(blaschke_tail(0.5, 3) == doctest::Approx(0.75 / 64.0));
}

TEST_CASE("Blaschke argument errors")
{
    CHECK_THROWS_AS(blaschke_coeffs(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(blaschke_coeffs(1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(blaschke_coeffs(Complex(0.8, 0.8), 4), std::invalid_argument);
    CHECK_THROWS_AS(blaschke_element(make_space(2, 1, 4), 0.5), std::invalid_argument);
}

TEST_CASE("worked examples are well formed")
{
    CHECK(example_names() == std::vector<std::string>{"ex6.2", "ex6.7", "ex7.4", "eq3.17"});
    for (const std::string& name : example_names()) {
        CAPTURE(name);
        const Scenario s = example(name);
        CHECK(s.name == name);
        CHECK(s.expected.has_value());
        CHECK_FALSE(s.generators.empty());
        for (const Element& g : s.generators) CHECK(g.space_ptr() == s.space);
    }
    const Scenario e = example("ex7.4");
    CHECK(e.space->max_degree() == 24);
    CHECK(e.horizon == 5);
    CHECK(e.closure == ClosureMode::linear);
    CHECK(example("ex6.2").closure == ClosureMode::module);
    CHECK(example("ex6.7").generators.size() == 8);

    ExampleParams p;
    p.a = 0.9;
    CHECK(example("ex7.4", p).horizon == 2);
    p.a = 0.5;
    p.horizon = 3;
    CHECK(example("ex7.4", p).horizon == 3);
    CHECK_THROWS_AS(example("ex9.9"), std::invalid_argument);
    p.a = 1.5;
    CHECK_THROWS_AS(example("ex7.4", p), std::invalid_argument);
}

TEST_CASE("check_options carries the horizon and tolerances")
{
    Tolerances t;
    t.mem = 1e-7;
    const auto opt = check_options(example("ex7.4"), t, 3);
    CHECK(opt.horizon == 5);
    CHECK(opt.tol.mem == 1e-7);
    CHECK(opt.jobs == 3);
}

TEST_CASE("random scenarios are deterministic in the seed")
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomScenarioParams p;
        p.seed = seed;
        p.n = 1 + static_cast<int>(seed % 3);
        p.d = 1 + static_cast<int>(seed % 2);
        p.invariant = seed % 2 == 0;
        const std::string a = serialize_scenario(random_scenario(p)).dump();
        const std::string b = serialize_scenario(random_scenario(p)).dump();
        CHECK(a == b);
        p.seed += 1000;
        CHECK(serialize_scenario(random_scenario(p)).dump() != a);
    }
}

TEST_CASE("random invariant scenarios are invariant")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomScenarioParams p;
        p.seed = seed;
        p.n = 1 + static_cast<int>(seed % 3);
        p.N = 4 + static_cast<int>(seed % 4);
        const Scenario s = random_scenario(p);
        CHECK(s.closure == ClosureMode::module);
        REQUIRE(s.expected.has_value());
        CHECK(s.expected->invariant == Verdict::pass);
        CHECK(is_R1_invariant(build_subspace(s)).verdict == Verdict::pass);
    }
}

TEST_CASE("upper semicontinuity probe examples")
{
    const auto sp = make_space(2, 1, 4);
    const UscReport r = usc_probe(sp, 1, 100);
    CHECK(r.sequences == 100);
    CHECK(r.violations == 0);
    CHECK(r.strict_witnesses >= 1);
    REQUIRE_FALSE(r.samples.empty());
    // f = z1^2 perturbed by g = 1: ord drops from 2 to 0 along the whole sequence.
    CHECK(r.samples[0].limit_ord == Ord(2));
    CHECK(r.samples[0].limsup_ord == Ord(0));
    CHECK(r.samples[0].strict);
    CHECK(r.samples[0].final_distance == doctest::Approx(1.0 / 64.0));
    for (const UscSequence& s : r.samples) CHECK(s.limsup_ord <= s.limit_ord);
}

TEST_CASE("upper semicontinuity holds across seeds and spaces")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto sp = make_space(1 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 2), 5);
        const UscReport r = usc_probe(sp, seed, 100);
        CHECK(r.violations == 0);
        CHECK(r.strict_witnesses >= 1);
    }
}
