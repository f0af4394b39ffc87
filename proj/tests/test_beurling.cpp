#include <doctest.h>

#include "oracles.hpp"
#include "vhm/corpus.hpp"

using namespace vhm;

namespace {

Element mono(const SpacePtr& sp, MultiIndex m, Complex c = 1.0) { return Element::monomial(sp, m, c); }

GradedDecomposition decompose(const Scenario& s) { return decompose_subspace(build_subspace(s)); }

// Least-squares projection onto the column span, independent of the library's projector.
Element oracle_projection(const CMatrix& cols, const Element& f)
{
    if (cols.cols() == 0) return Element::zero(f.space_ptr());
    const CVector x = cols.colPivHouseholderQr().solve(f.coeffs());
    return Element(f.space_ptr(), cols * x);
}

}  // namespace

TEST_CASE("synthesis examples in the coordinate submodule")
{
    const auto D = decompose(example("ex6.2"));
    const auto sp = D.V.space_ptr();

    const auto t = synthesize(D, Poly::variable(2, 0), mono(sp, {0, 1}));
    CHECK(t.succeeded());
    CHECK(t.component == 1);
    CHECK(t.g_series[0].norm() == doctest::Approx(0.0));
    CHECK(t.g_series[1].norm() <= 1e-14);
    CHECK((t.g_series[2] - mono(sp, {1, 1})).norm() <= 1e-14);
    CHECK(t.final_residual <= 1e-14);
    CHECK(t.residual_ords[2].is_infinite());
    CHECK_FALSE(t.ill_conditioned);

    const auto u = synthesize(D, parse_poly("z1^2", 2), mono(sp, {1, 0}));
    CHECK(u.succeeded());
    CHECK((u.g_series[3] - mono(sp, {3, 0})).norm() <= 1e-14);
    CHECK(u.residual_ords[2] == Ord(3));
    CHECK(u.residual_ords[3].is_infinite());
}

TEST_CASE("synthesis fails at level 2 when z1z2 is missing")
{
    const auto D = decompose(example("ex6.7"));
    const auto sp = D.V.space_ptr();
    const auto t = synthesize(D, Poly::variable(2, 0), mono(sp, {0, 1}));
    REQUIRE_FALSE(t.succeeded());
    CHECK(t.failure->level == 2);
    CHECK(t.failure->residual == doctest::Approx(1.0));
    CHECK(t.g_series.size() == 2);
    CHECK_NOTHROW(partial_projection(D, t, 1));
    CHECK_THROWS_AS(partial_projection(D, t, 2), std::invalid_argument);
}

TEST_CASE("partial projections for the shifted Blaschke span break the near inner identity")
{
    const Scenario s = example("ex7.4");
    const auto D = decompose(s);
    const auto opt = check_options(s);
    REQUIRE(D.dims[1] == 1);
    const Element h = D.components[1].vector(0);
    const auto t = synthesize(D, Poly::variable(1, 0), h, opt);
    CHECK(t.succeeded());
    bool violated = false;
    for (int m = 0; m < static_cast<int>(t.g_series.size()); ++m) {
        try {
            (void)partial_projection(D, t, m);
        } catch (const NearInnerViolation&) {
            violated = true;
        }
    }
    CHECK(violated);
    CHECK_THROWS_AS(partial_projection(D, t, 2), NearInnerViolation);
}

TEST_CASE("synthesis on invariant random scenarios matches the projection oracle")
{
    std::mt19937_64 rng(41);
    for (std::uint64_t seed = 2; seed <= 80; seed += 2) {
        RandomScenarioParams p;
        p.seed = seed;
        p.n = 1 + static_cast<int>(seed % 3);
        p.d = 1 + static_cast<int>((seed / 4) % 2);
        p.N = 4 + static_cast<int>(seed % 4);
        const Scenario s = random_scenario(p);
        CAPTURE(s.name);
        const auto D = decompose(s);
        const auto sp = D.V.space_ptr();
        for (int k = 0; k < D.levels(); ++k) {
            const auto& W = D.components[static_cast<std::size_t>(k)];
            if (W.empty()) continue;
            const Element h(sp, W.matrix() * oracle::gaussian_vector(rng, W.size()));
            const Poly r = Poly::variable(p.n, static_cast<int>(seed % static_cast<std::uint64_t>(p.n)));
            const auto t = synthesize(D, r, h);
            CHECK(t.succeeded());
            CHECK(t.component == k);
            CHECK((t.rh - oracle::multiply(r, h)).norm() <= 1e-12 * std::max(1.0, h.norm()));
            CHECK(t.final_residual <= 1e-9 * std::max(1.0, t.rh.norm()));
            for (int m = 0; m < static_cast<int>(t.g_series.size()); ++m) {
                const Element fm = partial_projection(D, t, m);
                const Element expect = oracle_projection(D.partial_sum(m).matrix(), t.rh);
                CHECK((fm - expect).norm() <= 1e-9 * std::max(1.0, t.rh.norm()));
                CHECK(t.partial_norms[static_cast<std::size_t>(m)] <= t.rh.squared_norm() * (1 + 1e-10) + 1e-10);
                const Element rest = t.rh - fm;
                CHECK(rest.coeffs().head(sp->block_end(m)).norm() <= 1e-9 * std::max(1.0, t.rh.norm()));
            }
        }
    }
}

TEST_CASE("synthesis argument errors")
{
    const auto D = decompose(example("ex6.2"));
    const auto sp = D.V.space_ptr();
    CHECK_THROWS_AS(synthesize(D, parse_poly("1 + z1", 2), mono(sp, {1, 0})), std::invalid_argument);
    CHECK_THROWS_AS(synthesize(D, Poly(2), mono(sp, {1, 0})), std::invalid_argument);
    CHECK_THROWS_AS(synthesize(D, Poly::variable(2, 0), Element::zero(sp)), MembershipError);
    CHECK_THROWS_AS(synthesize(D, Poly::variable(2, 0), mono(sp, {1, 0}) + mono(sp, {1, 1})), MembershipError);
    CHECK_THROWS_AS(synthesize(D, Poly::variable(2, 0), mono(sp, {0, 0})), MembershipError);
    const auto t = synthesize(D, Poly::variable(2, 0), mono(sp, {0, 1}));
    CHECK_THROWS_AS(partial_projection(D, t, -1), std::invalid_argument);
}

TEST_CASE("three-valued conjunction")
{
    const Verdict P = Verdict::pass, F = Verdict::fail, I = Verdict::inconclusive;
    CHECK(conjunction(P, P) == P);
    CHECK(conjunction(P, F) == F);
    CHECK(conjunction(F, I) == F);
    CHECK(conjunction(I, F) == F);
    CHECK(conjunction(P, I) == I);
    CHECK(conjunction(I, I) == I);
}

TEST_CASE("verify_beurling on the worked examples")
{
    for (const std::string& name : example_names()) {
        CAPTURE(name);
        const Scenario s = example(name);
        const auto v = verify_beurling(build_subspace(s), check_options(s));
        REQUIRE(s.expected.has_value());
        CHECK(v.invariant.verdict == s.expected->invariant);
        CHECK(v.near_inner.verdict == s.expected->near_inner);
        CHECK(v.full_projection.verdict == s.expected->full_projection);
        REQUIRE(v.biconditional_holds.has_value());
        CHECK(*v.biconditional_holds);
        CHECK_FALSE(v.counterexample);

        const auto par = verify_beurling(build_subspace(s), check_options(s, {}, 4));
        CHECK(par.invariant.max_violation == v.invariant.max_violation);
        CHECK(par.near_inner.max_violation == v.near_inner.max_violation);
    }
}

TEST_CASE("an inconclusive verdict makes the biconditional abstain")
{
    // A perturbation of size 1e-7 lands in the band between the pass and fail thresholds.
    const auto sp = make_space(1, 1, 3);
    const auto closure = module_closure({mono(sp, {1})}, sp).basis;
    std::vector<Element> gens = closure.vectors();
    gens[0] = gens[0] + mono(sp, {0}, 1e-7);
    const auto V = orthonormalize(gens);
    const auto v = verify_beurling(V);
    const bool any_gap = v.invariant.verdict == Verdict::inconclusive ||
                         v.near_inner.verdict == Verdict::inconclusive ||
                         v.full_projection.verdict == Verdict::inconclusive;
    CHECK(any_gap);
    if (v.invariant.verdict == Verdict::inconclusive ||
        conjunction(v.near_inner.verdict, v.full_projection.verdict) == Verdict::inconclusive) {
        CHECK_FALSE(v.biconditional_holds.has_value());
        CHECK_FALSE(v.counterexample);
    }
}

TEST_CASE("generator criterion agrees with invariance")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomScenarioParams p;
        p.seed = seed;
        p.n = 1 + static_cast<int>(seed % 3);
        p.N = 4 + static_cast<int>(seed % 3);
        p.invariant = seed % 2 == 0;
        const Scenario s = random_scenario(p);
        CAPTURE(s.name);
        const auto V = build_subspace(s);
        const auto opt = check_options(s);
        CHECK(generator_criterion(V, opt).verdict == is_R1_invariant(V, opt).verdict);
    }
}

TEST_CASE("unital lift: invariance under R_1 and under all polynomials coincide")
{
    for (const std::string& name : example_names()) {
        CAPTURE(name);
        const Scenario s = example(name);
        const auto V = build_subspace(s);
        const auto opt = check_options(s);
        if (s.horizon >= 0 && s.horizon < s.space->max_degree()) continue;  // sampled products would cross the horizon
        const auto full = unital_lift(V, ActingAlgebra::full, 200, 7, opt);
        const auto zero = unital_lift(V, ActingAlgebra::vanishing_at_zero, 200, 7, opt);
        CHECK(full.verdict == zero.verdict);
        CHECK(full.verdict == is_R1_invariant(V, opt).verdict);
        CHECK(full.pairs_checked == 200);
        for (const Witness& w : full.witnesses) {
            CHECK(w.magnitude == doctest::Approx(oracle::distance_to_span(V.matrix(), w.probe.coeffs()) /
                                                 std::max(1.0, w.probe.norm())));
        }
    }
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomScenarioParams p;
        p.seed = seed;
        p.n = 1 + static_cast<int>(seed % 3);
        p.N = 5;
        p.invariant = seed % 2 == 0;
        const Scenario s = random_scenario(p);
        const auto V = build_subspace(s);
        const auto full = unital_lift(V, ActingAlgebra::full, 100, seed, {});
        const auto zero = unital_lift(V, ActingAlgebra::vanishing_at_zero, 100, seed, {});
        CHECK(full.verdict == zero.verdict);
        if (p.invariant) CHECK(full.verdict == Verdict::pass);
    }
}
