#include "vhm/beurling.hpp"

#include <algorithm>
#include <future>
#include <random>

namespace vhm {

namespace {

constexpr double kIllConditioned = 1e-8;
constexpr double kPartialTolerance = 1e-9;
constexpr double kNormSlack = 1e-10;

int component_of(const GradedDecomposition& D, const Element& h, const Tolerances& tol)
{
    if (h.norm() == 0.0) throw MembershipError("synthesize: h must be nonzero");
    for (int k = 0; k < D.levels(); ++k) {
        const SubspaceBasis& w = D.components[static_cast<std::size_t>(k)];
        if (!w.empty() && member(w, h, tol.mem).member) return k;
    }
    throw MembershipError("synthesize: h is not a member of any component W_k");
}

}  // namespace

SynthesisTrace synthesize(const GradedDecomposition& D, const Poly& r, const Element& h, const CheckOptions& opt)
{
    require_same_space(D.V.space(), h.space(), "synthesize");
    const Ord s = poly_ord(r);
    if (s.is_infinite() || s.value() < 1) throw std::invalid_argument("synthesize: r must satisfy ord(r) >= 1");

    const Space& sp = D.V.space();
    const SpacePtr& spp = D.V.space_ptr();
    SynthesisTrace t{r, h, component_of(D, h, opt.tol), mul_poly(r, h).product, {}, {}, {}, 0.0, false, std::nullopt};

    const double scale = std::max(t.rh.norm(), 1.0);
    const int top = opt.effective_horizon(sp);
    Element f = Element::zero(spp);
    for (int m = 0; m <= top; ++m) {
        const auto mi = static_cast<std::size_t>(m);
        const LevelMap& L = D.level_maps[mi];
        const CVector block = (t.rh - f).coeffs().segment(sp.block_begin(m), sp.block_size(m));
        const double off = L.residual(block).norm();
        if (off > opt.tol.mem * scale) {
            t.failure = SynthesisFailure{m, off};
            break;
        }
        Element g = Element::zero(spp);
        if (L.rank() > 0) {
            g = Element(spp, D.components[mi].matrix() * L.solve(block));
            if (L.sigma.minCoeff() < kIllConditioned && block.norm() > 0.0) t.ill_conditioned = true;
        }
        f = f + g;
        t.g_series.push_back(std::move(g));
        t.residual_ords.push_back((t.rh - f).ord());
        t.partial_norms.push_back(f.squared_norm());
    }
    t.final_residual = (t.rh - f).norm();
    return t;
}

Element partial_projection(const GradedDecomposition& D, const SynthesisTrace& trace, int m)
{
    if (m < 0) throw std::invalid_argument("partial_projection: m must be nonnegative");
    const auto steps = static_cast<int>(trace.g_series.size());
    if (m >= steps && trace.failure) {
        throw std::invalid_argument("partial_projection: trace stops at level " + std::to_string(trace.failure->level));
    }
    Element f = Element::zero(D.V.space_ptr());
    for (int j = 0; j <= m && j < steps; ++j) f = f + trace.g_series[static_cast<std::size_t>(j)];

    const Element expected = project(D.partial_sum(m), trace.rh);
    const double scale = std::max(trace.rh.norm(), 1.0);
    const double gap = (f - expected).norm();
    if (gap > kPartialTolerance * scale) {
        throw NearInnerViolation("partial_projection: f_" + std::to_string(m) +
                                 " differs from the projection of rh by " + std::to_string(gap));
    }
    if (f.squared_norm() > trace.rh.squared_norm() * (1.0 + kNormSlack) + kNormSlack) {
        throw NearInnerViolation("partial_projection: ||f_" + std::to_string(m) + "||^2 exceeds ||rh||^2");
    }
    return f;
}

Verdict conjunction(Verdict a, Verdict b)
{
    if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::pass;
}

TheoremVerdict verify_beurling(const SubspaceBasis& V, const CheckOptions& opt)
{
    GradedDecomposition D = decompose_subspace(V, opt.tol);
    PropertyReport invariant;
    DecompositionReports dec;
    if (opt.jobs > 1) {
        auto inv = std::async(std::launch::async, [&] { return is_R1_invariant(D, opt); });
        dec = check_decomposition(D, opt);
        invariant = inv.get();
    } else {
        invariant = is_R1_invariant(D, opt);
        dec = check_decomposition(D, opt);
    }

    TheoremVerdict v{std::move(D), std::move(invariant), std::move(dec.near_inner), std::move(dec.full_projection),
                     std::move(dec.weak), std::nullopt, false};
    const Verdict rhs = conjunction(v.near_inner.verdict, v.full_projection.verdict);
    if (v.invariant.verdict != Verdict::inconclusive && rhs != Verdict::inconclusive) {
        v.biconditional_holds = (v.invariant.verdict == Verdict::pass) == (rhs == Verdict::pass);
        v.counterexample = !*v.biconditional_holds;
    }
    return v;
}

PropertyReport generator_criterion(const SubspaceBasis& V, const CheckOptions& opt)
{
    return generator_criterion_report(decompose_subspace(V, opt.tol), opt);
}

PropertyReport unital_lift(const SubspaceBasis& V, ActingAlgebra algebra, unsigned samples, std::uint64_t seed,
                           const CheckOptions& opt)
{
    const Space& sp = V.space();
    const int n = sp.variables();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> small(-3, 3);

    PropertyReport rep;
    rep.property = PropertyId::submodule;
    rep.pass_threshold = opt.tol.mem;
    rep.fail_threshold = opt.tol.fail;
    rep.notes.push_back(algebra == ActingAlgebra::full ? "acting algebra: all polynomials"
                                                       : "acting algebra: polynomials vanishing at 0");
    rep.notes.push_back("products truncated at degree N");
    if (V.empty()) return rep;

    bool any_fail = false;
    bool any_gap = false;
    std::vector<Witness> found;
    for (unsigned i = 0; i < samples; ++i) {
        Poly p(n);
        for (const MultiIndex& m : sp.order().table()) {
            if (m.degree() == 0 && algebra == ActingAlgebra::vanishing_at_zero) continue;
            if (m.degree() > 2) break;
            p.set(m, Complex(small(rng), small(rng)));
        }
        CVector c(V.size());
        for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = Complex(gauss(rng), gauss(rng));
        c.normalize();
        const Element v(V.space_ptr(), V.matrix() * c);
        const Element pv = mul_poly(p, v).product;
        const Membership mem = member(V, pv, 0.0);
        const double mag = mem.residual / std::max(pv.norm(), 1.0);
        ++rep.pairs_checked;
        rep.max_violation = std::max(rep.max_violation, mag);
        const Verdict cls = classify(mag, rep.pass_threshold, rep.fail_threshold);
        if (cls == Verdict::pass) continue;
        any_fail = any_fail || cls == Verdict::fail;
        any_gap = any_gap || cls == Verdict::inconclusive;
        Witness w{p, 0, 0, 0, c, v, Element::zero(V.space_ptr()), pv, mag, cls == Verdict::inconclusive};
        found.push_back(std::move(w));
    }
    rep.witness_total = found.size();
    std::stable_partition(found.begin(), found.end(), [](const Witness& w) { return !w.gap; });
    for (std::size_t i = 0; i < found.size() && i < opt.max_witnesses; ++i) rep.witnesses.push_back(found[i]);
    rep.verdict = any_fail ? Verdict::fail : any_gap ? Verdict::inconclusive : Verdict::pass;
    return rep;
}

}  // namespace vhm
