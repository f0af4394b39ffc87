#include "vhm/properties.hpp"

#include <algorithm>
#include <random>
#include <tuple>

#include "vhm/linalg.hpp"
#include "vhm/parallel.hpp"

namespace vhm {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(PropertyId p)
{
    switch (p) {
    case PropertyId::near_inner_subspace: return "near-inner-subspace";
    case PropertyId::weak_near_inner: return "weak-near-inner";
    case PropertyId::near_inner: return "near-inner";
    case PropertyId::full_projection: return "full-projection";
    case PropertyId::invariant: return "invariant";
    case PropertyId::generator_criterion: return "generator-criterion";
    case PropertyId::submodule: return "submodule";
    }
    return "?";
}

Verdict classify(double magnitude, double pass_threshold, double fail_threshold)
{
    if (magnitude <= pass_threshold) return Verdict::pass;
    if (magnitude > fail_threshold) return Verdict::fail;
    return Verdict::inconclusive;
}

std::vector<Poly> acting_family(const Space& sp, int top, const CheckOptions& opt)
{
    const int n = sp.variables();
    std::vector<Poly> out;
    for (const MultiIndex& m : sp.order().table()) {
        if (m.degree() >= 1 && m.degree() <= top) out.push_back(Poly::monomial(n, m));
    }
    if (opt.dense_samples > 0 && top >= 1) {
        std::mt19937_64 rng(opt.dense_seed);
        std::normal_distribution<double> gauss;
        std::uniform_int_distribution<int> lowest(1, top);
        for (unsigned i = 0; i < opt.dense_samples; ++i) {
            const int low = lowest(rng);
            Poly r(n);
            double norm2 = 0.0;
            for (const MultiIndex& m : sp.order().table()) {
                if (m.degree() < low || m.degree() > top) continue;
                const Complex c(gauss(rng), gauss(rng));
                r.set(m, c);
                norm2 += std::norm(c);
            }
            out.push_back(r * Complex(1.0 / std::sqrt(norm2)));
        }
    }
    return out;
}

namespace {

struct Candidate {
    std::size_t r_rank;
    Witness witness;
};

struct TopSingular {
    double sigma = 0.0;
    CVector v;
};

TopSingular top_singular(const CMatrix& a)
{
    TopSingular t;
    if (a.size() == 0) return t;
    if (a.cols() == 1) {
        t.sigma = a.norm();
        t.v = CVector::Ones(1);
        return t;
    }
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinV);
    t.sigma = svd.singularValues()[0];
    t.v = svd.matrixV().col(0);
    return t;
}

class ReportBuilder {
public:
    ReportBuilder(PropertyId id, double pass, double fail, std::size_t cap)
    {
        report_.property = id;
        report_.pass_threshold = pass;
        report_.fail_threshold = fail;
        cap_ = cap;
    }

    void observe(double magnitude) { report_.max_violation = std::max(report_.max_violation, magnitude); }

    void offer(Candidate c)
    {
        observe(c.witness.magnitude);
        if (c.witness.magnitude <= report_.pass_threshold) return;
        c.witness.gap = c.witness.magnitude <= report_.fail_threshold;
        candidates_.push_back(std::move(c));
    }

    void add_pairs(std::size_t checked, std::size_t skipped)
    {
        report_.pairs_checked += checked;
        report_.boundary_skips += skipped;
    }

    void note(std::string s) { report_.notes.push_back(std::move(s)); }

    PropertyReport finish()
    {
        std::stable_sort(candidates_.begin(), candidates_.end(), [](const Candidate& a, const Candidate& b) {
            return std::tie(a.witness.k, a.witness.m, a.r_rank, a.witness.h_index) <
                   std::tie(b.witness.k, b.witness.m, b.r_rank, b.witness.h_index);
        });
        bool any_fail = false;
        for (const auto& c : candidates_) any_fail = any_fail || !c.witness.gap;
        report_.verdict = any_fail ? Verdict::fail : candidates_.empty() ? Verdict::pass : Verdict::inconclusive;
        report_.witness_total = candidates_.size();
        // Violations before gap-band entries so the cap never hides a failure.
        std::stable_partition(candidates_.begin(), candidates_.end(),
                              [](const Candidate& c) { return !c.witness.gap; });
        for (std::size_t i = 0; i < candidates_.size() && i < cap_; ++i) {
            report_.witnesses.push_back(std::move(candidates_[i].witness));
        }
        return std::move(report_);
    }

private:
    PropertyReport report_;
    std::vector<Candidate> candidates_;
    std::size_t cap_;
};

Eigen::Index dominant(const CVector& c)
{
    Eigen::Index i = 0;
    if (c.size() > 0) c.cwiseAbs().maxCoeff(&i);
    return i;
}

Witness make_witness(const SpacePtr& sp, const Poly& r, int k, int m, const CMatrix& H, const CVector& c,
                     const CVector& probe, const CVector& fpart, double magnitude)
{
    Witness w{r, k, m, dominant(c), c, Element(sp, H * c), Element(sp, -fpart), Element(sp, probe), magnitude, false};
    return w;
}

struct PairOutcome {
    std::vector<Candidate> weak, near_inner, full_projection;
    double weak_max = 0.0, ni_max = 0.0, fp_max = 0.0;
    bool checked = false;
    bool skipped = false;
};

// Runs the level recursion for one multiplier r and one component W_k. The
// feasible set {(h, g) : h in W_k, g in V, ord(rh + g) >= m} is linear; by
// injectivity of each L_{W_j}, g's components in W_0..W_{m-1} are determined
// by h, so it is tracked as a subspace C of W_k-coordinates together with the
// approximant f(c) = -(g_0 + ... + g_{m-1}).
void scan_pair(const GradedDecomposition& D, const Poly& r, std::size_t r_rank, int k, int top,
               const Tolerances& tol, PairOutcome& out)
{
    const Space& sp = D.V.space();
    const SpacePtr& spp = D.V.space_ptr();
    const CMatrix& H = D.components[static_cast<std::size_t>(k)].matrix();
    const Eigen::Index p = H.cols();
    if (p == 0) return;
    const int s = poly_ord(r).value();
    if (s + k > top) {
        // Beyond the truncation degree the product vanishes and every condition
        // holds trivially; below it but beyond the horizon it is unexamined.
        out.skipped = s + k <= sp.max_degree();
        return;
    }
    out.checked = true;
    const CMatrix R = mul_poly_columns(r, sp, H);
    CMatrix F = CMatrix::Zero(sp.dim(), p);
    CMatrix C = CMatrix::Identity(p, p);

    for (int m = 0; m <= top; ++m) {
        const CMatrix& Wm = D.components[static_cast<std::size_t>(m)].matrix();
        const LevelMap& L = D.level_maps[static_cast<std::size_t>(m)];
        if (m < s + k) {
            // ord(rh) = s + k > m for every nonzero h, g = 0 is admissible and
            // nothing needs correcting yet: the weak and full forms coincide.
            if (Wm.cols() == 0) continue;
            const TopSingular t = top_singular(Wm.adjoint() * R);
            out.weak_max = std::max(out.weak_max, t.sigma);
            out.ni_max = std::max(out.ni_max, t.sigma);
            if (t.sigma > tol.orth) {
                const CVector probe = R * t.v;
                const CVector zero = CVector::Zero(sp.dim());
                Witness w = make_witness(spp, r, k, m, H, t.v, probe, zero, t.sigma);
                out.weak.push_back({r_rank, w});
                out.near_inner.push_back({r_rank, std::move(w)});
            }
            continue;
        }
        if (C.cols() == 0) break;

        const CMatrix residual = R - F;
        const CMatrix block = residual.middleRows(sp.block_begin(m), sp.block_size(m));
        const CMatrix E = L.residual(block * C);
        const TopSingular fp = top_singular(E);
        out.fp_max = std::max(out.fp_max, fp.sigma);
        if (fp.sigma > tol.mem) {
            const CVector c = C * fp.v;
            out.full_projection.push_back(
                {r_rank, make_witness(spp, r, k, m, H, c, residual * c, F * c, fp.sigma)});
        }
        if (fp.sigma > tol.mem) C = C * split_domain(E, tol.mem).kernel;
        if (L.rank() > 0) F += Wm * L.solve(block);
        if (C.cols() == 0 || Wm.cols() == 0) continue;

        const CMatrix after = R - F;
        const TopSingular ni = top_singular(Wm.adjoint() * after * C);
        out.ni_max = std::max(out.ni_max, ni.sigma);
        if (ni.sigma > tol.orth) {
            const CVector c = C * ni.v;
            out.near_inner.push_back({r_rank, make_witness(spp, r, k, m, H, c, after * c, F * c, ni.sigma)});
        }
    }
}

std::string horizon_note(const Space& sp, int top)
{
    if (top >= sp.max_degree()) return "truncated-module products; all levels 0.." + std::to_string(top) + " examined";
    return "horizon " + std::to_string(top) + " < N = " + std::to_string(sp.max_degree()) +
           ": pairs with ord(r)+k beyond the horizon are counted as boundary skips";
}

const char* kMonomialNote =
    "r ranges over monomials z^m, 1 <= |m| <= horizon; sufficient because the polynomial valuation is strict";

}  // namespace

DecompositionReports check_decomposition(const GradedDecomposition& D, const CheckOptions& opt)
{
    const Space& sp = D.V.space();
    const int top = opt.effective_horizon(sp);
    const Tolerances& tol = opt.tol;
    const std::vector<Poly> family = acting_family(sp, top, opt);

    const std::size_t K = static_cast<std::size_t>(D.levels());
    std::vector<PairOutcome> outcomes(family.size() * K);
    parallel_for(outcomes.size(), opt.jobs, [&](std::size_t i) {
        scan_pair(D, family[i / K], i / K, static_cast<int>(i % K), top, tol, outcomes[i]);
    });

    ReportBuilder weak(PropertyId::weak_near_inner, tol.orth, tol.fail, opt.max_witnesses);
    ReportBuilder ni(PropertyId::near_inner, tol.orth, tol.fail, opt.max_witnesses);
    ReportBuilder fp(PropertyId::full_projection, tol.mem, tol.fail, opt.max_witnesses);
    for (PairOutcome& o : outcomes) {
        const std::size_t checked = o.checked ? 1 : 0;
        const std::size_t skipped = o.skipped ? 1 : 0;
        weak.add_pairs(checked, skipped);
        ni.add_pairs(checked, skipped);
        fp.add_pairs(checked, skipped);
        weak.observe(o.weak_max);
        ni.observe(o.ni_max);
        fp.observe(o.fp_max);
        for (auto& c : o.weak) weak.offer(std::move(c));
        for (auto& c : o.near_inner) ni.offer(std::move(c));
        for (auto& c : o.full_projection) fp.offer(std::move(c));
    }
    for (ReportBuilder* b : {&weak, &ni, &fp}) {
        b->note(kMonomialNote);
        b->note(horizon_note(sp, top));
    }
    ni.note("quantifier over g in V eliminated exactly by the level recursion");
    fp.note("quantifier over g in V eliminated exactly by the level recursion");
    return {weak.finish(), ni.finish(), fp.finish()};
}

PropertyReport is_weakly_near_inner(const GradedDecomposition& D, const CheckOptions& opt)
{
    return check_decomposition(D, opt).weak;
}

PropertyReport is_near_inner_decomposition(const GradedDecomposition& D, const CheckOptions& opt)
{
    return check_decomposition(D, opt).near_inner;
}

PropertyReport has_full_projection(const GradedDecomposition& D, const CheckOptions& opt)
{
    return check_decomposition(D, opt).full_projection;
}

PropertyReport is_near_inner_subspace(const SubspaceBasis& W, const CheckOptions& opt)
{
    const Space& sp = W.space();
    const int top = opt.effective_horizon(sp);
    ReportBuilder b(PropertyId::near_inner_subspace, opt.tol.orth, opt.tol.fail, opt.max_witnesses);
    b.note(kMonomialNote);
    b.note(horizon_note(sp, top));
    if (W.empty()) return b.finish();
    // Lowest ord among W's members bounds the product ords from below.
    int low = sp.max_degree() + 1;
    for (Eigen::Index i = 0; i < W.size(); ++i) {
        const Ord o = W.vector(i).ord();
        if (!o.is_infinite()) low = std::min(low, o.value());
    }
    const std::vector<Poly> family = acting_family(sp, top, opt);
    for (std::size_t ri = 0; ri < family.size(); ++ri) {
        const Poly& r = family[ri];
        const int s = poly_ord(r).value();
        if (s + low > top) {
            b.add_pairs(0, s + low <= sp.max_degree() ? 1 : 0);
            continue;
        }
        b.add_pairs(1, 0);
        const CMatrix R = mul_poly_columns(r, sp, W.matrix());
        const TopSingular t = top_singular(W.matrix().adjoint() * R);
        Witness w = make_witness(W.space_ptr(), r, low, 0, W.matrix(), t.v, R * t.v, CVector::Zero(sp.dim()),
                                 t.sigma);
        b.offer({ri, std::move(w)});
    }
    return b.finish();
}

namespace {

// Membership of z^r v in V for every graded basis vector v of ord k, where
// the family is restricted to ord(r) + k <= top.
PropertyReport membership_scan(PropertyId id, const SubspaceBasis& V, const CMatrix& basis,
                               const std::vector<int>& ords, const std::vector<Poly>& family, int top,
                               const CheckOptions& opt)
{
    const Space& sp = V.space();
    ReportBuilder b(id, opt.tol.mem, opt.tol.fail, opt.max_witnesses);
    b.note(horizon_note(sp, top));
    const CMatrix& Q = V.matrix();
    std::vector<std::vector<Candidate>> found(family.size());
    std::vector<std::size_t> checked(family.size(), 0), skipped(family.size(), 0);
    std::vector<double> worst(family.size(), 0.0);
    parallel_for(family.size(), opt.jobs, [&](std::size_t ri) {
        const Poly& r = family[ri];
        const int s = poly_ord(r).value();
        const CMatrix R = mul_poly_columns(r, sp, basis);
        const CMatrix res = R - Q * (Q.adjoint() * R);
        for (Eigen::Index i = 0; i < basis.cols(); ++i) {
            const int k = ords[static_cast<std::size_t>(i)];
            if (s + k > top) {
                if (s + k <= sp.max_degree()) ++skipped[ri];
                continue;
            }
            ++checked[ri];
            const double mag = res.col(i).norm() / std::max(R.col(i).norm(), 1.0);
            worst[ri] = std::max(worst[ri], mag);
            if (mag > opt.tol.mem) {
                CVector c = CVector::Zero(basis.cols());
                c[i] = 1.0;
                Witness w{r, k, s + k, i, c, Element(V.space_ptr(), basis.col(i)), Element::zero(V.space_ptr()),
                          Element(V.space_ptr(), R.col(i)), mag, false};
                found[ri].push_back({ri, std::move(w)});
            }
        }
    });
    for (std::size_t ri = 0; ri < family.size(); ++ri) {
        b.add_pairs(checked[ri], skipped[ri]);
        b.observe(worst[ri]);
        for (auto& c : found[ri]) b.offer(std::move(c));
    }
    return b.finish();
}

std::vector<int> component_ords(const GradedDecomposition& D)
{
    std::vector<int> ords;
    for (int k = 0; k < D.levels(); ++k) {
        ords.insert(ords.end(), static_cast<std::size_t>(D.components[static_cast<std::size_t>(k)].size()), k);
    }
    return ords;
}

std::vector<Poly> coordinate_family(int n)
{
    std::vector<Poly> out;
    for (int j = 0; j < n; ++j) out.push_back(Poly::variable(n, j));
    return out;
}

}  // namespace

PropertyReport is_R1_invariant(const GradedDecomposition& D, const CheckOptions& opt)
{
    const Space& sp = D.V.space();
    PropertyReport r = membership_scan(PropertyId::invariant, D.V, D.graded_basis(), component_ords(D),
                                       coordinate_family(sp.variables()), opt.effective_horizon(sp), opt);
    r.notes.push_back("coordinate multipliers z_j suffice: they generate R_1 as an algebra");
    return r;
}

PropertyReport is_R1_invariant(const SubspaceBasis& V, const CheckOptions& opt)
{
    const Space& sp = V.space();
    if (opt.effective_horizon(sp) < sp.max_degree()) {
        return is_R1_invariant(decompose_subspace(V, opt.tol), opt);
    }
    // Ords only matter for the horizon; with none, every product is checked.
    std::vector<int> ords(static_cast<std::size_t>(V.size()), 0);
    PropertyReport r = membership_scan(PropertyId::invariant, V, V.matrix(), ords,
                                       coordinate_family(sp.variables()), sp.max_degree(), opt);
    r.notes.push_back("coordinate multipliers z_j suffice: they generate R_1 as an algebra");
    return r;
}

PropertyReport generator_criterion_report(const GradedDecomposition& D, const CheckOptions& opt)
{
    const Space& sp = D.V.space();
    const int top = opt.effective_horizon(sp);
    PropertyReport r = membership_scan(PropertyId::generator_criterion, D.V, D.graded_basis(),
                                       component_ords(D), acting_family(sp, top, opt), top, opt);
    r.notes.push_back("r W_k contained in V for every component W_k and every multiplier r");
    return r;
}

}  // namespace vhm
