#pragma once

// Checkers for the subspace properties that characterize R_1-invariance:
// near inner subspaces, weakly near inner and near inner decompositions, the
// full projection property, and invariance itself.
//
// Products are taken in the truncated module: r*h is computed and everything
// of degree > N is discarded. The degree-<=N space with this action is itself
// a Hilbert module over C[z], so the characterization holds exactly there.
// A scenario may additionally declare a horizon D < N, in which case only
// levels m <= D and pairs (r, W_k) with ord(r) + k <= D are examined; the
// remaining pairs are counted as boundary skips.

#include <cstdint>
#include <string>
#include <vector>

#include "vhm/decomposition.hpp"
#include "vhm/poly.hpp"

namespace vhm {

enum class Verdict { pass, fail, inconclusive };

enum class PropertyId {
    near_inner_subspace,
    weak_near_inner,
    near_inner,
    full_projection,
    invariant,
    generator_criterion,
    submodule,
};

std::string to_string(Verdict v);
std::string to_string(PropertyId p);

/// One (r, h, g) instance whose probe vector violates, or nearly violates, a
/// property. The probe is the vector actually tested: r*h + g for the
/// decomposition checks, r*h for invariance and the weak form.
struct Witness {
    Poly r;
    int k = 0;                  // component of h
    int m = 0;                  // level tested
    Eigen::Index h_index = 0;   // dominant basis vector of W_k in h
    CVector h_coords;           // h in W_k's basis coordinates (unit norm)
    Element h;
    Element g;
    Element probe;
    double magnitude = 0.0;
    bool gap = false;           // inside the inconclusive band rather than a violation
};

struct PropertyReport {
    PropertyId property;
    Verdict verdict = Verdict::pass;
    std::vector<Witness> witnesses;  // sorted by (k, m, r); capped
    std::size_t witness_total = 0;   // before capping
    std::size_t pairs_checked = 0;
    std::size_t boundary_skips = 0;
    double max_violation = 0.0;
    double pass_threshold = 0.0;
    double fail_threshold = 0.0;
    std::vector<std::string> notes;
};

struct CheckOptions {
    Tolerances tol{};
    int horizon = -1;                 // -1: the truncation degree N
    unsigned dense_samples = 0;       // extra random dense r in R_1 on top of the monomials
    std::uint64_t dense_seed = 1;
    unsigned jobs = 1;
    std::size_t max_witnesses = 16;

    int effective_horizon(const Space& sp) const
    {
        return horizon < 0 || horizon > sp.max_degree() ? sp.max_degree() : horizon;
    }
};

/// The multipliers r used by the checkers: monomials z^m with 1 <= |m| <= top
/// in graded order, followed by any dense samples.
std::vector<Poly> acting_family(const Space& sp, int top, const CheckOptions& opt);

PropertyReport is_near_inner_subspace(const SubspaceBasis& W, const CheckOptions& opt = {});
PropertyReport is_weakly_near_inner(const GradedDecomposition& D, const CheckOptions& opt = {});
PropertyReport is_near_inner_decomposition(const GradedDecomposition& D, const CheckOptions& opt = {});
PropertyReport has_full_projection(const GradedDecomposition& D, const CheckOptions& opt = {});
PropertyReport is_R1_invariant(const GradedDecomposition& D, const CheckOptions& opt = {});
/// Decomposes V first when a horizon below N is requested; otherwise tests the given basis.
PropertyReport is_R1_invariant(const SubspaceBasis& V, const CheckOptions& opt = {});

/// Weak form, near inner, and full projection from a single pass over the
/// (r, W_k) pairs.
struct DecompositionReports {
    PropertyReport weak;
    PropertyReport near_inner;
    PropertyReport full_projection;
};

DecompositionReports check_decomposition(const GradedDecomposition& D, const CheckOptions& opt = {});

/// r W_k contained in V for every component and every multiplier of the acting family.
PropertyReport generator_criterion_report(const GradedDecomposition& D, const CheckOptions& opt = {});

/// Pass/fail/inconclusive from a magnitude and the two thresholds.
Verdict classify(double magnitude, double pass_threshold, double fail_threshold);

}  // namespace vhm
