#pragma once

// The characterization layer: constructive synthesis of r*h from the
// components of V, the biconditional verifier, and the component-generator
// criterion for invariance.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vhm/properties.hpp"

namespace vhm {

class NearInnerViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SynthesisFailure {
    int level;        // m at which P_m(rh - f_{m-1}) left P_m(W_m)
    double residual;  // distance of that block from P_m(W_m)
};

/// g_m in W_m chosen so that P_m(g_m) = P_m(rh - f_{m-1}); f_m = g_0 + ... + g_m.
struct SynthesisTrace {
    Poly r;
    Element h;
    int component = 0;               // k with h in W_k
    Element rh;                      // truncated product
    std::vector<Element> g_series;   // g_0 .. g_m (stops at a failure)
    std::vector<Ord> residual_ords;  // ord(rh - f_m)
    std::vector<double> partial_norms;  // ||f_m||^2
    double final_residual = 0.0;     // ||rh - f_last||
    bool ill_conditioned = false;    // some L_{W_m} used had sigma_min < 1e-8
    std::optional<SynthesisFailure> failure;

    bool succeeded() const { return !failure.has_value(); }
};

/// Requires ord(r) >= 1 and h a member of some component W_k of D (throws
/// std::invalid_argument / MembershipError otherwise). A degree-m block
/// outside P_m(W_m) is reported through `failure`, not thrown.
SynthesisTrace synthesize(const GradedDecomposition& D, const Poly& r, const Element& h,
                          const CheckOptions& opt = {});

/// f_m from the trace. Throws NearInnerViolation unless f_m equals the
/// projection of rh onto W_0 ⊕ ... ⊕ W_m (to 1e-9 relative) and
/// ||f_m||^2 <= ||rh||^2.
Element partial_projection(const GradedDecomposition& D, const SynthesisTrace& trace, int m);

/// Three-valued conjunction: fail dominates, then inconclusive.
Verdict conjunction(Verdict a, Verdict b);

struct TheoremVerdict {
    GradedDecomposition decomposition;
    PropertyReport invariant;
    PropertyReport near_inner;
    PropertyReport full_projection;
    PropertyReport weak_near_inner;
    /// Empty when an inconclusive verdict leaves the comparison undecided.
    std::optional<bool> biconditional_holds;
    /// Set when the biconditional is decided false.
    bool counterexample = false;
};

TheoremVerdict verify_beurling(const SubspaceBasis& V, const CheckOptions& opt = {});

/// Invariance decided through the components: r W_k contained in V for all k
/// and all monomials r.
PropertyReport generator_criterion(const SubspaceBasis& V, const CheckOptions& opt = {});

enum class ActingAlgebra { full, vanishing_at_zero };

/// Sampled submodule check: p*v in V for random p in the acting algebra
/// (constant term allowed only for `full`) and random members v of V.
PropertyReport unital_lift(const SubspaceBasis& V, ActingAlgebra algebra, unsigned samples, std::uint64_t seed,
                           const CheckOptions& opt = {});

}  // namespace vhm
