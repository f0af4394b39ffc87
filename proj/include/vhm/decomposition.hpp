#pragma once

// Valuation subspace series V = V_0 ⊇ V_1 ⊇ ... and the near homogeneous
// decomposition V = W_0 ⊕ W_1 ⊕ ... with W_k = V_k ⊖ V_{k+1}.

#include <optional>
#include <stdexcept>
#include <vector>

#include "vhm/subspaces.hpp"

namespace vhm {

class MembershipError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The degree-k coefficient map restricted to W_k, in W_k's basis coordinates:
/// L = image * diag(sigma), with `image` orthonormal in the degree-k block.
struct LevelMap {
    CMatrix image;
    Eigen::VectorXd sigma;

    Eigen::Index rank() const { return sigma.size(); }
    /// Least-squares preimage (W_k coordinates) of a degree-k coefficient block.
    CMatrix solve(const CMatrix& block) const;
    /// Component of `block` outside P_k(W_k).
    CMatrix residual(const CMatrix& block) const;
};

struct GradedDecomposition {
    SubspaceBasis V;
    std::vector<SubspaceBasis> series;      // V_0 .. V_{N+1}
    std::vector<SubspaceBasis> components;  // W_0 .. W_N
    std::vector<LevelMap> level_maps;       // L_{W_k}, k = 0..N
    std::vector<Eigen::Index> dims;         // dim W_k

    int levels() const { return static_cast<int>(components.size()); }
    /// Concatenated component bases: an orthonormal basis of V graded by ord.
    CMatrix graded_basis() const;
    /// Orthonormal basis of W_0 ⊕ ... ⊕ W_m.
    SubspaceBasis partial_sum(int m) const;
};

GradedDecomposition decompose_subspace(const SubspaceBasis& V, const Tolerances& tol = {});

struct ElementDecomposition {
    Element element;
    std::vector<Element> parts;  // parts[k] = P_{W_k} h
    double reconstruction_residual;
};

/// Throws MembershipError when h is not a member of D.V at tol.mem.
ElementDecomposition decompose_element(const GradedDecomposition& D, const Element& h,
                                       const Tolerances& tol = {});

/// Index of the first part with norm above kDropTolerance * ||h||, or infinity.
Ord ord_via_components(const GradedDecomposition& D, const Element& h, const Tolerances& tol = {});

struct LWAnalysis {
    bool constant_ord;
    bool injective;
    /// Smallest singular value of P_m restricted to W; empty for W = {0}.
    std::optional<double> smallest_singular_value;
};

LWAnalysis analyze_LW(const SubspaceBasis& W, int m, const Tolerances& tol = {}, unsigned samples = 32);

}  // namespace vhm
