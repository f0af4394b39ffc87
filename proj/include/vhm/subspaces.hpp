#pragma once

// Finite-dimensional subspaces of a truncated space, held as orthonormal bases.

#include <stdexcept>
#include <vector>

#include "vhm/elements.hpp"
#include "vhm/tolerances.hpp"

namespace vhm {

class ContainmentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Orthonormal basis stored column-wise: column i is the coefficient vector of
/// the i-th basis element.
class SubspaceBasis {
public:
    explicit SubspaceBasis(SpacePtr space);
    SubspaceBasis(SpacePtr space, CMatrix columns, double rank_tol);

    const SpacePtr& space_ptr() const { return space_; }
    const Space& space() const { return *space_; }

    Eigen::Index size() const { return q_.cols(); }
    bool empty() const { return q_.cols() == 0; }

    const CMatrix& matrix() const { return q_; }
    Element vector(Eigen::Index i) const { return Element(space_, q_.col(i)); }
    std::vector<Element> vectors() const;

    double rank_tol() const { return rank_tol_; }
    /// max |<v_i, v_j> - delta_ij| measured at construction.
    double gram_residual() const { return gram_residual_; }

private:
    SpacePtr space_;
    CMatrix q_;
    double rank_tol_ = 0.0;
    double gram_residual_ = 0.0;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. A candidate is
/// dropped when its residual is <= rank_tol times its original norm (or its
/// original norm is zero). Input order decides which of dependent vectors survive.
SubspaceBasis orthonormalize(const std::vector<Element>& vectors, double rank_tol = Tolerances{}.rank);
SubspaceBasis orthonormalize_columns(SpacePtr space, const CMatrix& columns, double rank_tol = Tolerances{}.rank);

Element project(const SubspaceBasis& s, const Element& f);

struct Membership {
    bool member;
    double residual;  // ||f - P_S f||
};

/// member iff residual <= tol * max(||f||, 1).
Membership member(const SubspaceBasis& s, const Element& f, double tol = Tolerances{}.mem);

/// Basis of B (-) A. Requires every vector of A to be a member of B.
SubspaceBasis complement_within(const SubspaceBasis& a, const SubspaceBasis& b, double tol_mem = Tolerances{}.mem);

/// {f in span S : ord(f) >= k}: the kernel of the map taking a combination of
/// S's basis to its coefficients of degree < k.
SubspaceBasis graded_slice(const SubspaceBasis& s, int k, double rank_tol = Tolerances{}.rank);

/// {f in span S : degree(f) <= top}: the kernel of the coefficients above `top`.
SubspaceBasis degree_capped(const SubspaceBasis& s, int top, double rank_tol = Tolerances{}.rank);

struct ClosureLogEntry {
    std::size_t generator;
    MultiIndex multiplier;
    bool exact;
};

struct ClosureResult {
    SubspaceBasis basis;
    /// No product z^m g lost part of itself to truncation: each one is either
    /// untruncated or truncated away entirely.
    bool exact;
    std::vector<ClosureLogEntry> generator_log;
};

/// Orthonormalized span of { z^m g : g a generator, 0 <= |m| <= N } under
/// truncated multiplication. Multipliers are visited in graded order.
ClosureResult module_closure(const std::vector<Element>& generators, SpacePtr space,
                             double rank_tol = Tolerances{}.rank);

/// Orthonormalized span of the generators themselves.
SubspaceBasis linear_closure(const std::vector<Element>& generators, double rank_tol = Tolerances{}.rank);

}  // namespace vhm
