#pragma once

// Dense helpers on coefficient matrices whose columns are elements.

#include <Eigen/Dense>

#include "vhm/elements.hpp"

namespace vhm {

/// Splits the domain of A by singular value: `kernel` spans right singular
/// vectors with sigma <= tol, `cokernel` the rest (both orthonormal, q rows).
/// `image` holds the matching left singular vectors and `sigma` the retained
/// singular values, so A * cokernel = image * diag(sigma).
struct DomainSplit {
    CMatrix kernel;
    CMatrix cokernel;
    CMatrix image;
    Eigen::VectorXd sigma;
};

DomainSplit split_domain(const CMatrix& a, double tol);

/// Largest singular value (0 for empty matrices).
double spectral_norm(const CMatrix& a);

/// Orthonormal basis of the column span, discarding singular values <= tol.
CMatrix column_basis(const CMatrix& a, double tol);

/// Maximum entry of |Q^H Q - I|.
double gram_residual(const CMatrix& q);

}  // namespace vhm
