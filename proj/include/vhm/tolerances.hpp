#pragma once

namespace vhm {

/// Numerical thresholds shared by construction and verification. Construction
/// tolerances sit two or more orders of magnitude below the verification ones.
struct Tolerances {
    double rank = 1e-10;  // relative residual below which a candidate is dependent
    double orth = 1e-9;   // pass threshold for orthogonality residuals
    double mem = 1e-8;    // pass threshold for membership / projection residuals
    double fail = 1e-6;   // residuals above this are violations; between pass and fail is inconclusive

    /// Defaults overridden by VHM_TOL_RANK, VHM_TOL_ORTH, VHM_TOL_MEM, VHM_TOL_FAIL when set.
    static Tolerances from_environment();
};

}  // namespace vhm
