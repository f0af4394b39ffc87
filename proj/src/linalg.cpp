#include "vhm/linalg.hpp"

#include <cstdlib>
#include <string>

#include "vhm/tolerances.hpp"

namespace vhm {

DomainSplit split_domain(const CMatrix& a, double tol)
{
    const Eigen::Index q = a.cols();
    DomainSplit out;
    if (q == 0) {
        out.kernel = CMatrix(0, 0);
        out.cokernel = CMatrix(0, 0);
        out.image = CMatrix(a.rows(), 0);
        return out;
    }
    if (a.rows() == 0) {
        out.kernel = CMatrix::Identity(q, q);
        out.cokernel = CMatrix(q, 0);
        out.image = CMatrix(0, 0);
        return out;
    }
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV | Eigen::ComputeThinU);
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s[rank] > tol) ++rank;
    out.cokernel = svd.matrixV().leftCols(rank);
    out.kernel = svd.matrixV().rightCols(q - rank);
    out.image = svd.matrixU().leftCols(rank);
    out.sigma = s.head(rank);
    return out;
}

double spectral_norm(const CMatrix& a)
{
    if (a.size() == 0) return 0.0;
    if (a.cols() == 1) return a.norm();
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()[0];
}

CMatrix column_basis(const CMatrix& a, double tol)
{
    if (a.cols() == 0 || a.rows() == 0) return CMatrix(a.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s[rank] > tol) ++rank;
    return svd.matrixU().leftCols(rank);
}

double gram_residual(const CMatrix& q)
{
    if (q.cols() == 0) return 0.0;
    const CMatrix g = q.adjoint() * q - CMatrix::Identity(q.cols(), q.cols());
    return g.cwiseAbs().maxCoeff();
}

namespace {

void override_from_env(const char* name, double& slot)
{
    if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        const double x = std::strtod(v, &end);
        if (end != v && x > 0.0) slot = x;
    }
}

}  // namespace

Tolerances Tolerances::from_environment()
{
    Tolerances t;
    override_from_env("VHM_TOL_RANK", t.rank);
    override_from_env("VHM_TOL_ORTH", t.orth);
    override_from_env("VHM_TOL_MEM", t.mem);
    override_from_env("VHM_TOL_FAIL", t.fail);
    return t;
}

}  // namespace vhm
