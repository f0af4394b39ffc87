#include "vhm/subspaces.hpp"

#include <algorithm>
#include <string>

#include "vhm/linalg.hpp"

namespace vhm {

SubspaceBasis::SubspaceBasis(SpacePtr space)
    : space_(std::move(space)), q_(space_->dim(), 0)
{
}

SubspaceBasis::SubspaceBasis(SpacePtr space, CMatrix columns, double rank_tol)
    : space_(std::move(space)), q_(std::move(columns)), rank_tol_(rank_tol)
{
    if (q_.rows() != space_->dim()) {
        throw std::invalid_argument("SubspaceBasis: column length does not match the space");
    }
    gram_residual_ = vhm::gram_residual(q_);
}

std::vector<Element> SubspaceBasis::vectors() const
{
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Eigen::Index i = 0; i < size(); ++i) out.push_back(vector(i));
    return out;
}

SubspaceBasis orthonormalize_columns(SpacePtr space, const CMatrix& columns, double rank_tol)
{
    CMatrix q(space->dim(), columns.cols());
    Eigen::Index kept = 0;
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        CVector v = columns.col(j);
        const double original = v.norm();
        if (original == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < kept; ++i) {
                v -= q.col(i) * q.col(i).dot(v);
            }
        }
        const double residual = v.norm();
        if (residual <= rank_tol * original) continue;
        q.col(kept++) = v / residual;
    }
    return SubspaceBasis(std::move(space), q.leftCols(kept), rank_tol);
}

SubspaceBasis orthonormalize(const std::vector<Element>& vectors, double rank_tol)
{
    if (vectors.empty()) {
        throw std::invalid_argument("orthonormalize: no vectors (space unknown)");
    }
    const SpacePtr& space = vectors.front().space_ptr();
    CMatrix cols(space->dim(), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        require_same_space(*space, vectors[j].space(), "orthonormalize");
        cols.col(static_cast<Eigen::Index>(j)) = vectors[j].coeffs();
    }
    return orthonormalize_columns(space, cols, rank_tol);
}

Element project(const SubspaceBasis& s, const Element& f)
{
    require_same_space(s.space(), f.space(), "project");
    const CMatrix& q = s.matrix();
    return Element(s.space_ptr(), q * (q.adjoint() * f.coeffs()));
}

Membership member(const SubspaceBasis& s, const Element& f, double tol)
{
    const double residual = (f - project(s, f)).norm();
    return {residual <= tol * std::max(f.norm(), 1.0), residual};
}

SubspaceBasis complement_within(const SubspaceBasis& a, const SubspaceBasis& b, double tol_mem)
{
    require_same_space(a.space(), b.space(), "complement_within");
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        auto m = member(b, a.vector(i), tol_mem);
        if (!m.member) {
            throw ContainmentError("complement_within: vector " + std::to_string(i) +
                                   " of the inner subspace is not in the outer one (residual " +
                                   std::to_string(m.residual) + ")");
        }
    }
    // (I - P_A) restricted to B is a projection in B-coordinates: singular
    // values cluster at 0 and 1, so the 1/2 cut is unambiguous.
    const CMatrix& qa = a.matrix();
    const CMatrix& qb = b.matrix();
    const CMatrix m = qb - qa * (qa.adjoint() * qb);
    DomainSplit split = split_domain(m, 0.5);
    return SubspaceBasis(b.space_ptr(), qb * split.cokernel, b.rank_tol());
}

namespace {

SubspaceBasis kernel_of_rows(const SubspaceBasis& s, Eigen::Index row_begin, Eigen::Index row_end,
                             double rank_tol)
{
    if (s.empty() || row_begin >= row_end) {
        return SubspaceBasis(s.space_ptr(), s.matrix(), rank_tol);
    }
    DomainSplit split = split_domain(s.matrix().middleRows(row_begin, row_end - row_begin), rank_tol);
    return SubspaceBasis(s.space_ptr(), s.matrix() * split.kernel, rank_tol);
}

}  // namespace

SubspaceBasis graded_slice(const SubspaceBasis& s, int k, double rank_tol)
{
    if (k < 0) throw std::invalid_argument("graded_slice: k must be nonnegative");
    const Space& sp = s.space();
    const Eigen::Index end = sp.block_begin(std::min(k, sp.max_degree() + 1));
    return kernel_of_rows(s, 0, end, rank_tol);
}

SubspaceBasis degree_capped(const SubspaceBasis& s, int top, double rank_tol)
{
    const Space& sp = s.space();
    if (top >= sp.max_degree()) return SubspaceBasis(s.space_ptr(), s.matrix(), rank_tol);
    const Eigen::Index begin = top < 0 ? 0 : sp.block_begin(top + 1);
    return kernel_of_rows(s, begin, sp.dim(), rank_tol);
}

ClosureResult module_closure(const std::vector<Element>& generators, SpacePtr space, double rank_tol)
{
    const MonomialOrder& order = space->order();
    const int N = space->max_degree();
    const int n = space->variables();
    std::vector<ClosureLogEntry> log;
    CMatrix cols(space->dim(), static_cast<Eigen::Index>(order.size() * generators.size()));
    Eigen::Index col = 0;
    bool all_exact = true;
    for (const MultiIndex& m : order.table()) {
        const Poly multiplier = Poly::monomial(n, m);
        for (std::size_t g = 0; g < generators.size(); ++g) {
            require_same_space(*space, generators[g].space(), "module_closure");
            ProductResult pr = mul_poly(multiplier, generators[g]);
            // Partial truncation: something survived and something was cut.
            const bool whole = pr.exact || generators[g].ord() + Ord(m.degree()) > Ord(N);
            all_exact = all_exact && whole;
            log.push_back({g, m, pr.exact});
            cols.col(col++) = pr.product.coeffs();
        }
    }
    return {orthonormalize_columns(std::move(space), cols.leftCols(col), rank_tol), all_exact, std::move(log)};
}

SubspaceBasis linear_closure(const std::vector<Element>& generators, double rank_tol)
{
    return orthonormalize(generators, rank_tol);
}

}  // namespace vhm
