#include "vhm/decomposition.hpp"

#include <random>
#include <string>

#include "vhm/linalg.hpp"

namespace vhm {

CMatrix LevelMap::solve(const CMatrix& block) const
{
    return sigma.cwiseInverse().asDiagonal() * (image.adjoint() * block);
}

CMatrix LevelMap::residual(const CMatrix& block) const
{
    return block - image * (image.adjoint() * block);
}

CMatrix GradedDecomposition::graded_basis() const
{
    return partial_sum(levels() - 1).matrix();
}

SubspaceBasis GradedDecomposition::partial_sum(int m) const
{
    Eigen::Index cols = 0;
    for (int k = 0; k <= m && k < levels(); ++k) cols += components[static_cast<std::size_t>(k)].size();
    CMatrix q(V.space().dim(), cols);
    Eigen::Index at = 0;
    for (int k = 0; k <= m && k < levels(); ++k) {
        const CMatrix& w = components[static_cast<std::size_t>(k)].matrix();
        q.middleCols(at, w.cols()) = w;
        at += w.cols();
    }
    return SubspaceBasis(V.space_ptr(), std::move(q), V.rank_tol());
}

GradedDecomposition decompose_subspace(const SubspaceBasis& V, const Tolerances& tol)
{
    const Space& sp = V.space();
    const int N = sp.max_degree();
    GradedDecomposition D{V, {}, {}, {}, {}};
    D.series.push_back(V);
    for (int k = 0; k <= N; ++k) {
        const SubspaceBasis& vk = D.series.back();
        // V_k already has no coefficients below degree k, so the slice at k+1
        // only needs the degree-k block to vanish.
        DomainSplit split = split_domain(vk.matrix().middleRows(sp.block_begin(k), sp.block_size(k)), tol.rank);
        // Rounding leaves residue of order eps * cond in the blocks below k+1;
        // it compounds across levels, so clear it and re-orthonormalize.
        CMatrix kept = vk.matrix() * split.kernel;
        const Eigen::Index low = k < N ? sp.block_begin(k + 1) : sp.dim();
        kept.topRows(low).setZero();
        SubspaceBasis next = orthonormalize_columns(V.space_ptr(), kept, tol.rank);
        D.components.emplace_back(V.space_ptr(), vk.matrix() * split.cokernel, tol.rank);
        D.level_maps.push_back({std::move(split.image), std::move(split.sigma)});
        D.dims.push_back(D.components.back().size());
        D.series.push_back(std::move(next));
    }
    return D;
}

ElementDecomposition decompose_element(const GradedDecomposition& D, const Element& h, const Tolerances& tol)
{
    auto m = member(D.V, h, tol.mem);
    if (!m.member) {
        throw MembershipError("decompose_element: element is not in V (residual " + std::to_string(m.residual) +
                              ")");
    }
    ElementDecomposition out{h, {}, 0.0};
    Element sum = Element::zero(h.space_ptr());
    for (const SubspaceBasis& w : D.components) {
        out.parts.push_back(project(w, h));
        sum = sum + out.parts.back();
    }
    out.reconstruction_residual = (h - sum).norm();
    return out;
}

Ord ord_via_components(const GradedDecomposition& D, const Element& h, const Tolerances& tol)
{
    ElementDecomposition dec = decompose_element(D, h, tol);
    const double threshold = kDropTolerance * h.norm();
    for (std::size_t k = 0; k < dec.parts.size(); ++k) {
        if (h.norm() > 0.0 && dec.parts[k].norm() > threshold) return Ord(static_cast<int>(k));
    }
    return Ord::infinity();
}

LWAnalysis analyze_LW(const SubspaceBasis& W, int m, const Tolerances& tol, unsigned samples)
{
    LWAnalysis out{true, true, std::nullopt};
    if (W.empty()) return out;
    const Space& sp = W.space();
    const Ord target(m);
    for (Eigen::Index i = 0; i < W.size(); ++i) {
        if (W.vector(i).ord() != target) out.constant_ord = false;
    }
    std::mt19937_64 rng(0x5eed0000ULL + static_cast<unsigned>(m));
    std::normal_distribution<double> gauss;
    for (unsigned s = 0; s < samples && out.constant_ord; ++s) {
        CVector c(W.size());
        for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Complex(gauss(rng), gauss(rng));
        const Element f(W.space_ptr(), W.matrix() * c);
        const Ord o = f.ord();
        if (!o.is_infinite() && o != target) out.constant_ord = false;
    }
    if (m < 0 || m > sp.max_degree()) {
        out.injective = false;
        out.smallest_singular_value = 0.0;
        return out;
    }
    const CMatrix block = W.matrix().middleRows(sp.block_begin(m), sp.block_size(m));
    double smin = 0.0;
    if (block.rows() >= block.cols()) {
        Eigen::JacobiSVD<CMatrix> svd(block);
        smin = svd.singularValues()[svd.singularValues().size() - 1];
    }
    out.smallest_singular_value = smin;
    out.injective = smin > tol.rank;
    return out;
}

}  // namespace vhm
