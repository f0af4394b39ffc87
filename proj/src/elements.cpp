#include "vhm/elements.hpp"

#include <algorithm>
#include <string>

namespace vhm {

Space::Space(int n, int d, int max_degree)
    : n_(n), d_(d), N_(max_degree), order_(n, max_degree),
      dim_(static_cast<Eigen::Index>(order_.size()) * d),
      shifts_(order_.size())
{
    if (d < 1) {
        throw std::invalid_argument("Space requires coefficient dimension d >= 1");
    }
}

const std::vector<std::size_t>& Space::shift_table(std::size_t r_ordinal) const
{
    std::lock_guard lock(shift_mutex_);
    auto& slot = shifts_.at(r_ordinal);
    if (!slot) {
        const MultiIndex& r = order_.at(r_ordinal);
        auto table = std::make_unique<std::vector<std::size_t>>(order_.size(), MonomialOrder::npos);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            const MultiIndex& m = order_.at(i);
            if (m.degree() + r.degree() <= N_) {
                (*table)[i] = order_.index_of(m + r);
            }
        }
        slot = std::move(table);
    }
    return *slot;
}

SpacePtr make_space(int n, int d, int max_degree)
{
    return std::make_shared<const Space>(n, d, max_degree);
}

void require_same_space(const Space& a, const Space& b, const char* what)
{
    if (!a.same_as(b)) {
        throw SpaceMismatch(std::string(what) + ": elements live in different spaces");
    }
}

Element::Element(SpacePtr space) : space_(std::move(space)), coeffs_(CVector::Zero(space_->dim())) {}

Element::Element(SpacePtr space, CVector coeffs) : space_(std::move(space)), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != space_->dim()) {
        throw std::invalid_argument("Element: coefficient vector has wrong length");
    }
}

Element Element::monomial(SpacePtr space, const MultiIndex& m, Complex value, int component)
{
    const std::size_t idx = space->order().index_of(m);
    if (idx == MonomialOrder::npos) {
        throw std::invalid_argument("Element::monomial: " + m.to_string() + " outside the truncated space");
    }
    if (component < 0 || component >= space->coeff_dim()) {
        throw std::invalid_argument("Element::monomial: component out of range");
    }
    Element e(space);
    e.coeffs_[space->offset(idx, component)] = value;
    return e;
}

Element Element::from_poly(SpacePtr space, const Poly& p, int component)
{
    if (p.variables() != space->variables()) {
        throw SpaceMismatch("Element::from_poly: variable count mismatch");
    }
    Element e(space);
    for (const auto& [m, c] : p.terms()) {
        const std::size_t idx = space->order().index_of(m);
        if (idx != MonomialOrder::npos) {
            e.coeffs_[space->offset(idx, component)] = c;
        }
    }
    return e;
}

CVector Element::coeff(const MultiIndex& m) const
{
    const int d = space_->coeff_dim();
    const std::size_t idx = space_->order().index_of(m);
    if (idx == MonomialOrder::npos) return CVector::Zero(d);
    return coeffs_.segment(space_->offset(idx), d);
}

namespace {

// Per-monomial E-norm above the drop threshold.
bool present(const CVector& c, Eigen::Index at, int d, double threshold)
{
    return c.segment(at, d).norm() > threshold;
}

}  // namespace

Ord Element::ord() const
{
    const double nrm = norm();
    if (nrm == 0.0) return Ord::infinity();
    const double threshold = kDropTolerance * nrm;
    const int d = space_->coeff_dim();
    const auto count = static_cast<Eigen::Index>(space_->order().size());
    for (Eigen::Index i = 0; i < count; ++i) {
        if (present(coeffs_, i * d, d, threshold)) {
            return Ord(space_->order().at(static_cast<std::size_t>(i)).degree());
        }
    }
    return Ord::infinity();
}

int Element::support_degree() const
{
    const double nrm = norm();
    if (nrm == 0.0) return -1;
    const double threshold = kDropTolerance * nrm;
    const int d = space_->coeff_dim();
    for (auto i = static_cast<Eigen::Index>(space_->order().size()) - 1; i >= 0; --i) {
        if (present(coeffs_, i * d, d, threshold)) {
            return space_->order().at(static_cast<std::size_t>(i)).degree();
        }
    }
    return -1;
}

Element Element::block(int k) const
{
    Element out(space_);
    if (k < 0 || k > space_->max_degree()) return out;
    const auto b = space_->block_begin(k);
    out.coeffs_.segment(b, space_->block_size(k)) = coeffs_.segment(b, space_->block_size(k));
    return out;
}

Element Element::below(int k) const
{
    Element out(space_);
    const auto end = space_->block_begin(std::min(k, space_->max_degree() + 1));
    out.coeffs_.head(end) = coeffs_.head(end);
    return out;
}

Element Element::operator+(const Element& other) const
{
    require_same_space(*space_, *other.space_, "Element::operator+");
    return Element(space_, coeffs_ + other.coeffs_);
}

Element Element::operator-(const Element& other) const
{
    require_same_space(*space_, *other.space_, "Element::operator-");
    return Element(space_, coeffs_ - other.coeffs_);
}

Element Element::operator*(Complex lambda) const
{
    return Element(space_, coeffs_ * lambda);
}

Complex inner(const Element& f, const Element& g)
{
    require_same_space(f.space(), g.space(), "inner");
    // Eigen's dot conjugates its left operand.
    return g.coeffs().dot(f.coeffs());
}

Element linear_combine(const std::vector<std::pair<Complex, Element>>& pairs)
{
    if (pairs.empty()) {
        throw std::invalid_argument("linear_combine: empty combination has no space");
    }
    Element out(pairs.front().second.space_ptr());
    for (const auto& [lambda, f] : pairs) {
        require_same_space(out.space(), f.space(), "linear_combine");
        out.coeffs() += lambda * f.coeffs();
    }
    return out;
}

CMatrix mul_poly_columns(const Poly& p, const Space& space, const CMatrix& columns)
{
    if (p.variables() != space.variables()) {
        throw SpaceMismatch("mul_poly: variable count mismatch");
    }
    const int d = space.coeff_dim();
    CMatrix out = CMatrix::Zero(columns.rows(), columns.cols());
    for (const auto& [r, c] : p.terms()) {
        const std::size_t r_idx = space.order().index_of(r);
        if (r_idx == MonomialOrder::npos) continue;  // degree beyond N: truncated away
        const auto& shift = space.shift_table(r_idx);
        for (std::size_t i = 0; i < shift.size(); ++i) {
            if (shift[i] == MonomialOrder::npos) continue;
            out.middleRows(space.offset(shift[i]), d) += c * columns.middleRows(space.offset(i), d);
        }
    }
    return out;
}

ProductResult mul_poly(const Poly& p, const Element& f)
{
    const Space& space = f.space();
    Element product(f.space_ptr(), mul_poly_columns(p, space, f.coeffs()));
    const int fdeg = f.support_degree();
    const bool exact = p.is_zero() || fdeg < 0 || p.max_degree() + fdeg <= space.max_degree();
    return {std::move(product), exact};
}

}  // namespace vhm
