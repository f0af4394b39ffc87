#pragma once

// Degree-truncated E-valued power series: the coefficient model of the Hardy
// space of the polydisk with E = C^d. Monomials e_i z^m are orthonormal, so the
// inner product is the l2 pairing of coefficient tables.

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vhm/grading.hpp"
#include "vhm/ord.hpp"
#include "vhm/poly.hpp"

namespace vhm {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Relative threshold below which a coefficient is treated as absent by ord.
inline constexpr double kDropTolerance = 1e-13;

class SpaceMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// H_N(C^d, D^n): power series in n variables, values in C^d, degree <= N.
class Space {
public:
    Space(int n, int d, int max_degree);

    int variables() const { return n_; }
    int coeff_dim() const { return d_; }
    int max_degree() const { return N_; }
    const MonomialOrder& order() const { return order_; }

    /// Length of a flattened coefficient vector: d * #monomials.
    Eigen::Index dim() const { return dim_; }

    /// Flattened row range [begin, end) holding the degree-k coefficients.
    Eigen::Index block_begin(int k) const { return static_cast<Eigen::Index>(order_.degree_begin(k)) * d_; }
    Eigen::Index block_end(int k) const { return static_cast<Eigen::Index>(order_.degree_end(k)) * d_; }
    Eigen::Index block_size(int k) const { return block_end(k) - block_begin(k); }

    Eigen::Index offset(std::size_t ordinal, int component = 0) const
    {
        return static_cast<Eigen::Index>(ordinal) * d_ + component;
    }

    /// For a monomial z^r of degree <= N: entry i is the ordinal of z^{m_i + r},
    /// or MonomialOrder::npos when that degree exceeds N. Computed on first use.
    const std::vector<std::size_t>& shift_table(std::size_t r_ordinal) const;

    bool same_as(const Space& other) const
    {
        return n_ == other.n_ && d_ == other.d_ && N_ == other.N_;
    }

private:
    int n_;
    int d_;
    int N_;
    MonomialOrder order_;
    Eigen::Index dim_;
    mutable std::mutex shift_mutex_;
    mutable std::vector<std::unique_ptr<std::vector<std::size_t>>> shifts_;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr make_space(int n, int d, int max_degree);

void require_same_space(const Space& a, const Space& b, const char* what);

class Element {
public:
    explicit Element(SpacePtr space);
    Element(SpacePtr space, CVector coeffs);

    static Element zero(SpacePtr space) { return Element(std::move(space)); }
    /// value * e_component * z^m. Throws if deg m > N.
    static Element monomial(SpacePtr space, const MultiIndex& m, Complex value = 1.0, int component = 0);
    /// Scalar polynomial embedded in component `component`; terms of degree > N dropped.
    static Element from_poly(SpacePtr space, const Poly& p, int component = 0);

    const SpacePtr& space_ptr() const { return space_; }
    const Space& space() const { return *space_; }
    const CVector& coeffs() const { return coeffs_; }
    CVector& coeffs() { return coeffs_; }

    /// a_m as a vector in C^d (zero when deg m > N).
    CVector coeff(const MultiIndex& m) const;

    double norm() const { return coeffs_.norm(); }
    double squared_norm() const { return coeffs_.squaredNorm(); }

    /// Lowest degree carrying a coefficient of E-norm above kDropTolerance * norm().
    Ord ord() const;
    /// Highest such degree, -1 for the zero element.
    int support_degree() const;

    /// Degree-k homogeneous part (the ambient projection P_k).
    Element block(int k) const;
    /// Sum of the parts of degree < k.
    Element below(int k) const;

    Element operator+(const Element& other) const;
    Element operator-(const Element& other) const;
    Element operator*(Complex lambda) const;
    Element operator-() const { return *this * Complex(-1.0); }

private:
    SpacePtr space_;
    CVector coeffs_;
};

inline Element operator*(Complex lambda, const Element& f) { return f * lambda; }

/// <f, g> = sum_m <a_m, b_m>_E, linear in f.
Complex inner(const Element& f, const Element& g);
inline Ord ord(const Element& f) { return f.ord(); }

Element linear_combine(const std::vector<std::pair<Complex, Element>>& pairs);

struct ProductResult {
    Element product;
    bool exact;  // nothing of degree > N was discarded
};

/// Truncated product p*f. `exact` follows the support degrees: it is true iff
/// deg(p) + support_degree(f) <= N (always true for p = 0 or f = 0).
ProductResult mul_poly(const Poly& p, const Element& f);

/// Truncated multiplication applied to each column of a coefficient matrix.
CMatrix mul_poly_columns(const Poly& p, const Space& space, const CMatrix& columns);

}  // namespace vhm
