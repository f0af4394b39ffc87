#pragma once

// Scalar polynomials of the acting algebra C[z_1, ..., z_n].

#include <complex>
#include <map>
#include <string>

#include "vhm/grading.hpp"
#include "vhm/ord.hpp"

namespace vhm {

using Complex = std::complex<double>;

class Poly {
public:
    explicit Poly(int n = 1) : n_(n) {}

    static Poly constant(int n, Complex value);
    static Poly monomial(int n, const MultiIndex& m, Complex coeff = 1.0);
    /// z_j, 0-based.
    static Poly variable(int n, int j);

    int variables() const { return n_; }
    bool is_zero() const { return terms_.empty(); }

    /// Exact-zero coefficients are never stored.
    const std::map<MultiIndex, Complex>& terms() const { return terms_; }
    Complex coeff(const MultiIndex& m) const;
    void set(const MultiIndex& m, Complex c);

    /// Largest total degree in the support, -1 for the zero polynomial.
    int max_degree() const;

    Poly operator+(const Poly& other) const;
    Poly operator-(const Poly& other) const;
    Poly operator*(const Poly& other) const;
    Poly operator*(Complex lambda) const;

    bool operator==(const Poly& other) const { return n_ == other.n_ && terms_ == other.terms_; }

    std::string to_string() const;

private:
    int n_;
    std::map<MultiIndex, Complex> terms_;
};

/// Lowest degree of a nonzero term; infinity for p = 0. No tolerance: the
/// coefficients of a polynomial are taken as authoritative.
Ord poly_ord(const Poly& p);

struct UnitalSplit {
    Complex constant;
    Poly rest;  // ord(rest) >= 1
};

/// p = constant * 1 + rest with rest in the ideal of polynomials vanishing at 0.
UnitalSplit unital_split(const Poly& p);

/// Parses literals such as "z1^2*z2 - 3*z1 + (0.5,-1)*z2". With n == 1 the bare
/// variable "z" is accepted. Throws std::invalid_argument on malformed input.
Poly parse_poly(const std::string& text, int n);

}  // namespace vhm
