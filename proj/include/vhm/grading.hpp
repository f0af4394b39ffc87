#pragma once

// Multi-index arithmetic and the canonical graded enumeration of monomials.
//
// Every coefficient table in the library is laid out in graded order: all
// monomials of degree 0, then degree 1, and so on, so that the degree-k part
// of any element is a contiguous index range.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace vhm {

class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents);
    MultiIndex(std::initializer_list<int> exponents);

    /// All-zero index in n variables.
    static MultiIndex zero(int n);
    /// The index of the coordinate monomial z_j (0-based j).
    static MultiIndex unit(int n, int j);

    int variables() const { return static_cast<int>(exps_.size()); }
    int degree() const { return degree_; }
    int operator[](int j) const { return exps_[static_cast<std::size_t>(j)]; }
    const std::vector<int>& exponents() const { return exps_; }

    /// Graded order: lower degree first; within a degree the larger leading
    /// exponent comes first, so z1 precedes z2.
    std::strong_ordering operator<=>(const MultiIndex& other) const;
    bool operator==(const MultiIndex& other) const { return exps_ == other.exps_; }

    std::string to_string() const;

private:
    std::vector<int> exps_;
    int degree_ = 0;
};

/// Sum of the exponents, |m|.
inline int degree(const MultiIndex& m) { return m.degree(); }

/// Exponent of the monomial product z^a z^b. Throws std::invalid_argument
/// when the variable counts differ.
MultiIndex add_indices(const MultiIndex& a, const MultiIndex& b);

inline MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) { return add_indices(a, b); }

/// Bijection between multi-indices of degree <= max_degree and 0..size()-1.
class MonomialOrder {
public:
    MonomialOrder(int n, int max_degree);

    int variables() const { return n_; }
    int max_degree() const { return max_degree_; }
    std::size_t size() const { return table_.size(); }

    const MultiIndex& at(std::size_t ordinal) const { return table_[ordinal]; }
    const std::vector<MultiIndex>& table() const { return table_; }

    /// Ordinal of m, or npos when m has the wrong arity or degree > N.
    std::size_t index_of(const MultiIndex& m) const;

    /// First ordinal of degree k (k in 0..N+1; k = N+1 gives size()).
    std::size_t degree_begin(int k) const;
    std::size_t degree_end(int k) const { return degree_begin(k + 1); }
    std::size_t degree_count(int k) const { return degree_end(k) - degree_begin(k); }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    int n_;
    int max_degree_;
    std::vector<MultiIndex> table_;
    std::vector<std::size_t> block_start_;
    std::map<std::vector<int>, std::size_t> lookup_;
};

MonomialOrder enumerate(int n, int max_degree);

/// Binomial coefficient C(n, k) as an unsigned count.
std::size_t binomial(int n, int k);

}  // namespace vhm
