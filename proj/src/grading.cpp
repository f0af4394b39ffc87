#include "vhm/grading.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vhm {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents))
{
    for (int e : exps_) {
        if (e < 0) {
            throw std::invalid_argument("multi-index exponents must be nonnegative");
        }
    }
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents))
{
}

MultiIndex MultiIndex::zero(int n)
{
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0));
}

MultiIndex MultiIndex::unit(int n, int j)
{
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e.at(static_cast<std::size_t>(j)) = 1;
    return MultiIndex(std::move(e));
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const
{
    if (auto c = degree_ <=> other.degree_; c != 0) {
        return c;
    }
    // Reversed: the larger exponent vector sorts first within a degree.
    if (exps_ == other.exps_) {
        return std::strong_ordering::equal;
    }
    return std::lexicographical_compare(other.exps_.begin(), other.exps_.end(),
                                        exps_.begin(), exps_.end())
               ? std::strong_ordering::less
               : std::strong_ordering::greater;
}

std::string MultiIndex::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i) os << ',';
        os << exps_[i];
    }
    os << ')';
    return os.str();
}

MultiIndex add_indices(const MultiIndex& a, const MultiIndex& b)
{
    if (a.variables() != b.variables()) {
        throw std::invalid_argument("add_indices: variable count mismatch");
    }
    std::vector<int> e(a.exponents());
    for (int j = 0; j < a.variables(); ++j) {
        e[static_cast<std::size_t>(j)] += b[j];
    }
    return MultiIndex(std::move(e));
}

namespace {

// Compositions of `total` into `parts` nonnegative parts, leading part largest
// first (descending lexicographic).
void compositions(int parts, int total, std::vector<int>& prefix, std::vector<MultiIndex>& out)
{
    if (parts == 1) {
        prefix.push_back(total);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int first = total; first >= 0; --first) {
        prefix.push_back(first);
        compositions(parts - 1, total - first, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

MonomialOrder::MonomialOrder(int n, int max_degree) : n_(n), max_degree_(max_degree)
{
    if (n < 1 || max_degree < 0) {
        throw std::invalid_argument("MonomialOrder requires n >= 1 and N >= 0");
    }
    std::vector<int> prefix;
    for (int k = 0; k <= max_degree; ++k) {
        block_start_.push_back(table_.size());
        compositions(n, k, prefix, table_);
    }
    block_start_.push_back(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) {
        lookup_.emplace(table_[i].exponents(), i);
    }
}

std::size_t MonomialOrder::index_of(const MultiIndex& m) const
{
    if (m.variables() != n_ || m.degree() > max_degree_) {
        return npos;
    }
    auto it = lookup_.find(m.exponents());
    return it == lookup_.end() ? npos : it->second;
}

std::size_t MonomialOrder::degree_begin(int k) const
{
    if (k <= 0) return 0;
    if (k > max_degree_) return table_.size();
    return block_start_[static_cast<std::size_t>(k)];
}

MonomialOrder enumerate(int n, int max_degree)
{
    return MonomialOrder(n, max_degree);
}

std::size_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    }
    return r;
}

}  // namespace vhm
