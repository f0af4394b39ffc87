#include "vhm/algebra.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace vhm {

bool AxiomReport::all_pass() const
{
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.verdict == Verdict::pass; });
}

const AxiomResult& AxiomReport::find(const std::string& id) const
{
    for (const AxiomResult& a : axioms) {
        if (a.id == id) return a;
    }
    throw std::out_of_range("no axiom named " + id);
}

namespace {

Complex gaussian_integer(std::mt19937_64& rng, bool nonzero)
{
    std::uniform_int_distribution<int> digit(-3, 3);
    for (;;) {
        const Complex c(digit(rng), digit(rng));
        if (!nonzero || c != Complex(0.0)) return c;
    }
}

// Terms are kept sparse (about a third of the eligible monomials) so that ords
// vary across samples.
template <class Set>
void fill_support(std::mt19937_64& rng, const MonomialOrder& order, int min_degree, int max_degree, Set&& set)
{
    std::bernoulli_distribution keep(0.35);
    bool any = false;
    const MultiIndex* first = nullptr;
    for (const MultiIndex& m : order.table()) {
        if (m.degree() < min_degree || m.degree() > max_degree) continue;
        if (!first) first = &m;
        if (keep(rng)) {
            set(m, gaussian_integer(rng, true));
            any = true;
        }
    }
    if (!any && first) set(*first, gaussian_integer(rng, true));
}

class Tally {
public:
    explicit Tally(std::string id) { r_.id = std::move(id); }

    void check(bool ok, double magnitude, const std::function<std::string()>& describe)
    {
        ++r_.samples;
        if (ok) return;
        ++r_.violations;
        r_.worst = std::max(r_.worst, magnitude);
        if (r_.witness.empty()) r_.witness = describe();
    }

    AxiomResult finish()
    {
        r_.verdict = r_.violations == 0 ? Verdict::pass : Verdict::fail;
        return std::move(r_);
    }

private:
    AxiomResult r_;
};

double ord_gap(Ord a, Ord b)
{
    if (a == b) return 0.0;
    if (a.is_infinite() || b.is_infinite()) return 1.0;
    return std::abs(a.value() - b.value());
}

std::string show(const Poly& p) { return p.to_string(); }

std::string show(const Element& f)
{
    return "element of norm " + std::to_string(f.norm()) + ", ord " + f.ord().to_string();
}

}  // namespace

Poly random_poly(std::mt19937_64& rng, int n, int min_degree, int max_degree, double zero_rate)
{
    Poly p(n);
    if (std::bernoulli_distribution(zero_rate)(rng) || max_degree < min_degree) return p;
    const MonomialOrder order(n, max_degree);
    fill_support(rng, order, min_degree, max_degree, [&](const MultiIndex& m, Complex c) { p.set(m, c); });
    return p;
}

Element random_element(std::mt19937_64& rng, const SpacePtr& space, int max_degree, double zero_rate)
{
    Element f = Element::zero(space);
    if (std::bernoulli_distribution(zero_rate)(rng)) return f;
    std::uniform_int_distribution<int> comp(0, space->coeff_dim() - 1);
    std::uniform_int_distribution<int> low(0, std::max(0, max_degree));
    const int min_degree = low(rng);
    fill_support(rng, space->order(), min_degree, std::min(max_degree, space->max_degree()),
                 [&](const MultiIndex& m, Complex c) {
                     f.coeffs()[space->offset(space->order().index_of(m), comp(rng))] = c;
                 });
    return f;
}

AxiomReport check_axioms(const SpacePtr& space, std::uint64_t seed, std::size_t samples)
{
    const int n = space->variables();
    const int N = space->max_degree();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> split(0, N);

    Tally unit("unit-ord-zero"), zero("ord-infinite-iff-zero"), strict("strictness"), divisors("no-zero-divisors"),
        scalar("scalar-invariance"), sum("sum-ord-at-least-min"), unital("unital-split"),
        m_zero("module-ord-infinite-iff-zero"), m_scalar("module-scalar-invariance"), m_sum("module-sum-ord-at-least-min"),
        m_unit("module-unit-action"), m_strict("module-strictness");
    std::size_t exact_products = 0;

    for (std::size_t i = 0; i < samples; ++i) {
        std::uniform_int_distribution<int> low(0, std::max(0, N / 2));
        const Poly p = random_poly(rng, n, low(rng), N);
        const Poly q = random_poly(rng, n, low(rng), N);
        const Complex lambda = gaussian_integer(rng, true);

        const Poly u = Poly::constant(n, lambda);
        unit.check(poly_ord(u) == Ord(0), 1.0, [&] { return show(u); });

        zero.check(poly_ord(p).is_infinite() == p.is_zero() && poly_ord(p - p).is_infinite(), 1.0,
                   [&] { return show(p); });

        const Poly pq = p * q;
        const Ord want = poly_ord(p) + poly_ord(q);
        strict.check(poly_ord(pq) == want, ord_gap(poly_ord(pq), want),
                     [&] { return "p = " + show(p) + ", q = " + show(q); });
        divisors.check(!pq.is_zero() || p.is_zero() || q.is_zero(), 1.0,
                       [&] { return "p = " + show(p) + ", q = " + show(q); });

        scalar.check(poly_ord(p * lambda) == poly_ord(p), ord_gap(poly_ord(p * lambda), poly_ord(p)),
                     [&] { return show(p); });

        const Ord lo = std::min(poly_ord(p), poly_ord(q));
        const Ord ps = poly_ord(p + q);
        sum.check(ps >= lo, ord_gap(ps, lo), [&] { return "p = " + show(p) + ", q = " + show(q); });

        const UnitalSplit us = unital_split(p);
        unital.check(Poly::constant(n, us.constant) + us.rest == p && poly_ord(us.rest) >= Ord(1), 1.0,
                     [&] { return show(p); });

        // Module analogues. The degree budget is split between the multiplier
        // and the element so that most products are exact.
        const int a = split(rng);
        const Poly r = random_poly(rng, n, 0, a);
        const Element f = random_element(rng, space, N - a);
        const Element g = random_element(rng, space, N);

        m_zero.check(f.ord().is_infinite() == f.coeffs().isZero(0.0), 1.0, [&] { return show(f); });
        m_scalar.check((f * lambda).ord() == f.ord(), ord_gap((f * lambda).ord(), f.ord()), [&] { return show(f); });
        const Ord flo = std::min(f.ord(), g.ord());
        const Ord fs = (f + g).ord();
        m_sum.check(fs >= flo, ord_gap(fs, flo), [&] { return show(f) + " + " + show(g); });

        const Element one_f = mul_poly(Poly::constant(n, 1.0), f).product;
        m_unit.check(one_f.coeffs() == f.coeffs(), 1.0, [&] { return show(f); });

        const ProductResult rf = mul_poly(r, f);
        if (rf.exact) {
            ++exact_products;
            const Ord expect = poly_ord(r) + f.ord();
            m_strict.check(rf.product.ord() == expect, ord_gap(rf.product.ord(), expect),
                           [&] { return "r = " + show(r) + ", " + show(f); });
        }
    }

    AxiomReport report;
    report.seed = seed;
    for (Tally* t : {&unit, &zero, &strict, &divisors, &scalar, &sum, &unital, &m_zero, &m_scalar, &m_sum, &m_unit,
                     &m_strict}) {
        report.axioms.push_back(t->finish());
    }
    // An exactness split that never yields an exact product would make the
    // strictness check vacuous.
    if (exact_products == 0) report.axioms.back().verdict = Verdict::inconclusive;
    return report;
}

}  // namespace vhm
