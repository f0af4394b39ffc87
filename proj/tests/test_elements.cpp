#include <doctest.h>

#include "oracles.hpp"
#include "vhm/algebra.hpp"
#include "vhm/corpus.hpp"

using namespace vhm;

namespace {

Element mono(const SpacePtr& sp, MultiIndex m, Complex c = 1.0) { return Element::monomial(sp, m, c); }

}  // namespace

TEST_CASE("inner product examples")
{
    const auto sp = make_space(2, 1, 4);
    CHECK(inner(mono(sp, {1, 1}), mono(sp, {1, 1})) == Complex(1.0));
    CHECK(inner(mono(sp, {1, 0}), mono(sp, {0, 1})) == Complex(0.0));
    const Element f = mono(sp, {1, 0}, 2.0) + mono(sp, {0, 2});
    CHECK(inner(f, mono(sp, {1, 0}, 3.0)) == Complex(6.0));
}

TEST_CASE("inner product is linear in the first slot")
{
    const auto sp = make_space(1, 1, 2);
    const Element f = mono(sp, {1}, Complex(0.0, 1.0));
    CHECK(inner(f, mono(sp, {1})) == Complex(0.0, 1.0));
    CHECK(inner(mono(sp, {1}), f) == Complex(0.0, -1.0));
}

TEST_CASE("space mismatch is an error")
{
    const auto a = make_space(2, 1, 4);
    const auto b = make_space(2, 1, 5);
    CHECK_THROWS_AS(inner(mono(a, {1, 0}), mono(b, {1, 0})), SpaceMismatch);
    CHECK_THROWS_AS(mono(a, {1, 0}) + mono(b, {1, 0}), SpaceMismatch);
}

TEST_CASE("ord examples")
{
    const auto sp = make_space(2, 1, 5);
    CHECK(ord(mono(sp, {2, 0}) + mono(sp, {1, 3})) == Ord(2));
    CHECK(ord(Element::zero(sp)).is_infinite());
    CHECK(ord(mono(sp, {0, 0}, 5.0)) == Ord(0));
}

TEST_CASE("ord ignores coefficients below the drop tolerance")
{
    const auto sp = make_space(1, 1, 3);
    const Element f = mono(sp, {0}, 1e-15) + mono(sp, {2}, 1.0);
    CHECK(f.ord() == Ord(2));
    const Element g = mono(sp, {0}, 1e-12) + mono(sp, {2}, 1.0);
    CHECK(g.ord() == Ord(0));
}

TEST_CASE("linear_combine examples")
{
    const auto sp = make_space(2, 1, 3);
    const Element z1 = mono(sp, {1, 0}), z2 = mono(sp, {0, 1});
    const Element s = linear_combine({{1.0, z1}, {1.0, z2}});
    CHECK(s.coeffs() == (z1 + z2).coeffs());
    CHECK(s.ord() == Ord(1));
    CHECK(linear_combine({{1.0, z1}, {-1.0, z1}}).ord().is_infinite());
    const Element t = linear_combine({{3.0, mono(sp, {2, 0})}});
    CHECK(t.coeff(MultiIndex{2, 0})[0] == Complex(3.0));
    CHECK(t.ord() == Ord(2));
}

TEST_CASE("mul_poly examples")
{
    const auto sp = make_space(2, 1, 4);
    const auto pr = mul_poly(Poly::variable(2, 0), mono(sp, {0, 1}));
    CHECK(pr.exact);
    CHECK(pr.product.coeffs() == mono(sp, {1, 1}).coeffs());

    const int N = 4;
    const auto top = mul_poly(Poly::variable(2, 0), mono(sp, {N, 0}));
    CHECK_FALSE(top.exact);
    CHECK(top.product.norm() == 0.0);
}

TEST_CASE("z*B loses at most the Blaschke tail")
{
    const Complex a = 0.5;
    const int N = 24;
    const Element b = blaschke_coeffs(a, N);
    const auto zb = mul_poly(Poly::variable(1, 0), b);
    CHECK_FALSE(zb.exact);
    // The only discarded coefficient is c_N, of squared size (1-|a|^2)^2 |a|^(2N-2).
    const double lost = b.squared_norm() - zb.product.squared_norm();
    CHECK(lost >= 0.0);
    CHECK(lost <= blaschke_tail(a, N - 1) + 1e-15);
}

TEST_CASE("mul_poly agrees with the convolution oracle")
{
    std::mt19937_64 rng(11);
    for (int s = 0; s < 200; ++s) {
        const int n = 1 + s % 3, d = 1 + s % 2, N = 2 + s % 5;
        const auto sp = make_space(n, d, N);
        const Poly p = random_poly(rng, n, 0, N);
        const Element f = random_element(rng, sp, N);
        const auto pr = mul_poly(p, f);
        CHECK((pr.product.coeffs() - oracle::multiply(p, f).coeffs()).norm() == doctest::Approx(0.0));
        CHECK(pr.exact == (p.is_zero() || f.norm() == 0.0 || p.max_degree() + f.support_degree() <= N));
        if (pr.exact && pr.product.norm() > 0.0) CHECK(pr.product.ord() == poly_ord(p) + f.ord());

        CMatrix cols(sp->dim(), 2);
        cols.col(0) = f.coeffs();
        cols.col(1) = random_element(rng, sp, N).coeffs();
        const CMatrix prod = mul_poly_columns(p, *sp, cols);
        CHECK((prod.col(0) - pr.product.coeffs()).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("inner product symmetry, Cauchy-Schwarz and Parseval on samples")
{
    std::mt19937_64 rng(5);
    for (int s = 0; s < 300; ++s) {
        const auto sp = make_space(1 + s % 3, 1 + s % 3, 1 + s % 6);
        const Element f(sp, oracle::gaussian_vector(rng, sp->dim()));
        const Element g(sp, oracle::gaussian_vector(rng, sp->dim()));
        CHECK(std::abs(inner(f, g) - std::conj(inner(g, f))) <= 1e-12 * f.norm() * g.norm());
        CHECK(std::abs(inner(f, g)) <= f.norm() * g.norm() * (1.0 + 1e-12));
        CHECK(std::abs(inner(f, f).imag()) <= 1e-12 * f.squared_norm());
        double blocks = 0.0;
        for (int k = 0; k <= sp->max_degree(); ++k) blocks += f.block(k).squared_norm();
        CHECK(blocks == doctest::Approx(f.squared_norm()).epsilon(1e-12));
    }
}

TEST_CASE("valuation axioms on sampled elements")
{
    std::mt19937_64 rng(9);
    for (int s = 0; s < 300; ++s) {
        const auto sp = make_space(2, 2, 5);
        const Element f = random_element(rng, sp, 5);
        const Element g = random_element(rng, sp, 5);
        CHECK((f + g).ord() >= std::min(f.ord(), g.ord()));
        CHECK((f * Complex(2.0, -1.0)).ord() == f.ord());
        CHECK(f.ord().is_infinite() == (f.norm() == 0.0));
        const int low = oracle::lowest_degree(f);
        CHECK(f.ord() == (low < 0 ? Ord::infinity() : Ord(low)));
    }
}

TEST_CASE("monomial beyond the truncation degree is rejected")
{
    const auto sp = make_space(2, 1, 2);
    CHECK_THROWS_AS(Element::monomial(sp, MultiIndex{2, 1}), std::invalid_argument);
}

TEST_CASE("from_poly drops terms above N and places the component")
{
    const auto sp = make_space(1, 2, 2);
    const Element f = Element::from_poly(sp, parse_poly("1 + z^3", 1), 1);
    CHECK(f.coeff(MultiIndex{0})[1] == Complex(1.0));
    CHECK(f.coeff(MultiIndex{0})[0] == Complex(0.0));
    CHECK(f.norm() == doctest::Approx(1.0));
}
