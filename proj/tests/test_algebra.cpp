#include <doctest.h>

#include <random>

#include "emss/algebra.hpp"
#include "oracles.hpp"

using namespace emss;

namespace {

Algebra truncated(const Field& f, int deg, int n)
{
    return Algebra(f, {Generator{"x", deg, 0, n}}, {}, AlgebraKind::truncated_polynomial);
}

int parity_of(const Algebra& a, const Monomial& m) { return a.parity(m); }

}  // namespace

TEST_CASE("truncated polynomial basis")
{
    Algebra a = truncated(Field(0), 2, 2);
    CHECK(a.full_basis().size() == 3);
    CHECK(a.basis_in_degree(4).size() == 1);
    CHECK(a.basis_in_degree(6).empty());
    DimensionSeries h = a.hilbert_series(0, 10);
    CHECK(h == DimensionSeries{{0, 1}, {2, 1}, {4, 1}});
    CHECK(a.is_finite_dimensional());
}

TEST_CASE("odd generators square to zero away from characteristic 2")
{
    Algebra odd(Field(3), {Generator{"y", 3, 0, std::nullopt}});
    REQUIRE(odd.generators()[0].bound);
    CHECK(*odd.generators()[0].bound == 1);
    Algebra odd2(Field(2), {Generator{"y", 3, 0, std::nullopt}});
    CHECK(!odd2.generators()[0].bound);
    CHECK(odd2.power(odd2.generator(0), 3).terms.size() == 1);
}

TEST_CASE("polynomial bases need a window")
{
    Algebra p(Field(0), {Generator{"x", 2, 0, std::nullopt}}, {}, AlgebraKind::polynomial);
    CHECK_THROWS_AS(p.full_basis(), InfiniteBasis);
    Window w;
    w.q_lo = 0;
    w.q_hi = 10;
    CHECK(p.monomials_in(w).size() == 6);
}

TEST_CASE("relations rewrite to normal form")
{
    Field f(0);
    Algebra a(f, {Generator{"x", 2, 0, 2}, Generator{"u", 0, 1, 1}, Generator{"t", -6, 2, std::nullopt}},
              {{{2, 0, 1}, Element(f)}, {{2, 1, 0}, Element(f)}});
    Element xt = a.multiply(a.generator("x"), a.generator("t"));
    CHECK(!xt.is_zero());
    CHECK(a.multiply(xt, a.generator("x")).is_zero());
    CHECK(a.multiply(a.generator("u"), a.generator("u")).is_zero());
    CHECK(a.basis({2, -4}).size() == 1);
    CHECK(a.basis({2, -6}).size() == 1);
    CHECK(a.basis({2, 2}).empty());
    CHECK_THROWS(Algebra(f, {Generator{"x", 2, 0, 2}}, {{{1}, a.zero()}, {{2}, Element::monomial(f, {1}, Scalar(f, 1))}}));
}

TEST_CASE("multiplication is graded commutative and associative")
{
    std::mt19937 rng(7);
    for (unsigned ch : {0u, 2u, 3u}) {
        Field f(ch);
        Algebra a(f, {Generator{"x", 2, 0, 3}, Generator{"y", 3, 0, std::nullopt}, Generator{"z", 5, 0, std::nullopt},
                      Generator{"v", -1, 1, std::nullopt}});
        if (ch == 2)
            continue;  // y, z polynomial there; commutativity is plain
        Window w;
        w.p_lo = 0;
        w.p_hi = 3;
        w.q_lo = -3;
        w.q_hi = 16;
        auto monos = a.monomials_in(w);
        REQUIRE(monos.size() > 10);
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        for (int trial = 0; trial < 200; ++trial) {
            Monomial m1 = monos[pick(rng)], m2 = monos[pick(rng)], m3 = monos[pick(rng)];
            Element ab = a.multiply(m1, m2), ba = a.multiply(m2, m1);
            int sign = parity_of(a, m1) * parity_of(a, m2) ? -1 : 1;
            CHECK(ab == ba.scaled(Scalar(f, sign)));
            Element e1 = a.from_monomial(m1, Scalar::one(f)), e3 = a.from_monomial(m3, Scalar::one(f));
            CHECK(a.multiply(ab, e3) == a.multiply(e1, a.multiply(m2, m3)));
            CHECK(a.commutator(m1, m2).is_zero());
        }
    }
}

TEST_CASE("Gorenstein dimension of polynomial algebras")
{
    Field f(0);
    std::vector<std::vector<int>> cases = {{2}, {4}, {2, 4}, {2, 2, 2}, {6, 8}};
    for (auto& degs : cases) {
        std::vector<Generator> gens;
        for (std::size_t i = 0; i < degs.size(); ++i)
            gens.push_back({"x" + std::to_string(i), degs[i], 0, std::nullopt});
        Algebra a(f, gens, {}, AlgebraKind::polynomial);
        CHECK(gorenstein_dimension(a) == oracle::gorenstein(degs));
    }
    CHECK(gorenstein_dimension(Algebra(f, {Generator{"x", 2, 0, std::nullopt}})) == -1);
}

TEST_CASE("morphisms are checked against relations and degrees")
{
    Field f(0);
    Algebra poly(f, {Generator{"x", 2, 0, std::nullopt}}, {}, AlgebraKind::polynomial);
    Algebra cp2 = truncated(f, 2, 2);
    AlgebraMorphism q(poly, cp2, {cp2.generator(0)});
    CHECK(q.apply(Monomial{3}).is_zero());
    CHECK(!q.apply(Monomial{2}).is_zero());
    CHECK_THROWS_AS(AlgebraMorphism(cp2, poly, {poly.generator(0)}), MorphismError);
    Algebra deg4(f, {Generator{"y", 4, 0, std::nullopt}});
    CHECK_THROWS_AS(AlgebraMorphism(poly, deg4, {deg4.generator(0)}), MorphismError);
}

TEST_CASE("monomial text round trip")
{
    Field f(0);
    Algebra a(f, {Generator{"x", 2, 0, 4}, Generator{"nu_x3", -3, 1, std::nullopt}});
    Monomial m = a.parse_monomial("x^2*nu_x3^3");
    CHECK(m == Monomial{2, 3});
    CHECK(a.format(m) == "x^2*nu_x3^3");
    CHECK(a.parse_monomial("1") == a.unit_monomial());
    CHECK_THROWS(a.parse_monomial("w"));
}

TEST_CASE("tensor products concatenate generators")
{
    Field f(2);
    Algebra a = truncated(f, 2, 1);
    Algebra b(f, {Generator{"y", 3, 0, 1}});
    Algebra t = tensor(a, b);
    CHECK(t.size() == 2);
    CHECK(t.full_basis().size() == 4);
    CHECK_THROWS(tensor(a, a));
}
