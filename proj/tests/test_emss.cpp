#include <doctest.h>

#include "emss/emss.hpp"

using namespace emss;

namespace {

Algebra truncated(const Field& f, int deg, int n)
{
    return Algebra(f, {Generator{"x", deg, 0, n}}, {}, AlgebraKind::truncated_polynomial);
}

Algebra exterior(const Field& f, std::vector<std::pair<std::string, int>> gens)
{
    std::vector<Generator> g;
    for (auto& [n, d] : gens)
        g.push_back({n, d, 0, 1});
    return Algebra(f, g, {}, AlgebraKind::exterior);
}

Window scan()
{
    Window w;
    w.p_lo = 0;
    w.p_hi = 8;
    w.q_lo = -60;
    w.q_hi = 60;
    return w;
}

}  // namespace

TEST_CASE("E2 of a truncated algebra is its Hochschild ring")
{
    E2Page p = build_e2(ModuleSpec::regular(truncated(Field(0), 2, 2)), 4);
    CHECK(!p.relative);
    CHECK(p.shift == 4);
    CHECK(page_fingerprint(p) == "char=0;shift=4;x(0,2)^2;u(1,0)^1;t(2,-6);x^2*t=0;x^2*u=0;");
}

TEST_CASE("sparsity certifies single-periodic pages")
{
    for (unsigned ch : {0u, 2u, 3u})
        for (int n : {1, 2, 3}) {
            CAPTURE(ch);
            CAPTURE(n);
            E2Page p = build_e2(ModuleSpec::regular(truncated(Field(ch), 2, n)), 2 * n);
            SparsityOutcome o = collapse_by_sparsity(p, scan());
            CHECK(o.certified());
            CHECK(o.certificate->kind == CollapseCertificate::sparsity_forced);
        }
    for (int m : {2, 3, 4, 5}) {
        E2Page p = build_e2(ModuleSpec::regular(exterior(Field(3), {{"x", m}})), m);
        CHECK(collapse_by_sparsity(p, scan()).certified());
    }
}

TEST_CASE("sparsity refuses with a witness when a differential could be nonzero")
{
    E2Page s1 = build_e2(ModuleSpec::regular(exterior(Field(0), {{"x", 1}})), 1);
    SparsityOutcome o = collapse_by_sparsity(s1, scan());
    REQUIRE(!o.certified());
    REQUIRE(o.witness);
    Bidegree a = o.witness->first, b = o.witness->second;
    int r = b.p - a.p;
    CHECK(r >= 2);
    CHECK(b.q == a.q - r + 1);
    CHECK(s1.presentation().basis(a).size() > 0);
    CHECK(s1.presentation().basis(b).size() > 0);

    E2Page v = build_e2(ModuleSpec::regular(exterior(Field(2), {{"x3", 3}, {"x4", 4}})), 7);
    SparsityOutcome ov = collapse_by_sparsity(v, scan());
    REQUIRE(!ov.certified());
    REQUIRE(ov.witness);
    CHECK(ov.witness->first == Bidegree{0, 0});
    CHECK(ov.reason.find("assume_collapse") != std::string::npos);
}

TEST_CASE("several unbounded generators need a bounded window")
{
    E2Page v = build_e2(ModuleSpec::regular(exterior(Field(2), {{"x3", 3}, {"x4", 4}})), 7);
    Window w;
    CHECK_THROWS_AS(collapse_by_sparsity(v, w), WindowTooNarrow);
}

TEST_CASE("relative page over BS1 is finite and collapses")
{
    Field f(0);
    Algebra poly(f, {Generator{"x", 2, 0, std::nullopt}}, {}, AlgebraKind::polynomial);
    for (int n : {1, 2}) {
        E2Page p = build_e2(ModuleSpec{AlgebraMorphism::by_name(poly, truncated(f, 2, n))}, 2 * n);
        CHECK(p.relative);
        Window all;
        all.p_lo = 0;
        all.p_hi = 3;
        all.q_lo = -10;
        all.q_hi = 10;
        CHECK(p.presentation().monomials_in(all).size() == static_cast<std::size_t>(2 * (n + 1)));
        SparsityOutcome o = collapse_by_sparsity(p, scan());
        CHECK(o.certified());
    }
}

TEST_CASE("cited collapse and fingerprints")
{
    E2Page v = build_e2(ModuleSpec::regular(exterior(Field(2), {{"x3", 3}, {"x4", 4}})), 7);
    CHECK_THROWS(assume_collapse(v, "  "));
    CollapseCertificate c = assume_collapse(v, "K-Y Thm 2.2");
    CHECK(c.kind == CollapseCertificate::cited_theorem);
    CHECK(c.citations == std::vector<std::string>{"K-Y Thm 2.2"});
    CHECK_NOTHROW(einfinity(v, c));
    E2Page other = build_e2(ModuleSpec::regular(exterior(Field(2), {{"x3", 3}})), 3);
    CHECK_THROWS(einfinity(other, c));
}

TEST_CASE("unsupported algebras are rejected")
{
    Field f(0);
    Algebra two(f, {Generator{"x", 2, 0, 2}, Generator{"y", 4, 0, 1}});
    CHECK_THROWS_AS(build_e2(ModuleSpec::regular(two), 8), UnsupportedAlgebra);
}
