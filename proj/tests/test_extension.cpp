#include <doctest.h>

#include "emss/extension.hpp"
#include "oracles.hpp"

using namespace emss;

namespace {

Algebra truncated(const Field& f, int deg, int n)
{
    return Algebra(f, {Generator{"x", deg, 0, n}}, {}, AlgebraKind::truncated_polynomial);
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

EInfinityPage collapsed(const E2Page& p)
{
    SparsityOutcome o = collapse_by_sparsity(p, scan());
    return einfinity(p, o.certified() ? *o.certificate : assume_collapse(p, "K-Y Thm 2.2"));
}

const RelationCandidate& find(const std::vector<RelationCandidate>& cs, const std::string& name)
{
    for (auto& c : cs)
        if (c.name == name)
            return c;
    throw Error("no candidate " + name);
}

void agrees_with_brute_force(const EInfinityPage& e, const LiftObstructionReport& r, std::optional<int> dim_n)
{
    std::optional<int> p_hi;
    if (dim_n)
        p_hi = *dim_n - r.relation.total_degree;
    auto brute = oracle::brute_force_lift(e.page.presentation(), r.relation.total_degree, r.relation.filtration, p_hi);
    CHECK(brute == r.candidates);
}

}  // namespace

TEST_CASE("u^2 and x^3 lift on the CP2 page")
{
    EInfinityPage e = collapsed(build_e2(ModuleSpec::regular(truncated(Field(0), 2, 2)), 4));
    auto cs = relation_candidates(e.page.presentation(), false);
    auto u2 = enumerate_lift_candidates(e, find(cs, "u^2"));
    CHECK(u2.relation.total_degree == 2);
    CHECK(u2.relation.filtration == 2);
    CHECK(u2.candidates.empty());
    CHECK(u2.verdict == LiftObstructionReport::holds);
    auto x3 = enumerate_lift_candidates(e, find(cs, "x^3"));
    CHECK(x3.relation.total_degree == 6);
    CHECK(x3.relation.filtration == 0);
    CHECK(x3.verdict == LiftObstructionReport::holds);
    CHECK(x3.trace.at(1) == "degree equation: 6 = 2*e(x) + e(u) - 4*e(t)");
}

TEST_CASE("every truncated-case lift check holds and matches brute force")
{
    for (unsigned ch : {0u, 5u})
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 4; ++n) {
                if (ch && (n + 1) % ch == 0)
                    continue;
                CAPTURE(ch);
                CAPTURE(m);
                CAPTURE(n);
                EInfinityPage e = collapsed(build_e2(ModuleSpec::regular(truncated(Field(ch), 2 * m, n)), 2 * m * n));
                auto cs = relation_candidates(e.page.presentation(), false);
                CHECK(cs.size() == 4);
                for (auto& c : cs)
                    for (std::optional<int> d : {std::optional<int>{}, std::optional<int>{2 * m * n}}) {
                        auto r = enumerate_lift_candidates(e, c, d);
                        CHECK(r.verdict == LiftObstructionReport::holds);
                        agrees_with_brute_force(e, r, d);
                    }
            }
}

TEST_CASE("v^2 lifts when n+1 vanishes in odd characteristic")
{
    struct P {
        int m, n;
        unsigned ch;
    };
    for (P p : {P{1, 2, 3}, P{1, 4, 5}, P{2, 2, 3}}) {
        EInfinityPage e = collapsed(build_e2(ModuleSpec::regular(truncated(Field(p.ch), 2 * p.m, p.n)), 2 * p.m * p.n));
        auto cs = relation_candidates(e.page.presentation(), false);
        auto r = enumerate_lift_candidates(e, find(cs, "v^2"), 2 * p.m * p.n);
        CHECK(r.verdict == LiftObstructionReport::holds);
        agrees_with_brute_force(e, r, 2 * p.m * p.n);
    }
}

TEST_CASE("v^2 at (2,-4) over F2 with n = 1 is undecided")
{
    EInfinityPage e = collapsed(build_e2(ModuleSpec::regular(truncated(Field(2), 2, 1)), 2));
    const Algebra& a = e.page.presentation();
    RelationCandidate c = make_candidate(a, "v^2", a.parse_monomial("v^2"), a.zero());
    CHECK(c.total_degree == -2);
    auto r = enumerate_lift_candidates(e, c, 2);
    CHECK(r.verdict == LiftObstructionReport::undecided);
    REQUIRE(!r.candidates.empty());
    CHECK(r.candidate_names.front() == "x*v^4");
    agrees_with_brute_force(e, r, 2);
    auto unbounded = enumerate_lift_candidates(e, c);
    CHECK(unbounded.candidates == r.candidates);
}

TEST_CASE("non-finite enumeration is reported")
{
    Field f(0);
    Algebra a(f, {Generator{"x", 2, 0, std::nullopt}, Generator{"w", -2, 0, std::nullopt}});
    E2Page p;
    p.hh.presentation = a;
    EInfinityPage e{p, assume_collapse(p, "test")};
    RelationCandidate c = make_candidate(a, "x*w", {1, 1}, a.zero());
    CHECK_THROWS_AS(enumerate_lift_candidates(e, c), NonFiniteEnumeration);
}

TEST_CASE("zero-column lift imports the intersection ring")
{
    Field f2(2);
    Algebra st(f2, {Generator{"x3", 3, 0, 1}, Generator{"x4", 4, 0, 1}}, {}, AlgebraKind::exterior);
    E2Page v = build_e2(ModuleSpec::regular(st), 7);
    EInfinityPage e = einfinity(v, assume_collapse(v, "K-Y Thm 2.2"));
    ZeroColumnLift z = zero_column_lift(e, st);
    CHECK(z.imported_text == std::vector<std::string>{"x3^2 = 0", "x4^2 = 0"});

    Algebra wrong(f2, {Generator{"x3", 3, 0, 1}}, {}, AlgebraKind::exterior);
    CHECK_THROWS(zero_column_lift(e, wrong));

    Field q(0);
    Algebra point = Algebra::ground(q);
    E2Page pp = build_e2(ModuleSpec::regular(point), 0);
    EInfinityPage ep = collapsed(pp);
    CHECK(zero_column_lift(ep, point).imported.empty());
}

TEST_CASE("zero-column lift and enumeration agree on CP2")
{
    Algebra cp2 = truncated(Field(0), 2, 2);
    EInfinityPage e = collapsed(build_e2(ModuleSpec::regular(cp2), 4));
    ZeroColumnLift z = zero_column_lift(e, cp2);
    REQUIRE(z.imported.size() == 1);
    CHECK(z.imported_text[0] == "x^3 = 0");
    const Algebra& a = e.page.presentation();
    auto r = enumerate_lift_candidates(e, make_candidate(a, "x^3", z.imported[0].lead, z.imported[0].tail), 4);
    CHECK(r.verdict == LiftObstructionReport::holds);
}

TEST_CASE("assembled loop homology has the E-infinity series")
{
    Algebra cp3 = truncated(Field(0), 2, 3);
    EInfinityPage e = collapsed(build_e2(ModuleSpec::regular(cp3), 6));
    std::vector<LiftObstructionReport> reps;
    for (auto& c : relation_candidates(e.page.presentation(), false))
        reps.push_back(enumerate_lift_candidates(e, c, 6));
    LoopHomology l = assemble_loop_homology(e, reps, zero_column_lift(e, cp3));
    CHECK(l.complete);
    Window w;
    w.p_lo = 0;
    w.p_hi = 6;
    w.q_lo = -40;
    w.q_hi = 40;
    DimensionSeries expect;
    // t has total degree 6, so degrees up to 10 only see columns p <= 5
    for (auto& [b, d] : e.page.series(w))
        if (b.total() >= -6 && b.total() <= 10)
            expect.add(b.total(), d);
    CHECK(l.presentation.hilbert_series(-6, 10) == expect);

    reps.pop_back();
    CHECK_THROWS(assemble_loop_homology(e, reps, std::nullopt));
}

TEST_CASE("undecided verdicts give a partial result")
{
    EInfinityPage e = collapsed(build_e2(ModuleSpec::regular(truncated(Field(2), 2, 1)), 2));
    const Algebra& a = e.page.presentation();
    std::vector<LiftObstructionReport> reps;
    for (auto& c : relation_candidates(a, false))
        reps.push_back(enumerate_lift_candidates(e, c, 2));
    reps[0].verdict = LiftObstructionReport::undecided;
    reps[0].candidate_names = {"x*v^4"};
    LoopHomology l = assemble_loop_homology(e, reps, std::nullopt);
    CHECK(!l.complete);
    CHECK(l.unresolved.size() == 1);
}

TEST_CASE("relative pipelines check commutators")
{
    Field f(0);
    Algebra poly(f, {Generator{"x", 2, 0, std::nullopt}}, {}, AlgebraKind::polynomial);
    Algebra cp1 = truncated(f, 2, 1);
    EInfinityPage e = collapsed(build_e2(ModuleSpec{AlgebraMorphism::by_name(poly, cp1)}, 2));
    auto cs = relation_candidates(e.page.presentation(), true);
    CHECK(find(cs, "[x,y]").filtration == 1);
    for (auto& c : cs) {
        auto r = enumerate_lift_candidates(e, c, 2);
        CHECK(r.verdict == LiftObstructionReport::holds);
        agrees_with_brute_force(e, r, 2);
    }
}

TEST_CASE("epimorphism transfer pulls relations back")
{
    Field f(0);
    Algebra g(f, {Generator{"y1", 3, 0, 1}, Generator{"y2", 5, 0, 1}}, {}, AlgebraKind::exterior);
    Algebra q(f, {Generator{"y2", 5, 0, 1}}, {}, AlgebraKind::exterior);
    AlgebraMorphism pi(q, g, {g.generator("y2")});
    HHPresentation hg = hh_exterior(ModuleSpec::regular(g), 3);
    HHPresentation hmid = hh_exterior(ModuleSpec{pi}, 3);
    InducedMap m = hh_induced_map(InducedDirection::ring, pi, hg, hmid);
    Window w;
    w.p_lo = 0;
    w.p_hi = 3;
    w.q_lo = -20;
    w.q_hi = 10;
    EpimorphismTransfer t = epimorphism_transfer(m, w);
    CHECK(t.surjective);
    REQUIRE(!t.reports.empty());
    for (auto& r : t.reports)
        CHECK(r.verdict == LiftObstructionReport::holds);

    InducedMap back = hh_induced_map(InducedDirection::coefficients, pi, hh_exterior(ModuleSpec::regular(q), 3), hmid);
    CHECK(!epimorphism_transfer(back, w).surjective);
}
