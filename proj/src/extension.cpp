#include "emss/extension.hpp"

#include <algorithm>
#include <set>

#include "emss/linalg.hpp"

namespace emss {

namespace {

std::string cell_text(const Bidegree& b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ")
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i)
        s += (i ? sep : "") + xs[i];
    return s;
}

// "c_1 e_x + c_2 e_u ..." with the coefficients given per generator.
std::string linear_form(const Algebra& a, const std::vector<int>& coef)
{
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (coef[i] == 0)
            continue;
        int c = coef[i];
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        int ac = std::abs(c);
        if (ac != 1)
            s += std::to_string(ac) + "*";
        s += "e(" + a.generators()[i].name + ")";
    }
    return s.empty() ? "0" : s;
}

Monomial pure_power(const Algebra& a, std::size_t i, int e)
{
    Monomial m = a.unit_monomial();
    m[i] = e;
    return m;
}

Vector coords(const Element& e, const std::vector<Monomial>& basis)
{
    Vector v = zero_vector(e.field, basis.size());
    for (auto& [m, c] : e.terms) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || *it != m)
            throw Error("element leaves its cell");
        v[it - basis.begin()] = c;
    }
    return v;
}

}  // namespace

std::string to_string(LiftObstructionReport::Verdict v)
{
    return v == LiftObstructionReport::holds ? "holds" : "undecided";
}

RelationCandidate make_candidate(const Algebra& page, const std::string& name, const Monomial& lead,
                                 const Element& tail)
{
    RelationCandidate r;
    r.name = name;
    r.lead = lead;
    r.tail = tail;
    Bidegree b = page.bidegree(lead);
    r.filtration = b.p;
    r.total_degree = b.cototal();
    for (auto& [m, c] : tail.terms)
        if (page.bidegree(m).cototal() != r.total_degree)
            throw Error("relation " + name + " is not homogeneous in total degree");
    return r;
}

std::vector<RelationCandidate> relation_candidates(const Algebra& page, bool commutators)
{
    std::vector<RelationCandidate> out;
    for (std::size_t i = 0; i < page.size(); ++i) {
        const auto& g = page.generators()[i];
        if (!g.bound)
            continue;
        Monomial lead = pure_power(page, i, *g.bound + 1);
        out.push_back(make_candidate(page, page.format(lead), lead, page.zero()));
    }
    for (auto& r : page.relations()) {
        std::string name = page.format(r.lead);
        if (std::any_of(out.begin(), out.end(), [&](const RelationCandidate& c) { return c.name == name; }))
            continue;
        out.push_back(make_candidate(page, name, r.lead, r.tail));
    }
    if (commutators)
        for (std::size_t i = 0; i < page.size(); ++i)
            for (std::size_t j = i + 1; j < page.size(); ++j) {
                Monomial lead = page.unit_monomial();
                lead[i] = lead[j] = 1;
                std::string name = "[" + page.generators()[i].name + "," + page.generators()[j].name + "]";
                out.push_back(make_candidate(page, name, lead, page.zero()));
            }
    return out;
}

LiftObstructionReport enumerate_lift_candidates(const EInfinityPage& einf, const RelationCandidate& rel,
                                                std::optional<int> dim_n)
{
    const Algebra& a = einf.page.presentation();
    LiftObstructionReport rep;
    rep.relation = rel;
    const int T = rel.total_degree;
    auto& tr = rep.trace;

    tr.push_back("relation " + rel.name + " at " + cell_text(a.bidegree(rel.lead)) + ": total degree " +
                 std::to_string(T) + ", filtration " + std::to_string(rel.filtration));

    std::vector<int> weight(a.size()), column(a.size());
    std::vector<std::string> bounds;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& g = a.generators()[i];
        weight[i] = g.column + g.degree;
        column[i] = g.column;
        if (g.bound)
            bounds.push_back("e(" + g.name + ") <= " + std::to_string(*g.bound));
    }
    tr.push_back("degree equation: " + std::to_string(T) + " = " + linear_form(a, weight));
    tr.push_back("filtration: " + linear_form(a, column) + " >= " + std::to_string(rel.filtration + 1));
    if (!bounds.empty())
        tr.push_back("bounds: " + join(bounds));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& g = a.generators()[i];
        if (g.bound)
            continue;
        if (weight[i] == 0 && g.column == 0)
            throw NonFiniteEnumeration("generator " + g.name +
                                       " has total degree 0 in column 0: the degree equation does not bound it");
        if (weight[i] != 0)
            tr.push_back("coefficient of e(" + g.name + ") is " + std::to_string(weight[i]) + ", nonzero");
    }

    Window w;
    w.cototal = T;
    w.p_lo = rel.filtration + 1;
    if (dim_n) {
        w.p_hi = *dim_n - T;
        std::string t = T < 0 ? "(" + std::to_string(T) + ")" : std::to_string(T);
        tr.push_back("filtration bound: p <= dim N - " + t + " = " + std::to_string(*w.p_hi));
    }

    if (w.p_hi && *w.p_hi < *w.p_lo) {
        tr.push_back("filtration range is empty");
    } else {
        std::vector<Monomial> normal;
        try {
            normal = a.monomials_in(w);
        } catch (const InfiniteBasis& e) {
            throw NonFiniteEnumeration(std::string("lift enumeration for ") + rel.name + ": " + e.what());
        }
        try {
            Algebra raw(a.field(), a.generators(), {}, AlgebraKind::general);
            std::vector<std::string> excluded;
            for (auto& m : raw.monomials_in(w))
                if (!a.is_normal(m))
                    excluded.push_back(a.format(m) + " at " + cell_text(a.bidegree(m)));
            if (!excluded.empty())
                tr.push_back("vanish by relations: " + join(excluded));
        } catch (const InfiniteBasis&) {
            tr.push_back("solutions outside the normal basis are not listed (relations cap an exponent)");
        }
        for (auto& m : normal) {
            rep.candidates.push_back(m);
            rep.candidate_names.push_back(a.format(m));
        }
    }

    if (rep.candidates.empty()) {
        rep.verdict = LiftObstructionReport::holds;
        tr.push_back("no nonzero class of total degree " + std::to_string(T) + " above filtration " +
                     std::to_string(rel.filtration) + ": " + rel.name + " lifts");
    } else {
        rep.verdict = LiftObstructionReport::undecided;
        std::vector<std::string> cs;
        for (auto& m : rep.candidates)
            cs.push_back(a.format(m) + " at " + cell_text(a.bidegree(m)));
        tr.push_back("candidates: " + join(cs));
        tr.push_back("degree argument inconclusive for " + rel.name);
    }
    return rep;
}

ZeroColumnLift zero_column_lift(const EInfinityPage& einf, const Algebra& ring, int q_lo, int q_hi)
{
    const Algebra& a = einf.page.presentation();
    if (!(ring.field() == a.field()))
        throw Error("intersection ring and page use different fields");

    std::vector<std::size_t> col0;
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.generators()[i].column == 0) {
            col0.push_back(i);
            Generator g = a.generators()[i];
            gens.push_back(g);
        }
    auto restrict_mono = [&](const Monomial& m) -> std::optional<Monomial> {
        Monomial r(col0.size(), 0);
        std::size_t k = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (k < col0.size() && col0[k] == i)
                r[k++] = m[i];
            else if (m[i] != 0)
                return std::nullopt;
        }
        return r;
    };
    std::vector<Relation> rels;
    for (auto& r : a.relations()) {
        auto lead = restrict_mono(r.lead);
        if (!lead)
            continue;
        Relation rr{*lead, Element(a.field())};
        bool inside = true;
        for (auto& [m, c] : r.tail.terms) {
            auto mm = restrict_mono(m);
            if (!mm) {
                inside = false;
                break;
            }
            rr.tail.add(*mm, c);
        }
        if (inside)
            rels.push_back(rr);
    }

    ZeroColumnLift out;
    out.column_algebra = Algebra(a.field(), gens, rels, AlgebraKind::general);
    const Algebra& col = out.column_algebra;

    DimensionSeries s_col = col.hilbert_series(q_lo, q_hi);
    DimensionSeries s_ring = ring.hilbert_series(q_lo, q_hi);
    if (!(s_col == s_ring))
        throw Error("zero-column lift: column-0 series of the page differs from the intersection ring on [" +
                    std::to_string(q_lo) + ", " + std::to_string(q_hi) + "]");
    if (ring.is_finite_dimensional())
        for (auto& m : ring.full_basis()) {
            int d = ring.bidegree(m).q;
            if (d < q_lo || d > q_hi)
                throw Error("zero-column lift: intersection ring reaches past the comparison window");
        }

    std::vector<std::size_t> target(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& g = ring.generators()[i];
        auto j = a.index_of(g.name);
        if (!j || a.generators()[*j].column != 0 || a.generators()[*j].degree != g.degree)
            throw Error("zero-column lift: generator " + g.name + " has no column-0 partner of degree " +
                        std::to_string(g.degree));
        target[i] = *j;
    }
    auto lift_mono = [&](const Monomial& m) {
        Monomial r = a.unit_monomial();
        for (std::size_t i = 0; i < ring.size(); ++i)
            r[target[i]] = m[i];
        return r;
    };
    auto import = [&](const Monomial& lead, const Element& tail) {
        Relation r{lift_mono(lead), Element(a.field())};
        for (auto& [m, c] : tail.terms)
            r.tail.add(lift_mono(m), c);
        Element diff = a.from_monomial(r.lead, Scalar::one(a.field())) - r.tail;
        if (!a.reduce(diff).is_zero())
            throw Error("zero-column lift: " + a.format(r.lead) + " = " + a.format(r.tail) +
                        " fails on the page");
        out.imported.push_back(r);
        out.imported_text.push_back(a.format(r.lead) + " = " + a.format(r.tail));
    };
    for (std::size_t i = 0; i < ring.size(); ++i)
        if (auto b = ring.generators()[i].bound)
            import(pure_power(ring, i, *b + 1), ring.zero());
    for (auto& r : ring.relations())
        import(r.lead, r.tail);
    return out;
}

LoopHomology assemble_loop_homology(const EInfinityPage& einf, const std::vector<LiftObstructionReport>& reports,
                                    const std::optional<ZeroColumnLift>& lift)
{
    const Algebra& a = einf.page.presentation();
    if (einf.collapse.page_fingerprint != page_fingerprint(einf.page))
        throw Error("collapse certificate does not belong to this page");

    LoopHomology out;
    std::vector<std::string> missing;
    for (auto& c : relation_candidates(a, einf.page.relative)) {
        auto it = std::find_if(reports.begin(), reports.end(),
                               [&](const LiftObstructionReport& r) { return r.relation.name == c.name; });
        if (it == reports.end()) {
            missing.push_back(c.name);
            continue;
        }
        if (it->verdict == LiftObstructionReport::undecided)
            out.unresolved.push_back(c.name + " (candidates: " + join(it->candidate_names) + ")");
    }
    if (!missing.empty())
        throw Error("missing lift reports for: " + join(missing));

    std::vector<Generator> gens;
    for (auto& g : a.generators())
        gens.push_back({g.name, -(g.column + g.degree), 0, g.bound});
    out.presentation = Algebra(a.field(), gens, a.relations(), AlgebraKind::general);
    out.complete = out.unresolved.empty();
    if (lift)
        out.imported = lift->imported_text;
    out.citations = einf.collapse.citations;
    out.collapse_detail = einf.collapse.detail;
    return out;
}

EpimorphismTransfer epimorphism_transfer(const InducedMap& f, const Window& w)
{
    const Algebra& s = f.source;
    const Algebra& t = f.target;
    const Field& fld = t.field();
    EpimorphismTransfer out;

    auto image = [&](const Monomial& m) {
        Element e = t.one();
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto it = f.images.find(s.generators()[i].name);
            if (it == f.images.end())
                throw Error("induced map has no image for " + s.generators()[i].name);
            for (int k = 0; k < m[i]; ++k)
                e = t.multiply(e, it->second);
        }
        return e;
    };

    std::set<Bidegree> cells;
    for (auto& m : t.monomials_in(w))
        cells.insert(t.bidegree(m));
    for (std::size_t j = 0; j < t.size(); ++j)
        if (!w.contains(t.generators()[j].bidegree()))
            throw Error("epimorphism transfer: window misses target generator " + t.generators()[j].name);

    out.surjective = true;
    std::map<Bidegree, std::pair<std::vector<Monomial>, Matrix>> images;  // cell -> (source basis, image columns)
    for (auto& b : cells) {
        auto tb = t.basis(b);
        auto sb = s.basis(b);
        Matrix m(fld, tb.size(), sb.size());
        for (std::size_t k = 0; k < sb.size(); ++k) {
            Vector v = coords(image(sb[k]), tb);
            for (std::size_t r = 0; r < tb.size(); ++r)
                m.set(r, k, v[r]);
        }
        std::size_t rk = rank(m);
        if (rk != tb.size()) {
            out.surjective = false;
            out.checks.push_back("not onto at " + cell_text(b) + ": rank " + std::to_string(rk) + " of " +
                                 std::to_string(tb.size()));
        }
        images.emplace(b, std::make_pair(sb, m));
    }
    if (!out.surjective)
        return out;
    out.checks.push_back("onto in " + std::to_string(cells.size()) + " cells of the window");

    std::vector<Element> pre;
    for (std::size_t j = 0; j < t.size(); ++j) {
        Bidegree b = t.generators()[j].bidegree();
        auto tb = t.basis(b);
        auto& [sb, m] = images.at(b);
        auto x = solve(m, coords(t.generator(j), tb));
        if (!x)
            throw Error("epimorphism transfer: no preimage for " + t.generators()[j].name);
        Element e(s.field());
        for (std::size_t k = 0; k < sb.size(); ++k)
            if (!(*x)[k].is_zero())
                e.add(sb[k], (*x)[k]);
        pre.push_back(e);
        out.preimages.emplace(t.generators()[j].name, e);
    }
    auto pull = [&](const Monomial& m) {
        Element e = s.one();
        for (std::size_t j = 0; j < t.size(); ++j)
            for (int k = 0; k < m[j]; ++k)
                e = s.multiply(e, pre[j]);
        return e;
    };

    for (auto& rel : relation_candidates(t, false)) {
        LiftObstructionReport rep;
        rep.relation = rel;
        Element d = pull(rel.lead);
        for (auto& [m, c] : rel.tail.terms)
            d = d - pull(m).scaled(c);
        d = s.reduce(d);
        rep.trace.push_back("pull back " + rel.name + " along preimages: " + (d.is_zero() ? "0" : s.format(d)));
        if (d.is_zero()) {
            rep.verdict = LiftObstructionReport::holds;
            rep.trace.push_back("relation holds in the source, so it holds in the target");
        } else {
            rep.verdict = LiftObstructionReport::undecided;
            for (auto& [m, c] : d.terms) {
                rep.candidates.push_back(m);
                rep.candidate_names.push_back(s.format(m));
            }
        }
        out.reports.push_back(rep);
    }
    return out;
}

}  // namespace emss
