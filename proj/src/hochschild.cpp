#include "emss/hochschild.hpp"

#include <algorithm>
#include <functional>

namespace emss {

namespace {

bool odd(long v) { return (v % 2 + 2) % 2 == 1; }

std::string cell_text(const Bidegree& b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

std::string series_mismatch(const BigradedSeries& want, const BigradedSeries& got)
{
    std::map<Bidegree, std::pair<long, long>> all;
    for (auto& [b, d] : want)
        all[b].first = d;
    for (auto& [b, d] : got)
        all[b].second = d;
    for (auto& [b, d] : all)
        if (d.first != d.second)
            return "at " + cell_text(b) + " presentation has " + std::to_string(d.first) + ", cohomology has " +
                   std::to_string(d.second);
    return "";
}

// Embeds a monomial of `from` into `to` by generator name.
Monomial rename_monomial(const Algebra& from, const Algebra& to, const Monomial& m)
{
    Monomial r = to.unit_monomial();
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i])
            r[to.require_index(from.generators()[i].name)] += m[i];
    return r;
}

Element rename_element(const Algebra& from, const Algebra& to, const Element& e)
{
    Element r(to.field());
    for (auto& [m, c] : e.terms)
        r = r + to.from_monomial(rename_monomial(from, to, m), c);
    return r;
}

int truncation_height(const Algebra& a)
{
    return static_cast<int>(a.full_basis().size()) - 1;
}

}  // namespace

std::string to_string(GeneratorRole::Kind k)
{
    switch (k) {
    case GeneratorRole::coefficient: return "coefficient";
    case GeneratorRole::derivation: return "derivation";
    case GeneratorRole::periodic: return "periodic";
    }
    return "coefficient";
}

BarModel::BarModel(const ModuleSpec& coefficients, int p_max)
    : bar_(coefficients, p_max)
{
    CohomologyWindow w;
    w.s_lo = 0;
    w.s_hi = p_max;
    h_ = emss::cohomology(bar_.complex(), w);
}

Vector BarModel::unit_cochain() const { return coefficient_cochain(bar_.coefficients().unit_monomial()); }

Vector BarModel::coefficient_cochain(const Monomial& c) const
{
    const Algebra& coeff = bar_.coefficients();
    int q = coeff.bidegree(c).q;
    Element e = Element::monomial(coeff.field(), c, Scalar::one(coeff.field()));
    return bar_.cochain(0, q, [&](const std::vector<int>&) { return e; });
}

Element derivation_value(const ModuleSpec& mod, const std::vector<Element>& values, int degree, const Monomial& m)
{
    const Algebra& ring = mod.ring();
    const Algebra& c = mod.coefficients();
    if (values.size() != ring.size())
        throw Error("derivation needs one value per ring generator");
    Element d(c.field());
    Monomial w = ring.unit_monomial();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) {
            Monomial g = ring.generator_monomial(i);
            Element next(c.field());
            for (auto& [dm, dc] : d.terms)
                next = next + mod.right(dm, g).scaled(dc);
            bool sign = odd(static_cast<long>(degree) * ring.bidegree(w).q);
            for (auto& [vm, vc] : values[i].terms)
                next = next + mod.left(w, vm).scaled(sign ? -vc : vc);
            d = next;
            w[i] += 1;
        }
    return d;
}

Vector BarModel::derivation_cochain(const std::vector<Element>& values, int q) const
{
    const auto& abar = bar_.reduced_basis();
    return bar_.cochain(1, q, [&](const std::vector<int>& t) {
        return derivation_value(bar_.module(), values, q, abar[t.at(0)]);
    });
}

Vector BarModel::coordinates(int p, int q, const Vector& cocycle) const
{
    if (bar_.basis(p, q).empty())
        return {};
    if (!h_.cells.count({p, q}))
        throw Error("cell " + cell_text({p, q}) + " is outside the bar window");
    return h_.coordinates(p, q, cocycle);
}

CupResult cup_product(const BarModel& model, const Bidegree& a, const Vector& f, const Bidegree& b, const Vector& g)
{
    CupResult r;
    r.bidegree = a + b;
    r.cocycle = model.bar().cup(a.p, a.q, f, b.p, b.q, g);
    r.coordinates = model.coordinates(r.bidegree.p, r.bidegree.q, r.cocycle);
    return r;
}

HHCertificate certify_on_bar(const Algebra& pres, const std::vector<Vector>& gens, const BarModel& model)
{
    const int p_max = model.p_max();
    HHCertificate cert;
    cert.method = "bar-model";
    cert.p_max = p_max;
    Window w;
    w.p_lo = 0;
    w.p_hi = p_max;
    BigradedSeries want = pres.bigraded_series(w);
    BigradedSeries got = model.cohomology().dims();
    if (want != got)
        throw CertificationError("series mismatch " + series_mismatch(want, got));
    cert.series = got;

    std::map<Monomial, Vector> memo;
    memo[pres.unit_monomial()] = model.unit_cochain();
    std::function<const Vector&(const Monomial&)> cochain = [&](const Monomial& m) -> const Vector& {
        auto it = memo.find(m);
        if (it != memo.end())
            return it->second;
        std::size_t last = m.size();
        while (last-- > 0 && m[last] == 0) {
        }
        Monomial prefix = m;
        prefix[last] -= 1;
        const Vector& f = cochain(prefix);
        Monomial g = pres.generator_monomial(last);
        Bidegree bp = pres.bidegree(prefix), bg = pres.bidegree(g);
        Vector v = model.bar().cup(bp.p, bp.q, f, bg.p, bg.q, gens.at(last));
        return memo.emplace(m, std::move(v)).first->second;
    };
    auto coords = [&](const Monomial& m) {
        Bidegree b = pres.bidegree(m);
        try {
            return model.coordinates(b.p, b.q, cochain(m));
        } catch (const CertificationError&) {
            throw;
        } catch (const Error& e) {
            throw CertificationError("product " + pres.format(m) + " is not a cocycle: " + e.what());
        }
    };

    for (std::size_t i = 0; i < pres.size(); ++i) {
        Bidegree b = pres.generators()[i].bidegree();
        if (b.p > p_max)
            continue;
        if (gens.at(i).size() != model.bar().basis(b.p, b.q).size())
            throw CertificationError("representative of " + pres.generators()[i].name + " has the wrong cell");
        if (!model.cohomology().is_cocycle(b.p, b.q, gens[i]))
            throw CertificationError("representative of " + pres.generators()[i].name + " is not a cocycle");
    }

    std::map<Bidegree, std::vector<Monomial>> cells;
    for (auto& m : pres.monomials_in(w))
        cells[pres.bidegree(m)].push_back(m);
    for (auto& [b, monos] : cells) {
        std::vector<Vector> rows;
        for (auto& m : monos)
            rows.push_back(coords(m));
        std::size_t r = rank(Matrix::from_rows(pres.field(), rows.front().size(), rows));
        if (r != monos.size())
            throw CertificationError("basis monomials are dependent in cohomology at " + cell_text(b));
    }
    cert.checks.push_back("basis monomials independent in " + std::to_string(cells.size()) + " cells");

    auto relation_check = [&](const Monomial& lead, const Element& tail) {
        Bidegree b = pres.bidegree(lead);
        std::string text = pres.format(lead) + " = " + pres.format(tail);
        if (b.p > p_max) {
            cert.checks.push_back(text + " at " + cell_text(b) + ": outside window");
            return;
        }
        Vector lhs = coords(lead);
        Vector rhs = zero_vector(pres.field(), lhs.size());
        for (auto& [m, c] : tail.terms) {
            Vector v = coords(m);
            for (std::size_t k = 0; k < v.size(); ++k)
                rhs[k] += c * v[k];
        }
        if (lhs != rhs)
            throw CertificationError("relation " + text + " fails in cohomology at " + cell_text(b));
        cert.checks.push_back(text + " at " + cell_text(b) + ": ok");
    };
    for (std::size_t i = 0; i < pres.size(); ++i) {
        const auto& g = pres.generators()[i];
        if (g.bound)
            relation_check(pres.generator_monomial(i, *g.bound + 1), pres.zero());
    }
    for (auto& rel : pres.relations())
        relation_check(rel.lead, rel.tail);
    return cert;
}

HHPresentation hh_ring(const Algebra& a, int p_max)
{
    if (a.size() != 1 || a.generators()[0].column != 0 || a.generators()[0].degree <= 0 ||
        a.generators()[0].degree % 2 != 0)
        throw Error("hh_ring needs K[x]/(x^{n+1}) on one generator of positive even degree");
    if (!a.is_finite_dimensional() && a.relations().empty())
        throw Error("hh_ring needs a truncated polynomial algebra");
    const Field f = a.field();
    const int m = a.generators()[0].degree / 2;
    const int n = truncation_height(a);
    if (n < 1)
        throw Error("hh_ring needs n >= 1");
    const long ch = f.characteristic();
    const std::string xname = a.generators()[0].name;
    const int tq = -2 * m * (n + 1);

    HHPresentation out;
    out.module = ModuleSpec::regular(a);
    std::vector<Generator> gens;
    std::vector<Relation> rels;
    enum Rep { coeff, deriv_x, deriv_1, unique_t };
    std::vector<Rep> reps;
    std::vector<std::string> notes;
    Field fld = f;
    auto mono = [](std::initializer_list<int> e) { return Monomial(e); };

    if (ch == 0 || (n + 1) % ch != 0) {
        out.label = "case i: n+1 is a unit";
        gens = {{xname, 2 * m, 0, n}, {"u", 0, 1, 1}, {"t", tq, 2, std::nullopt}};
        rels = {{mono({n, 0, 1}), Element(fld)}, {mono({n, 1, 0}), Element(fld)}};
        reps = {coeff, deriv_x, unique_t};
        out.roles = {{GeneratorRole::coefficient, ""}, {GeneratorRole::derivation, xname}, {GeneratorRole::periodic, ""}};
    } else if (ch != 2) {
        out.label = "case ii: n+1 = 0, odd characteristic";
        gens = {{xname, 2 * m, 0, n}, {"v", -2 * m, 1, 1}, {"t", tq, 2, std::nullopt}};
        reps = {coeff, deriv_1, unique_t};
        out.roles = {{GeneratorRole::coefficient, ""}, {GeneratorRole::derivation, xname}, {GeneratorRole::periodic, ""}};
    } else if (n == 1) {
        out.label = "case iii: characteristic 2, n = 1";
        gens = {{xname, 2 * m, 0, 1}, {"v", -2 * m, 1, std::nullopt}};
        reps = {coeff, deriv_1};
        out.roles = {{GeneratorRole::coefficient, ""}, {GeneratorRole::derivation, xname}};
        notes.push_back("t = v^2");
    } else {
        out.label = "case iii: characteristic 2, n odd";
        long c = ((n + 1) / 2) % 2;
        gens = {{xname, 2 * m, 0, n}, {"v", -2 * m, 1, std::nullopt}, {"t", tq, 2, std::nullopt}};
        Element tail(fld);
        tail.add(mono({n - 1, 0, 1}), Scalar(fld, c));
        rels = {{mono({0, 2, 0}), tail}};
        reps = {coeff, deriv_1, unique_t};
        out.roles = {{GeneratorRole::coefficient, ""}, {GeneratorRole::derivation, xname}, {GeneratorRole::periodic, ""}};
    }
    out.presentation = Algebra(fld, gens, rels, AlgebraKind::general);
    const Algebra& pres = out.presentation;

    ModuleSpec reg = ModuleSpec::regular(a);
    FreeComplex periodic = periodic_hochschild_complex(m, n, reg, p_max);
    CohomologyWindow cw;
    cw.s_lo = 0;
    cw.s_hi = p_max;
    BigradedSeries periodic_dims = cohomology(periodic, cw).dims();

    BarModel model(reg, p_max);
    if (periodic_dims != model.cohomology().dims())
        throw CertificationError("periodic and bar complexes disagree " +
                                 series_mismatch(periodic_dims, model.cohomology().dims()));

    std::vector<Vector> cochains;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Bidegree b = gens[i].bidegree();
        if (b.p > p_max) {
            cochains.emplace_back();
            continue;
        }
        switch (reps[i]) {
        case coeff:
            cochains.push_back(model.coefficient_cochain(a.generator_monomial(0)));
            break;
        case deriv_x:
            cochains.push_back(model.derivation_cochain({a.generator(0)}, b.q));
            break;
        case deriv_1:
            cochains.push_back(model.derivation_cochain({a.one()}, b.q));
            break;
        case unique_t: {
            auto r = model.cohomology().representatives(b.p, b.q);
            if (r.size() != 1)
                throw CertificationError("expected a one-dimensional cell at " + cell_text(b) + ", found " +
                                         std::to_string(r.size()));
            cochains.push_back(r[0]);
            break;
        }
        }
    }

    // scale t so that v^2 = c t x^{n-1} holds on the nose
    if (!rels.empty() && !rels[0].tail.is_zero() && pres.bidegree(rels[0].lead).p <= p_max) {
        Bidegree bv = pres.generators()[1].bidegree(), bt = pres.generators()[2].bidegree();
        Vector vv = model.bar().cup(bv.p, bv.q, cochains[1], bv.p, bv.q, cochains[1]);
        Vector t = cochains[2];
        Bidegree acc = bt;
        for (int k = 0; k < n - 1; ++k) {
            Bidegree bx = pres.generators()[0].bidegree();
            t = model.bar().cup(acc.p, acc.q, t, bx.p, bx.q, cochains[0]);
            acc = acc + bx;
        }
        Vector lhs = model.coordinates(acc.p, acc.q, vv);
        Vector rhs = model.coordinates(acc.p, acc.q, t);
        Scalar c = rels[0].tail.terms.begin()->second;
        if (rhs.size() == 1 && !rhs[0].is_zero() && !lhs[0].is_zero()) {
            Scalar scale = lhs[0] / (rhs[0] * c);
            for (auto& s : cochains[2])
                s *= scale;
        }
    }

    out.certificate = certify_on_bar(pres, cochains, model);
    if (notes.size() == 1 && 2 <= p_max) {
        // n = 1 in characteristic 2: the periodic class t is v^2
        Bidegree bv = pres.generators()[1].bidegree();
        auto r = model.cohomology().representatives(2 * bv.p, 2 * bv.q);
        Vector vv = model.coordinates(2 * bv.p, 2 * bv.q,
                                      model.bar().cup(bv.p, bv.q, cochains[1], bv.p, bv.q, cochains[1]));
        if (r.size() != 1 || vv.size() != 1 || vv[0].is_zero())
            throw CertificationError("v^2 does not span the periodic cell " + cell_text(bv * 2));
        out.certificate.checks.push_back("v^2 = t spans " + cell_text(bv * 2) + ": ok");
    }
    out.certificate.method = "periodic-series+bar-products";
    out.certificate.notes = notes;
    out.certificate.notes.push_back("periodic complex dims equal bar complex dims for p <= " + std::to_string(p_max));
    return out;
}

HHPresentation hh_polynomial(const Algebra& a, int q_lo, int q_hi)
{
    for (auto& g : a.generators())
        if (g.bound || g.degree <= 0 || g.degree % 2 != 0 || g.column != 0)
            throw Error("hh_polynomial needs a polynomial algebra on positive even generators, got '" + g.name + "'");
    if (!a.relations().empty())
        throw Error("hh_polynomial needs a polynomial algebra without relations");
    const Field f = a.field();
    HHPresentation out;
    out.label = "polynomial";
    out.module = ModuleSpec::regular(a);
    std::vector<Generator> gens = a.generators();
    out.roles.assign(gens.size(), {GeneratorRole::coefficient, ""});
    for (auto& g : a.generators()) {
        gens.push_back({"u_" + g.name, -g.degree, 1, 1});
        out.roles.push_back({GeneratorRole::derivation, g.name});
    }
    out.presentation = Algebra(f, gens, {}, AlgebraKind::tensor);

    FreeComplex k = koszul_hochschild_complex(ModuleSpec::regular(a), q_lo, q_hi);
    k.check_square_zero();
    BigradedSeries got = cohomology(k).dims();
    Window w;
    w.q_lo = q_lo;
    w.q_hi = q_hi;
    BigradedSeries want = out.presentation.bigraded_series(w);
    if (want != got)
        throw CertificationError("Koszul series mismatch " + series_mismatch(want, got));
    out.certificate.method = "koszul-series";
    out.certificate.q_lo = q_lo;
    out.certificate.q_hi = q_hi;
    out.certificate.series = got;
    return out;
}

HHPresentation hh_module_coefficients(const ModuleSpec& coefficients, int q_lo, int q_hi)
{
    const Algebra& r = coefficients.ring();
    if (r.size() != 1)
        throw Error("module coefficients are supported over a polynomial ring on one generator");
    const auto& x = r.generators()[0];
    if (x.bound || x.degree <= 0 || x.degree % 2 != 0 || !r.relations().empty())
        throw Error("module coefficients need K[x] with |x| even and positive");
    const Algebra& c = coefficients.coefficients();
    if (c.has_columns())
        throw Error("coefficient algebra must be singly graded");
    const Field f = r.field();
    HHPresentation out;
    out.label = "module coefficients";
    out.module = coefficients;
    std::vector<Generator> gens = c.generators();
    out.roles.assign(gens.size(), {GeneratorRole::coefficient, ""});
    if (c.index_of("y"))
        throw Error("coefficient algebra already has a generator named 'y'");
    gens.push_back({"y", -x.degree, 1, 1});
    out.roles.push_back({GeneratorRole::derivation, x.name});
    out.presentation = Algebra(f, gens, c.relations(), AlgebraKind::tensor);

    FreeComplex k = koszul_hochschild_complex(coefficients, q_lo, q_hi);
    k.check_square_zero();
    BigradedSeries got = cohomology(k).dims();
    Window w;
    w.q_lo = q_lo;
    w.q_hi = q_hi;
    BigradedSeries want = out.presentation.bigraded_series(w);
    if (want != got)
        throw CertificationError("Koszul series mismatch " + series_mismatch(want, got));
    out.certificate.method = "koszul-series";
    out.certificate.q_lo = q_lo;
    out.certificate.q_hi = q_hi;
    out.certificate.series = got;
    return out;
}

HHPresentation hh_exterior(const ModuleSpec& coefficients, int p_max, const std::map<std::string, std::string>& names)
{
    const Algebra& r = coefficients.ring();
    const Algebra& c = coefficients.coefficients();
    const Field f = r.field();
    for (auto& g : r.generators()) {
        bool exterior = g.bound && *g.bound == 1 && g.column == 0 && g.degree > 0 &&
                        (g.degree % 2 != 0 || f.characteristic() == 2);
        if (!exterior)
            throw Error("hh_exterior needs exterior generators, got '" + g.name + "'");
    }
    if (!r.relations().empty())
        throw Error("hh_exterior needs an exterior algebra without extra relations");
    HHPresentation out;
    out.label = "exterior";
    out.module = coefficients;
    std::vector<Generator> gens = c.generators();
    out.roles.assign(gens.size(), {GeneratorRole::coefficient, ""});
    for (auto& g : r.generators()) {
        auto it = names.find(g.name);
        std::string name = it != names.end() ? it->second : "nu_" + g.name;
        gens.push_back({name, -g.degree, 1, std::nullopt});
        out.roles.push_back({GeneratorRole::derivation, g.name});
    }
    out.presentation = Algebra(f, gens, c.relations(), AlgebraKind::tensor);

    BarModel model(coefficients, p_max);
    std::vector<Vector> cochains;
    for (std::size_t i = 0; i < c.size(); ++i)
        cochains.push_back(model.coefficient_cochain(c.generator_monomial(i)));
    for (std::size_t j = 0; j < r.size(); ++j) {
        std::vector<Element> values(r.size(), c.zero());
        values[j] = c.one();
        cochains.push_back(model.derivation_cochain(values, -r.generators()[j].degree));
    }
    out.certificate = certify_on_bar(out.presentation, cochains, model);
    return out;
}

BigradedSeries bigraded_product(const BigradedSeries& a, const BigradedSeries& b)
{
    BigradedSeries r;
    for (auto& [ba, da] : a)
        for (auto& [bb, db] : b)
            r[ba + bb] += da * db;
    return r;
}

HHPresentation hh_kunneth(const HHPresentation& a, const HHPresentation& b)
{
    if (a.presentation.field() != b.presentation.field())
        throw FieldError("Kunneth product of presentations over different fields");
    HHPresentation out;
    out.presentation = tensor(a.presentation, b.presentation);
    out.roles = a.roles;
    out.roles.insert(out.roles.end(), b.roles.begin(), b.roles.end());
    out.label = a.label + " (x) " + b.label;
    if (a.module && b.module) {
        const auto& ma = *a.module;
        const auto& mb = *b.module;
        Algebra ring = tensor(ma.ring(), mb.ring());
        Algebra coeff = tensor(ma.coefficients(), mb.coefficients());
        std::vector<Element> images;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const auto& src = i < ma.ring().size() ? ma : mb;
            std::size_t k = i < ma.ring().size() ? i : i - ma.ring().size();
            images.push_back(rename_element(src.coefficients(), coeff, src.action.images()[k]));
        }
        out.module = ModuleSpec{AlgebraMorphism(ring, coeff, images)};
    }
    auto& cert = out.certificate;
    cert.method = "kunneth";
    if (a.certificate.p_max && b.certificate.p_max)
        cert.p_max = std::min(*a.certificate.p_max, *b.certificate.p_max);
    else
        cert.p_max = a.certificate.p_max ? a.certificate.p_max : b.certificate.p_max;
    Window w;
    w.p_lo = 0;
    w.p_hi = cert.p_max;
    if (!a.certificate.q_lo && !b.certificate.q_lo) {
        // both factors bar-certified: compare the tensor against the factor series
        BigradedSeries sa = a.presentation.bigraded_series(w), sb = b.presentation.bigraded_series(w);
        BigradedSeries prod;
        for (auto& [bd, d] : bigraded_product(sa, sb))
            if (!cert.p_max || bd.p <= *cert.p_max)
                prod[bd] = d;
        BigradedSeries got = out.presentation.bigraded_series(w);
        if (got != prod)
            throw CertificationError("tensor presentation series differs from the product of factor series");
        cert.series = got;
    }
    cert.notes.push_back("tensor of certified presentations over a field: " + a.label + "; " + b.label);
    cert.checks = a.certificate.checks;
    cert.checks.insert(cert.checks.end(), b.certificate.checks.begin(), b.certificate.checks.end());
    return out;
}

InducedMap hh_induced_map(InducedDirection dir, const AlgebraMorphism& morphism, const HHPresentation& source,
                          const HHPresentation& target)
{
    const Algebra& sp = source.presentation;
    const Algebra& tp = target.presentation;
    if (sp.field() != tp.field())
        throw FieldError("induced map between presentations over different fields");
    InducedMap out{sp, tp, {}};
    auto derivation_for = [&](const std::string& ring_gen) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < tp.size(); ++i)
            if (target.roles.at(i).kind == GeneratorRole::derivation && target.roles[i].dual_of == ring_gen)
                return i;
        return std::nullopt;
    };

    for (std::size_t i = 0; i < sp.size(); ++i) {
        const auto& g = sp.generators()[i];
        const auto& role = source.roles.at(i);
        Element img(tp.field());
        if (role.kind == GeneratorRole::periodic)
            throw MorphismError("induced maps on periodic generators are not supported");
        if (dir == InducedDirection::coefficients) {
            if (role.kind == GeneratorRole::coefficient) {
                const Algebra& c1 = morphism.source();
                img = rename_element(morphism.target(), tp, morphism.apply(c1.generator(c1.require_index(g.name))));
            } else {
                auto j = derivation_for(role.dual_of);
                if (!j)
                    throw MorphismError("target has no class dual to '" + role.dual_of + "'");
                img = tp.generator(*j);
            }
        } else {
            if (role.kind == GeneratorRole::coefficient) {
                img = tp.generator(tp.require_index(g.name));
            } else {
                if (!source.module)
                    throw MorphismError("source presentation does not record its module");
                const ModuleSpec& mod = *source.module;
                const Algebra& ring = mod.ring();
                if (!(morphism.target().generators().size() == ring.size()))
                    throw MorphismError("ring map does not land in the source ring");
                std::vector<Element> values(ring.size(), mod.coefficients().zero());
                values[ring.require_index(role.dual_of)] = mod.coefficients().one();
                int degree = g.degree;
                const Algebra& small = morphism.source();
                for (std::size_t h = 0; h < small.size(); ++h) {
                    Element val(mod.coefficients().field());
                    for (auto& [m, c] : morphism.images()[h].terms)
                        val = val + derivation_value(mod, values, degree, m).scaled(c);
                    if (val.is_zero())
                        continue;
                    auto j = derivation_for(small.generators()[h].name);
                    if (!j)
                        throw MorphismError("target has no class dual to '" + small.generators()[h].name + "'");
                    img = img + tp.multiply(rename_element(mod.coefficients(), tp, val), tp.generator(*j));
                }
            }
        }
        for (auto& [m, c] : img.terms)
            if (tp.bidegree(m) != g.bidegree())
                throw MorphismError("image of '" + g.name + "' has bidegree " + cell_text(tp.bidegree(m)) +
                                    ", expected " + cell_text(g.bidegree()));
        out.images.emplace(g.name, img);
    }
    return out;
}

}  // namespace emss
