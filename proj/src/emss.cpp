#include "emss/emss.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace emss {

namespace {

std::string cell_text(const Bidegree& b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

bool is_regular(const ModuleSpec& mod)
{
    const Algebra& m = mod.ring();
    const Algebra& c = mod.coefficients();
    if (m.size() != c.size() || m.relations().size() != c.relations().size())
        return false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& a = m.generators()[i];
        const auto& b = c.generators()[i];
        if (a.name != b.name || a.degree != b.degree || a.bound != b.bound)
            return false;
        if (!(mod.action.images()[i] == c.generator(i)))
            return false;
    }
    return true;
}

bool exterior_generator(const Generator& g, const Field& f)
{
    return g.bound && *g.bound == 1 && g.column == 0 && g.degree > 0 &&
           (g.degree % 2 != 0 || f.characteristic() == 2);
}

bool polynomial_generator(const Generator& g)
{
    return !g.bound && g.column == 0 && g.degree > 0 && g.degree % 2 == 0;
}

// Exponent bound, or the largest exponent a pure-power relation lead leaves normal.
std::optional<int> effective_cap(const Algebra& a, std::size_t i)
{
    std::optional<int> cap = a.generators()[i].bound;
    for (auto& r : a.relations()) {
        bool pure = r.lead[i] > 0;
        for (std::size_t k = 0; k < a.size() && pure; ++k)
            pure = k == i || r.lead[k] == 0;
        if (pure)
            cap = std::min(cap.value_or(r.lead[i] - 1), r.lead[i] - 1);
    }
    return cap;
}

// Every normal monomial avoiding generator `skip` (all others bounded).
std::vector<Monomial> bounded_part(const Algebra& a, std::optional<std::size_t> skip)
{
    std::vector<Monomial> out;
    Monomial m = a.unit_monomial();
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == a.size()) {
            out.push_back(m);
            return;
        }
        if (skip && k == *skip) {
            rec(k + 1);
            return;
        }
        int cap = effective_cap(a, k).value_or(0);
        for (int e = 0; e <= cap; ++e) {
            m[k] = e;
            rec(k + 1);
        }
        m[k] = 0;
    };
    rec(0);
    return out;
}

std::optional<std::pair<Monomial, Monomial>> find_pair(const Algebra& a, const std::vector<Monomial>& monos)
{
    std::map<Bidegree, Monomial> cells;
    for (auto& m : monos)
        cells.emplace(a.bidegree(m), m);
    for (auto& [s, ms] : cells)
        for (auto it = cells.upper_bound({s.p + 1, std::numeric_limits<int>::max()}); it != cells.end(); ++it) {
            const Bidegree& t = it->first;
            int r = t.p - s.p;
            if (r >= 2 && t.q == s.q - r + 1)
                return std::make_pair(ms, it->second);
        }
    return std::nullopt;
}

}  // namespace

std::string to_string(CollapseCertificate::Kind k)
{
    return k == CollapseCertificate::sparsity_forced ? "sparsity_forced" : "cited_theorem";
}

std::string page_fingerprint(const E2Page& page)
{
    const Algebra& a = page.presentation();
    std::string s = "char=" + std::to_string(a.field().characteristic()) + ";shift=" + std::to_string(page.shift) + ";";
    for (auto& g : a.generators()) {
        s += g.name + cell_text(g.bidegree());
        if (g.bound)
            s += "^" + std::to_string(*g.bound);
        s += ";";
    }
    for (auto& r : a.relations())
        s += a.format(r.lead) + "=" + a.format(r.tail) + ";";
    return s;
}

E2Page build_e2(const ModuleSpec& mod, int dim_n, const E2Options& opt)
{
    const Algebra& m = mod.ring();
    const Algebra& c = mod.coefficients();
    const Field& f = m.field();
    E2Page page;
    page.shift = dim_n;
    page.relative = !is_regular(mod);

    auto all = [&](auto pred) {
        return std::all_of(m.generators().begin(), m.generators().end(), pred);
    };
    if (m.size() == 0) {
        page.hh.presentation = c;
        page.hh.roles.assign(c.size(), {GeneratorRole::coefficient, ""});
        page.hh.label = "ground ring";
        page.hh.module = mod;
        page.hh.certificate.method = "ground-ring";
        page.hh.certificate.notes.push_back("Hochschild cohomology of the ground field is the coefficients in degree 0");
        return page;
    }
    if (!page.relative) {
        const auto& g0 = m.generators()[0];
        if (m.size() == 1 && g0.bound && g0.degree > 0 && g0.degree % 2 == 0 && g0.column == 0) {
            page.hh = hh_ring(m, opt.p_max);
        } else if (all([&](const Generator& g) { return exterior_generator(g, f); }) && m.relations().empty()) {
            if (m.size() == 1) {
                page.hh = hh_exterior(mod, opt.p_max, {{g0.name, "v"}});
            } else {
                std::optional<HHPresentation> acc;
                for (auto& g : m.generators()) {
                    Algebra single(f, {g}, {}, AlgebraKind::exterior);
                    HHPresentation h = hh_exterior(ModuleSpec::regular(single), opt.p_max);
                    acc = acc ? hh_kunneth(*acc, h) : h;
                }
                page.hh = *acc;
                page.hh.label = "exterior (Kunneth)";
                if (m.size() <= 3) {
                    BarModel direct(mod, opt.p_max);
                    Window w;
                    w.p_lo = 0;
                    w.p_hi = opt.p_max;
                    if (direct.cohomology().dims() != page.hh.presentation.bigraded_series(w))
                        throw CertificationError("Kunneth presentation disagrees with the bar complex of the product");
                    page.hh.certificate.notes.push_back("series checked against the bar complex of the whole algebra");
                }
            }
        } else if (all(polynomial_generator) && m.relations().empty()) {
            page.hh = hh_polynomial(m, opt.q_lo, opt.q_hi);
        } else {
            throw UnsupportedAlgebra("no Hochschild presentation for this algebra: supported are K[x]/(x^{n+1}), "
                                     "exterior and polynomial algebras");
        }
    } else {
        if (m.size() == 1 && polynomial_generator(m.generators()[0]) && m.relations().empty()) {
            int lo = opt.q_lo, hi = opt.q_hi;
            if (c.is_finite_dimensional()) {
                int top = 0;
                for (auto& b : c.full_basis())
                    top = std::max(top, c.bidegree(b).q);
                lo = std::min(lo, -m.generators()[0].degree);
                hi = std::max(hi, top);
            }
            page.hh = hh_module_coefficients(mod, lo, hi);
        } else if (all([&](const Generator& g) { return exterior_generator(g, f); }) && m.relations().empty()) {
            page.hh = hh_exterior(mod, opt.p_max);
        } else {
            throw UnsupportedAlgebra("module coefficients are supported over K[x] and exterior algebras only");
        }
    }
    for (auto& g : page.hh.presentation.generators())
        if (g.column < 0)
            throw Error("E2 page has a generator left of column 0");
    return page;
}

SparsityOutcome collapse_by_sparsity(const E2Page& page, const Window& w)
{
    const Algebra& a = page.presentation();
    SparsityOutcome out;
    auto certify = [&](std::string detail) {
        CollapseCertificate c;
        c.kind = CollapseCertificate::sparsity_forced;
        c.detail = std::move(detail);
        c.page_fingerprint = page_fingerprint(page);
        out.certificate = c;
        return out;
    };
    auto refuse = [&](const Monomial& s, const Monomial& t, std::string why) {
        Bidegree bs = a.bidegree(s), bt = a.bidegree(t);
        out.witness = std::make_pair(bs, bt);
        out.witness_monomials = std::make_pair(a.format(s), a.format(t));
        out.reason = std::move(why) + ": d_" + std::to_string(bt.p - bs.p) + " could map " + a.format(s) + " at " +
                     cell_text(bs) + " to " + a.format(t) + " at " + cell_text(bt) +
                     "; collapse needs a cited theorem (assume_collapse)";
        return out;
    };

    std::vector<std::size_t> unbounded;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!effective_cap(a, i))
            unbounded.push_back(i);

    if (unbounded.empty()) {
        std::vector<Monomial> monos;
        for (auto& m : bounded_part(a, std::nullopt))
            if (a.is_normal(m))
                monos.push_back(m);
        if (auto pr = find_pair(a, monos))
            return refuse(pr->first, pr->second, "finite page");
        return certify("finite page with " + std::to_string(monos.size()) +
                       " basis monomials: no pair of nonzero cells is joined by any d_r, r >= 2");
    }

    bool columns_bounded = std::none_of(unbounded.begin(), unbounded.end(),
                                        [&](std::size_t i) { return a.generators()[i].column > 0; });
    if (columns_bounded) {
        int top = 0;
        for (auto& m : bounded_part(a, std::nullopt))
            if (a.is_normal(m))
                top = std::max(top, a.bidegree(m).p);
        if (top <= 1)
            return certify("all classes lie in columns 0 and 1, so every d_r with r >= 2 has zero target");
    }

    if (unbounded.size() == 1) {
        const std::size_t gi = unbounded[0];
        const Bidegree gb = a.generators()[gi].bidegree();
        const long total = gb.p + gb.q;
        int j0 = 0;
        for (auto& r : a.relations())
            j0 = std::max(j0, r.lead[gi]);
        auto with_power = [&](const Monomial& w, long j) {
            Monomial m = w;
            m[gi] = static_cast<int>(j);
            return m;
        };
        const auto family = bounded_part(a, gi);
        long pairs = 0;
        for (auto& w1 : family)
            for (auto& w2 : family) {
                Bidegree b1 = a.bidegree(w1), b2 = a.bidegree(w2);
                long ds = (b2.p + b2.q) - (b1.p + b1.q);
                long dp = b2.p - b1.p;
                std::vector<long> steps;
                if (total != 0) {
                    if ((1 - ds) % total != 0)
                        continue;
                    long d = (1 - ds) / total;
                    if (dp + d * gb.p < 2)
                        continue;
                    steps.push_back(d);
                } else {
                    if (ds != 1)
                        continue;
                    if (gb.p == 0)
                        throw InfiniteBasis("unbounded generator of total degree 0 in column 0");
                    long need = 2 - dp;
                    long dmin = need <= 0 ? -((-need) / gb.p) : (need + gb.p - 1) / gb.p;
                    for (long d = dmin; d <= dmin + 2 * j0 + 2; ++d)
                        steps.push_back(d);
                }
                ++pairs;
                for (long d : steps) {
                    long start = std::max(0L, -d);
                    for (long j1 = start; j1 <= start + j0 + 1; ++j1) {
                        Monomial s = with_power(w1, j1), t = with_power(w2, j1 + d);
                        if (a.is_normal(s) && a.is_normal(t))
                            return refuse(s, t, "periodic family");
                    }
                }
            }
        const auto& g = a.generators()[gi];
        return certify("one unbounded generator " + g.name + " at " + cell_text(gb) +
                       ": for every pair of the " + std::to_string(family.size()) +
                       " bounded monomial families the degree equation S + d*" + std::to_string(total) +
                       " = 1 has no solution with r >= 2 and both classes nonzero (" + std::to_string(pairs) +
                       " degree-compatible pairs, none with both classes nonzero)");
    }

    Window scan = w;
    if (!scan.p_lo)
        scan.p_lo = 0;
    if (!scan.p_hi)
        throw WindowTooNarrow("several unbounded generators: a p bound is required to scan for differentials");
    if (scan.q_lo)
        scan.q_lo = *scan.q_lo - (*scan.p_hi - *scan.p_lo);
    std::vector<Monomial> monos;
    try {
        monos = a.monomials_in(scan);
    } catch (const InfiniteBasis& e) {
        throw WindowTooNarrow(std::string("window does not bound the page: ") + e.what());
    }
    if (auto pr = find_pair(a, monos))
        return refuse(pr->first, pr->second, "window scan");
    throw WindowTooNarrow("several unbounded generators and no witness in the window: cannot decide by sparsity");
}

CollapseCertificate assume_collapse(const E2Page& page, const std::string& citation)
{
    if (citation.find_first_not_of(" \t") == std::string::npos)
        throw Error("assume_collapse needs a nonempty citation");
    CollapseCertificate c;
    c.kind = CollapseCertificate::cited_theorem;
    c.detail = "collapse at E2 assumed from: " + citation;
    c.citations = {citation};
    c.page_fingerprint = page_fingerprint(page);
    return c;
}

EInfinityPage einfinity(const E2Page& page, const CollapseCertificate& cert)
{
    if (cert.page_fingerprint != page_fingerprint(page))
        throw Error("collapse certificate belongs to a different page");
    return {page, cert};
}

}  // namespace emss
