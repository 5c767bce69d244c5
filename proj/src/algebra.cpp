#include "emss/algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace emss {

Element Element::monomial(const Field& f, const Monomial& m, const Scalar& c)
{
    Element e(f);
    e.add(m, c);
    return e;
}

void Element::add(const Monomial& m, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms.erase(it);
}

Element Element::operator+(const Element& o) const
{
    Element r = *this;
    for (auto& [m, c] : o.terms)
        r.add(m, c);
    return r;
}

Element Element::operator-(const Element& o) const
{
    Element r = *this;
    for (auto& [m, c] : o.terms)
        r.add(m, -c);
    return r;
}

Element Element::scaled(const Scalar& c) const
{
    Element r(field);
    if (c.is_zero())
        return r;
    for (auto& [m, a] : terms)
        r.terms.emplace(m, a * c);
    return r;
}

Scalar Element::coefficient(const Monomial& m) const
{
    auto it = terms.find(m);
    return it == terms.end() ? Scalar::zero(field) : it->second;
}

std::string to_string(AlgebraKind k)
{
    switch (k) {
    case AlgebraKind::polynomial: return "polynomial";
    case AlgebraKind::truncated_polynomial: return "truncated_polynomial";
    case AlgebraKind::exterior: return "exterior";
    case AlgebraKind::tensor: return "tensor";
    case AlgebraKind::general: return "general";
    }
    return "general";
}

AlgebraKind kind_from_string(const std::string& s)
{
    for (auto k : {AlgebraKind::polynomial, AlgebraKind::truncated_polynomial, AlgebraKind::exterior,
                   AlgebraKind::tensor, AlgebraKind::general})
        if (to_string(k) == s)
            return k;
    throw Error("unknown algebra kind '" + s + "'");
}

bool Window::contains(const Bidegree& b) const
{
    if (p_lo && b.p < *p_lo) return false;
    if (p_hi && b.p > *p_hi) return false;
    if (q_lo && b.q < *q_lo) return false;
    if (q_hi && b.q > *q_hi) return false;
    if (cototal && b.cototal() != *cototal) return false;
    return true;
}

Algebra::Algebra(Field field, std::vector<Generator> generators, std::vector<Relation> relations,
                 AlgebraKind kind)
    : field_(field), gens_(std::move(generators)), rels_(std::move(relations)), kind_(kind)
{
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        auto& g = gens_[i];
        if (g.name.empty())
            throw Error("generator without a name");
        for (std::size_t j = 0; j < i; ++j)
            if (gens_[j].name == g.name)
                throw Error("duplicate generator name '" + g.name + "'");
        if (g.column < 0)
            throw Error("generator '" + g.name + "' has negative column");
        if (g.bound && *g.bound < 0)
            throw Error("generator '" + g.name + "' has negative exponent bound");
        // odd generators square to zero by graded commutativity
        if (field_.characteristic() != 2 && g.parity() == 1)
            g.bound = std::min(g.bound.value_or(1), 1);
    }
    for (auto& r : rels_) {
        if (r.lead.size() != gens_.size())
            throw Error("relation lead has wrong arity");
        for (auto& [m, c] : r.tail.terms) {
            if (m.size() != gens_.size())
                throw Error("relation tail has wrong arity");
            if (bidegree(m) != bidegree(r.lead))
                throw Error("inhomogeneous relation " + format(r.lead) + " = " + format(r.tail));
        }
    }
}

Algebra Algebra::ground(const Field& f) { return Algebra(f, {}, {}, AlgebraKind::polynomial); }

std::optional<std::size_t> Algebra::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t Algebra::require_index(const std::string& name) const
{
    auto i = index_of(name);
    if (!i)
        throw Error("unknown generator '" + name + "'");
    return *i;
}

bool Algebra::is_finite_dimensional() const
{
    return std::all_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.bound.has_value(); });
}

bool Algebra::has_columns() const
{
    return std::any_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.column != 0; });
}

Bidegree Algebra::bidegree(const Monomial& m) const
{
    Bidegree b;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        b = b + gens_[i].bidegree() * m[i];
    return b;
}

int Algebra::parity(const Monomial& m) const
{
    int s = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        s += gens_[i].parity() * m[i];
    return s & 1;
}

bool Algebra::is_normal(const Monomial& m) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (m[i] < 0)
            return false;
        if (gens_[i].bound && m[i] > *gens_[i].bound)
            return false;
    }
    for (auto& r : rels_) {
        bool divides = true;
        for (std::size_t i = 0; i < gens_.size() && divides; ++i)
            divides = r.lead[i] <= m[i];
        if (divides)
            return false;
    }
    return true;
}

std::vector<int> Algebra::exponent_caps(const Window& w) const
{
    const int n = static_cast<int>(gens_.size());
    std::vector<int> caps(n, -1);
    for (int i = 0; i < n; ++i) {
        if (gens_[i].bound)
            caps[i] = *gens_[i].bound;
        if (gens_[i].column > 0 && w.p_hi) {
            int c = std::max(0, *w.p_hi) / gens_[i].column;
            caps[i] = caps[i] < 0 ? c : std::min(caps[i], c);
        }
    }
    std::vector<int> open;
    for (int i = 0; i < n; ++i)
        if (caps[i] < 0)
            open.push_back(i);
    if (open.empty())
        return caps;

    // Bound the remaining exponents through a degree equation: either the fixed
    // cototal degree or the q window, whichever applies.
    const bool use_total = w.cototal.has_value();
    auto weight = [&](int i) { return use_total ? gens_[i].column + gens_[i].degree : gens_[i].degree; };
    long lo_others = 0, hi_others = 0;
    for (int i = 0; i < n; ++i)
        if (caps[i] >= 0) {
            long c = static_cast<long>(caps[i]) * weight(i);
            lo_others += std::min(0L, c);
            hi_others += std::max(0L, c);
        }
    bool pos = false, neg = false;
    for (int i : open) {
        if (weight(i) == 0)
            throw InfiniteBasis("generator '" + gens_[i].name + "' has degree 0 and no exponent bound");
        (weight(i) > 0 ? pos : neg) = true;
    }
    if (pos && neg)
        throw InfiniteBasis("unbounded generators of both signs: infinitely many monomials in window");
    std::optional<int> target_hi = use_total ? w.cototal : w.q_hi;
    std::optional<int> target_lo = use_total ? w.cototal : w.q_lo;
    if (pos && !target_hi)
        throw InfiniteBasis("window has no upper degree bound for an unbounded generator");
    if (neg && !target_lo)
        throw InfiniteBasis("window has no lower degree bound for an unbounded generator");
    for (int i : open) {
        long d = weight(i);
        long room = d > 0 ? *target_hi - lo_others : hi_others - *target_lo;
        caps[i] = room < 0 ? 0 : static_cast<int>(room / std::labs(d));
    }
    return caps;
}

std::vector<Monomial> Algebra::monomials_in(const Window& w) const
{
    const std::size_t n = gens_.size();
    auto caps = exponent_caps(w);
    // suffix ranges of (p, q) for pruning
    std::vector<long> plo(n + 1, 0), phi(n + 1, 0), qlo(n + 1, 0), qhi(n + 1, 0);
    for (std::size_t k = n; k-- > 0;) {
        long cp = static_cast<long>(caps[k]) * gens_[k].column;
        long cq = static_cast<long>(caps[k]) * gens_[k].degree;
        plo[k] = plo[k + 1] + std::min(0L, cp);
        phi[k] = phi[k + 1] + std::max(0L, cp);
        qlo[k] = qlo[k + 1] + std::min(0L, cq);
        qhi[k] = qhi[k + 1] + std::max(0L, cq);
    }
    std::vector<Monomial> out;
    Monomial m(n, 0);
    std::function<void(std::size_t, long, long)> rec = [&](std::size_t k, long p, long q) {
        if (w.p_hi && p + plo[k] > *w.p_hi) return;
        if (w.p_lo && p + phi[k] < *w.p_lo) return;
        if (w.q_hi && q + qlo[k] > *w.q_hi) return;
        if (w.q_lo && q + qhi[k] < *w.q_lo) return;
        if (w.cototal && (p + q + plo[k] + qlo[k] > *w.cototal || p + q + phi[k] + qhi[k] < *w.cototal))
            return;
        if (k == n) {
            Bidegree b{static_cast<int>(p), static_cast<int>(q)};
            if (w.contains(b) && is_normal(m))
                out.push_back(m);
            return;
        }
        for (int e = 0; e <= caps[k]; ++e) {
            m[k] = e;
            rec(k + 1, p + static_cast<long>(e) * gens_[k].column, q + static_cast<long>(e) * gens_[k].degree);
        }
        m[k] = 0;
    };
    rec(0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> Algebra::basis(const Bidegree& b) const
{
    Window w;
    w.p_lo = w.p_hi = b.p;
    w.q_lo = w.q_hi = b.q;
    return monomials_in(w);
}

std::vector<Monomial> Algebra::basis_in_degree(int degree) const
{
    return basis({0, degree});
}

std::vector<Monomial> Algebra::full_basis() const
{
    if (!is_finite_dimensional())
        throw InfiniteBasis("algebra is not finite dimensional");
    return monomials_in(Window{});
}

DimensionSeries Algebra::hilbert_series(int lo, int hi) const
{
    Window w;
    w.p_lo = w.p_hi = 0;
    w.q_lo = lo;
    w.q_hi = hi;
    DimensionSeries s;
    for (auto& m : monomials_in(w))
        s.add(bidegree(m).q, 1);
    return s;
}

BigradedSeries Algebra::bigraded_series(const Window& w) const
{
    BigradedSeries s;
    for (auto& m : monomials_in(w))
        ++s[bidegree(m)];
    return s;
}

Monomial Algebra::generator_monomial(std::size_t i, int e) const
{
    Monomial m = unit_monomial();
    m.at(i) = e;
    return m;
}

Element Algebra::one() const { return Element::monomial(field_, unit_monomial(), Scalar::one(field_)); }

Element Algebra::generator(std::size_t i) const
{
    return reduce(Element::monomial(field_, generator_monomial(i), Scalar::one(field_)));
}

Element Algebra::from_monomial(const Monomial& m, const Scalar& c) const
{
    return reduce(Element::monomial(field_, m, c));
}

int Algebra::koszul_sign(const Monomial& a, const Monomial& b) const
{
    if (field_.characteristic() == 2)
        return 1;
    // move each factor of b left past the higher-indexed factors of a
    long odd = 0;
    for (std::size_t j = 0; j < gens_.size(); ++j) {
        if (!b[j] || !gens_[j].parity())
            continue;
        for (std::size_t i = j + 1; i < gens_.size(); ++i)
            if (gens_[i].parity())
                odd += static_cast<long>(a[i]) * b[j];
    }
    return (odd & 1) ? -1 : 1;
}

Element Algebra::reduce(const Element& e) const
{
    Element out(field_);
    std::map<Monomial, Scalar> pending = e.terms;
    std::size_t steps = 0;
    while (!pending.empty()) {
        if (++steps > 1000000)
            throw Error("relation rewriting does not terminate");
        auto it = std::prev(pending.end());
        Monomial m = it->first;
        Scalar c = it->second;
        pending.erase(it);
        if (c.is_zero())
            continue;
        bool over = false;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].bound && m[i] > *gens_[i].bound)
                over = true;
        if (over)
            continue;
        const Relation* rule = nullptr;
        for (auto& r : rels_) {
            bool divides = true;
            for (std::size_t i = 0; i < gens_.size() && divides; ++i)
                divides = r.lead[i] <= m[i];
            if (divides) {
                rule = &r;
                break;
            }
        }
        if (!rule) {
            out.add(m, c);
            continue;
        }
        // m = sign * lead * rest, so m -> sign * tail * rest
        Monomial rest(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            rest[i] = m[i] - rule->lead[i];
        Scalar sc = koszul_sign(rule->lead, rest) > 0 ? c : -c;
        for (auto& [tm, tc] : rule->tail.terms) {
            Monomial prod(m.size());
            for (std::size_t i = 0; i < m.size(); ++i)
                prod[i] = tm[i] + rest[i];
            Scalar v = sc * tc;
            if (koszul_sign(tm, rest) < 0)
                v = -v;
            auto [pit, inserted] = pending.emplace(prod, v);
            if (!inserted)
                pit->second += v;
        }
    }
    return out;
}

Element Algebra::multiply(const Monomial& a, const Monomial& b) const
{
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        m[i] = a[i] + b[i];
    long s = koszul_sign(a, b);
    return reduce(Element::monomial(field_, m, Scalar(field_, s)));
}

Element Algebra::multiply(const Element& a, const Element& b) const
{
    Element raw(field_);
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            Monomial m(ma.size());
            for (std::size_t i = 0; i < ma.size(); ++i)
                m[i] = ma[i] + mb[i];
            Scalar c = ca * cb;
            raw.add(m, koszul_sign(ma, mb) > 0 ? c : -c);
        }
    return reduce(raw);
}

Element Algebra::power(const Element& a, int k) const
{
    Element r = one();
    for (int i = 0; i < k; ++i)
        r = multiply(r, a);
    return r;
}

Element Algebra::commutator(const Monomial& a, const Monomial& b) const
{
    Element ab = multiply(a, b);
    Element ba = multiply(b, a);
    if (parity(a) & parity(b))
        return ab + ba;
    return ab - ba;
}

std::string Algebra::format(const Monomial& m) const
{
    std::string s;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (!m[i])
            continue;
        if (!s.empty())
            s += "*";
        s += gens_[i].name;
        if (m[i] != 1)
            s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string Algebra::format(const Element& e) const
{
    if (e.is_zero())
        return "0";
    std::string s;
    for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it) {
        auto& [m, c] = *it;
        std::string cs = c.str();
        bool negative = !cs.empty() && cs[0] == '-';
        if (negative)
            cs = cs.substr(1);
        if (s.empty())
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        std::string ms = format(m);
        if (cs == "1")
            s += ms;
        else if (ms == "1")
            s += cs;
        else
            s += cs + "*" + ms;
    }
    return s;
}

Monomial Algebra::parse_monomial(const std::string& text) const
{
    Monomial m = unit_monomial();
    std::string t;
    for (char ch : text)
        if (ch != ' ')
            t += ch;
    if (t.empty() || t == "1")
        return m;
    std::stringstream ss(t);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        auto caret = factor.find('^');
        std::string name = factor.substr(0, caret);
        int e = 1;
        if (caret != std::string::npos) {
            try {
                e = std::stoi(factor.substr(caret + 1));
            } catch (const std::exception&) {
                throw Error("malformed exponent in '" + factor + "'");
            }
        }
        m[require_index(name)] += e;
    }
    return m;
}

Algebra tensor(const Algebra& a, const Algebra& b)
{
    if (a.field() != b.field())
        throw FieldError("tensor product of algebras over different fields");
    std::vector<Generator> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    const std::size_t na = a.size(), nb = b.size();
    auto widen = [&](const Monomial& m, bool first) {
        Monomial r(na + nb, 0);
        std::copy(m.begin(), m.end(), r.begin() + (first ? 0 : na));
        return r;
    };
    std::vector<Relation> rels;
    for (int side = 0; side < 2; ++side)
        for (auto& r : (side == 0 ? a : b).relations()) {
            Relation w{widen(r.lead, side == 0), Element(a.field())};
            for (auto& [m, c] : r.tail.terms)
                w.tail.add(widen(m, side == 0), c);
            rels.push_back(std::move(w));
        }
    AlgebraKind kind = AlgebraKind::tensor;
    if (na == 0)
        kind = b.kind();
    else if (nb == 0)
        kind = a.kind();
    return Algebra(a.field(), std::move(gens), std::move(rels), kind);
}

int gorenstein_dimension(const Algebra& a)
{
    int d = 0;
    for (auto& g : a.generators()) {
        if (g.bound || g.degree % 2 != 0 || g.column != 0)
            throw Error("Gorenstein dimension formula needs a polynomial algebra on even generators, got '" +
                        g.name + "'");
        d -= g.degree - 1;
    }
    if (!a.relations().empty())
        throw Error("Gorenstein dimension formula needs a polynomial algebra without relations");
    return d;
}

AlgebraMorphism::AlgebraMorphism(Algebra source, Algebra target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (source_.field() != target_.field())
        throw FieldError("morphism between algebras over different fields");
    if (images_.size() != source_.size())
        throw MorphismError("morphism needs one image per source generator");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        images_[i] = target_.reduce(images_[i]);
        const auto& g = source_.generators()[i];
        for (auto& [m, c] : images_[i].terms)
            if (target_.bidegree(m) != g.bidegree())
                throw MorphismError("image of '" + g.name + "' is not of degree " + std::to_string(g.degree));
    }
    for (std::size_t i = 0; i < images_.size(); ++i) {
        const auto& g = source_.generators()[i];
        if (g.bound && !target_.power(images_[i], *g.bound + 1).is_zero())
            throw MorphismError("relation " + g.name + "^" + std::to_string(*g.bound + 1) +
                                " = 0 does not hold in the target");
    }
    for (auto& r : source_.relations()) {
        Element lhs = apply(r.lead);
        Element rhs = apply(r.tail);
        if (!(lhs - rhs).is_zero())
            throw MorphismError("relation " + source_.format(r.lead) + " = " + source_.format(r.tail) +
                                " does not hold in the target");
    }
}

AlgebraMorphism AlgebraMorphism::identity(const Algebra& a)
{
    std::vector<Element> images;
    for (std::size_t i = 0; i < a.size(); ++i)
        images.push_back(a.generator(i));
    return AlgebraMorphism(a, a, std::move(images));
}

AlgebraMorphism AlgebraMorphism::by_name(const Algebra& source, const Algebra& target)
{
    std::vector<Element> images;
    for (auto& g : source.generators()) {
        auto j = target.index_of(g.name);
        images.push_back(j ? target.generator(*j) : target.zero());
    }
    return AlgebraMorphism(source, target, std::move(images));
}

Element AlgebraMorphism::apply(const Monomial& m) const
{
    // in generator order, so no reordering signs appear
    Element r = target_.one();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k)
            r = target_.multiply(r, images_[i]);
    return r;
}

Element AlgebraMorphism::apply(const Element& e) const
{
    Element r = target_.zero();
    for (auto& [m, c] : e.terms)
        r = r + apply(m).scaled(c);
    return r;
}

ModuleSpec ModuleSpec::trivial(const Algebra& ring)
{
    Algebra k = Algebra::ground(ring.field());
    std::vector<Element> images(ring.size(), k.zero());
    for (std::size_t i = 0; i < ring.size(); ++i)
        if (ring.generators()[i].degree == 0 && ring.generators()[i].column == 0)
            throw MorphismError("trivial module needs positive-degree generators");
    return {AlgebraMorphism(ring, k, std::move(images))};
}

Element ModuleSpec::left(const Monomial& ring_monomial, const Monomial& coeff_monomial) const
{
    const Algebra& c = coefficients();
    return c.multiply(action.apply(ring_monomial), Element::monomial(c.field(), coeff_monomial, Scalar::one(c.field())));
}

Element ModuleSpec::right(const Monomial& coeff_monomial, const Monomial& ring_monomial) const
{
    const Algebra& c = coefficients();
    return c.multiply(Element::monomial(c.field(), coeff_monomial, Scalar::one(c.field())), action.apply(ring_monomial));
}

}  // namespace emss
