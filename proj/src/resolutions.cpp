#include "emss/resolutions.hpp"

#include <algorithm>

namespace emss {

namespace {

std::size_t add_monomial_terms(const Element& e, const std::map<Monomial, std::size_t>& index, const char* what)
{
    for (auto& [m, c] : e.terms)
        if (!index.count(m))
            throw Error(std::string("product leaves the ") + what + " basis");
    return e.terms.size();
}

bool parity_odd(long a) { return (a % 2 + 2) % 2 == 1; }

void require_polynomial_ring(const Algebra& r)
{
    for (auto& g : r.generators())
        if (g.bound || g.degree <= 0 || g.degree % 2 != 0 || g.column != 0)
            throw Error("Koszul complexes need a polynomial ring on positive even generators, got '" + g.name + "'");
    if (!r.relations().empty())
        throw Error("Koszul complexes need a polynomial ring without relations");
}

bool same_generators(const Algebra& a, const Algebra& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.generators()[i].name != b.generators()[i].name || a.generators()[i].degree != b.generators()[i].degree)
            return false;
    return true;
}

std::string subset_label(const Algebra& r, unsigned mask, const char* prefix)
{
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (mask >> i & 1u)
            s += std::string(s.empty() ? "" : ".") + prefix + r.generators()[i].name;
    return s.empty() ? "1" : s;
}

int subset_degree(const Algebra& r, unsigned mask)
{
    int d = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (mask >> i & 1u)
            d += r.generators()[i].degree;
    return d;
}

}  // namespace

int periodic_generator_degree(int m, int n, int s)
{
    if (s < 0)
        throw Error("negative stage");
    int base = (s / 2) * 2 * m * (n + 1);
    return s % 2 ? base + 2 * m : base;
}

FreeComplex periodic_hochschild_complex(int m, int n, const ModuleSpec& coefficients, int s_max)
{
    if (m <= 0 || n <= 0)
        throw Error("periodic resolution needs m, n > 0");
    if (s_max < 0)
        throw Error("s_max must be non-negative");
    const Algebra& a = coefficients.ring();
    if (a.size() != 1 || a.generators()[0].degree != 2 * m || a.generators()[0].column != 0 ||
        a.basis_in_degree(2 * m * n).empty() || !a.basis_in_degree(2 * m * (n + 1)).empty())
        throw Error("coefficients are not a module over K[x]/(x^" + std::to_string(n + 1) + "), |x| = " +
                    std::to_string(2 * m));
    const Algebra& c = coefficients.coefficients();
    const Field& f = c.field();
    const Monomial x = a.generator_monomial(0);

    FreeComplex cx(f, Direction::cochain);
    std::map<int, std::vector<Monomial>> by_degree;
    for (auto& mono : c.full_basis())
        by_degree[c.bidegree(mono).q].push_back(mono);
    for (int s = 0; s <= s_max + 1; ++s) {
        int g = periodic_generator_degree(m, n, s);
        for (auto& [d, monos] : by_degree)
            for (auto& mono : monos)
                cx.add_basis(s, d - g, "e" + std::to_string(s) + "|" + c.format(mono));
    }
    auto locate = [&](int degree, const Monomial& mono) -> std::size_t {
        auto& v = by_degree.at(degree);
        return static_cast<std::size_t>(std::find(v.begin(), v.end(), mono) - v.begin());
    };
    for (int s = 0; s <= s_max; ++s) {
        int g = periodic_generator_degree(m, n, s);
        int g1 = periodic_generator_degree(m, n, s + 1);
        for (auto& [d, monos] : by_degree) {
            int q = d - g;
            Matrix mat(f, cx.dim(s + 1, q), monos.size());
            for (std::size_t j = 0; j < monos.size(); ++j) {
                Element img(f);
                if (s % 2 == 0) {
                    img = coefficients.left(x, monos[j]) - coefficients.right(monos[j], x);
                } else {
                    for (int i = 0; i <= n; ++i) {
                        Element l = coefficients.left(a.generator_monomial(0, i), monos[j]);
                        for (auto& [lm, lc] : l.terms)
                            img = img + coefficients.right(lm, a.generator_monomial(0, n - i)).scaled(lc);
                    }
                }
                for (auto& [tm, tc] : img.terms)
                    mat.set(locate(q + g1, tm), j, tc);
            }
            if (mat.rows())
                cx.set_differential(s, q, std::move(mat));
        }
    }
    cx.set_exact_through(s_max);
    return cx;
}

FreeComplex koszul_tor_complex(const ModuleSpec& left, const ModuleSpec& right, int q_lo, int q_hi)
{
    const Algebra& r = left.ring();
    require_polynomial_ring(r);
    if (!same_generators(r, right.ring()))
        throw Error("left and right modules are over different rings");
    if (r.size() > 16)
        throw Error("too many ring generators for the Koszul complex");
    const Algebra& la = left.coefficients();
    const Algebra& ra = right.coefficients();
    for (const Algebra* alg : {&la, &ra})
        for (auto& g : alg->generators())
            if (g.degree < 0 || g.column != 0)
                throw Error("Koszul Tor needs non-negatively graded modules");
    const Field& f = r.field();

    Window w;
    w.p_lo = w.p_hi = 0;
    w.q_lo = 0;
    w.q_hi = std::max(q_hi, 0);
    const auto lbasis = la.monomials_in(w);
    const auto rbasis = ra.monomials_in(w);

    struct Key {
        Monomial a;
        unsigned mask;
        Monomial b;
        auto operator<=>(const Key&) const = default;
    };
    FreeComplex cx(f, Direction::chain);
    std::map<Cell, std::map<Key, std::size_t>> index;
    std::map<Cell, std::vector<Key>> keys;
    const unsigned subsets = 1u << r.size();
    for (unsigned mask = 0; mask < subsets; ++mask) {
        int s = __builtin_popcount(mask);
        int di = subset_degree(r, mask);
        for (auto& a : lbasis)
            for (auto& b : rbasis) {
                int q = la.bidegree(a).q + di + ra.bidegree(b).q;
                if (q < q_lo || q > q_hi)
                    continue;
                Cell c{s, q};
                index[c][{a, mask, b}] = cx.add_basis(
                    s, q, la.format(a) + "|" + subset_label(r, mask, "s") + "|" + ra.format(b));
                keys[c].push_back({a, mask, b});
            }
    }
    for (auto& [c, ks] : keys) {
        auto [s, q] = c;
        if (s == 0)
            continue;
        Cell tc{s - 1, q};
        Matrix mat(f, cx.dim(s - 1, q), ks.size());
        const auto& tindex = index[tc];
        for (std::size_t j = 0; j < ks.size(); ++j) {
            const auto& k = ks[j];
            int pos = 0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (!(k.mask >> i & 1u))
                    continue;
                long sign = pos++ % 2 ? -1 : 1;
                unsigned rest = k.mask & ~(1u << i);
                Monomial xi = r.generator_monomial(i);
                for (auto& [am, ac] : left.right(k.a, xi).terms)
                    mat.add(tindex.at({am, rest, k.b}), j, ac * Scalar(f, sign));
                for (auto& [bm, bc] : right.left(xi, k.b).terms)
                    mat.add(tindex.at({k.a, rest, bm}), j, bc * Scalar(f, -sign));
            }
        }
        cx.set_differential(s, q, std::move(mat));
    }
    return cx;
}

FreeComplex koszul_hochschild_complex(const ModuleSpec& coefficients, int q_lo, int q_hi)
{
    const Algebra& r = coefficients.ring();
    require_polynomial_ring(r);
    if (r.size() > 16)
        throw Error("too many ring generators for the Koszul complex");
    const Algebra& c = coefficients.coefficients();
    const Field& f = r.field();
    FreeComplex cx(f, Direction::cochain);
    std::map<Cell, std::map<std::pair<unsigned, Monomial>, std::size_t>> index;
    std::map<Cell, std::vector<std::pair<unsigned, Monomial>>> keys;
    const unsigned subsets = 1u << r.size();
    for (unsigned mask = 0; mask < subsets; ++mask) {
        int s = __builtin_popcount(mask);
        int di = subset_degree(r, mask);
        Window w;
        w.p_lo = w.p_hi = 0;
        w.q_lo = q_lo + di;
        w.q_hi = q_hi + di;
        for (auto& mono : c.monomials_in(w)) {
            Cell cell{s, c.bidegree(mono).q - di};
            index[cell][{mask, mono}] = cx.add_basis(s, cell.second, subset_label(r, mask, "d") + "|" + c.format(mono));
            keys[cell].push_back({mask, mono});
        }
    }
    for (auto& [cell, ks] : keys) {
        auto [s, q] = cell;
        if (!cx.dim(s + 1, q))
            continue;
        const auto& tindex = index[{s + 1, q}];
        Matrix mat(f, cx.dim(s + 1, q), ks.size());
        for (std::size_t jcol = 0; jcol < ks.size(); ++jcol) {
            auto [mask, mono] = ks[jcol];
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (mask >> j & 1u)
                    continue;
                unsigned bigger = mask | (1u << j);
                int pos = __builtin_popcount(bigger & ((1u << j) - 1u));
                Monomial xj = r.generator_monomial(j);
                Element img = coefficients.left(xj, mono) - coefficients.right(mono, xj);
                for (auto& [tm, tc] : img.terms)
                    mat.add(tindex.at({bigger, tm}), jcol, pos % 2 ? -tc : tc);
            }
        }
        cx.set_differential(s, q, std::move(mat));
    }
    return cx;
}

BarComplex::BarComplex(const ModuleSpec& coefficients, int p_max) : mod_(coefficients), p_max_(p_max)
{
    if (p_max < 0)
        throw Error("p_max must be non-negative");
    const Algebra& a = algebra();
    const Algebra& c = this->coefficients();
    if (!a.is_finite_dimensional())
        throw InfiniteBasis("bar complex needs a finite-dimensional algebra");
    if (a.has_columns())
        throw Error("bar complex needs a singly graded algebra");
    const Field& f = a.field();
    for (auto& mono : a.full_basis()) {
        if (mono == a.unit_monomial())
            continue;
        int d = a.bidegree(mono).q;
        if (d <= 0)
            throw Error("bar complex needs positively graded augmentation ideal");
        abar_.push_back(mono);
        abar_deg_.push_back(d);
    }
    cbasis_ = c.full_basis();
    for (std::size_t i = 0; i < cbasis_.size(); ++i)
        cindex_[cbasis_[i]] = i;
    std::map<Monomial, std::size_t> aindex;
    for (std::size_t i = 0; i < abar_.size(); ++i)
        aindex[abar_[i]] = i;

    // t -> (a, b, coefficient of t in a*b)
    std::vector<std::vector<std::tuple<int, int, Scalar>>> split(abar_.size());
    for (std::size_t i = 0; i < abar_.size(); ++i)
        for (std::size_t j = 0; j < abar_.size(); ++j) {
            Element p = a.multiply(abar_[i], abar_[j]);
            add_monomial_terms(p, aindex, "augmentation ideal");
            for (auto& [m, s] : p.terms)
                split[aindex.at(m)].emplace_back(static_cast<int>(i), static_cast<int>(j), s);
        }
    std::vector<std::vector<Element>> lact(abar_.size()), ract(abar_.size());
    for (std::size_t i = 0; i < abar_.size(); ++i)
        for (auto& cm : cbasis_) {
            lact[i].push_back(mod_.left(abar_[i], cm));
            ract[i].push_back(mod_.right(cm, abar_[i]));
            add_monomial_terms(lact[i].back(), cindex_, "coefficient");
            add_monomial_terms(ract[i].back(), cindex_, "coefficient");
        }

    cx_ = FreeComplex(f, Direction::cochain);
    std::vector<std::vector<int>> tuples{{}};
    for (int s = 0; s <= p_max + 1; ++s) {
        for (auto& t : tuples) {
            int dt = tuple_degree(t);
            for (auto& cm : cbasis_) {
                int q = c.bidegree(cm).q - dt;
                Entry e{t, cm};
                std::string label = "[";
                for (std::size_t k = 0; k < t.size(); ++k)
                    label += (k ? "|" : "") + a.format(abar_[t[k]]);
                label += "]->" + c.format(cm);
                index_[{s, q}][e] = cx_.add_basis(s, q, label);
                basis_[{s, q}].push_back(std::move(e));
            }
        }
        std::vector<std::vector<int>> next;
        for (auto& t : tuples)
            for (std::size_t i = 0; i < abar_.size(); ++i) {
                auto u = t;
                u.push_back(static_cast<int>(i));
                next.push_back(std::move(u));
            }
        tuples = std::move(next);
    }

    for (auto& [cell, entries] : basis_) {
        auto [s, q] = cell;
        if (s > p_max)
            continue;
        auto tit = index_.find({s + 1, q});
        if (tit == index_.end())
            continue;
        const auto& tindex = tit->second;
        Matrix mat(f, cx_.dim(s + 1, q), entries.size());
        for (std::size_t j = 0; j < entries.size(); ++j) {
            const auto& e = entries[j];
            const std::size_t ci = cindex_.at(e.value);
            for (std::size_t b = 0; b < abar_.size(); ++b) {
                Entry te;
                te.tuple.reserve(s + 1);
                te.tuple.push_back(static_cast<int>(b));
                te.tuple.insert(te.tuple.end(), e.tuple.begin(), e.tuple.end());
                bool odd = parity_odd(static_cast<long>(abar_deg_[b]) * q);
                for (auto& [cm, cc] : lact[b][ci].terms) {
                    te.value = cm;
                    mat.add(tindex.at(te), j, odd ? -cc : cc);
                }
                te.tuple.assign(e.tuple.begin(), e.tuple.end());
                te.tuple.push_back(static_cast<int>(b));
                bool odd_end = (s + 1) % 2 == 1;
                for (auto& [cm, cc] : ract[b][ci].terms) {
                    te.value = cm;
                    mat.add(tindex.at(te), j, odd_end ? -cc : cc);
                }
            }
            for (int i = 1; i <= s; ++i) {
                for (auto& [x, y, lambda] : split[e.tuple[i - 1]]) {
                    Entry te;
                    te.tuple.assign(e.tuple.begin(), e.tuple.begin() + (i - 1));
                    te.tuple.push_back(x);
                    te.tuple.push_back(y);
                    te.tuple.insert(te.tuple.end(), e.tuple.begin() + i, e.tuple.end());
                    te.value = e.value;
                    mat.add(tindex.at(te), j, i % 2 ? -lambda : lambda);
                }
            }
        }
        cx_.set_differential(s, q, std::move(mat));
    }
    cx_.set_exact_through(p_max);
}

int BarComplex::tuple_degree(const std::vector<int>& tuple) const
{
    int d = 0;
    for (int i : tuple)
        d += abar_deg_.at(i);
    return d;
}

const std::vector<BarComplex::Entry>& BarComplex::basis(int s, int q) const
{
    static const std::vector<Entry> empty;
    auto it = basis_.find({s, q});
    return it == basis_.end() ? empty : it->second;
}

std::optional<std::size_t> BarComplex::index(int s, int q, const Entry& e) const
{
    auto it = index_.find({s, q});
    if (it == index_.end())
        return std::nullopt;
    auto jt = it->second.find(e);
    if (jt == it->second.end())
        return std::nullopt;
    return jt->second;
}

Vector BarComplex::cochain(int s, int q, const std::function<Element(const std::vector<int>&)>& values) const
{
    const auto& entries = basis(s, q);
    Vector v = zero_vector(algebra().field(), entries.size());
    std::map<std::vector<int>, Element> cache;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto it = cache.find(entries[i].tuple);
        if (it == cache.end())
            it = cache.emplace(entries[i].tuple, values(entries[i].tuple)).first;
        v[i] = it->second.coefficient(entries[i].value);
    }
    return v;
}

Vector BarComplex::cup(int p1, int q1, const Vector& f, int p2, int q2, const Vector& g) const
{
    if (p1 + p2 > p_max_)
        throw Error("cup product leaves the bar window: p = " + std::to_string(p1 + p2) + " > " +
                    std::to_string(p_max_));
    const auto& fb = basis(p1, q1);
    const auto& gb = basis(p2, q2);
    if (f.size() != fb.size() || g.size() != gb.size())
        throw Error("cochain length does not match its cell");
    const Algebra& c = coefficients();
    const Field& fld = c.field();
    Vector out = zero_vector(fld, basis(p1 + p2, q1 + q2).size());
    const bool twist = parity_odd(static_cast<long>(p2) * q1);
    for (std::size_t i = 0; i < fb.size(); ++i) {
        if (f[i].is_zero())
            continue;
        bool odd_f = parity_odd(static_cast<long>(q2) * tuple_degree(fb[i].tuple)) != twist;
        for (std::size_t j = 0; j < gb.size(); ++j) {
            if (g[j].is_zero())
                continue;
            Scalar coeff = f[i] * g[j];
            if (odd_f)
                coeff = -coeff;
            Entry te;
            te.tuple = fb[i].tuple;
            te.tuple.insert(te.tuple.end(), gb[j].tuple.begin(), gb[j].tuple.end());
            for (auto& [cm, cc] : c.multiply(fb[i].value, gb[j].value).terms) {
                te.value = cm;
                auto idx = index(p1 + p2, q1 + q2, te);
                if (!idx)
                    throw Error("cup product target missing from the bar basis");
                out[*idx] += coeff * cc;
            }
        }
    }
    return out;
}

}  // namespace emss
