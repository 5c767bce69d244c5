#include "emss/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace emss::io {

namespace {

std::string cell_text(const Bidegree& b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

const json& require(const json& j, const std::string& key, const std::string& at)
{
    if (!j.is_object())
        throw InputError(at.empty() ? "/" : at, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(at + "/" + key, "missing");
    return *it;
}

int as_int(const json& j, const std::string& at)
{
    if (!j.is_number_integer())
        throw InputError(at, "expected an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& at)
{
    if (!j.is_string())
        throw InputError(at, "expected a string");
    return j.get<std::string>();
}

bool is_number_text(const std::string& s)
{
    if (s.empty())
        return false;
    bool slash = false, digit = false;
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)))
            digit = true;
        else if (c == '/' && !slash && digit)
            slash = true;
        else
            return false;
    }
    return digit && s.back() != '/';
}

// Columns a string occupies in a terminal; counts UTF-8 code points.
std::size_t display_width(const std::string& s)
{
    return std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; });
}

std::string pad(const std::string& s, std::size_t w, bool right = false)
{
    std::size_t d = display_width(s);
    std::string fill(d < w ? w - d : 0, ' ');
    return right ? fill + s : s + fill;
}

}  // namespace

std::string field_name(const Field& f)
{
    return f.is_rational() ? "Q" : "F" + std::to_string(f.characteristic());
}

Element parse_element(const Algebra& a, const std::string& text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    if (t.empty())
        throw Error("empty element");
    Element e(a.field());
    if (t == "0")
        return e;
    std::size_t i = 0;
    while (i < t.size()) {
        bool negative = false;
        if (t[i] == '+' || t[i] == '-') {
            negative = t[i] == '-';
            ++i;
        }
        std::size_t j = i;
        while (j < t.size() && t[j] != '+' && t[j] != '-')
            ++j;
        std::string term = t.substr(i, j - i);
        if (term.empty())
            throw Error("malformed element '" + text + "'");
        Scalar c = Scalar::one(a.field());
        std::string mono = term;
        auto star = term.find('*');
        std::string head = term.substr(0, star);
        if (is_number_text(head)) {
            c = Scalar::parse(a.field(), head);
            mono = star == std::string::npos ? "1" : term.substr(star + 1);
        }
        if (negative)
            c = -c;
        e.add(a.parse_monomial(mono), c);
        i = j;
    }
    return e;
}

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(path, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path, std::string("malformed JSON: ") + e.what());
    }
}

Algebra algebra_from_json(const json& j, const Field& f, const std::string& at)
{
    const json& gs = require(j, "generators", at);
    if (!gs.is_array())
        throw InputError(at + "/generators", "expected an array");
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        std::string here = at + "/generators/" + std::to_string(i);
        Generator g;
        g.name = as_string(require(gs[i], "name", here), here + "/name");
        g.degree = as_int(require(gs[i], "degree", here), here + "/degree");
        if (gs[i].contains("column"))
            g.column = as_int(gs[i]["column"], here + "/column");
        if (gs[i].contains("bound") && !gs[i]["bound"].is_null())
            g.bound = as_int(gs[i]["bound"], here + "/bound");
        gens.push_back(g);
    }
    AlgebraKind kind = AlgebraKind::general;
    if (j.contains("kind")) {
        try {
            kind = kind_from_string(as_string(j["kind"], at + "/kind"));
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            throw InputError(at + "/kind", e.what());
        }
    }
    Algebra bare;
    try {
        bare = Algebra(f, gens, {}, kind);
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(at + "/generators", e.what());
    }
    std::vector<Relation> rels;
    if (j.contains("relations")) {
        const json& rs = j["relations"];
        if (!rs.is_array())
            throw InputError(at + "/relations", "expected an array");
        for (std::size_t i = 0; i < rs.size(); ++i) {
            std::string here = at + "/relations/" + std::to_string(i);
            try {
                Relation r;
                r.lead = bare.parse_monomial(as_string(require(rs[i], "lead", here), here + "/lead"));
                r.tail = rs[i].contains("tail") ? parse_element(bare, as_string(rs[i]["tail"], here + "/tail"))
                                                 : Element(f);
                rels.push_back(r);
            } catch (const InputError&) {
                throw;
            } catch (const Error& e) {
                throw InputError(here, e.what());
            }
        }
    }
    try {
        return Algebra(f, gens, rels, kind);
    } catch (const Error& e) {
        throw InputError(at + "/relations", e.what());
    }
}

json algebra_to_json(const Algebra& a)
{
    json gens = json::array();
    for (auto& g : a.generators()) {
        json jg = {{"name", g.name}, {"degree", g.degree}, {"column", g.column}, {"bidegree", {g.column, g.degree}}};
        jg["bound"] = g.bound ? json(*g.bound) : json(nullptr);
        gens.push_back(jg);
    }
    json rels = json::array();
    for (auto& r : a.relations())
        rels.push_back({{"lead", a.format(r.lead)}, {"tail", a.format(r.tail)}});
    return {{"field", field_name(a.field())}, {"kind", to_string(a.kind())}, {"generators", gens}, {"relations", rels}};
}

SpaceSpec space_from_json(const json& j, const Field& f, const std::string& at)
{
    SpaceSpec s;
    s.name = j.contains("name") ? as_string(j["name"], at + "/name") : "space";
    s.cohomology = algebra_from_json(require(j, "cohomology", at), f, at + "/cohomology");
    s.dim = as_int(require(j, "dim", at), at + "/dim");
    return s;
}

json space_to_json(const SpaceSpec& s)
{
    return {{"name", s.name}, {"cohomology", algebra_to_json(s.cohomology)}, {"dim", s.dim}};
}

AlgebraMorphism morphism_from_json(const json& j, const Algebra& source, const Algebra& target, const std::string& at)
{
    if (!j.is_object())
        throw InputError(at.empty() ? "/" : at, "expected an object of generator images");
    std::vector<Element> images;
    for (auto& g : source.generators()) {
        if (j.contains(g.name)) {
            std::string here = at + "/" + g.name;
            try {
                images.push_back(parse_element(target, as_string(j[g.name], here)));
            } catch (const InputError&) {
                throw;
            } catch (const Error& e) {
                throw InputError(here, e.what());
            }
        } else if (target.index_of(g.name)) {
            images.push_back(target.generator(g.name));
        } else {
            images.push_back(target.zero());
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!source.index_of(it.key()))
            throw InputError(at + "/" + it.key(), "not a source generator");
    try {
        return AlgebraMorphism(source, target, images);
    } catch (const Error& e) {
        throw InputError(at.empty() ? "/" : at, e.what());
    }
}

json series_to_json(const BigradedSeries& s)
{
    json out = json::array();
    for (auto& [b, d] : s)
        out.push_back({{"p", b.p}, {"q", b.q}, {"dim", d}});
    return out;
}

json certificate_to_json(const HHCertificate& c)
{
    json j = {{"method", c.method}, {"series", series_to_json(c.series)}, {"checks", c.checks}, {"notes", c.notes}};
    j["p_max"] = c.p_max ? json(*c.p_max) : json(nullptr);
    j["q_lo"] = c.q_lo ? json(*c.q_lo) : json(nullptr);
    j["q_hi"] = c.q_hi ? json(*c.q_hi) : json(nullptr);
    return j;
}

json hh_to_json(const HHPresentation& h)
{
    json roles = json::array();
    for (std::size_t i = 0; i < h.roles.size(); ++i) {
        json r = {{"generator", h.presentation.generators()[i].name}, {"role", to_string(h.roles[i].kind)}};
        if (!h.roles[i].dual_of.empty())
            r["dual_of"] = h.roles[i].dual_of;
        roles.push_back(r);
    }
    return {{"label", h.label},
            {"presentation", algebra_to_json(h.presentation)},
            {"text", presentation_text(h.presentation)},
            {"roles", roles},
            {"certificate", certificate_to_json(h.certificate)}};
}

json collapse_to_json(const CollapseCertificate& c)
{
    return {{"kind", to_string(c.kind)},
            {"detail", c.detail},
            {"citations", c.citations},
            {"page_fingerprint", c.page_fingerprint}};
}

json sparsity_to_json(const SparsityOutcome& s)
{
    json j;
    j["certified"] = s.certified();
    if (s.certificate)
        j["certificate"] = collapse_to_json(*s.certificate);
    if (!s.reason.empty())
        j["reason"] = s.reason;
    if (s.witness)
        j["witness"] = {{"source", {s.witness->first.p, s.witness->first.q}},
                        {"target", {s.witness->second.p, s.witness->second.q}},
                        {"source_monomial", s.witness_monomials->first},
                        {"target_monomial", s.witness_monomials->second}};
    return j;
}

json report_to_json(const LiftObstructionReport& r, const Algebra& page)
{
    json tail = r.relation.tail.is_zero() ? json("0") : json(page.format(r.relation.tail));
    json cands = json::array();
    for (auto& m : r.candidates) {
        Bidegree b = page.bidegree(m);
        cands.push_back({{"monomial", page.format(m)}, {"bidegree", {b.p, b.q}}});
    }
    return {{"relation", r.relation.name},
            {"lead", page.format(r.relation.lead)},
            {"tail", tail},
            {"filtration", r.relation.filtration},
            {"total_degree", r.relation.total_degree},
            {"candidates", cands},
            {"verdict", to_string(r.verdict)},
            {"trace", r.trace}};
}

json loop_to_json(const LoopHomology& l)
{
    json j = {{"complete", l.complete},
              {"presentation", algebra_to_json(l.presentation)},
              {"text", presentation_text(l.presentation)},
              {"unresolved", l.unresolved},
              {"imported", l.imported},
              {"citations", l.citations},
              {"collapse", l.collapse_detail}};
    return j;
}

json envelope(const std::string& command, const Field& f, json payload)
{
    json j = {{"schema", schema_version},
              {"command", command},
              {"field", {{"characteristic", f.characteristic()}, {"name", field_name(f)}}}};
    for (auto it = payload.begin(); it != payload.end(); ++it)
        j[it.key()] = it.value();
    return j;
}

std::string presentation_text(const Algebra& a)
{
    std::string s = field_name(a.field()) + "[";
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (i ? "," : "") + a.generators()[i].name;
    s += "]";
    std::vector<std::string> rels;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (auto b = a.generators()[i].bound)
            rels.push_back(a.format(a.generator_monomial(i, *b + 1)));
    for (auto& r : a.relations()) {
        std::string lead = a.format(r.lead);
        if (std::find(rels.begin(), rels.end(), lead) != rels.end() && r.tail.is_zero())
            continue;
        rels.push_back(r.tail.is_zero() ? lead : lead + " - (" + a.format(r.tail) + ")");
    }
    if (!rels.empty()) {
        s += "/(";
        for (std::size_t i = 0; i < rels.size(); ++i)
            s += (i ? ", " : "") + rels[i];
        s += ")";
    }
    std::vector<std::string> degs;
    for (auto& g : a.generators())
        degs.push_back(a.has_columns() ? g.name + " " + cell_text(g.bidegree())
                                       : "|" + g.name + "|=" + std::to_string(g.degree));
    if (!degs.empty()) {
        s += "  ";
        for (std::size_t i = 0; i < degs.size(); ++i)
            s += (i ? ", " : "") + degs[i];
    }
    return s;
}

std::string render_chart(const Algebra& page, const Window& w, bool labels, std::size_t budget)
{
    if (!w.p_lo || !w.p_hi || !w.q_lo || !w.q_hi)
        throw Error("chart needs a bounded window");
    const int p_lo = *w.p_lo, p_hi = *w.p_hi, q_lo = *w.q_lo, q_hi = *w.q_hi;
    if (p_hi < p_lo || q_hi < q_lo)
        throw Error("chart window is empty");
    std::size_t cells = static_cast<std::size_t>(p_hi - p_lo + 1) * static_cast<std::size_t>(q_hi - q_lo + 1);
    if (cells > budget)
        throw Error("chart window has " + std::to_string(cells) + " cells, over the budget of " +
                    std::to_string(budget));

    std::map<Bidegree, std::vector<std::string>> at;
    for (auto& m : page.monomials_in(w))
        at[page.bidegree(m)].push_back(page.format(m));

    auto content = [&](int p, int q) {
        auto it = at.find({p, q});
        if (it == at.end())
            return std::string(".");
        std::string s;
        for (auto& name : it->second) {
            if (!s.empty())
                s += labels ? " " : "";
            s += labels ? "•" + name : "•";
        }
        return s;
    };
    std::size_t width = std::max<std::size_t>(1, std::to_string(p_hi).size());
    width = std::max(width, std::to_string(p_lo).size());
    for (int q = q_hi; q >= q_lo; --q)
        for (int p = p_lo; p <= p_hi; ++p)
            width = std::max(width, display_width(content(p, q)));
    std::size_t axis = std::max(std::to_string(q_hi).size(), std::to_string(q_lo).size()) + 1;

    std::ostringstream out;
    std::string head = pad("q\\p", axis + 2);
    for (int p = p_lo; p <= p_hi; ++p)
        head += " " + pad(std::to_string(p), width);
    while (!head.empty() && head.back() == ' ')
        head.pop_back();
    out << head << "\n";
    for (int q = q_hi; q >= q_lo; --q) {
        std::string line = pad(std::to_string(q), axis, true) + " |";
        for (int p = p_lo; p <= p_hi; ++p)
            line += " " + pad(content(p, q), width);
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        out << line << "\n";
    }
    return out.str();
}

}  // namespace emss::io
