#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "emss/io.hpp"

using namespace emss;
using io::json;

namespace {

struct Options {
    unsigned characteristic = 0;
    std::string window = "-40:40";
    int p_max = 4;
    std::string format = "json";
    bool labels = false;
    std::string citation;
    std::optional<int> dim_n;
    std::string out;
    std::string algebra, space, base, map, ring, left, right, relation;
};

struct Outcome {
    json report;
    std::string text;
    int code = 0;
};

std::pair<int, int> parse_window(const std::string& s)
{
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw io::InputError("--window", "expected lo:hi");
    try {
        int lo = std::stoi(s.substr(0, colon)), hi = std::stoi(s.substr(colon + 1));
        if (hi < lo)
            throw io::InputError("--window", "hi is below lo");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw io::InputError("--window", "expected integers lo:hi");
    }
}

Field field_of(const Options& o)
{
    try {
        return Field(o.characteristic);
    } catch (const Error& e) {
        throw io::InputError("--char", e.what());
    }
}

io::SpaceSpec load_space(const std::string& path, const Field& f, const std::string& flag)
{
    if (path.empty())
        throw io::InputError(flag, "required");
    return io::space_from_json(io::load_json(path), f, path);
}

Algebra load_algebra(const std::string& path, const Field& f, const std::string& flag)
{
    if (path.empty())
        throw io::InputError(flag, "required");
    json j = io::load_json(path);
    if (j.contains("cohomology"))
        return io::algebra_from_json(j["cohomology"], f, path + "#/cohomology");
    return io::algebra_from_json(j, f, path);
}

E2Options e2_options(const Options& o)
{
    auto [lo, hi] = parse_window(o.window);
    E2Options e;
    e.p_max = o.p_max;
    e.q_lo = lo;
    e.q_hi = hi;
    return e;
}

// Sparsity scans reach further right than the charted columns.
Window page_window(const Options& o, bool scan = true)
{
    auto [lo, hi] = parse_window(o.window);
    Window w;
    w.p_lo = 0;
    w.p_hi = scan ? 2 * o.p_max : o.p_max;
    w.q_lo = lo;
    w.q_hi = hi;
    return w;
}

// Module for a regular or relative pipeline: H*(space) over H*(base).
ModuleSpec pipeline_module(const Options& o, const Field& f, io::SpaceSpec& space)
{
    space = load_space(o.space, f, "--space");
    if (o.base.empty())
        return ModuleSpec::regular(space.cohomology);
    io::SpaceSpec base = load_space(o.base, f, "--base");
    json images = o.map.empty() ? json::object() : io::load_json(o.map);
    return {io::morphism_from_json(images, base.cohomology, space.cohomology, o.map)};
}

std::string lines(const std::vector<std::string>& xs, const std::string& indent = "  ")
{
    std::string s;
    for (auto& x : xs)
        s += indent + x + "\n";
    return s;
}

Outcome run_hh(const Options& o)
{
    Field f = field_of(o);
    Algebra a = load_algebra(o.algebra, f, "--algebra");
    E2Page page = build_e2(ModuleSpec::regular(a), 0, e2_options(o));
    Outcome r;
    r.report = io::envelope("hh", f, {{"hh", io::hh_to_json(page.hh)}});
    r.text = "HH = " + io::presentation_text(page.presentation()) + "\n" + page.hh.label + "\ncertificate (" +
             page.hh.certificate.method + "):\n" + lines(page.hh.certificate.checks) +
             lines(page.hh.certificate.notes);
    if (o.format == "chart")
        r.text = io::render_chart(page.presentation(), page_window(o, false), o.labels);
    return r;
}

struct Pipeline {
    io::SpaceSpec space;
    E2Page page;
    std::optional<EInfinityPage> einf;
    SparsityOutcome sparsity;
    std::string refusal;
};

Pipeline collapse_stage(const Options& o, const Field& f)
{
    Pipeline pl;
    ModuleSpec mod = pipeline_module(o, f, pl.space);
    pl.page = build_e2(mod, o.dim_n.value_or(pl.space.dim), e2_options(o));
    try {
        pl.sparsity = collapse_by_sparsity(pl.page, page_window(o));
    } catch (const WindowTooNarrow& e) {
        pl.sparsity.reason = e.what();
    }
    if (pl.sparsity.certified()) {
        CollapseCertificate c = *pl.sparsity.certificate;
        if (!o.citation.empty())
            c.citations.push_back(o.citation);
        pl.einf = einfinity(pl.page, c);
    } else if (!o.citation.empty()) {
        pl.einf = einfinity(pl.page, assume_collapse(pl.page, o.citation));
    } else {
        pl.refusal = pl.sparsity.reason + "; rerun with --assume-collapse \"<citation>\"";
    }
    return pl;
}

Outcome run_loop(const Options& o, const std::string& command)
{
    Field f = field_of(o);
    Pipeline pl = collapse_stage(o, f);
    Outcome r;
    json payload = {{"space", pl.space.name},
                    {"dim_n", pl.page.shift},
                    {"e2", io::hh_to_json(pl.page.hh)},
                    {"sparsity", io::sparsity_to_json(pl.sparsity)}};
    if (!pl.einf) {
        payload["complete"] = false;
        payload["refusal"] = pl.refusal;
        r.report = io::envelope(command, f, payload);
        r.text = "E2 = " + io::presentation_text(pl.page.presentation()) + "\ncollapse refused: " + pl.refusal + "\n";
        r.code = 2;
        return r;
    }
    const Algebra& pres = pl.page.presentation();
    std::vector<LiftObstructionReport> reports;
    json jreports = json::array();
    for (auto& c : relation_candidates(pres, pl.page.relative)) {
        reports.push_back(enumerate_lift_candidates(*pl.einf, c, pl.page.shift));
        jreports.push_back(io::report_to_json(reports.back(), pres));
    }
    std::optional<ZeroColumnLift> lift = zero_column_lift(*pl.einf, pl.space.cohomology);
    LoopHomology loop = assemble_loop_homology(*pl.einf, reports, lift);

    payload["collapse"] = io::collapse_to_json(pl.einf->collapse);
    payload["extensions"] = jreports;
    payload["loop_homology"] = io::loop_to_json(loop);
    payload["complete"] = loop.complete;
    r.report = io::envelope(command, f, payload);

    std::ostringstream t;
    t << "E2 = " << io::presentation_text(pres) << "\n";
    t << "collapse: " << to_string(pl.einf->collapse.kind) << ", " << pl.einf->collapse.detail << "\n";
    for (auto& c : pl.einf->collapse.citations)
        t << "  citation: " << c << "\n";
    for (auto& rep : reports)
        t << "extension " << rep.relation.name << ": " << to_string(rep.verdict) << "\n" << lines(rep.trace, "    ");
    for (auto& s : loop.imported)
        t << "imported from the intersection ring: " << s << "\n";
    t << (loop.complete ? "H_*(L) = " : "partial: E_inf = ") << io::presentation_text(loop.presentation) << "\n";
    for (auto& u : loop.unresolved)
        t << "unresolved: " << u << "\n";
    r.text = t.str();
    r.code = loop.complete ? 0 : 2;
    return r;
}

Outcome run_e2(const Options& o, bool chart)
{
    Field f = field_of(o);
    Pipeline pl = collapse_stage(o, f);
    Window w = page_window(o, false);
    Outcome r;
    r.report = io::envelope(chart ? "chart" : "e2", f,
                            {{"space", pl.space.name},
                             {"dim_n", pl.page.shift},
                             {"e2", io::hh_to_json(pl.page.hh)},
                             {"series", io::series_to_json(pl.page.series(w))},
                             {"sparsity", io::sparsity_to_json(pl.sparsity)},
                             {"fingerprint", page_fingerprint(pl.page)}});
    std::string verdict = pl.sparsity.certified() ? "collapse certified by sparsity: " + pl.sparsity.certificate->detail
                                                   : "no sparsity certificate: " + pl.sparsity.reason;
    r.text = "E2 = " + io::presentation_text(pl.page.presentation()) + "\n" + verdict + "\n";
    if (chart || o.format == "chart")
        r.text = io::render_chart(pl.page.presentation(), w, o.labels);
    return r;
}

Outcome run_ext_check(const Options& o)
{
    Field f = field_of(o);
    Pipeline pl = collapse_stage(o, f);
    Outcome r;
    if (!pl.einf) {
        r.report = io::envelope("ext-check", f, {{"refusal", pl.refusal}, {"complete", false}});
        r.text = "collapse refused: " + pl.refusal + "\n";
        r.code = 2;
        return r;
    }
    const Algebra& pres = pl.page.presentation();
    std::vector<RelationCandidate> todo;
    if (o.relation.empty()) {
        todo = relation_candidates(pres, pl.page.relative);
    } else {
        Element e, first;
        try {
            e = io::parse_element(pres, o.relation);
            auto cut = o.relation.find_first_of("+-", o.relation.find_first_not_of(" +-"));
            first = io::parse_element(pres, o.relation.substr(0, cut));
        } catch (const Error& err) {
            throw io::InputError("--relation", err.what());
        }
        if (e.is_zero() || first.terms.size() != 1 || e.coefficient(first.terms.begin()->first).is_zero())
            throw io::InputError("--relation", "the first term must be a nonzero monomial");
        // the first listed term is the lead
        Monomial lead = first.terms.begin()->first;
        Scalar lc = e.coefficient(lead);
        Element tail = Element::monomial(f, lead, Scalar::one(f)) - e.scaled(lc.inverse());
        todo.push_back(make_candidate(pres, o.relation, lead, tail));
    }
    json jr = json::array();
    bool all = true;
    std::ostringstream t;
    for (auto& c : todo) {
        auto rep = enumerate_lift_candidates(*pl.einf, c, o.dim_n.value_or(pl.page.shift));
        all = all && rep.verdict == LiftObstructionReport::holds;
        jr.push_back(io::report_to_json(rep, pres));
        t << "extension " << c.name << ": " << to_string(rep.verdict) << "\n" << lines(rep.trace, "    ");
    }
    r.report = io::envelope("ext-check", f, {{"extensions", jr}, {"complete", all}});
    r.text = t.str();
    r.code = all ? 0 : 2;
    return r;
}

Outcome run_tor(const Options& o)
{
    Field f = field_of(o);
    Algebra ring = load_algebra(o.ring, f, "--ring");
    Algebra left = o.left.empty() ? Algebra::ground(f) : load_algebra(o.left, f, "--left");
    Algebra right = o.right.empty() ? Algebra::ground(f) : load_algebra(o.right, f, "--right");
    auto [lo, hi] = parse_window(o.window);
    ModuleSpec l{AlgebraMorphism::by_name(ring, left)}, rt{AlgebraMorphism::by_name(ring, right)};
    FreeComplex cx = koszul_tor_complex(l, rt, lo, hi);
    CohomologyWindow cw;
    cw.q_lo = lo;
    cw.q_hi = hi;
    BigradedSeries dims = cohomology(cx, cw).dims();
    json cells = json::array();
    std::ostringstream t;
    t << "Tor over " << io::presentation_text(ring) << "\n";
    for (auto& [b, d] : dims) {
        cells.push_back({{"s", b.p}, {"q", b.q}, {"dim", d}});
        t << "  Tor_" << b.p << " in degree " << b.q << ": dim " << d << "\n";
    }
    Outcome r;
    r.report = io::envelope("tor", f, {{"cells", cells}, {"window", {lo, hi}}});
    r.text = t.str();
    return r;
}

Outcome run_oracle_compare(const Options& o)
{
    Field f = field_of(o);
    Algebra a = load_algebra(o.algebra, f, "--algebra");
    if (a.size() != 1 || !a.generators()[0].bound || a.generators()[0].degree <= 0 || a.generators()[0].degree % 2)
        throw io::InputError(o.algebra, "oracle-compare needs K[x]/(x^{n+1}) with |x| even and positive");
    const int m = a.generators()[0].degree / 2, n = *a.generators()[0].bound;
    ModuleSpec reg = ModuleSpec::regular(a);
    CohomologyWindow cw;
    cw.s_lo = 0;
    cw.s_hi = o.p_max;
    BigradedSeries periodic = cohomology(periodic_hochschild_complex(m, n, reg, o.p_max), cw).dims();
    BarComplex bar(reg, o.p_max);
    BigradedSeries barred = cohomology(bar.complex(), cw).dims();
    Outcome r;
    bool equal = periodic == barred;
    r.report = io::envelope("oracle-compare", f,
                            {{"equal", equal},
                             {"p_max", o.p_max},
                             {"periodic", io::series_to_json(periodic)},
                             {"bar", io::series_to_json(barred)}});
    r.text = equal ? "dims equal on window p <= " + std::to_string(o.p_max) + " (" + std::to_string(periodic.size()) +
                         " nonzero cells)\n"
                   : "dims differ on window p <= " + std::to_string(o.p_max) + "\n";
    r.code = equal ? 0 : 2;
    return r;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Loop homology via the Eilenberg-Moore spectral sequence"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--char", o.characteristic, "field characteristic, 0 or a prime");
        s->add_option("--window", o.window, "internal degree window lo:hi");
        s->add_option("--pmax", o.p_max, "largest column");
        s->add_option("--format", o.format, "json, text or chart")->check(CLI::IsMember({"json", "text", "chart"}));
        s->add_flag("--labels", o.labels, "print monomials beside chart dots");
        s->add_option("--out", o.out, "write the report to FILE");
    };
    auto pipeline = [&](CLI::App* s) {
        s->add_option("--space", o.space, "space spec JSON");
        s->add_option("--base", o.base, "base space spec JSON (relative case)");
        s->add_option("--map", o.map, "generator images of the base in the space");
        s->add_option("--assume-collapse", o.citation, "citation justifying collapse");
        s->add_option("--dim-n", o.dim_n, "dimension shift, defaults to the space dimension");
    };

    auto* hh = app.add_subcommand("hh", "Hochschild cohomology HH(A;A) with certificate");
    common(hh);
    hh->add_option("--algebra", o.algebra, "algebra JSON")->required();
    auto* loop = app.add_subcommand("loop", "loop homology of a space");
    common(loop);
    pipeline(loop);
    auto* rel = app.add_subcommand("relative-loop", "relative loop homology over a base");
    common(rel);
    pipeline(rel);
    auto* e2 = app.add_subcommand("e2", "E2 page and sparsity verdict");
    common(e2);
    pipeline(e2);
    auto* ext = app.add_subcommand("ext-check", "extension checks on the E-infinity page");
    common(ext);
    pipeline(ext);
    ext->add_option("--relation", o.relation, "single relation, e.g. \"v^2 - t\"");
    auto* tor = app.add_subcommand("tor", "Koszul Tor over a polynomial ring");
    common(tor);
    tor->add_option("--ring", o.ring, "polynomial ring JSON")->required();
    tor->add_option("--left", o.left, "left module algebra JSON (default: the field)");
    tor->add_option("--right", o.right, "right module algebra JSON (default: the field)");
    auto* chart = app.add_subcommand("chart", "dot chart of the E2 page");
    common(chart);
    pipeline(chart);
    auto* oracle = app.add_subcommand("oracle-compare", "periodic versus bar complex dimensions");
    common(oracle);
    oracle->add_option("--algebra", o.algebra, "truncated polynomial algebra JSON")->required();
    rel->callback([&] {
        if (o.base.empty())
            throw CLI::ValidationError("--base", "relative-loop needs --base");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Outcome r;
    try {
        if (hh->parsed())
            r = run_hh(o);
        else if (loop->parsed())
            r = run_loop(o, "loop");
        else if (rel->parsed())
            r = run_loop(o, "relative-loop");
        else if (e2->parsed())
            r = run_e2(o, false);
        else if (chart->parsed())
            r = run_e2(o, true);
        else if (ext->parsed())
            r = run_ext_check(o);
        else if (tor->parsed())
            r = run_tor(o);
        else
            r = run_oracle_compare(o);
    } catch (const io::InputError& e) {
        std::cerr << "input error at " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    bool as_json = o.format == "json" && !chart->parsed();
    std::string body = as_json ? r.report.dump(2) + "\n" : r.text;
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "cannot write " << o.out << "\n";
            return 1;
        }
        f << body;
    } else {
        std::cout << body;
    }
    return r.code;
}
