#include "mwrank/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mwrank/graded.hpp"
#include "mwrank/manifest.hpp"
#include "mwrank/parser.hpp"
#include "mwrank/pipeline.hpp"
#include "mwrank/report.hpp"

namespace mw {

namespace {

const char* kVersion = "mwrank 1.0";

struct Globals {
    bool machine = false;
    bool verbose = false;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// The command line as recorded in reports. --threads only affects scheduling
// and is left out so output does not depend on it.
std::string recorded_command(int argc, const char* const* argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--threads") {
            ++i;
            continue;
        }
        if (a.rfind("--threads=", 0) == 0) continue;
        if (a.find_first_of(" \t\"'") != std::string::npos || a.empty()) {
            std::string q = "'";
            for (char c : a) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
            a = q + "'";
        }
        out += (out.empty() ? "" : " ") + a;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Manifest, path + ": cannot open file");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<long> parse_list(const std::string& s, const char* what) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::Parse, std::string(what) + ": expected comma-separated integers, got '" + s + "'");
        }
    }
    if (out.empty()) throw Error(ErrorKind::Parse, std::string(what) + ": empty list");
    return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

template <class T>
std::string join_num(const std::vector<T>& v) {
    std::vector<std::string> s;
    for (const auto& x : v) s.push_back(std::to_string(x));
    return join(s, ",");
}

void add_meta(Report& r, const std::string& command) {
    r.add("meta.version", kVersion);
    r.add("meta.command", command);
}

void add_model(Report& r, const Manifest& m) {
    r.add("model.n", std::to_string(m.n));
    r.add("model.P", render(m.model.P));
    r.add("model.Q", render(m.model.Q));
    r.add("model.equation", "y^2 = x^3 + P*x + Q in " + ambient_ring(m.n).describe());
    r.add("model.candidates", m.candidates == CandidateMode::Auto ? "auto" : "declared");
}

void add_discriminant(Report& r, const DiscriminantData& dd) {
    r.add("discriminant.delta", render(dd.delta));
    r.add("discriminant.delta1", render(dd.delta1));
    r.add("discriminant.common", render(dd.common));
}

void add_candidates(Report& r, const CandidateSet& cs, const std::vector<std::string>& unresolved) {
    r.add("candidates.count", std::to_string(cs.points.size()));
    for (std::size_t i = 0; i < cs.points.size(); ++i) {
        std::string k = "candidates." + std::to_string(i + 1);
        r.add(k + ".point", format_point(cs.points[i].base));
        r.add(k + ".kind", point_kind_name(cs.points[i].kind));
        r.add(k + ".fiber", format_point(cs.points[i].fiber));
    }
    r.add("excluded.count", std::to_string(cs.excluded.size()));
    for (std::size_t i = 0; i < cs.excluded.size(); ++i)
        r.add("excluded." + std::to_string(i + 1), format_point(cs.excluded[i].base));
    r.add("unresolved.count", std::to_string(unresolved.size()));
    for (std::size_t i = 0; i < unresolved.size(); ++i) r.add("unresolved." + std::to_string(i + 1), unresolved[i]);
}

void add_dossier(Report& r, const SingularityDossier& d, bool detail) {
    const std::string k = "dossier." + d.name;
    r.add(k + ".point", format_point(d.point.base));
    r.add(k + ".provenance", d.provenance == Provenance::Auto ? "extracted" : "user");
    r.add(k + ".weights", d.ring.describe());
    r.add(k + ".degree", std::to_string(d.degree));
    r.add(k + ".g", render(d.g));
    r.add(k + ".isolated", d.isolated ? "true" : "false");
    if (d.milnor) r.add(k + ".milnor", std::to_string(*d.milnor));
    std::vector<std::string> lifts;
    for (const auto& l : d.lifts) lifts.push_back(render(l));
    r.add(k + ".lifts", lifts.empty() ? "none" : join(lifts, "; "));
    TildeQuotient T(JacobianRing(d.g), d.lifts);
    for (long m = 1; m <= 2; ++m) {
        long deg = m * d.degree - d.w();
        r.add(k + ".tilde_dim." + std::to_string(deg), std::to_string(T.piece(deg).dim()));
    }
    for (std::size_t i = 0; i < d.surface_points.size(); ++i) {
        const auto& sp = d.surface_points[i];
        r.add(k + ".surface." + std::to_string(i + 1),
              sp.type + " at " + format_point(sp.coords) + ", mu " + std::to_string(sp.mu) + ", lifts kept " +
                  std::to_string(sp.lifts));
    }
    if (detail) {
        const char* names[] = {"x", "y", "z0", "z1", "z2"};
        for (std::size_t i = 0; i < d.chart.size(); ++i) r.add(k + ".chart." + names[i], render(d.chart[i]));
        for (std::size_t i = 0; i < d.notes.size(); ++i) r.add(k + ".note." + std::to_string(i + 1), d.notes[i]);
    }
}

std::string opt_num(const std::optional<long>& v) { return v ? std::to_string(*v) : "omitted"; }

int cmd_rank(const std::string& path, Globals& g, Report& r) {
    Manifest m = load_manifest(path);
    g.machine = g.machine || m.machine;
    r.add("meta.input.manifest.sha256", sha256_hex(read_file(path)));
    const bool detail = g.verbose || g.machine || m.verbose;
    add_model(r, m);
    Analysis a = analyze(m.model, m.dossiers, m.candidates);
    if (a.disc) add_discriminant(r, *a.disc);
    add_candidates(r, a.candidates, a.unresolved);
    for (const auto& d : a.dossiers) add_dossier(r, d, detail);
    RankReport rep = compute_rank(a, g.threads);
    r.add("rank.r0", std::to_string(rep.r0));
    r.add("rank.r1", std::to_string(rep.r1));
    r.add("rank.verdict", verdict_name(rep.verdict));
    r.add("rank.statement", rep.statement());
    const HodgeSummary& h = *rep.hodge;
    r.add("hodge.h31", std::to_string(h.h31));
    r.add("hodge.h22_prim", std::to_string(h.h22_prim));
    for (std::size_t i = 0; i < h.betti.size(); ++i) r.add("hodge.b" + std::to_string(i), opt_num(h.betti[i]));
    r.add("hodge.euler_T", std::to_string(h.euler_T));
    r.add("hodge.mu_total", opt_num(h.mu_total));
    r.add("hodge.euler_Y", opt_num(h.euler_Y));
    for (std::size_t i = 0; i < h.notes.size(); ++i) r.add("hodge.note." + std::to_string(i + 1), h.notes[i]);
    if (detail)
        for (std::size_t i = 0; i < rep.provenance.size(); ++i)
            r.add("provenance." + std::to_string(i + 1), rep.provenance[i]);
    return rep.verdict == Verdict::Conditional ? 2 : 0;
}

int cmd_discriminant(const std::string& path, Globals& g, Report& r) {
    Manifest m = load_manifest(path);
    g.machine = g.machine || m.machine;
    r.add("meta.input.manifest.sha256", sha256_hex(read_file(path)));
    add_model(r, m);
    DiscriminantData dd = discriminant(m.model);
    add_discriminant(r, dd);
    CandidateSet cs = candidate_points(m.model, dd);
    std::vector<std::string> unresolved;
    for (const auto& u : cs.unresolved) unresolved.push_back(u.source + ": " + u.description);
    add_candidates(r, cs, unresolved);
    return 0;
}

std::vector<int> to_weights(const std::vector<long>& v) {
    std::vector<int> w;
    for (long x : v) {
        if (x < 1 || x > 100000) throw Error(ErrorKind::Range, "weights must be positive");
        w.push_back(int(x));
    }
    return w;
}

int cmd_hilbert(const std::string& weights, long degree, Report& r) {
    auto w = to_weights(parse_list(weights, "--weights"));
    HilbertSeries hs = hilbert_series_regular(w, degree);
    r.add("hilbert.weights", join_num(w));
    r.add("hilbert.degree", std::to_string(degree));
    r.add("hilbert.series", hs.to_string());
    r.add("hilbert.coefficients", join_num(hs.coefficients));
    r.add("hilbert.sigma", std::to_string(hs.sigma));
    r.add("hilbert.milnor_number", std::to_string(hs.total()));
    for (std::size_t i = 0; i < hs.warnings.size(); ++i) r.add("hilbert.warning." + std::to_string(i + 1), hs.warnings[i]);
    return 0;
}

int cmd_gs_hodge(const std::string& weights, const std::string& vars, const std::string& poly, const std::string& method,
                 Report& r) {
    auto w = to_weights(parse_list(weights, "--weights"));
    std::vector<std::string> names;
    if (!vars.empty()) {
        std::stringstream ss(vars);
        std::string part;
        while (std::getline(ss, part, ',')) names.push_back(part);
    } else if (w.size() == 5) {
        names = {"x", "y", "z0", "z1", "z2"};
    } else {
        for (std::size_t i = 0; i < w.size(); ++i) names.push_back("x" + std::to_string(i));
    }
    if (names.size() != w.size()) throw Error(ErrorKind::Range, "--vars must name one variable per weight");
    WeightSystem ws(w, names);
    JacobianRing J(parse_polynomial(poly, ws));
    r.add("gs.ring", ws.describe());
    r.add("gs.polynomial", render(J.f()));
    r.add("gs.degree", std::to_string(J.degree()));
    std::vector<std::pair<std::string, HodgeMethod>> methods;
    if (method == "product" || method == "both") methods.emplace_back("product", HodgeMethod::ProductFormula);
    if (method == "linear" || method == "both") methods.emplace_back("linear", HodgeMethod::LinearAlgebra);
    std::optional<PrimitiveHodge> first;
    for (const auto& [name, m] : methods) {
        PrimitiveHodge ph = gs_hodge_numbers(J, m);
        if (first && first->h != ph.h) throw Error(ErrorKind::Internal, "product formula and linear algebra disagree");
        if (!first) first = ph;
    }
    r.add("gs.quasismooth", "true");
    r.add("gs.method", method == "both" ? "product formula, cross-checked by linear algebra" : method);
    const long d = J.degree(), wt = ws.total();
    for (std::size_t k = 0; k < first->h.size(); ++k) {
        long deg = long(k + 1) * d - wt;
        r.add("gs.dim_R_" + std::to_string(deg), std::to_string(first->h[k]));
    }
    r.add("gs.dimension", std::to_string(first->dimension));
    r.add("gs.middle_betti", std::to_string(first->middle()));
    r.add("gs.euler", std::to_string(first->euler_characteristic()));
    return 0;
}

int cmd_hirzebruch(int m, int rk, Report& r) {
    HirzebruchTable t = hirzebruch_invariants(m, rk);
    r.add("W.m", std::to_string(t.m));
    r.add("W.r", std::to_string(t.r));
    r.add("W.h00", std::to_string(t.h00));
    r.add("W.h10", std::to_string(t.h10));
    r.add("W.h20", std::to_string(t.h20));
    r.add("W.h30", std::to_string(t.h30));
    r.add("W.h11", std::to_string(t.h11));
    r.add("W.h21", std::to_string(t.h21));
    r.add("W.euler", std::to_string(t.euler));
    r.add("W.check", "2*(h11 - h21) = " + std::to_string(2 * (t.h11 - t.h21)));
    return 0;
}

std::vector<std::vector<Q>> parse_points(const std::string& s, std::uint64_t seed) {
    std::vector<std::vector<Q>> pts;
    if (s.rfind("random:", 0) == 0) {
        auto cnt = parse_list(s.substr(7), "--points");
        if (cnt.size() != 1 || cnt[0] < 0 || cnt[0] > 1000) throw Error(ErrorKind::Range, "random:<count> with count in 0..1000");
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coord(-30, 30);
        while (long(pts.size()) < cnt[0]) {
            std::vector<Q> p = {Q(coord(rng)), Q(coord(rng)), Q(coord(rng))};
            if (p[0] == 0 && p[1] == 0 && p[2] == 0) continue;
            p = normalize_point(p);
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        return pts;
    }
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::vector<Q> p;
        std::stringstream ps(part);
        std::string c;
        while (std::getline(ps, c, ':')) p.push_back(parse_rational(c));
        if (p.size() != 3) throw Error(ErrorKind::Parse, "--points: expected a:b:c;d:e:f;...");
        pts.push_back(p);
    }
    return pts;
}

int cmd_defect(int degree, int mult, const std::string& points, std::uint64_t seed, Report& r) {
    auto pts = parse_points(points, seed);
    long defect = linear_system_defect(degree, mult, pts);
    std::vector<std::string> shown;
    for (const auto& p : pts) shown.push_back(format_point(p));
    r.add("defect.degree", std::to_string(degree));
    r.add("defect.multiplicity", std::to_string(mult));
    r.add("defect.points", shown.empty() ? "none" : join(shown, " "));
    r.add("defect.expected_codimension", std::to_string(long(pts.size()) * mult * (mult + 1) / 2));
    r.add("defect.value", std::to_string(defect));
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color_allowed) {
    CLI::App app{"Mordell-Weil rank of elliptic threefolds y^2 = x^3 + P x + Q over P^2", "mwrank"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--machine", g.machine, "line-delimited key=value output");
    app.add_flag("--verbose", g.verbose, "include charts, notes and provenance");
    app.add_option("--seed", g.seed, "seed for randomized inputs")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (output does not depend on it)")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();

    std::string manifest_path, weights, poly, vars, method = "both", points;
    long degree = 0;
    int m = 0, rk = 0, mult = 0, ldeg = 0;
    auto* rank = app.add_subcommand("rank", "Mordell-Weil rank from a manifest");
    rank->add_option("manifest", manifest_path)->required()->check(CLI::ExistingFile);
    auto* disc = app.add_subcommand("discriminant", "discriminant curve and candidate points");
    disc->add_option("manifest", manifest_path)->required()->check(CLI::ExistingFile);
    auto* hil = app.add_subcommand("hilbert", "Hilbert series of a weighted complete intersection of partials");
    hil->add_option("--weights", weights, "comma-separated weights")->required();
    hil->add_option("--degree", degree, "degree of the hypersurface")->required();
    auto* gsh = app.add_subcommand("gs-hodge", "primitive Hodge numbers of a quasismooth hypersurface");
    gsh->add_option("--weights", weights)->required();
    gsh->add_option("--poly", poly)->required();
    gsh->add_option("--vars", vars, "comma-separated variable names");
    gsh->add_option("--method", method)->check(CLI::IsMember({"product", "linear", "both"}))->capture_default_str();
    auto* hir = app.add_subcommand("hirzebruch", "Hodge numbers of the smooth Hirzebruch-type model");
    hir->add_option("--m", m)->required();
    hir->add_option("--r", rk)->required();
    auto* def = app.add_subcommand("defect", "defect of the linear system L_d(k^m)");
    def->add_option("--degree", ldeg)->required();
    def->add_option("--mult", mult)->required();
    def->add_option("--points", points, "a:b:c;d:e:f;... or random:<count>")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    Report r;
    int code = 0;
    try {
        auto* sub = app.get_subcommands().front();
        r.command = sub->get_name();
        add_meta(r, recorded_command(argc, argv));
        if (sub != rank && sub != disc) r.add("meta.input.arguments.sha256", sha256_hex(recorded_command(argc, argv)));
        if (sub == rank) code = cmd_rank(manifest_path, g, r);
        else if (sub == disc) code = cmd_discriminant(manifest_path, g, r);
        else if (sub == hil) code = cmd_hilbert(weights, degree, r);
        else if (sub == gsh) code = cmd_gs_hodge(weights, vars, poly, method, r);
        else if (sub == hir) code = cmd_hirzebruch(m, rk, r);
        else code = cmd_defect(ldeg, mult, points, g.seed, r);
    } catch (const ManifestError& e) {
        err << "error: manifest has " << e.problems().size() << " problem(s)\n";
        for (const auto& p : e.problems()) err << "  " << p << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    if (g.machine) out << render_machine(r);
    else out << render_text(r, color_allowed && std::getenv("NO_COLOR") == nullptr);
    return code;
}

}  // namespace mw
