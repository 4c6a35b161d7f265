#include "mwrank/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "mwrank/parser.hpp"

namespace mw {

namespace {

std::string join_lines(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : "\n") + x;
    return s;
}

struct Entry {
    std::string key, value;
    int line = 0, column = 0;  // where the value starts
};

struct Section {
    std::string kind, arg;
    int line = 0;
    std::vector<Entry> entries;
    const Entry* find(const std::string& k) const {
        for (const auto& e : entries)
            if (e.key == k) return &e;
        return nullptr;
    }
};

std::string trim(std::string_view s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

std::optional<long> parse_int(const std::string& s) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// Line and column of offset `off` inside a value starting at (line, col).
std::pair<int, int> position_in(const Entry& e, std::size_t off) {
    int line = e.line, col = e.column;
    for (std::size_t i = 0; i < off && i < e.value.size(); ++i) {
        if (e.value[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

class Validator {
public:
    Validator(std::string origin) : origin_(std::move(origin)) {}

    void problem(int line, const std::string& msg) {
        problems_.push_back({line, 0, origin_ + ":" + std::to_string(line) + ": " + msg});
    }
    void problem(int line, int col, const std::string& msg) {
        problems_.push_back({line, col, origin_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg});
    }
    bool ok() const { return problems_.empty(); }
    // In file order; problems on the same line keep the order they were found.
    std::vector<std::string> problems() const {
        auto sorted = problems_;
        std::stable_sort(sorted.begin(), sorted.end(), [](const Problem& a, const Problem& b) {
            return std::tie(a.line, a.column) < std::tie(b.line, b.column);
        });
        std::vector<std::string> out;
        for (auto& p : sorted) out.push_back(std::move(p.text));
        return out;
    }

    std::optional<Polynomial> poly(const Entry& e, const WeightSystem& ws, std::size_t off = 0, std::size_t len = std::string::npos) {
        auto [line, col] = position_in(e, off);
        try {
            return parse_polynomial(std::string_view(e.value).substr(off, len), ws, line, col);
        } catch (const ParseError& pe) {
            problem(pe.line(), pe.column(), e.key + ": " + pe.detail());
        } catch (const Error& err) {
            problem(line, col, e.key + ": " + err.what());
        }
        return std::nullopt;
    }

private:
    std::string origin_;
    struct Problem {
        int line, column;
        std::string text;
    };
    std::vector<Problem> problems_;
};

std::vector<Section> split_sections(std::string_view text, Validator& v) {
    std::vector<Section> out;
    Entry* open = nullptr;
    std::set<std::string> seen_headers;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::string t = trim(line);
        if (t.empty()) {
            open = nullptr;
            continue;
        }
        if ((line[0] == ' ' || line[0] == '\t') && open) {
            open->value += "\n" + line;
            while (!open->value.empty() && (open->value.back() == ' ' || open->value.back() == '\t' || open->value.back() == '\r'))
                open->value.pop_back();
            continue;
        }
        open = nullptr;
        if (t.front() == '[') {
            if (t.back() != ']') {
                v.problem(lineno, "unterminated section header");
                continue;
            }
            std::string inner = trim(t.substr(1, t.size() - 2));
            Section s;
            s.line = lineno;
            auto sp = inner.find_first_of(" \t");
            s.kind = inner.substr(0, sp);
            if (sp != std::string::npos) s.arg = trim(inner.substr(sp));
            if (s.kind == "model" || s.kind == "options") {
                if (!s.arg.empty()) v.problem(lineno, "[" + s.kind + "] takes no name");
                if (!seen_headers.insert(s.kind).second) v.problem(lineno, "duplicate section [" + s.kind + "]");
            } else if (s.kind == "dossier") {
                if (!valid_name(s.arg)) v.problem(lineno, "dossier name must be letters, digits, '_' or '-'");
                else if (!seen_headers.insert("dossier " + s.arg).second) v.problem(lineno, "duplicate dossier '" + s.arg + "'");
            } else {
                v.problem(lineno, "unknown section [" + inner + "]");
            }
            out.push_back(std::move(s));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            v.problem(lineno, "expected 'key = value'");
            continue;
        }
        if (out.empty()) {
            v.problem(lineno, "entry outside any section");
            continue;
        }
        Entry e;
        e.key = trim(line.substr(0, eq));
        std::size_t vs = line.find_first_not_of(" \t", eq + 1);
        e.value = vs == std::string::npos ? "" : trim(line.substr(vs));
        e.line = lineno;
        e.column = int(vs == std::string::npos ? line.size() : vs) + 1;
        if (e.key.empty()) {
            v.problem(lineno, "empty key");
            continue;
        }
        if (out.back().find(e.key)) {
            v.problem(lineno, "duplicate key '" + e.key + "'");
            continue;
        }
        out.back().entries.push_back(std::move(e));
        open = &out.back().entries.back();
    }
    return out;
}

void check_keys(const Section& s, const std::set<std::string>& allowed, Validator& v) {
    for (const auto& e : s.entries)
        if (!allowed.count(e.key)) v.problem(e.line, "unknown key '" + e.key + "' in [" + s.kind + "]");
}

const std::vector<std::string> kChartKeys = {"chart.x", "chart.y", "chart.z0", "chart.z1", "chart.z2"};

void read_dossier(const Section& s, Validator& v, Manifest& m) {
    std::set<std::string> allowed = {"point", "weights", "degree", "g", "lifts"};
    allowed.insert(kChartKeys.begin(), kChartKeys.end());
    check_keys(s, allowed, v);
    DossierInput in;
    in.name = s.arg;

    if (const Entry* e = s.find("point")) {
        std::string val = e->value;
        for (char& c : val)
            if (c == ':') c = ',';
        std::vector<Q> pt;
        std::stringstream ss(val);
        std::string part;
        bool bad = false;
        while (std::getline(ss, part, ',')) {
            try {
                pt.push_back(parse_rational(trim(part)));
            } catch (const Error&) {
                bad = true;
            }
        }
        if (bad || pt.size() != 3) v.problem(e->line, "point needs three rational coordinates");
        else if (pt[0] == 0 && pt[1] == 0 && pt[2] == 0) v.problem(e->line, "point coordinates are all zero");
        in.point = pt;
    } else {
        v.problem(s.line, "dossier '" + s.arg + "' needs a point");
    }

    if (const Entry* e = s.find("weights")) {
        std::vector<int> w;
        std::stringstream ss(e->value);
        std::string part;
        bool bad = false;
        while (std::getline(ss, part, ',')) {
            auto x = parse_int(trim(part));
            if (!x || *x < 1 || *x > 1000) bad = true;
            else w.push_back(int(*x));
        }
        if (bad || w.size() != 4) v.problem(e->line, "weights need four integers in 1..1000");
        else in.weights = w;
    }

    const Entry* g = s.find("g");
    bool any_explicit = s.find("degree") || s.find("lifts");
    for (const auto& k : kChartKeys) any_explicit = any_explicit || s.find(k);
    if (!g) {
        if (any_explicit) v.problem(s.line, "dossier '" + s.arg + "': degree, chart and lifts require g");
        m.dossiers.push_back(std::move(in));
        return;
    }
    bool complete = true;
    if (!s.find("weights")) {
        v.problem(s.line, "dossier '" + s.arg + "': g requires weights");
        complete = false;
    }
    for (const auto& k : kChartKeys)
        if (!s.find(k)) {
            v.problem(s.line, "dossier '" + s.arg + "': g requires " + k);
            complete = false;
        }
    std::optional<long> degree;
    if (const Entry* e = s.find("degree")) {
        degree = parse_int(e->value);
        if (!degree || *degree < 1) {
            v.problem(e->line, "degree must be a positive integer");
            complete = false;
        }
    } else {
        v.problem(s.line, "dossier '" + s.arg + "': g requires degree");
        complete = false;
    }
    if (!complete || !in.weights) {
        m.dossiers.push_back(std::move(in));
        return;
    }
    SingularityDossier d;
    d.ring = WeightSystem(*in.weights, {"s", "t", "u", "v"});
    d.degree = *degree;
    auto gp = v.poly(*g, d.ring);
    if (gp) d.g = *gp;
    for (const auto& k : kChartKeys) {
        auto p = v.poly(*s.find(k), d.ring);
        d.chart.push_back(p ? *p : Polynomial(d.ring));
    }
    if (const Entry* e = s.find("lifts")) {
        std::size_t start = 0;
        while (start <= e->value.size()) {
            std::size_t end = e->value.find(';', start);
            std::size_t len = (end == std::string::npos ? e->value.size() : end) - start;
            if (!trim(e->value.substr(start, len)).empty()) {
                auto p = v.poly(*e, d.ring, start, len);
                if (p) d.lifts.push_back(*p);
            }
            if (end == std::string::npos) break;
            start = end + 1;
        }
    }
    if (gp && !gp->is_zero()) {
        auto wd = weighted_degree(*gp);
        if (!wd.homogeneous || wd.degree != d.degree)
            v.problem(g->line, "g is not weighted homogeneous of degree " + std::to_string(d.degree));
    } else if (gp) {
        v.problem(g->line, "g is zero");
    }
    in.full = std::move(d);
    m.dossiers.push_back(std::move(in));
}

}  // namespace

ManifestError::ManifestError(std::vector<std::string> problems)
    : Error(ErrorKind::Manifest, std::to_string(problems.size()) + " problem(s)\n" + join_lines(problems)),
      problems_(std::move(problems)) {}

Manifest parse_manifest(std::string_view text, const std::string& origin) {
    Validator v(origin);
    Manifest m;
    m.origin = origin;
    std::vector<Section> sections = split_sections(text, v);

    const Section* model = nullptr;
    for (const auto& s : sections) {
        if (s.kind == "model" && !model) model = &s;
        if (s.kind == "options") {
            check_keys(s, {"candidates", "verbose", "format"}, v);
            if (const Entry* e = s.find("candidates")) {
                if (e->value == "auto") m.candidates = CandidateMode::Auto;
                else if (e->value == "declared") m.candidates = CandidateMode::Declared;
                else v.problem(e->line, "candidates must be 'auto' or 'declared'");
            }
            if (const Entry* e = s.find("verbose")) {
                if (e->value == "true" || e->value == "false") m.verbose = e->value == "true";
                else v.problem(e->line, "verbose must be 'true' or 'false'");
            }
            if (const Entry* e = s.find("format")) {
                if (e->value == "text" || e->value == "machine") m.machine = e->value == "machine";
                else v.problem(e->line, "format must be 'text' or 'machine'");
            }
        }
    }

    std::optional<Polynomial> P, Q;
    bool n_ok = false;
    if (!model) {
        v.problem(1, "missing [model] section");
    } else {
        check_keys(*model, {"n", "P", "Q"}, v);
        if (const Entry* e = model->find("n")) {
            auto n = parse_int(e->value);
            if (!n || *n < 1 || *n > 100) v.problem(e->line, "n must be an integer in 1..100");
            else {
                m.n = int(*n);
                n_ok = true;
            }
        } else {
            v.problem(model->line, "[model] needs n");
        }
        const WeightSystem B = base_ring();
        for (const char* key : {"P", "Q"}) {
            const Entry* e = model->find(key);
            if (!e) {
                v.problem(model->line, std::string("[model] needs ") + key);
                continue;
            }
            auto p = v.poly(*e, B);
            (key[0] == 'P' ? m.P_text : m.Q_text) = e->value;
            if (!p) continue;
            long want = (key[0] == 'P' ? 4L : 6L) * m.n;
            if (n_ok && !p->is_zero()) {
                auto wd = weighted_degree(*p);
                if (!wd.homogeneous || wd.degree != want) {
                    v.problem(e->line, std::string(key) + " must be homogeneous of degree " + std::to_string(want));
                    continue;
                }
            }
            (key[0] == 'P' ? P : Q) = *p;
        }
    }

    for (const auto& s : sections)
        if (s.kind == "dossier" && valid_name(s.arg)) read_dossier(s, v, m);
    if (m.candidates == CandidateMode::Declared && m.dossiers.empty())
        v.problem(1, "candidates = declared needs at least one dossier");

    if (n_ok && P && Q) {
        try {
            m.model = make_model(m.n, *P, *Q);
        } catch (const Error& e) {
            v.problem(model->line, e.what());
        }
    }
    if (!v.ok()) throw ManifestError(v.problems());
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ManifestError({path + ": cannot open file"});
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_manifest(ss.str(), path);
}

}  // namespace mw
