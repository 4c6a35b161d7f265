#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "mwrank/cli.hpp"
#include "mwrank/manifest.hpp"
#include "mwrank/parser.hpp"
#include "mwrank/report.hpp"
#include "test_support.hpp"

using namespace mw;
using mwtest::poly;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "mwrank");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// A manifest in a fresh temporary file.
class TempManifest {
public:
    explicit TempManifest(const std::string& text) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("mwrank_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".mwm");
        std::ofstream(path_) << text;
    }
    ~TempManifest() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

std::string field(const std::string& machine, const std::string& key) {
    auto r = parse_machine(machine).get(key);
    return r ? *r : "<missing>";
}

const char* kWorked = "[model]\nn = 1\nP = 0\nQ = z0^2*z2^2*(z0*z2 - z1^2)\n";

}  // namespace

TEST_CASE("parser accepts the grammar") {
    auto ws = ambient_ring(1);
    CHECK(render(poly("x^3 + 1/2*x*z0^4 - y^2", ws)) == "x^3 + 1/2*x*z0^4 - y^2");
    CHECK(poly("-(z0 - z1)^2", ws) == poly("-z0^2 + 2*z0*z1 - z1^2", ws));
    CHECK(poly("+ -z0", ws) == poly("-1*z0", ws));
    CHECK(poly("(z0)^0", ws) == poly("1", ws));
    CHECK(poly("3/6*z1", ws) == poly("1/2*z1", ws));
    CHECK(poly("  z0 *\n z1 ", ws) == poly("z0*z1", ws));
}

TEST_CASE("parser errors carry line and column") {
    auto ws = ambient_ring(1);
    struct Row {
        const char* src;
        int line, column;
        const char* detail;
    } rows[] = {
        {"2z0", 1, 2, "implicit multiplication is not allowed; write '*'"},
        {"z0 + w", 1, 6, "unknown variable 'w'"},
        {"z0 +", 1, 5, "unexpected end of input"},
        {"(z0 + z1", 1, 9, "expected ')'"},
        {"z0/2", 1, 3, "'/' is only allowed inside a rational literal such as 3/4"},
        {"1/0", 1, 3, "malformed rational: zero denominator"},
        {"z0^-1", 1, 4, "exponent must be a non-negative integer"},
        {"z0^2^3", 1, 5, "chained exponents need parentheses"},
        {"z0\n + z1 $", 2, 7, "unexpected character '$'"},
        {"", 1, 1, "empty expression"},
        {"z0 z1", 1, 4, "implicit multiplication is not allowed; write '*'"},
    };
    for (const auto& r : rows) {
        CAPTURE(r.src);
        try {
            parse_polynomial(r.src, ws);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == r.line);
            CHECK(e.column() == r.column);
            CHECK(e.detail() == r.detail);
            CHECK(e.kind() == ErrorKind::Parse);
        }
    }
    try {
        parse_polynomial("z0 +\n  w", ws, 5, 10);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
        CHECK(e.column() == 3);
    }
}

TEST_CASE("manifest parsing") {
    Manifest m = parse_manifest(std::string(kWorked) + "[options]\ncandidates = auto\nverbose = true\nformat = machine\n");
    CHECK(m.n == 1);
    CHECK(m.model.P.is_zero());
    CHECK(m.candidates == CandidateMode::Auto);
    CHECK(m.verbose);
    CHECK(m.machine);

    Manifest cont = parse_manifest("# comment\n[model]  # trailing\nn = 1\nP = 0\nQ = z0^6 +\n  z1^6 + # split\n  z2^6\n");
    CHECK(cont.model.Q == poly("z0^6 + z1^6 + z2^6", base_ring()));

    Manifest dec = parse_manifest(std::string(kWorked) +
                                  "[options]\ncandidates = declared\n[dossier p]\npoint = 2, 0, 0\nweights = 1, 2, 2, 3\n");
    CHECK(dec.candidates == CandidateMode::Declared);
    REQUIRE(dec.dossiers.size() == 1);
    CHECK(dec.dossiers[0].name == "p");
    CHECK(dec.dossiers[0].weights == std::vector<int>{1, 2, 2, 3});
}

TEST_CASE("manifest problems are all listed in file order") {
    const char* text =
        "[model]\n"
        "n = 0\n"
        "P = z0^3\n"
        "Q = z0^6 + w\n"
        "bogus = 1\n"
        "[options]\n"
        "candidates = maybe\n"
        "[dossier a]\n"
        "weights = 1,2\n"
        "[weird]\n";
    try {
        parse_manifest(text, "m.mwm");
        FAIL("expected a manifest error");
    } catch (const ManifestError& e) {
        CHECK(e.kind() == ErrorKind::Manifest);
        CHECK(e.problems() == std::vector<std::string>{
                                  "m.mwm:2: n must be an integer in 1..100",
                                  "m.mwm:4:12: Q: unknown variable 'w'",
                                  "m.mwm:5: unknown key 'bogus' in [model]",
                                  "m.mwm:7: candidates must be 'auto' or 'declared'",
                                  "m.mwm:8: dossier 'a' needs a point",
                                  "m.mwm:9: weights need four integers in 1..1000",
                                  "m.mwm:10: unknown section [weird]",
                              });
    }
    try {
        parse_manifest("[model]\nn = 1\nP = z0^3\nQ = z0^6 + 2z1^6\n", "b.mwm");
        FAIL("expected a manifest error");
    } catch (const ManifestError& e) {
        CHECK(e.problems() == std::vector<std::string>{
                                  "b.mwm:3: P must be homogeneous of degree 4",
                                  "b.mwm:4:13: Q: implicit multiplication is not allowed; write '*'",
                              });
    }
    CHECK_THROWS_AS(parse_manifest(""), ManifestError);
    CHECK_THROWS_AS(parse_manifest(std::string(kWorked) + "[model]\n"), ManifestError);
    CHECK_THROWS_AS(parse_manifest(std::string(kWorked) + "[options]\ncandidates = declared\n"), ManifestError);
    CHECK_THROWS_AS(load_manifest("/nonexistent/path.mwm"), Error);
}

TEST_CASE("machine reports round-trip") {
    Report r;
    r.command = "rank";
    r.add("a.b", "plain");
    r.add("multi", "line one\nline two\\with backslash\r");
    r.add("empty", "");
    r.add("x:y+z-1", "=equals=");
    std::string text = render_machine(r);
    CHECK(text.rfind("mwrank-report 1 rank\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    Report back = parse_machine(text);
    CHECK(back.command == r.command);
    CHECK(back.fields == r.fields);
    CHECK(render_machine(back) == text);

    CHECK_THROWS_AS(parse_machine("no header\n"), Error);
    CHECK_THROWS_AS(parse_machine("mwrank-report 1 rank\nnovalue\n"), Error);
    CHECK_THROWS_AS(parse_machine("mwrank-report 1 rank\nk=dangling\\\n"), Error);
    CHECK_THROWS_AS(parse_machine("mwrank-report 1 rank\nk=bad\\q\n"), Error);
    CHECK_THROWS_AS(r.add("bad key", "v"), Error);
}

TEST_CASE("text reports group by prefix") {
    Report r;
    r.command = "hilbert";
    r.add("meta.version", "v");
    r.add("hilbert.series", "1 + t");
    r.add("hilbert.note", "a\nb");
    std::string t = render_text(r, false);
    CHECK(t == "mwrank hilbert\n\n[meta]\n  version = v\n\n[hilbert]\n  series = 1 + t\n  note = a\n    b\n");
    CHECK(render_text(r, true).find("\033[1m") != std::string::npos);
}

TEST_CASE("SHA-256 digests") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("rank subcommand") {
    TempManifest f(kWorked);
    CliRun r = cli({"--machine", "rank", f.path()});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(field(r.out, "rank.r1") == "2");
    CHECK(field(r.out, "rank.statement") == "rank MW = 2 (exact: r0 = 0, r1 = 2)");
    CHECK(field(r.out, "meta.input.manifest.sha256") == sha256_hex(kWorked));
    CHECK(field(r.out, "candidates.count") == "3");

    CliRun text = cli({"rank", f.path()});
    CHECK(text.code == 0);
    CHECK(text.out.find("[rank]") != std::string::npos);
    CHECK(text.out.find("\033[") == std::string::npos);
}

TEST_CASE("manifest options select the output format") {
    TempManifest f(std::string(kWorked) + "[options]\nformat = machine\n");
    CliRun r = cli({"rank", f.path()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("mwrank-report 1 rank\n", 0) == 0);
    CHECK(field(r.out, "rank.r1") == "2");
    CliRun d = cli({"discriminant", f.path()});
    CHECK(d.out.rfind("mwrank-report 1 discriminant\n", 0) == 0);
}

TEST_CASE("output does not depend on --threads") {
    TempManifest f(kWorked);
    CliRun one = cli({"--machine", "--verbose", "rank", f.path()});
    for (const char* t : {"2", "4", "16"}) {
        CliRun many = cli({"--machine", "--verbose", "--threads", t, "rank", f.path()});
        CHECK(many.out == one.out);
        CHECK(many.code == one.code);
    }
    CliRun eq = cli({"--machine", "--verbose", "--threads=3", "rank", f.path()});
    CHECK(eq.out == one.out);
}

TEST_CASE("exit codes") {
    TempManifest cond("[model]\nn = 1\nP = 0\nQ = z1*(z0^2 - 2*z2^2)*(z1^3 + z0^3 + z2^3)\n");
    CliRun c = cli({"--machine", "rank", cond.path()});
    CHECK(c.code == 2);
    CHECK(field(c.out, "rank.verdict") == "conditional");

    TempManifest bad("[model]\nn = 1\nP = z0^3\nQ = z0^6\n");
    CliRun b = cli({"rank", bad.path()});
    CHECK(b.code == 1);
    CHECK(b.out.empty());
    CHECK(b.err.find("P must be homogeneous of degree 4") != std::string::npos);

    CHECK(cli({"rank", "/nonexistent/file.mwm"}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({}).code == 1);
    CHECK(cli({"--threads", "0", "hirzebruch", "--m", "1", "--r", "0"}).code == 1);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"hirzebruch", "--m", "9", "--r", "0"}).code == 1);
}

TEST_CASE("utility subcommands") {
    CliRun h = cli({"--machine", "hilbert", "--weights", "2,3,1,1", "--degree", "6"});
    CHECK(h.code == 0);
    CHECK(field(h.out, "hilbert.milnor_number") == "50");

    CliRun g = cli({"--machine", "gs-hodge", "--weights", "6,9,1,1,1", "--vars", "x,y,z0,z1,z2", "--poly",
                    "y^2 + x^3 + z0^18 + z1^18 + z2^18"});
    CHECK(g.code == 0);
    CHECK(g.out.find("272") != std::string::npos);

    CliRun z = cli({"--machine", "hirzebruch", "--m", "8", "--r", "0"});
    CHECK(z.code == 0);
    CHECK(field(z.out, "W.h11") == "10");

    CliRun d = cli({"--machine", "defect", "--degree", "2", "--mult", "2", "--points", "1:0:0;0:1:0"});
    CHECK(d.code == 0);
    CHECK(field(d.out, "defect.value") == "1");

    CliRun s1 = cli({"--machine", "--seed", "7", "defect", "--degree", "18", "--mult", "6", "--points", "random:8"});
    CliRun s2 = cli({"--machine", "--seed", "7", "defect", "--degree", "18", "--mult", "6", "--points", "random:8"});
    CHECK(s1.code == 0);
    CHECK(s1.out == s2.out);
    CHECK(field(s1.out, "defect.value") == "0");

    CHECK(cli({"hilbert", "--weights", "2,x", "--degree", "6"}).code == 1);
}

TEST_CASE("full user dossiers reproduce the automatic rank") {
    std::string text = std::string(kWorked) +
                       "[options]\ncandidates = declared\n"
                       "[dossier p1]\npoint = 1, 0, 0\nweights = 1, 2, 2, 3\ndegree = 6\n"
                       "g = -s^2*t^2 + t^3 + u^3 - v^2\n"
                       "chart.x = u\nchart.y = v\nchart.z0 = 1\nchart.z1 = s\nchart.z2 = t\n"
                       "[dossier p2]\npoint = 0, 1, 0\nweights = 1, 2, 2, 3\ndegree = 6\n"
                       "g = -s^2*t^2 + u^3 - v^2\n"
                       "chart.x = u\nchart.y = v\nchart.z0 = s\nchart.z1 = 1\nchart.z2 = t\n"
                       "[dossier p3]\npoint = 0, 0, 1\nweights = 2, 1, 2, 3\ndegree = 6\n"
                       "g = s^3 - s^2*t^2 + u^3 - v^2\n"
                       "chart.x = u\nchart.y = v\nchart.z0 = s\nchart.z1 = t\nchart.z2 = 1\n"
                       "lifts = t^4; t^2*u\n";
    TempManifest f(text);
    CliRun r = cli({"--machine", "--verbose", "rank", f.path()});
    CHECK(r.code == 0);
    CHECK(field(r.out, "rank.r1") == "2");
    CHECK(field(r.out, "dossier.p3.provenance") == "user");
    CHECK(field(r.out, "dossier.p3.lifts") == "t^4; t^2*u");
}
