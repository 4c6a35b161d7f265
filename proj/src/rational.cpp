#include "mwrank/rational.hpp"

#include <cctype>

#include "mwrank/errors.hpp"

namespace mw {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Context: return "context error";
        case ErrorKind::UndefinedDegree: return "undefined degree";
        case ErrorKind::Hypothesis: return "hypothesis error";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Degenerate: return "degenerate model";
        case ErrorKind::Minimality: return "minimality violation";
        case ErrorKind::Dossier: return "dossier error";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::NotSingular: return "not singular";
        case ErrorKind::NotQuasismooth: return "not quasismooth";
        case ErrorKind::Range: return "out of range";
        case ErrorKind::Manifest: return "manifest error";
        case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

std::string to_string(const Z& z) { return z.get_str(); }

std::string to_string(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

static bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Q parse_rational(std::string_view s) {
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error(ErrorKind::Parse, "malformed rational '" + std::string(s) + "'");
    Z n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(s) + "'");
    Q q(n, d);
    q.canonicalize();
    return neg ? Q(-q) : q;
}

}  // namespace mw
