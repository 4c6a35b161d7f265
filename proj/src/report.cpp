#include "mwrank/report.hpp"

#include <openssl/evp.h>

#include <sstream>

#include "mwrank/errors.hpp"

namespace mw {

namespace {

bool valid_key(std::string_view k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && std::string_view("_.:+-").find(c) == std::string_view::npos)
            return false;
    return true;
}

std::string escape(std::string_view v) {
    std::string out;
    for (char c : v) {
        if (c == '\\') out += "\\\\";
        else if (c == '\n') out += "\\n";
        else if (c == '\r') out += "\\r";
        else out += c;
    }
    return out;
}

std::string unescape(std::string_view v, int line) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != '\\') {
            out += v[i];
            continue;
        }
        if (++i == v.size()) throw Error(ErrorKind::Parse, "report line " + std::to_string(line) + ": dangling escape");
        if (v[i] == '\\') out += '\\';
        else if (v[i] == 'n') out += '\n';
        else if (v[i] == 'r') out += '\r';
        else throw Error(ErrorKind::Parse, "report line " + std::to_string(line) + ": unknown escape");
    }
    return out;
}

const char* kHeader = "mwrank-report 1 ";

}  // namespace

void Report::add(std::string key, std::string value) {
    if (!valid_key(key)) throw Error(ErrorKind::Internal, "invalid report key '" + key + "'");
    fields.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> Report::get(std::string_view key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    return std::nullopt;
}

std::string render_machine(const Report& r) {
    std::string out = kHeader + r.command + "\n";
    for (const auto& [k, v] : r.fields) out += k + "=" + escape(v) + "\n";
    return out;
}

Report parse_machine(std::string_view text) {
    Report r;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind(kHeader, 0) != 0)
        throw Error(ErrorKind::Parse, "report line 1: missing header");
    r.command = line.substr(std::string_view(kHeader).size());
    int n = 1;
    while (std::getline(in, line)) {
        ++n;
        auto eq = line.find('=');
        if (eq == std::string::npos || !valid_key(std::string_view(line).substr(0, eq)))
            throw Error(ErrorKind::Parse, "report line " + std::to_string(n) + ": expected key=value");
        r.fields.emplace_back(line.substr(0, eq), unescape(std::string_view(line).substr(eq + 1), n));
    }
    return r;
}

std::string render_text(const Report& r, bool color) {
    const std::string bold = color ? "\033[1m" : "", reset = color ? "\033[0m" : "";
    std::ostringstream os;
    os << bold << "mwrank " << r.command << reset << "\n";
    std::string group;
    for (const auto& [k, v] : r.fields) {
        auto dot = k.find('.');
        std::string g = dot == std::string::npos ? "" : k.substr(0, dot);
        std::string rest = dot == std::string::npos ? k : k.substr(dot + 1);
        if (g != group) {
            group = g;
            if (!g.empty()) os << "\n" << bold << "[" << g << "]" << reset << "\n";
        }
        std::string shown = v;
        for (std::size_t p = 0; (p = shown.find('\n', p)) != std::string::npos; p += 5) shown.replace(p, 1, "\n    ");
        os << "  " << rest << " = " << shown << "\n";
    }
    return os.str();
}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw Error(ErrorKind::Internal, "SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

}  // namespace mw
