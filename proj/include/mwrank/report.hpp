#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mw {

// Ordered key/value records. Dotted keys form the tree: "dossier.p1.weights".
struct Report {
    std::string command;  // subcommand name
    std::vector<std::pair<std::string, std::string>> fields;

    void add(std::string key, std::string value);
    std::optional<std::string> get(std::string_view key) const;
    bool operator==(const Report& o) const = default;
};

// Machine format: a header line "mwrank-report 1 <command>" followed by one
// "key=value" line per field. Backslash, newline and carriage return in
// values are escaped as \\, \n and \r. Keys match [A-Za-z0-9_.:+-]+.
std::string render_machine(const Report& r);
Report parse_machine(std::string_view text);

// Human format: fields grouped under their first key segment.
std::string render_text(const Report& r, bool color);

std::string sha256_hex(std::string_view data);

}  // namespace mw
