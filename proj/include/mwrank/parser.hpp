#pragma once

#include <string>
#include <string_view>

#include "mwrank/errors.hpp"
#include "mwrank/polynomial.hpp"

namespace mw {

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& msg)
        : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column),
          detail_(msg) {}
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    int line_, column_;
    std::string detail_;
};

inline constexpr long kMaxParsedDegree = 1000000;

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | variable | '(' expr ')'
// Juxtaposition is rejected; '/' only forms rational literals. line and
// column in errors are 1-based and offset by the given origin.
Polynomial parse_polynomial(std::string_view src, const WeightSystem& ws, int first_line = 1, int first_column = 1);

}  // namespace mw
