#include "mwrank/parser.hpp"

#include <cctype>

namespace mw {

namespace {

enum class Tok { End, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1, column = 1;
};

class Parser {
public:
    Parser(std::string_view src, const WeightSystem& ws, int line, int column)
        : src_(src), ws_(ws), line_(line), col_(column) {
        advance();
    }

    Polynomial parse() {
        if (cur_.kind == Tok::End) fail(cur_, "empty expression");
        Polynomial p = expr();
        if (cur_.kind != Tok::End) fail(cur_, "unexpected '" + cur_.text + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) step();
        cur_ = Token{};
        cur_.line = line_;
        cur_.column = col_;
        if (pos_ >= src_.size()) return;
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) cur_.text += step();
            cur_.kind = Tok::Number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                cur_.text += step();
            cur_.kind = Tok::Ident;
            return;
        }
        cur_.text = std::string(1, step());
        switch (c) {
            case '+': cur_.kind = Tok::Plus; break;
            case '-': cur_.kind = Tok::Minus; break;
            case '*': cur_.kind = Tok::Star; break;
            case '/': cur_.kind = Tok::Slash; break;
            case '^': cur_.kind = Tok::Caret; break;
            case '(': cur_.kind = Tok::LParen; break;
            case ')': cur_.kind = Tok::RParen; break;
            default: fail(cur_, "unexpected character '" + cur_.text + "'");
        }
    }

    char step() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void check_degree(const Token& at, long deg) const {
        if (deg > kMaxParsedDegree) fail(at, "degree exceeds " + std::to_string(kMaxParsedDegree));
    }

    static long degree_of(const Polynomial& p) { return p.is_zero() ? 0 : p.max_weighted_degree(); }

    Polynomial expr() {
        Polynomial acc = term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            bool minus = cur_.kind == Tok::Minus;
            advance();
            Polynomial t = term();
            if (minus) acc -= t;
            else acc += t;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (cur_.kind == Tok::Star) {
            Token at = cur_;
            advance();
            Polynomial f = unary();
            check_degree(at, degree_of(acc) + degree_of(f));
            acc = acc * f;
        }
        if (cur_.kind == Tok::Number || cur_.kind == Tok::Ident || cur_.kind == Tok::LParen)
            fail(cur_, "implicit multiplication is not allowed; write '*'");
        if (cur_.kind == Tok::Slash) fail(cur_, "'/' is only allowed inside a rational literal such as 3/4");
        return acc;
    }

    Polynomial unary() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return -unary();
        }
        if (cur_.kind == Tok::Plus) {
            advance();
            return unary();
        }
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (cur_.kind != Tok::Caret) return base;
        advance();
        if (cur_.kind != Tok::Number) fail(cur_, "exponent must be a non-negative integer");
        Token at = cur_;
        if (at.text.size() > 7 || std::stol(at.text) > kMaxParsedDegree) fail(at, "exponent too large");
        long e = std::stol(at.text);
        advance();
        if (cur_.kind == Tok::Caret) fail(cur_, "chained exponents need parentheses");
        check_degree(at, degree_of(base) * e);
        return base.pow(unsigned(e));
    }

    Polynomial primary() {
        Token t = cur_;
        switch (t.kind) {
            case Tok::Number: {
                advance();
                std::string lit = t.text;
                if (cur_.kind == Tok::Slash) {
                    advance();
                    if (cur_.kind != Tok::Number) fail(cur_, "malformed rational: expected a denominator");
                    if (cur_.text.find_first_not_of('0') == std::string::npos) fail(cur_, "malformed rational: zero denominator");
                    lit += "/" + cur_.text;
                    advance();
                }
                return Polynomial::constant(ws_, parse_rational(lit));
            }
            case Tok::Ident: {
                auto idx = ws_.index_of(t.text);
                if (!idx) fail(t, "unknown variable '" + t.text + "'");
                advance();
                return Polynomial::variable(ws_, *idx);
            }
            case Tok::LParen: {
                advance();
                Polynomial p = expr();
                if (cur_.kind != Tok::RParen) fail(cur_, "expected ')'");
                advance();
                return p;
            }
            case Tok::End: fail(t, "unexpected end of input");
            default: fail(t, "unexpected '" + t.text + "'");
        }
    }

    std::string_view src_;
    const WeightSystem& ws_;
    std::size_t pos_ = 0;
    int line_, col_;
    Token cur_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view src, const WeightSystem& ws, int first_line, int first_column) {
    return Parser(src, ws, first_line, first_column).parse();
}

}  // namespace mw
