#ifndef POLYINV_TEXT_HPP
#define POLYINV_TEXT_HPP

#include <cctype>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyinv/poly_map.hpp"
#include "polyinv/polynomial.hpp"
#include "polyinv/series.hpp"

namespace polyinv {

// X,Y for two variables, X1..Xm otherwise.
inline std::vector<std::string> default_variable_names(std::size_t m) {
    if (m == 2) return {"X", "Y"};
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t i = 0; i < m; ++i) names.push_back("X" + std::to_string(i + 1));
    return names;
}

// ---------------------------------------------------------------------------
// Printing. Canonical form: terms grevlex-descending, coefficients `p/q`
// (`/q` omitted when q = 1), `^` for powers >= 2, explicit `*` between
// factors. This exact form is the parser's round-trip target.
// ---------------------------------------------------------------------------

inline std::string print_term(const Polynomial::Term& t, const std::vector<std::string>& names,
                              bool leading) {
    std::string out;
    const bool negative = t.coeff.sign() < 0;
    if (leading) {
        if (negative) out += "-";
    } else {
        out += negative ? " - " : " + ";
    }
    const Rational abs_coeff = negative ? -t.coeff : t.coeff;
    if (t.mono.is_constant()) {
        out += abs_coeff.str();
        return out;
    }
    bool printed_factor = false;
    if (!abs_coeff.is_one()) {
        out += abs_coeff.str();
        printed_factor = true;
    }
    for (std::size_t j = 0; j < t.mono.arity(); ++j) {
        const auto e = t.mono.exponents[j];
        if (e == 0) continue;
        if (printed_factor) out += "*";
        out += names.at(j);
        if (e >= 2) out += "^" + std::to_string(e);
        printed_factor = true;
    }
    return out;
}

inline std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool leading = true;
    for (const auto& t : p.terms()) {
        out += print_term(t, names, leading);
        leading = false;
    }
    return out;
}

inline std::string print_polynomial(const Polynomial& p) {
    return print_polynomial(p, default_variable_names(p.arity()));
}

// `c0 + (c1)*t + (c2)*t^2 + ...`, every order up to the truncation printed.
inline std::string print_series(const TruncSeries& s, const std::vector<std::string>& names) {
    std::string out = print_polynomial(s.coeff(0), names);
    for (std::size_t j = 1; j <= s.order(); ++j) {
        out += " + (" + print_polynomial(s.coeff(j), names) + ")*t";
        if (j >= 2) out += "^" + std::to_string(j);
    }
    return out;
}

inline std::string print_series(const TruncSeries& s) {
    return print_series(s, default_variable_names(s.arity()));
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    return os << print_polynomial(p);
}

inline std::ostream& operator<<(std::ostream& os, const TruncSeries& s) {
    return os << print_series(s);
}

inline std::ostream& operator<<(std::ostream& os, const PolyMap& f) {
    for (std::size_t i = 0; i < f.arity(); ++i) {
        if (i) os << "; ";
        os << f[i];
    }
    return os;
}

// ---------------------------------------------------------------------------
// Parsing. Hand-written recursive descent over a small token stream.
// Grammar: `+ - * ^` with standard precedence, `^` tightest and
// right-associative with non-negative integer exponents, unary minus,
// parentheses, `p/q` rational literals. Implicit multiplication is accepted
// only for a variable directly following a coefficient (`2X`, `1/2X^3`).
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, std::size_t column)
        : std::runtime_error(message + " at column " + std::to_string(column)), column_(column) {}

    std::size_t column() const { return column_; }

  private:
    std::size_t column_;
};

namespace detail {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t col = i + 1;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::Kind::Number, text.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Kind::Ident, text.substr(i, j - i), col});
            i = j;
            continue;
        }
        Token::Kind kind;
        switch (c) {
            case '+': kind = Token::Kind::Plus; break;
            case '-': kind = Token::Kind::Minus; break;
            case '*': kind = Token::Kind::Star; break;
            case '^': kind = Token::Kind::Caret; break;
            case '/': kind = Token::Kind::Slash; break;
            case '(': kind = Token::Kind::LParen; break;
            case ')': kind = Token::Kind::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", col);
        }
        out.push_back({kind, std::string(1, c), col});
        ++i;
    }
    out.push_back({Token::Kind::End, "", text.size() + 1});
    return out;
}

class PolyParser {
  public:
    PolyParser(const std::string& text, const std::vector<std::string>& vars)
        : tokens_(lex(text)), vars_(vars) {}

    Polynomial parse() {
        if (peek().kind == Token::Kind::End) throw ParseError("empty expression", 1);
        Polynomial p = parse_expr();
        if (peek().kind != Token::Kind::End)
            throw ParseError("unexpected token '" + peek().text + "'", peek().column);
        return p;
    }

  private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }
    bool accept(Token::Kind k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::size_t arity() const { return vars_.size(); }

    Polynomial parse_expr() {
        Polynomial acc = parse_term();
        while (true) {
            if (accept(Token::Kind::Plus))
                acc += parse_term();
            else if (accept(Token::Kind::Minus))
                acc -= parse_term();
            else
                return acc;
        }
    }

    Polynomial parse_term() {
        Polynomial acc = parse_unary();
        while (accept(Token::Kind::Star)) acc *= parse_unary();
        return acc;
    }

    Polynomial parse_unary() {
        if (accept(Token::Kind::Minus)) return -parse_unary();
        if (accept(Token::Kind::Plus)) return parse_unary();
        return parse_power();
    }

    Polynomial parse_power() {
        Polynomial base = parse_atom();
        if (accept(Token::Kind::Caret)) {
            const std::uint64_t e = parse_exponent();
            return base.pow(e);
        }
        return base;
    }

    Polynomial parse_atom() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Token::Kind::Number: {
                Rational value = parse_rational_literal();
                // Juxtaposed variable after a coefficient: 2X, 1/2X^3.
                if (peek().kind == Token::Kind::Ident) {
                    Polynomial var = parse_variable();
                    if (accept(Token::Kind::Caret)) var = var.pow(parse_exponent());
                    return Polynomial::constant(arity(), value) * var;
                }
                return Polynomial::constant(arity(), value);
            }
            case Token::Kind::Ident:
                return parse_variable();
            case Token::Kind::LParen: {
                advance();
                Polynomial inner = parse_expr();
                if (!accept(Token::Kind::RParen))
                    throw ParseError("expected ')'", peek().column);
                return inner;
            }
            default:
                throw ParseError("expected a number, variable or '('", tok.column);
        }
    }

    Polynomial parse_variable() {
        const Token& tok = advance();
        for (std::size_t j = 0; j < vars_.size(); ++j)
            if (vars_[j] == tok.text) return Polynomial::variable(arity(), j);
        throw ParseError("unknown identifier '" + tok.text + "'", tok.column);
    }

    Rational parse_rational_literal() {
        const Token& num = advance();
        mpz_class numerator(num.text);
        if (peek().kind == Token::Kind::Slash) {
            advance();
            if (peek().kind != Token::Kind::Number)
                throw ParseError("expected an integer denominator", peek().column);
            const Token& den = advance();
            mpz_class denominator(den.text);
            if (denominator == 0) throw ParseError("division by zero", den.column);
            return Rational(std::move(numerator), std::move(denominator));
        }
        return Rational(std::move(numerator), mpz_class(1));
    }

    // Right-associative integer tower: 2^3^2 = 2^(3^2).
    std::uint64_t parse_exponent() {
        const Token& tok = peek();
        if (tok.kind == Token::Kind::Minus)
            throw ParseError("negative exponent not allowed", tok.column);
        if (tok.kind != Token::Kind::Number)
            throw ParseError("exponent must be a non-negative integer", tok.column);
        advance();
        if (peek().kind == Token::Kind::Slash)
            throw ParseError("fractional exponent not allowed", peek().column);
        constexpr std::uint64_t kMaxExponent = 1u << 20;
        std::uint64_t base;
        try {
            base = std::stoul(tok.text);
        } catch (const std::exception&) {
            throw ParseError("exponent too large", tok.column);
        }
        if (base > kMaxExponent) throw ParseError("exponent too large", tok.column);
        std::uint64_t value = base;
        if (accept(Token::Kind::Caret)) {
            const std::uint64_t upper = parse_exponent();
            value = 1;
            for (std::uint64_t i = 0; i < upper; ++i) {
                value *= base;
                if (value > kMaxExponent) throw ParseError("exponent too large", tok.column);
            }
        }
        if (value > kMaxExponent) throw ParseError("exponent too large", tok.column);
        return value;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const std::vector<std::string>& vars_;
};

}  // namespace detail

inline Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
    return detail::PolyParser(text, vars).parse();
}

// ---------------------------------------------------------------------------
// Map files: optional `vars: X, Y` header, then one component expression per
// line (or `;`-separated). Blank lines and `#` comments are skipped. Without
// a header, two components default to X,Y and m components to X1..Xm.
// ---------------------------------------------------------------------------

struct ParsedMap {
    std::vector<std::string> variables;
    PolyMap map;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline ParsedMap parse_map_text(const std::string& content) {
    std::vector<std::string> vars;
    bool have_vars = false;
    std::vector<std::string> exprs;
    for (const auto& raw_line : detail::split(content, '\n')) {
        const std::string line = detail::trim(raw_line);
        if (line.empty() || line[0] == '#') continue;
        if (!have_vars && exprs.empty() && line.rfind("vars:", 0) == 0) {
            for (const auto& piece : detail::split(line.substr(5), ',')) {
                const std::string name = detail::trim(piece);
                if (name.empty()) throw std::invalid_argument("map file: empty variable name");
                vars.push_back(name);
            }
            have_vars = true;
            continue;
        }
        for (const auto& piece : detail::split(line, ';')) {
            const std::string expr = detail::trim(piece);
            if (!expr.empty()) exprs.push_back(expr);
        }
    }
    if (exprs.empty()) throw std::invalid_argument("map file: no components");
    if (!have_vars) vars = default_variable_names(exprs.size());
    if (vars.size() != exprs.size())
        throw std::invalid_argument("map file: component count (" + std::to_string(exprs.size()) +
                                    ") does not match variable count (" +
                                    std::to_string(vars.size()) + ")");
    std::vector<Polynomial> comps;
    comps.reserve(exprs.size());
    for (const auto& e : exprs) comps.push_back(parse_polynomial(e, vars));
    return ParsedMap{std::move(vars), PolyMap(std::move(comps))};
}

inline std::string print_map_file(const PolyMap& f, const std::vector<std::string>& names) {
    std::string out = "vars: ";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    out += "\n";
    for (const auto& c : f.components()) out += print_polynomial(c, names) + "\n";
    return out;
}

inline std::string print_map_file(const PolyMap& f) {
    return print_map_file(f, default_variable_names(f.arity()));
}

}  // namespace polyinv

#endif
