// Polynomial text format: "[c0,c1,...]" or an expression in one variable.

#ifndef MBL_PARSE_HPP
#define MBL_PARSE_HPP

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <mbl/polynomial.hpp>

namespace mbl {

namespace detail {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string text) : s_(std::move(text)) {}

    Poly parse()
    {
        Poly p = expr();
        skip_space();
        if (pos_ != s_.size()) {
            fail("unexpected character");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    void skip_space()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    char peek()
    {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Poly expr()
    {
        Poly acc = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Poly term()
    {
        Poly acc = unary();
        for (;;) {
            char c = peek();
            if (c == '*' && !(pos_ + 1 < s_.size() && s_[pos_ + 1] == '*')) {
                ++pos_;
                acc = acc * unary();
            } else if (c == '/') {
                ++pos_;
                Poly d = unary();
                if (d.degree() != 0) {
                    fail("division by a non-constant");
                }
                acc = acc.scaled(Rational(1) / d.leading());
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
                // implicit product, e.g. "3z" or "2(z+1)"
                acc = acc * unary();
            } else {
                return acc;
            }
        }
    }

    Poly unary()
    {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Poly power()
    {
        Poly base = primary();
        char c = peek();
        bool caret = c == '^';
        bool stars = c == '*' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '*';
        if (caret || stars) {
            pos_ += caret ? 1 : 2;
            skip_space();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected a non-negative integer exponent");
            }
            unsigned long e = std::stoul(s_.substr(start, pos_ - start));
            if (e > 100000) {
                fail("exponent too large");
            }
            return pow(base, static_cast<unsigned>(e));
        }
        return base;
    }

    Poly primary()
    {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
                ++pos_;
            }
            return Poly(parse_rational(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            if (variable_ == '\0') {
                variable_ = c;
            } else if (variable_ != c) {
                fail(std::string("second variable '") + c + "'");
            }
            ++pos_;
            if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))
                && !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                fail("multi-letter identifiers are not supported");
            }
            return Poly::variable();
        }
        fail("expected a number, variable or '('");
    }

    std::string s_;
    std::size_t pos_ = 0;
    char variable_ = '\0';
};

inline std::string normalize_minus_signs(std::string_view text)
{
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text.substr(i, 3) == "\xE2\x88\x92") {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

} // namespace detail

/// Parses either a coefficient list "[c0,c1,...]" (lowest degree first) or an
/// expression such as "z^3-3*z" or "1/2*z^2-1/2". Exact throughout.
inline Poly parse_polynomial(std::string_view text)
{
    std::string s = detail::normalize_minus_signs(text);
    std::size_t first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        throw ParseError("empty polynomial");
    }
    if (s[first] == '[') {
        std::size_t last = s.find_last_not_of(" \t\r\n");
        if (s[last] != ']') {
            throw ParseError("unterminated coefficient list: " + s);
        }
        std::string body = s.substr(first + 1, last - first - 1);
        std::vector<Rational> coeffs;
        if (body.find_first_not_of(" \t\r\n") != std::string::npos) {
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) {
                // list items may carry JSON-style quotes
                std::string cleaned;
                for (char ch : item) {
                    if (ch != '"') {
                        cleaned.push_back(ch);
                    }
                }
                coeffs.push_back(parse_rational(cleaned));
            }
        }
        return Poly(std::move(coeffs));
    }
    return detail::ExpressionParser(s).parse();
}

/// Descending-order expression, e.g. "z^3-3*z" or "1/2*z^2-1/2"; "0" for zero.
inline std::string to_expression(const Poly& p, char var = 'z')
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
        if (sgn(c) == 0) {
            continue;
        }
        Rational mag = abs(c);
        if (sgn(c) < 0) {
            out += "-";
        } else if (!out.empty()) {
            out += "+";
        }
        std::string v;
        if (i >= 1) {
            v = std::string(1, var);
            if (i > 1) {
                v += "^" + std::to_string(i);
            }
        }
        if (i == 0) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += v;
        } else {
            out += mag.get_str() + "*" + v;
        }
    }
    return out;
}

} // namespace mbl

#endif
