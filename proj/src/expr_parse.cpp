#include "sodehelm/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace sodehelm {

namespace {

struct Token {
    enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Type type = End;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        Token t;
        t.pos = i_;
        if (i_ >= s_.size()) {
            t.type = Token::End;
            return t;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            if (j < s_.size() && s_[j] == '.') {
                ++j;
                if (j >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[j])))
                    throw ParseError("malformed decimal literal", t.pos);
                while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            }
            t.type = Token::Number;
            t.text = s_.substr(i_, j - i_);
            i_ = j;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            t.type = Token::Ident;
            t.text = s_.substr(i_, j - i_);
            i_ = j;
            return t;
        }
        ++i_;
        switch (c) {
            case '+': t.type = Token::Plus; return t;
            case '-': t.type = Token::Minus; return t;
            case '*': t.type = Token::Star; return t;
            case '/': t.type = Token::Slash; return t;
            case '^': t.type = Token::Caret; return t;
            case '(': t.type = Token::LParen; return t;
            case ')': t.type = Token::RParen; return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", t.pos);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

Rational rational_from_decimal(const std::string& text, std::size_t pos) {
    auto dot = text.find('.');
    std::string digits = dot == std::string::npos ? text : text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac = dot == std::string::npos ? 0 : text.size() - dot - 1;
    if (digits.size() > 18) throw ParseError("numeric literal too long", pos);
    long long num = 0;
    for (char c : digits) num = num * 10 + (c - '0');
    long long den = 1;
    for (std::size_t k = 0; k < frac; ++k) den *= 10;
    return Rational(num, den);
}

class Parser {
public:
    Parser(const std::string& text, int dimension) : lex_(text), n_(dimension) { advance(); }

    Expr run() {
        Expr e = parse_additive();
        if (cur_.type != Token::End) throw ParseError("unexpected trailing input", cur_.pos);
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    Expr parse_additive() {
        Expr lhs = parse_multiplicative();
        while (cur_.type == Token::Plus || cur_.type == Token::Minus) {
            bool minus = cur_.type == Token::Minus;
            advance();
            Expr rhs = parse_multiplicative();
            lhs = minus ? lhs - rhs : lhs + rhs;
        }
        return lhs;
    }

    Expr parse_multiplicative() {
        Expr lhs = parse_power();
        while (cur_.type == Token::Star || cur_.type == Token::Slash) {
            bool div = cur_.type == Token::Slash;
            advance();
            Expr rhs = parse_power();
            lhs = div ? Expr::product({lhs, Expr::pow(rhs, -1)}) : lhs * rhs;
        }
        return lhs;
    }

    // '^' binds tighter than '*' but looser than unary minus; the exponent is
    // an integer literal, with towers folded right-associatively.
    Expr parse_power() {
        Expr base = parse_unary();
        if (cur_.type == Token::Caret) {
            advance();
            long long e = parse_exponent();
            base = Expr::pow(base, e);
        }
        return base;
    }

    long long parse_exponent() {
        bool neg = false;
        if (cur_.type == Token::Minus) {
            neg = true;
            advance();
        }
        if (cur_.type != Token::Number || cur_.text.find('.') != std::string::npos)
            throw ParseError("expected integer exponent", cur_.pos);
        if (cur_.text.size() > 18) throw ParseError("exponent too large", cur_.pos);
        long long v = std::strtoll(cur_.text.c_str(), nullptr, 10);
        std::size_t pos = cur_.pos;
        advance();
        if (neg) v = -v;
        if (cur_.type == Token::Caret) {
            advance();
            long long up = parse_exponent();
            if (up < 0) throw ParseError("negative exponent in exponent tower", pos);
            long long acc = 1;
            for (long long k = 0; k < up; ++k) {
                __int128 r = static_cast<__int128>(acc) * v;
                if (r > INT64_MAX || r < INT64_MIN) throw ParseError("exponent overflow", pos);
                acc = static_cast<long long>(r);
            }
            v = acc;
        }
        return v;
    }

    Expr parse_unary() {
        if (cur_.type == Token::Minus) {
            advance();
            return -parse_unary();
        }
        return parse_primary();
    }

    Expr parse_primary() {
        switch (cur_.type) {
            case Token::Number: {
                Rational r = rational_from_decimal(cur_.text, cur_.pos);
                advance();
                return Expr::number(r);
            }
            case Token::LParen: {
                advance();
                Expr e = parse_additive();
                expect(Token::RParen, "expected ')'");
                return e;
            }
            case Token::Ident:
                return parse_ident();
            default:
                throw ParseError("expected expression", cur_.pos);
        }
    }

    Expr parse_ident() {
        std::string name = cur_.text;
        std::size_t pos = cur_.pos;
        advance();
        if (name == "t") return Expr::variable(VarId::t());
        if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1) {
            bool digits = true;
            for (std::size_t k = 1; k < name.size(); ++k)
                if (!std::isdigit(static_cast<unsigned char>(name[k]))) digits = false;
            if (digits) {
                if (name.size() > 7) throw ParseError("index out of range", pos);
                int idx = std::atoi(name.c_str() + 1);
                if (idx < 1 || idx > n_)
                    throw ParseError("index out of range: " + name + " with n=" + std::to_string(n_), pos);
                return Expr::variable(name[0] == 'x' ? VarId::x(idx) : VarId::y(idx));
            }
        }
        FuncId f;
        if (name == "sin") f = FuncId::Sin;
        else if (name == "cos") f = FuncId::Cos;
        else if (name == "exp") f = FuncId::Exp;
        else if (name == "ln") f = FuncId::Ln;
        else if (name == "sqrt") f = FuncId::Sqrt;
        else throw ParseError("unknown identifier '" + name + "'", pos);
        expect(Token::LParen, "expected '(' after function name");
        Expr a = parse_additive();
        expect(Token::RParen, "expected ')'");
        return Expr::call(f, a);
    }

    void expect(Token::Type t, const std::string& msg) {
        if (cur_.type != t) throw ParseError(msg, cur_.pos);
        advance();
    }

    Lexer lex_;
    Token cur_;
    int n_;
};

const char* func_name(FuncId f) {
    switch (f) {
        case FuncId::Sin: return "sin";
        case FuncId::Cos: return "cos";
        case FuncId::Exp: return "exp";
        case FuncId::Ln: return "ln";
        case FuncId::Sqrt: return "sqrt";
    }
    return "?";
}

std::string print_expr(const Expr& e);

std::string print_power_base(const Expr& b) {
    switch (b.kind()) {
        case NodeKind::Variable:
        case NodeKind::Call:
            return print_expr(b);
        default:
            return "(" + print_expr(b) + ")";
    }
}

std::string print_power(const Expr& base, long long exp) {
    return print_power_base(base) + "^" + std::to_string(exp);
}

// A factor inside a product; sums need parentheses.
std::string print_factor(const Expr& f, bool paren_power) {
    const Node& n = f.node();
    if (n.kind == NodeKind::Sum) return "(" + print_expr(f) + ")";
    if (n.kind == NodeKind::Power) {
        std::string s = print_power(n.args[0], n.exponent);
        return paren_power ? "(" + s + ")" : s;
    }
    return print_expr(f);
}

// Prints |coeff| * factors as numerator/denominator text. `negated` marks that
// the caller will prepend a unary '-', which binds tighter than '^'; the first
// factor is parenthesized when it is a power so the sign stays on the product.
std::string print_magnitude(const Rational& coeff_abs, const std::vector<Expr>& factors,
                            bool negated) {
    std::vector<std::string> num_parts;
    std::vector<std::string> den_parts;
    for (const auto& f : factors) {
        const Node& n = f.node();
        if (n.kind == NodeKind::Power && n.exponent < 0) {
            if (n.exponent == -1)
                den_parts.push_back(print_factor(n.args[0], false));
            else
                den_parts.push_back(print_power(n.args[0], -n.exponent));
        } else {
            bool first = num_parts.empty() && coeff_abs.is_one();
            num_parts.push_back(print_factor(f, negated && first));
        }
    }
    std::string out;
    if (!coeff_abs.is_one() || num_parts.empty()) out = coeff_abs.str();
    for (const auto& s : num_parts) {
        if (!out.empty()) out += "*";
        out += s;
    }
    if (!den_parts.empty()) {
        std::string den;
        for (const auto& s : den_parts) {
            if (!den.empty()) den += "*";
            den += s;
        }
        out += "/" + (den_parts.size() > 1 ? "(" + den + ")" : den);
    }
    return out;
}

// Splits a term into sign and magnitude text for use in sums.
std::pair<bool, std::string> print_signed_term(const Expr& term) {
    const Node& n = term.node();
    if (n.kind == NodeKind::Number) {
        bool neg = n.value.sign() < 0;
        Rational mag = neg ? -n.value : n.value;
        return {neg, mag.str()};
    }
    if (n.kind == NodeKind::Product) {
        Rational coeff(1);
        std::vector<Expr> factors;
        for (const auto& a : n.args) {
            if (a.is_number())
                coeff = a.node().value;
            else
                factors.push_back(a);
        }
        bool neg = coeff.sign() < 0;
        Rational mag = neg ? -coeff : coeff;
        return {neg, print_magnitude(mag, factors, neg)};
    }
    if (n.kind == NodeKind::Power)
        return {false, print_magnitude(Rational(1), {term}, false)};
    return {false, print_expr(term)};
}

std::string print_expr(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case NodeKind::Number:
            return n.value.str();
        case NodeKind::Variable:
            switch (n.var.kind) {
                case VarKind::T: return "t";
                case VarKind::X: return "x" + std::to_string(n.var.index);
                case VarKind::Y: return "y" + std::to_string(n.var.index);
            }
            return "?";
        case NodeKind::Call:
            return std::string(func_name(n.func)) + "(" + print_expr(n.args[0]) + ")";
        case NodeKind::Power:
        case NodeKind::Product: {
            auto [neg, text] = print_signed_term(e);
            return neg ? "-" + text : text;
        }
        case NodeKind::Sum: {
            std::string out;
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                auto [neg, text] = print_signed_term(n.args[i]);
                if (i == 0)
                    out = (neg ? "-" : "") + text;
                else
                    out += (neg ? " - " : " + ") + text;
            }
            return out;
        }
    }
    return "0";
}

}  // namespace

Expr parse(const std::string& text, int dimension) { return Parser(text, dimension).run(); }

std::string to_string(const Expr& e) { return print_expr(e); }

}  // namespace sodehelm
