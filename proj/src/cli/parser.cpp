#include "repgeo/cli/parser.hpp"

#include <cctype>
#include <optional>

namespace repgeo::cli {

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error("syntax", "column " + std::to_string(position + 1) + ": " + message), position_(position) {}

namespace {

constexpr long kMaxExponent = 1000;

enum class Tok { Int, XVar, YVar, Plus, Minus, Star, Slash, Caret, Act, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;  // digits for Int; index digits for variables
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto digits_from = [&](std::size_t j) {
        std::size_t k = j;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        return k;
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t e = digits_from(i);
            out.push_back({Tok::Int, i, std::string(s.substr(i, e - i))});
            i = e;
            continue;
        }
        if (c == 'x' || c == 'y') {
            std::size_t e = digits_from(i + 1);
            if (e == i + 1) throw ParseError(i, std::string("expected an index after '") + c + "'");
            std::string idx(s.substr(i + 1, e - i - 1));
            if (idx.size() > 6 || std::stol(idx) == 0) throw ParseError(i + 1, "variable index must be in 1..999999");
            out.push_back({c == 'x' ? Tok::XVar : Tok::YVar, i, idx});
            i = e;
            continue;
        }
        if (c == 'o' && (i + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[i + 1])))) {
            out.push_back({Tok::Act, i, "o"});
            ++i;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default: throw ParseError(i, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, i, std::string(1, c)});
        ++i;
    }
    out.push_back({Tok::End, s.size(), ""});
    return out;
}

struct Value {
    std::optional<GroupRingElement> ring;
    std::optional<FreeModuleElement> module;

    bool is_module() const { return module.has_value(); }
};

class Parser {
public:
    Parser(std::string_view text, Field field) : tokens_(tokenize(text)), field_(field) {}

    Value parse() {
        if (peek().kind == Tok::End) throw ParseError(peek().pos, "empty expression");
        Value v = expr();
        if (peek().kind != Tok::End) throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
        return v;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }

    Value expr() {
        Value acc;
        if (accept(Tok::Minus))
            acc = negate(term());
        else {
            accept(Tok::Plus);
            acc = term();
        }
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = next();
            Value rhs = term();
            acc = add(acc, op.kind == Tok::Minus ? negate(rhs) : rhs, op.pos);
        }
        return acc;
    }

    Value term() {
        Value acc = unary();
        while (true) {
            const Token& op = peek();
            if (op.kind == Tok::Star) {
                next();
                acc = mul(acc, unary(), op.pos);
            } else if (op.kind == Tok::Act) {
                next();
                acc = act(acc, unary(), op.pos);
            } else if (op.kind == Tok::Slash) {
                next();
                const Token& d = peek();
                if (d.kind != Tok::Int) throw ParseError(d.pos, "division is only by integer literals");
                next();
                Scalar divisor(field_, Rational(d.text));
                if (divisor.is_zero()) throw ParseError(d.pos, "division by zero in " + field_.name());
                acc = scale(acc, divisor.inverse());
            } else {
                return acc;
            }
        }
    }

    Value unary() {
        if (accept(Tok::Minus)) return negate(unary());
        return power();
    }

    Value power() {
        Value base = atom();
        if (peek().kind != Tok::Caret) return base;
        const Token& caret = next();
        bool negative = accept(Tok::Minus);
        const Token& e = peek();
        if (e.kind != Tok::Int) throw ParseError(e.pos, "expected an integer exponent");
        next();
        if (e.text.size() > 4 || std::stol(e.text) > kMaxExponent)
            throw ParseError(e.pos, "exponent exceeds " + std::to_string(kMaxExponent));
        long n = std::stol(e.text);
        if (n == 0) throw ParseError(e.pos, "exponent must be nonzero");
        if (base.is_module()) throw ParseError(caret.pos, "exponent on a module expression");
        GroupRingElement u = *base.ring;
        if (negative) {
            if (u.terms().size() != 1) throw ParseError(caret.pos, "exponent on non-invertible expression");
            u = u.inverse_monomial();
        }
        return ring(u.pow(static_cast<unsigned>(n)));
    }

    Value atom() {
        const Token& t = next();
        switch (t.kind) {
            case Tok::Int:
                return ring(GroupRingElement::constant(Scalar(field_, Rational(t.text))));
            case Tok::YVar:
                return ring(GroupRingElement::word(field_, Word::generator(std::stoi(t.text))));
            case Tok::XVar:
                return module(FreeModuleElement::basis(std::stoi(t.text), GroupRingElement::one(field_)));
            case Tok::LParen: {
                Value v = expr();
                if (!accept(Tok::RParen)) throw ParseError(peek().pos, "expected ')'");
                return v;
            }
            case Tok::End:
                throw ParseError(t.pos, "unexpected end of expression");
            default:
                throw ParseError(t.pos, "unexpected '" + t.text + "'");
        }
    }

    static Value ring(GroupRingElement u) { return {std::move(u), std::nullopt}; }
    static Value module(FreeModuleElement w) { return {std::nullopt, std::move(w)}; }

    Value negate(const Value& v) const { return scale(v, -Scalar::one(field_)); }

    static Value scale(const Value& v, const Scalar& c) {
        if (v.is_module()) return module(v.module->scaled(c));
        return ring(v.ring->scaled(c));
    }

    static Value add(const Value& a, const Value& b, std::size_t pos) {
        if (a.is_module() != b.is_module()) throw ParseError(pos, "cannot add a module expression and a ring expression");
        if (a.is_module()) return module(*a.module + *b.module);
        return ring(*a.ring + *b.ring);
    }

    static std::optional<Scalar> as_constant(const GroupRingElement& u) {
        if (u.is_zero()) return Scalar::zero(u.field());
        if (u.terms().size() == 1 && u.terms().begin()->first.is_identity()) return u.terms().begin()->second;
        return std::nullopt;
    }

    static Value mul(const Value& a, const Value& b, std::size_t pos) {
        if (!a.is_module() && !b.is_module()) return ring(*a.ring * *b.ring);
        if (a.is_module() && b.is_module()) throw ParseError(pos, "cannot multiply two module expressions");
        if (a.is_module()) throw ParseError(pos, "use 'o' to act on a module expression");
        auto c = as_constant(*a.ring);
        if (!c) throw ParseError(pos, "only scalars may multiply a module expression from the left");
        return module(b.module->scaled(*c));
    }

    static Value act(const Value& a, const Value& b, std::size_t pos) {
        if (!a.is_module() || b.is_module())
            throw ParseError(pos, "'o' needs a module expression on the left and a ring expression on the right");
        return module(a.module->act(*b.ring));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Field field_;
};

}  // namespace

GroupRingElement parse_ring_expr(std::string_view text, Field field) {
    Value v = Parser(text, field).parse();
    if (v.is_module()) throw ParseError(0, "expected a ring expression, got a module expression");
    return *v.ring;
}

FreeModuleElement parse_module_expr(std::string_view text, Field field) {
    Value v = Parser(text, field).parse();
    if (!v.is_module()) {
        if (v.ring->is_zero()) return FreeModuleElement(field);
        throw ParseError(0, "expected a module expression such as x1 o (y1 - 1)");
    }
    return *v.module;
}

Word parse_word(std::string_view text) {
    GroupRingElement u = parse_ring_expr(text, Field::rationals());
    if (u.terms().size() != 1 || !u.terms().begin()->second.is_one())
        throw ParseError(0, "expected a group word such as y1*y2^-1");
    return u.terms().begin()->first;
}

}  // namespace repgeo::cli
