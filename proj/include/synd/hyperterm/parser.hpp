#pragma once

#include "synd/hyperterm/term.hpp"

#include <cctype>
#include <memory>
#include <set>

namespace synd {

class ParseError : public TermError {
public:
    ParseError(const std::string& what, std::size_t position)
        : TermError(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace parse {

struct Node {
    enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow, Factorial, Call };
    Kind kind;
    std::size_t pos = 0;
    BigRational value;
    std::string name;
    std::vector<std::unique_ptr<Node>> kids;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodePtr parse_all()
    {
        auto e = expr();
        skip();
        if (i_ != s_.size())
            throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
        return e;
    }

private:
    NodePtr make(Node::Kind k, std::size_t pos)
    {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->pos = pos;
        return n;
    }

    NodePtr binary(Node::Kind k, std::size_t pos, NodePtr a, NodePtr b)
    {
        auto n = make(k, pos);
        n->kids.push_back(std::move(a));
        n->kids.push_back(std::move(b));
        return n;
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    bool eat_power()
    {
        skip();
        if (i_ < s_.size() && s_[i_] == '^') {
            ++i_;
            return true;
        }
        if (i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*') {
            i_ += 2;
            return true;
        }
        return false;
    }

    bool peek_star_star() const { return i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*'; }

    NodePtr expr()
    {
        auto lhs = term();
        while (true) {
            skip();
            std::size_t pos = i_;
            if (eat('+'))
                lhs = binary(Node::Kind::Add, pos, std::move(lhs), term());
            else if (eat('-'))
                lhs = binary(Node::Kind::Sub, pos, std::move(lhs), term());
            else
                return lhs;
        }
    }

    NodePtr term()
    {
        auto lhs = unary();
        while (true) {
            skip();
            std::size_t pos = i_;
            if (peek_star_star())
                return lhs;
            if (eat('*'))
                lhs = binary(Node::Kind::Mul, pos, std::move(lhs), unary());
            else if (eat('/'))
                lhs = binary(Node::Kind::Div, pos, std::move(lhs), unary());
            else
                return lhs;
        }
    }

    NodePtr unary()
    {
        skip();
        std::size_t pos = i_;
        if (eat('-')) {
            auto n = make(Node::Kind::Neg, pos);
            n->kids.push_back(unary());
            return n;
        }
        if (eat('+'))
            return unary();
        return power();
    }

    NodePtr power()
    {
        auto base = postfix();
        skip();
        std::size_t pos = i_;
        if (eat_power())
            return binary(Node::Kind::Pow, pos, std::move(base), unary());
        return base;
    }

    NodePtr postfix()
    {
        auto p = primary();
        while (true) {
            skip();
            std::size_t pos = i_;
            if (!eat('!'))
                return p;
            auto f = make(Node::Kind::Factorial, pos);
            f->kids.push_back(std::move(p));
            p = std::move(f);
        }
    }

    NodePtr primary()
    {
        skip();
        std::size_t pos = i_;
        if (i_ >= s_.size())
            throw ParseError("unexpected end of input", pos);
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            auto e = expr();
            if (!eat(')'))
                throw ParseError("expected ')'", i_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = i_;
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.'))
                ++i_;
            auto n = make(Node::Kind::Number, pos);
            try {
                n->value = parse_rational(s_.substr(start, i_ - start));
            } catch (const ArithmeticError&) {
                throw ParseError("malformed number", start);
            }
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            std::string id(s_.substr(start, i_ - start));
            skip();
            if (i_ < s_.size() && s_[i_] == '(') {
                ++i_;
                auto call = make(Node::Kind::Call, pos);
                call->name = id;
                call->kids.push_back(expr());
                while (eat(','))
                    call->kids.push_back(expr());
                if (!eat(')'))
                    throw ParseError("expected ')' to close " + id + "(", i_);
                return call;
            }
            auto n = make(Node::Kind::Symbol, pos);
            n->name = id;
            return n;
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

inline void collect_symbols(const Node& n, std::vector<std::string>& out)
{
    if (n.kind == Node::Kind::Symbol &&
        std::find(out.begin(), out.end(), n.name) == out.end())
        out.push_back(n.name);
    for (const auto& k : n.kids)
        collect_symbols(*k, out);
}

inline bool is_pure_rational(const Node& n)
{
    switch (n.kind) {
    case Node::Kind::Number:
    case Node::Kind::Symbol:
        return true;
    case Node::Kind::Factorial:
    case Node::Kind::Call:
        return false;
    case Node::Kind::Pow:
    {
        const Node* e = n.kids[1].get();
        if (e->kind == Node::Kind::Neg)
            e = e->kids[0].get();
        return is_pure_rational(*n.kids[0]) && e->kind == Node::Kind::Number && is_integer(e->value);
    }
    default:
        for (const auto& k : n.kids)
            if (!is_pure_rational(*k))
                return false;
        return true;
    }
}

class Converter {
public:
    explicit Converter(VarsPtr vars) : vars_(std::move(vars)) {}

    RationalFunction rational(const Node& n) const
    {
        using K = Node::Kind;
        switch (n.kind) {
        case K::Number:
            return RationalFunction::constant(vars_, n.value);
        case K::Symbol: {
            auto idx = vars_->find(n.name);
            if (!idx)
                throw ParseError("undeclared symbol '" + n.name + "'", n.pos);
            return RationalFunction(MultiPoly::variable(vars_, *idx));
        }
        case K::Add:
            return rational(*n.kids[0]) + rational(*n.kids[1]);
        case K::Sub:
            return rational(*n.kids[0]) - rational(*n.kids[1]);
        case K::Mul:
            return rational(*n.kids[0]) * rational(*n.kids[1]);
        case K::Div: {
            auto d = rational(*n.kids[1]);
            if (d.is_zero())
                throw ParseError("division by zero", n.pos);
            return rational(*n.kids[0]) / d;
        }
        case K::Neg:
            return -rational(*n.kids[0]);
        case K::Pow: {
            auto e = exponent_value(*n.kids[1]);
            if (!e)
                throw ParseError("exponent of a rational expression must be an integer constant", n.pos);
            auto b = rational(*n.kids[0]);
            return power(b, *e, n.pos);
        }
        default:
            throw ParseError("expected a rational function", n.pos);
        }
    }

    LinearForm linear(const Node& n) const
    {
        if (!is_pure_rational(n))
            throw ParseError("factor argument must be affine in the declared symbols", n.pos);
        auto r = rational(n);
        if (!r.is_polynomial() || r.num().total_degree() > 1)
            throw ParseError("non-affine factor argument", n.pos);
        MultiPoly p = r.num();
        p /= r.den().constant_value();
        return LinearForm::from_poly(p);
    }

    TermExpression term(const Node& n) const
    {
        using K = Node::Kind;
        if (is_pure_rational(n)) {
            TermExpression t(vars_);
            t.set_rational_factor(rational(n));
            return t;
        }
        switch (n.kind) {
        case K::Mul:
            return term(*n.kids[0]) * term(*n.kids[1]);
        case K::Div: {
            auto d = term(*n.kids[1]);
            if (d.rational_factor().is_zero())
                throw ParseError("division by zero", n.pos);
            return term(*n.kids[0]) / d;
        }
        case K::Neg: {
            auto t = term(*n.kids[0]);
            t *= RationalFunction::constant(vars_, -1);
            return t;
        }
        case K::Factorial: {
            TermExpression t(vars_);
            t.factorials.push_back({linear(*n.kids[0]), 1});
            return t;
        }
        case K::Call: {
            TermExpression t(vars_);
            if (n.name == "binomial") {
                if (n.kids.size() != 2)
                    throw ParseError("binomial takes two arguments", n.pos);
                t.binomials.push_back({linear(*n.kids[0]), linear(*n.kids[1]), 1});
            } else if (n.name == "rf") {
                if (n.kids.size() != 2)
                    throw ParseError("rf takes two arguments", n.pos);
                t.rising_factorials.push_back({linear(*n.kids[0]), linear(*n.kids[1]), 1});
            } else {
                throw ParseError("unknown function '" + n.name + "'", n.pos);
            }
            return t;
        }
        case K::Pow: {
            if (auto e = exponent_value(*n.kids[1])) {
                auto b = term(*n.kids[0]);
                return power(b, *e, n.pos);
            }
            if (!is_pure_rational(*n.kids[0]))
                throw ParseError("power base must be a rational constant", n.pos);
            auto b = rational(*n.kids[0]);
            if (!b.is_constant())
                throw ParseError("power base must be a rational constant", n.pos);
            BigRational base = b.constant_value();
            if (base == 0)
                throw ParseError("power base must be nonzero", n.pos);
            TermExpression t(vars_);
            t.powers.push_back({base, linear(*n.kids[1])});
            return t;
        }
        case K::Add:
        case K::Sub:
            throw ParseError("a sum of hypergeometric terms is not a single term", n.pos);
        default:
            throw ParseError("unsupported expression", n.pos);
        }
    }

    /// Splits top-level sums into separate terms.
    std::vector<TermExpression> sum(const Node& n) const
    {
        using K = Node::Kind;
        if (!is_pure_rational(n) && (n.kind == K::Add || n.kind == K::Sub)) {
            auto lhs = sum(*n.kids[0]);
            auto rhs = sum(*n.kids[1]);
            for (auto& t : rhs) {
                if (n.kind == K::Sub)
                    t *= RationalFunction::constant(vars_, -1);
                lhs.push_back(std::move(t));
            }
            return lhs;
        }
        return {term(n)};
    }

private:
    static std::optional<long> exponent_value(const Node& n)
    {
        if (n.kind == Node::Kind::Number && is_integer(n.value) && fits_long(n.value.get_num()))
            return n.value.get_num().get_si();
        if (n.kind == Node::Kind::Neg) {
            auto inner = exponent_value(*n.kids[0]);
            if (inner)
                return -*inner;
        }
        return std::nullopt;
    }

    template <typename T>
    T power(const T& base, long e, std::size_t pos) const
    {
        if (e < 0) {
            if constexpr (std::is_same_v<T, RationalFunction>) {
                if (base.is_zero())
                    throw ParseError("zero to a negative power", pos);
                return power(RationalFunction::constant(vars_, 1) / base, -e, pos);
            } else {
                return power(base.inverse(), -e, pos);
            }
        }
        if (e > 64)
            throw ParseError("exponent too large", pos);
        T acc = base;
        if constexpr (std::is_same_v<T, RationalFunction>)
            acc = RationalFunction::constant(vars_, 1);
        else
            acc = TermExpression(vars_);
        for (long i = 0; i < e; ++i)
            acc = acc * base;
        return acc;
    }

    VarsPtr vars_;
};

/// Ring inferred from the text: k, then n, then remaining symbols by first appearance.
inline VarsPtr infer_ring(const Node& root)
{
    std::vector<std::string> syms;
    collect_symbols(root, syms);
    std::vector<std::string> ordered;
    for (const char* lead : {"k", "n"})
        if (std::find(syms.begin(), syms.end(), lead) != syms.end())
            ordered.emplace_back(lead);
    for (const auto& s : syms)
        if (std::find(ordered.begin(), ordered.end(), s) == ordered.end())
            ordered.push_back(s);
    return make_vars(std::move(ordered));
}

}  // namespace parse

inline TermExpression parse_term(std::string_view text, const VarsPtr& vars)
{
    auto root = parse::Parser(text).parse_all();
    return parse::Converter(vars).term(*root);
}

inline TermExpression parse_term(std::string_view text)
{
    auto root = parse::Parser(text).parse_all();
    return parse::Converter(parse::infer_ring(*root)).term(*root);
}

/// Sum of hypergeometric terms, e.g. "2^n + 1".
inline std::vector<TermExpression> parse_term_sum(std::string_view text, const VarsPtr& vars)
{
    auto root = parse::Parser(text).parse_all();
    return parse::Converter(vars).sum(*root);
}

inline RationalFunction parse_rational_function(std::string_view text, const VarsPtr& vars)
{
    auto root = parse::Parser(text).parse_all();
    if (!parse::is_pure_rational(*root))
        throw ParseError("expected a rational function", 0);
    return parse::Converter(vars).rational(*root);
}

inline LinearForm parse_linear_form(std::string_view text, const VarsPtr& vars)
{
    auto root = parse::Parser(text).parse_all();
    return parse::Converter(vars).linear(*root);
}

}  // namespace synd
