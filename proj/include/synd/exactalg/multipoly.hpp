#pragma once

#include "synd/exactalg/bigrational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace synd {

inline constexpr std::size_t kMaxVars = 8;
using Exponents = std::array<std::uint16_t, kMaxVars>;

/// Ordered symbol list shared by every polynomial of one ring.
class Vars {
public:
    explicit Vars(std::vector<std::string> names) : names_(std::move(names))
    {
        if (names_.size() > kMaxVars)
            throw ArithmeticError("too many variables (max " + std::to_string(kMaxVars) + ")");
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j])
                    throw ArithmeticError("duplicate variable '" + names_[i] + "'");
    }

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    const std::string& operator[](std::size_t i) const { return names_[i]; }

    std::optional<std::size_t> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return i;
        return std::nullopt;
    }

    std::size_t index_of(std::string_view name) const
    {
        if (auto i = find(name))
            return *i;
        throw ArithmeticError("unknown variable '" + std::string(name) + "'");
    }

    bool operator==(const Vars& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const Vars>;

inline VarsPtr make_vars(std::vector<std::string> names)
{
    return std::make_shared<const Vars>(std::move(names));
}

inline bool same_ring(const VarsPtr& a, const VarsPtr& b) { return a == b || *a == *b; }

namespace detail {

inline unsigned total_degree(const Exponents& e)
{
    unsigned s = 0;
    for (auto x : e)
        s += x;
    return s;
}

/// Graded lexicographic order, earlier variables more significant.
inline bool grlex_greater(const Exponents& a, const Exponents& b)
{
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da > db;
    return a > b;
}

struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : e) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

inline Exponents add_exponents(const Exponents& a, const Exponents& b)
{
    Exponents r{};
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        unsigned s = unsigned(a[i]) + unsigned(b[i]);
        if (s > 0xFFFFu)
            throw ArithmeticError("exponent overflow");
        r[i] = static_cast<std::uint16_t>(s);
    }
    return r;
}

inline bool divides(const Exponents& a, const Exponents& b)
{
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

}  // namespace detail

/// Sparse multivariate polynomial over the rationals. Terms are kept sorted by
/// decreasing graded-lex order and never carry a zero coefficient.
class MultiPoly {
public:
    struct Term {
        Exponents exp{};
        BigRational coeff;
    };

    explicit MultiPoly(VarsPtr vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(VarsPtr vars, const BigRational& c)
    {
        MultiPoly p(std::move(vars));
        if (c != 0)
            p.terms_.push_back({Exponents{}, c});
        return p;
    }

    static MultiPoly variable(VarsPtr vars, std::size_t index)
    {
        MultiPoly p(std::move(vars));
        Exponents e{};
        e[index] = 1;
        p.terms_.push_back({e, BigRational(1)});
        return p;
    }

    static MultiPoly variable(const VarsPtr& vars, std::string_view name)
    {
        return variable(vars, vars->index_of(name));
    }

    static MultiPoly monomial(VarsPtr vars, const Exponents& e, const BigRational& c)
    {
        MultiPoly p(std::move(vars));
        if (c != 0)
            p.terms_.push_back({e, c});
        return p;
    }

    /// Builds from unsorted terms, merging duplicates.
    static MultiPoly from_terms(VarsPtr vars, std::vector<Term> terms)
    {
        MultiPoly p(std::move(vars));
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return detail::grlex_greater(a.exp, b.exp); });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().exp == t.exp)
                p.terms_.back().coeff += t.coeff;
            else
                p.terms_.push_back(std::move(t));
        }
        std::erase_if(p.terms_, [](const Term& t) { return t.coeff == 0; });
        return p;
    }

    const VarsPtr& vars() const { return vars_; }
    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && detail::total_degree(terms_[0].exp) == 0);
    }

    BigRational constant_value() const
    {
        if (!is_constant())
            throw ArithmeticError("polynomial is not constant: " + to_string());
        return terms_.empty() ? BigRational(0) : terms_[0].coeff;
    }

    /// Coefficient of the constant monomial.
    BigRational constant_term() const
    {
        if (!terms_.empty() && detail::total_degree(terms_.back().exp) == 0)
            return terms_.back().coeff;
        return 0;
    }

    const Term& leading_term() const
    {
        if (terms_.empty())
            throw ArithmeticError("leading term of zero polynomial");
        return terms_.front();
    }

    const BigRational& leading_coeff() const { return leading_term().coeff; }

    int degree(std::size_t var) const
    {
        if (terms_.empty())
            return -1;
        int d = 0;
        for (const auto& t : terms_)
            d = std::max<int>(d, t.exp[var]);
        return d;
    }

    int total_degree() const
    {
        return terms_.empty() ? -1 : static_cast<int>(detail::total_degree(terms_.front().exp));
    }

    bool depends_on(std::size_t var) const { return degree(var) > 0; }

    /// Term of highest degree in `var`; ties broken by the monomial order.
    Term leading_term_in(std::size_t var) const
    {
        const Term* best = nullptr;
        for (const auto& t : terms_)
            if (!best || t.exp[var] > best->exp[var])
                best = &t;
        if (!best)
            throw ArithmeticError("leading term of zero polynomial");
        return *best;
    }

    /// Coefficient of var^d, as a polynomial free of `var`.
    MultiPoly coeff(std::size_t var, int d) const
    {
        MultiPoly r(vars_);
        for (const auto& t : terms_)
            if (t.exp[var] == d) {
                Term c = t;
                c.exp[var] = 0;
                r.terms_.push_back(std::move(c));
            }
        return r;  // order preserved: zeroing one fixed exponent keeps grlex order among equal-d terms
    }

    /// All coefficients with respect to `var`, indexed by degree.
    std::vector<MultiPoly> coeffs_in(std::size_t var) const
    {
        int d = degree(var);
        std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d + 1, 0)), MultiPoly(vars_));
        for (const auto& t : terms_) {
            Term c = t;
            c.exp[var] = 0;
            out[t.exp[var]].terms_.push_back(std::move(c));
        }
        return out;
    }

    MultiPoly leading_coeff_in(std::size_t var) const { return coeff(var, degree(var)); }

    MultiPoly operator-() const
    {
        MultiPoly r = *this;
        for (auto& t : r.terms_)
            t.coeff = -t.coeff;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = add(*this, o, false); }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = add(*this, o, true); }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly& operator*=(const BigRational& c)
    {
        if (c == 0)
            terms_.clear();
        else
            for (auto& t : terms_)
                t.coeff *= c;
        return *this;
    }

    MultiPoly& operator/=(const BigRational& c)
    {
        if (c == 0)
            throw ArithmeticError("polynomial division by zero constant");
        for (auto& t : terms_)
            t.coeff /= c;
        return *this;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return add(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return add(a, b, true); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
    {
        check_ring(a, b);
        if (a.is_zero() || b.is_zero())
            return MultiPoly(a.vars_);
        if (a.terms_.size() == 1 || b.terms_.size() == 1) {
            const MultiPoly& mono = a.terms_.size() == 1 ? a : b;
            const MultiPoly& other = a.terms_.size() == 1 ? b : a;
            MultiPoly r(a.vars_);
            r.terms_.reserve(other.terms_.size());
            const Term& m = mono.terms_[0];
            // multiplying by a monomial preserves the order
            for (const auto& t : other.terms_)
                r.terms_.push_back({detail::add_exponents(t.exp, m.exp), t.coeff * m.coeff});
            return r;
        }
        std::unordered_map<Exponents, BigRational, detail::ExponentsHash> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        BigRational prod;
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) {
                mpq_mul(prod.get_mpq_t(), x.coeff.get_mpq_t(), y.coeff.get_mpq_t());
                auto [it, fresh] = acc.try_emplace(detail::add_exponents(x.exp, y.exp));
                if (fresh)
                    it->second = prod;
                else
                    it->second += prod;
            }
        MultiPoly r(a.vars_);
        r.terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (c != 0)
                r.terms_.push_back({e, std::move(c)});
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& s, const Term& t) { return detail::grlex_greater(s.exp, t.exp); });
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const BigRational& c)
    {
        MultiPoly r = a;
        r *= c;
        return r;
    }
    friend MultiPoly operator*(const BigRational& c, const MultiPoly& a) { return a * c; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b)
    {
        if (a.terms_.size() != b.terms_.size())
            return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }

    MultiPoly pow(unsigned e) const
    {
        MultiPoly result = constant(vars_, 1);
        MultiPoly base = *this;
        while (e) {
            if (e & 1u)
                result *= base;
            e >>= 1u;
            if (e)
                base = base * base;
        }
        return result;
    }

    /// Exact quotient a / b, or nullopt if b does not divide a.
    std::optional<MultiPoly> divide_exact(const MultiPoly& b) const
    {
        check_ring(*this, b);
        if (b.is_zero())
            throw ArithmeticError("polynomial division by zero");
        if (b.terms_.size() == 1) {
            const Term& m = b.terms_[0];
            MultiPoly q(vars_);
            q.terms_.reserve(terms_.size());
            for (const auto& t : terms_) {
                if (!detail::divides(m.exp, t.exp))
                    return std::nullopt;
                Exponents e{};
                for (std::size_t i = 0; i < kMaxVars; ++i)
                    e[i] = static_cast<std::uint16_t>(t.exp[i] - m.exp[i]);
                q.terms_.push_back({e, t.coeff / m.coeff});
            }
            return q;
        }
        MultiPoly rem = *this;
        std::vector<Term> quotient;
        const Term& lb = b.terms_.front();
        while (!rem.is_zero()) {
            const Term& lr = rem.terms_.front();
            if (!detail::divides(lb.exp, lr.exp))
                return std::nullopt;
            Term t;
            for (std::size_t i = 0; i < kMaxVars; ++i)
                t.exp[i] = static_cast<std::uint16_t>(lr.exp[i] - lb.exp[i]);
            t.coeff = lr.coeff / lb.coeff;
            rem.subtract_scaled(b, t);
            quotient.push_back(std::move(t));
        }
        MultiPoly q(vars_);
        q.terms_ = std::move(quotient);  // produced in decreasing order
        return q;
    }

    MultiPoly divide_or_throw(const MultiPoly& b) const
    {
        auto q = divide_exact(b);
        if (!q)
            throw ArithmeticError("inexact polynomial division");
        return *std::move(q);
    }

    /// Substitutes a polynomial (same ring) for `var`.
    MultiPoly substitute(std::size_t var, const MultiPoly& value) const
    {
        check_ring(*this, value);
        auto cs = coeffs_in(var);
        if (cs.empty())
            return MultiPoly(vars_);
        MultiPoly acc = cs.back();
        for (std::size_t i = cs.size() - 1; i-- > 0;)
            acc = acc * value + cs[i];
        return acc;
    }

    MultiPoly substitute(std::size_t var, const BigRational& value) const
    {
        int d = degree(var);
        if (d <= 0)
            return *this;
        std::vector<BigRational> powers(static_cast<std::size_t>(d + 1));
        powers[0] = 1;
        for (int i = 1; i <= d; ++i)
            powers[i] = powers[i - 1] * value;
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Term s{t.exp, t.coeff * powers[t.exp[var]]};
            s.exp[var] = 0;
            out.push_back(std::move(s));
        }
        return from_terms(vars_, std::move(out));
    }

    /// p(var -> var + c)
    MultiPoly shift(std::size_t var, const BigRational& c) const
    {
        if (c == 0 || !depends_on(var))
            return *this;
        return substitute(var, variable(vars_, var) + constant(vars_, c));
    }

    BigRational evaluate(std::span<const BigRational> values) const
    {
        BigRational acc = 0;
        BigRational term;
        for (const auto& t : terms_) {
            term = t.coeff;
            for (std::size_t i = 0; i < vars_->size(); ++i)
                for (unsigned e = 0; e < t.exp[i]; ++e)
                    term *= values[i];
            acc += term;
        }
        return acc;
    }

    /// Re-expresses the polynomial over another ring; every used variable must exist there.
    MultiPoly with_vars(const VarsPtr& target) const
    {
        if (same_ring(vars_, target)) {
            MultiPoly r = *this;
            r.vars_ = target;
            return r;
        }
        std::vector<std::optional<std::size_t>> map(vars_->size());
        for (std::size_t i = 0; i < vars_->size(); ++i)
            map[i] = target->find((*vars_)[i]);
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Term s{Exponents{}, t.coeff};
            for (std::size_t i = 0; i < vars_->size(); ++i) {
                if (t.exp[i] == 0)
                    continue;
                if (!map[i])
                    throw ArithmeticError("variable '" + (*vars_)[i] + "' missing from target ring");
                s.exp[*map[i]] = t.exp[i];
            }
            out.push_back(std::move(s));
        }
        return from_terms(target, std::move(out));
    }

    /// Divides by the leading coefficient.
    MultiPoly monic() const
    {
        if (is_zero())
            return *this;
        MultiPoly r = *this;
        r /= BigRational(leading_coeff());
        return r;
    }

    /// gcd of numerators over lcm of denominators, signed like the leading coefficient.
    BigRational rational_content() const
    {
        if (is_zero())
            return 0;
        BigInt g = 0, l = 1;
        for (const auto& t : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
        }
        BigRational c = make_rational(g, l);
        return leading_coeff() < 0 ? BigRational(-c) : c;
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    MultiPoly integer_primitive() const
    {
        if (is_zero())
            return *this;
        MultiPoly r = *this;
        r /= rational_content();
        return r;
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            BigRational c = t.coeff;
            bool neg = c < 0;
            if (neg)
                c = -c;
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            first = false;
            bool has_vars = detail::total_degree(t.exp) > 0;
            bool print_coeff = !has_vars || c != 1;
            if (print_coeff) {
                if (is_integer(c) || !has_vars)
                    os << c.get_str();
                else
                    os << "(" << c.get_str() << ")";
            }
            bool need_star = print_coeff;
            for (std::size_t i = 0; i < vars_->size(); ++i) {
                if (t.exp[i] == 0)
                    continue;
                if (need_star)
                    os << "*";
                os << (*vars_)[i];
                if (t.exp[i] > 1)
                    os << "^" << t.exp[i];
                need_star = true;
            }
        }
        return os.str();
    }

private:
    static void check_ring(const MultiPoly& a, const MultiPoly& b)
    {
        if (!same_ring(a.vars_, b.vars_))
            throw ArithmeticError("polynomials from different rings");
    }

    static MultiPoly add(const MultiPoly& a, const MultiPoly& b, bool subtract)
    {
        check_ring(a, b);
        MultiPoly r(a.vars_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() ||
                (i < a.terms_.size() && detail::grlex_greater(a.terms_[i].exp, b.terms_[j].exp))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || detail::grlex_greater(b.terms_[j].exp, a.terms_[i].exp)) {
                Term t = b.terms_[j++];
                if (subtract)
                    t.coeff = -t.coeff;
                r.terms_.push_back(std::move(t));
            } else {
                BigRational c = subtract ? BigRational(a.terms_[i].coeff - b.terms_[j].coeff)
                                         : BigRational(a.terms_[i].coeff + b.terms_[j].coeff);
                if (c != 0)
                    r.terms_.push_back({a.terms_[i].exp, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    // *this -= m * b
    void subtract_scaled(const MultiPoly& b, const Term& m)
    {
        MultiPoly mb(vars_);
        mb.terms_.reserve(b.terms_.size());
        for (const auto& t : b.terms_)
            mb.terms_.push_back({detail::add_exponents(t.exp, m.exp), t.coeff * m.coeff});
        *this = add(*this, mb, true);
    }

    VarsPtr vars_;
    std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace synd
