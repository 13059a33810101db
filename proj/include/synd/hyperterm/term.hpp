#pragma once

#include "synd/exactalg/ratfunc.hpp"
#include "synd/hyperterm/linear_form.hpp"

#include <string>
#include <vector>

namespace synd {

struct FactorialFactor {
    LinearForm arg;
    int exponent = 1;
    friend bool operator==(const FactorialFactor&, const FactorialFactor&) = default;
};

struct BinomialFactor {
    LinearForm upper, lower;
    int exponent = 1;
    friend bool operator==(const BinomialFactor&, const BinomialFactor&) = default;
};

/// Rising factorial (base)_count = base (base+1) ... (base+count-1).
struct RisingFactor {
    LinearForm base, count;
    int exponent = 1;
    friend bool operator==(const RisingFactor&, const RisingFactor&) = default;
};

/// base^exponent with a nonzero rational base.
struct PowerFactor {
    BigRational base;
    LinearForm exponent;
    friend bool operator==(const PowerFactor&, const PowerFactor&) = default;
};

/// Gamma(arg)^exponent; the uniform view every factor kind reduces to.
struct GammaFactor {
    LinearForm arg;
    int exponent;
};

/// A proper hypergeometric term: product of factorials, binomials, rising
/// factorials, rational powers and a rational-function factor.
class TermExpression {
public:
    explicit TermExpression(VarsPtr vars)
        : vars_(std::move(vars)), rational_(RationalFunction::constant(vars_, 1)) {}

    const VarsPtr& vars() const { return vars_; }

    std::vector<FactorialFactor> factorials;
    std::vector<BinomialFactor> binomials;
    std::vector<RisingFactor> rising_factorials;
    std::vector<PowerFactor> powers;

    const RationalFunction& rational_factor() const { return rational_; }
    void set_rational_factor(RationalFunction r) { rational_ = r.with_vars(vars_); }

    bool is_rational() const
    {
        return factorials.empty() && binomials.empty() && rising_factorials.empty() && powers.empty();
    }

    TermExpression& operator*=(const TermExpression& o)
    {
        append(factorials, o.factorials);
        append(binomials, o.binomials);
        append(rising_factorials, o.rising_factorials);
        append(powers, o.powers);
        rational_ *= o.rational_.with_vars(vars_);
        return *this;
    }

    TermExpression& operator*=(const RationalFunction& r)
    {
        rational_ *= r.with_vars(vars_);
        return *this;
    }

    TermExpression inverse() const
    {
        if (rational_.is_zero())
            throw TermError("inverse of a zero term");
        TermExpression t = *this;
        for (auto& f : t.factorials)
            f.exponent = -f.exponent;
        for (auto& f : t.binomials)
            f.exponent = -f.exponent;
        for (auto& f : t.rising_factorials)
            f.exponent = -f.exponent;
        for (auto& p : t.powers)
            p.exponent = -p.exponent;
        t.rational_ = RationalFunction::constant(vars_, 1) / rational_;
        return t;
    }

    friend TermExpression operator*(TermExpression a, const TermExpression& b) { return a *= b; }
    friend TermExpression operator/(TermExpression a, const TermExpression& b) { return a *= b.inverse(); }

    friend bool operator==(const TermExpression& a, const TermExpression& b)
    {
        return a.factorials == b.factorials && a.binomials == b.binomials &&
               a.rising_factorials == b.rising_factorials && a.powers == b.powers && a.rational_ == b.rational_;
    }

    /// Same term with the given symbols replaced by rational values.
    template <typename Map>
    TermExpression substituted(const Map& values) const
    {
        TermExpression t = *this;
        for (auto& f : t.factorials)
            f.arg = f.arg.substitute(values);
        for (auto& f : t.binomials) {
            f.upper = f.upper.substitute(values);
            f.lower = f.lower.substitute(values);
        }
        for (auto& f : t.rising_factorials) {
            f.base = f.base.substitute(values);
            f.count = f.count.substitute(values);
        }
        for (auto& p : t.powers)
            p.exponent = p.exponent.substitute(values);
        for (const auto& [s, v] : values)
            if (auto idx = vars_->find(s))
                t.rational_ = t.rational_.substitute(*idx, v);
        return t;
    }

    /// Symbols occurring anywhere in the term.
    bool mentions(const std::string& s) const
    {
        for (const auto& f : factorials)
            if (f.arg.depends_on(s))
                return true;
        for (const auto& f : binomials)
            if (f.upper.depends_on(s) || f.lower.depends_on(s))
                return true;
        for (const auto& f : rising_factorials)
            if (f.base.depends_on(s) || f.count.depends_on(s))
                return true;
        for (const auto& p : powers)
            if (p.exponent.depends_on(s))
                return true;
        auto idx = vars_->find(s);
        return idx && (rational_.num().depends_on(*idx) || rational_.den().depends_on(*idx));
    }

    /// Every factor as Gamma(arg)^e: x! = G(x+1), C(u,l) = G(u+1)/(G(l+1)G(u-l+1)),
    /// (b)_c = G(b+c)/G(b).
    std::vector<GammaFactor> gamma_form() const
    {
        std::vector<GammaFactor> g;
        for (const auto& f : factorials)
            g.push_back({f.arg + BigRational(1), f.exponent});
        for (const auto& f : binomials) {
            g.push_back({f.upper + BigRational(1), f.exponent});
            g.push_back({f.lower + BigRational(1), -f.exponent});
            g.push_back({f.upper - f.lower + BigRational(1), -f.exponent});
        }
        for (const auto& f : rising_factorials) {
            g.push_back({f.base + f.count, f.exponent});
            g.push_back({f.base, -f.exponent});
        }
        return g;
    }

    /// Text in the term grammar that parses back to an equal term.
    std::string render() const
    {
        std::string out = "1";
        auto wrap = [](const LinearForm& f) { return "(" + f.to_string() + ")"; };
        auto emit = [&](int e, const std::string& text) { out += (e > 0 ? "*" : "/") + text; };
        for (const auto& f : factorials)
            emit(f.exponent, wrap(f.arg) + "!");
        for (const auto& f : binomials)
            emit(f.exponent, "binomial(" + f.upper.to_string() + ", " + f.lower.to_string() + ")");
        for (const auto& f : rising_factorials)
            emit(f.exponent, "rf(" + f.base.to_string() + ", " + f.count.to_string() + ")");
        for (const auto& p : powers)
            out += "*(" + p.base.get_str() + ")^" + wrap(p.exponent);
        if (!(rational_.num().is_constant() && rational_.num().constant_value() == 1))
            out += "*(" + rational_.num().to_string() + ")";
        if (!rational_.den().is_constant() || rational_.den().constant_value() != 1)
            out += "/(" + rational_.den().to_string() + ")";
        return out;
    }

private:
    template <typename T>
    static void append(std::vector<T>& a, const std::vector<T>& b)
    {
        a.insert(a.end(), b.begin(), b.end());
    }

    VarsPtr vars_;
    RationalFunction rational_;
};

/// Ring for an identity: summation variable, recurrence variable, then parameters.
inline VarsPtr make_term_ring(const std::string& k, const std::string& n, const std::vector<std::string>& params)
{
    std::vector<std::string> names{k, n};
    for (const auto& p : params) {
        if (p == k || p == n)
            throw TermError("parameter '" + p + "' clashes with the summation or recurrence variable");
        names.push_back(p);
    }
    return make_vars(std::move(names));
}

}  // namespace synd
