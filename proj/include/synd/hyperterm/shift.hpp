#pragma once

#include "synd/hyperterm/term.hpp"

namespace synd {

/// constant * prod(num) / prod(den) with every factor integer-primitive and
/// non-constant; equal factors never appear on both sides.
class FactoredRatio {
public:
    explicit FactoredRatio(VarsPtr vars) : vars_(std::move(vars)) {}

    const VarsPtr& vars() const { return vars_; }
    const BigRational& constant() const { return constant_; }
    const std::vector<MultiPoly>& num() const { return num_; }
    const std::vector<MultiPoly>& den() const { return den_; }

    void scale(const BigRational& c)
    {
        if (c == 0)
            throw TermError("zero factor in a hypergeometric ratio");
        constant_ *= c;
    }

    /// Multiplies by p^e (e = +1 or -1).
    void multiply(const MultiPoly& p, int e)
    {
        if (p.is_zero())
            throw TermError("zero factor in a hypergeometric ratio");
        if (p.is_constant()) {
            BigRational c = p.constant_value();
            constant_ *= e > 0 ? c : BigRational(1 / c);
            return;
        }
        BigRational content = p.rational_content();
        MultiPoly prim = p;
        prim /= content;
        constant_ *= e > 0 ? content : BigRational(1 / content);
        auto& same = e > 0 ? num_ : den_;
        auto& other = e > 0 ? den_ : num_;
        auto it = std::find(other.begin(), other.end(), prim);
        if (it != other.end())
            other.erase(it);
        else
            same.push_back(std::move(prim));
    }

    FactoredRatio& operator*=(const FactoredRatio& o)
    {
        constant_ *= o.constant_;
        for (const auto& f : o.num_)
            multiply(f, 1);
        for (const auto& f : o.den_)
            multiply(f, -1);
        return *this;
    }

    FactoredRatio inverse() const
    {
        FactoredRatio r(vars_);
        r.constant_ = 1 / constant_;
        r.num_ = den_;
        r.den_ = num_;
        return r;
    }

    FactoredRatio shifted(std::size_t var, const BigRational& c) const
    {
        FactoredRatio r(vars_);
        r.constant_ = constant_;
        for (const auto& f : num_)
            r.multiply(f.shift(var, c), 1);
        for (const auto& f : den_)
            r.multiply(f.shift(var, c), -1);
        return r;
    }

    MultiPoly num_poly() const { return product(num_); }
    MultiPoly den_poly() const { return product(den_); }

    RationalFunction expand() const
    {
        return RationalFunction(num_poly() * constant_, den_poly());
    }

private:
    MultiPoly product(const std::vector<MultiPoly>& fs) const
    {
        MultiPoly p = MultiPoly::constant(vars_, 1);
        for (const auto& f : fs)
            p *= f;
        return p;
    }

    VarsPtr vars_;
    BigRational constant_ = 1;
    std::vector<MultiPoly> num_, den_;
};

/// f(var + steps) / f(var) as a factored rational function.
inline FactoredRatio shift_ratio(const TermExpression& f, const std::string& var, long steps)
{
    const auto& vars = f.vars();
    FactoredRatio r(vars);
    if (steps == 0)
        return r;
    BigRational s(steps);
    for (const auto& g : f.gamma_form()) {
        BigRational delta = g.arg.coefficient(var) * s;
        if (!is_integer(delta))
            throw TermError("shifting " + var + " changes the argument " + g.arg.to_string() +
                            " by a non-integer amount");
        long d = to_long(delta.get_num());
        if (d > 0)
            for (long i = 0; i < d; ++i)
                r.multiply((g.arg + BigRational(i)).to_poly(vars), g.exponent);
        else
            for (long i = 1; i <= -d; ++i)
                r.multiply((g.arg - BigRational(i)).to_poly(vars), -g.exponent);
    }
    for (const auto& p : f.powers) {
        BigRational delta = p.exponent.coefficient(var) * s;
        if (!is_integer(delta))
            throw TermError("shifting " + var + " raises " + p.base.get_str() + " to a non-integer power");
        long d = to_long(delta.get_num());
        BigRational factor = 1;
        for (long i = 0; i < (d < 0 ? -d : d); ++i)
            factor *= p.base;
        r.scale(d < 0 ? BigRational(1 / factor) : factor);
    }
    const auto& rat = f.rational_factor();
    if (rat.is_zero())
        throw TermError("shift quotient of the zero term");
    std::size_t idx = vars->index_of(var);
    if (rat.num().depends_on(idx)) {
        r.multiply(rat.num().shift(idx, s), 1);
        r.multiply(rat.num(), -1);
    }
    if (rat.den().depends_on(idx)) {
        r.multiply(rat.den(), 1);
        r.multiply(rat.den().shift(idx, s), -1);
    }
    return r;
}

/// Q with f(v+1)/f(v) = Q.
inline RationalFunction shift_quotient(const TermExpression& f, const std::string& var)
{
    return shift_ratio(f, var, 1).expand();
}

}  // namespace synd
