#pragma once

#include "synd/exactalg/polymatrix.hpp"
#include "synd/hyperterm/shift.hpp"

#include <map>
#include <tuple>

namespace synd {

namespace detail {

/// (base)(base+1)...(base+count-1) as a polynomial.
inline MultiPoly rising_poly(const MultiPoly& base, long count)
{
    MultiPoly p = MultiPoly::constant(base.vars(), 1);
    for (long j = 0; j < count; ++j)
        p *= base + MultiPoly::constant(base.vars(), BigRational(j));
    return p;
}

inline BigRational factorial_value(long m)
{
    BigInt f = 1;
    for (long i = 2; i <= m; ++i)
        f *= i;
    return BigRational(f);
}

inline long checked_long(const BigRational& v, const char* what)
{
    if (!fits_long(v.get_num()))
        throw TermError(std::string(what) + " too large to evaluate");
    return to_long(v.get_num());
}

/// Accumulates a product as factored numerator / denominator; a zero factor
/// makes the whole value zero.
class ProductAccumulator {
public:
    explicit ProductAccumulator(VarsPtr vars) : ratio_(std::move(vars)) {}

    void mul(const MultiPoly& p, int e)
    {
        if (zero_)
            return;
        if (p.is_zero()) {
            if (e < 0)
                throw TermError("division by zero while evaluating a term");
            zero_ = true;
            return;
        }
        ratio_.multiply(p, e);
    }
    void mul(const BigRational& c, int e) { mul(MultiPoly::constant(ratio_.vars(), c), e); }
    void set_zero() { zero_ = true; }
    bool zero() const { return zero_; }

    RationalFunction result() const
    {
        if (zero_)
            return RationalFunction(ratio_.vars());
        return ratio_.expand();
    }

private:
    FactoredRatio ratio_;
    bool zero_ = false;
};

}  // namespace detail

/// Value of f with the symbols in `point` assigned; the result is a rational
/// function of the remaining symbols. Gamma factors whose arguments stay
/// symbolic must pair up into rising factorials, otherwise the value is not
/// rational and TermError is raised. A reciprocal factorial of a negative
/// integer counts as zero.
inline RationalFunction eval_symbolic(const TermExpression& f, const Point& point)
{
    const auto& vars = f.vars();
    detail::ProductAccumulator acc(vars);
    // Gamma(arg)^e left symbolic, grouped by linear part and fractional constant.
    using ClassKey = std::pair<LinearForm, BigRational>;
    std::map<ClassKey, std::vector<std::pair<BigRational, int>>> deferred;
    auto defer = [&](const LinearForm& arg, int e) {
        if (arg.is_integer_constant()) {
            long m = detail::checked_long(arg.constant(), "gamma argument");
            if (m >= 1)
                acc.mul(detail::factorial_value(m - 1), e);
            else if (e < 0)
                acc.set_zero();
            else
                throw TermError("pole of a gamma factor at " + std::to_string(m));
            return;
        }
        BigRational c = arg.constant();
        BigRational frac = c - BigRational(floor_of(c));
        deferred[{arg.linear_part(), frac}].push_back({c - frac, e});
    };

    for (const auto& fa : f.factorials) {
        LinearForm x = fa.arg.substitute(point);
        if (x.is_integer_constant()) {
            long m = detail::checked_long(x.constant(), "factorial argument");
            if (m < 0) {
                if (fa.exponent > 0)
                    throw TermError("factorial of negative integer " + std::to_string(m));
                acc.set_zero();
                continue;
            }
            acc.mul(detail::factorial_value(m), fa.exponent);
        } else {
            defer(x + BigRational(1), fa.exponent);
        }
    }

    for (const auto& b : f.binomials) {
        LinearForm u = b.upper.substitute(point);
        LinearForm lo = b.lower.substitute(point);
        LinearForm d = u - lo;
        if (lo.is_integer_constant()) {
            long m = detail::checked_long(lo.constant(), "binomial lower argument");
            if (m < 0)
                throw TermError("binomial with negative lower argument " + std::to_string(m));
            MultiPoly top = u.to_poly(vars) - MultiPoly::constant(vars, BigRational(m - 1));
            acc.mul(detail::rising_poly(top, m), b.exponent);
            acc.mul(detail::factorial_value(m), -b.exponent);
        } else if (d.is_integer_constant()) {
            long m = detail::checked_long(d.constant(), "binomial argument difference");
            if (m < 0) {
                // Gamma(u+1) / (Gamma(lo+1) Gamma(m+1)) with a pole below.
                if (b.exponent < 0)
                    throw TermError("division by a vanishing binomial");
                acc.set_zero();
                continue;
            }
            MultiPoly top = u.to_poly(vars) - MultiPoly::constant(vars, BigRational(m - 1));
            acc.mul(detail::rising_poly(top, m), b.exponent);
            acc.mul(detail::factorial_value(m), -b.exponent);
        } else {
            defer(u + BigRational(1), b.exponent);
            defer(lo + BigRational(1), -b.exponent);
            defer(d + BigRational(1), -b.exponent);
        }
    }

    for (const auto& r : f.rising_factorials) {
        LinearForm base = r.base.substitute(point);
        LinearForm count = r.count.substitute(point);
        if (count.is_integer_constant()) {
            long m = detail::checked_long(count.constant(), "rising factorial count");
            if (m < 0)
                throw TermError("rising factorial with negative count " + std::to_string(m));
            acc.mul(detail::rising_poly(base.to_poly(vars), m), r.exponent);
        } else {
            defer(base + count, r.exponent);
            defer(base, -r.exponent);
        }
    }

    for (const auto& p : f.powers) {
        LinearForm e = p.exponent.substitute(point);
        if (!e.is_integer_constant())
            throw TermError("power " + p.base.get_str() + "^(" + e.to_string() + ") is not rational");
        long m = detail::checked_long(e.constant(), "power exponent");
        BigRational v = 1;
        for (long i = 0; i < (m < 0 ? -m : m); ++i)
            v *= p.base;
        acc.mul(v, m < 0 ? -1 : 1);
    }

    for (const auto& [key, items] : deferred) {
        int net = 0;
        BigRational lowest = items.front().first;
        for (const auto& [c, e] : items) {
            net += e;
            if (c < lowest)
                lowest = c;
        }
        if (net != 0)
            throw TermError("gamma factors in " + key.first.to_string() + " do not combine into a rational value");
        // Gamma(L + lowest + j) / Gamma(L + lowest) = rising(L + lowest, j).
        MultiPoly base = (key.first + (key.second + lowest)).to_poly(vars);
        for (const auto& [c, e] : items) {
            long j = detail::checked_long(c - lowest, "gamma argument offset");
            acc.mul(detail::rising_poly(base, j), e);
        }
    }

    RationalFunction rat = f.rational_factor();
    for (const auto& [s, v] : point)
        if (auto idx = vars->find(s)) {
            try {
                rat = rat.substitute(*idx, v);
            } catch (const ArithmeticError&) {
                throw TermError("rational factor has a zero denominator at " + s + " = " + v.get_str());
            }
        }
    if (rat.is_zero() || acc.zero())
        return RationalFunction(vars);
    return acc.result() * rat;
}

/// Exact value of f with every symbol assigned.
inline BigRational eval_term(const TermExpression& f, const Point& point)
{
    RationalFunction r = eval_symbolic(f, point);
    if (!r.is_constant())
        throw TermError("eval_term: not every symbol of the term is assigned");
    return r.constant_value();
}

}  // namespace synd
