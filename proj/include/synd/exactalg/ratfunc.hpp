#pragma once

#include "synd/exactalg/poly_gcd.hpp"

namespace synd {

/// Quotient of polynomials, kept reduced with a monic denominator.
class RationalFunction {
public:
    explicit RationalFunction(VarsPtr vars)
        : num_(vars), den_(MultiPoly::constant(vars, 1)) {}

    RationalFunction(MultiPoly num)  // NOLINT(google-explicit-constructor)
        : num_(std::move(num)), den_(MultiPoly::constant(num_.vars(), 1)) {}

    RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero())
            throw ArithmeticError("rational function with zero denominator");
        normalize();
    }

    static RationalFunction constant(const VarsPtr& vars, const BigRational& c)
    {
        return RationalFunction(MultiPoly::constant(vars, c));
    }

    const VarsPtr& vars() const { return num_.vars(); }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    BigRational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RationalFunction operator-() const { return RationalFunction(-num_, den_, Reduced{}); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.den_ == b.den_)
            return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero())
            throw ArithmeticError("rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    /// Both parts are canonical, so structural equality is mathematical equality.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RationalFunction substitute(std::size_t var, const MultiPoly& value) const
    {
        return RationalFunction(num_.substitute(var, value), den_.substitute(var, value));
    }

    RationalFunction substitute(std::size_t var, const BigRational& value) const
    {
        return RationalFunction(num_.substitute(var, value), den_.substitute(var, value));
    }

    RationalFunction shift(std::size_t var, const BigRational& c) const
    {
        return RationalFunction(num_.shift(var, c), den_.shift(var, c), Reduced{});
    }

    BigRational evaluate(std::span<const BigRational> values) const
    {
        BigRational d = den_.evaluate(values);
        if (d == 0)
            throw ArithmeticError("rational function: denominator vanishes at evaluation point");
        return num_.evaluate(values) / d;
    }

    RationalFunction with_vars(const VarsPtr& target) const
    {
        return RationalFunction(num_.with_vars(target), den_.with_vars(target), Reduced{});
    }

    std::string to_string() const
    {
        if (den_.is_constant() && den_.constant_value() == 1)
            return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    struct Reduced {};
    // shifting or remapping variables preserves reducedness; the leading
    // coefficient may move under a shift, so renormalize the scale only
    RationalFunction(MultiPoly num, MultiPoly den, Reduced) : num_(std::move(num)), den_(std::move(den))
    {
        BigRational lc = den_.leading_coeff();
        if (lc != 1) {
            num_ /= lc;
            den_ /= lc;
        }
    }

    void normalize()
    {
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(num_.vars(), 1);
            return;
        }
        if (!den_.is_constant()) {
            MultiPoly g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = num_.divide_or_throw(g);
                den_ = den_.divide_or_throw(g);
            }
        }
        BigRational lc = den_.leading_coeff();
        if (lc != 1) {
            num_ /= lc;
            den_ /= lc;
        }
    }

    MultiPoly num_;
    MultiPoly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

}  // namespace synd
