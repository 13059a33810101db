#pragma once

#include "synd/hyperterm/eval.hpp"

#include <optional>

namespace synd {

/// Integer interval [lo, hi]; a missing side is unbounded. lo > hi is empty.
struct SupportInterval {
    std::optional<BigInt> lo, hi;

    bool empty() const { return lo && hi && *lo > *hi; }
    bool finite() const { return lo && hi; }

    static SupportInterval empty_interval() { return {BigInt(0), BigInt(-1)}; }

    SupportInterval intersect(const SupportInterval& o) const
    {
        SupportInterval r = *this;
        if (o.lo && (!r.lo || *o.lo > *r.lo))
            r.lo = o.lo;
        if (o.hi && (!r.hi || *o.hi < *r.hi))
            r.hi = o.hi;
        return r;
    }

    std::string to_string() const
    {
        return std::string(lo ? "[" + lo->get_str() : "(-inf") + ", " + (hi ? hi->get_str() + "]" : "inf)");
    }

    friend bool operator==(const SupportInterval&, const SupportInterval&) = default;
};

namespace detail {

/// c*k + d with c integer and d integer, after the point is substituted.
inline bool integer_valued_in(const LinearForm& f, const std::string& k)
{
    for (const auto& [s, c] : f.coefficients())
        if (s != k || !is_integer(c))
            return false;
    return is_integer(f.constant());
}

/// Restricts `s` to the k with f(k) >= 0; f integer-valued.
inline void require_nonnegative(SupportInterval& s, const LinearForm& f, const std::string& k)
{
    BigRational c = f.coefficient(k);
    BigRational d = f.constant();
    if (c == 0) {
        if (d < 0)
            s = SupportInterval::empty_interval();
        return;
    }
    BigRational bound = -d / c;
    if (c > 0)
        s = s.intersect({ceil_of(bound), std::nullopt});
    else
        s = s.intersect({std::nullopt, floor_of(bound)});
}

}  // namespace detail

/// Smallest integer interval in `k` outside which f is forced to vanish. Symbols
/// other than k that are missing from `point` are treated as generic.
inline SupportInterval natural_support(const TermExpression& f, const std::string& k, const Point& point)
{
    SupportInterval s;
    using detail::integer_valued_in;
    using detail::require_nonnegative;

    for (const auto& fa : f.factorials) {
        LinearForm x = fa.arg.substitute(point);
        if (integer_valued_in(x, k))
            require_nonnegative(s, x, k);
    }
    for (const auto& b : f.binomials) {
        if (b.exponent < 0)
            continue;
        LinearForm u = b.upper.substitute(point);
        LinearForm lo = b.lower.substitute(point);
        LinearForm d = u - lo;
        if (integer_valued_in(lo, k))
            require_nonnegative(s, lo, k);
        if (integer_valued_in(d, k)) {
            bool negative_top = integer_valued_in(u, k) && (u.depends_on(k) || u.constant() < 0);
            if (!negative_top)
                require_nonnegative(s, d, k);
        }
    }
    for (const auto& r : f.rising_factorials) {
        LinearForm base = r.base.substitute(point);
        LinearForm count = r.count.substitute(point);
        if (integer_valued_in(count, k))
            require_nonnegative(s, count, k);
        if (r.exponent > 0 && base.is_integer_constant() && base.constant() <= 0 && integer_valued_in(count, k))
            require_nonnegative(s, count * BigRational(-1) - base, k);
    }
    if (f.rational_factor().is_zero())
        return SupportInterval::empty_interval();
    if (s.empty())
        return SupportInterval::empty_interval();
    return s;
}

/// natural_support with the summation variable taken as the ring's first symbol.
inline SupportInterval natural_support(const TermExpression& f, const Point& point)
{
    return natural_support(f, (*f.vars())[0], point);
}

}  // namespace synd
