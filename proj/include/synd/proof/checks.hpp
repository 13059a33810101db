#pragma once

#include "synd/proof/identity.hpp"
#include "synd/proof/vanishing.hpp"

namespace synd {

/// Summation range at a concrete n: declared limits intersected with the
/// natural support of f (parameters generic).
inline SupportInterval summation_range(const Identity& id, const TermExpression& f, long n)
{
    Point at{{id.n, BigRational(n)}};
    SupportInterval s = natural_support(f, id.k, at);
    auto bound = [&](const std::optional<LinearForm>& lim, const char* which) -> std::optional<BigInt> {
        if (!lim)
            return std::nullopt;
        LinearForm v = lim->substitute(at);
        if (!v.is_integer_constant())
            throw IdentityError(std::string(which) + " limit " + lim->to_string() + " is not an integer at " + id.n +
                                " = " + std::to_string(n));
        return v.constant().get_num();
    };
    s = s.intersect({bound(id.lower, "lower"), bound(id.upper, "upper")});
    if (!s.finite())
        throw IdentityError("unbounded summation range at " + id.n + " = " + std::to_string(n));
    return s;
}

/// sum_k f(n,k) over the summation range, exactly, as a rational function of
/// the parameters.
inline RationalFunction exact_sum(const Identity& id, const TermExpression& f, long n)
{
    SupportInterval s = summation_range(id, f, n);
    RationalFunction total(f.vars());
    for (BigInt k = *s.lo; k <= *s.hi; ++k)
        total += eval_symbolic(f, {{id.n, BigRational(n)}, {id.k, BigRational(k)}});
    return total;
}

struct LeadingCoeffResult {
    bool found = false;
    std::optional<long> n0;  // largest nonnegative integer root of a_J(n)
    int order = -1;          // order of the specialized recurrence
    std::string leading;     // a_J(n) of the specialized recurrence
    std::vector<std::pair<std::string, BigRational>> specialization;
    std::string message;
};

namespace detail {

/// An argument that mentioned a parameter became integral at the sample: the
/// specialized summand may hit poles or zeros the generic one does not have.
inline bool accidentally_integral(const LinearForm& arg, const Point& p)
{
    bool mentions = false;
    for (const auto& [s, c] : arg.coefficients())
        if (p.count(s))
            mentions = true;
    if (!mentions)
        return false;
    return is_integer(arg.substitute(p).constant());
}

inline bool degenerate_specialization(const TermExpression& f, const Point& p)
{
    for (const auto& g : f.gamma_form())
        if (accidentally_integral(g.arg, p))
            return true;
    return f.substituted(p).rational_factor().is_zero();
}

}  // namespace detail

/// Largest nonnegative integer root of a_J(n), if any.
inline std::optional<long> leading_root_bound(const MultiPoly& lead, std::size_t n)
{
    auto roots = integer_roots(lead, n, true);
    if (roots.empty())
        return std::nullopt;
    return to_long(roots.back());
}

/// Specializes the parameters to small random rationals, runs creative
/// telescoping on the specialized target, and reports the largest nonnegative
/// integer root of its leading coefficient.
inline LeadingCoeffResult leading_coeff_check(const NormalizedIdentity& nid, int maxJ, std::uint64_t seed)
{
    const Identity& id = nid.source;
    const ShiftSum& target = nid.target();
    LeadingCoeffResult out;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    Point p;
    bool ok = id.params.empty();
    for (int attempt = 0; attempt < 6 && !ok; ++attempt) {
        p.clear();
        for (const auto& s : id.params) {
            long num = static_cast<long>(detail::uniform_upto(rng, 40)) - 20;
            long den = static_cast<long>(detail::uniform_upto(rng, 19)) + 1;
            p[s] = make_rational(num, den);
        }
        ok = !detail::degenerate_specialization(target.base, p);
    }
    if (!ok) {
        out.message = "every parameter specialization was degenerate";
        return out;
    }
    for (const auto& s : id.params)
        out.specialization.push_back({s, p[s]});
    ShiftSum spec = target;
    spec.base = target.base.substituted(p);
    auto t = creative_telescope(spec, maxJ);
    if (!t) {
        out.message = "specialized summand has no telescoper up to order " + std::to_string(maxJ);
        return out;
    }
    const MultiPoly& lead = t->recurrence.leading();
    std::size_t n = spec.n_index();
    for (std::size_t v = 0; v < lead.vars()->size(); ++v)
        if (v != n && lead.depends_on(v)) {
            out.message = "specialized leading coefficient still depends on " + (*lead.vars())[v];
            return out;
        }
    out.found = true;
    out.order = t->recurrence.order();
    out.leading = lead.to_string();
    out.n0 = leading_root_bound(lead, n);
    return out;
}

struct InitialCheck {
    long n = 0;
    std::string kind;  // "anchor": A(0) = 1, "delta": A(n+1) - A(n) = 0, "sum": A(n) = 0
    bool passed = false;
};

/// Exact initial values closing the induction for a recurrence of order J
/// whose leading coefficient has no nonnegative integer root beyond n0.
inline std::vector<InitialCheck> initial_conditions_check(const NormalizedIdentity& nid, int J, std::optional<long> n0)
{
    const Identity& id = nid.source;
    long last = J - 1;
    if (n0)
        last = std::max(last, *n0 + J);
    std::vector<InitialCheck> out;
    if (nid.rhs_is_zero) {
        for (long n = 0; n <= last; ++n)
            out.push_back({n, "sum", exact_sum(id, nid.fhat, n).is_zero()});
        return out;
    }
    std::vector<RationalFunction> A;
    for (long n = 0; n <= std::max(0L, last + 1); ++n)
        A.push_back(exact_sum(id, nid.fhat, n));
    out.push_back({0, "anchor", A[0] == RationalFunction::constant(nid.vars(), 1)});
    for (long n = 0; n <= last; ++n)
        out.push_back({n, "delta", (A[static_cast<std::size_t>(n + 1)] - A[static_cast<std::size_t>(n)]).is_zero()});
    return out;
}

}  // namespace synd
