#pragma once

#include "synd/telescope.hpp"

#include <optional>

namespace synd {

/// Raised when an identity cannot be brought into the form the prover needs.
class IdentityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// sum_{k=lower}^{upper} F(n,k) = rhs(n), all in one ring [k, n, params...].
struct Identity {
    TermExpression summand;
    std::vector<TermExpression> rhs;  // empty: the right side is 0
    std::string k = "k", n = "n";
    std::vector<std::string> params;
    std::optional<LinearForm> lower, upper;  // missing: natural support

    explicit Identity(TermExpression f) : summand(std::move(f)) {}

    const VarsPtr& vars() const { return summand.vars(); }
};

/// fhat = F / RHS and the differenced summand fhat(n+1,k) - fhat(n,k),
/// kept as a two-term shift sum of fhat.
struct NormalizedIdentity {
    Identity source;
    TermExpression fhat;
    ShiftSum ftil;
    RationalFunction ftil_multiplier;  // rho_n - 1, so that ftil = fhat * multiplier
    bool rhs_is_zero = false;

    const VarsPtr& vars() const { return fhat.vars(); }

    /// The summand whose telescoper the determinant method looks for.
    const ShiftSum& target() const { return ftil; }
};

inline NormalizedIdentity normalize_and_delta(const Identity& id)
{
    const auto& vars = id.vars();
    NormalizedIdentity out{id, id.summand, ShiftSum::of(id.summand, id.k, id.n), RationalFunction(vars), false};
    if (id.rhs.empty()) {
        out.rhs_is_zero = true;
        return out;
    }
    if (id.rhs.size() != 1)
        throw IdentityError("right side is a sum of several terms, not hypergeometric in " + id.n);
    const TermExpression& rhs = id.rhs.front();
    if (rhs.rational_factor().is_zero()) {
        out.rhs_is_zero = true;
        return out;
    }
    try {
        (void)shift_ratio(rhs, id.n, 1);
    } catch (const TermError& e) {
        throw IdentityError(std::string("right side is not hypergeometric in ") + id.n + ": " + e.what());
    }
    out.fhat = id.summand / rhs;
    out.ftil = ShiftSum{out.fhat, {BigRational(-1), BigRational(1)}, id.k, id.n};
    out.ftil_multiplier = shift_quotient(out.fhat, id.n) - RationalFunction::constant(vars, 1);
    return out;
}

}  // namespace synd
