#pragma once

#include "synd/exactalg/polymatrix.hpp"
#include "synd/hyperterm.hpp"

#include <optional>
#include <set>

namespace synd {

/// ratio = p(k+1)/p(k) * q(k)/r(k) with gcd(q(k), r(k+j)) = 1 for all j >= 0.
struct GosperForm {
    MultiPoly p, q, r;
};

/// G = ratio * f.
struct Certificate {
    RationalFunction ratio;
};

namespace detail {

/// Extends a ring by one fresh variable; returns the ring and its index.
inline std::pair<VarsPtr, std::size_t> ring_with_extra(const VarsPtr& vars, const std::string& base)
{
    std::vector<std::string> names = vars->names();
    std::string name = base;
    while (vars->find(name))
        name += "_";
    names.push_back(name);
    return {make_vars(names), names.size() - 1};
}

/// Nonnegative integers j with gcd(a(k), b(k+j)) nontrivial.
inline std::set<long> dispersion_set(const MultiPoly& a, const MultiPoly& b, std::size_t k)
{
    std::set<long> out;
    if (!a.depends_on(k) || !b.depends_on(k))
        return out;
    if (a.degree(k) == 1 && b.degree(k) == 1) {
        // a = alpha k + a0, b = beta k + b0; common root needs j = a0/alpha - b0/beta.
        MultiPoly alpha = a.coeff(k, 1), a0 = a.coeff(k, 0);
        MultiPoly beta = b.coeff(k, 1), b0 = b.coeff(k, 0);
        RationalFunction j(beta * a0 - alpha * b0, alpha * beta);
        if (j.is_constant()) {
            BigRational v = j.constant_value();
            if (is_integer(v) && v >= 0 && fits_long(v.get_num()))
                out.insert(to_long(v.get_num()));
        }
        return out;
    }
    auto [ring, jv] = ring_with_extra(a.vars(), "j");
    MultiPoly ae = a.with_vars(ring);
    MultiPoly be = b.with_vars(ring).substitute(k, MultiPoly::variable(ring, k) + MultiPoly::variable(ring, jv));
    MultiPoly res = resultant(ae, be, k);
    if (res.is_zero())
        throw ArithmeticError("dispersion: factors share a component identically");
    // j must annihilate the coefficient of every monomial in the other variables.
    std::map<Exponents, std::vector<MultiPoly::Term>> groups;
    for (const auto& t : res.terms()) {
        Exponents key = t.exp;
        key[jv] = 0;
        Exponents ej{};
        ej[jv] = t.exp[jv];
        groups[key].push_back({ej, t.coeff});
    }
    std::optional<MultiPoly> g;
    for (auto& [key, terms] : groups) {
        MultiPoly c = MultiPoly::from_terms(ring, std::move(terms));
        g = g ? poly_gcd(*g, c) : c;
        if (g->is_constant())
            return out;
    }
    for (const auto& root : integer_roots(*g, jv, true))
        if (fits_long(root))
            out.insert(to_long(root));
    return out;
}

inline MultiPoly product_of(const VarsPtr& vars, const std::vector<MultiPoly>& fs)
{
    MultiPoly p = MultiPoly::constant(vars, 1);
    for (const auto& f : fs)
        p *= f;
    return p;
}

}  // namespace detail

/// Gosper form of a factored ratio; the factors keep the resultants small.
inline GosperForm pqr_decompose(const FactoredRatio& ratio, std::size_t k)
{
    const auto& vars = ratio.vars();
    if (ratio.constant() == 0)
        throw ArithmeticError("pqr_decompose: zero ratio");
    std::vector<MultiPoly> qf = ratio.num(), rf = ratio.den(), pf;
    std::set<long> shifts;
    for (const auto& a : qf)
        for (const auto& b : rf)
            for (long j : detail::dispersion_set(a, b, k))
                shifts.insert(j);
    for (long j : shifts) {
        BigRational bj(j);
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& a : qf)
                for (auto& b : rf) {
                    if (!a.depends_on(k) || !b.depends_on(k))
                        continue;
                    MultiPoly g = poly_gcd(a, b.shift(k, bj));
                    if (!g.depends_on(k))
                        continue;
                    a = a.divide_or_throw(g);
                    b = b.divide_or_throw(g.shift(k, -bj));
                    for (long i = 1; i <= j; ++i)
                        pf.push_back(g.shift(k, BigRational(-i)));
                    changed = true;
                }
        }
    }
    MultiPoly q = detail::product_of(vars, qf) * ratio.constant();
    return {detail::product_of(vars, pf), q, detail::product_of(vars, rf)};
}

inline GosperForm pqr_decompose(const RationalFunction& ratio, std::size_t k)
{
    if (ratio.is_zero())
        throw ArithmeticError("pqr_decompose: zero ratio");
    FactoredRatio f(ratio.vars());
    f.multiply(ratio.num(), 1);
    f.multiply(ratio.den(), -1);
    return pqr_decompose(f, k);
}

/// Largest degree a polynomial solution x of q(k)x(k+1) - r(k-1)x(k) = p(k)
/// can have when deg p = deg_p; nullopt when no solution of degree >= 0 exists.
inline std::optional<int> gosper_degree_bound(const MultiPoly& q, const MultiPoly& r, int deg_p, std::size_t k)
{
    MultiPoly rs = r.shift(k, BigRational(-1));
    int dq = q.degree(k), dr = rs.degree(k);
    int bound;
    if (dq != dr || q.leading_coeff_in(k) != rs.leading_coeff_in(k)) {
        bound = deg_p - std::max(dq, dr);
    } else {
        int d = dq;
        bound = deg_p - d + 1;
        if (d >= 1) {
            MultiPoly a = q.coeff(k, d - 1), b = rs.coeff(k, d - 1);
            RationalFunction c(b - a, q.leading_coeff_in(k));
            if (c.is_constant()) {
                BigRational v = c.constant_value();
                if (is_integer(v) && v >= 0 && fits_long(v.get_num()))
                    bound = std::max(bound, static_cast<int>(to_long(v.get_num())));
            }
        }
    }
    if (bound < 0)
        return std::nullopt;
    return bound;
}

/// Coefficient rows of q(k)x(k+1) - r(k-1)x(k) - sum_i c_i P_i(k) = 0 with
/// x = sum_{m<=K} b_m k^m; columns are (c_0..c_s, b_0..b_K).
inline std::vector<std::vector<MultiPoly>> gosper_rows(const MultiPoly& q, const MultiPoly& r, int K, std::size_t k,
                                                       const std::vector<MultiPoly>& rhs)
{
    const auto& vars = q.vars();
    MultiPoly kv = MultiPoly::variable(vars, k);
    MultiPoly rs = r.shift(k, BigRational(-1));
    std::vector<MultiPoly> cols;
    for (const auto& p : rhs)
        cols.push_back(-p);
    MultiPoly km = MultiPoly::constant(vars, 1), km1 = km;
    MultiPoly k1 = kv + MultiPoly::constant(vars, 1);
    for (int m = 0; m <= K; ++m) {
        cols.push_back(q * km1 - rs * km);
        km *= kv;
        km1 *= k1;
    }
    int rows = 0;
    for (const auto& c : cols)
        rows = std::max(rows, c.degree(k) + 1);
    std::vector<std::vector<MultiPoly>> out(static_cast<std::size_t>(rows), std::vector<MultiPoly>(cols.size(), MultiPoly(vars)));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto cs = cols[j].coeffs_in(k);
        for (std::size_t i = 0; i < cs.size(); ++i)
            out[i][j] = cs[i];
    }
    return out;
}

/// R with G = R f and G(k+1) - G(k) = f(k), or nullopt if no hypergeometric G exists.
inline std::optional<Certificate> gosper_antidifference(const TermExpression& f, const std::string& var)
{
    const auto& vars = f.vars();
    std::size_t k = vars->index_of(var);
    if (f.rational_factor().is_zero())
        return Certificate{RationalFunction(vars)};
    GosperForm g = pqr_decompose(shift_ratio(f, var, 1), k);
    auto K = gosper_degree_bound(g.q, g.r, g.p.degree(k), k);
    if (!K)
        return std::nullopt;
    auto rows = gosper_rows(g.q, g.r, *K, k, {g.p});
    for (const auto& v : polynomial_nullspace(PolyMatrix::from_rows(vars, rows))) {
        if (v[0].is_zero())
            continue;
        MultiPoly x(vars);
        MultiPoly kv = MultiPoly::variable(vars, k), km = MultiPoly::constant(vars, 1);
        for (int m = 0; m <= *K; ++m) {
            x += v[static_cast<std::size_t>(m) + 1] * km;
            km *= kv;
        }
        MultiPoly num = g.r.shift(k, BigRational(-1)) * x;
        return Certificate{RationalFunction(num, g.p * v[0])};
    }
    return std::nullopt;
}

}  // namespace synd
