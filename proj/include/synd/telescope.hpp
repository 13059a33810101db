#pragma once

#include "synd/gosper.hpp"

#include <optional>

namespace synd {

/// sum_s weights[s] * base(n+s, k). Plain summands use weights {1}.
struct ShiftSum {
    TermExpression base;
    std::vector<BigRational> weights{BigRational(1)};
    std::string k = "k", n = "n";

    static ShiftSum of(TermExpression f, std::string k = "k", std::string n = "n")
    {
        return ShiftSum{std::move(f), {BigRational(1)}, std::move(k), std::move(n)};
    }

    const VarsPtr& vars() const { return base.vars(); }
    std::size_t k_index() const { return vars()->index_of(k); }
    std::size_t n_index() const { return vars()->index_of(n); }
};

/// sum_j coeffs[j](n) A(n+j) = 0.
struct Recurrence {
    std::vector<MultiPoly> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    const MultiPoly& leading() const { return coeffs.back(); }
};

struct TelescoperAnsatz {
    int J = 0;
    int K = -1;  // -1: the degree bound rules out any solution
    std::size_t unknowns() const { return static_cast<std::size_t>(J + 1 + K + 1); }
};

/// Homogeneous system for (a_0..a_J, b_0..b_K) together with the pieces
/// needed to rebuild the certificate: G = r(k-1) x(k) / (p0(k) v(k)) * base.
struct GZSystem {
    TelescoperAnsatz ansatz;
    PolyMatrix matrix;
    MultiPoly q, r, p0, v;
    std::vector<MultiPoly> u;  // sum_j a_j T(n+j) = base / v * sum_j a_j u_j

    bool viable() const { return ansatz.K >= 0; }
};

struct TelescopeResult {
    Recurrence recurrence;
    Certificate certificate;
    TelescoperAnsatz ansatz;
};

namespace detail {

/// Multiset of primitive factors; used for least common multiples.
struct FactorBag {
    std::vector<std::pair<MultiPoly, int>> items;

    int count(const MultiPoly& f) const
    {
        for (const auto& [g, c] : items)
            if (g == f)
                return c;
        return 0;
    }

    void raise_to(const MultiPoly& f, int c)
    {
        for (auto& [g, m] : items)
            if (g == f) {
                m = std::max(m, c);
                return;
            }
        items.push_back({f, c});
    }

    /// lcm with a factor list (repeats count as multiplicity).
    void lcm_with(const std::vector<MultiPoly>& fs)
    {
        std::vector<std::pair<MultiPoly, int>> local;
        for (const auto& f : fs) {
            bool found = false;
            for (auto& [g, c] : local)
                if (g == f) {
                    ++c;
                    found = true;
                }
            if (!found)
                local.push_back({f, 1});
        }
        for (const auto& [f, c] : local)
            raise_to(f, c);
    }

    /// Product of the bag divided by the listed factors (which must be in it).
    MultiPoly product_without(const VarsPtr& vars, const std::vector<MultiPoly>& fs) const
    {
        auto left = items;
        for (const auto& f : fs)
            for (auto& [g, c] : left)
                if (g == f && c > 0) {
                    --c;
                    break;
                }
        MultiPoly p = MultiPoly::constant(vars, 1);
        for (const auto& [g, c] : left)
            for (int i = 0; i < c; ++i)
                p *= g;
        return p;
    }
};

inline MultiPoly expand_x(const std::vector<MultiPoly>& b, std::size_t k, const VarsPtr& vars)
{
    MultiPoly x(vars), km = MultiPoly::constant(vars, 1), kv = MultiPoly::variable(vars, k);
    for (const auto& bi : b) {
        x += bi * km;
        km *= kv;
    }
    return x;
}

}  // namespace detail

/// Builds the creative-telescoping system of order J for f.
inline GZSystem assemble_gz_system(const ShiftSum& f, int J)
{
    const auto& vars = f.vars();
    std::size_t k = f.k_index();
    int S = static_cast<int>(f.weights.size()) - 1;
    std::vector<FactoredRatio> sigma;
    for (int m = 0; m <= J + S; ++m)
        sigma.push_back(shift_ratio(f.base, f.n, m));

    detail::FactorBag bag;
    for (const auto& s : sigma)
        bag.lcm_with(s.den());
    MultiPoly v = bag.product_without(vars, {});

    std::vector<MultiPoly> u;
    for (int j = 0; j <= J; ++j) {
        MultiPoly uj(vars);
        for (int s = 0; s <= S; ++s) {
            const BigRational& w = f.weights[static_cast<std::size_t>(s)];
            if (w == 0)
                continue;
            const auto& sg = sigma[static_cast<std::size_t>(j + s)];
            MultiPoly term = bag.product_without(vars, sg.den()) * sg.num_poly();
            term *= w * sg.constant();
            uj += term;
        }
        u.push_back(std::move(uj));
    }

    FactoredRatio rho = shift_ratio(f.base, f.k, 1);
    for (const auto& [g, c] : bag.items)
        for (int i = 0; i < c; ++i) {
            rho.multiply(g, 1);
            rho.multiply(g.shift(k, BigRational(1)), -1);
        }
    GosperForm g = pqr_decompose(rho, k);

    int deg_u = -1;
    for (const auto& x : u)
        deg_u = std::max(deg_u, x.is_zero() ? -1 : x.degree(k));
    TelescoperAnsatz ansatz{J, -1};
    if (deg_u >= 0)
        if (auto K = gosper_degree_bound(g.q, g.r, g.p.degree(k) + deg_u, k))
            ansatz.K = *K;

    std::vector<MultiPoly> rhs;
    for (const auto& x : u)
        rhs.push_back(g.p * x);
    auto rows = gosper_rows(g.q, g.r, ansatz.K, k, rhs);
    PolyMatrix m = rows.empty() ? PolyMatrix(vars, 0, ansatz.unknowns()) : PolyMatrix::from_rows(vars, rows);
    return GZSystem{ansatz, std::move(m), g.q, g.r, g.p, v, std::move(u)};
}

/// Recurrence and certificate from a nullspace vector (a_0..a_J, b_0..b_K);
/// nullopt when the a-part vanishes.
inline std::optional<TelescopeResult> telescoper_from_solution(const GZSystem& sys, const ShiftSum& f,
                                                               std::vector<MultiPoly> sol)
{
    const auto& vars = f.vars();
    std::size_t k = f.k_index();
    int J = sys.ansatz.J;
    int top = -1;
    for (int j = 0; j <= J; ++j)
        if (!sol[static_cast<std::size_t>(j)].is_zero())
            top = j;
    if (top < 0)
        return std::nullopt;
    // Divide everything by the content of the a-part; sign makes a_top positive.
    MultiPoly g(vars);
    for (int j = 0; j <= top; ++j) {
        const auto& a = sol[static_cast<std::size_t>(j)];
        if (!a.is_zero())
            g = g.is_zero() ? a.monic() : poly_gcd(g, a);
    }
    std::vector<MultiPoly> a(sol.begin(), sol.begin() + top + 1);
    for (auto& x : a)
        x = x.divide_or_throw(g);
    BigInt num = 0, den = 1;
    for (const auto& x : a)
        for (const auto& t : x.terms()) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
        }
    BigRational scale = make_rational(num, den);
    if (a.back().leading_coeff() < 0)
        scale = -scale;
    for (auto& x : a)
        x /= scale;
    std::vector<MultiPoly> b(sol.begin() + J + 1, sol.end());
    MultiPoly x = detail::expand_x(b, k, vars);
    MultiPoly cnum = sys.r.shift(k, BigRational(-1)) * x;
    MultiPoly cden = sys.p0 * sys.v * g * MultiPoly::constant(vars, scale);
    return TelescopeResult{Recurrence{std::move(a)}, Certificate{RationalFunction(cnum, cden)},
                           TelescoperAnsatz{top, sys.ansatz.K}};
}

/// Picks, among nullspace vectors with a nonzero a-part, the one of lowest
/// order, ties broken by the total degree of its leading coefficient.
inline std::optional<TelescopeResult> best_telescoper(const GZSystem& sys, const ShiftSum& f,
                                                      const std::vector<std::vector<MultiPoly>>& basis)
{
    std::optional<TelescopeResult> best;
    for (const auto& v : basis) {
        auto t = telescoper_from_solution(sys, f, v);
        if (!t)
            continue;
        if (!best || t->recurrence.order() < best->recurrence.order() ||
            (t->recurrence.order() == best->recurrence.order() &&
             t->recurrence.leading().total_degree() < best->recurrence.leading().total_degree()))
            best = std::move(t);
    }
    return best;
}

/// Checks sum_j a_j T(n+j,k) = R(k+1) base(k+1) - R(k) base(k) identically.
inline bool verify_certificate(const ShiftSum& f, const Recurrence& rec, const Certificate& cert)
{
    try {
        const auto& vars = f.vars();
        std::size_t k = f.k_index();
        int J = rec.order();
        int S = static_cast<int>(f.weights.size()) - 1;
        if (J < 0)
            return false;
        std::vector<FactoredRatio> sigma;
        for (int m = 0; m <= J + S; ++m)
            sigma.push_back(shift_ratio(f.base, f.n, m));
        detail::FactorBag bag;
        for (const auto& s : sigma)
            bag.lcm_with(s.den());
        MultiPoly v = bag.product_without(vars, {});
        MultiPoly lhs(vars);
        for (int j = 0; j <= J; ++j)
            for (int s = 0; s <= S; ++s) {
                const auto& sg = sigma[static_cast<std::size_t>(j + s)];
                MultiPoly t = bag.product_without(vars, sg.den()) * sg.num_poly();
                t *= f.weights[static_cast<std::size_t>(s)] * sg.constant();
                lhs += rec.coeffs[static_cast<std::size_t>(j)].with_vars(vars) * t;
            }
        FactoredRatio rho = shift_ratio(f.base, f.k, 1);
        MultiPoly rn = rho.num_poly() * rho.constant(), rd = rho.den_poly();
        RationalFunction R = cert.ratio.with_vars(vars);
        RationalFunction R1 = R.shift(k, BigRational(1));
        // lhs/v = R1 rn/rd - R; multiply through by v * rd * den(R1) * den(R)
        MultiPoly left = lhs * rd * R1.den() * R.den();
        MultiPoly right = (R1.num() * rn * R.den() - R.num() * rd * R1.den()) * v;
        return left == right;
    } catch (const std::exception&) {
        return false;
    }
}

inline bool verify_certificate(const TermExpression& f, const Recurrence& rec, const Certificate& cert,
                               const std::string& k = "k", const std::string& n = "n")
{
    return verify_certificate(ShiftSum::of(f, k, n), rec, cert);
}

/// Creative telescoping for J = 0..maxJ; the first order with a solution wins.
inline std::optional<TelescopeResult> creative_telescope(const ShiftSum& f, int maxJ = 6)
{
    for (int J = 0; J <= maxJ; ++J) {
        GZSystem sys = assemble_gz_system(f, J);
        if (!sys.viable())
            continue;
        auto basis = polynomial_nullspace(sys.matrix);
        if (auto t = best_telescoper(sys, f, basis))
            return t;
    }
    return std::nullopt;
}

inline std::optional<TelescopeResult> creative_telescope(const TermExpression& f, int maxJ = 6,
                                                         const std::string& k = "k", const std::string& n = "n")
{
    return creative_telescope(ShiftSum::of(f, k, n), maxJ);
}

}  // namespace synd
