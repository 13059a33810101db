#pragma once

#include "synd/exactalg/multipoly.hpp"

#include <vector>

namespace synd {

MultiPoly poly_gcd(const MultiPoly& p, const MultiPoly& q);

namespace detail {

/// Variable of lowest index that either polynomial depends on.
inline std::optional<std::size_t> main_variable(const MultiPoly& p, const MultiPoly& q)
{
    std::size_t n = p.vars()->size();
    for (std::size_t v = 0; v < n; ++v)
        if (p.depends_on(v) || q.depends_on(v))
            return v;
    return std::nullopt;
}

inline MultiPoly monomial_gcd(const MultiPoly& mono, const MultiPoly& q)
{
    Exponents e = mono.leading_term().exp;
    for (const auto& t : q.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i)
            e[i] = std::min(e[i], t.exp[i]);
    return MultiPoly::monomial(mono.vars(), e, 1);
}

inline MultiPoly gcd_rec(const MultiPoly& p, const MultiPoly& q);

/// gcd of the coefficients of p viewed as a polynomial in `var`, unit-normalized.
inline MultiPoly content_in(const MultiPoly& p, std::size_t var)
{
    auto cs = p.coeffs_in(var);
    std::optional<MultiPoly> g;
    for (const auto& c : cs) {
        if (c.is_zero())
            continue;
        g = g ? gcd_rec(*g, c) : c.integer_primitive();
        if (g->is_constant())
            return MultiPoly::constant(p.vars(), 1);
    }
    return g ? *g : MultiPoly::constant(p.vars(), 1);
}

inline MultiPoly primitive_part_in(const MultiPoly& p, std::size_t var)
{
    MultiPoly c = content_in(p, var);
    MultiPoly r = c.is_constant() ? p : p.divide_or_throw(c);
    return r.integer_primitive();
}

/// Sparse pseudo-remainder of a by b with respect to `var`.
inline MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, std::size_t var)
{
    int db = b.degree(var);
    MultiPoly lb = b.leading_coeff_in(var);
    while (!a.is_zero() && a.degree(var) >= db) {
        int da = a.degree(var);
        MultiPoly la = a.leading_coeff_in(var);
        Exponents e{};
        e[var] = static_cast<std::uint16_t>(da - db);
        a = lb * a - la * MultiPoly::monomial(a.vars(), e, 1) * b;
    }
    return a;
}

inline BigInt max_norm(const MultiPoly& p)
{
    BigInt m = 0;
    for (const auto& t : p.terms())
        if (abs(t.coeff.get_num()) > m)
            m = abs(t.coeff.get_num());
    return m;
}

/// Heuristic gcd of integer polynomials: evaluate the main variable at a large
/// integer, recurse, lift the image back by symmetric xi-adic expansion and
/// accept it only if it divides both inputs. nullopt if every attempt fails.
inline std::optional<MultiPoly> heuristic_gcd(const MultiPoly& p, const MultiPoly& q, int depth = 0)
{
    const auto& vars = p.vars();
    if (p.is_constant() && q.is_constant()) {
        BigInt g = gcd(p.constant_value().get_num(), q.constant_value().get_num());
        return MultiPoly::constant(vars, BigRational(g));
    }
    auto x = main_variable(p, q);
    if (!x || depth > 8)
        return std::nullopt;
    BigInt cp = 0, cq = 0;
    for (const auto& t : p.terms())
        cp = gcd(cp, t.coeff.get_num());
    for (const auto& t : q.terms())
        cq = gcd(cq, t.coeff.get_num());
    MultiPoly content = MultiPoly::constant(vars, BigRational(gcd(cp, cq)));
    MultiPoly pp = p, qp = q;
    pp /= BigRational(cp);
    qp /= BigRational(cq);
    BigInt xi = 2 * std::min(max_norm(pp), max_norm(qp)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        MultiPoly pe = pp.substitute(*x, BigRational(xi));
        MultiPoly qe = qp.substitute(*x, BigRational(xi));
        if (!pe.is_zero() && !qe.is_zero()) {
            auto image = heuristic_gcd(pe, qe, depth + 1);
            if (!image)
                return std::nullopt;
            std::vector<MultiPoly::Term> terms;
            BigInt half = xi / 2;
            for (const auto& t : image->terms()) {
                BigInt c = t.coeff.get_num();
                unsigned power = 0;
                while (c != 0) {
                    BigInt digit;
                    mpz_fdiv_r(digit.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
                    if (digit > half)
                        digit -= xi;
                    if (digit != 0) {
                        Exponents e = t.exp;
                        e[*x] = static_cast<std::uint16_t>(power);
                        terms.push_back({e, BigRational(digit)});
                    }
                    c = (c - digit) / xi;
                    ++power;
                }
            }
            MultiPoly g = MultiPoly::from_terms(vars, std::move(terms));
            if (!g.is_zero()) {
                g = g.integer_primitive();
                if (g.is_constant())
                    return content;
                if (pp.divide_exact(g) && qp.divide_exact(g))
                    return g * content;
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

inline MultiPoly gcd_rec(const MultiPoly& p, const MultiPoly& q)
{
    const auto& vars = p.vars();
    if (p.is_zero())
        return q.integer_primitive();
    if (q.is_zero())
        return p.integer_primitive();
    if (p.is_constant() || q.is_constant())
        return MultiPoly::constant(vars, 1);
    if (p.size() == 1)
        return monomial_gcd(p, q);
    if (q.size() == 1)
        return monomial_gcd(q, p);
    if (p == q)
        return p.integer_primitive();
    {
        MultiPoly pi = p.integer_primitive(), qi = q.integer_primitive();
        if (auto g = heuristic_gcd(pi, qi))
            return g->integer_primitive();
    }
    auto x = main_variable(p, q);
    if (!x)
        return MultiPoly::constant(vars, 1);
    bool in_p = p.depends_on(*x), in_q = q.depends_on(*x);
    if (!in_q)
        return gcd_rec(content_in(p, *x), q);
    if (!in_p)
        return gcd_rec(p, content_in(q, *x));

    MultiPoly cp = content_in(p, *x), cq = content_in(q, *x);
    MultiPoly c = gcd_rec(cp, cq);
    MultiPoly a = (cp.is_constant() ? p : p.divide_or_throw(cp)).integer_primitive();
    MultiPoly b = (cq.is_constant() ? q : q.divide_or_throw(cq)).integer_primitive();
    if (a.degree(*x) < b.degree(*x))
        std::swap(a, b);
    if (auto quotient = a.divide_exact(b))
        return (c * b).integer_primitive();
    while (true) {
        MultiPoly r = pseudo_remainder(a, b, *x);
        if (r.is_zero())
            break;
        if (r.degree(*x) == 0)
            return c.integer_primitive();
        a = std::move(b);
        b = primitive_part_in(r, *x);
    }
    return (c * b).integer_primitive();
}

}  // namespace detail

/// Greatest common divisor, normalized to leading coefficient 1; gcd(p, 0) = monic p.
inline MultiPoly poly_gcd(const MultiPoly& p, const MultiPoly& q)
{
    if (!same_ring(p.vars(), q.vars()))
        throw ArithmeticError("poly_gcd: polynomials from different rings");
    if (p.is_zero() && q.is_zero())
        return MultiPoly(p.vars());
    return detail::gcd_rec(p, q).monic();
}

/// Polynomial content with respect to one variable (monic).
inline MultiPoly poly_content(const MultiPoly& p, std::size_t var)
{
    if (p.is_zero())
        return p;
    return detail::content_in(p, var).monic();
}

/// Fraction-free (Bareiss) determinant over a ring with exact division.
template <typename T, typename IsZero, typename DivExact>
T bareiss_determinant(std::vector<std::vector<T>> m, T one, IsZero is_zero, DivExact div_exact)
{
    std::size_t n = m.size();
    if (n == 0)
        return one;
    bool negate = false;
    T prev = one;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m[k][k])) {
            std::size_t piv = k + 1;
            while (piv < n && is_zero(m[piv][k]))
                ++piv;
            if (piv == n)
                return one - one;
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = div_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        }
        prev = m[k][k];
    }
    T det = m[n - 1][n - 1];
    return negate ? T(-det) : det;
}

inline MultiPoly poly_determinant(std::vector<std::vector<MultiPoly>> m, const VarsPtr& vars)
{
    return bareiss_determinant(
        std::move(m), MultiPoly::constant(vars, 1), [](const MultiPoly& p) { return p.is_zero(); },
        [](const MultiPoly& a, const MultiPoly& b) { return a.divide_or_throw(b); });
}

/// Sylvester resultant of p and q with respect to `var`.
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var)
{
    const auto& vars = p.vars();
    if (p.is_zero() || q.is_zero())
        return MultiPoly(vars);
    int m = p.degree(var), n = q.degree(var);
    if (m == 0)
        return p.pow(static_cast<unsigned>(n));
    if (n == 0)
        return q.pow(static_cast<unsigned>(m));
    auto pc = p.coeffs_in(var), qc = q.coeffs_in(var);
    std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<MultiPoly>> syl(size, std::vector<MultiPoly>(size, MultiPoly(vars)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            syl[r][r + i] = pc[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            syl[n + r][r + i] = qc[n - i];
    return poly_determinant(std::move(syl), vars);
}

/// Integer roots of a polynomial in `var` alone (other variables must be absent),
/// found by the rational-root test restricted to integers. Sorted ascending.
inline std::vector<BigInt> integer_roots(const MultiPoly& p, std::size_t var, bool nonnegative_only = false)
{
    if (p.is_zero())
        throw ArithmeticError("integer_roots of the zero polynomial");
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (i != var && t.exp[i] != 0)
                throw ArithmeticError("integer_roots: polynomial is not univariate");
    MultiPoly ip = p.integer_primitive();
    int d = ip.degree(var);
    std::vector<BigInt> coeffs(static_cast<std::size_t>(d + 1), BigInt(0));
    for (const auto& t : ip.terms())
        coeffs[t.exp[var]] = t.coeff.get_num();
    std::vector<BigInt> roots;
    std::size_t low = 0;
    while (coeffs[low] == 0)
        ++low;
    if (low > 0)
        roots.push_back(0);
    std::vector<BigInt> c(coeffs.begin() + static_cast<long>(low), coeffs.end());
    int deg = static_cast<int>(c.size()) - 1;
    if (deg == 0)
        return roots;
    // Fujiwara bound on root magnitude
    BigInt bound = 1;
    BigInt lead = abs(c[deg]);
    for (int i = 1; i <= deg; ++i) {
        BigInt ratio = abs(c[deg - i]);
        if (ratio == 0)
            continue;
        mpz_cdiv_q(ratio.get_mpz_t(), ratio.get_mpz_t(), lead.get_mpz_t());
        BigInt r;
        mpz_root(r.get_mpz_t(), ratio.get_mpz_t(), static_cast<unsigned long>(i));
        r += 1;
        if (r > bound)
            bound = r;
    }
    bound *= 2;
    if (bound > BigInt(100000000))
        throw ArithmeticError("integer_roots: root bound too large (" + bound.get_str() + ")");
    long b = bound.get_si();
    const BigInt& c0 = c[0];
    auto is_root = [&](long r) {
        BigInt acc = 0;
        BigInt rr = r;
        for (int i = deg; i >= 0; --i)
            acc = acc * rr + c[i];
        return acc == 0;
    };
    for (long r = nonnegative_only ? 1 : -b; r <= b; ++r) {
        if (r == 0)
            continue;
        unsigned long ar = static_cast<unsigned long>(r < 0 ? -r : r);
        if (mpz_divisible_ui_p(c0.get_mpz_t(), ar) == 0)
            continue;
        if (is_root(r))
            roots.push_back(BigInt(r));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace synd
