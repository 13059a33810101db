#pragma once

#include "synd/exactalg/assignment.hpp"
#include "synd/exactalg/ratfunc.hpp"

#include <map>
#include <string>

namespace synd {

/// Rectangular matrix of polynomials over one ring.
class PolyMatrix {
public:
    PolyMatrix(VarsPtr vars, std::size_t rows, std::size_t cols)
        : vars_(std::move(vars)), rows_(rows), cols_(cols), entries_(rows * cols, MultiPoly(vars_)) {}

    static PolyMatrix from_rows(VarsPtr vars, const std::vector<std::vector<MultiPoly>>& rows)
    {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        PolyMatrix m(std::move(vars), r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw ArithmeticError("PolyMatrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j].with_vars(m.vars_);
        }
        return m;
    }

    const VarsPtr& vars() const { return vars_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    MultiPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::vector<std::vector<MultiPoly>> to_rows() const
    {
        std::vector<std::vector<MultiPoly>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out[i].assign(entries_.begin() + static_cast<long>(i * cols_),
                          entries_.begin() + static_cast<long>((i + 1) * cols_));
        return out;
    }

    PolyMatrix with_vars(const VarsPtr& target) const
    {
        PolyMatrix m(target, rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            m.entries_[i] = entries_[i].with_vars(target);
        return m;
    }

    /// Transposed copy.
    PolyMatrix transposed() const
    {
        PolyMatrix t(vars_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Sub-matrix made of the given rows (all columns).
    PolyMatrix select_rows(const std::vector<std::size_t>& which) const
    {
        PolyMatrix m(vars_, which.size(), cols_);
        for (std::size_t i = 0; i < which.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(which[i], j);
        return m;
    }

private:
    VarsPtr vars_;
    std::size_t rows_, cols_;
    std::vector<MultiPoly> entries_;
};

using Point = std::map<std::string, BigRational>;

namespace detail {

inline std::vector<BigRational> point_values(const VarsPtr& vars, const Point& point)
{
    std::vector<BigRational> values(vars->size());
    for (std::size_t i = 0; i < vars->size(); ++i) {
        auto it = point.find((*vars)[i]);
        if (it != point.end())
            values[i] = it->second;
    }
    return values;
}

inline void require_assigned(const PolyMatrix& m, const Point& point)
{
    for (std::size_t v = 0; v < m.vars()->size(); ++v) {
        if (point.count((*m.vars())[v]))
            continue;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j).depends_on(v))
                    throw ArithmeticError("det_at_point: variable '" + (*m.vars())[v] + "' unassigned");
    }
}

}  // namespace detail

/// Determinant of an integer matrix by Bareiss elimination.
inline BigInt integer_determinant(std::vector<std::vector<BigInt>> m)
{
    return bareiss_determinant(
        std::move(m), BigInt(1), [](const BigInt& x) { return x == 0; },
        [](const BigInt& a, const BigInt& b) {
            BigInt q;
            mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            return q;
        });
}

/// Exact determinant of a rational matrix: each row is scaled to integers,
/// the integer determinant is taken fraction-free, and the scaling undone.
inline BigRational rational_determinant(const std::vector<std::vector<BigRational>>& m)
{
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw ArithmeticError("determinant of a non-square matrix");
    std::vector<std::vector<BigInt>> ints(n, std::vector<BigInt>(n));
    BigInt scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l = 1;
        for (const auto& x : m[i])
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j)
            ints[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
        scale *= l;
    }
    return make_rational(integer_determinant(std::move(ints)), scale);
}

/// Rank of an integer matrix by fraction-free elimination.
inline std::size_t integer_rank(std::vector<std::vector<BigInt>> m)
{
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                BigInt t = m[rank][c] * m[i][j] - m[i][c] * m[rank][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

/// Substitutes a point into every entry.
inline std::vector<std::vector<BigRational>> evaluate_matrix(const PolyMatrix& m, const Point& point)
{
    detail::require_assigned(m, point);
    auto values = detail::point_values(m.vars(), point);
    std::vector<std::vector<BigRational>> out(m.rows(), std::vector<BigRational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j).evaluate(values);
    return out;
}

/// Exact determinant of the numeric matrix obtained by substituting `point`.
inline BigRational det_at_point(const PolyMatrix& m, const Point& point)
{
    if (!m.square())
        throw ArithmeticError("det_at_point: matrix is " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", not square");
    return rational_determinant(evaluate_matrix(m, point));
}

struct DegreeBound {
    int degree = 0;
    /// No assignment avoids zero entries: the determinant is identically zero.
    bool structurally_zero = false;
};

/// Upper bound on deg_v(det m) from the permanent of the leading-term matrix.
/// For rows > cols the bound covers every maximal square minor.
inline DegreeBound permanent_degree_bound(const PolyMatrix& m, std::size_t var)
{
    if (m.rows() < m.cols())
        throw ArithmeticError("permanent_degree_bound: more columns than rows");
    if (m.cols() == 0)
        return {};
    std::vector<std::vector<std::optional<long long>>> w(m.rows(), std::vector<std::optional<long long>>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero())
                w[i][j] = m(i, j).leading_term_in(var).exp[var];
    auto best = max_weight_assignment(w);
    if (!best)
        return {0, true};
    return {static_cast<int>(*best), false};
}

inline DegreeBound permanent_degree_bound(const PolyMatrix& m, std::string_view var)
{
    if (!m.square())
        throw ArithmeticError("permanent_degree_bound: matrix is not square");
    return permanent_degree_bound(m, m.vars()->index_of(var));
}

/// Fraction-free Gauss-Jordan elimination. On return `m` holds a scaled
/// reduced echelon form in which every pivot equals `det`.
struct EchelonForm {
    std::vector<std::vector<MultiPoly>> rows;
    std::vector<std::size_t> pivot_cols;
    MultiPoly det;
};

inline EchelonForm fraction_free_rref(const PolyMatrix& input)
{
    auto m = input.to_rows();
    const auto& vars = input.vars();
    std::size_t rows = input.rows(), cols = input.cols();
    std::vector<std::size_t> pivots;
    MultiPoly prev = MultiPoly::constant(vars, 1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // prefer the sparsest nonzero pivot to limit swell
        std::optional<std::size_t> piv;
        for (std::size_t i = r; i < rows; ++i)
            if (!m[i][c].is_zero() && (!piv || m[i][c].size() < m[*piv][c].size()))
                piv = i;
        if (!piv)
            continue;
        std::swap(m[r], m[*piv]);
        const MultiPoly p = m[r][c];
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r)
                continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (j == c)
                    continue;
                MultiPoly t = p * m[i][j] - m[i][c] * m[r][j];
                m[i][j] = t.divide_or_throw(prev);
            }
            m[i][c] = MultiPoly(vars);
        }
        pivots.push_back(c);
        prev = p;
        ++r;
    }
    return {std::move(m), std::move(pivots), std::move(prev)};
}

namespace detail {

/// Divides a vector by the gcd of its entries and fixes the sign of the first nonzero entry.
inline void normalize_poly_vector(std::vector<MultiPoly>& v)
{
    if (v.empty())
        return;
    MultiPoly g(v[0].vars());
    for (const auto& x : v) {
        if (x.is_zero())
            continue;
        g = g.is_zero() ? x.monic() : poly_gcd(g, x);
        if (g.is_constant())
            break;
    }
    if (g.is_zero())
        return;
    if (!g.is_constant())
        for (auto& x : v)
            x = x.divide_or_throw(g);
    // make integer-primitive jointly, first nonzero leading coefficient positive
    BigInt num = 0, den = 1;
    for (const auto& x : v)
        for (const auto& t : x.terms()) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
        }
    BigRational scale = make_rational(num, den);
    for (const auto& x : v)
        if (!x.is_zero()) {
            if (x.leading_coeff() < 0)
                scale = -scale;
            break;
        }
    for (auto& x : v)
        x /= scale;
}

}  // namespace detail

/// Right nullspace basis with polynomial entries, each vector content-normalized.
inline std::vector<std::vector<MultiPoly>> polynomial_nullspace(const PolyMatrix& m)
{
    auto ef = fraction_free_rref(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : ef.pivot_cols)
        is_pivot[c] = 1;
    std::vector<std::vector<MultiPoly>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<MultiPoly> v(m.cols(), MultiPoly(m.vars()));
        v[f] = ef.det;
        for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i)
            v[ef.pivot_cols[i]] = -ef.rows[i][f];
        detail::normalize_poly_vector(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Basis of the right nullspace over the rational-function field.
inline std::vector<std::vector<RationalFunction>> solve_nullspace(const PolyMatrix& m)
{
    std::vector<std::vector<RationalFunction>> out;
    for (auto& v : polynomial_nullspace(m)) {
        std::vector<RationalFunction> rv;
        rv.reserve(v.size());
        for (auto& x : v)
            rv.emplace_back(std::move(x));
        out.push_back(std::move(rv));
    }
    return out;
}

}  // namespace synd
