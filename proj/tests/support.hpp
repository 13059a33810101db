#pragma once

#include "synd/exactalg/polymatrix.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace synd::test_support {

inline MultiPoly random_poly(std::mt19937& rng, const VarsPtr& vars, int max_deg, int terms)
{
    std::uniform_int_distribution<int> coeff(-3, 3), deg(0, max_deg);
    std::vector<MultiPoly::Term> ts;
    for (int t = 0; t < terms; ++t) {
        MultiPoly::Term term;
        for (std::size_t v = 0; v < vars->size(); ++v)
            term.exp[v] = static_cast<std::uint16_t>(deg(rng));
        term.coeff = coeff(rng);
        ts.push_back(term);
    }
    return MultiPoly::from_terms(vars, ts);
}

inline MultiPoly nonzero_random_poly(std::mt19937& rng, const VarsPtr& vars, int max_deg, int terms)
{
    MultiPoly p(vars);
    do
        p = random_poly(rng, vars, max_deg, terms);
    while (p.is_zero());
    return p;
}

// Leibniz expansion; shares no code with Bareiss.
inline MultiPoly leibniz_det(const std::vector<std::vector<MultiPoly>>& m, const VarsPtr& vars)
{
    std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    MultiPoly det(vars);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        MultiPoly term = MultiPoly::constant(vars, inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n; ++i)
            term *= m[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// 3x3 with the last row a polynomial combination of the first two.
inline PolyMatrix constructed_singular(std::mt19937& rng, const VarsPtr& vars)
{
    std::vector<std::vector<MultiPoly>> rows(3, std::vector<MultiPoly>(3, MultiPoly(vars)));
    for (int i = 0; i < 2; ++i)
        for (auto& e : rows[i])
            e = random_poly(rng, vars, 2, 2);
    MultiPoly u = random_poly(rng, vars, 1, 2), w = random_poly(rng, vars, 1, 2);
    for (int j = 0; j < 3; ++j)
        rows[2][j] = u * rows[0][j] + w * rows[1][j];
    return PolyMatrix::from_rows(vars, rows);
}

/// 3x3 upper triangular with nonzero diagonal, then mixed by unimodular row
/// operations so the determinant is the nonzero diagonal product.
inline PolyMatrix constructed_nonsingular(std::mt19937& rng, const VarsPtr& vars)
{
    std::vector<std::vector<MultiPoly>> rows(3, std::vector<MultiPoly>(3, MultiPoly(vars)));
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            rows[i][j] = j == i ? nonzero_random_poly(rng, vars, 2, 2) : random_poly(rng, vars, 2, 2);
    MultiPoly x = MultiPoly::variable(vars, 0);
    for (int j = 0; j < 3; ++j) {
        rows[2][j] += rows[0][j] * x;
        rows[1][j] += rows[2][j];
    }
    return PolyMatrix::from_rows(vars, rows);
}

}  // namespace synd::test_support
