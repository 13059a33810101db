#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace synd {

/// Maximum-weight assignment on a rows x cols weight grid (rows >= cols) where
/// every column must be matched to a distinct row. nullopt entries are
/// forbidden. Returns the optimal total weight, or nullopt when no assignment
/// avoids the forbidden cells. Hungarian method, O(n^3).
inline std::optional<long long> max_weight_assignment(const std::vector<std::vector<std::optional<long long>>>& w)
{
    std::size_t rows = w.size();
    if (rows == 0)
        return 0;
    std::size_t cols = w[0].size();
    if (cols == 0)
        return 0;
    if (cols > rows)
        return std::nullopt;
    std::size_t n = rows;

    long long max_abs = 0;
    for (const auto& row : w)
        for (const auto& x : row)
            if (x)
                max_abs = std::max(max_abs, *x < 0 ? -*x : *x);
    const long long forbidden = (max_abs + 1) * static_cast<long long>(2 * n + 1);

    // cost[i][j], 1-based, padded with zero-cost dummy columns
    auto cost = [&](std::size_t i, std::size_t j) -> long long {
        if (j > cols)
            return 0;
        const auto& x = w[i - 1][j - 1];
        return x ? -*x : forbidden;
    };

    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<long long> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            std::size_t i0 = p[j0], j1 = 0;
            long long delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                long long cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    long long total = 0;
    for (std::size_t j = 1; j <= cols; ++j) {
        const auto& x = w[p[j] - 1][j - 1];
        if (!x)
            return std::nullopt;
        total += *x;
    }
    return total;
}

}  // namespace synd
