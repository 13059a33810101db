#pragma once

#include "synd/exactalg/polymatrix.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <unordered_set>

namespace synd {

struct VanishingOptions {
    BigRational certainty = 1;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

enum class MatrixShape { Square, Overdetermined, Underdetermined };

inline const char* to_string(MatrixShape s)
{
    switch (s) {
    case MatrixShape::Square:
        return "square";
    case MatrixShape::Overdetermined:
        return "overdetermined";
    case MatrixShape::Underdetermined:
        return "underdetermined";
    }
    return "?";
}

struct GridAxis {
    std::string var;
    int degree = 0;
    long lo = 0;  // values lo .. lo + degree
};

struct VanishingResult {
    bool passed = false;
    MatrixShape shape = MatrixShape::Square;
    bool structurally_singular = false;
    std::vector<GridAxis> axes;
    std::uint64_t grid_total = 0;
    std::uint64_t grid_tested = 0;
    std::optional<std::vector<std::pair<std::string, long>>> witness;
};

namespace detail {

/// Uniform integer in [0, bound] from a 64-bit engine, by rejection; the
/// standard distributions are not specified bit-for-bit across libraries.
inline std::uint64_t uniform_upto(std::mt19937_64& rng, std::uint64_t bound)
{
    if (bound == std::numeric_limits<std::uint64_t>::max())
        return rng();
    std::uint64_t range = bound + 1;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    while (true) {
        std::uint64_t x = rng();
        if (x < limit)
            return x % range;
    }
}

/// m distinct indices from [0, total), sorted (Floyd's algorithm).
inline std::vector<std::uint64_t> sample_indices(std::uint64_t total, std::uint64_t m, std::uint64_t seed)
{
    std::vector<std::uint64_t> out;
    if (m >= total) {
        out.resize(total);
        for (std::uint64_t i = 0; i < total; ++i)
            out[i] = i;
        return out;
    }
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(m * 2));
    for (std::uint64_t j = total - m; j < total; ++j) {
        std::uint64_t t = uniform_upto(rng, j);
        if (!chosen.insert(t).second)
            chosen.insert(j);
    }
    out.assign(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Scales each row of a rational matrix to integers.
inline std::vector<std::vector<BigInt>> integer_rows(const std::vector<std::vector<BigRational>>& m)
{
    std::vector<std::vector<BigInt>> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        BigInt l = 1;
        for (const auto& x : m[i])
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        out[i].reserve(m[i].size());
        for (const auto& x : m[i])
            out[i].push_back(x.get_num() * (l / x.get_den()));
    }
    return out;
}

/// Walks sorted grid indices, substituting one variable per level so that
/// points sharing a prefix share the partial work.
class GridEvaluator {
public:
    GridEvaluator(const PolyMatrix& m, const std::vector<GridAxis>& axes)
        : m_(m), axes_(axes), levels_(axes.size() + 1), digits_(axes.size(), -1)
    {
        levels_[0].assign(m.rows() * m.cols(), MultiPoly(m.vars()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                levels_[0][i * m.cols() + j] = m(i, j);
        for (const auto& a : axes)
            var_index_.push_back(m.vars()->index_of(a.var));
    }

    std::vector<long> digits_of(std::uint64_t index) const
    {
        std::vector<long> d(axes_.size());
        for (std::size_t i = axes_.size(); i-- > 0;) {
            std::uint64_t radix = static_cast<std::uint64_t>(axes_[i].degree) + 1;
            d[i] = static_cast<long>(index % radix);
            index /= radix;
        }
        return d;
    }

    /// True when the matrix at grid index `index` is singular (square) or
    /// rank deficient (more rows than columns).
    bool deficient_at(std::uint64_t index)
    {
        auto d = digits_of(index);
        std::size_t first = 0;
        while (first < d.size() && d[first] == digits_[first])
            ++first;
        for (std::size_t lv = first; lv < d.size(); ++lv) {
            BigRational value(axes_[lv].lo + d[lv]);
            const auto& src = levels_[lv];
            auto& dst = levels_[lv + 1];
            dst.resize(src.size(), MultiPoly(m_.vars()));
            for (std::size_t e = 0; e < src.size(); ++e)
                dst[e] = src[e].substitute(var_index_[lv], value);
            digits_[lv] = d[lv];
        }
        const auto& last = levels_.back();
        std::vector<std::vector<BigRational>> num(m_.rows(), std::vector<BigRational>(m_.cols()));
        for (std::size_t i = 0; i < m_.rows(); ++i)
            for (std::size_t j = 0; j < m_.cols(); ++j)
                num[i][j] = last[i * m_.cols() + j].constant_value();
        auto ints = integer_rows(num);
        if (m_.square())
            return integer_determinant(std::move(ints)) == 0;
        return integer_rank(std::move(ints)) < m_.cols();
    }

    std::vector<std::pair<std::string, long>> point_of(std::uint64_t index) const
    {
        auto d = digits_of(index);
        std::vector<std::pair<std::string, long>> p;
        for (std::size_t i = 0; i < axes_.size(); ++i)
            p.push_back({axes_[i].var, axes_[i].lo + d[i]});
        return p;
    }

private:
    const PolyMatrix& m_;
    const std::vector<GridAxis>& axes_;
    std::vector<std::size_t> var_index_;
    std::vector<std::vector<MultiPoly>> levels_;
    std::vector<long> digits_;
};

}  // namespace detail

/// Tests whether the system matrix has a nontrivial kernel by checking that
/// the determinant (or every maximal minor, for tall matrices) vanishes on a
/// tensor grid of d_v + 1 integers per variable, d_v an a priori degree bound.
/// Certainty below 1 tests a seeded uniform sample of that grid.
inline VanishingResult vanishing_test(const PolyMatrix& m, const VanishingOptions& opt = {})
{
    if (opt.certainty <= 0 || opt.certainty > 1)
        throw ArithmeticError("vanishing_test: certainty must lie in (0, 1]");
    VanishingResult res;
    res.shape = m.rows() == m.cols()  ? MatrixShape::Square
                : m.rows() > m.cols() ? MatrixShape::Overdetermined
                                      : MatrixShape::Underdetermined;
    if (res.shape == MatrixShape::Underdetermined || m.cols() == 0) {
        res.passed = true;
        return res;
    }
    const auto& vars = m.vars();
    for (std::size_t v = 0; v < vars->size(); ++v) {
        bool used = false;
        for (std::size_t i = 0; i < m.rows() && !used; ++i)
            for (std::size_t j = 0; j < m.cols() && !used; ++j)
                used = m(i, j).depends_on(v);
        if (!used)
            continue;
        DegreeBound b = permanent_degree_bound(m, v);
        if (b.structurally_zero) {
            res.structurally_singular = true;
            res.passed = true;
            return res;
        }
        res.axes.push_back({(*vars)[v], b.degree, -static_cast<long>(b.degree / 2)});
    }
    BigInt total = 1;
    for (const auto& a : res.axes)
        total *= a.degree + 1;
    if (total > BigInt("4611686018427387904"))
        throw ArithmeticError("vanishing_test: grid of " + total.get_str() + " points is too large");
    res.grid_total = std::stoull(total.get_str());

    BigRational want = opt.certainty * BigRational(total);
    BigInt count = ceil_of(want);
    std::uint64_t m_count = std::stoull(count.get_str());
    auto indices = detail::sample_indices(res.grid_total, m_count, opt.seed);

    unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::max<std::size_t>(1, indices.size()))));
    std::atomic<std::size_t> first_bad{indices.size()};
    std::vector<std::exception_ptr> errors(jobs);
    auto work = [&](unsigned t) {
        try {
            std::size_t begin = indices.size() * t / jobs, end = indices.size() * (t + 1) / jobs;
            detail::GridEvaluator ev(m, res.axes);
            for (std::size_t pos = begin; pos < end; ++pos) {
                if (pos >= first_bad.load(std::memory_order_relaxed))
                    return;
                if (!ev.deficient_at(indices[pos])) {
                    std::size_t cur = first_bad.load();
                    while (pos < cur && !first_bad.compare_exchange_weak(cur, pos)) {
                    }
                    return;
                }
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back(work, t);
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::size_t bad = first_bad.load();
    if (bad < indices.size()) {
        res.passed = false;
        res.grid_tested = bad + 1;
        res.witness = detail::GridEvaluator(m, res.axes).point_of(indices[bad]);
    } else {
        res.passed = true;
        res.grid_tested = indices.size();
    }
    return res;
}

}  // namespace synd
