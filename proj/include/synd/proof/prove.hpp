#pragma once

#include "synd/proof/checks.hpp"

#include <chrono>

namespace synd {

enum class Verdict { Rigorous, SemiRigorous, Refuted, Inconclusive };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Rigorous:
        return "rigorous";
    case Verdict::SemiRigorous:
        return "semi-rigorous";
    case Verdict::Refuted:
        return "refuted";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

struct ProveOptions {
    BigRational certainty = 1;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    int max_order = 6;
    bool fast_path = true;
};

using GridPoint = std::vector<std::pair<std::string, long>>;

/// One (J, K) system handed to the vanishing test.
struct Attempt {
    int J = 0, K = -1;
    std::size_t rows = 0, cols = 0;
    std::string shape;
    bool passed = false;
    std::uint64_t grid_total = 0, grid_tested = 0;
    std::optional<GridPoint> witness;
};

struct ProofReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string method;  // "wz-certificate" or "determinant" once a telescoper is established
    BigRational certainty = 1;
    std::uint64_t seed = 0;
    std::optional<int> order, degree;
    std::uint64_t grid_total = 0, grid_tested = 0;
    std::optional<GridPoint> nonzero_point;
    std::vector<std::pair<std::string, int>> degree_bounds;
    std::string shape;
    bool extension = false;  // non-square system handled by the rank/minor policy
    std::optional<long> leading_root_bound;
    std::string leading_coefficient;
    std::vector<std::pair<std::string, BigRational>> specialization;
    std::vector<InitialCheck> initial_checks;
    std::optional<std::string> certificate;
    std::vector<Attempt> attempts;
    std::string message;
    std::vector<std::pair<std::string, double>> timings;  // seconds per stage
};

inline PolyMatrix assemble_synd_matrix(const NormalizedIdentity& nid, int J)
{
    return assemble_gz_system(nid.target(), J).matrix;
}

namespace detail {

class StageClock {
public:
    explicit StageClock(ProofReport& r) : report_(r) {}

    template <typename Fn>
    auto run(const std::string& stage, Fn&& fn)
    {
        auto start = std::chrono::steady_clock::now();
        struct Record {
            StageClock* self;
            std::string stage;
            std::chrono::steady_clock::time_point start;
            ~Record()
            {
                double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                for (auto& [name, t] : self->report_.timings)
                    if (name == stage) {
                        t += s;
                        return;
                    }
                self->report_.timings.push_back({stage, s});
            }
        } rec{this, stage, start};
        return fn();
    }

private:
    ProofReport& report_;
};

inline bool all_passed(const std::vector<InitialCheck>& cs)
{
    for (const auto& c : cs)
        if (!c.passed)
            return false;
    return true;
}

inline void conclude_with_checks(ProofReport& r, bool proved_verdict_rigorous)
{
    if (!all_passed(r.initial_checks)) {
        r.verdict = Verdict::Refuted;
        for (const auto& c : r.initial_checks)
            if (!c.passed) {
                r.message = "exact initial check failed (" + c.kind + " at n = " + std::to_string(c.n) + ")";
                break;
            }
        return;
    }
    r.verdict = proved_verdict_rigorous ? Verdict::Rigorous : Verdict::SemiRigorous;
}

}  // namespace detail

/// Proves sum_k F(n,k) = RHS(n): WZ certificate when the differenced summand
/// is Gosper-summable, otherwise the determinant-vanishing test on the
/// telescoping system for J = 0, 1, ..., followed by the leading-coefficient
/// and initial-value checks.
inline ProofReport prove(const Identity& id, const ProveOptions& opt = {})
{
    ProofReport r;
    r.certainty = opt.certainty;
    r.seed = opt.seed;
    detail::StageClock clock(r);
    try {
        if (opt.certainty <= 0 || opt.certainty > 1)
            throw IdentityError("certainty must lie in (0, 1]");
        if (id.rhs.size() > 1) {
            // Not hypergeometric in n: the only thing decidable here is n = 0.
            bool same = clock.run("initial", [&] {
                RationalFunction lhs = exact_sum(id, id.summand, 0);
                RationalFunction rhs(id.vars());
                for (const auto& t : id.rhs)
                    rhs += eval_symbolic(t, {{id.n, BigRational(0)}});
                return lhs == rhs;
            });
            r.initial_checks.push_back({0, "rhs", same});
            if (!same) {
                r.verdict = Verdict::Refuted;
                r.message = "sum differs from the right side at n = 0";
            } else {
                r.message = "right side is not hypergeometric in " + id.n;
            }
            return r;
        }
        NormalizedIdentity nid = clock.run("normalize", [&] { return normalize_and_delta(id); });

        if (opt.fast_path && !nid.rhs_is_zero) {
            auto wz = clock.run("gosper", [&]() -> std::optional<TelescopeResult> {
                GZSystem sys = assemble_gz_system(nid.ftil, 0);
                if (!sys.viable())
                    return std::nullopt;
                return best_telescoper(sys, nid.ftil, polynomial_nullspace(sys.matrix));
            });
            if (wz) {
                // a_0 * ftil telescopes; rescale to the WZ pair of fhat.
                RationalFunction R = wz->certificate.ratio * RationalFunction(wz->recurrence.coeffs[0]);
                const auto& vars = nid.vars();
                Recurrence pair{{MultiPoly::constant(vars, -1), MultiPoly::constant(vars, 1)}};
                bool ok = clock.run("verify", [&] { return verify_certificate(nid.fhat, pair, Certificate{R}, id.k, id.n); });
                if (ok) {
                    r.method = "wz-certificate";
                    r.order = 0;
                    r.degree = wz->ansatz.K;
                    r.certificate = R.to_string();
                    r.initial_checks = clock.run("initial", [&] { return initial_conditions_check(nid, 0, std::nullopt); });
                    detail::conclude_with_checks(r, true);
                    return r;
                }
            }
        }

        for (int J = 0; J <= opt.max_order; ++J) {
            GZSystem sys = clock.run("assemble", [&] { return assemble_gz_system(nid.target(), J); });
            Attempt at{J, sys.ansatz.K, sys.matrix.rows(), sys.matrix.cols(), "", false, 0, 0, std::nullopt};
            if (!sys.viable()) {
                at.shape = "no-ansatz";
                r.attempts.push_back(at);
                continue;
            }
            VanishingResult vt = clock.run("grid", [&] {
                return vanishing_test(sys.matrix, VanishingOptions{opt.certainty, opt.seed, opt.jobs});
            });
            at.shape = vt.structurally_singular ? "structurally-singular" : to_string(vt.shape);
            at.passed = vt.passed;
            at.grid_total = vt.grid_total;
            at.grid_tested = vt.grid_tested;
            at.witness = vt.witness;
            r.attempts.push_back(at);
            if (!vt.passed)
                continue;

            r.method = "determinant";
            r.order = J;
            r.degree = sys.ansatz.K;
            r.grid_total = vt.grid_total;
            r.grid_tested = vt.grid_tested;
            r.shape = at.shape;
            r.extension = vt.shape != MatrixShape::Square;
            for (const auto& a : vt.axes)
                r.degree_bounds.push_back({a.var, a.degree});

            LeadingCoeffResult lc = clock.run("leading", [&] { return leading_coeff_check(nid, opt.max_order, opt.seed); });
            r.specialization = lc.specialization;
            if (!lc.found) {
                r.verdict = Verdict::Inconclusive;
                r.message = "leading coefficient check: " + lc.message;
                return r;
            }
            r.leading_root_bound = lc.n0;
            r.leading_coefficient = lc.leading;
            int span = std::max(J, lc.order);
            r.initial_checks = clock.run("initial", [&] { return initial_conditions_check(nid, span, lc.n0); });
            detail::conclude_with_checks(r, opt.certainty == 1);
            return r;
        }
        r.verdict = Verdict::Inconclusive;
        r.message = "no telescoper found up to order " + std::to_string(opt.max_order);
        if (!r.attempts.empty())
            r.nonzero_point = r.attempts.back().witness;
    } catch (const std::exception& e) {
        r.verdict = Verdict::Inconclusive;
        r.message = e.what();
    }
    return r;
}

}  // namespace synd
