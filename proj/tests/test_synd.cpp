#include "support.hpp"
#include "synd/proof.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace synd;
using synd::test_support::random_poly;

namespace {

Identity make_identity(const std::string& f, const std::string& rhs, const std::vector<std::string>& params,
                       const std::string& lo, const std::string& hi)
{
    auto vars = make_term_ring("k", "n", params);
    Identity id(parse_term(f, vars));
    id.rhs = parse_term_sum(rhs, vars);
    std::erase_if(id.rhs, [](const TermExpression& t) { return t.rational_factor().is_zero(); });
    id.params = params;
    id.lower = parse_linear_form(lo, vars);
    id.upper = parse_linear_form(hi, vars);
    return id;
}

Identity chu() { return make_identity("binomial(a,k)*binomial(n,k)", "binomial(a+n,a)", {"a"}, "0", "n"); }

Identity dixon()
{
    return make_identity("(-1)^k*binomial(a+b,a+k)*binomial(a+n,n+k)*binomial(b+n,b+k)", "(a+b+n)!/a!/b!/n!",
                         {"a", "b"}, "-n", "n");
}

const char* kMrr = "rf(-2*n-1,k)*rf(x+2*n+2,k)*rf(x-z+1/2,k)*rf(x+n+1,k)*rf(z+n+1,k)/"
                   "(rf((x+1)/2,k)*rf(x/2+1,k)*rf(2*z+2*n+2,k)*rf(2*x-2*z+1,k)*k!)";
const char* kMrrSpecial = "rf(-2*n-1,k)*rf(2*n+3,k)*rf(1,k)*rf(n+2,k)*rf(n+3/2,k)/"
                          "(rf(1,k)*rf(3/2,k)*rf(2*n+3,k)*rf(2,k)*k!)";

Identity mrr() { return make_identity(kMrr, "0", {"x", "z"}, "0", "2*n+1"); }
Identity mrr_special() { return make_identity(kMrrSpecial, "0", {}, "0", "2*n+1"); }

// fhat(n+1,k) - fhat(n,k) == fhat(n,k) * multiplier at integer points
void check_multiplier(const NormalizedIdentity& nid, const RationalFunction& expected, Point params)
{
    EXPECT_EQ(nid.ftil_multiplier, expected);
    int checked = 0;
    for (long n = 0; n < 6 && checked < 20; ++n)
        for (long k = 0; k <= n && checked < 20; ++k) {
            Point p = params, p1 = params;
            p["n"] = n;
            p["k"] = k;
            p1["n"] = n + 1;
            p1["k"] = k;
            BigRational lhs = eval_term(nid.fhat, p1) - eval_term(nid.fhat, p);
            BigRational rhs = eval_term(nid.fhat, p) * expected.evaluate(detail::point_values(expected.vars(), p));
            EXPECT_EQ(lhs, rhs) << "n=" << n << " k=" << k;
            ++checked;
        }
    EXPECT_EQ(checked, 20);
}

struct Ring {
    VarsPtr vars = make_vars({"n", "a"});
    MultiPoly n = MultiPoly::variable(vars, 0);
    MultiPoly a = MultiPoly::variable(vars, 1);
    MultiPoly c(long v) const { return MultiPoly::constant(vars, v); }
};

bool same_report(const ProofReport& a, const ProofReport& b)
{
    auto checks = [](const ProofReport& r) {
        std::vector<std::tuple<long, std::string, bool>> v;
        for (const auto& c : r.initial_checks)
            v.emplace_back(c.n, c.kind, c.passed);
        return v;
    };
    auto attempts = [](const ProofReport& r) {
        std::vector<std::tuple<int, int, std::string, bool, std::uint64_t, std::uint64_t, std::optional<GridPoint>>> v;
        for (const auto& x : r.attempts)
            v.emplace_back(x.J, x.K, x.shape, x.passed, x.grid_total, x.grid_tested, x.witness);
        return v;
    };
    return a.verdict == b.verdict && a.method == b.method && a.order == b.order && a.degree == b.degree &&
           a.grid_total == b.grid_total && a.grid_tested == b.grid_tested && a.nonzero_point == b.nonzero_point &&
           a.degree_bounds == b.degree_bounds && a.leading_root_bound == b.leading_root_bound &&
           a.leading_coefficient == b.leading_coefficient && a.specialization == b.specialization &&
           checks(a) == checks(b) && a.certificate == b.certificate && attempts(a) == attempts(b) &&
           a.message == b.message;
}

}  // namespace

TEST(Normalize, BinomialMultiplier)
{
    Identity id = make_identity("binomial(n,k)", "2^n", {}, "0", "n");
    NormalizedIdentity nid = normalize_and_delta(id);
    EXPECT_FALSE(nid.rhs_is_zero);
    const auto& vars = id.vars();
    RationalFunction expected = parse_rational_function("(2*k-n-1)/(2*(n+1-k))", vars);
    check_multiplier(nid, expected, {});
}

TEST(Normalize, ChuVandermondeQuotient)
{
    Identity id = chu();
    NormalizedIdentity nid = normalize_and_delta(id);
    RationalFunction rho = parse_rational_function("(n+1)^2/((n+1-k)*(n+a+1))", id.vars());
    EXPECT_EQ(shift_quotient(nid.fhat, "n"), rho);
    check_multiplier(nid, rho - RationalFunction::constant(id.vars(), 1), {{"a", make_rational(7, 3)}});
}

TEST(Normalize, ZeroRightSide)
{
    Identity id = mrr();
    NormalizedIdentity nid = normalize_and_delta(id);
    EXPECT_TRUE(nid.rhs_is_zero);
    EXPECT_TRUE(nid.fhat == id.summand);
    EXPECT_EQ(nid.target().weights.size(), 1u);
}

TEST(Normalize, RejectsNonHypergeometricRhs)
{
    Identity id = make_identity("binomial(n,k)", "2^n+1", {}, "0", "n");
    EXPECT_THROW(normalize_and_delta(id), IdentityError);
}

TEST(AssembleSynd, ChuIsSquareAtOrderZero)
{
    PolyMatrix m = assemble_synd_matrix(normalize_and_delta(chu()), 0);
    EXPECT_TRUE(m.square());
    EXPECT_GT(m.rows(), 0u);
    EXPECT_FALSE(solve_nullspace(m).empty());
}

TEST(AssembleSynd, NoOrderZeroTelescoperGivesFullRank)
{
    Identity id = make_identity("binomial(n,k)", "0", {}, "0", "n");
    PolyMatrix m = assemble_synd_matrix(normalize_and_delta(id), 0);
    ASSERT_GE(m.rows(), m.cols());
    auto num = evaluate_matrix(m, {{"n", BigRational(7)}});
    EXPECT_EQ(integer_rank(detail::integer_rows(num)), m.cols());
    EXPECT_TRUE(solve_nullspace(m).empty());
}

TEST(Vanishing, SpecExamples)
{
    Ring r;
    PolyMatrix singular = PolyMatrix::from_rows(r.vars, {{r.n, r.a}, {r.n * r.n, r.n * r.a}});
    VanishingResult v = vanishing_test(singular);
    EXPECT_TRUE(v.passed);
    EXPECT_FALSE(v.witness);
    EXPECT_EQ(v.grid_tested, v.grid_total);

    PolyMatrix diag = PolyMatrix::from_rows(r.vars, {{r.n, r.c(0)}, {r.c(0), r.c(1)}});
    VanishingResult w = vanishing_test(diag);
    EXPECT_FALSE(w.passed);
    ASSERT_TRUE(w.witness);
    ASSERT_EQ(w.witness->size(), 1u);
    EXPECT_EQ(w.witness->front().first, "n");
    EXPECT_NE(w.witness->front().second, 0);
}

TEST(Vanishing, CertaintyFraction)
{
    Ring r;
    // det = n^9 - n^9 = 0 with degree bound 9 in n: a 10-point grid
    MultiPoly n9 = r.n;
    for (int i = 0; i < 8; ++i)
        n9 *= r.n;
    PolyMatrix m = PolyMatrix::from_rows(r.vars, {{n9, r.c(1)}, {n9, r.c(1)}});
    VanishingResult v = vanishing_test(m, {make_rational(1, 2), 3, 1});
    EXPECT_EQ(v.grid_total, 10u);
    EXPECT_EQ(v.grid_tested, 5u);
    EXPECT_TRUE(v.passed);
    EXPECT_THROW(vanishing_test(m, {BigRational(0), 0, 1}), ArithmeticError);
}

TEST(Vanishing, UnderdeterminedAndStructural)
{
    Ring r;
    PolyMatrix wide = PolyMatrix::from_rows(r.vars, {{r.n, r.a, r.c(1)}});
    EXPECT_TRUE(vanishing_test(wide).passed);
    EXPECT_EQ(vanishing_test(wide).shape, MatrixShape::Underdetermined);
    PolyMatrix zero_col = PolyMatrix::from_rows(r.vars, {{r.n, r.c(0)}, {r.a, r.c(0)}});
    VanishingResult v = vanishing_test(zero_col);
    EXPECT_TRUE(v.passed);
    EXPECT_TRUE(v.structurally_singular);
}

TEST(Vanishing, TallMatrixUsesRank)
{
    Ring r;
    // columns proportional: rank 1 everywhere
    PolyMatrix tall = PolyMatrix::from_rows(r.vars, {{r.n, r.n * r.a}, {r.c(1), r.a}, {r.a, r.a * r.a}});
    EXPECT_TRUE(vanishing_test(tall).passed);
    PolyMatrix full = PolyMatrix::from_rows(r.vars, {{r.n, r.c(0)}, {r.c(0), r.a}, {r.c(1), r.c(1)}});
    EXPECT_FALSE(vanishing_test(full).passed);
}

TEST(Vanishing, WitnessIndependentOfJobs)
{
    Ring r;
    std::mt19937 rng(5);
    for (int t = 0; t < 5; ++t) {
        std::vector<std::vector<MultiPoly>> rows(3, std::vector<MultiPoly>(3, r.c(0)));
        for (auto& row : rows)
            for (auto& e : row)
                e = random_poly(rng, r.vars, 2, 2);
        PolyMatrix m = PolyMatrix::from_rows(r.vars, rows);
        VanishingResult one = vanishing_test(m, {BigRational(1), 0, 1});
        VanishingResult four = vanishing_test(m, {BigRational(1), 0, 4});
        EXPECT_EQ(one.passed, four.passed);
        EXPECT_EQ(one.witness, four.witness);
        EXPECT_EQ(one.grid_tested, four.grid_tested);
    }
}

TEST(Vanishing, GridKernelSoundness)
{
    Ring r;
    std::mt19937 rng(2024);
    for (int t = 0; t < 50; ++t)
        EXPECT_TRUE(vanishing_test(test_support::constructed_singular(rng, r.vars)).passed) << "singular case " << t;
    for (int t = 0; t < 50; ++t) {
        PolyMatrix m = test_support::constructed_nonsingular(rng, r.vars);
        VanishingResult v = vanishing_test(m);
        EXPECT_FALSE(v.passed) << "nonsingular case " << t;
        ASSERT_TRUE(v.witness);
        Point p{{"n", BigRational(0)}, {"a", BigRational(0)}};
        for (const auto& [s, x] : *v.witness)
            p[s] = x;
        EXPECT_NE(det_at_point(m, p), 0);
    }
}

TEST(LeadingCoeff, RootBound)
{
    auto vars = make_vars({"n"});
    MultiPoly n = MultiPoly::variable(vars, 0);
    MultiPoly one = MultiPoly::constant(vars, 1);
    // (n+1)(n+a+1) at a = 1/3
    MultiPoly p = (n + one) * (n + MultiPoly::constant(vars, make_rational(4, 3)));
    EXPECT_FALSE(leading_root_bound(p, 0));
    MultiPoly q = (n - MultiPoly::constant(vars, 3)) * (n + one);
    EXPECT_EQ(leading_root_bound(q, 0), 3);
}

TEST(LeadingCoeff, DegenerateSpecializationDetected)
{
    auto vars = make_term_ring("k", "n", {"a"});
    TermExpression f = parse_term("binomial(a,k)*binomial(n,k)", vars);
    EXPECT_TRUE(detail::degenerate_specialization(f, {{"a", BigRational(2)}}));
    EXPECT_FALSE(detail::degenerate_specialization(f, {{"a", make_rational(1, 3)}}));
    TermExpression g = parse_term("(a-1/3)*binomial(n,k)", vars);
    EXPECT_TRUE(detail::degenerate_specialization(g, {{"a", make_rational(1, 3)}}));
}

TEST(LeadingCoeff, ChuAndMrrSpecialized)
{
    LeadingCoeffResult c = leading_coeff_check(normalize_and_delta(chu()), 6, 1);
    ASSERT_TRUE(c.found) << c.message;
    ASSERT_EQ(c.specialization.size(), 1u);
    EXPECT_FALSE(is_integer(c.specialization[0].second));

    LeadingCoeffResult m = leading_coeff_check(normalize_and_delta(mrr_special()), 6, 1);
    ASSERT_TRUE(m.found) << m.message;
    EXPECT_TRUE(m.specialization.empty());
    EXPECT_FALSE(m.n0);
}

TEST(InitialChecks, ChuVandermonde)
{
    Identity id = chu();
    NormalizedIdentity nid = normalize_and_delta(id);
    EXPECT_EQ(exact_sum(id, nid.fhat, 0), RationalFunction::constant(id.vars(), 1));
    EXPECT_TRUE(exact_sum(id, nid.fhat, 1) == exact_sum(id, nid.fhat, 0));
    auto checks = initial_conditions_check(nid, 1, std::nullopt);
    ASSERT_EQ(checks.size(), 2u);
    EXPECT_EQ(checks[0].kind, "anchor");
    EXPECT_TRUE(checks[0].passed);
    EXPECT_EQ(checks[1].kind, "delta");
    EXPECT_EQ(checks[1].n, 0);
    EXPECT_TRUE(checks[1].passed);
    // n0 extends the range
    EXPECT_EQ(initial_conditions_check(nid, 1, 2).size(), 1u + 4u);
}

TEST(InitialChecks, MrrAtZeroVanishesSymbolically)
{
    Identity id = mrr();
    NormalizedIdentity nid = normalize_and_delta(id);
    SupportInterval s = summation_range(id, nid.fhat, 0);
    EXPECT_EQ(s, (SupportInterval{BigInt(0), BigInt(1)}));
    EXPECT_TRUE(exact_sum(id, id.summand, 0).is_zero());
    auto checks = initial_conditions_check(nid, 1, std::nullopt);
    ASSERT_EQ(checks.size(), 1u);
    EXPECT_EQ(checks[0].kind, "sum");
    EXPECT_TRUE(checks[0].passed);
}

TEST(InitialChecks, FalseIdentityFailsDelta)
{
    Identity id = make_identity("binomial(n,k)", "3^n", {}, "0", "n");
    auto checks = initial_conditions_check(normalize_and_delta(id), 1, std::nullopt);
    EXPECT_TRUE(checks[0].passed);  // anchor: 1 = 1
    EXPECT_FALSE(checks[1].passed);
}

TEST(InitialChecks, UnboundedRangeThrows)
{
    auto vars = make_term_ring("k", "n", {"a"});
    Identity id(parse_term("rf(a,k)/k!", vars));
    id.params = {"a"};
    EXPECT_THROW(exact_sum(id, id.summand, 0), IdentityError);
}

TEST(Prove, ChuVandermondeBothPaths)
{
    ProofReport fast = prove(chu());
    EXPECT_EQ(fast.verdict, Verdict::Rigorous) << fast.message;
    EXPECT_EQ(fast.method, "wz-certificate");
    ASSERT_TRUE(fast.certificate);

    ProveOptions opt;
    opt.fast_path = false;
    ProofReport det = prove(chu(), opt);
    EXPECT_EQ(det.verdict, Verdict::Rigorous) << det.message;
    EXPECT_EQ(det.method, "determinant");
    ASSERT_TRUE(det.order);
    EXPECT_LE(*det.order, 2);
    EXPECT_EQ(det.grid_tested, det.grid_total);
}

TEST(Prove, Dixon)
{
    ProofReport r = prove(dixon());
    EXPECT_EQ(r.verdict, Verdict::Rigorous) << r.message;
    ProveOptions opt;
    opt.fast_path = false;
    ProofReport d = prove(dixon(), opt);
    EXPECT_EQ(d.verdict, Verdict::Rigorous) << d.message;
    EXPECT_EQ(d.degree_bounds.size(), 3u);
}

TEST(Prove, MrrSpecialized)
{
    ProofReport r = prove(mrr_special());
    EXPECT_EQ(r.verdict, Verdict::Rigorous) << r.message;
    EXPECT_EQ(r.method, "determinant");
    for (const auto& c : r.initial_checks)
        EXPECT_TRUE(c.passed);
}

TEST(Prove, MrrSymbolicSampled)
{
    ProveOptions opt;
    opt.certainty = make_rational(1, 100);
    ProofReport r = prove(mrr(), opt);
    EXPECT_EQ(r.verdict, Verdict::SemiRigorous) << r.message;
    EXPECT_LT(r.grid_tested, r.grid_total);
}

TEST(Prove, Refutations)
{
    ProofReport upfront = prove(make_identity("binomial(n,k)", "2^n+1", {}, "0", "n"));
    EXPECT_EQ(upfront.verdict, Verdict::Refuted);
    ASSERT_EQ(upfront.initial_checks.size(), 1u);
    EXPECT_FALSE(upfront.initial_checks[0].passed);

    ProofReport wrong = prove(make_identity("binomial(n,k)", "3^n", {}, "0", "n"));
    EXPECT_EQ(wrong.verdict, Verdict::Refuted);
    bool failed = false;
    for (const auto& c : wrong.initial_checks)
        failed = failed || !c.passed;
    EXPECT_TRUE(failed);
}

TEST(Prove, BadCertaintyIsInconclusive)
{
    ProveOptions opt;
    opt.certainty = 2;
    EXPECT_EQ(prove(chu(), opt).verdict, Verdict::Inconclusive);
}

TEST(Prove, Monotonicity)
{
    for (const Identity& id : {chu(), dixon(), mrr_special()}) {
        ProveOptions full;
        full.fast_path = false;
        ProofReport base = prove(id, full);
        ASSERT_EQ(base.verdict, Verdict::Rigorous) << base.message;
        for (auto c : {make_rational(1, 2), make_rational(1, 10)})
            for (std::uint64_t seed : {0u, 7u}) {
                ProveOptions o = full;
                o.certainty = c;
                o.seed = seed;
                ProofReport r = prove(id, o);
                EXPECT_EQ(r.verdict, Verdict::SemiRigorous) << r.message;
                EXPECT_EQ(r.order, base.order);
            }
    }
}

TEST(Prove, Reproducible)
{
    ProveOptions o;
    o.certainty = make_rational(1, 10);
    o.seed = 42;
    EXPECT_TRUE(same_report(prove(mrr_special(), o), prove(mrr_special(), o)));
    o.fast_path = false;
    EXPECT_TRUE(same_report(prove(dixon(), o), prove(dixon(), o)));
}

// the (J, K) accepted by the determinant path admits a kernel vector
TEST(Prove, NullspaceCrossValidation)
{
    Identity cb = make_identity("binomial(n,k)^2", "binomial(2*n,n)", {}, "0", "n");
    Identity b2 = make_identity("binomial(n,k)", "2^n", {}, "0", "n");
    for (const Identity& id : {chu(), dixon(), mrr_special(), cb, b2}) {
        ProveOptions o;
        o.fast_path = false;
        ProofReport r = prove(id, o);
        ASSERT_TRUE(r.order) << r.message;
        NormalizedIdentity nid = normalize_and_delta(id);
        ASSERT_TRUE(creative_telescope(nid.target(), 6));
        GZSystem sys = assemble_gz_system(nid.target(), *r.order);
        EXPECT_EQ(sys.ansatz.K, *r.degree);
        EXPECT_FALSE(solve_nullspace(sys.matrix).empty());
    }
}

// full grid on the three-variable system; a few seconds on one core
TEST(Prove, MrrSymbolicRigorous)
{
    ProofReport r = prove(mrr());
    EXPECT_EQ(r.verdict, Verdict::Rigorous) << r.message;
    EXPECT_EQ(r.grid_tested, r.grid_total);
    EXPECT_EQ(r.degree_bounds.size(), 3u);
    EXPECT_FALSE(r.extension);
}
