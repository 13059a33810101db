#include "synd/gosper.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace synd;

namespace {

struct Ring {
    VarsPtr vars = make_term_ring("k", "n", {"a"});
    std::size_t k = 0;
    MultiPoly kv = MultiPoly::variable(vars, 0);
    MultiPoly nv = MultiPoly::variable(vars, 1);
    MultiPoly c(long v) const { return MultiPoly::constant(vars, v); }
};

// Independent oracle, straight from the definition: gcd(q(k), r(k+j)) is free
// of k for every j in a range well past any shift occurring in the inputs.
bool shift_coprime(const MultiPoly& q, const MultiPoly& r, std::size_t k)
{
    for (long j = 0; j <= 50; ++j)
        if (poly_gcd(q, r.shift(k, BigRational(j))).depends_on(k))
            return false;
    return true;
}

void check_form(const RationalFunction& ratio, const GosperForm& g, std::size_t k)
{
    RationalFunction rebuilt = RationalFunction(g.p.shift(k, 1), g.p) * RationalFunction(g.q, g.r);
    EXPECT_EQ(rebuilt, ratio);
    EXPECT_TRUE(shift_coprime(g.q, g.r, k)) << g.q.to_string() << " | " << g.r.to_string();
}

}  // namespace

TEST(Pqr, Examples)
{
    Ring R;
    auto g1 = pqr_decompose(RationalFunction(R.kv, R.kv + R.c(2)), R.k);
    EXPECT_EQ(g1.p, R.c(1));
    EXPECT_EQ(g1.q, R.kv);
    EXPECT_EQ(g1.r, R.kv + R.c(2));

    auto g2 = pqr_decompose(RationalFunction(R.kv + R.c(3), R.kv), R.k);
    EXPECT_EQ(g2.p, R.kv * (R.kv + R.c(1)) * (R.kv + R.c(2)));
    EXPECT_EQ(g2.q, R.c(1));
    EXPECT_EQ(g2.r, R.c(1));

    auto g3 = pqr_decompose(RationalFunction(R.c(2)), R.k);
    EXPECT_EQ(g3.p, R.c(1));
    EXPECT_EQ(g3.q, R.c(2));
    EXPECT_EQ(g3.r, R.c(1));

    EXPECT_THROW(pqr_decompose(RationalFunction(R.vars), R.k), ArithmeticError);
}

TEST(Pqr, InvariantsOnRandomRatios)
{
    Ring R;
    std::mt19937_64 rng(11);
    auto lin = [&]() {
        long a = long(rng() % 3) + 1;
        long b = long(rng() % 7) - 3;
        long c = long(rng() % 3);
        return R.kv * a + R.nv * c + R.c(b);
    };
    for (int trial = 0; trial < 60; ++trial) {
        MultiPoly num = R.c(long(rng() % 5) + 1), den = R.c(1);
        int nn = int(rng() % 4), nd = int(rng() % 4);
        for (int i = 0; i < nn; ++i)
            num *= lin();
        for (int i = 0; i < nd; ++i)
            den *= lin();
        if (trial % 5 == 0)
            num *= R.kv * R.kv + R.nv;  // one nonlinear factor
        if (trial % 7 == 0)
            den *= (R.kv + R.c(4)) * (R.kv + R.c(4)) + R.nv;
        RationalFunction ratio(num, den);
        auto g = pqr_decompose(ratio, R.k);
        check_form(ratio, g, R.k);
        // factored input takes the pairwise route
        FactoredRatio fr(R.vars);
        fr.multiply(num, 1);
        fr.multiply(den, -1);
        check_form(ratio, pqr_decompose(fr, R.k), R.k);
    }
}

TEST(Gosper, Examples)
{
    Ring R;
    auto c1 = gosper_antidifference(parse_term("k*k!", R.vars), "k");
    ASSERT_TRUE(c1);
    EXPECT_EQ(c1->ratio, RationalFunction(R.c(1), R.kv));

    auto c2 = gosper_antidifference(parse_term("1/(k*(k+1))", R.vars), "k");
    ASSERT_TRUE(c2);
    EXPECT_EQ(c2->ratio, RationalFunction(-(R.kv + R.c(1))));

    EXPECT_FALSE(gosper_antidifference(parse_term("k!", R.vars), "k"));
    EXPECT_FALSE(gosper_antidifference(parse_term("binomial(n,k)", R.vars), "k"));

    auto z = gosper_antidifference(parse_term("0*k!", R.vars), "k");
    ASSERT_TRUE(z);
    EXPECT_TRUE(z->ratio.is_zero());
}

// k! has no hypergeometric antidifference: the reduced equation is
// (k+1)x(k+1) - x(k) = 1; test every polynomial ansatz of degree 0..5 by
// plain elimination over Q on sample points.
TEST(Gosper, FactorialHasNoPolynomialSolution)
{
    for (int d = 0; d <= 5; ++d) {
        int rows = d + 4, cols = d + 1;
        std::vector<std::vector<BigRational>> m(rows, std::vector<BigRational>(cols + 1));
        for (int i = 0; i < rows; ++i) {
            BigRational k = i;
            for (int j = 0; j < cols; ++j) {
                BigRational kp = 1, k1p = 1;
                for (int e = 0; e < j; ++e) {
                    kp *= k;
                    k1p *= k + 1;
                }
                m[i][j] = (k + 1) * k1p - kp;
            }
            m[i][cols] = 1;
        }
        // Gaussian elimination; inconsistency shows as a row [0 ... 0 | nonzero]
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = r;
            while (piv < rows && m[piv][c] == 0)
                ++piv;
            if (piv == rows)
                continue;
            std::swap(m[r], m[piv]);
            for (int i = 0; i < rows; ++i)
                if (i != r && m[i][c] != 0) {
                    BigRational f = m[i][c] / m[r][c];
                    for (int j = 0; j <= cols; ++j)
                        m[i][j] -= f * m[r][j];
                }
            ++r;
        }
        bool inconsistent = false;
        for (int i = r; i < rows; ++i)
            if (m[i][cols] != 0)
                inconsistent = true;
        EXPECT_TRUE(inconsistent) << "degree " << d;
    }
}

TEST(Gosper, CertificateIdentityAndWindows)
{
    std::vector<std::pair<const char*, std::vector<std::string>>> terms{
        {"k*k!", {}},
        {"1/(k*(k+1))", {}},
        {"(-1)^k*binomial(n,k)", {}},
        {"binomial(n,k)*(2*k-n)", {}},
        {"rf(a,k)/k!", {"a"}},
        {"binomial(k,n)", {}},
        {"2^k*k", {}},
    };
    std::mt19937_64 rng(5);
    for (const auto& [text, params] : terms) {
        auto vars = make_term_ring("k", "n", params);
        auto f = parse_term(text, vars);
        auto cert = gosper_antidifference(f, "k");
        ASSERT_TRUE(cert) << text;
        auto rho = shift_quotient(f, "k");
        auto one = RationalFunction::constant(vars, 1);
        EXPECT_EQ(cert->ratio.shift(0, 1) * rho - cert->ratio, one) << text;

        int done = 0;
        for (int trial = 0; trial < 200 && done < 20; ++trial) {
            long n = long(rng() % 7) + 1;
            long a = long(rng() % 12) + 1;
            long lo = long(rng() % 6) + 1, hi = lo + long(rng() % 6);
            Point p{{"n", n}};
            if (!params.empty())
                p["a"] = make_rational(a, 3);
            try {
                BigRational sum = 0;
                for (long k = lo; k <= hi; ++k) {
                    p["k"] = k;
                    sum += eval_term(f, p);
                }
                auto G = [&](long k) -> BigRational {
                    p["k"] = k;
                    BigRational fv = eval_term(f, p);
                    return cert->ratio.evaluate(detail::point_values(vars, p)) * fv;
                };
                EXPECT_EQ(sum, G(hi + 1) - G(lo)) << text << " window " << lo << ".." << hi;
                ++done;
            } catch (const std::exception&) {
            }
        }
        EXPECT_GE(done, 20) << text;
    }
}
