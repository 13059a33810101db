#include "synd/hyperterm.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace synd;

namespace {

const char* kDixon = "(-1)^k*binomial(a+b,a+k)*binomial(a+n,n+k)*binomial(b+n,b+k)";
const char* kMrr =
    "rf(-2*n-1,k)*rf(x+2*n+2,k)*rf(x-z+1/2,k)*rf(x+n+1,k)*rf(z+n+1,k)/"
    "(rf((x+1)/2,k)*rf(x/2+1,k)*rf(2*z+2*n+2,k)*rf(2*x-2*z+1,k)*k!)";

BigRational q(long a, long b = 1) { return make_rational(a, b); }

TermExpression term(const char* text, std::vector<std::string> params = {})
{
    return parse_term(text, make_term_ring("k", "n", params));
}

}  // namespace

TEST(Parse, FactorLists)
{
    auto f = term("binomial(n,k)*binomial(a,k)", {"a"});
    EXPECT_EQ(f.binomials.size(), 2u);
    EXPECT_TRUE(f.factorials.empty());

    auto g = term("(-1)^k*rf(a,k)/k!", {"a"});
    ASSERT_EQ(g.powers.size(), 1u);
    EXPECT_EQ(g.powers[0].base, -1);
    ASSERT_EQ(g.rising_factorials.size(), 1u);
    ASSERT_EQ(g.factorials.size(), 1u);
    EXPECT_EQ(g.factorials[0].exponent, -1);
}

TEST(Parse, SyntaxErrorHasPosition)
{
    try {
        term("binomial(n,)");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 11u);
    }
    EXPECT_THROW(term("binomial(n*k,k)"), TermError);
    EXPECT_THROW(term("n^k"), TermError);
    EXPECT_THROW(term("k!!"), TermError);
}

TEST(Parse, RoundTrip)
{
    std::vector<std::pair<const char*, std::vector<std::string>>> corpus{
        {"binomial(n,k)*binomial(a,k)", {"a"}},
        {"(-1)^k*rf(a,k)/k!", {"a"}},
        {kDixon, {"a", "b"}},
        {kMrr, {"x", "z"}},
        {"binomial(n,k)^2", {}},
        {"2^(n-k)*(k+1)/(n+3)*binomial(2*n,k)", {}},
        {"(n+k)!/(k!)^2/(n-k)!*(1/2)^k", {}},
    };
    for (const auto& [text, params] : corpus) {
        auto f = term(text, params);
        auto g = parse_term(f.render(), f.vars());
        EXPECT_EQ(f, g) << text << " -> " << f.render();
    }
}

TEST(Shift, Quotients)
{
    auto ring = make_term_ring("k", "n", {"a"});
    auto n = MultiPoly::variable(ring, "n");
    auto k = MultiPoly::variable(ring, "k");
    auto a = MultiPoly::variable(ring, "a");
    auto one = MultiPoly::constant(ring, 1);

    auto c = parse_term("binomial(n,k)", ring);
    EXPECT_EQ(shift_quotient(c, "k"), RationalFunction(n - k, k + one));
    EXPECT_EQ(shift_quotient(c, "n"), RationalFunction(n + one, n + one - k));
    EXPECT_EQ(shift_quotient(parse_term("rf(a,k)", ring), "k"), RationalFunction(a + k));
    EXPECT_THROW(shift_quotient(parse_term("(k/2)!", ring), "k"), TermError);
}

TEST(Shift, RationalFactorMultipliesQuotient)
{
    auto ring = make_term_ring("k", "n", {});
    auto f = parse_term("binomial(n,k)*2^k", ring);
    auto r = parse_rational_function("(k^2+n)/(2*k+3*n+1)", ring);
    auto g = f;
    g *= r;
    auto idx = ring->index_of("k");
    auto rq = r.shift(idx, 1) / r;
    EXPECT_EQ(shift_quotient(g, "k"), shift_quotient(f, "k") * rq);
}

TEST(Eval, Examples)
{
    auto ring = make_term_ring("k", "n", {});
    EXPECT_EQ(eval_term(parse_term("binomial(5,2)", ring), {}), 10);
    EXPECT_EQ(eval_term(parse_term("rf(1/2,3)", ring), {}), q(15, 8));
    EXPECT_THROW(eval_term(parse_term("(-1)!", ring), {}), TermError);
    EXPECT_THROW(eval_term(parse_term("binomial(n,k)", ring), {{"n", 3}, {"k", -1}}), TermError);
    EXPECT_THROW(eval_term(parse_term("rf(n,k)", ring), {{"n", 3}, {"k", -1}}), TermError);
    EXPECT_THROW(eval_term(parse_term("1/(k-2)", ring), {{"n", 3}, {"k", 2}}), TermError);
    EXPECT_EQ(eval_term(parse_term("binomial(n,k)", ring), {{"n", 3}, {"k", 5}}), 0);
    EXPECT_EQ(eval_term(parse_term("binomial(-1/2,3)", ring), {}), q(-5, 16));
    EXPECT_EQ(eval_term(parse_term("1/(k-n)!", ring), {{"n", 3}, {"k", 1}}), 0);
}

TEST(Eval, SymbolicParametersCombine)
{
    // Dixon summand over its right side is rational in a, b at fixed n, k.
    auto ring = make_term_ring("k", "n", {"a", "b"});
    auto f = parse_term(std::string(kDixon) + "*a!*b!*n!/(a+b+n)!", ring);
    auto r = eval_symbolic(f, {{"n", 1}, {"k", 0}});
    // C(a+b,a) C(a+1,1) C(b+1,b) a! b! / (a+b+1)! = (a+1)(b+1)/(a+b+1)
    auto a = MultiPoly::variable(ring, "a");
    auto b = MultiPoly::variable(ring, "b");
    auto one = MultiPoly::constant(ring, 1);
    EXPECT_EQ(r, RationalFunction((a + one) * (b + one), a + b + one));
    EXPECT_EQ(r.substitute(ring->index_of("a"), 2).substitute(ring->index_of("b"), 3).constant_value(),
              eval_term(f, {{"n", 1}, {"k", 0}, {"a", 2}, {"b", 3}}));
    EXPECT_THROW(eval_symbolic(parse_term("a!", ring), {{"n", 1}, {"k", 0}}), TermError);
}

TEST(Support, Examples)
{
    auto ring = make_term_ring("k", "n", {"a", "b"});
    auto s = natural_support(parse_term("binomial(n,k)", ring), {{"n", 5}});
    EXPECT_EQ(s, (SupportInterval{BigInt(0), BigInt(5)}));

    auto d = natural_support(parse_term(kDixon, ring), {{"n", 1}, {"a", 1}, {"b", 1}});
    EXPECT_EQ(d, (SupportInterval{BigInt(-1), BigInt(1)}));

    auto r = natural_support(parse_term("1/k!", ring), {{"n", 1}});
    EXPECT_EQ(r.lo, BigInt(0));
    EXPECT_FALSE(r.hi.has_value());

    auto z = natural_support(parse_term("binomial(n,k)*0", ring), {{"n", 4}});
    EXPECT_TRUE(z.empty());

    auto m = natural_support(parse_term(kMrr, make_term_ring("k", "n", {"x", "z"})), {{"n", 2}});
    EXPECT_EQ(m, (SupportInterval{BigInt(0), BigInt(5)}));

    // Generic symbolic upper argument: only the lower bound is forced.
    auto g = natural_support(parse_term("binomial(a,k)*binomial(n,k)", ring), {{"n", 3}});
    EXPECT_EQ(g, (SupportInterval{BigInt(0), BigInt(3)}));
    auto h = natural_support(parse_term("binomial(a,k)", ring), {{"n", 3}});
    EXPECT_EQ(h.lo, BigInt(0));
    EXPECT_FALSE(h.hi.has_value());
}

TEST(Support, TermsVanishOutside)
{
    auto ring = make_term_ring("k", "n", {"a", "b"});
    std::vector<const char*> terms{"binomial(n,k)^2", kDixon, "rf(-n,k)*rf(a,k)/k!/rf(b,k)",
                                   "binomial(2*n,n+k)*(-1)^k"};
    for (const char* text : terms) {
        auto f = parse_term(text, ring);
        for (long n = 0; n <= 5; ++n) {
            Point p{{"n", n}, {"a", 3}, {"b", 4}};
            auto s = natural_support(f, p);
            ASSERT_TRUE(s.finite()) << text;
            for (long k = -12; k <= 12; ++k) {
                Point pk = p;
                pk["k"] = k;
                bool inside = *s.lo <= k && k <= *s.hi;
                if (inside)
                    continue;
                try {
                    EXPECT_EQ(eval_term(f, pk), 0) << text << " n=" << n << " k=" << k;
                } catch (const TermError&) {
                    // outside the domain of evaluation altogether
                }
            }
        }
    }
}

TEST(Shift, ConsistencyProperty)
{
    std::mt19937_64 rng(7);
    std::vector<std::pair<const char*, std::vector<std::string>>> corpus{
        {"binomial(n,k)*binomial(a,k)", {"a"}},
        {"(-1)^k*rf(a,k)/k!", {"a"}},
        {kDixon, {"a", "b"}},
        {kMrr, {"x", "z"}},
        {"2^(n-k)*(k+1)/(n+3)*binomial(2*n,k)", {}},
    };
    for (const auto& [text, params] : corpus) {
        auto f = term(text, params);
        for (const char* v : {"k", "n"}) {
            auto quot = shift_quotient(f, v);
            int checked = 0;
            for (int trial = 0; trial < 400 && checked < 50; ++trial) {
                Point p;
                p["n"] = long(rng() % 9);
                p["k"] = long(rng() % 9) - 2;
                for (const auto& s : params)
                    p[s] = make_rational(long(rng() % 41) - 20, long(rng() % 7) + 1);
                Point next = p;
                next[v] += 1;
                try {
                    BigRational lhs = eval_term(f, next);
                    BigRational base = eval_term(f, p);
                    auto vals = detail::point_values(f.vars(), p);
                    BigRational qv = quot.evaluate(vals);
                    EXPECT_EQ(lhs, base * qv) << text << " shift " << v;
                    ++checked;
                } catch (const std::exception&) {
                }
            }
            EXPECT_GE(checked, 50) << text << " shift " << v;
        }
    }
}
