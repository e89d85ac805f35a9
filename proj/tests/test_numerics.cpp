#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdm/errors.hpp"
#include "fdm/numerics.hpp"
#include "support.hpp"

#include <random>
#include <thread>

using namespace fdm;
using fdm::testing::R;

TEST_CASE("precision context validation")
{
    CHECK_NOTHROW(PrecisionContext{}.validate());
    CHECK_NOTHROW(PrecisionContext::with_digits(20).validate());
    CHECK_THROWS_AS(PrecisionContext::with_digits(19).validate(), ConfigError);
    CHECK_THROWS_AS((PrecisionContext{50, 99}.validate()), ConfigError);
}

TEST_CASE("precision scopes nest and stay per thread")
{
    PrecisionScope outer(40);
    CHECK(working_digits() == 40);
    {
        PrecisionScope inner(80);
        CHECK(working_digits() == 80);
        CHECK(Real(1L).precision() == bits_for_digits(80));
    }
    CHECK(working_digits() == 40);

    unsigned seen = 0;
    std::thread([&] { seen = working_digits(); }).join();
    CHECK(seen == 50);
}

TEST_CASE("values keep the precision they were made with")
{
    Real third;
    {
        PrecisionScope p(100);
        third = Real(1L) / Real(3L);
    }
    PrecisionScope p(30);
    CHECK(third.precision() == bits_for_digits(100));
    CHECK(third.to_scientific(60) == "3.33333333333333333333333333333333333333333333333333333333333e-01");
}

TEST_CASE("parsing decimals and ratios")
{
    PrecisionScope p(50);
    CHECK(R("3/4") == Real::ratio(3, 4));
    CHECK(R(" -1/8 ") == Real::ratio(-1, 8));
    CHECK(R("-1.25e-3") == Real::ratio(-125, 100000));
    CHECK(R("0") .is_zero());
    CHECK_THROWS_AS(R("abc"), FormatError);
    CHECK_THROWS_AS(R("1/0"), FormatError);
    CHECK_THROWS_AS(R("1/"), FormatError);
    CHECK_THROWS_AS(R(""), FormatError);
    CHECK_THROWS_AS(R("2x"), FormatError);
}

TEST_CASE("formatting")
{
    PrecisionScope p(50);
    const Real third = Real(1L) / Real(3L);
    CHECK(third.to_scientific(5) == "3.3333e-01");
    CHECK((-third * Real(1000L)).to_scientific(4) == "-3.333e+02");
    CHECK(Real(0L).to_scientific(3) == "0.00e+00");
    CHECK(R("35.25088051559755263826230419702").to_fixed_significant(30) == "35.2508805155975526382623041970");
    CHECK(R("0.000123456").to_fixed_significant(3) == "0.000123");
    CHECK(R("1234.5").to_fixed_significant(2) == "1200");
}

TEST_CASE("arithmetic errors")
{
    PrecisionScope p(30);
    CHECK_THROWS_AS(Real(1L) / Real(0L), PrecisionError);
    CHECK_THROWS_AS(sqrt(Real(-1L)), DomainError);
    CHECK_THROWS_AS(log(Real(0L)), DomainError);
    CHECK_THROWS_AS(Real(std::numeric_limits<double>::infinity()), PrecisionError);
}

TEST_CASE("gamma at known points")
{
    PrecisionScope p(50);
    CHECK(gamma(Real(5L)) == Real(24L));
    CHECK(agreeing_digits(gamma(Real::ratio(1, 2)), sqrt(pi())) >= 48);
    // Γ(-1/2) = -2√π
    CHECK(agreeing_digits(gamma(Real::ratio(-1, 2)), Real(-2L) * sqrt(pi())) >= 48);
    // Γ(-3/2) = 4√π/3
    CHECK(agreeing_digits(gamma(Real::ratio(-3, 2)), Real(4L) * sqrt(pi()) / Real(3L)) >= 48);
    CHECK_THROWS_AS(gamma(Real(0L)), PoleError);
    CHECK_THROWS_AS(gamma(Real(-3L)), PoleError);
}

TEST_CASE("gamma reflection and recurrence on random arguments")
{
    PrecisionScope p(50);
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> dist(-6.0, 6.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Real x(dist(rng));
        if (x.is_integer())
            continue;
        const Real one(1L);
        // Γ(x+1) = x Γ(x)
        CHECK(agreeing_digits(gamma(x + one), x * gamma(x)) >= 45);
        // Γ(x) Γ(1-x) = π / sin(πx)
        CHECK(agreeing_digits(gamma(x) * gamma(one - x), pi() / sin(pi() * x)) >= 45);
    }
}

TEST_CASE("gamma near a pole keeps relative accuracy")
{
    PrecisionScope p(40);
    const Real x = Real(-2L) + pow10_neg(20);
    // Γ(-2 + ε) ≈ 1/(2ε) for small ε
    const Real approx = Real(1L) / (Real(2L) * pow10_neg(20));
    CHECK(agreeing_digits(gamma(x), approx) >= 15);
}

TEST_CASE("stability and digit agreement")
{
    const PrecisionContext ctx = PrecisionContext::with_digits(30);
    Real a, b;
    {
        PrecisionScope p(30);
        a = pi();
    }
    {
        PrecisionScope p(60);
        b = pi();
    }
    CHECK(stable(a, b, ctx));
    {
        PrecisionScope p(60);
        CHECK_FALSE(stable(a + pow10_neg(20), b, ctx));
    }
    PrecisionScope p(50);
    CHECK(agreeing_digits(R("1.2345678"), R("1.2345999")) == 4);
    CHECK(agreeing_digits(R("2"), R("2")) == 1000);
    CHECK(agreeing_digits(R("1"), R("-1")) == 0);
}
