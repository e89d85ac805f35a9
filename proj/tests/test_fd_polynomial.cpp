#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdm/diagnostics.hpp"
#include "fdm/errors.hpp"
#include "fdm/fd_polynomial.hpp"
#include "support.hpp"

#include <thread>

using namespace fdm;
using fdm::testing::R;

namespace {

OperatorParams example1() { return OperatorParams::make(R("1/2"), R("0"), R("3/4")); }
OperatorParams example2() { return OperatorParams::make(R("-1/8"), R("-1/2"), R("3/4")); }
PolynomialPotential cubic() { return PolynomialPotential({R("0"), R("0"), R("0"), R("1/4")}); }
PolynomialPotential flat_cubic() { return PolynomialPotential({R("1/12"), R("1/12"), R("1/12"), R("1/12")}); }

bool close(const Real& a, const Real& b, unsigned digits) { return agreeing_digits(a, b) >= digits; }

} // namespace

TEST_CASE("polynomial potential representation")
{
    PrecisionScope p(30);
    const PolynomialPotential trimmed({R("1"), R("2"), R("0"), R("0")});
    CHECK(trimmed.degree() == 1);
    CHECK(PolynomialPotential({R("0"), R("0")}).is_zero());
    CHECK(PolynomialPotential().is_zero());
    CHECK(PolynomialPotential().degree() == 0);
    CHECK(cubic()(R("1/2")) == R("1/32"));
    const auto d = flat_cubic().derivative();
    CHECK(d.degree() == 2);
    CHECK(d.coeffs()[2] == R("1/4"));
}

TEST_CASE("initial state")
{
    PrecisionScope p(50);
    const auto s = init_state(0, example1());
    CHECK(s.j == 0);
    CHECK(s.coeffs.values.size() == 1);
    CHECK(s.coeffs.lo == 0);
    CHECK(close(s.lambdas[0], R("3/8") * sqrt(pi()), 48));
    CHECK(close(s.coeffs.at(0), Real(1L) / sqrt(norm_gamma(0, R("1/2"), R("0"))), 48));

    const auto u = init_state(0, OperatorParams::make(R("0"), R("0"), R("3/4")), Normalization::leading_one);
    CHECK(u.coeffs.at(0) == Real(1L));
    CHECK(close(u.lambdas[0], gamma(R("7/4")) / gamma(R("1/4")), 48));

    for (std::size_t n : {1u, 4u, 9u}) {
        const auto st = init_state(n, example2());
        CHECK(st.coeffs.values.size() == 1);
        CHECK(st.coeffs.lo == n);
    }
}

TEST_CASE("first corrections of the cubic potential")
{
    PrecisionScope p(50);
    BaseSpectrum spectrum(example1());
    MultiplicationCache cache(R("1/2"), R("0"));
    const PolynomialPotential q = cubic();
    const Real c3 = R("1/4");
    const Real root_pi = sqrt(pi());

    std::vector<CorrectionState> history{init_state(0, spectrum, Real(1L))};
    CHECK(close(eigenvalue_correction(history[0], q, cache), R("-13/420"), 45));
    history.push_back(advance(history, q, spectrum, cache));
    const auto& s1 = history[1];
    CHECK(s1.coeffs.at(0).is_zero());
    CHECK(close(s1.coeffs.at(1), R("-1216/2475") * c3 / root_pi, 45));
    CHECK(close(s1.coeffs.at(2), R("2048/38493") * c3 / root_pi, 45));
    CHECK(close(s1.coeffs.at(3), R("-16384/204633") * c3 / root_pi, 45));

    history.push_back(advance(history, q, spectrum, cache));
    const auto& s2 = history[2];
    CHECK(close(s2.lambdas[2], R("-201134942464/1943987920875") * c3 * c3 / root_pi, 45));
    const char* second[] = {"290443255808/70816702831875",       "193813841149952/1609728034189275",
                            "-48103527022592/8557490370203775",  "340833471561728/13515289050237975",
                            "-336081190912/249927686251425",     "68719476736/48376171671975"};
    for (std::size_t k = 1; k <= 6; ++k)
        CHECK(close(s2.coeffs.at(k), R(second[k - 1]) * c3 * c3 / pi(), 45));

    history.push_back(advance(history, q, spectrum, cache));
    CHECK(close(history[3].lambdas[3], R("-274356801766461046784/81295088830639587028125") * c3 * c3 * c3 / pi(), 45));
}

TEST_CASE("coefficient windows grow by the potential degree")
{
    PrecisionScope p(40);
    const auto approx = run(5, 6, example2(), flat_cubic());
    for (std::size_t j = 0; j < approx.corrections.size(); ++j) {
        const auto& w = approx.corrections[j];
        CHECK(w.lo == (5 >= 3 * j ? 5 - 3 * j : 0));
        CHECK(w.hi() == 5 + 3 * j);
        if (j > 0)
            CHECK(w.at(5).is_zero());
    }
}

TEST_CASE("zero potential leaves the base pair unchanged")
{
    PrecisionScope p(40);
    const auto approx = run(3, 5, example1(), PolynomialPotential());
    CHECK(approx.lambda_sum == base_eigenvalue(3, example1()));
    for (std::size_t j = 1; j <= 5; ++j) {
        CHECK(approx.lambdas[j].is_zero());
        CHECK(approx.correction_norms[j].is_zero());
        CHECK(approx.solvability_residuals[j - 1].is_zero());
    }
    const auto rank0 = run(2, 0, example2(), flat_cubic());
    CHECK(rank0.lambda_sum == base_eigenvalue(2, example2()));
    CHECK(rank0.lambdas.size() == 1);
}

TEST_CASE("normalized runs start from a unit eigenfunction")
{
    PrecisionScope p(50);
    const auto approx = run(4, 3, example1(), cubic());
    CHECK(close(approx.correction_norms[0], Real(1L), 45));
    Real sum(0L);
    for (const auto& l : approx.lambdas)
        sum += l;
    CHECK(sum == approx.lambda_sum);
}

TEST_CASE("solvability residuals vanish")
{
    PrecisionScope p(50);
    const auto approx = run(0, 30, example2(), flat_cubic());
    REQUIRE(approx.solvability_residuals.size() == 30);
    for (const auto& r : approx.solvability_residuals)
        CHECK(abs(r) <= pow10_neg(42));

    BaseSpectrum spectrum(example1());
    MultiplicationCache cache(R("1/2"), R("0"));
    std::vector<CorrectionState> h{init_state(0, spectrum, Real(1L))};
    for (int j = 0; j < 3; ++j)
        h.push_back(advance(h, cubic(), spectrum, cache));
    const Real next = eigenvalue_correction(h.back(), cubic(), cache);
    CHECK(abs(solvability_residual(h.back(), cubic(), next, cache)) < pow10_neg(40));
}

TEST_CASE("rescaling the leading coefficient rescales every correction")
{
    PrecisionScope p(50);
    const auto base = run(2, 8, example2(), flat_cubic());
    const auto doubled = run_with_leading(2, 8, example2(), flat_cubic(), Real(2L) * base.leading);
    for (std::size_t j = 0; j <= 8; ++j) {
        CHECK(close(base.lambdas[j], doubled.lambdas[j], 45));
        const auto& a = base.corrections[j];
        const auto& b = doubled.corrections[j];
        REQUIRE(a.lo == b.lo);
        for (std::size_t i = 0; i < a.values.size(); ++i)
            CHECK(close(Real(2L) * a.values[i], b.values[i], 45));
    }
}

TEST_CASE("first correction matches the quadrature oracle")
{
    PrecisionScope p(50);
    for (const auto& [params, q] : {std::pair{example1(), cubic()}, std::pair{example2(), flat_cubic()}}) {
        for (std::size_t n = 0; n <= 5; ++n) {
            const auto approx = run(n, 1, params, q);
            CHECK(abs(approx.lambdas[1] - rayleigh_correction_oracle(n, params, q)) < pow10_neg(25));
        }
    }
}

TEST_CASE("eigenfunction evaluation")
{
    PrecisionScope p(50);
    const auto rank0 = run(2, 0, example1(), cubic());
    const Real x = R("0.3");
    CHECK(close(eval_eigenfunction(rank0, example1(), x),
                gjf_eval(2, example1(), x) / sqrt(norm_gamma(2, R("1/2"), R("0"))), 45));

    const auto rank1 = run(0, 1, example1(), cubic());
    CHECK(eval_eigenfunction(rank1, example1(), Real(1L)).is_zero());
    CHECK_THROWS_AS(eval_eigenfunction(run(0, 1, example2(), flat_cubic()), example2(), Real(1L)), DomainError);

    // Term-by-term sum with the exact coefficients, a_0^(0) = 1.
    const auto rank2 = run(0, 2, example1(), cubic(), Normalization::leading_one);
    const Real c3 = R("1/4");
    const Real rp = sqrt(pi());
    const Real a = R("1/2");
    const Real b = R("0");
    const Real z(0L);
    const auto P = jacobi_poly_all(6, a, b, z);
    Real expected = P[0];
    expected += R("-1216/2475") * c3 / rp * P[1] + R("2048/38493") * c3 / rp * P[2] +
                R("-16384/204633") * c3 / rp * P[3];
    const char* second[] = {"290443255808/70816702831875",      "193813841149952/1609728034189275",
                            "-48103527022592/8557490370203775", "340833471561728/13515289050237975",
                            "-336081190912/249927686251425",    "68719476736/48376171671975"};
    for (std::size_t k = 1; k <= 6; ++k)
        expected += R(second[k - 1]) * c3 * c3 / pi() * P[k];
    CHECK(rank2.corrections[2].at(0).is_zero());
    CHECK(close(eval_eigenfunction(rank2, example1(), z), expected, 44));
}

TEST_CASE("runs are deterministic across threads")
{
    PrecisionScope p(40);
    const auto here = run(3, 12, example2(), flat_cubic());
    std::string there;
    std::thread([&] {
        PrecisionScope q(40);
        there = run(3, 12, example2(), flat_cubic()).lambda_sum.to_scientific(40);
    }).join();
    CHECK(here.lambda_sum.to_scientific(40) == there);
}

TEST_CASE("degenerate gaps are rejected")
{
    PrecisionScope p(30);
    CHECK(singular_gap_threshold(R("2")) == R("2") * pow10_neg(15));
    CHECK(singular_gap_threshold(R("0.1")) == pow10_neg(15));
    BaseSpectrum spectrum(example1());
    MultiplicationCache cache(R("1/2"), R("0"));
    CHECK_THROWS_AS(advance({}, cubic(), spectrum, cache), DomainError);
}
