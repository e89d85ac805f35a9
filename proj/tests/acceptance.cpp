// Acceptance run: one PASS/FAIL line per criterion, followed by indented
// detail lines. Exits non-zero when any criterion fails.

#include "fdm/diagnostics.hpp"
#include "fdm/errors.hpp"
#include "fdm/fd_polynomial.hpp"
#include "fdm/fd_stepwise.hpp"
#include "fdm/job.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace fdm;
using fdm::testing::R;
using fdm::testing::read_golden;
using fdm::testing::rounds_to;
using fdm::testing::within_printed;

namespace {

constexpr unsigned kDigits = 50;
constexpr unsigned kTableDigits = 30;
constexpr unsigned kExample3Digits = 32;
constexpr unsigned kExample3Gate = 12;
constexpr unsigned kCorrection16Gate = 6;
constexpr unsigned kRankAgreement = 26;
constexpr long kOddCorrectionExponent = 20;
constexpr long kOracleExponent = 25;
constexpr std::size_t kTruncation = 64;

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("FAIL " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

OperatorParams example1() { return OperatorParams::make(R("1/2"), R("0"), R("3/4")); }
OperatorParams example2() { return OperatorParams::make(R("-1/8"), R("-1/2"), R("3/4")); }
OperatorParams legendre_step() { return OperatorParams::make(R("0"), R("0"), R("3/4")); }
PolynomialPotential cubic() { return PolynomialPotential({R("0"), R("0"), R("0"), R("1/4")}); }
PolynomialPotential flat_cubic() { return PolynomialPotential({R("1/12"), R("1/12"), R("1/12"), R("1/12")}); }

Real partial_sum(const std::vector<Real>& lambdas, std::size_t last)
{
    Real sum(0L);
    for (std::size_t j = 0; j <= last; ++j)
        sum += lambdas[j];
    return sum;
}

std::string sci(const Real& x, unsigned d = 12) { return x.to_scientific(d); }

// ---------------------------------------------------------------------------

Criterion example1_rank20()
{
    Criterion c{1, "example 1, rank 20: eigenvalues to 30 digits and ratios r_n to printed digits"};
    PrecisionScope p(kDigits);
    const Real q_inf = potential_sup_norm(cubic());
    for (const auto& row : read_golden("example1_rank20.txt")) {
        const std::size_t n = std::stoul(row[0]);
        const Real r = convergence_report(n, example1(), q_inf).r_n;
        const Real lam = run(n, 20, example1(), cubic()).lambda_sum;
        c.require(rounds_to(r, row[1]), "n=" + row[0] + " r_n " + sci(r, 6) + " vs " + row[1]);
        c.require(rounds_to(lam, row[2]),
                  "n=" + row[0] + " lambda " + lam.to_fixed_significant(kTableDigits) + " vs " + row[2]);
    }
    return c;
}

Criterion example1_corrections()
{
    Criterion c{2, "example 1: corrections and correction norms for n = 0, 10 within one unit of the last printed digit"};
    PrecisionScope p(kDigits);
    const auto n0 = run(0, 20, example1(), cubic(), Normalization::leading_one);
    const auto n10 = run(10, 20, example1(), cubic(), Normalization::leading_one);
    const Real unit(1L);
    for (const auto& row : read_golden("example1_corrections.txt")) {
        const std::size_t m = std::stoul(row[0]);
        const Real values[] = {n0.lambdas[m], n0.correction_norms[m], n10.lambdas[m], n10.correction_norms[m]};
        const char* names[] = {"lambda_0", "|u_0|", "lambda_10", "|u_10|"};
        for (int k = 0; k < 4; ++k)
            c.require(within_printed(values[k], row[1 + k], unit),
                      std::string(names[k]) + "^(" + row[0] + ") " + sci(values[k], 6) + " vs " + row[1 + k]);
    }
    return c;
}

Criterion example2_tables()
{
    Criterion c{3, "example 2, ranks 20 and 30: eigenvalues to 30 digits, corrections to printed precision"};
    PrecisionScope p(kDigits);
    const Real q_inf = potential_sup_norm(flat_cubic());
    std::vector<EigenpairApproximation> runs;
    for (const auto& row : read_golden("example2_ranks.txt")) {
        const std::size_t n = std::stoul(row[0]);
        runs.push_back(run(n, 30, example2(), flat_cubic()));
        const auto& a = runs.back();
        const Real r = convergence_report(n, example2(), q_inf).r_n;
        const Real rank20 = partial_sum(a.lambdas, 20);
        const Real rank30 = a.lambda_sum;
        c.require(rounds_to(r, row[1]), "n=" + row[0] + " r_n " + sci(r, 6) + " vs " + row[1]);
        c.require(rounds_to(rank20, row[2]),
                  "n=" + row[0] + " rank 20 " + rank20.to_fixed_significant(kTableDigits) + " vs " + row[2]);
        c.require(rounds_to(rank30, row[3]),
                  "n=" + row[0] + " rank 30 " + rank30.to_fixed_significant(kTableDigits) + " vs " + row[3]);
        if (!rounds_to(rank20, row[2]) && rounds_to(partial_sum(a.lambdas, 19), row[2]))
            c.note("n=" + row[0] + ": the printed rank-20 value equals the sum of corrections j = 0..19");
        if (n >= 2) {
            const unsigned agree = agreeing_digits(rank20, rank30);
            c.require(agree >= kRankAgreement, "n=" + row[0] + " rank 20 vs rank 30 agree to " +
                                                   std::to_string(agree) + " digits");
        }
    }
    for (const auto& row : read_golden("example2_corrections.txt")) {
        const std::size_t m = std::stoul(row[0]);
        for (std::size_t n = 0; n <= 4; ++n) {
            const Real& l = runs[n].lambdas[m];
            const bool unit = within_printed(l, row[1 + n], Real(1L));
            c.require(rounds_to(l, row[1 + n]), "lambda_" + std::to_string(n) + "^(" + row[0] + ") " + sci(l, 6) +
                                                    " vs " + row[1 + n] +
                                                    (unit ? " (within one unit)" : " (off by more than one unit)"));
        }
    }
    return c;
}

Criterion example3()
{
    Criterion c{4, "example 3, step potential, N = 64, 32 digits: partial sums to 12 digits, step-16 correction to 6"};
    PrecisionScope p(kExample3Digits);
    const auto golden = read_golden("example3.txt");
    const auto B = build_overlap_matrix(ClosedFormStep{}, kTruncation);
    const auto g = run_general(0, 16, kTruncation, B, legendre_step());
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t m = std::stoul(golden[i][0]);
        const Real sum = partial_sum(g.approx.lambdas, m);
        const unsigned agree = agreeing_digits(sum, R(golden[i][1]));
        c.require(agree >= kExample3Gate, "rank " + golden[i][0] + " agrees to " + std::to_string(agree) + " digits");
        c.note("rank " + golden[i][0] + ": " + sum.to_fixed_significant(kExample3Digits) + " (" +
               std::to_string(agree) + " digits agree)");
    }
    const Real c16 = g.approx.lambdas[16];
    const unsigned agree16 = agreeing_digits(c16, R(golden[3][1]));
    c.require(agree16 >= kCorrection16Gate, "lambda^(16) " + sci(c16) + " agrees to " + std::to_string(agree16));
    c.note("lambda^(16) = " + sci(c16, 20) + " (" + std::to_string(agree16) + " digits agree)");
    for (std::size_t j = 3; j <= 15; j += 2)
        c.require(abs(g.approx.lambdas[j]) < pow10_neg(kOddCorrectionExponent),
                  "odd correction j=" + std::to_string(j) + " = " + sci(g.approx.lambdas[j]));
    c.note("lambda^(1) = " + g.approx.lambdas[1].to_fixed_significant(6));
    if (g.truncation_sensitivity)
        c.note("truncation sensitivity |N=64 - N=32| = " + sci(*g.truncation_sensitivity, 3));

    const auto exact = run_general(0, 16, kTruncation, build_overlap_matrix(StepPotential{}, kTruncation), legendre_step());
    c.note("exact overlaps (informational): rank 16 = " + exact.approx.lambda_sum.to_fixed_significant(20) +
           ", sensitivity " + sci(*exact.truncation_sensitivity, 3));
    return c;
}

Criterion example1_coefficients()
{
    Criterion c{5, "example 1: leading-one coefficients of the first two corrections to digits - 5"};
    PrecisionScope p(kDigits);
    const auto a = run(0, 2, example1(), cubic(), Normalization::leading_one);
    const Real c3 = R("1/4");
    const Real rp = sqrt(pi());
    const char* first[] = {"-1216/2475", "2048/38493", "-16384/204633"};
    const char* second[] = {"290443255808/70816702831875",      "193813841149952/1609728034189275",
                            "-48103527022592/8557490370203775", "340833471561728/13515289050237975",
                            "-336081190912/249927686251425",    "68719476736/48376171671975"};
    const unsigned need = kDigits - 5;
    for (std::size_t k = 1; k <= 3; ++k) {
        const unsigned d = agreeing_digits(a.corrections[1].at(k), R(first[k - 1]) * c3 / rp);
        c.require(d >= need, "a_" + std::to_string(k) + "^(1) agrees to " + std::to_string(d));
    }
    for (std::size_t k = 1; k <= 6; ++k) {
        const unsigned d = agreeing_digits(a.corrections[2].at(k), R(second[k - 1]) * c3 * c3 / pi());
        c.require(d >= need, "a_" + std::to_string(k) + "^(2) agrees to " + std::to_string(d));
    }
    return c;
}

// ---------------------------------------------------------------------------

struct PolyExample {
    std::string name;
    OperatorParams params;
    PolynomialPotential q;
    std::vector<std::size_t> n_set;
    std::size_t rank;
};

std::string emit_preset(const std::string& name, const std::string& workers, const std::string& format)
{
    Settings s = preset_settings(name);
    s["workers"] = workers;
    s["format"] = format;
    const JobConfig cfg = config_from_settings(s);
    return emit(run_job(cfg), cfg);
}

Criterion properties()
{
    Criterion c{6, "property suite"};
    PrecisionScope p(kDigits);

    {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> dist(-6.0, 6.0);
        bool ok = true;
        for (int i = 0; i < 200; ++i) {
            const Real x(dist(rng));
            if (x.is_integer())
                continue;
            const Real one(1L);
            ok = ok && agreeing_digits(gamma(x + one), x * gamma(x)) >= kDigits - 5;
            ok = ok && agreeing_digits(gamma(x) * gamma(one - x), pi() / sin(pi() * x)) >= kDigits - 5;
        }
        c.require(ok, "gamma recurrence or reflection");
    }
    {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> n_dist(0, 8), r_dist(0, 4);
        std::uniform_real_distribution<double> ab(-0.9, 2.0), xs(-0.999, 0.999);
        bool ok = true;
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n = n_dist(rng), r = r_dist(rng);
            const Real a(ab(rng)), b(ab(rng));
            const auto t = multiplication_coeffs(n, r, a, b);
            for (int s = 0; s < 5; ++s) {
                const Real x(xs(rng));
                const auto P = jacobi_poly_all(n + r, a, b, x);
                Real sum(0L);
                for (std::size_t k = t.k_lo; k <= t.k_hi(); ++k)
                    sum += t.coefficient(k) * P[k];
                const Real expected = pow(x, static_cast<long>(r)) * P[n];
                ok = ok && abs(sum - expected) <= pow10_neg(kDigits - 8) * max(Real(1L), abs(expected));
            }
        }
        c.require(ok, "multiplication-table reconstruction");
    }
    {
        bool ok = true;
        for (std::size_t j = 0; j <= 12; ++j) {
            mpz_class conv = 0;
            for (std::size_t i = 0; i <= j; ++i)
                conv += majorant_exact(i) * majorant_exact(j - i);
            ok = ok && conv == majorant_exact(j + 1);
        }
        c.require(ok, "majorant convolution identity");
    }

    const std::vector<std::size_t> ns{0, 1, 2, 3, 4, 10};
    const std::vector<PolyExample> poly{{"example 1", example1(), cubic(), ns, 20},
                                        {"example 2", example2(), flat_cubic(), ns, 30}};
    const Real residual_tol = pow10_neg(kDigits - 8);
    for (const auto& ex : poly) {
        const Real q_inf = potential_sup_norm(ex.q);
        for (std::size_t n : ex.n_set) {
            const auto a = run(n, ex.rank, ex.params, ex.q);
            for (const Real& r : a.solvability_residuals)
                c.require(abs(r) < residual_tol, ex.name + " n=" + std::to_string(n) + " residual " + sci(r, 3));
            const auto rep = convergence_report(n, ex.params, q_inf);
            if (rep.converges) {
                for (std::size_t j = 1; j <= ex.rank; ++j) {
                    c.require(abs(a.lambdas[j]) <= eigen_correction_bound(j, rep.r_n, q_inf),
                              ex.name + " n=" + std::to_string(n) + " eigenvalue majorant at j=" + std::to_string(j));
                    c.require(a.correction_norms[j] <= correction_norm_bound(j, rep.r_n),
                              ex.name + " n=" + std::to_string(n) + " norm majorant at j=" + std::to_string(j));
                }
            }
            const auto doubled = run_with_leading(n, ex.rank, ex.params, ex.q, Real(2L) * a.leading);
            bool cov = true;
            for (std::size_t j = 0; j <= ex.rank; ++j) {
                cov = cov && (a.lambdas[j].is_zero() ? doubled.lambdas[j].is_zero()
                                                     : agreeing_digits(a.lambdas[j], doubled.lambdas[j]) >= kDigits - 5);
                for (std::size_t i = 0; i < a.corrections[j].values.size(); ++i) {
                    const Real& x = a.corrections[j].values[i];
                    const Real& y = doubled.corrections[j].values[i];
                    cov = cov && (x.is_zero() ? y.is_zero() : agreeing_digits(Real(2L) * x, y) >= kDigits - 5);
                }
            }
            c.require(cov, ex.name + " n=" + std::to_string(n) + " normalization covariance");
        }
        for (std::size_t n = 0; n <= 5; ++n) {
            const Real l1 = run(n, 1, ex.params, ex.q).lambdas[1];
            const Real oracle = rayleigh_correction_oracle(n, ex.params, ex.q);
            c.require(abs(l1 - oracle) < pow10_neg(kOracleExponent),
                      ex.name + " n=" + std::to_string(n) + " quadrature oracle " + sci(abs(l1 - oracle), 3));
        }
    }
    {
        const auto B = build_overlap_matrix(ClosedFormStep{}, kTruncation);
        for (std::size_t n = 0; n <= 5; ++n) {
            const auto a = run_general_once(n, 16, kTruncation, B, legendre_step(), Normalization::leading_one);
            for (const Real& r : a.solvability_residuals)
                c.require(abs(r) < residual_tol, "example 3 n=" + std::to_string(n) + " residual " + sci(r, 3));
            const Real oracle = rayleigh_correction_oracle(n, legendre_step(), StepPotential{});
            c.require(abs(a.lambdas[1] - oracle) < pow10_neg(kOracleExponent),
                      "example 3 n=" + std::to_string(n) + " quadrature oracle");
        }
    }

    for (const char* name : {"example1", "example2", "example3"})
        for (const char* format : {"csv", "json"})
            c.require(emit_preset(name, "1", format) == emit_preset(name, "8", format),
                      std::string(name) + " " + format + " output differs between 1 and 8 workers");

    // Gated digits at the working precision and at twice that precision.
    auto gated = [](unsigned digits) {
        std::vector<std::string> out;
        PrecisionScope scope(digits);
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 10u}) {
            out.push_back(run(n, 20, example1(), cubic()).lambda_sum.to_fixed_significant(kTableDigits));
            const auto a = run(n, 30, example2(), flat_cubic());
            out.push_back(partial_sum(a.lambdas, 20).to_fixed_significant(kTableDigits));
            out.push_back(a.lambda_sum.to_fixed_significant(kTableDigits));
            for (const Real& l : a.lambdas)
                out.push_back(l.to_scientific(4));
        }
        for (std::size_t n : {0u, 10u}) {
            const auto a = run(n, 20, example1(), cubic(), Normalization::leading_one);
            for (std::size_t j = 0; j <= 20; ++j) {
                out.push_back(a.lambdas[j].to_scientific(4));
                out.push_back(a.correction_norms[j].to_scientific(4));
            }
        }
        return out;
    };
    c.require(gated(kDigits) == gated(2 * kDigits), "precision doubling changed a gated digit (polynomial examples)");
    auto step_gated = [](unsigned digits) {
        PrecisionScope scope(digits);
        const auto B = build_overlap_matrix(ClosedFormStep{}, kTruncation);
        const auto g = run_general_once(0, 16, kTruncation, B, legendre_step(), Normalization::leading_one);
        return partial_sum(g.lambdas, 16).to_fixed_significant(kExample3Gate) + " " +
               g.lambdas[16].to_fixed_significant(kCorrection16Gate);
    };
    c.require(step_gated(kExample3Digits) == step_gated(2 * kExample3Digits),
              "precision doubling changed a gated digit (example 3)");
    return c;
}

Criterion trends()
{
    Criterion c{7, "limit behaviour of 2s M_n for n_max = 200 and M_n = 1 when s = 1/2, alpha = beta"};
    PrecisionScope p(kDigits);
    const struct {
        const char* s;
        const char* alpha;
        const char* beta;
        GapTrend expected;
    } cases[] = {{"3/4", "1/2", "0", GapTrend::to_zero},
                 {"1/2", "0", "0", GapTrend::to_one},
                 {"1/4", "0", "0", GapTrend::diverging}};
    for (const auto& k : cases) {
        const GapTrend got = gap_limit_trend(OperatorParams::make(R(k.alpha), R(k.beta), R(k.s)), 200);
        c.require(got == k.expected, std::string("s=") + k.s + " alpha=" + k.alpha + " beta=" + k.beta + ": " +
                                         to_string(got) + ", expected " + to_string(k.expected));
    }
    for (const char* ab : {"0", "0.3", "-0.4", "1", "5/2"}) {
        const auto params = OperatorParams::make(R(ab), R(ab), R("1/2"));
        bool ok = true;
        for (std::size_t n = 0; n <= 200; ++n)
            ok = ok && agreeing_digits(spectral_gap_M(n, params), Real(1L)) >= kDigits - 5;
        c.require(ok, std::string("M_n = 1 for alpha = beta = ") + ab);
    }
    return c;
}

} // namespace

int main()
{
    const std::vector<std::function<Criterion()>> criteria{example1_rank20,      example1_corrections, example2_tables,
                                                           example3,             example1_coefficients, properties,
                                                           trends};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Criterion c{static_cast<int>(i + 1), "(not run)"};
        try {
            c = criteria[i]();
        } catch (const std::exception& e) {
            c.pass = false;
            c.notes.push_back(std::string("FAIL exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.1fs", secs);
        std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << timing << "]\n";
        for (const auto& n : c.notes)
            std::cout << "    " << n << "\n";
        failed += c.pass ? 0 : 1;
    }
    std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
