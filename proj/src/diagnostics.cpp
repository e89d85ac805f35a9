#include "fdm/diagnostics.hpp"

#include "fdm/errors.hpp"
#include "fdm/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fdm {

namespace {

Real to_real(const mpz_class& z)
{
    Real r;
    mpfr_set_z(r.get(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real from_index(std::size_t n) { return Real(static_cast<unsigned long>(n)); }

} // namespace

Real spectral_gap_M(std::size_t n, const OperatorParams& params)
{
    BaseSpectrum spectrum(params);
    const Real one(1L);
    Real m_n = one / (spectrum.eigenvalue(n + 1) - spectrum.eigenvalue(n));
    if (n > 0) {
        m_n = max(m_n, one / (spectrum.eigenvalue(n) - spectrum.eigenvalue(n - 1)));
        return m_n;
    }
    // λ_{-1} = λ_0 (α - s) β / (α (β + s)); infinite when α = 0 or β + s = 0.
    const Real& a = params.alpha;
    const Real& b = params.beta;
    const Real& s = params.s;
    if (a.is_zero() || (b + s).is_zero())
        return m_n;
    const Real lambda0 = spectrum.eigenvalue(0);
    const Real lambda_minus = lambda0 * (a - s) * b / (a * (b + s));
    if (lambda_minus < lambda0)
        m_n = max(m_n, one / (lambda0 - lambda_minus));
    return m_n;
}

Real spectral_gap_M_closed_form(std::size_t n, const OperatorParams& p)
{
    const Real nn = from_index(n);
    const Real one(1L);
    const Real na = nn + p.alpha;
    const Real c = Real(2L) * nn + p.alpha + p.beta;
    if (na.is_zero() || c.is_zero())
        throw DomainError("spectral_gap_M_closed_form: undefined at n = " + std::to_string(n));
    const Real lead = gamma(nn + p.beta + one) * gamma(na + one - p.s) /
                      (p.s * c * gamma(na) * gamma(nn + p.beta + p.s));
    const Real ratio = (nn + p.beta + one) * c * (na + one - p.s) /
                       ((c + Real(2L)) * na * (nn + p.beta + p.s));
    return lead * max(one, ratio);
}

// ---------------------------------------------------------------------------

std::vector<Real> real_roots_in(const PolynomialPotential& p, const Real& lo, const Real& hi)
{
    std::vector<Real> roots;
    const std::size_t deg = p.degree();
    if (deg == 0)
        return roots;
    if (deg == 1) {
        const Real x = -p.coeffs()[0] / p.coeffs()[1];
        if (x > lo && x < hi)
            roots.push_back(x);
        return roots;
    }
    // Between consecutive critical points p is monotone, so each sign change
    // brackets exactly one root.
    std::vector<Real> knots{lo};
    for (Real& c : real_roots_in(p.derivative(), lo, hi))
        knots.push_back(std::move(c));
    knots.push_back(hi);

    const long iterations = static_cast<long>(working_bits()) + 8;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        Real a = knots[i];
        Real b = knots[i + 1];
        Real fa = p(a);
        const Real fb = p(b);
        if (i > 0 && fa.is_zero()) {
            roots.push_back(a);
            continue;
        }
        if (fa.sign() * fb.sign() >= 0)
            continue;
        for (long it = 0; it < iterations; ++it) {
            Real mid = (a + b) / Real(2L);
            if (mid == a || mid == b)
                break;
            Real fm = p(mid);
            if (fm.is_zero()) {
                a = mid;
                b = mid;
                break;
            }
            if (fm.sign() == fa.sign()) {
                a = std::move(mid);
                fa = std::move(fm);
            } else {
                b = std::move(mid);
            }
        }
        roots.push_back((a + b) / Real(2L));
    }
    return roots;
}

Real potential_sup_norm(const PolynomialPotential& q)
{
    const Real lo(-1L);
    const Real hi(1L);
    Real best = max(abs(q(lo)), abs(q(hi)));
    for (const Real& x : real_roots_in(q.derivative(), lo, hi))
        best = max(best, abs(q(x)));
    return best;
}

// ---------------------------------------------------------------------------

mpz_class majorant_exact(std::size_t j)
{
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 2 * j, j);
    return binom / (j + 1);
}

Real majorant(std::size_t j) { return to_real(majorant_exact(j)); }

mpz_class double_factorial(long k)
{
    mpz_class out(1);
    if (k > 1)
        mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

namespace {

// 2 (2k-1)!! / (2k+2)!!, the shared shape of every bound below.
Real wallis_factor(long k) { return Real(2L) * to_real(double_factorial(2 * k - 1)) / to_real(double_factorial(2 * k + 2)); }

} // namespace

AprioriBounds apriori_bounds(std::size_t m, const Real& r_n, const Real& q_inf)
{
    const Real one(1L);
    if (r_n >= one)
        throw DivergenceError("apriori_bounds: r_n = " + r_n.to_scientific(6) + " >= 1");
    const long mm = static_cast<long>(m);
    const Real tail = one / (one - r_n);
    AprioriBounds b;
    b.eig_bound = q_inf * pow(r_n, mm) * wallis_factor(mm) * tail;
    b.fun_bound = pow(r_n, mm + 1) * wallis_factor(mm + 1) * tail;
    return b;
}

Real correction_norm_bound(std::size_t j, const Real& r_n)
{
    const long jj = static_cast<long>(j);
    return pow(r_n, jj) * wallis_factor(jj);
}

Real eigen_correction_bound(std::size_t j, const Real& r_n, const Real& q_inf)
{
    if (j == 0)
        throw DomainError("eigen_correction_bound: defined for j >= 1");
    const long jj = static_cast<long>(j);
    return q_inf * pow(r_n, jj - 1) * wallis_factor(jj - 1);
}

Real ConvergenceReport::eig_bound(std::size_t m) const { return apriori_bounds(m, r_n, q_inf).eig_bound; }

Real ConvergenceReport::fun_bound(std::size_t m) const { return apriori_bounds(m, r_n, q_inf).fun_bound; }

ConvergenceReport convergence_report(std::size_t n, const OperatorParams& params, const Real& q_inf)
{
    ConvergenceReport rep;
    rep.n = n;
    rep.M_n = spectral_gap_M(n, params);
    rep.q_inf = q_inf;
    rep.r_n = Real(4L) * q_inf * rep.M_n;
    rep.converges = rep.r_n < Real(1L);
    return rep;
}

Real coefficient_norm(const CoefficientWindow& coeffs, BaseSpectrum& spectrum)
{
    Real sum(0L);
    for (std::size_t i = 0; i < coeffs.values.size(); ++i) {
        const Real& a = coeffs.values[i];
        if (!a.is_zero())
            sum += a * a * spectrum.norm(coeffs.lo + i);
    }
    return sqrt(sum);
}

// ---------------------------------------------------------------------------

Real rayleigh_correction_oracle(std::size_t n, const OperatorParams& params, const PotentialSpec& q)
{
    const Real tolerance = pow10_neg(25);
    const Real gamma_n = norm_gamma(n, params.alpha, params.beta);
    const Real& a = params.alpha;
    const Real& b = params.beta;

    // (u_n^(0))² ω^{(-α,β)} = P_n² (1-x)^α (1+x)^β / γ_n
    auto density = [&](const Real& x, const Real& one_plus_x, const Real& one_minus_x) {
        const Real p = jacobi_poly_eval(n, a, b, x);
        return p * p * pow(one_minus_x, a) * pow(one_plus_x, b) / gamma_n;
    };

    if (const auto* poly = std::get_if<PolynomialPotential>(&q)) {
        if (poly->is_zero())
            return Real(0L);
        EndpointIntegrand f = [&](const Real& x, const Real& from_a, const Real& to_b) {
            return (*poly)(x) * density(x, from_a, to_b);
        };
        return tanh_sinh(f, Real(-1L), Real(1L), tolerance, 14).value;
    }
    // Step potential: the integrand vanishes on [-1, 0).
    EndpointIntegrand g = [&](const Real& x, const Real&, const Real& to_b) {
        return density(x, Real(1L) + x, to_b);
    };
    return tanh_sinh(g, Real(0L), Real(1L), tolerance, 14).value;
}

// ---------------------------------------------------------------------------

std::string to_string(GapTrend trend)
{
    switch (trend) {
    case GapTrend::diverging:
        return "diverging";
    case GapTrend::to_one:
        return "to 1";
    case GapTrend::to_zero:
        return "to 0";
    case GapTrend::indeterminate:
        break;
    }
    return "indeterminate";
}

GapTrend gap_limit_trend(const OperatorParams& params, std::size_t n_max)
{
    if (n_max < 20)
        throw DomainError("gap_limit_trend: n_max must be >= 20");
    const std::size_t n_lo = n_max / 2;
    BaseSpectrum spectrum(params);
    const Real two_s = Real(2L) * params.s;

    std::vector<Real> v;
    for (std::size_t n = n_lo; n <= n_max; ++n) {
        const Real back = Real(1L) / (spectrum.eigenvalue(n) - spectrum.eigenvalue(n - 1));
        const Real fwd = Real(1L) / (spectrum.eigenvalue(n + 1) - spectrum.eigenvalue(n));
        v.push_back(two_s * max(back, fwd));
    }
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1])
            increasing = false;
        if (v[i] > v[i - 1])
            decreasing = false;
    }
    // Empirical exponent of v ~ n^ρ across the tail.
    const double rho = (log(v.back()) - log(v.front())).to_double() /
                       std::log(static_cast<double>(n_max) / static_cast<double>(n_lo));
    const double last = v.back().to_double();

    constexpr double kFlat = 0.05;
    if (std::abs(rho) < kFlat && std::abs(last - 1.0) < kFlat)
        return GapTrend::to_one;
    if (rho >= kFlat && increasing)
        return GapTrend::diverging;
    if (rho <= -kFlat && decreasing)
        return GapTrend::to_zero;
    return GapTrend::indeterminate;
}

} // namespace fdm
