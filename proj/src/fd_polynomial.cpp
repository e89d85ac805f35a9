#include "fdm/fd_polynomial.hpp"

#include "fdm/diagnostics.hpp"
#include "fdm/errors.hpp"

#include <algorithm>

namespace fdm {

PolynomialPotential::PolynomialPotential(std::vector<Real> coeffs) : coeffs_(std::move(coeffs))
{
    while (coeffs_.size() > 1 && coeffs_.back().is_zero())
        coeffs_.pop_back();
    if (coeffs_.empty())
        coeffs_.emplace_back(0L);
}

Real PolynomialPotential::operator()(const Real& x) const
{
    Real acc(0L);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

PolynomialPotential PolynomialPotential::derivative() const
{
    if (coeffs_.size() == 1)
        return PolynomialPotential{};
    std::vector<Real> d;
    d.reserve(coeffs_.size() - 1);
    for (std::size_t l = 1; l < coeffs_.size(); ++l)
        d.push_back(coeffs_[l] * Real(static_cast<unsigned long>(l)));
    return PolynomialPotential(std::move(d));
}

Real CoefficientWindow::at(std::size_t k) const
{
    if (!contains(k))
        return Real(0L);
    return values[k - lo];
}

Real leading_coefficient(std::size_t n, BaseSpectrum& spectrum, Normalization norm)
{
    if (norm == Normalization::leading_one)
        return Real(1L);
    return Real(1L) / sqrt(spectrum.norm(n));
}

CorrectionState init_state(std::size_t n, BaseSpectrum& spectrum, const Real& leading)
{
    if (leading.is_zero())
        throw DomainError("init_state: leading coefficient must be non-zero");
    CorrectionState state;
    state.n = n;
    state.j = 0;
    state.coeffs.lo = n;
    state.coeffs.values.push_back(leading);
    state.lambdas.push_back(spectrum.eigenvalue(n));
    state.leading = leading;
    return state;
}

CorrectionState init_state(std::size_t n, const OperatorParams& params, Normalization norm)
{
    BaseSpectrum spectrum(params);
    return init_state(n, spectrum, leading_coefficient(n, spectrum, norm));
}

CoefficientWindow multiply_potential(const CoefficientWindow& u, const PolynomialPotential& q,
                                     MultiplicationCache& cache)
{
    CoefficientWindow out;
    if (u.empty())
        return out;
    const std::size_t r = q.degree();
    out.lo = u.lo >= r ? u.lo - r : 0;
    out.values.resize(u.hi() + r - out.lo + 1);
    const auto& c = q.coeffs();
    for (std::size_t k = u.lo; k <= u.hi(); ++k) {
        const Real& a = u.values[k - u.lo];
        if (a.is_zero())
            continue;
        for (std::size_t l = 0; l <= r; ++l) {
            if (c[l].is_zero())
                continue;
            const MultiplicationTable& table = cache.get(k, l);
            const Real scale = c[l] * a;
            for (std::size_t i = 0; i < table.entries.size(); ++i)
                out.values[table.k_lo + i - out.lo] += scale * table.entries[i];
        }
    }
    return out;
}

Real eigenvalue_correction(const CorrectionState& state, const PolynomialPotential& q, MultiplicationCache& cache)
{
    const CoefficientWindow g = multiply_potential(state.coeffs, q, cache);
    return g.at(state.n) / state.leading;
}

Real solvability_residual(const CorrectionState& state, const PolynomialPotential& q, const Real& lambda_next,
                          MultiplicationCache& cache)
{
    const CoefficientWindow g = multiply_potential(state.coeffs, q, cache);
    return lambda_next * state.leading - g.at(state.n);
}

Real singular_gap_threshold(const Real& lambda_n)
{
    return pow10_neg(static_cast<long>(working_digits() / 2)) * max(Real(1L), abs(lambda_n));
}

CorrectionState advance(std::span<const CorrectionState> history, const PolynomialPotential& q,
                        BaseSpectrum& spectrum, MultiplicationCache& cache)
{
    if (history.empty())
        throw DomainError("advance: empty history");
    const CorrectionState& cur = history.back();
    const std::size_t n = cur.n;
    const std::size_t j = cur.j;
    const std::size_t r = q.degree();

    const CoefficientWindow g = multiply_potential(cur.coeffs, q, cache);
    const Real lambda_next = g.at(n) / cur.leading;

    CorrectionState next;
    next.n = n;
    next.j = j + 1;
    next.leading = cur.leading;
    next.lambdas = cur.lambdas;
    next.lambdas.push_back(lambda_next);

    const std::size_t inner_lo = n >= r * j ? n - r * j : 0;
    const std::size_t inner_hi = n + r * j;
    const std::size_t lo = n >= r * (j + 1) ? n - r * (j + 1) : 0;
    const std::size_t hi = n + r * (j + 1);
    next.coeffs.lo = lo;
    next.coeffs.values.resize(hi - lo + 1);

    const Real lambda_n = spectrum.eigenvalue(n);
    const Real threshold = singular_gap_threshold(lambda_n);

    for (std::size_t m = lo; m <= hi; ++m) {
        if (m == n)
            continue; // a_n^(j+1) = 0
        const Real gap = spectrum.eigenvalue(m) - lambda_n;
        if (abs(gap) < threshold)
            throw SingularGapError("advance: base eigenvalues " + std::to_string(m) + " and " + std::to_string(n) +
                                   " are not separated at working precision");
        Real rhs = -g.at(m);
        if (m >= inner_lo && m <= inner_hi) {
            // Interior band: earlier corrections contribute through λ_n^(j+1-p) a_m^(p).
            const std::size_t dist = m > n ? m - n : n - m;
            const std::size_t p_lo = std::max<std::size_t>(1, (dist + r - 1) / r);
            const std::size_t p_hi = std::min(j, n + r * j);
            for (std::size_t p = p_lo; p <= p_hi; ++p) {
                const Real a = history[p].coeffs.at(m);
                if (!a.is_zero())
                    rhs += cur.lambdas[j + 1 - p] * a;
            }
        }
        next.coeffs.values[m - lo] = rhs / gap;
    }
    return next;
}

EigenpairApproximation run_with_leading(std::size_t n, std::size_t m, const OperatorParams& params,
                                        const PolynomialPotential& q, const Real& leading)
{
    BaseSpectrum spectrum(params);
    MultiplicationCache cache(params.alpha, params.beta);

    std::vector<CorrectionState> history;
    history.reserve(m + 1);
    history.push_back(init_state(n, spectrum, leading));

    EigenpairApproximation approx;
    approx.n = n;
    approx.m = m;
    approx.leading = leading;
    for (std::size_t j = 0; j < m; ++j) {
        CorrectionState next = advance(history, q, spectrum, cache);
        approx.solvability_residuals.push_back(
            solvability_residual(history.back(), q, next.lambdas.back(), cache));
        history.push_back(std::move(next));
    }

    approx.lambdas = history.back().lambdas;
    approx.lambda_sum = Real(0L);
    for (const Real& l : approx.lambdas)
        approx.lambda_sum += l;
    for (CorrectionState& s : history) {
        approx.correction_norms.push_back(coefficient_norm(s.coeffs, spectrum));
        approx.corrections.push_back(std::move(s.coeffs));
    }
    return approx;
}

EigenpairApproximation run(std::size_t n, std::size_t m, const OperatorParams& params, const PolynomialPotential& q,
                           Normalization norm)
{
    BaseSpectrum spectrum(params);
    return run_with_leading(n, m, params, q, leading_coefficient(n, spectrum, norm));
}

Real eval_eigenfunction(const EigenpairApproximation& approx, const OperatorParams& params, const Real& x)
{
    std::size_t k_max = 0;
    for (const auto& w : approx.corrections)
        if (!w.empty())
            k_max = std::max(k_max, w.hi());
    std::vector<Real> total(k_max + 1);
    for (const auto& w : approx.corrections)
        for (std::size_t i = 0; i < w.values.size(); ++i)
            total[w.lo + i] += w.values[i];

    const Real one(1L);
    if (x <= Real(-1L) || x > one)
        throw DomainError("eval_eigenfunction: x outside (-1, 1]");
    const Real left = one - x;
    if (left.is_zero()) {
        if (params.alpha.sign() < 0)
            throw DomainError("eval_eigenfunction: x = 1 is singular for negative alpha");
        if (params.alpha.sign() > 0)
            return Real(0L);
    }
    const std::vector<Real> p = jacobi_poly_all(k_max, params.alpha, params.beta, x);
    Real sum(0L);
    for (std::size_t k = 0; k <= k_max; ++k)
        if (!total[k].is_zero())
            sum += total[k] * p[k];
    return pow(left, params.alpha) * sum;
}

} // namespace fdm
