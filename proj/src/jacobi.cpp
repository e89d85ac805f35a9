#include "fdm/jacobi.hpp"

#include "fdm/errors.hpp"

#include <algorithm>

namespace fdm {

OperatorParams OperatorParams::make(Real alpha, Real beta, Real s)
{
    if (!(s > Real(0L) && s < Real(1L)))
        throw DomainError("operator params: s must lie in (0, 1), got " + s.to_fixed_significant(12));
    if (!(beta > Real(-1L)))
        throw DomainError("operator params: beta must exceed -1, got " + beta.to_fixed_significant(12));
    if (!(alpha > s - Real(1L)))
        throw DomainError("operator params: alpha must exceed s - 1, got " + alpha.to_fixed_significant(12));
    return OperatorParams{std::move(alpha), std::move(beta), std::move(s)};
}

Real jacobi_weight(const Real& x, const Real& a_exp, const Real& b_exp)
{
    const Real one(1L);
    if (x < Real(-1L) || x > one)
        throw DomainError("jacobi_weight: x outside [-1, 1]");
    const Real left = one - x;
    const Real right = one + x;
    if ((left.is_zero() && a_exp.sign() < 0) || (right.is_zero() && b_exp.sign() < 0))
        throw DomainError("jacobi_weight: singular endpoint");
    return pow(left, a_exp) * pow(right, b_exp);
}

std::vector<Real> jacobi_poly_all(std::size_t n_max, const Real& alpha, const Real& beta, const Real& x)
{
    std::vector<Real> p;
    p.reserve(n_max + 1);
    p.emplace_back(1L);
    if (n_max == 0)
        return p;
    const Real ab = alpha + beta;
    p.push_back(alpha + Real(1L) + (ab + Real(2L)) * (x - Real(1L)) / Real(2L));
    const Real a2b2 = alpha * alpha - beta * beta;
    for (std::size_t k = 1; k < n_max; ++k) {
        const Real kk(static_cast<unsigned long>(k));
        const Real c = Real(2L) * kk + ab;
        const Real lead = (c + Real(1L)) * ((c + Real(2L)) * c * x + a2b2);
        const Real trail = Real(2L) * (kk + alpha) * (kk + beta) * (c + Real(2L));
        const Real den = Real(2L) * (kk + Real(1L)) * (kk + ab + Real(1L)) * c;
        p.push_back((lead * p[k] - trail * p[k - 1]) / den);
    }
    return p;
}

Real jacobi_poly_eval(std::size_t n, const Real& alpha, const Real& beta, const Real& x)
{
    return std::move(jacobi_poly_all(n, alpha, beta, x).back());
}

Real gjf_eval(std::size_t n, const OperatorParams& params, const Real& x)
{
    const Real one(1L);
    if (x <= Real(-1L) || x > one)
        throw DomainError("gjf_eval: x outside (-1, 1]");
    const Real left = one - x;
    if (left.is_zero()) {
        if (params.alpha.sign() < 0)
            throw DomainError("gjf_eval: x = 1 is singular for negative alpha");
        if (params.alpha.sign() > 0)
            return Real(0L);
    }
    return pow(left, params.alpha) * jacobi_poly_eval(n, params.alpha, params.beta, x);
}

namespace {

Real norm_gamma_zero(const Real& a, const Real& b)
{
    const Real one(1L);
    return pow(Real(2L), a + b + one) * gamma(a + one) * gamma(b + one) / gamma(a + b + Real(2L));
}

// γ_k / γ_{k-1}
Real norm_ratio(std::size_t k, const Real& a, const Real& b)
{
    const Real kk(static_cast<unsigned long>(k));
    if (k == 1)
        return (Real(1L) + a) * (Real(1L) + b) / (Real(3L) + a + b);
    const Real c = Real(2L) * kk + a + b;
    return (kk + a) * (kk + b) * (c - Real(1L)) / ((c + Real(1L)) * kk * (kk + a + b));
}

Real lambda_zero(const OperatorParams& p)
{
    const Real one(1L);
    return gamma(p.alpha + one) * gamma(p.beta + p.s + one) / (gamma(p.alpha - p.s + one) * gamma(p.beta + one));
}

// λ_k / λ_{k-1}
Real lambda_ratio(std::size_t k, const OperatorParams& p)
{
    const Real kk(static_cast<unsigned long>(k));
    return (p.alpha + kk) * (p.beta + p.s + kk) / ((p.alpha - p.s + kk) * (p.beta + kk));
}

} // namespace

Real norm_gamma(std::size_t n, const Real& a_exp, const Real& b_exp)
{
    Real g = norm_gamma_zero(a_exp, b_exp);
    for (std::size_t k = 1; k <= n; ++k)
        g *= norm_ratio(k, a_exp, b_exp);
    return g;
}

Real norm_gamma_direct(std::size_t n, const Real& a, const Real& b)
{
    const Real nn(static_cast<unsigned long>(n));
    const Real one(1L);
    if (n == 0)
        return norm_gamma_zero(a, b);
    return pow(Real(2L), a + b + one) * gamma(nn + a + one) * gamma(nn + b + one) /
           ((Real(2L) * nn + a + b + one) * gamma(nn + one) * gamma(nn + a + b + one));
}

Real base_eigenvalue(std::size_t n, const OperatorParams& params)
{
    Real lambda = lambda_zero(params);
    for (std::size_t k = 1; k <= n; ++k)
        lambda *= lambda_ratio(k, params);
    return lambda;
}

Real base_eigenvalue_direct(std::size_t n, const OperatorParams& p)
{
    const Real nn(static_cast<unsigned long>(n));
    const Real one(1L);
    return gamma(nn + p.alpha + one) * gamma(nn + p.beta + p.s + one) /
           (gamma(nn + p.alpha - p.s + one) * gamma(nn + p.beta + one));
}

// ---------------------------------------------------------------------------

BaseSpectrum::BaseSpectrum(OperatorParams params) : params_(std::move(params)) {}

void BaseSpectrum::extend_eigenvalues(std::size_t n)
{
    if (eigenvalues_.empty())
        eigenvalues_.push_back(lambda_zero(params_));
    while (eigenvalues_.size() <= n) {
        const std::size_t k = eigenvalues_.size();
        eigenvalues_.push_back(eigenvalues_.back() * lambda_ratio(k, params_));
    }
}

void BaseSpectrum::extend_norms(std::size_t n)
{
    if (norms_.empty())
        norms_.push_back(norm_gamma_zero(params_.alpha, params_.beta));
    while (norms_.size() <= n) {
        const std::size_t k = norms_.size();
        norms_.push_back(norms_.back() * norm_ratio(k, params_.alpha, params_.beta));
    }
}

Real BaseSpectrum::eigenvalue(std::size_t n)
{
    extend_eigenvalues(n);
    return eigenvalues_[n];
}

Real BaseSpectrum::norm(std::size_t n)
{
    extend_norms(n);
    return norms_[n];
}

// ---------------------------------------------------------------------------

Real MultiplicationTable::coefficient(std::size_t k) const
{
    if (k < k_lo || k > k_hi())
        return Real(0L);
    return entries[k - k_lo];
}

MultiplicationCache::MultiplicationCache(Real alpha, Real beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {}

// x P_n = b_{3,n,1} P_{n-1} + b_{2,n,1} P_n + b_{1,n,1} P_{n+1}
MultiplicationTable MultiplicationCache::build_linear(std::size_t n) const
{
    const Real& a = alpha_;
    const Real& b = beta_;
    const Real ab = a + b;
    MultiplicationTable t;
    t.n = n;
    t.r = 1;
    if (n == 0) {
        // The general expressions are 0/0 at n = 0 when α+β ∈ {0, -1}.
        t.k_lo = 0;
        t.entries.push_back((b - a) / (ab + Real(2L)));
        t.entries.push_back(Real(2L) / (ab + Real(2L)));
        return t;
    }
    const Real nn(static_cast<unsigned long>(n));
    const Real c = Real(2L) * nn + ab;
    t.k_lo = n - 1;
    t.entries.push_back(Real(2L) * (nn + a) * (nn + b) / ((c + Real(1L)) * c));
    t.entries.push_back((b * b - a * a) / (c * (c + Real(2L))));
    t.entries.push_back(Real(2L) * (nn + Real(1L)) * (nn + ab + Real(1L)) / ((c + Real(1L)) * (c + Real(2L))));
    return t;
}

const MultiplicationTable& MultiplicationCache::get(std::size_t n, std::size_t r)
{
    const auto key = std::make_pair(n, r);
    if (auto it = tables_.find(key); it != tables_.end())
        return it->second;

    MultiplicationTable t;
    if (r == 0) {
        t.n = n;
        t.r = 0;
        t.k_lo = n;
        t.entries.emplace_back(1L);
    } else if (r == 1) {
        t = build_linear(n);
    } else {
        // x^r P_n = x · (x^{r-1} P_n): compose with the r = 1 tables.
        const MultiplicationTable& prev = get(n, r - 1);
        t.n = n;
        t.r = r;
        t.k_lo = n >= r ? n - r : 0;
        const std::size_t k_hi = n + r;
        t.entries.resize(k_hi - t.k_lo + 1);
        for (std::size_t k = t.k_lo; k <= k_hi; ++k) {
            const std::size_t t_lo = std::max({k > 0 ? k - 1 : 0, n + 1 > r ? n + 1 - r : std::size_t{0}});
            const std::size_t t_hi = std::min(k + 1, n + r - 1);
            Real sum(0L);
            for (std::size_t tt = t_lo; tt <= t_hi; ++tt) {
                const Real& outer = prev.coefficient(tt);
                if (outer.is_zero())
                    continue;
                sum += outer * get(tt, 1).coefficient(k);
            }
            t.entries[k - t.k_lo] = std::move(sum);
        }
    }
    return tables_.emplace(key, std::move(t)).first->second;
}

MultiplicationTable multiplication_coeffs(std::size_t n, std::size_t r, const Real& alpha, const Real& beta)
{
    MultiplicationCache cache(alpha, beta);
    return cache.get(n, r);
}

} // namespace fdm
