#pragma once

// Classical Jacobi polynomials, generalized Jacobi functions and the base
// spectrum of the fractional Jacobi-type operator.

#include "fdm/numerics.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace fdm {

/// Exponents (α, β) and fractional order s of the operator.
struct OperatorParams {
    Real alpha;
    Real beta;
    Real s;

    /// Validates 0 < s < 1, β > -1 and α > s - 1; throws DomainError otherwise.
    static OperatorParams make(Real alpha, Real beta, Real s);

    bool negative_alpha_branch() const { return alpha.sign() < 0; }
};

/// (1-x)^a (1+x)^b on [-1, 1]; DomainError outside or at a singular endpoint.
Real jacobi_weight(const Real& x, const Real& a_exp, const Real& b_exp);

/// P_n^{(α,β)}(x) by the three-term recurrence.
Real jacobi_poly_eval(std::size_t n, const Real& alpha, const Real& beta, const Real& x);

/// P_0..P_{n_max} at x.
std::vector<Real> jacobi_poly_all(std::size_t n_max, const Real& alpha, const Real& beta, const Real& x);

/// Generalized Jacobi function (1-x)^α P_n^{(α,β)}(x).
Real gjf_eval(std::size_t n, const OperatorParams& params, const Real& x);

/// γ_n^{(a,b)} = ∫ P_n² (1-x)^a (1+x)^b dx, telescoped from n = 0.
Real norm_gamma(std::size_t n, const Real& a_exp, const Real& b_exp);

/// γ_n^{(a,b)} straight from its gamma-function quotient. Used as a cross-check.
Real norm_gamma_direct(std::size_t n, const Real& a_exp, const Real& b_exp);

/// λ_n^(0), telescoped from λ_0^(0) so only four gamma calls happen per sweep.
Real base_eigenvalue(std::size_t n, const OperatorParams& params);

/// λ_n^(0) = Γ(n+α+1)Γ(n+β+s+1) / (Γ(n+α−s+1)Γ(n+β+1)) evaluated directly.
Real base_eigenvalue_direct(std::size_t n, const OperatorParams& params);

/// Lazily extended tables of λ_k^(0) and γ_k^{(α,β)}. Not thread-safe; use one per run.
class BaseSpectrum {
public:
    explicit BaseSpectrum(OperatorParams params);

    Real eigenvalue(std::size_t n);
    Real norm(std::size_t n);
    const OperatorParams& params() const { return params_; }

private:
    void extend_eigenvalues(std::size_t n);
    void extend_norms(std::size_t n);

    OperatorParams params_;
    std::vector<Real> eigenvalues_;
    std::vector<Real> norms_;
};

/// Coefficients of x^r P_n^{(α,β)} in the Jacobi basis: entries[k - k_lo]
/// multiplies P_k for k in [max(n-r, 0), n+r].
struct MultiplicationTable {
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t k_lo = 0;
    std::vector<Real> entries;

    std::size_t k_hi() const { return k_lo + entries.size() - 1; }
    /// Zero outside the stored range.
    Real coefficient(std::size_t k) const;
};

/// Memoized multiplication tables for one (α, β). Not thread-safe.
class MultiplicationCache {
public:
    MultiplicationCache(Real alpha, Real beta);

    const MultiplicationTable& get(std::size_t n, std::size_t r);

private:
    MultiplicationTable build_linear(std::size_t n) const;

    Real alpha_;
    Real beta_;
    std::map<std::pair<std::size_t, std::size_t>, MultiplicationTable> tables_;
};

MultiplicationTable multiplication_coeffs(std::size_t n, std::size_t r, const Real& alpha, const Real& beta);

} // namespace fdm
