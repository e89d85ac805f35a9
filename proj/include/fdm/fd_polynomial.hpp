#pragma once

// Coefficient recursion of the FD-method for polynomial potentials
// q(x) = c_0 + c_1 x + ... + c_r x^r.
//
// The step-j eigenfunction correction is a finite combination of
// generalized Jacobi functions (1-x)^α P_k^{(α,β)}, k in
// [max(0, n - r j), n + r j]; each step needs only the previous
// coefficient tables, the base spectrum and the x^l P_k multiplication
// tables.

#include "fdm/jacobi.hpp"
#include "fdm/numerics.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fdm {

class PolynomialPotential {
public:
    PolynomialPotential() { coeffs_.emplace_back(0L); }
    /// Trailing zero coefficients are dropped; an all-zero list is the zero potential.
    explicit PolynomialPotential(std::vector<Real> coeffs);

    std::size_t degree() const { return coeffs_.size() - 1; }
    const std::vector<Real>& coeffs() const { return coeffs_; }
    bool is_zero() const { return degree() == 0 && coeffs_[0].is_zero(); }

    Real operator()(const Real& x) const;
    PolynomialPotential derivative() const;

private:
    std::vector<Real> coeffs_;
};

/// Dense coefficients for the index range [lo, lo + values.size()).
struct CoefficientWindow {
    std::size_t lo = 0;
    std::vector<Real> values;

    bool empty() const { return values.empty(); }
    std::size_t hi() const { return lo + values.size() - 1; }
    bool contains(std::size_t k) const { return !values.empty() && k >= lo && k <= hi(); }
    /// Zero outside the window.
    Real at(std::size_t k) const;
};

enum class Normalization { normalized, leading_one };

/// Step-j correction for eigenpair n: coefficients a_k^(j) and λ_n^(0..j).
struct CorrectionState {
    std::size_t n = 0;
    std::size_t j = 0;
    CoefficientWindow coeffs;
    std::vector<Real> lambdas;
    Real leading; // a_n^(0)
};

/// Rank-m approximation: the per-step corrections and their sums.
struct EigenpairApproximation {
    std::size_t n = 0;
    std::size_t m = 0;
    Real leading;
    Real lambda_sum;
    std::vector<Real> lambdas;                 // λ_n^(j), j = 0..m
    std::vector<CoefficientWindow> corrections; // a_k^(j), j = 0..m
    std::vector<Real> correction_norms;        // ‖u_n^(j)‖
    std::vector<Real> solvability_residuals;   // one per step j = 1..m
};

/// a_n^(0): γ_n^{-1/2} when normalized, 1 otherwise.
Real leading_coefficient(std::size_t n, BaseSpectrum& spectrum, Normalization norm);

CorrectionState init_state(std::size_t n, BaseSpectrum& spectrum, const Real& leading);
CorrectionState init_state(std::size_t n, const OperatorParams& params, Normalization norm = Normalization::normalized);

/// Jacobi-basis coefficients of q · Σ a_k P_k.
CoefficientWindow multiply_potential(const CoefficientWindow& u, const PolynomialPotential& q,
                                     MultiplicationCache& cache);

/// λ_n^(j+1) from the solvability condition.
Real eigenvalue_correction(const CorrectionState& state, const PolynomialPotential& q, MultiplicationCache& cache);

/// Produces step j+1 from the full history of steps 0..j.
/// Throws SingularGapError if some λ_m^(0) in the new window is too close to λ_n^(0).
CorrectionState advance(std::span<const CorrectionState> history, const PolynomialPotential& q,
                        BaseSpectrum& spectrum, MultiplicationCache& cache);

/// Coefficient of the n-th basis function in F_n^(j+1) given λ_n^(j+1).
Real solvability_residual(const CorrectionState& state, const PolynomialPotential& q, const Real& lambda_next,
                          MultiplicationCache& cache);

EigenpairApproximation run(std::size_t n, std::size_t m, const OperatorParams& params, const PolynomialPotential& q,
                           Normalization norm = Normalization::normalized);

/// Same as above with an explicit a_n^(0).
EigenpairApproximation run_with_leading(std::size_t n, std::size_t m, const OperatorParams& params,
                                        const PolynomialPotential& q, const Real& leading);

/// Σ_j Σ_k a_k^(j) (1-x)^α P_k^{(α,β)}(x).
Real eval_eigenfunction(const EigenpairApproximation& approx, const OperatorParams& params, const Real& x);

/// Absolute threshold below which |λ_m^(0) - λ_n^(0)| is treated as degenerate.
Real singular_gap_threshold(const Real& lambda_n);

} // namespace fdm
