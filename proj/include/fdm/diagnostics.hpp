#pragma once

// Convergence diagnostics: spectral gaps, progression ratios, majorants,
// a-priori error bounds and the quadrature oracle for first corrections.

#include "fdm/fd_polynomial.hpp"
#include "fdm/jacobi.hpp"
#include "fdm/numerics.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

namespace fdm {

/// M_n = max of the reciprocal gaps to the neighbouring base eigenvalues.
///
/// For n = 0 the lower neighbour is λ_{-1}, the continuation of the base
/// eigenvalue formula to n = -1, included only when it is finite and lies
/// below λ_0 (it vanishes, for instance, when β = 0).
Real spectral_gap_M(std::size_t n, const OperatorParams& params);

/// Same quantity from the gamma-function closed form; n = 0 is only defined
/// when α ≠ 0 and α + β ≠ 0.
Real spectral_gap_M_closed_form(std::size_t n, const OperatorParams& params);

/// max over [-1, 1] of |q|, from the endpoints and the isolated real roots of q'.
Real potential_sup_norm(const PolynomialPotential& q);

/// Real roots of p inside (lo, hi), ascending.
std::vector<Real> real_roots_in(const PolynomialPotential& p, const Real& lo, const Real& hi);

/// Majorant sequence Ū_j (Catalan numbers), exact.
mpz_class majorant_exact(std::size_t j);
Real majorant(std::size_t j);

/// k!! with (-1)!! = 0!! = 1.
mpz_class double_factorial(long k);

struct AprioriBounds {
    Real eig_bound;
    Real fun_bound;
};

/// |λ_n - λ̄_n^m| and ‖u_n - ū_n^m‖ bounds. Throws DivergenceError if r_n >= 1.
AprioriBounds apriori_bounds(std::size_t m, const Real& r_n, const Real& q_inf);

/// Bound on ‖u_n^(j)‖ under the normalized convention: r^j · 2(2j-1)!!/(2j+2)!!.
Real correction_norm_bound(std::size_t j, const Real& r_n);

/// Bound on |λ_n^(j)| for j >= 1: q_inf · r^(j-1) · 2(2j-3)!!/(2j)!!.
Real eigen_correction_bound(std::size_t j, const Real& r_n, const Real& q_inf);

struct ConvergenceReport {
    std::size_t n = 0;
    Real M_n;
    Real q_inf;
    Real r_n;
    bool converges = false;

    /// Finite only when converges; DivergenceError otherwise.
    Real eig_bound(std::size_t m) const;
    Real fun_bound(std::size_t m) const;
};

ConvergenceReport convergence_report(std::size_t n, const OperatorParams& params, const Real& q_inf);

/// sqrt(Σ a_k² γ_k^{(α,β)}).
Real coefficient_norm(const CoefficientWindow& coeffs, BaseSpectrum& spectrum);

/// The step function (sgn(x) + 1) / 2.
struct StepPotential {};

using PotentialSpec = std::variant<PolynomialPotential, StepPotential>;

/// ∫ q (u_n^(0))² ω^{(-α,β)} dx with normalized u_n^(0), by tanh-sinh
/// quadrature to 1e-25 with the step discontinuity split at 0.
/// Throws QuadratureError if the tolerance is not reached.
Real rayleigh_correction_oracle(std::size_t n, const OperatorParams& params, const PotentialSpec& q);

enum class GapTrend { diverging, to_one, to_zero, indeterminate };

std::string to_string(GapTrend trend);

/// Classifies 2s·M_n over n in [n_max/2, n_max] by its tail trend.
GapTrend gap_limit_trend(const OperatorParams& params, std::size_t n_max);

} // namespace fdm
