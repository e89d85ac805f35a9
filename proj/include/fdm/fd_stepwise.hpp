#pragma once

// FD-method for general potentials on the Legendre branch (α = β = 0).
//
// The potential enters only through its overlap coefficients
//   b_{s,t} = ((2t+1)/2) ∫ q P_s P_t dx,
// so q · Σ a_t P_t = Σ_s (Σ_t a_t b_{t,s}) P_s. The infinite sums of the
// exact recursion are truncated at index N.

#include "fdm/diagnostics.hpp"
#include "fdm/fd_polynomial.hpp"
#include "fdm/jacobi.hpp"
#include "fdm/numerics.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fdm {

/// Trigonometric closed form for the step overlaps, an alternative to exact
/// integration. It matches the reference values in tests/golden/example3.txt.
struct ClosedFormStep {};

/// Text file of raw integrals "s t I_{s,t}" with I_{s,t} = ∫ q P_s P_t dx.
struct OverlapFile {
    std::string path;
};

using OverlapSource = std::variant<StepPotential, ClosedFormStep, OverlapFile>;

class OverlapMatrix {
public:
    OverlapMatrix() = default;
    /// Zero matrix of size (N+1) x (N+1).
    explicit OverlapMatrix(std::size_t N);

    std::size_t size() const { return N_; }
    const Real& at(std::size_t s, std::size_t t) const { return entries_[s * (N_ + 1) + t]; }
    Real& at(std::size_t s, std::size_t t) { return entries_[s * (N_ + 1) + t]; }

    /// Largest |b_{s,t}/(2t+1) - b_{t,s}/(2s+1)| relative to the entries involved.
    Real symmetry_defect() const;

private:
    std::size_t N_ = 0;
    std::vector<Real> entries_;
};

/// ∫_0^1 P_s P_t dx exactly, from the rational monomial coefficients.
mpq_class step_integral_exact(std::size_t s, std::size_t t);

/// b_{s,t} for q = (sgn x + 1)/2 from exact integration.
Real step_potential_overlap(std::size_t s, std::size_t t);

/// b_{s,t} from the gamma-ratio closed form, with the diagonal 1/2 from parity.
Real closed_form_step_overlap(std::size_t s, std::size_t t);

/// Reads an overlap file into raw integrals for 0 <= s, t <= N; indices
/// beyond N are skipped. Throws IoError, or FormatError naming the line.
std::vector<Real> read_overlap_integrals(const std::string& path, std::size_t N);

/// Assembles b_{s,t} for 0 <= s, t <= N. Throws SymmetryError if the
/// scaled-symmetry defect exceeds 10^{-(digits-10)}.
OverlapMatrix build_overlap_matrix(const OverlapSource& source, std::size_t N);

struct GeneralState {
    std::size_t n = 0;
    std::size_t j = 0;
    std::size_t N = 0;
    std::vector<Real> coeffs; // a_{n,s}^(j), s = 0..N
    std::vector<Real> lambdas;
    Real leading;
};

GeneralState general_init(std::size_t n, std::size_t N, BaseSpectrum& spectrum, const Real& leading);

/// Step j+1 from the history 0..j using the top-left (N+1) block of B.
GeneralState general_advance(std::span<const GeneralState> history, const OverlapMatrix& B, BaseSpectrum& spectrum);

struct GeneralApproximation {
    EigenpairApproximation approx;
    std::size_t N = 0;
    /// |λ̄_n^m(N) - λ̄_n^m(N/2)|; empty when N/2 < n + 1.
    std::optional<Real> truncation_sensitivity;
};

/// Requires α = β = 0, N >= n + 1 and N <= B.size().
GeneralApproximation run_general(std::size_t n, std::size_t m, std::size_t N, const OverlapMatrix& B,
                                 const OperatorParams& params, Normalization norm = Normalization::leading_one);

/// The rank-m run alone, without the sensitivity rerun.
EigenpairApproximation run_general_once(std::size_t n, std::size_t m, std::size_t N, const OverlapMatrix& B,
                                        const OperatorParams& params, Normalization norm);

} // namespace fdm
