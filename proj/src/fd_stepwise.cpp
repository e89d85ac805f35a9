#include "fdm/fd_stepwise.hpp"

#include "fdm/errors.hpp"

#include <fstream>
#include <sstream>

namespace fdm {

namespace {

Real to_real(const mpq_class& q)
{
    Real r;
    mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

// Monomial coefficients of P_0..P_{k_max}, from
// (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
std::vector<std::vector<mpq_class>> legendre_monomials(std::size_t k_max)
{
    std::vector<std::vector<mpq_class>> P;
    P.push_back({mpq_class(1)});
    if (k_max == 0)
        return P;
    P.push_back({mpq_class(0), mpq_class(1)});
    for (std::size_t k = 1; k < k_max; ++k) {
        std::vector<mpq_class> next(k + 2);
        const mpq_class up(static_cast<long>(2 * k + 1), static_cast<long>(k + 1));
        const mpq_class down(static_cast<long>(k), static_cast<long>(k + 1));
        for (std::size_t i = 0; i < P[k].size(); ++i)
            next[i + 1] += up * P[k][i];
        for (std::size_t i = 0; i < P[k - 1].size(); ++i)
            next[i] -= down * P[k - 1][i];
        for (auto& c : next)
            c.canonicalize();
        P.push_back(std::move(next));
    }
    return P;
}

// μ[i] = ∫_0^1 x^i P_t dx for i = 0..i_max.
std::vector<mpq_class> half_moments(const std::vector<mpq_class>& pt, std::size_t i_max)
{
    std::vector<mpq_class> mu(i_max + 1);
    for (std::size_t i = 0; i <= i_max; ++i) {
        mpq_class acc(0);
        for (std::size_t j = 0; j < pt.size(); ++j)
            if (sgn(pt[j]) != 0)
                acc += pt[j] / mpq_class(static_cast<long>(i + j + 1));
        mu[i] = acc;
    }
    return mu;
}

mpq_class dot_moments(const std::vector<mpq_class>& ps, const std::vector<mpq_class>& mu)
{
    mpq_class acc(0);
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (sgn(ps[i]) != 0)
            acc += ps[i] * mu[i];
    return acc;
}

// sin(kπ/2) and cos(kπ/2) are exact integers.
long sin_quarter(std::size_t k) { return k % 2 == 0 ? 0 : (k % 4 == 1 ? 1 : -1); }
long cos_quarter(std::size_t k) { return k % 2 == 1 ? 0 : (k % 4 == 0 ? 1 : -1); }

Real scaled(const Real& b, std::size_t t) { return Real(2L) * b / Real(static_cast<unsigned long>(2 * t + 1)); }

OverlapMatrix from_integrals(const std::vector<Real>& integrals, std::size_t N)
{
    OverlapMatrix B(N);
    for (std::size_t s = 0; s <= N; ++s)
        for (std::size_t t = 0; t <= N; ++t)
            B.at(s, t) = Real(static_cast<unsigned long>(2 * t + 1)) * integrals[s * (N + 1) + t] / Real(2L);
    return B;
}

} // namespace

OverlapMatrix::OverlapMatrix(std::size_t N) : N_(N), entries_((N + 1) * (N + 1)) {}

Real OverlapMatrix::symmetry_defect() const
{
    Real worst(0L);
    for (std::size_t s = 0; s <= N_; ++s) {
        for (std::size_t t = s + 1; t <= N_; ++t) {
            const Real x = scaled(at(s, t), t);
            const Real y = scaled(at(t, s), s);
            const Real scale = max(abs(x), abs(y));
            if (!scale.is_zero())
                worst = max(worst, abs(x - y) / scale);
        }
    }
    return worst;
}

mpq_class step_integral_exact(std::size_t s, std::size_t t)
{
    const auto P = legendre_monomials(std::max(s, t));
    return dot_moments(P[s], half_moments(P[t], P[s].size() - 1));
}

Real step_potential_overlap(std::size_t s, std::size_t t)
{
    const mpq_class b = mpq_class(static_cast<long>(2 * t + 1), 2L) * step_integral_exact(s, t);
    return to_real(b);
}

Real closed_form_step_overlap(std::size_t s, std::size_t t)
{
    if (s == t)
        return Real::ratio(1, 2);
    const Real rs(static_cast<unsigned long>(s));
    const Real rt(static_cast<unsigned long>(t));
    const Real one(1L);
    const Real two(2L);
    const Real A = gamma((one + rs) / two) * gamma(one + rt / two) / (gamma((one + rt) / two) * gamma(one + rs / two));
    const Real bracket = A * Real(sin_quarter(s) * cos_quarter(t)) - Real(sin_quarter(t) * cos_quarter(s)) / A;
    const long diff = static_cast<long>(s) - static_cast<long>(t);
    const Real integral = two * bracket / (pi() * Real(diff) * Real(static_cast<unsigned long>(s + t + 1)));
    return Real(static_cast<unsigned long>(2 * t + 1)) * integral / two;
}

std::vector<Real> read_overlap_integrals(const std::string& path, std::size_t N)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("overlap file: cannot open '" + path + "'");
    std::vector<Real> integrals((N + 1) * (N + 1));
    std::vector<bool> seen((N + 1) * (N + 1), false);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string a, b, v, extra;
        if (!(fields >> a))
            continue;
        const std::string where = path + ":" + std::to_string(line_no);
        if (!(fields >> b >> v) || (fields >> extra))
            throw FormatError(where + ": expected 's t value'");
        std::size_t s = 0, t = 0;
        try {
            std::size_t used = 0;
            s = std::stoul(a, &used);
            if (used != a.size())
                throw std::invalid_argument(a);
            t = std::stoul(b, &used);
            if (used != b.size())
                throw std::invalid_argument(b);
        } catch (const std::exception&) {
            throw FormatError(where + ": indices must be non-negative integers");
        }
        if (a.front() == '-' || b.front() == '-')
            throw FormatError(where + ": indices must be non-negative integers");
        Real value;
        try {
            value = Real::parse(v);
        } catch (const FormatError&) {
            throw FormatError(where + ": malformed value '" + v + "'");
        }
        if (s > N || t > N)
            continue;
        const std::size_t idx = s * (N + 1) + t;
        if (seen[idx])
            throw FormatError(where + ": duplicate entry (" + a + ", " + b + ")");
        seen[idx] = true;
        integrals[idx] = std::move(value);
    }
    return integrals;
}

OverlapMatrix build_overlap_matrix(const OverlapSource& source, std::size_t N)
{
    OverlapMatrix B(N);
    if (std::holds_alternative<StepPotential>(source)) {
        const auto P = legendre_monomials(N);
        for (std::size_t t = 0; t <= N; ++t) {
            const auto mu = half_moments(P[t], N);
            const mpq_class factor(static_cast<long>(2 * t + 1), 2L);
            for (std::size_t s = 0; s <= N; ++s)
                B.at(s, t) = to_real(factor * dot_moments(P[s], mu));
        }
    } else if (std::holds_alternative<ClosedFormStep>(source)) {
        for (std::size_t s = 0; s <= N; ++s)
            for (std::size_t t = 0; t <= N; ++t)
                B.at(s, t) = closed_form_step_overlap(s, t);
    } else {
        B = from_integrals(read_overlap_integrals(std::get<OverlapFile>(source).path, N), N);
    }
    const Real defect = B.symmetry_defect();
    const long tol_digits = static_cast<long>(working_digits()) - 10;
    if (defect > pow10_neg(tol_digits))
        throw SymmetryError("overlap matrix violates scaled symmetry (relative defect " + defect.to_scientific(3) +
                            ")");
    return B;
}

// ---------------------------------------------------------------------------

GeneralState general_init(std::size_t n, std::size_t N, BaseSpectrum& spectrum, const Real& leading)
{
    if (n > N)
        throw DomainError("general_init: n exceeds the truncation size");
    if (leading.is_zero())
        throw DomainError("general_init: leading coefficient must be non-zero");
    GeneralState st;
    st.n = n;
    st.N = N;
    st.coeffs.resize(N + 1);
    st.coeffs[n] = leading;
    st.lambdas.push_back(spectrum.eigenvalue(n));
    st.leading = leading;
    return st;
}

namespace {

// Coefficients of q · Σ_t a_t P_t, truncated to s <= N.
std::vector<Real> apply_overlaps(const std::vector<Real>& a, const OverlapMatrix& B, std::size_t N)
{
    std::vector<Real> g(N + 1);
    for (std::size_t t = 0; t <= N; ++t) {
        if (a[t].is_zero())
            continue;
        for (std::size_t s = 0; s <= N; ++s)
            g[s] += a[t] * B.at(t, s);
    }
    return g;
}

} // namespace

GeneralState general_advance(std::span<const GeneralState> history, const OverlapMatrix& B, BaseSpectrum& spectrum)
{
    if (history.empty())
        throw DomainError("general_advance: empty history");
    const GeneralState& cur = history.back();
    const std::size_t n = cur.n;
    const std::size_t j = cur.j;
    const std::size_t N = cur.N;
    if (N > B.size())
        throw DomainError("general_advance: overlap matrix smaller than the truncation size");

    const std::vector<Real> g = apply_overlaps(cur.coeffs, B, N);

    GeneralState next;
    next.n = n;
    next.j = j + 1;
    next.N = N;
    next.leading = cur.leading;
    next.lambdas = cur.lambdas;
    // Solvability: the P_n component of the right-hand side must vanish.
    next.lambdas.push_back(g[n] / cur.leading);
    next.coeffs.resize(N + 1);

    const Real lambda_n = spectrum.eigenvalue(n);
    const Real threshold = singular_gap_threshold(lambda_n);
    for (std::size_t s = 0; s <= N; ++s) {
        if (s == n)
            continue;
        const Real gap = spectrum.eigenvalue(s) - lambda_n;
        if (abs(gap) < threshold)
            throw SingularGapError("general_advance: base eigenvalues " + std::to_string(s) + " and " +
                                   std::to_string(n) + " are not separated at working precision");
        Real rhs = -g[s];
        for (std::size_t p = 1; p <= j; ++p)
            if (!history[p].coeffs[s].is_zero())
                rhs += cur.lambdas[j + 1 - p] * history[p].coeffs[s];
        next.coeffs[s] = rhs / gap;
    }
    return next;
}

EigenpairApproximation run_general_once(std::size_t n, std::size_t m, std::size_t N, const OverlapMatrix& B,
                                        const OperatorParams& params, Normalization norm)
{
    if (!params.alpha.is_zero() || !params.beta.is_zero())
        throw DomainError("run_general: only the Legendre case alpha = beta = 0 is supported");
    if (N < n + 1)
        throw DomainError("run_general: truncation N must be at least n + 1");
    if (N > B.size())
        throw DomainError("run_general: overlap matrix has size " + std::to_string(B.size()) + " < N = " +
                          std::to_string(N));

    BaseSpectrum spectrum(params);
    const Real leading = leading_coefficient(n, spectrum, norm);
    std::vector<GeneralState> history;
    history.reserve(m + 1);
    history.push_back(general_init(n, N, spectrum, leading));

    EigenpairApproximation approx;
    approx.n = n;
    approx.m = m;
    approx.leading = leading;
    for (std::size_t j = 0; j < m; ++j) {
        GeneralState next = general_advance(history, B, spectrum);
        const std::vector<Real> g = apply_overlaps(history.back().coeffs, B, N);
        approx.solvability_residuals.push_back(next.lambdas.back() * leading - g[n]);
        history.push_back(std::move(next));
    }

    approx.lambdas = history.back().lambdas;
    approx.lambda_sum = Real(0L);
    for (const Real& l : approx.lambdas)
        approx.lambda_sum += l;
    for (GeneralState& st : history) {
        CoefficientWindow w;
        w.lo = 0;
        w.values = std::move(st.coeffs);
        approx.correction_norms.push_back(coefficient_norm(w, spectrum));
        approx.corrections.push_back(std::move(w));
    }
    return approx;
}

GeneralApproximation run_general(std::size_t n, std::size_t m, std::size_t N, const OverlapMatrix& B,
                                 const OperatorParams& params, Normalization norm)
{
    GeneralApproximation out;
    out.N = N;
    out.approx = run_general_once(n, m, N, B, params, norm);
    if (N / 2 >= n + 1) {
        const EigenpairApproximation half = run_general_once(n, m, N / 2, B, params, norm);
        out.truncation_sensitivity = abs(out.approx.lambda_sum - half.lambda_sum);
    }
    return out;
}

} // namespace fdm
