#pragma once

// Arbitrary-precision real arithmetic on top of MPFR.
//
// Every arithmetic result is produced at the calling thread's working
// precision, which is installed with a PrecisionScope. Values keep the
// precision they were created with, so a Real computed under one scope can be
// read safely from another thread or after the scope has ended.

#include <mpfr.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fdm {

/// Working precision and the doubled precision used for stability checks.
struct PrecisionContext {
    unsigned digits = 50;
    unsigned verify_digits = 100;

    static PrecisionContext with_digits(unsigned digits) { return {digits, 2 * digits}; }

    /// Throws ConfigError unless digits >= 20 and verify_digits >= 2 * digits.
    void validate() const;

    bool operator==(const PrecisionContext&) const = default;
};

/// Binary precision (bits) that holds `digits` significant decimals plus guard bits.
mpfr_prec_t bits_for_digits(unsigned digits);

unsigned working_digits();
mpfr_prec_t working_bits();

/// RAII guard installing the thread-local working precision.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    explicit PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.digits) {}
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits_;
};

class Real {
public:
    Real();
    Real(int v) : Real(static_cast<long>(v)) {}
    Real(long v);
    Real(unsigned v) : Real(static_cast<unsigned long>(v)) {}
    Real(unsigned long v);
    explicit Real(double v);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    /// Parses a decimal ("-1.25e-3") or an exact ratio ("3/4", "-1/8").
    /// Throws FormatError on malformed text.
    static Real parse(std::string_view text);
    static Real ratio(long num, long den);

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator-(const Real& a);

    friend bool operator==(const Real& a, const Real& b);
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);

    int sign() const;
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const;
    double to_double() const;
    long to_long() const;
    mpfr_prec_t precision() const;

    /// Scientific notation with `digits` significant digits, e.g. "6.3005e-01".
    std::string to_scientific(unsigned digits) const;
    /// Positional notation rounded to `digits` significant digits.
    std::string to_fixed_significant(unsigned digits) const;

    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    friend std::ostream& operator<<(std::ostream& os, const Real& x);

private:
    struct Uninit {};
    explicit Real(Uninit, mpfr_prec_t prec);
    void check_finite(const char* op) const;

    mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real floor(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real pi();

/// Γ(x) for real x that is not zero or a negative integer. Negative
/// arguments go through the reflection identity. Throws PoleError at poles
/// and PrecisionError if the result is not representable.
Real gamma(const Real& x);

/// 10^(-k) at working precision.
Real pow10_neg(long k);

/// True iff the two values agree to at least ctx.digits - 5 significant digits.
bool stable(const Real& value_at_digits, const Real& value_at_verify, const PrecisionContext& ctx);

/// Number of leading significant decimal digits on which a and b agree
/// (capped at `cap`); both zero counts as full agreement.
unsigned agreeing_digits(const Real& a, const Real& b, unsigned cap = 1000);

} // namespace fdm
