#include "fdm/numerics.hpp"

#include "fdm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

namespace fdm {

namespace {

constexpr unsigned kDefaultDigits = 50;
constexpr mpfr_prec_t kGuardBits = 16;

thread_local unsigned tls_digits = kDefaultDigits;

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

bool parse_decimal(mpfr_ptr out, const std::string& text)
{
    if (text.empty())
        return false;
    char* end = nullptr;
    mpfr_strtofr(out, text.c_str(), &end, 10, MPFR_RNDN);
    return end != nullptr && *end == '\0' && end != text.c_str();
}

template <typename F>
Real unary(const Real& x, F&& f, const char* name)
{
    Real r;
    f(r.get(), x.get(), MPFR_RNDN);
    if (!mpfr_number_p(r.get()))
        throw PrecisionError(std::string("non-finite result in ") + name);
    return r;
}

} // namespace

void PrecisionContext::validate() const
{
    if (digits < 20)
        throw ConfigError("precision: digits must be >= 20 (got " + std::to_string(digits) + ")");
    if (verify_digits < 2 * digits)
        throw ConfigError("precision: verify_digits must be >= 2*digits (got " +
                          std::to_string(verify_digits) + ")");
}

mpfr_prec_t bits_for_digits(unsigned digits)
{
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + kGuardBits;
}

unsigned working_digits() { return tls_digits; }

mpfr_prec_t working_bits() { return bits_for_digits(tls_digits); }

PrecisionScope::PrecisionScope(unsigned digits) : saved_digits_(tls_digits)
{
    tls_digits = std::max(digits, 1u);
}

PrecisionScope::~PrecisionScope() { tls_digits = saved_digits_; }

// ---------------------------------------------------------------------------

Real::Real(Uninit, mpfr_prec_t prec) { mpfr_init2(value_, prec); }

Real::Real() : Real(Uninit{}, working_bits()) { mpfr_set_zero(value_, 1); }

Real::Real(long v) : Real(Uninit{}, working_bits()) { mpfr_set_si(value_, v, MPFR_RNDN); }

Real::Real(unsigned long v) : Real(Uninit{}, working_bits()) { mpfr_set_ui(value_, v, MPFR_RNDN); }

Real::Real(double v) : Real(Uninit{}, working_bits())
{
    if (!std::isfinite(v))
        throw PrecisionError("Real: non-finite double");
    mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(const Real& other) : Real(Uninit{}, mpfr_get_prec(other.value_))
{
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept
{
    value_[0] = other.value_[0];
    other.value_[0]._mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other)
{
    if (this == &other)
        return *this;
    if (value_[0]._mpfr_d == nullptr)
        mpfr_init2(value_, mpfr_get_prec(other.value_));
    else
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator=(Real&& other) noexcept
{
    if (this != &other)
        mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real()
{
    if (value_[0]._mpfr_d != nullptr)
        mpfr_clear(value_);
}

void Real::check_finite(const char* op) const
{
    if (!mpfr_number_p(value_))
        throw PrecisionError(std::string("non-finite result in ") + op);
}

Real Real::parse(std::string_view text)
{
    const std::string t = trim(text);
    Real r;
    const auto slash = t.find('/');
    if (slash == std::string::npos) {
        if (!parse_decimal(r.value_, t))
            throw FormatError("not a number: '" + t + "'");
    } else {
        Real den;
        if (!parse_decimal(r.value_, trim(t.substr(0, slash))) ||
            !parse_decimal(den.value_, trim(t.substr(slash + 1))))
            throw FormatError("not a ratio: '" + t + "'");
        if (den.is_zero())
            throw FormatError("zero denominator: '" + t + "'");
        r /= den;
    }
    r.check_finite("parse");
    return r;
}

Real Real::ratio(long num, long den)
{
    if (den == 0)
        throw PrecisionError("Real::ratio: zero denominator");
    Real r(num);
    mpfr_div_si(r.value_, r.value_, den, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& rhs)
{
    *this = *this + rhs;
    return *this;
}

Real& Real::operator-=(const Real& rhs)
{
    *this = *this - rhs;
    return *this;
}

Real& Real::operator*=(const Real& rhs)
{
    *this = *this * rhs;
    return *this;
}

Real& Real::operator/=(const Real& rhs)
{
    *this = *this / rhs;
    return *this;
}

Real operator+(const Real& a, const Real& b)
{
    Real r;
    mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
    r.check_finite("+");
    return r;
}

Real operator-(const Real& a, const Real& b)
{
    Real r;
    mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
    r.check_finite("-");
    return r;
}

Real operator*(const Real& a, const Real& b)
{
    Real r;
    mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
    r.check_finite("*");
    return r;
}

Real operator/(const Real& a, const Real& b)
{
    if (b.is_zero())
        throw PrecisionError("division by zero");
    Real r;
    mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
    r.check_finite("/");
    return r;
}

Real operator-(const Real& a)
{
    Real r;
    mpfr_neg(r.value_, a.value_, MPFR_RNDN);
    return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b)
{
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0)
        return std::partial_ordering::less;
    if (c > 0)
        return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

int Real::sign() const { return mpfr_sgn(value_); }

bool Real::is_integer() const { return mpfr_integer_p(value_) != 0; }

double Real::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

long Real::to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }

mpfr_prec_t Real::precision() const { return mpfr_get_prec(value_); }

namespace {

// Significant digits and decimal exponent so that x = 0.DIGITS * 10^exp.
std::pair<std::string, long> decimal_digits(mpfr_srcptr x, unsigned digits, bool& negative)
{
    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, std::max(digits, 1u), x, MPFR_RNDN);
    std::string s(raw);
    mpfr_free_str(raw);
    negative = !s.empty() && s[0] == '-';
    if (negative)
        s.erase(0, 1);
    return {s, static_cast<long>(exp)};
}

} // namespace

std::string Real::to_scientific(unsigned digits) const
{
    digits = std::max(digits, 1u);
    if (is_zero()) {
        std::string out = "0";
        if (digits > 1)
            out += "." + std::string(digits - 1, '0');
        return out + "e+00";
    }
    bool negative = false;
    auto [mant, exp] = decimal_digits(value_, digits, negative);
    std::string out = negative ? "-" : "";
    out += mant[0];
    if (mant.size() > 1)
        out += "." + mant.substr(1);
    const long e = exp - 1;
    out += e < 0 ? "e-" : "e+";
    const std::string es = std::to_string(e < 0 ? -e : e);
    out += (es.size() < 2 ? "0" : "") + es;
    return out;
}

std::string Real::to_fixed_significant(unsigned digits) const
{
    digits = std::max(digits, 1u);
    if (is_zero())
        return "0";
    bool negative = false;
    auto [mant, exp] = decimal_digits(value_, digits, negative);
    std::string out = negative ? "-" : "";
    const long n = static_cast<long>(mant.size());
    if (exp <= 0)
        out += "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
    else if (exp >= n)
        out += mant + std::string(static_cast<std::size_t>(exp - n), '0');
    else
        out += mant.substr(0, static_cast<std::size_t>(exp)) + "." + mant.substr(static_cast<std::size_t>(exp));
    return out;
}

std::ostream& operator<<(std::ostream& os, const Real& x)
{
    return os << x.to_scientific(static_cast<unsigned>(os.precision()));
}

// ---------------------------------------------------------------------------

Real abs(const Real& x) { return unary(x, mpfr_abs, "abs"); }

Real sqrt(const Real& x)
{
    if (x.sign() < 0)
        throw DomainError("sqrt of negative number");
    return unary(x, mpfr_sqrt, "sqrt");
}

Real exp(const Real& x) { return unary(x, mpfr_exp, "exp"); }

Real log(const Real& x)
{
    if (x.sign() <= 0)
        throw DomainError("log of non-positive number");
    return unary(x, mpfr_log, "log");
}

Real sin(const Real& x) { return unary(x, mpfr_sin, "sin"); }
Real cos(const Real& x) { return unary(x, mpfr_cos, "cos"); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh, "sinh"); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh, "cosh"); }
Real tanh(const Real& x) { return unary(x, mpfr_tanh, "tanh"); }

Real pow(const Real& base, const Real& exponent)
{
    Real r;
    mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
    if (!mpfr_number_p(r.get()))
        throw DomainError("pow: non-finite result");
    return r;
}

Real pow(const Real& base, long exponent)
{
    Real r;
    mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
    if (!mpfr_number_p(r.get()))
        throw DomainError("pow: non-finite result");
    return r;
}

Real floor(const Real& x)
{
    Real r;
    mpfr_floor(r.get(), x.get());
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi()
{
    Real r;
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real pow10_neg(long k)
{
    Real r(10L);
    mpfr_pow_si(r.get(), r.get(), -k, MPFR_RNDN);
    return r;
}

Real gamma(const Real& x)
{
    if (x.is_integer() && x.sign() <= 0)
        throw PoleError("gamma: pole at non-positive integer " + x.to_fixed_significant(20));
    Real result;
    if (x.sign() > 0) {
        mpfr_gamma(result.get(), x.get(), MPFR_RNDN);
    } else {
        // Γ(x) = π / (sin(πx) Γ(1-x)), evaluated with extra digits so that
        // the cancellation in sin(πx) near integers stays below working precision.
        Real reflected;
        {
            PrecisionScope extra(working_digits() + 10);
            const Real one_minus = Real(1L) - Real(x);
            Real g;
            mpfr_gamma(g.get(), one_minus.get(), MPFR_RNDN);
            reflected = pi() / (sin(pi() * x) * g);
        }
        mpfr_set(result.get(), reflected.get(), MPFR_RNDN);
    }
    if (!mpfr_number_p(result.get()))
        throw PrecisionError("gamma: result not representable for x = " + x.to_scientific(20));
    return result;
}

bool stable(const Real& value_at_digits, const Real& value_at_verify, const PrecisionContext& ctx)
{
    const long needed = static_cast<long>(ctx.digits) - 5;
    PrecisionScope scope(ctx.verify_digits);
    const Real a(value_at_digits);
    const Real b(value_at_verify);
    if (a == b)
        return true;
    const Real scale = max(abs(a), abs(b));
    return abs(a - b) <= pow10_neg(needed) * scale;
}

unsigned agreeing_digits(const Real& a, const Real& b, unsigned cap)
{
    if (a == b)
        return cap;
    PrecisionScope scope(std::max<unsigned>(working_digits(), 40));
    const Real scale = max(abs(a), abs(b));
    const Real rel = abs(a - b) / scale;
    if (rel >= Real(1L))
        return 0;
    Real l10;
    mpfr_log10(l10.get(), rel.get(), MPFR_RNDN);
    const long d = -mpfr_get_si(floor(l10).get(), MPFR_RNDN) - 1;
    return static_cast<unsigned>(std::clamp<long>(d, 0, cap));
}

} // namespace fdm
