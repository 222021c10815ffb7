#include <cmforge/numerics.hpp>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cmforge::numerics {

namespace {

Bits checked(Bits prec)
{
    if (prec < MPFR_PREC_MIN || prec > MPFR_PREC_MAX)
        throw std::invalid_argument("precision out of range: " + std::to_string(prec));
    return prec;
}

// Clears the MPFR flags on construction and converts an overflow raised in
// the scope into NumericOverflow.
class OverflowGuard {
public:
    OverflowGuard() { mpfr_clear_flags(); }
    void check(const char* what) const
    {
        if (mpfr_overflow_p())
            throw NumericOverflow(std::string("exponent overflow in ") + what);
    }
};

} // namespace

BigReal::BigReal(Bits prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long value, Bits prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_si(v_, value, MPFR_RNDN);
}

BigReal::BigReal(double value, Bits prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_d(v_, value, MPFR_RNDN);
}

BigReal::BigReal(const Integer& value, Bits prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(const Rational& value, Bits prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::from_string(std::string_view decimal, Bits prec)
{
    BigReal r(prec);
    std::string s(decimal);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && !r.is_finite())
        throw std::invalid_argument("not a decimal number: " + s);
    return r;
}

BigReal::BigReal(const BigReal& other)
{
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other)
{
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept
{
    mpfr_swap(v_, other.v_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::with_precision(Bits prec) const
{
    BigReal r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

long BigReal::exponent() const
{
    if (is_zero())
        return mpfr_get_emin();
    return mpfr_get_exp(v_);
}

Integer BigReal::round() const
{
    if (!is_finite())
        throw std::domain_error("round of non-finite value");
    BigReal t(*this);
    mpfr_rint(t.v_, v_, MPFR_RNDN);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
    return z;
}

Integer BigReal::floor() const
{
    if (!is_finite())
        throw std::domain_error("floor of non-finite value");
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
}

std::string BigReal::to_string(int digits) const
{
    char* buf = nullptr;
    if (digits <= 0)
        mpfr_asprintf(&buf, "%Rg", v_);
    else
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::unique_ptr<char, void (*)(char*)> owner(buf, [](char* p) { mpfr_free_str(p); });
    return std::string(buf);
}

void BigReal::widen_to(Bits prec)
{
    if (prec > precision())
        mpfr_prec_round(v_, prec, MPFR_RNDN);
}

BigReal BigReal::operator-() const
{
    BigReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigReal& BigReal::operator+=(const BigReal& rhs)
{
    widen_to(rhs.precision());
    mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs)
{
    widen_to(rhs.precision());
    mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs)
{
    widen_to(rhs.precision());
    mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs)
{
    widen_to(rhs.precision());
    mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigReal operator*(BigReal lhs, long rhs)
{
    mpfr_mul_si(lhs.v_, lhs.v_, rhs, MPFR_RNDN);
    return lhs;
}

BigReal operator/(BigReal lhs, long rhs)
{
    mpfr_div_si(lhs.v_, lhs.v_, rhs, MPFR_RNDN);
    return lhs;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b)
{
    if (mpfr_unordered_p(a.v_, b.v_))
        return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0)
        return std::partial_ordering::less;
    if (c > 0)
        return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x)
{
    return os << x.to_string(static_cast<int>(os.precision()));
}

BigReal abs(const BigReal& x)
{
    BigReal r(x.precision());
    mpfr_abs(r.raw(), x.get(), MPFR_RNDN);
    return r;
}

BigReal sqrt(const BigReal& x)
{
    BigReal r(x.precision());
    mpfr_sqrt(r.raw(), x.get(), MPFR_RNDN);
    return r;
}

BigReal exp(const BigReal& x)
{
    OverflowGuard guard;
    BigReal r(x.precision());
    mpfr_exp(r.raw(), x.get(), MPFR_RNDN);
    guard.check("exp");
    return r;
}

BigReal log(const BigReal& x)
{
    BigReal r(x.precision());
    mpfr_log(r.raw(), x.get(), MPFR_RNDN);
    return r;
}

BigReal log2(const BigReal& x)
{
    BigReal r(x.precision());
    mpfr_log2(r.raw(), x.get(), MPFR_RNDN);
    return r;
}

BigReal pow2(long e, Bits prec)
{
    BigReal r(1L, prec);
    mpfr_mul_2si(r.raw(), r.get(), e, MPFR_RNDN);
    return r;
}

BigReal atan2(const BigReal& y, const BigReal& x)
{
    BigReal r(std::max(x.precision(), y.precision()));
    mpfr_atan2(r.raw(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

BigReal const_pi(Bits prec)
{
    if (prec < kMinPrecision)
        throw std::invalid_argument("const_pi needs at least 16 bits");
    BigReal r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

BigComplex::BigComplex(const BigReal& re, const BigReal& im)
    : re_(re), im_(im)
{
    const Bits p = std::max(re.precision(), im.precision());
    if (re_.precision() != p)
        re_ = re_.with_precision(p);
    if (im_.precision() != p)
        im_ = im_.with_precision(p);
}

BigComplex::BigComplex(const BigReal& re)
    : re_(re), im_(re.precision())
{
}

BigComplex BigComplex::with_precision(Bits prec) const
{
    return {re_.with_precision(prec), im_.with_precision(prec)};
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs)
{
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs)
{
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs)
{
    const Bits p = std::max(precision(), rhs.precision());
    BigReal re(p), im(p);
    // fms/fma keep each part to a single rounding.
    mpfr_fmms(re.raw(), re_.get(), rhs.re_.get(), im_.get(), rhs.im_.get(), MPFR_RNDN);
    mpfr_fmma(im.raw(), re_.get(), rhs.im_.get(), im_.get(), rhs.re_.get(), MPFR_RNDN);
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs)
{
    const Bits p = std::max(precision(), rhs.precision());
    BigReal den(p);
    mpfr_fmma(den.raw(), rhs.re_.get(), rhs.re_.get(), rhs.im_.get(), rhs.im_.get(), MPFR_RNDN);
    BigReal re(p), im(p);
    mpfr_fmma(re.raw(), re_.get(), rhs.re_.get(), im_.get(), rhs.im_.get(), MPFR_RNDN);
    mpfr_fmms(im.raw(), im_.get(), rhs.re_.get(), re_.get(), rhs.im_.get(), MPFR_RNDN);
    re_ = re / den;
    im_ = im / den;
    return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& rhs)
{
    re_ *= rhs;
    im_ *= rhs;
    return *this;
}

BigComplex& BigComplex::operator/=(const BigReal& rhs)
{
    re_ /= rhs;
    im_ /= rhs;
    return *this;
}

BigComplex& BigComplex::operator*=(long rhs)
{
    re_ = re_ * rhs;
    im_ = im_ * rhs;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const BigComplex& z)
{
    return os << '(' << z.real() << ", " << z.imag() << ')';
}

BigComplex conj(const BigComplex& z) { return {z.real(), -z.imag()}; }

BigReal norm(const BigComplex& z)
{
    BigReal r(z.precision());
    mpfr_fmma(r.raw(), z.real().get(), z.real().get(), z.imag().get(), z.imag().get(), MPFR_RNDN);
    return r;
}

BigReal abs(const BigComplex& z)
{
    BigReal r(z.precision());
    mpfr_hypot(r.raw(), z.real().get(), z.imag().get(), MPFR_RNDN);
    return r;
}

BigReal arg(const BigComplex& z) { return atan2(z.imag(), z.real()); }

BigComplex pow(const BigComplex& z, long n)
{
    if (n < 0)
        return BigComplex(1, 0, z.precision()) / pow(z, -n);
    BigComplex result(1, 0, z.precision());
    BigComplex base = z;
    while (n > 0) {
        if (n & 1)
            result *= base;
        n >>= 1;
        if (n > 0)
            base *= base;
    }
    return result;
}

BigComplex log(const BigComplex& z)
{
    return {log(abs(z)), arg(z)};
}

BigComplex exp_c(const BigComplex& z)
{
    if (!z.is_finite())
        throw std::invalid_argument("exp_c of non-finite value");
    const Bits p = z.precision();
    OverflowGuard guard;
    BigReal mag(p), s(p), c(p);
    mpfr_exp(mag.raw(), z.real().get(), MPFR_RNDN);
    guard.check("exp_c");
    mpfr_sin_cos(s.raw(), c.raw(), z.imag().get(), MPFR_RNDN);
    return {mag * c, mag * s};
}

BigComplex sqrt_principal(const BigComplex& z)
{
    if (z.is_zero())
        throw std::invalid_argument("sqrt_principal of zero");
    const Bits p = z.precision();
    const BigReal& x = z.real();
    const BigReal& y = z.imag();
    BigReal w = sqrt((abs(z) + abs(x)) / 2L);
    if (x.sign() >= 0)
        return {w, y / (w * 2L)};
    BigReal re = abs(y) / (w * 2L);
    BigReal im = y.sign() < 0 ? -w : w;
    return BigComplex(re, im).with_precision(p);
}

BigComplex root_of_unity(const Rational& r, Bits prec)
{
    // Reduce r into [0, 1) exactly before scaling by 2 pi.
    Rational frac = r;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), frac.get_num_mpz_t(), frac.get_den_mpz_t());
    frac -= fl;
    const Bits wp = prec + 16;
    BigReal angle = const_pi(wp) * BigReal(Rational(2 * frac), wp);
    BigReal s(wp), c(wp);
    mpfr_sin_cos(s.raw(), c.raw(), angle.get(), MPFR_RNDN);
    return BigComplex(c, s).with_precision(prec);
}

IntegerMatch recognize_integer(const BigReal& x, const BigReal& tol)
{
    if (!(tol < BigReal(0.25, tol.precision())))
        throw std::invalid_argument("recognize_integer needs tol < 1/4");
    if (!x.is_finite())
        throw RecognitionFailure("cannot recognize a non-finite value as an integer");
    Integer n = x.round();
    BigReal residual = abs(x - BigReal(n, x.precision() + 64));
    if (residual > tol)
        throw RecognitionFailure("value " + x.to_string(30) + " is not within tolerance " +
                                 tol.to_string(6) + " of an integer (residual " +
                                 residual.to_string(6) + ")");
    return {n, residual};
}

RationalMatch recognize_rational(const BigReal& x, const Integer& max_denominator,
                                 const BigReal& tol)
{
    if (!x.is_finite())
        throw RecognitionFailure("cannot recognize a non-finite value as a rational");
    if (max_denominator < 1)
        throw std::invalid_argument("max_denominator must be positive");
    // x is a dyadic rational; run the continued fraction of its exact value.
    Rational exact;
    mpfr_get_q(exact.get_mpq_t(), x.get());
    Integer num = exact.get_num();
    Integer den = exact.get_den();
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational best;
    while (true) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > max_denominator)
            break;
        best = Rational(p2, q2);
        best.canonicalize();
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Integer r = num - a * den;
        if (r == 0)
            break;
        num = den;
        den = r;
    }
    if (q1 == 0)
        throw RecognitionFailure("no rational approximation within the denominator bound");
    BigReal residual = abs(x - BigReal(best, x.precision() + 64));
    if (residual > tol)
        throw RecognitionFailure("value " + x.to_string(30) + " has no rational match with "
                                 "denominator <= " + max_denominator.get_str() +
                                 " (residual " + residual.to_string(6) + ")");
    return {best, residual};
}

} // namespace cmforge::numerics
