#pragma once

// Arbitrary-precision real and complex arithmetic on top of MPFR.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the larger of the two operand precisions and round to nearest,
// ties to even. Values are immutable from the caller's point of view: all
// operators return fresh objects.

#include <cmforge/errors.hpp>

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cmforge {

using Integer = mpz_class;
using Rational = mpq_class;

namespace numerics {

using Bits = long;

inline constexpr Bits kMinPrecision = 16;

class BigReal {
public:
    explicit BigReal(Bits prec = 64);
    BigReal(long value, Bits prec);
    BigReal(double value, Bits prec);
    BigReal(const Integer& value, Bits prec);
    BigReal(const Rational& value, Bits prec);
    static BigReal from_string(std::string_view decimal, Bits prec);

    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    Bits precision() const { return mpfr_get_prec(v_); }
    // Same value rounded to a new precision.
    BigReal with_precision(Bits prec) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
    long exponent() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Nearest integer, ties to even.
    Integer round() const;
    Integer floor() const;
    std::string to_string(int digits = 0) const;

    BigReal operator-() const;
    BigReal& operator+=(const BigReal& rhs);
    BigReal& operator-=(const BigReal& rhs);
    BigReal& operator*=(const BigReal& rhs);
    BigReal& operator/=(const BigReal& rhs);

    friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
    friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
    friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
    friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }
    friend BigReal operator*(BigReal lhs, long rhs);
    friend BigReal operator/(BigReal lhs, long rhs);

    friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr raw() { return v_; }

private:
    // Precision of a binary result.
    void widen_to(Bits prec);

    mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log2(const BigReal& x);
BigReal pow2(long e, Bits prec);
BigReal atan2(const BigReal& y, const BigReal& x);

// pi correctly rounded at the requested precision.
BigReal const_pi(Bits prec);

class BigComplex {
public:
    explicit BigComplex(Bits prec = 64) : re_(prec), im_(prec) {}
    BigComplex(const BigReal& re, const BigReal& im);
    explicit BigComplex(const BigReal& re);
    BigComplex(long re, long im, Bits prec) : re_(re, prec), im_(im, prec) {}

    static BigComplex i(Bits prec) { return BigComplex(0, 1, prec); }

    const BigReal& real() const { return re_; }
    const BigReal& imag() const { return im_; }
    Bits precision() const { return re_.precision(); }
    BigComplex with_precision(Bits prec) const;

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    BigComplex operator-() const { return {-re_, -im_}; }
    BigComplex& operator+=(const BigComplex& rhs);
    BigComplex& operator-=(const BigComplex& rhs);
    BigComplex& operator*=(const BigComplex& rhs);
    BigComplex& operator/=(const BigComplex& rhs);
    BigComplex& operator*=(const BigReal& rhs);
    BigComplex& operator/=(const BigReal& rhs);
    BigComplex& operator*=(long rhs);

    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
    friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
    friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
    friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }
    friend BigComplex operator*(BigComplex a, long b) { return a *= b; }
    friend BigComplex operator*(long b, BigComplex a) { return a *= b; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) = default;

private:
    BigReal re_;
    BigReal im_;
};

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

BigComplex conj(const BigComplex& z);
// |z|^2
BigReal norm(const BigComplex& z);
BigReal abs(const BigComplex& z);
BigReal arg(const BigComplex& z);
BigComplex pow(const BigComplex& z, long n);
BigComplex log(const BigComplex& z);

// e^z. Throws NumericOverflow if the result leaves the exponent range.
BigComplex exp_c(const BigComplex& z);

// The square root with positive real part, or positive imaginary part when
// the real part vanishes. Precondition: z != 0.
BigComplex sqrt_principal(const BigComplex& z);

// e^{2 pi i r} for rational r, exact on the unit circle up to rounding.
BigComplex root_of_unity(const Rational& r, Bits prec);

struct IntegerMatch {
    Integer value;
    BigReal residual;
};

// Nearest integer n to x with |x - n| <= tol. Throws RecognitionFailure
// otherwise. Precondition: tol < 1/4.
IntegerMatch recognize_integer(const BigReal& x, const BigReal& tol);

struct RationalMatch {
    Rational value;
    BigReal residual;
};

// Best rational approximation with denominator at most max_denominator,
// found by continued fractions; accepted when the residual is at most tol.
RationalMatch recognize_rational(const BigReal& x, const Integer& max_denominator,
                                 const BigReal& tol);

} // namespace numerics
} // namespace cmforge
