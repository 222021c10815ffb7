#include <doctest.h>

#include <cmforge/numerics.hpp>

#include "test_util.hpp"

#include <cmath>

using namespace cmforge;
using namespace cmforge::numerics;
using testutil::cplx;

namespace {

// pi * 2^bits by Machin's formula in fixed point.
Integer machin_pi_scaled(unsigned long bits)
{
    const unsigned long guard = 32;
    Integer one = 1;
    one <<= (bits + guard);
    auto arctan_inv = [&](long x) {
        Integer sum = 0, term = one / x;
        const Integer x2 = x * x;
        for (long k = 0; term != 0; ++k) {
            if (k % 2 == 0)
                sum += term / (2 * k + 1);
            else
                sum -= term / (2 * k + 1);
            term /= x2;
        }
        return sum;
    };
    Integer pi = 16 * arctan_inv(5) - 4 * arctan_inv(239);
    pi >>= guard;
    return pi;
}

BigReal ulp(const BigReal& x) { return pow2(x.exponent() - x.precision(), 64); }

} // namespace

TEST_CASE("pi agrees with a Machin reference at several precisions")
{
    for (Bits p : {16L, 64L, 256L, 1000L}) {
        const Integer scaled = machin_pi_scaled(static_cast<unsigned long>(p + 16));
        Integer den = 1;
        den <<= static_cast<unsigned long>(p + 16);
        const BigReal ref(Rational(scaled, den), p + 64);
        const BigReal pi = const_pi(p);
        CHECK(pi.precision() == p);
        CHECK(abs(pi.with_precision(p + 64) - ref) <= ulp(pi) * 2L);
    }
}

TEST_CASE("pi at low precision is the rounding of pi at high precision")
{
    CHECK(const_pi(16) == const_pi(64).with_precision(16));
    CHECK(const_pi(64) == const_pi(512).with_precision(64));
    CHECK_THROWS_AS(const_pi(8), std::invalid_argument);
}

TEST_CASE("pi squared matches reference digits")
{
    const BigReal pi2 = const_pi(256) * const_pi(256);
    const BigReal ref = BigReal::from_string("9.869604401089358618834490999876151135313699407240790626413349376220044822419205243", 300);
    CHECK(abs(pi2 - ref).to_double() < 1e-70);
}

TEST_CASE("exp_c special values")
{
    CHECK(exp_c(BigComplex(0, 0, 64)) == BigComplex(1, 0, 64));
    const Bits p = 128;
    const BigComplex ipi(BigReal(0L, p), const_pi(p));
    const BigComplex e = exp_c(ipi);
    CHECK(abs(e - BigComplex(-1, 0, p)) < pow2(-120, 64));
    // q at tau = i
    const BigComplex q = exp_c(BigComplex(-(const_pi(p) * 2L), BigReal(0L, p)));
    CHECK(std::abs(q.real().to_double() - std::exp(-2 * M_PI)) < 1e-17);
    CHECK(q.real().to_string(8).rfind("0.0018674427", 0) == 0);
    CHECK(q.imag().is_zero());
}

TEST_CASE("exp_c(z) exp_c(-z) = 1 on random inputs")
{
    std::uniform_real_distribution<double> u(-20, 20);
    for (Bits p : {64L, 128L, 333L}) {
        for (int k = 0; k < 200; ++k) {
            const BigComplex z = cplx(u(testutil::rng()), u(testutil::rng()), p);
            const BigComplex one = exp_c(z) * exp_c(-z);
            CHECK(abs(one - BigComplex(1, 0, p)) < pow2(-(p - 8), 64));
        }
    }
}

TEST_CASE("exp_c reports exponent overflow")
{
    const BigReal huge = pow2(70, 64);
    CHECK_THROWS_AS(exp_c(BigComplex(huge, BigReal(0L, 64))), NumericOverflow);
}

TEST_CASE("sqrt_principal branch")
{
    const Bits p = 96;
    CHECK(sqrt_principal(BigComplex(4, 0, p)) == BigComplex(2, 0, p));
    const BigComplex i = sqrt_principal(BigComplex(-1, 0, p));
    CHECK(abs(i - BigComplex::i(p)) < pow2(-90, 64));
    const BigComplex w = sqrt_principal(BigComplex(1, -1, p));
    CHECK(w.real().sign() > 0);
    CHECK(abs(w * w - BigComplex(1, -1, p)) < pow2(-90, 64));
    CHECK_THROWS_AS(sqrt_principal(BigComplex(0, 0, p)), std::invalid_argument);
}

TEST_CASE("sqrt_principal squares back on 1000 random inputs")
{
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    const Bits p = 128;
    for (int k = 0; k < 1000; ++k) {
        const BigComplex z = cplx(u(testutil::rng()), u(testutil::rng()), p);
        const BigComplex w = sqrt_principal(z);
        CHECK((w.real().sign() > 0 || (w.real().is_zero() && w.imag().sign() > 0)));
        CHECK(abs(w * w - z) <= abs(z) * pow2(-(p - 2), 64));
    }
}

TEST_CASE("recognize_integer")
{
    const BigReal tol = pow2(-20, 64);
    const BigReal x = BigReal(1728L, 128) - pow2(-40, 128);
    const IntegerMatch m = recognize_integer(x, tol);
    CHECK(m.value == 1728);
    CHECK(m.residual <= pow2(-39, 64));
    CHECK_THROWS_AS(recognize_integer(BigReal(0.4, 64), tol), RecognitionFailure);
    CHECK_THROWS_AS(recognize_integer(BigReal(0.5, 64), BigReal(0.25, 64)), std::invalid_argument);
}

TEST_CASE("recognize_integer is exact on integers")
{
    for (long n : {0L, 1L, -1L, 744L, -3375L, 1L << 40}) {
        const IntegerMatch m = recognize_integer(BigReal(n, 64), pow2(-20, 64));
        CHECK(m.value == n);
        CHECK(m.residual.is_zero());
    }
    const Integer big("157464000000000000000000000001");
    const IntegerMatch m = recognize_integer(BigReal(big, 200), pow2(-20, 64));
    CHECK(m.value == big);
    CHECK(m.residual.is_zero());
}

TEST_CASE("recognize_rational finds small denominators")
{
    const Bits p = 128;
    const BigReal x(Rational(355, 113), p);
    const RationalMatch m = recognize_rational(x, Integer(1000), pow2(-24, 64));
    CHECK(m.value == Rational(355, 113));
    const RationalMatch n = recognize_rational(BigReal(Rational(-51667875, 4), p), Integer(1000000), pow2(-24, 64));
    CHECK(n.value == Rational(-51667875, 4));
    CHECK_THROWS_AS(recognize_rational(const_pi(p), Integer(100), pow2(-24, 64)), RecognitionFailure);
}

TEST_CASE("rounding is to nearest with ties to even")
{
    CHECK(BigReal(2.5, 64).round() == 2);
    CHECK(BigReal(3.5, 64).round() == 4);
    CHECK(BigReal(-2.5, 64).round() == -2);
    CHECK(BigReal(-2.75, 64).floor() == -3);
}

TEST_CASE("binary operations take the larger precision")
{
    const BigReal a(1L, 64), b(3L, 200);
    CHECK((a / b).precision() == 200);
    CHECK((b + a).precision() == 200);
    const BigReal third(Rational(1, 3), 200);
    CHECK((a / b) == third);
}

TEST_CASE("root_of_unity is on the unit circle")
{
    const Bits p = 128;
    CHECK(abs(root_of_unity(Rational(1, 4), p) - BigComplex::i(p)) < pow2(-120, 64));
    for (long k = 0; k < 24; ++k) {
        const BigComplex z = root_of_unity(Rational(k, 24), p);
        CHECK(abs(norm(z) - BigReal(1L, p)) < pow2(-120, 64));
        CHECK(abs(pow(z, 24) - BigComplex(1, 0, p)) < pow2(-115, 64));
    }
}

TEST_CASE("integer powers including negative exponents")
{
    const Bits p = 128;
    const BigComplex z = cplx(0.3, -1.7, p);
    const BigComplex a = pow(z, 7) * pow(z, -7);
    CHECK(abs(a - BigComplex(1, 0, p)) < pow2(-115, 64));
    CHECK(pow(z, 0) == BigComplex(1, 0, p));
}
