#include <doctest.h>

#include <cmforge/cyclotomic.hpp>
#include <cmforge/qseries.hpp>

#include "test_util.hpp"

using namespace cmforge;
using namespace cmforge::qseries;

TEST_CASE("eta series matches the expanded Euler product")
{
    const IntSeries eta = eta_series(6);
    CHECK(eta.denom() == 24);
    CHECK(eta.low() == 1);
    const std::vector<long> expected{1, -1, -1, 0, 0, 1};
    for (long k = 0; k < 6; ++k)
        CHECK(eta.at(1 + 24 * k) == expected[k]);
    // Only exponents 1/24 + integer occur.
    for (long n = eta.low(); n <= eta.high(); ++n)
        if ((n - 1) % 24 != 0)
            CHECK(eta.at(n) == 0);
}

TEST_CASE("eta series at a pentagonal exponent")
{
    const IntSeries eta = eta_series(8);
    CHECK(eta.at(1 + 24 * 7) == 1);
    CHECK(eta.at(1 + 24 * 6) == 0);
    CHECK_THROWS_AS(eta_series(0), std::invalid_argument);
}

TEST_CASE("first 50 coefficients of eta, delta and j are the oracle's integers")
{
    const auto prod1 = oracle::euler_product_power(1, 50);
    const IntSeries eta = eta_series(50);
    for (long k = 0; k < 50; ++k)
        CHECK(eta.at(1 + 24 * k) == prod1[k]);

    const auto prod24 = oracle::euler_product_power(24, 50);
    const IntSeries delta = delta_series(50);
    CHECK(delta.low() == 1);
    CHECK(delta.high() == 50);
    for (long k = 0; k < 50; ++k)
        CHECK(delta.at(k + 1) == prod24[k]);

    const auto jc = oracle::j_coefficients(50);
    const IntSeries j = j_series(50);
    CHECK(j.low() == -1);
    CHECK(j.high() == 48);
    for (long k = 0; k < 50; ++k)
        CHECK(j.at(k - 1) == jc[k]);
}

TEST_CASE("named coefficients of delta and j")
{
    const IntSeries delta = delta_series(4);
    CHECK(delta.at(1) == 1);
    CHECK(delta.at(2) == -24);
    CHECK(delta.at(3) == 252);
    CHECK(delta.at(4) == -1472);
    const IntSeries j = j_series(5);
    CHECK(j.at(-1) == 1);
    CHECK(j.at(0) == 744);
    CHECK(j.at(1) == 196884);
    CHECK(j.at(2) == 21493760);
}

TEST_CASE("delta is the 24th power of eta")
{
    const IntSeries eta = eta_series(30);
    const IntSeries eta24 = eta.pow(24);
    CHECK(eta24.agrees_with(delta_series(30)));
    CHECK(eta24.denom() == 24);
}

TEST_CASE("exact and integer routes to j agree")
{
    const RatSeries exact = j_series_exact(40);
    const IntSeries j = j_series(40);
    CHECK(to_integer(exact) == j);
}

TEST_CASE("j times delta is 1728 g2^3")
{
    const long n = 30;
    const RatSeries lhs = to_rational(j_series(n + 1) * delta_series(n));
    const RatSeries g2 = g2_series(n);
    const RatSeries rhs = (g2 * g2 * g2).scaled(Rational(1728));
    CHECK(lhs.agrees_with(rhs));
    CHECK(std::min(lhs.high(), rhs.high()) >= n - 2);
}

TEST_CASE("discriminant built from Eisenstein series is the Euler product")
{
    const RatSeries d = discriminant_series(25);
    CHECK(d.agrees_with(to_rational(delta_series(25))));
}

TEST_CASE("Bernoulli numbers in both indexings")
{
    CHECK(bernoulli_classical(1) == Rational(1, 6));
    CHECK(bernoulli_classical(2) == Rational(1, 30));
    CHECK(bernoulli_classical(3) == Rational(1, 42));
    CHECK(bernoulli_classical(6) == Rational(691, 2730));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(12) == Rational(-691, 2730));
    for (long m = 1; m <= 10; ++m) {
        const Rational b = bernoulli(2 * m);
        CHECK(bernoulli_classical(m) == (b < 0 ? Rational(-b) : b));
    }
}

TEST_CASE("Eisenstein series normalize to E4 and E6")
{
    const RatSeries g4 = eisenstein_series(2, 20);
    CHECK(g4.at(0) == Rational(1, 30));
    CHECK(g4.at(1) == 8);
    const RatSeries g6 = eisenstein_series(3, 20);
    CHECK(g6.at(0) == Rational(1, 42));
    CHECK(g6.at(1) == -12);
    for (long n = 1; n < 20; ++n) {
        CHECK(g4.at(n) / g4.at(0) == Rational(240 * oracle::sigma(3, n)));
        CHECK(g6.at(n) / g6.at(0) == Rational(-504 * oracle::sigma(5, n)));
    }
    CHECK(divisor_sigma(3, 6) == 1 + 8 + 27 + 216);
    CHECK_THROWS_AS(eisenstein_series(1, 10), std::invalid_argument);
}

TEST_CASE("substitute_conjugate on the j series")
{
    const IntSeries j = j_series(12);
    SUBCASE("q -> q^level")
    {
        const CycSeries s = substitute_conjugate(j, 3, 0, 1, 3);
        CHECK(s.denom() == 1);
        CHECK(s.at(-3) == CycInt(3, 1));
        CHECK(s.at(0) == CycInt(3, 744));
        CHECK(s.at(3) == CycInt(3, 196884));
        CHECK(s.at(1).is_zero());
    }
    SUBCASE("q -> q^(1/p)")
    {
        const CycSeries s = substitute_conjugate(j, 1, 0, 5, 5);
        CHECK(s.denom() == 5);
        CHECK(s.at(-1) == CycInt(5, 1));
        CHECK(s.at(1) == CycInt(5, 196884));
    }
    SUBCASE("a root of unity appears for b != 0")
    {
        const CycSeries s = substitute_conjugate(j, 1, 1, 2, 2);
        CHECK(s.at(-1) == CycInt(2, -1));
        CHECK(s.at(0) == CycInt(2, 744));
        CHECK(s.at(1) == CycInt(2, -196884));
    }
}

TEST_CASE("sum of conjugates over b is rational")
{
    const IntSeries j = j_series(20);
    for (long p : {2L, 3L, 5L, 7L}) {
        CycSeries sum = substitute_conjugate(j, 1, 0, p, p);
        for (long b = 1; b < p; ++b)
            sum = sum + substitute_conjugate(j, 1, b, p, p);
        const IntSeries r = rational_part(sum);
        for (long n = r.low(); n <= r.high(); ++n) {
            if (n % p == 0)
                CHECK(r.at(n) == p * j.at(n));
            else
                CHECK(r.at(n) == 0);
        }
        CHECK(integral_exponents(r).denom() == 1);
    }
}

TEST_CASE("a single conjugate is not rational")
{
    const CycSeries s = substitute_conjugate(j_series(10), 1, 1, 3, 3);
    CHECK_THROWS_AS(rational_part(s), ReductionFailure);
    const IntSeries frac(3, -1, {1, 0, 744});
    CHECK_THROWS_AS(integral_exponents(frac), ReductionFailure);
}

TEST_CASE("series_to_j_polynomial inverts evaluation at j")
{
    const IntSeries jq = j_series(40);
    CHECK(series_to_j_polynomial(jq, jq) == IntPolynomial{0, 1});
    CHECK(series_to_j_polynomial(IntSeries::constant(5, 1, 30), jq) == IntPolynomial{5});
    CHECK(series_to_j_polynomial(jq * jq, jq) == IntPolynomial{0, 0, 1});

    std::uniform_int_distribution<long> coef(-1000000, 1000000);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Integer> c;
        for (int k = 0; k <= 5; ++k)
            c.emplace_back(coef(testutil::rng()));
        c.back() = 1;
        const IntPolynomial A(c);
        IntSeries s = IntSeries::constant(c[0], 1, 30);
        IntSeries power = IntSeries::constant(1, 1, 40);
        for (std::size_t k = 1; k < c.size(); ++k) {
            power = power * jq;
            s = s + power.scaled(c[k]);
        }
        CHECK(series_to_j_polynomial(s, jq) == A);
    }
}

TEST_CASE("series_to_j_polynomial refuses an exhausted budget")
{
    const IntSeries jq = j_series(4);
    const IntSeries p5 = jq.pow(5);
    CHECK_THROWS_AS(series_to_j_polynomial(p5, jq), ReductionFailure);
    // Not a polynomial in j: the q^1 term of j^2 - 1488 j is perturbed.
    const IntSeries jq30 = j_series(30);
    std::vector<Integer> perturb(20, 0);
    perturb[0] = 1;
    const IntSeries bad = jq30 * jq30 + IntSeries(1, 1, perturb);
    CHECK_THROWS_AS(series_to_j_polynomial(bad, jq30), ReductionFailure);
}

TEST_CASE("truncation order is tracked through products")
{
    const IntSeries a(1, -1, {1, 2, 3, 4});  // known through q^2
    const IntSeries b(1, 2, {5, 6});         // known through q^3
    const IntSeries c = a * b;
    CHECK(c.low() == 1);
    CHECK(c.high() == std::min(a.high() + 2, b.high() - 1));
    CHECK(c.at(1) == 5);
    CHECK(c.at(2) == 16);
    CHECK_THROWS_AS(c.at(c.high() + 1), std::out_of_range);
}

TEST_CASE("series inverse")
{
    const IntSeries d = delta_series(30);
    const IntSeries inv = inverse(d);
    const IntSeries one = d * inv;
    CHECK(one.at(0) == 1);
    for (long n = 1; n <= one.high(); ++n)
        CHECK(one.at(n) == 0);
    CHECK_THROWS_AS(inverse(IntSeries(1, 0, {2, 1})), std::domain_error);
}

TEST_CASE("cyclotomic integers in canonical form")
{
    for (long p : {2L, 3L, 5L, 7L}) {
        CycInt sum;
        for (long k = 0; k < p; ++k)
            sum += CycInt::zeta_power(p, k);
        CHECK(sum.is_zero());
        const CycInt z = CycInt::zeta_power(p, 1);
        CycInt zp = CycInt(p, 1);
        for (long k = 0; k < p; ++k)
            zp *= z;
        CHECK(zp == CycInt(p, 1));
        const auto& c = CycInt::zeta_power(p, p - 1).coords();
        for (std::size_t k = static_cast<std::size_t>(euler_phi(p)); k < c.size(); ++k)
            CHECK(c[k] == 0);
    }
    for (long n : {4L, 6L, 8L, 9L, 12L}) {
        const CycInt z = CycInt::zeta_power(n, 1);
        const auto& c = CycInt::zeta_power(n, n - 1).coords();
        for (std::size_t k = static_cast<std::size_t>(euler_phi(n)); k < c.size(); ++k)
            CHECK(c[k] == 0);
        CHECK(cyclotomic_polynomial(n).size() == static_cast<std::size_t>(euler_phi(n) + 1));
        const auto enc = z.to_complex(128);
        const auto ref = numerics::root_of_unity(Rational(1, n), 128);
        CHECK(numerics::abs(enc - ref) < numerics::pow2(-120, 64));
    }
}

TEST_CASE("cyclotomic Galois action and rationality")
{
    const CycInt z = CycInt::zeta_power(5, 1);
    const CycInt a = z + CycInt::zeta_power(5, 4);
    CHECK(!a.is_rational());
    CHECK(a.galois(4) == a);
    CHECK(a.galois(2) != a);
    CHECK((a + a.galois(2)).is_rational());
    CHECK((a + a.galois(2)).rational_value() == -1);
    CHECK(testutil::rel_diff(z.lifted(10).to_complex(128), z.to_complex(128)) < 1e-30);
    CHECK_THROWS_AS(z.galois(5), std::invalid_argument);
}

TEST_CASE("series evaluation at a numeric q")
{
    // j at tau = i from its first 60 coefficients.
    const numerics::Bits p = 128;
    const auto q = numerics::exp_c(numerics::BigComplex(-(numerics::const_pi(p) * 2L), numerics::BigReal(0L, p)));
    const auto v = evaluate(j_series(60), q);
    CHECK(std::abs(v.real().to_double() - 1728) < 1e-20 * 1728 + 1e-15);
}
