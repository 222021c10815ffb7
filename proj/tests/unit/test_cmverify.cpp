#include <doctest.h>

#include <cmforge/classpoly.hpp>
#include <cmforge/cmverify.hpp>
#include <cmforge/errors.hpp>
#include <cmforge/quadratic.hpp>
#include <cmforge/transform.hpp>

#include "test_util.hpp"

#include <algorithm>

using namespace cmforge;
using namespace cmforge::cmverify;

namespace {

std::vector<long> discriminants(long max_abs)
{
    std::vector<long> out;
    for (long D = -3; D >= -max_abs; --D)
        if (quadratic::is_discriminant(D))
            out.push_back(D);
    return out;
}

bool admissible(long D, const IntPolynomial& H, long p)
{
    const auto disc = quadratic::Discriminant::make(D);
    if (!oracle::is_prime(p) || disc.conductor % p == 0)
        return false;
    if (oracle::kronecker(disc.fundamental, p) != 1)
        return false;
    return squarefree_mod(H, p);
}

} // namespace

TEST_CASE("degree profile examples")
{
    CHECK(degree_profile(IntPolynomial{-1728, 1}, 7) == std::vector<long>{1});
    CHECK(degree_profile(classpoly::class_polynomial(-23), 2) == std::vector<long>{3});
    CHECK(degree_profile(classpoly::class_polynomial(-20), 3) == std::vector<long>{2});
    // (X - 1)^2 mod 5
    CHECK_THROWS_AS(degree_profile(IntPolynomial{1, -2, 1}, 5), NonSquarefree);
    CHECK_THROWS_AS(degree_profile(IntPolynomial{1, 1, 5}, 5), std::invalid_argument);
    CHECK_THROWS_AS(degree_profile(IntPolynomial{1, 1}, 6), std::invalid_argument);
}

TEST_CASE("degree profiles agree with brute-force factorization")
{
    long compared = 0;
    for (long D : discriminants(150)) {
        const IntPolynomial H = classpoly::class_polynomial(D).poly;
        if (H.degree() > 6)
            continue;
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
            if (!squarefree_mod(H, p))
                continue;
            if (H.degree() > 4 && p > 7)
                continue;
            auto brute = oracle::factor_degrees_brute(H.coefficients(), p);
            std::sort(brute.begin(), brute.end());
            CHECK_MESSAGE(degree_profile(H, p) == brute, "D = " << D << " p = " << p);
            const auto prof = degree_profile(H, p);
            CHECK(std::count(prof.begin(), prof.end(), 1L) == oracle::roots_mod_p(H.coefficients(), p));
            ++compared;
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("Frobenius order examples")
{
    CHECK(frobenius_order_check(-23, 2));
    CHECK(frobenius_order_check(-4, 5));
    CHECK(frobenius_order_check(-20, 3));
    CHECK_THROWS_AS(frobenius_order_check(-4, 3), std::invalid_argument);
}

TEST_CASE("splitting completeness examples")
{
    CHECK(splitting_completeness_check(-20, 29));
    CHECK(degree_profile(classpoly::class_polynomial(-20), 29) == std::vector<long>{1, 1});
    CHECK(splitting_completeness_check(-20, 3));
    CHECK(splitting_completeness_check(-4, 13));
}

TEST_CASE("decomposition law for split p <= 50 and |D| <= 100")
{
    for (long D : discriminants(100)) {
        const IntPolynomial H = classpoly::class_polynomial(D).poly;
        const quadratic::ClassGroup G(D);
        for (long p = 2; p <= 50; ++p) {
            if (!admissible(D, H, p))
                continue;
            CHECK_MESSAGE(frobenius_order_check(D, p), "D = " << D << " p = " << p);
            CHECK_MESSAGE(splitting_completeness_check(D, p), "D = " << D << " p = " << p);
            // Oracle side of the law: root count vs representation by the principal form.
            const long roots = oracle::roots_mod_p(H.coefficients(), p);
            CHECK((roots == H.degree()) == oracle::principal_represents(D, p));
            for (long d : degree_profile(H, p))
                CHECK(G.exponent() % d == 0);
        }
    }
}

TEST_CASE("genus examples and sweep")
{
    CHECK(genus_check(-23));
    CHECK(genus_check(-20));
    CHECK(genus_check(-84));
    for (long D : discriminants(400))
        CHECK_MESSAGE(genus_check(D), "D = " << D);
}

TEST_CASE("conductor correspondence")
{
    for (auto [dK, f, fp] : std::vector<std::tuple<long, long, long>>{
             {-4, 1, 2}, {-3, 1, 2}, {-7, 1, 2}, {-4, 1, 3}, {-3, 2, 4}, {-8, 1, 2}, {-4, 1, 1}}) {
        const CorrespondenceResult r = correspondence_report(dK, f, fp);
        CHECK_MESSAGE(r.pass, dK << " " << f << " " << fp);
        CHECK(r.max_match_distance < 1e-20);
    }
    CHECK_THROWS_AS(correspondence_check(-4, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(correspondence_check(-4, 1, 8), UnsupportedLevel);
}

TEST_CASE("J_2 relates j(2i) and j(i); j(-12) and j(-3)")
{
    const auto J2 = transform::modular_polynomial_J(2);
    CHECK(J2.specialize_y(Integer(287496)).evaluate(Integer(1728)) == 0);
    CHECK(classpoly::class_polynomial(-12).poly == IntPolynomial{-54000, 1});
    CHECK(J2.specialize_y(Integer(54000)).evaluate(Integer(0)) == 0);
}

TEST_CASE("congruence product examples")
{
    const CongruenceProduct c4 = congruence_product(-4, 5);
    Integer expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 1728, 5);
    expect -= 1728;
    CHECK(c4.a == 2 * expect);
    CHECK(c4.b == 0);
    CHECK(c4.pass);
    CHECK(c4.norm % 5 == 0);

    const CongruenceProduct c23 = congruence_product(-23, 2);
    CHECK(c23.pass);
    CHECK(c23.a == Integer("107463689206061285216796875"));
    CHECK(c23.b == Integer("-46293181984567603271484375"));
    CHECK(c23.norm == (c23.a * c23.a + 23 * c23.b * c23.b) / 4);

    const CongruenceProduct c20 = congruence_product(-20, 3);
    CHECK(c20.pass);
    CHECK(c20.norm % 3 == 0);
    CHECK_THROWS_AS(congruence_product(-4, 3), std::invalid_argument);
}

TEST_CASE("congruence product across small discriminants")
{
    for (long D : {-7L, -8L, -11L, -15L, -24L, -31L, -39L, -56L}) {
        for (long p : {2L, 3L, 5L, 7L}) {
            if (quadratic::Discriminant::make(D).conductor % p == 0)
                continue;
            if (quadratic::splitting_type(D, p) != quadratic::Splitting::split)
                continue;
            CHECK_MESSAGE(congruence_product_check(D, p), "D = " << D << " p = " << p);
        }
    }
}

TEST_CASE("relative residual")
{
    const auto J1 = transform::modular_polynomial_J(1);
    const auto x = testutil::cplx(3, 4, 128);
    CHECK(relative_residual(J1, x, x) == 0.0);
    CHECK(relative_residual(J1, x, testutil::cplx(-3, -4, 128)) == doctest::Approx(1.0));
}
