#include <doctest.h>

#include <cmforge/division.hpp>
#include <cmforge/errors.hpp>
#include <cmforge/modforms.hpp>

#include "test_util.hpp"

#include <algorithm>
#include <cmath>

using namespace cmforge;
using namespace cmforge::division;
using modforms::CMPoint;
using testutil::rel_diff;

namespace {

bool is_power_of(Integer n, long l)
{
    while (n % l == 0)
        n /= l;
    return n == 1;
}

// Greedy multiset comparison within a relative tolerance.
bool same_multiset(std::vector<BigComplex> a, std::vector<BigComplex> b, double tol)
{
    if (a.size() != b.size())
        return false;
    for (const auto& x : a) {
        auto it = std::find_if(b.begin(), b.end(), [&](const BigComplex& y) { return rel_diff(x, y) < tol; });
        if (it == b.end())
            return false;
        b.erase(it);
    }
    return true;
}

} // namespace

TEST_CASE("proper division counts")
{
    for (long N = 2; N <= 12; ++N) {
        long brute = 0;
        for (long x1 = 0; x1 < N; ++x1)
            for (long x2 = 0; x2 < N; ++x2)
                if (std::gcd(std::gcd(x1, x2), N) == 1)
                    ++brute;
        CHECK(proper_division_count(N) == brute);
    }
    CHECK(proper_division_count(2) == 3);
    CHECK(proper_division_count(6) == 24);
}

TEST_CASE("division values")
{
    const CMPoint pt = CMPoint::from_form({1, 1, 2}, 128);
    const auto v2 = division_values(2, pt, 128);
    CHECK(v2.size() == 3);
    CHECK_THROWS_AS(division_values(1, pt, 128), std::invalid_argument);
    // Only the residues of (x1, x2) mod N matter.
    const long N = 3;
    const auto v3 = division_values(N, pt, 128);
    const BigComplex z = (pt.tau * BigComplex(1 + N, 0, 128) + BigComplex(2, 0, 128)) / BigComplex(N, 0, 128);
    // (1, 2) sits at index 5 of the lexicographic list (0,1),(0,2),(1,0),(1,1),(1,2),...
    CHECK(rel_diff(modforms::weber_value(z, pt, 128), v3[4]) < 1e-30);
}

TEST_CASE("T_2 for D = -7 against the long-double oracle")
{
    const CMPoint pt = CMPoint::from_form({1, 1, 2}, 128);
    const DivisionPolynomial T = division_polynomial(2, pt);
    REQUIRE(T.degree() == 3);
    const oracle::cld tau = testutil::to_cld(pt.tau);
    std::vector<oracle::cld> roots;
    for (auto [x1, x2] : std::vector<std::pair<long, long>>{{0, 1}, {1, 0}, {1, 1}})
        roots.push_back(oracle::weber((static_cast<long double>(x1) * tau + static_cast<long double>(x2)) / 2.0L, tau, 2));
    const auto ref = oracle::poly_from_roots(roots);
    for (std::size_t k = 0; k < ref.size(); ++k) {
        const long double c = T.coeffs[k].get_d();
        CHECK(std::abs(ref[k].real() - c) < 1e-9L * std::max(1.0L, std::abs(c)));
    }
    CHECK(T.coeffs == std::vector<Rational>{Rational("-175774110750"), Rational(-51667875), Rational(0), Rational(1)});
    CHECK(4 % T.denominator == 0);
}

TEST_CASE("T_2 for D = -7 is stable across precisions")
{
    const CMPoint pt = CMPoint::from_form({1, 1, 2}, 128);
    CHECK(division_polynomial(2, pt, 256).coeffs == division_polynomial(2, pt, 512).coeffs);
}

TEST_CASE("prime power levels have l-power denominators")
{
    const CMPoint p8 = CMPoint::from_form({1, 0, 2}, 128);
    const DivisionPolynomial T3 = division_polynomial(3, p8);
    CHECK(T3.degree() == 8);
    CHECK(is_power_of(T3.denominator, 3));
    CHECK(T3.coeffs.back() == 1);
    const CMPoint p7 = CMPoint::from_form({1, 1, 2}, 128);
    const DivisionPolynomial T4 = division_polynomial(4, p7);
    CHECK(T4.degree() == 12);
    CHECK(is_power_of(T4.denominator, 2));
    const DivisionPolynomial T5 = division_polynomial(5, CMPoint::from_form({1, 1, 3}, 128));
    CHECK(T5.degree() == 24);
    CHECK(is_power_of(T5.denominator, 5));
}

TEST_CASE("T_6 for D = -7 has integer coefficients")
{
    const CMPoint pt = CMPoint::from_form({1, 1, 2}, 128);
    const DivisionPolynomial T6 = division_polynomial(6, pt);
    CHECK(T6.degree() == 24);
    CHECK(T6.denominator == 1);
    for (const auto& c : T6.coeffs)
        CHECK(c.get_den() == 1);
}

TEST_CASE("division polynomial preconditions")
{
    CHECK_THROWS_AS(division_polynomial(2, CMPoint::from_form({2, 1, 3}, 128)), ClassNumberNotOne);
    CHECK_THROWS_AS(division_polynomial(7, CMPoint::from_form({1, 1, 2}, 128)), std::invalid_argument);
}

TEST_CASE("unimodular change of basis permutes the division values")
{
    const Bits prec = 160;
    const CMPoint pt = CMPoint::from_form({1, 1, 3}, prec);
    for (long N : {2L, 3L, 4L}) {
        std::vector<BigComplex> base = division_values(N, pt, prec);
        for (const auto& M : {modforms::ModMatrix{1, 1, 0, 1}, modforms::ModMatrix{0, -1, 1, 0},
                              modforms::ModMatrix{2, 1, 1, 1}}) {
            const modforms::Lattice L{BigComplex(M.alpha, 0, prec) * pt.tau + BigComplex(M.beta, 0, prec),
                                      BigComplex(M.gamma, 0, prec) * pt.tau + BigComplex(M.delta, 0, prec)};
            std::vector<BigComplex> moved;
            for (long x1 = 0; x1 < N; ++x1)
                for (long x2 = 0; x2 < N; ++x2) {
                    if (std::gcd(std::gcd(x1, x2), N) != 1)
                        continue;
                    const BigComplex z = (BigComplex(x1, 0, prec) * L.w1 + BigComplex(x2, 0, prec) * L.w2)
                                         / BigComplex(N, 0, prec);
                    moved.push_back(modforms::weber_value(z, L, pt.e, prec));
                }
            CHECK(same_multiset(base, moved, 1e-35));
        }
    }
}

TEST_CASE("element arithmetic")
{
    // theta = i for d_K = -4; i * i = -1
    CHECK(multiply(-4, {0, 1}, {0, 1}) == Element{-1, 0});
    CHECK(element_norm(-4, {1, 1}) == 2);
    // theta = (-1 + sqrt(-3)) / 2 has theta^2 = -theta - 1
    CHECK(multiply(-3, {0, 1}, {0, 1}) == Element{-1, -1});
    CHECK(element_norm(-7, {0, 1}) == 2);
    for (long dK : {-3L, -4L, -7L, -8L, -11L})
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y)
                for (long u = -3; u <= 3; ++u)
                    for (long v = -3; v <= 3; ++v)
                        CHECK(element_norm(dK, multiply(dK, {x, y}, {u, v})) == element_norm(dK, {x, y}) * element_norm(dK, {u, v}));
}

TEST_CASE("ray class group examples")
{
    const RayClassGroup g43 = ray_class_group(-4, {3, 0});
    CHECK(g43.norm == 9);
    CHECK(g43.invertible.size() == 8);
    CHECK(g43.count() == 2);
    const RayClassGroup g32 = ray_class_group(-3, {2, 0});
    CHECK(g32.invertible.size() == 3);
    CHECK(g32.count() == 1);
    const RayClassGroup g4i = ray_class_group(-4, {1, 1});
    CHECK(g4i.invertible.size() == 1);
    CHECK(g4i.count() == 1);
    CHECK(ray_class_group(-4, {5, 0}).count() == 4);
    CHECK_THROWS_AS(ray_class_group(-15, {2, 0}), ClassNumberNotOne);
    CHECK_THROWS_AS(ray_class_group(-12, {2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(ray_class_group(-4, {8, 0}), std::invalid_argument);
}

TEST_CASE("ray class counts against brute force")
{
    for (long dK : {-3L, -4L, -7L, -8L, -11L}) {
        const long units = dK == -3 ? 6 : dK == -4 ? 4 : 2;
        for (long a = 1; a <= 6; ++a)
            for (long b = 0; b <= 3; ++b) {
                const Element m{a, b};
                const long nm = element_norm(dK, m);
                if (nm < 1 || nm > 50)
                    continue;
                const RayClassGroup g = ray_class_group(dK, m);
                CHECK(static_cast<long>(g.units.size()) == units);
                // Every class is an orbit of the unit group.
                long orbit_total = 0;
                for (std::size_t k = 0; k < static_cast<std::size_t>(g.count()); ++k) {
                    std::vector<Element> orbit;
                    for (const auto& u : g.units) {
                        const Element e = reduce(g, multiply(dK, u, g.representatives[k]));
                        if (std::find(orbit.begin(), orbit.end(), e) == orbit.end())
                            orbit.push_back(e);
                        CHECK(class_index(g, e) == k);
                    }
                    orbit_total += static_cast<long>(orbit.size());
                }
                CHECK(orbit_total == static_cast<long>(g.invertible.size()));
            }
    }
}

TEST_CASE("ray class invariants depend only on the class and separate classes")
{
    const Bits prec = 192;
    for (auto [dK, m] : std::vector<std::pair<long, Element>>{{-4, {3, 0}}, {-4, {5, 0}}, {-3, {4, 0}}, {-7, {3, 0}}}) {
        const RayClassGroup g = ray_class_group(dK, m);
        std::vector<BigComplex> values;
        for (std::size_t k = 0; k < static_cast<std::size_t>(g.count()); ++k) {
            const Element r = g.representatives[k];
            const BigComplex v = ray_class_invariant(g, k, prec);
            CHECK(std::isfinite(v.real().to_double()));
            // r' = r + m * t is congruent to r mod m.
            for (const Element& t : {Element{1, 0}, Element{0, 1}, Element{2, -1}}) {
                const Element mt = multiply(dK, m, t);
                const Element r2{r.x + mt.x, r.y + mt.y};
                const BigComplex v2 = ray_class_invariant(g, r2, prec);
                CHECK(rel_diff(v, v2) < std::ldexp(1.0, -(prec - 32)));
            }
            // A unit multiple is in the same class.
            const BigComplex vu = ray_class_invariant(g, multiply(dK, g.units.back(), r), prec);
            CHECK(rel_diff(v, vu) < std::ldexp(1.0, -(prec - 32)));
            values.push_back(v);
        }
        for (std::size_t a = 0; a < values.size(); ++a)
            for (std::size_t b = a + 1; b < values.size(); ++b)
                CHECK(rel_diff(values[a], values[b]) > 1e-10);
    }
    const RayClassGroup g = ray_class_group(-4, {3, 0});
    CHECK_THROWS_AS(class_index(g, {3, 0}), std::invalid_argument);
}

TEST_CASE("ray class polynomials")
{
    const RayClassGroup g = ray_class_group(-4, {3, 0});
    const RayClassPolynomial S = ray_class_polynomial(g, 256);
    CHECK(S.degree() == g.count());
    CHECK(S.max_residual < std::ldexp(1.0, -24));
    const std::vector<FieldElement> expect{{Rational(-8957952), 0}, {Rational(-10368), 0}, {Rational(1), 0}};
    CHECK(S.coeffs == expect);
    CHECK(ray_class_polynomial(g, 512).coeffs == S.coeffs);

    const RayClassPolynomial one = ray_class_polynomial(ray_class_group(-4, {1, 0}));
    CHECK(one.coeffs == std::vector<FieldElement>{{Rational(1), 0}});
    CHECK(one.degree() == 0);

    const RayClassPolynomial s5 = ray_class_polynomial(ray_class_group(-4, {5, 0}));
    CHECK(s5.degree() == 4);
    const RayClassPolynomial s7 = ray_class_polynomial(ray_class_group(-7, {2, 1}));
    CHECK(s7.degree() == 1);
    CHECK(s7.coeffs[0] == FieldElement{0, -1215});
    for (auto [dK, m] : std::vector<std::pair<long, Element>>{{-3, {3, 0}}, {-8, {3, 0}}, {-11, {3, 0}}, {-3, {2, 1}}}) {
        const RayClassGroup rg = ray_class_group(dK, m);
        const RayClassPolynomial P = ray_class_polynomial(rg);
        CHECK(P.degree() == rg.count());
        CHECK(P.coeffs.back() == FieldElement{1, 0});
        CHECK(P.max_residual < std::ldexp(1.0, -24));
    }
}
