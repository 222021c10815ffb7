#pragma once

// Checks of the class field theory of imaginary quadratic orders that can be
// run with exact integers and high-precision complex arithmetic.

#include <cmforge/classpoly.hpp>
#include <cmforge/numerics.hpp>
#include <cmforge/polynomial.hpp>

#include <vector>

namespace cmforge::cmverify {

// Degrees of the irreducible factors of H mod p, ascending.
// Throws NonSquarefree if gcd(H, H') != 1 mod p and std::invalid_argument if
// p divides the leading coefficient.
std::vector<long> degree_profile(const IntPolynomial& H, long p);
std::vector<long> degree_profile(const classpoly::ClassPolynomial& H, long p);

// True when H mod p is squarefree with the degree preserved.
bool squarefree_mod(const IntPolynomial& H, long p);

// Every factor degree equals the order of the class of a prime above p.
// Precondition: p split and prime to the conductor.
bool frobenius_order_check(long D, long p);

// Complete splitting mod p iff p is a norm from the order.
bool splitting_completeness_check(long D, long p);

// [Cl : Cl^2] equals the number of ambiguous classes.
bool genus_check(long D);

struct CorrespondenceResult {
    bool pass = false;
    // Worst |J_s(candidate, j')| relative to the size of its terms.
    double max_root_residual = 0;
    // Worst distance from a matched candidate to its root of the smaller order.
    double max_match_distance = 0;
};

// Each class invariant of the order of conductor f' sees exactly one of its
// transforms j(S tau') among the class invariants of conductor f. Requires
// f | f' and f'/f a supported transformation level.
CorrespondenceResult correspondence_report(long d_K, long f, long f_prime);
bool correspondence_check(long d_K, long f, long f_prime);

struct CongruenceProduct {
    // N = (a + b sqrt(d_K)) / 2
    Integer a;
    Integer b;
    Integer norm;
    double residual = 0;
    bool pass = false;
};

// N = prod_k (j(k)^p - j(k P^-1)) over all classes k, recognized in the ring
// of integers of the field; pass iff p divides its norm.
CongruenceProduct congruence_product(long D, long p);
bool congruence_product_check(long D, long p);

// |P(x, y)| / sum |c_ij| |x|^i |y|^j
double relative_residual(const BiPolynomial& P, const numerics::BigComplex& x, const numerics::BigComplex& y);

} // namespace cmforge::cmverify
