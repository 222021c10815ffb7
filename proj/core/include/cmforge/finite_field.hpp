#pragma once

#include <cmforge/polynomial.hpp>

#include <vector>

namespace cmforge::ff {

// Dense polynomial over Z/pZ, low to high, trimmed. p must fit comfortably
// in 32 bits so products fit in 64.
class PolyModP {
public:
    PolyModP(long p, std::vector<long> coeffs);
    static PolyModP from_integer(const IntPolynomial& f, long p);
    static PolyModP x(long p);

    long modulus() const { return p_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<long>& coefficients() const { return c_; }

    PolyModP monic() const;
    PolyModP derivative() const;
    friend PolyModP operator-(const PolyModP& a, const PolyModP& b);
    friend PolyModP operator*(const PolyModP& a, const PolyModP& b);
    // Remainder and quotient.
    friend PolyModP operator%(const PolyModP& a, const PolyModP& b);
    friend PolyModP operator/(const PolyModP& a, const PolyModP& b);
    friend bool operator==(const PolyModP&, const PolyModP&) = default;

private:
    void trim();
    long p_;
    std::vector<long> c_;
};

PolyModP gcd(PolyModP a, PolyModP b);
// base^e mod m for e >= 0.
PolyModP powmod(const PolyModP& base, long e, const PolyModP& m);

// Degrees of the irreducible factors of a squarefree f, sorted ascending,
// by distinct-degree factorization.
std::vector<long> distinct_degree_profile(const PolyModP& f);

} // namespace cmforge::ff
