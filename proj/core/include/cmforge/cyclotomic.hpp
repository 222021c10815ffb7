#pragma once

#include <cmforge/numerics.hpp>

#include <vector>

namespace cmforge {

// Element of Z[zeta_s] written in the power basis zeta^0 .. zeta^{s-1}.
//
// The canonical form is the remainder modulo the s-th cyclotomic polynomial,
// so coordinates at index >= phi(s) are zero; for prime s this is the
// relation 1 + zeta + ... + zeta^{s-1} = 0 with the last coordinate zero.
// A default-constructed value is the zero of every level and adopts the level
// of whatever it is combined with.
class CycInt {
public:
    static constexpr long kMaxLevel = 64;

    CycInt() = default;
    CycInt(long level, const Integer& rational);
    // c * zeta_level^k
    static CycInt zeta_power(long level, long k, const Integer& c = 1);

    long level() const { return level_; }
    bool is_zero() const;
    bool is_rational() const;
    // Throws std::domain_error unless is_rational().
    Integer rational_value() const;
    // Canonical coordinates; empty for the universal zero.
    const std::vector<Integer>& coords() const { return c_; }

    // Same element viewed in Z[zeta_m] for a multiple m of level().
    CycInt lifted(long m) const;
    // The automorphism zeta -> zeta^r, gcd(r, level) = 1.
    CycInt galois(long r) const;

    CycInt& operator+=(const CycInt& rhs);
    CycInt& operator-=(const CycInt& rhs);
    CycInt& operator*=(const CycInt& rhs);
    CycInt& operator*=(const Integer& k);
    CycInt operator-() const;
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(CycInt a, const CycInt& b) { return a *= b; }
    friend CycInt operator*(CycInt a, const Integer& k) { return a *= k; }
    friend CycInt operator*(const Integer& k, CycInt a) { return a *= k; }
    friend bool operator==(const CycInt& a, const CycInt& b);

    numerics::BigComplex to_complex(numerics::Bits prec) const;

private:
    void align(const CycInt& other);
    void reduce();

    long level_ = 0;
    std::vector<Integer> c_;
};

// Coefficients of the n-th cyclotomic polynomial, low to high.
const std::vector<long>& cyclotomic_polynomial(long n);
long euler_phi(long n);

inline bool is_zero(const CycInt& x) { return x.is_zero(); }
inline bool is_zero(const Integer& x) { return x == 0; }
inline bool is_zero(const Rational& x) { return x == 0; }

} // namespace cmforge
