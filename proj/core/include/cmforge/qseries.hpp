#pragma once

// Exact truncated Laurent series in q^{1/l}.
//
// A QSeries<C> with denominator l holds the coefficients of q^{n/l} for
// n = low() .. high(); everything above high() is unknown. Arithmetic tracks
// the known range exactly and never extrapolates past it.
//
// The transcendental factors of the classical forms are never stored. With
// q = e^{2 pi i w}:
//   G_m(w) = (2 pi)^{2m} / (2m)! * eisenstein_series(m)
//   g2(w)  = (2 pi)^4  * g2_series()       (g2_series = E4 / 12)
//   g3(w)  = (2 pi)^6  * g3_series()       (g3_series = E6 / 216)
//   Delta  = (2 pi)^12 * delta_series()    (delta_series = q prod (1 - q^n)^24)
//   j      = 1728 g2^3 / Delta = j_series()

#include <cmforge/cyclotomic.hpp>
#include <cmforge/errors.hpp>
#include <cmforge/numerics.hpp>
#include <cmforge/polynomial.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmforge {

template <class C>
class QSeries {
public:
    QSeries() = default;
    // Coefficients of q^{(low + k)/denom}, k = 0 .. coeffs.size() - 1.
    QSeries(long denom, long low, std::vector<C> coeffs)
        : denom_(denom), low_(low), c_(std::move(coeffs))
    {
        if (denom < 1)
            throw std::invalid_argument("q-series denominator must be positive");
    }

    // Zero series known through q^{high/denom}.
    static QSeries zero(long denom, long high) { return QSeries(denom, high + 1, {}); }
    static QSeries constant(const C& c, long denom, long high)
    {
        if (high < 0)
            throw std::invalid_argument("constant series must be known through q^0");
        std::vector<C> v(high + 1);
        v[0] = c;
        return QSeries(denom, 0, std::move(v));
    }

    long denom() const { return denom_; }
    long low() const { return low_; }
    // Last known exponent numerator.
    long high() const { return low_ + static_cast<long>(c_.size()) - 1; }
    const std::vector<C>& coefficients() const { return c_; }

    // Coefficient of q^{n/denom}; zero below low(), error above high().
    C at(long n) const
    {
        if (n > high())
            throw std::out_of_range("coefficient beyond the known truncation order");
        if (n < low_)
            return C{};
        return c_[n - low_];
    }

    // Numerator of the first nonzero exponent, or high() + 1 if all known
    // coefficients vanish.
    long valuation() const
    {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!is_zero(c_[k]))
                return low_ + static_cast<long>(k);
        return high() + 1;
    }

    bool is_known_zero() const { return valuation() > high(); }

    // Same series in q^{1/(denom * factor)}.
    QSeries rescaled(long factor) const
    {
        if (factor < 1)
            throw std::invalid_argument("rescale factor must be positive");
        if (factor == 1)
            return *this;
        const long new_low = low_ * factor;
        const long new_high = (high() + 1) * factor - 1;
        std::vector<C> v(new_high - new_low + 1);
        for (std::size_t k = 0; k < c_.size(); ++k)
            v[k * factor] = c_[k];
        return QSeries(denom_ * factor, new_low, std::move(v));
    }

    QSeries with_denom(long d) const
    {
        if (d % denom_ != 0)
            throw std::invalid_argument("target denominator must be a multiple");
        return rescaled(d / denom_);
    }

    // Drops everything above q^{h/denom}.
    QSeries truncated(long h) const
    {
        if (h >= high())
            return *this;
        if (h < low_)
            return zero(denom_, h);
        return QSeries(denom_, low_, std::vector<C>(c_.begin(), c_.begin() + (h - low_ + 1)));
    }

    // Strips leading zero coefficients without changing the known range.
    QSeries normalized() const
    {
        const long v = valuation();
        if (v == low_)
            return *this;
        return QSeries(denom_, v, std::vector<C>(c_.begin() + (v - low_), c_.end()));
    }

    // Multiplies by q^{shift/denom}.
    QSeries shifted(long shift) const { return QSeries(denom_, low_ + shift, c_); }

    template <class F>
    auto map(F&& f) const -> QSeries<decltype(f(std::declval<const C&>()))>
    {
        using D = decltype(f(std::declval<const C&>()));
        std::vector<D> v;
        v.reserve(c_.size());
        for (const auto& c : c_)
            v.push_back(f(c));
        return QSeries<D>(denom_, low_, std::move(v));
    }

    QSeries operator-() const
    {
        return map([](const C& c) { return C(-c); });
    }

    template <class K>
    QSeries scaled(const K& k) const
    {
        return map([&](const C& c) { return C(c * k); });
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) { return combine(a, b, false); }
    friend QSeries operator-(const QSeries& a, const QSeries& b) { return combine(a, b, true); }

    friend QSeries operator*(const QSeries& a, const QSeries& b)
    {
        if (a.denom_ != b.denom_) {
            const long d = std::lcm(a.denom_, b.denom_);
            return a.with_denom(d) * b.with_denom(d);
        }
        const long va = a.valuation();
        const long vb = b.valuation();
        const long lo = va + vb;
        const long hi = std::min(a.high() + vb, b.high() + va);
        if (hi < lo)
            return zero(a.denom_, hi);
        std::vector<C> out(hi - lo + 1);
        for (long i = va; i <= a.high(); ++i) {
            const C& x = a.c_[i - a.low_];
            if (is_zero(x))
                continue;
            const long jmax = std::min(b.high(), hi - i);
            for (long j = vb; j <= jmax; ++j) {
                const C& y = b.c_[j - b.low_];
                if (is_zero(y))
                    continue;
                out[i + j - lo] += x * y;
            }
        }
        return QSeries(a.denom_, lo, std::move(out));
    }

    QSeries pow(unsigned long n) const
    {
        if (n == 0) {
            const long v = valuation();
            // Known range of x^0 = 1 is unbounded; cap it at the input's
            // relative precision.
            return constant(unit_of(c_), denom_, high() - v);
        }
        QSeries result = *this;
        QSeries base = *this;
        --n;
        while (n > 0) {
            if (n & 1)
                result = result * base;
            n >>= 1;
            if (n > 0)
                base = base * base;
        }
        return result;
    }

    friend bool operator==(const QSeries& a, const QSeries& b)
    {
        if (a.denom_ != b.denom_) {
            const long d = std::lcm(a.denom_, b.denom_);
            return a.with_denom(d) == b.with_denom(d);
        }
        if (a.high() != b.high())
            return false;
        const long lo = std::min(a.low_, b.low_);
        for (long n = lo; n <= a.high(); ++n)
            if (!(a.at(n) == b.at(n)))
                return false;
        return true;
    }

    // Agreement on the common known range.
    bool agrees_with(const QSeries& other) const
    {
        if (denom_ != other.denom_) {
            const long d = std::lcm(denom_, other.denom_);
            return with_denom(d).agrees_with(other.with_denom(d));
        }
        const long hi = std::min(high(), other.high());
        const long lo = std::min(low_, other.low_);
        for (long n = lo; n <= hi; ++n)
            if (!(at(n) == other.at(n)))
                return false;
        return true;
    }

private:
    static C unit_of(const std::vector<C>& c)
    {
        for (const auto& x : c)
            if (!is_zero(x))
                return one_like(x);
        return one_like(C{});
    }
    static C one_like(const C& x);

    static QSeries combine(const QSeries& a, const QSeries& b, bool subtract)
    {
        if (a.denom_ != b.denom_) {
            const long d = std::lcm(a.denom_, b.denom_);
            return combine(a.with_denom(d), b.with_denom(d), subtract);
        }
        const long hi = std::min(a.high(), b.high());
        const long lo = std::min(a.low_, b.low_);
        if (hi < lo)
            return zero(a.denom_, hi);
        std::vector<C> out(hi - lo + 1);
        for (long n = std::max(lo, a.low_); n <= std::min(hi, a.high()); ++n)
            out[n - lo] = a.c_[n - a.low_];
        for (long n = std::max(lo, b.low_); n <= std::min(hi, b.high()); ++n) {
            if (subtract)
                out[n - lo] -= b.c_[n - b.low_];
            else
                out[n - lo] += b.c_[n - b.low_];
        }
        return QSeries(a.denom_, lo, std::move(out));
    }

    long denom_ = 1;
    long low_ = 0;
    std::vector<C> c_;
};

template <>
inline Integer QSeries<Integer>::one_like(const Integer&) { return 1; }
template <>
inline Rational QSeries<Rational>::one_like(const Rational&) { return 1; }
template <>
inline CycInt QSeries<CycInt>::one_like(const CycInt& x) { return CycInt(std::max(1L, x.level()), Integer(1)); }

using IntSeries = QSeries<Integer>;
using RatSeries = QSeries<Rational>;
using CycSeries = QSeries<CycInt>;

namespace qseries {

// Multiplicative inverse. The first nonzero coefficient must be a unit of the
// coefficient ring (+-1 for integers, nonzero for rationals).
IntSeries inverse(const IntSeries& s);
RatSeries inverse(const RatSeries& s);

// Rational series with the same coefficients; and the reverse, which throws
// std::domain_error if a denominator is not 1.
RatSeries to_rational(const IntSeries& s);
IntSeries to_integer(const RatSeries& s);

// Bernoulli numbers in the classical indexing of the Eisenstein expansion:
// bernoulli_classical(1) = 1/6, (2) = 1/30, (3) = 1/42, i.e. |B_{2m}|.
Rational bernoulli_classical(long m);
// Modern B_n with B_1 = -1/2.
Rational bernoulli(long n);

long divisor_sigma(long k, long n);

// q^{1/24} prod_{n>=1} (1 - q^n): denominator 24, coefficients of
// q^{1/24 + k} known for k = 0 .. terms - 1. Uses the pentagonal number theorem.
IntSeries eta_series(long terms);

// q prod (1 - q^n)^24, coefficients of q^1 .. q^terms.
IntSeries delta_series(long terms);

// B_m + 4m (-1)^m sum_{n>=1} sigma_{2m-1}(n) q^n, coefficients of q^0 .. q^{terms-1}.
RatSeries eisenstein_series(long m, long terms);

// 60/4! * eisenstein_series(2) and 140/6! * eisenstein_series(3).
RatSeries g2_series(long terms);
RatSeries g3_series(long terms);
// g2^3 - 27 g3^2 built from the Eisenstein series.
RatSeries discriminant_series(long terms);

// 1728 g2^3 / (g2^3 - 27 g3^2) with exact rational arithmetic; coefficients of
// q^-1 .. q^{terms-2}.
RatSeries j_series_exact(long terms);
// Same series with the integrality of every coefficient checked.
IntSeries j_series(long terms);

// The conjugate under w -> (a w + b)/d: q^n -> zeta_level^{a b n} q^{a n / d}.
// Precondition: a d = level and s has denominator 1.
CycSeries substitute_conjugate(const IntSeries& s, long a, long b, long d, long level);

// Rational-integer series from a cyclotomic one; throws ReductionFailure when
// a coefficient is not rational.
IntSeries rational_part(const CycSeries& s);

// Same series over denominator 1. Throws ReductionFailure if a nonzero
// coefficient sits at a fractional exponent.
IntSeries integral_exponents(const IntSeries& s);

// Writes s as a polynomial A with A(jq) = s on the common known range by
// peeling off the most negative exponent with a multiple of a power of jq.
// Throws ReductionFailure if the residual does not vanish on the known range
// or if no positive coefficient is available to check it.
IntPolynomial series_to_j_polynomial(const IntSeries& s, const IntSeries& jq);

// Evaluates sum c_n q^{n/denom} at a complex value of q^{1/denom}.
numerics::BigComplex evaluate(const IntSeries& s, const numerics::BigComplex& q_root);
numerics::BigComplex evaluate(const RatSeries& s, const numerics::BigComplex& q_root);

} // namespace qseries
} // namespace cmforge
