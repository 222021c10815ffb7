#include <cmforge/cyclotomic.hpp>

#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cmforge {

long euler_phi(long n)
{
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            result -= result / p;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

const std::vector<long>& cyclotomic_polynomial(long n)
{
    static const auto table = [] {
        std::array<std::vector<long>, CycInt::kMaxLevel + 1> t;
        for (long m = 1; m <= CycInt::kMaxLevel; ++m) {
            // x^m - 1 divided by Phi_d for every proper divisor d.
            std::vector<long> num(m + 1, 0);
            num[0] = -1;
            num[m] = 1;
            for (long d = 1; d < m; ++d) {
                if (m % d != 0)
                    continue;
                const auto& den = t[d];
                const std::size_t dd = den.size() - 1;
                std::vector<long> quo(num.size() - dd, 0);
                for (std::size_t k = num.size(); k-- > dd;) {
                    const long q = num[k];
                    quo[k - dd] = q;
                    for (std::size_t i = 0; i <= dd; ++i)
                        num[k - dd + i] -= q * den[i];
                }
                num = std::move(quo);
            }
            t[m] = std::move(num);
        }
        return t;
    }();
    if (n < 1 || n > CycInt::kMaxLevel)
        throw std::out_of_range("cyclotomic level out of range: " + std::to_string(n));
    return table[n];
}

CycInt::CycInt(long level, const Integer& rational)
    : level_(level), c_(level)
{
    if (level < 1 || level > kMaxLevel)
        throw std::invalid_argument("unsupported cyclotomic level " + std::to_string(level));
    c_[0] = rational;
}

CycInt CycInt::zeta_power(long level, long k, const Integer& c)
{
    CycInt x(level, Integer(0));
    long e = k % level;
    if (e < 0)
        e += level;
    x.c_[e] = c;
    x.reduce();
    return x;
}

bool CycInt::is_zero() const
{
    for (const auto& c : c_)
        if (c != 0)
            return false;
    return true;
}

bool CycInt::is_rational() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0)
            return false;
    return true;
}

Integer CycInt::rational_value() const
{
    if (!is_rational())
        throw std::domain_error("cyclotomic integer is not rational");
    return c_.empty() ? Integer(0) : c_[0];
}

CycInt CycInt::lifted(long m) const
{
    if (level_ == 0 || level_ == m)
        return *this;
    if (m % level_ != 0)
        throw std::invalid_argument("lift target must be a multiple of the level");
    CycInt r(m, Integer(0));
    const long step = m / level_;
    for (long i = 0; i < level_; ++i)
        r.c_[i * step] = c_[i];
    r.reduce();
    return r;
}

CycInt CycInt::galois(long r) const
{
    if (level_ == 0)
        return *this;
    if (std::gcd(r, level_) != 1)
        throw std::invalid_argument("galois exponent must be coprime to the level");
    CycInt out(level_, Integer(0));
    for (long i = 0; i < level_; ++i) {
        long e = (i * r) % level_;
        if (e < 0)
            e += level_;
        out.c_[e] += c_[i];
    }
    out.reduce();
    return out;
}

void CycInt::align(const CycInt& other)
{
    if (level_ == other.level_ || other.level_ == 0)
        return;
    if (level_ == 0) {
        level_ = other.level_;
        c_.assign(level_, Integer(0));
        return;
    }
    const long m = std::lcm(level_, other.level_);
    *this = lifted(m);
}

void CycInt::reduce()
{
    if (level_ <= 1)
        return;
    const auto& phi = cyclotomic_polynomial(level_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t k = c_.size(); k-- > deg;) {
        if (c_[k] == 0)
            continue;
        const Integer q = c_[k];
        for (std::size_t i = 0; i <= deg; ++i) {
            if (phi[i] != 0)
                c_[k - deg + i] -= q * phi[i];
        }
    }
}

CycInt& CycInt::operator+=(const CycInt& rhs)
{
    align(rhs);
    if (rhs.level_ == 0)
        return *this;
    if (rhs.level_ != level_)
        return *this += rhs.lifted(level_);
    for (long i = 0; i < level_; ++i)
        c_[i] += rhs.c_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs)
{
    align(rhs);
    if (rhs.level_ == 0)
        return *this;
    if (rhs.level_ != level_)
        return *this -= rhs.lifted(level_);
    for (long i = 0; i < level_; ++i)
        c_[i] -= rhs.c_[i];
    return *this;
}

CycInt& CycInt::operator*=(const CycInt& rhs)
{
    if (level_ == 0)
        return *this;
    if (rhs.level_ == 0) {
        for (auto& c : c_)
            c = 0;
        return *this;
    }
    align(rhs);
    const CycInt lifted_rhs = rhs.level_ == level_ ? CycInt{} : rhs.lifted(level_);
    const CycInt& r = rhs.level_ == level_ ? rhs : lifted_rhs;
    std::vector<Integer> out(level_);
    for (long i = 0; i < level_; ++i) {
        if (c_[i] == 0)
            continue;
        for (long j = 0; j < level_; ++j) {
            if (r.c_[j] == 0)
                continue;
            long k = i + j;
            if (k >= level_)
                k -= level_;
            mpz_addmul(out[k].get_mpz_t(), c_[i].get_mpz_t(), r.c_[j].get_mpz_t());
        }
    }
    c_ = std::move(out);
    reduce();
    return *this;
}

CycInt& CycInt::operator*=(const Integer& k)
{
    for (auto& c : c_)
        c *= k;
    return *this;
}

CycInt CycInt::operator-() const
{
    CycInt r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

bool operator==(const CycInt& a, const CycInt& b)
{
    if (a.level_ == b.level_)
        return a.c_ == b.c_;
    if (a.level_ == 0)
        return b.is_zero();
    if (b.level_ == 0)
        return a.is_zero();
    CycInt x = a;
    x -= b;
    return x.is_zero();
}

numerics::BigComplex CycInt::to_complex(numerics::Bits prec) const
{
    numerics::BigComplex acc(prec);
    for (long i = 0; i < level_; ++i) {
        if (c_[i] == 0)
            continue;
        Rational angle{Integer(i), Integer(level_)};
        angle.canonicalize();
        acc += numerics::root_of_unity(angle, prec) * numerics::BigReal(c_[i], prec);
    }
    return acc;
}

} // namespace cmforge
