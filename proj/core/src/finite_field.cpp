#include <cmforge/finite_field.hpp>

#include <stdexcept>

namespace cmforge::ff {

namespace {

long norm_mod(long a, long p)
{
    long r = a % p;
    return r < 0 ? r + p : r;
}

long inv_mod(long a, long p)
{
    long t = 0, nt = 1, r = p, nr = norm_mod(a, p);
    while (nr != 0) {
        const long q = r / nr;
        long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        throw std::domain_error("element is not invertible modulo p");
    return norm_mod(t, p);
}

// Remainder of a by b, with the quotient written to q when given.
std::vector<long> divide(std::vector<long> a, const std::vector<long>& b, long p, std::vector<long>* q)
{
    if (b.empty())
        throw std::domain_error("division by the zero polynomial");
    const std::size_t db = b.size() - 1;
    const long inv = inv_mod(b.back(), p);
    if (q)
        q->assign(a.size() >= b.size() ? a.size() - db : 0, 0);
    for (std::size_t k = a.size(); k-- > db;) {
        const long c = a[k] * inv % p;
        if (c == 0)
            continue;
        if (q)
            (*q)[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i)
            a[k - db + i] = norm_mod(a[k - db + i] - c * b[i], p);
    }
    a.resize(std::min(a.size(), db));
    return a;
}

} // namespace

PolyModP::PolyModP(long p, std::vector<long> coeffs)
    : p_(p), c_(std::move(coeffs))
{
    if (p < 2 || p > (1L << 30))
        throw std::invalid_argument("modulus out of range");
    for (auto& c : c_)
        c = norm_mod(c, p_);
    trim();
}

PolyModP PolyModP::from_integer(const IntPolynomial& f, long p)
{
    std::vector<long> c;
    c.reserve(f.coefficients().size());
    const Integer m(p);
    for (const auto& x : f.coefficients()) {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        c.push_back(r.get_si());
    }
    return PolyModP(p, std::move(c));
}

PolyModP PolyModP::x(long p) { return PolyModP(p, {0, 1}); }

void PolyModP::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

PolyModP PolyModP::monic() const
{
    if (c_.empty())
        return *this;
    const long inv = inv_mod(c_.back(), p_);
    std::vector<long> c = c_;
    for (auto& x : c)
        x = x * inv % p_;
    return PolyModP(p_, std::move(c));
}

PolyModP PolyModP::derivative() const
{
    std::vector<long> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
        d.push_back(static_cast<long>(i % p_) * c_[i] % p_);
    return PolyModP(p_, std::move(d));
}

PolyModP operator-(const PolyModP& a, const PolyModP& b)
{
    std::vector<long> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        c[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        c[i] -= b.c_[i];
    return PolyModP(a.p_, std::move(c));
}

PolyModP operator*(const PolyModP& a, const PolyModP& b)
{
    if (a.is_zero() || b.is_zero())
        return PolyModP(a.p_, {});
    std::vector<long> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = (c[i + j] + a.c_[i] * b.c_[j]) % a.p_;
    }
    return PolyModP(a.p_, std::move(c));
}

PolyModP operator%(const PolyModP& a, const PolyModP& b)
{
    return PolyModP(a.p_, divide(a.c_, b.c_, a.p_, nullptr));
}

PolyModP operator/(const PolyModP& a, const PolyModP& b)
{
    std::vector<long> q;
    divide(a.c_, b.c_, a.p_, &q);
    return PolyModP(a.p_, std::move(q));
}

PolyModP gcd(PolyModP a, PolyModP b)
{
    while (!b.is_zero()) {
        PolyModP r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyModP powmod(const PolyModP& base, long e, const PolyModP& m)
{
    if (e < 0)
        throw std::invalid_argument("negative exponent");
    PolyModP result(m.modulus(), {1});
    result = result % m;
    PolyModP b = base % m;
    while (e > 0) {
        if (e & 1)
            result = (result * b) % m;
        e >>= 1;
        if (e > 0)
            b = (b * b) % m;
    }
    return result;
}

std::vector<long> distinct_degree_profile(const PolyModP& input)
{
    PolyModP f = input.monic();
    const long p = f.modulus();
    std::vector<long> out;
    const PolyModP x = PolyModP::x(p);
    PolyModP h = x % f;
    for (long k = 1; f.degree() >= 2 * k; ++k) {
        h = powmod(h, p, f);
        const PolyModP g = gcd(h - x, f);
        if (g.degree() > 0) {
            for (long i = 0; i < g.degree() / k; ++i)
                out.push_back(k);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0)
        out.push_back(f.degree());
    return out;
}

} // namespace cmforge::ff
