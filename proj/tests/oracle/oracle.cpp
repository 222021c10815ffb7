#include "oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {

std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b, long n)
{
    std::vector<Int> out(n, 0);
    for (long i = 0; i < n && i < static_cast<long>(a.size()); ++i) {
        if (a[i] == 0)
            continue;
        for (long j = 0; i + j < n && j < static_cast<long>(b.size()); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

// 1 / a for a[0] = 1 by long division.
std::vector<Int> inv_unit(const std::vector<Int>& a, long n)
{
    std::vector<Int> out(n, 0);
    out[0] = 1;
    for (long k = 1; k < n; ++k) {
        Int s = 0;
        for (long i = 1; i <= k && i < static_cast<long>(a.size()); ++i)
            s += a[i] * out[k - i];
        out[k] = -s;
    }
    return out;
}

long powmod(long b, long e, long m)
{
    long r = 1 % m;
    b %= m;
    if (b < 0)
        b += m;
    while (e > 0) {
        if (e & 1)
            r = static_cast<long>((__int128)r * b % m);
        b = static_cast<long>((__int128)b * b % m);
        e >>= 1;
    }
    return r;
}

long md(long a, long p)
{
    a %= p;
    return a < 0 ? a + p : a;
}

using PolyP = std::vector<long>;

void trim(PolyP& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

// Remainder of f by monic g; quotient into q.
PolyP divmod(PolyP f, const PolyP& g, long p, PolyP& q)
{
    const long dg = static_cast<long>(g.size()) - 1;
    const long df = static_cast<long>(f.size()) - 1;
    q.assign(df >= dg ? df - dg + 1 : 0, 0);
    for (long k = df; k >= dg; --k) {
        const long c = f[k];
        if (c == 0)
            continue;
        q[k - dg] = c;
        for (long i = 0; i <= dg; ++i)
            f[k - dg + i] = md(f[k - dg + i] - c * g[i], p);
    }
    f.resize(std::max<long>(0, dg));
    trim(f);
    return f;
}

} // namespace

std::vector<Int> euler_product_power(long e, long n)
{
    std::vector<Int> out(n, 0);
    out[0] = 1;
    for (long k = 1; k < n; ++k) {
        std::vector<Int> f(n, 0);
        f[0] = 1;
        f[k] = -1;
        const long times = e >= 0 ? e : -e;
        const std::vector<Int> g = e >= 0 ? f : inv_unit(f, n);
        for (long t = 0; t < times; ++t)
            out = mul(out, g, n);
    }
    return out;
}

Int sigma(long k, long n)
{
    Int s = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0)
            continue;
        Int t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        s += t;
    }
    return s;
}

std::vector<Int> j_coefficients(long n)
{
    std::vector<Int> e4(n, 0);
    e4[0] = 1;
    for (long k = 1; k < n; ++k)
        e4[k] = 240 * sigma(3, k);
    const std::vector<Int> e4c = mul(mul(e4, e4, n), e4, n);
    const std::vector<Int> p = euler_product_power(24, n);
    return mul(e4c, inv_unit(p, n), n);
}

std::vector<Form> reduced_forms_scan(long D)
{
    std::vector<Form> out;
    const long N = -D;
    for (long a = 1; 3 * a * a <= N; ++a) {
        for (long b = -a; b <= a; ++b) {
            for (long c = a; 4 * a * c <= N + b * b; ++c) {
                if (b * b - 4 * a * c != D)
                    continue;
                if (std::gcd(std::gcd(a, std::abs(b)), c) != 1)
                    continue;
                if ((b < 0) && (-b == a || a == c))
                    continue;
                out.push_back({a, b, c});
            }
        }
    }
    return out;
}

Form reduce(Form f)
{
    const long D = f.b * f.b - 4 * f.a * f.c;
    for (;;) {
        if (!(-f.a < f.b && f.b <= f.a)) {
            const long two_a = 2 * f.a;
            long k = (f.a - f.b) / two_a;
            if ((f.a - f.b) % two_a != 0 && (f.a - f.b) < 0)
                --k;
            f.b += two_a * k;
            f.c = (f.b * f.b - D) / (4 * f.a);
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
}

Form compose(const Form& f, const Form& g)
{
    const long D = f.b * f.b - 4 * f.a * f.c;
    // A properly equivalent copy of g whose first coefficient is prime to f.a.
    Form h = g;
    bool found = std::gcd(g.a, f.a) == 1;
    for (long x = -20; x <= 20 && !found; ++x) {
        for (long y = -20; y <= 20 && !found; ++y) {
            if (std::gcd(std::abs(x), std::abs(y)) != 1)
                continue;
            const long n = g.a * x * x + g.b * x * y + g.c * y * y;
            if (n <= 0 || std::gcd(n, f.a) != 1)
                continue;
            // r, s with x s - y r = 1
            long r = 0, s = 0;
            for (long rr = -40; rr <= 40 && !found; ++rr)
                for (long ss = -40; ss <= 40 && !found; ++ss)
                    if (x * ss - y * rr == 1) {
                        r = rr;
                        s = ss;
                        found = true;
                    }
            if (found) {
                h.a = n;
                h.b = 2 * g.a * x * r + g.b * (x * s + r * y) + 2 * g.c * y * s;
                h.c = g.a * r * r + g.b * r * s + g.c * s * s;
            }
        }
    }
    if (!found)
        throw std::runtime_error("oracle compose: no coprime representative");
    const long a12 = f.a * h.a;
    for (long B = 0; B < 2 * a12; ++B) {
        if (md(B - f.b, 2 * f.a) != 0 || md(B - h.b, 2 * h.a) != 0)
            continue;
        if (md(B * B - D, 4 * a12) != 0)
            continue;
        return reduce({a12, B, (B * B - D) / (4 * a12)});
    }
    throw std::runtime_error("oracle compose: no united middle coefficient");
}

bool principal_represents(long D, long n)
{
    const long b = (D % 2 == 0) ? 0 : 1;
    const long c = (b * b - D) / 4;
    const long bound = static_cast<long>(std::sqrt(4.0 * n / static_cast<double>(-D))) + 2;
    const long xbound = static_cast<long>(2 * std::sqrt(static_cast<double>(n))) + bound * (b + 1) + 2;
    for (long y = -bound; y <= bound; ++y)
        for (long x = -xbound; x <= xbound; ++x)
            if (x * x + b * x * y + c * y * y == n)
                return true;
    return false;
}

cld wp(cld z, cld tau)
{
    const long double pi = std::acos(-1.0L);
    const long double pi2 = pi * pi;
    auto csc2 = [&](cld w) {
        const cld s = std::sin(pi * w);
        return pi2 / (s * s);
    };
    cld sum = csc2(z) - pi2 / 3.0L;
    const long N = static_cast<long>(12.0L / tau.imag()) + 2;
    for (long n = 1; n <= N; ++n) {
        const cld nt = static_cast<long double>(n) * tau;
        sum += csc2(z - nt) + csc2(z + nt) - 2.0L * csc2(nt);
    }
    return sum;
}

void half_periods(cld tau, cld& e1, cld& e2, cld& e3)
{
    e1 = wp(0.5L, tau);
    e2 = wp(tau / 2.0L, tau);
    e3 = wp((1.0L + tau) / 2.0L, tau);
}

void invariants(cld tau, cld& g2, cld& g3)
{
    cld e1, e2, e3;
    half_periods(tau, e1, e2, e3);
    g2 = -4.0L * (e1 * e2 + e1 * e3 + e2 * e3);
    g3 = 4.0L * e1 * e2 * e3;
}

cld j(cld tau)
{
    cld g2, g3;
    invariants(tau, g2, g3);
    const cld g23 = g2 * g2 * g2;
    return 1728.0L * g23 / (g23 - 27.0L * g3 * g3);
}

cld weber(cld z, cld tau, long e)
{
    cld g2, g3;
    invariants(tau, g2, g3);
    const cld delta = g2 * g2 * g2 - 27.0L * g3 * g3;
    const cld p = wp(z, tau);
    switch (e) {
    case 2:
        return -(128.0L * 243.0L) * g2 * g3 / delta * p;
    case 4:
        return (256.0L * 81.0L) * g2 * g2 / delta * p * p;
    case 6:
        return -(512.0L * 729.0L) * g3 / delta * p * p * p;
    }
    throw std::invalid_argument("oracle weber: bad unit count");
}

std::vector<cld> poly_from_roots(const std::vector<cld>& roots)
{
    std::vector<cld> c{1.0L};
    for (const cld& r : roots) {
        std::vector<cld> next(c.size() + 1, 0.0L);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = next;
    }
    return c;
}

long roots_mod_p(const std::vector<Int>& f, long p)
{
    long count = 0;
    for (long x = 0; x < p; ++x) {
        Int v = 0;
        for (std::size_t i = f.size(); i-- > 0;)
            v = v * x + f[i];
        if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p)))
            ++count;
    }
    return count;
}

std::vector<long> factor_degrees_brute(const std::vector<Int>& f, long p)
{
    PolyP g;
    for (const auto& c : f) {
        Int r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        g.push_back(r.get_si());
    }
    trim(g);
    if (g.empty())
        throw std::invalid_argument("oracle: zero polynomial mod p");
    const long inv = powmod(g.back(), p - 2, p);
    for (auto& c : g)
        c = md(c * inv, p);
    std::vector<long> out;
    for (long d = 1; 2 * d <= static_cast<long>(g.size()) - 1; ++d) {
        long total = 1;
        for (long i = 0; i < d; ++i)
            total *= p;
        for (long idx = 0; idx < total; ++idx) {
            PolyP h(d + 1, 0);
            long t = idx;
            for (long i = 0; i < d; ++i) {
                h[i] = t % p;
                t /= p;
            }
            h[d] = 1;
            for (;;) {
                PolyP q;
                const PolyP r = divmod(g, h, p, q);
                if (!r.empty())
                    break;
                out.push_back(d);
                g = q;
                trim(g);
            }
        }
    }
    if (g.size() > 1)
        out.push_back(static_cast<long>(g.size()) - 1);
    return out;
}

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

int kronecker(long a, long n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            r = -r;
    }
    for (long p = 2; n > 1; ++p) {
        while (n % p == 0) {
            n /= p;
            if (p == 2) {
                const long m = md(a, 8);
                if (m % 2 == 0)
                    return 0;
                if (m == 3 || m == 5)
                    r = -r;
            } else {
                const long l = powmod(md(a, p), (p - 1) / 2, p);
                if (l == 0)
                    return 0;
                if (l != 1)
                    r = -r;
            }
        }
    }
    return r;
}

} // namespace oracle
