#include <cmforge/qseries.hpp>

#include <mutex>

namespace cmforge::qseries {

using numerics::BigComplex;

namespace {

RatSeries invert_rational(const RatSeries& s)
{
    const RatSeries t = s.normalized();
    if (t.is_known_zero())
        throw std::domain_error("cannot invert a series with no known nonzero coefficient");
    const auto& a = t.coefficients();
    const Rational a0 = a[0];
    const std::size_t k = a.size();
    std::vector<Rational> b(k);
    b[0] = 1 / a0;
    for (std::size_t n = 1; n < k; ++n) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= n; ++i)
            if (!is_zero(a[i]))
                acc += a[i] * b[n - i];
        b[n] = -acc / a0;
    }
    return RatSeries(t.denom(), -t.low(), std::move(b));
}

// Coefficients of prod_{n>=1} (1 - q^n) for q^0 .. q^{n_max}.
std::vector<long> pentagonal(long n_max)
{
    std::vector<long> c(n_max + 1, 0);
    c[0] = 1;
    for (long k = 1;; ++k) {
        const long e1 = k * (3 * k - 1) / 2;
        const long e2 = k * (3 * k + 1) / 2;
        if (e1 > n_max)
            break;
        const long sign = (k % 2 == 0) ? 1 : -1;
        c[e1] = sign;
        if (e2 <= n_max)
            c[e2] = sign;
    }
    return c;
}

} // namespace

IntSeries inverse(const IntSeries& s)
{
    // Integer division is exact because the leading coefficient is +-1.
    const IntSeries t = s.normalized();
    if (t.is_known_zero())
        throw std::domain_error("cannot invert a series with no known nonzero coefficient");
    const auto& a = t.coefficients();
    const Integer a0 = a[0];
    if (a0 != 1 && a0 != -1)
        throw std::domain_error("leading coefficient is not a unit");
    std::vector<Integer> b(a.size());
    b[0] = a0;
    for (std::size_t n = 1; n < a.size(); ++n) {
        Integer acc = 0;
        for (std::size_t i = 1; i <= n; ++i)
            if (a[i] != 0)
                mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[n - i].get_mpz_t());
        b[n] = a0 == 1 ? Integer(-acc) : acc;
    }
    return IntSeries(t.denom(), -t.low(), std::move(b));
}

RatSeries inverse(const RatSeries& s) { return invert_rational(s); }

RatSeries to_rational(const IntSeries& s)
{
    return s.map([](const Integer& c) { return Rational(c); });
}

IntSeries to_integer(const RatSeries& s)
{
    return s.map([](const Rational& c) {
        if (c.get_den() != 1)
            throw std::domain_error("coefficient " + c.get_str() + " is not an integer");
        return Integer(c.get_num());
    });
}

Rational bernoulli(long n)
{
    if (n < 0)
        throw std::invalid_argument("Bernoulli index must be non-negative");
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    // sum_{k=0}^{m} binom(m+1, k) B_k = 0
    while (static_cast<long>(cache.size()) <= n) {
        const long m = static_cast<long>(cache.size());
        Rational acc = 0;
        Integer binom = 1;
        for (long k = 0; k < m; ++k) {
            acc += Rational(binom) * cache[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        Rational b = -acc / Rational(m + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

Rational bernoulli_classical(long m)
{
    if (m < 1)
        throw std::invalid_argument("classical Bernoulli index starts at 1");
    return abs(bernoulli(2 * m));
}

long divisor_sigma(long k, long n)
{
    if (n < 1)
        throw std::invalid_argument("divisor_sigma needs n >= 1");
    long total = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        long p = 1;
        for (long i = 0; i < k; ++i)
            p *= d;
        total += p;
        const long e = n / d;
        if (e != d) {
            long r = 1;
            for (long i = 0; i < k; ++i)
                r *= e;
            total += r;
        }
    }
    return total;
}

namespace {

Integer sigma_big(long k, long n)
{
    Integer total = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), d, k);
        total += p;
        if (n / d != d) {
            mpz_ui_pow_ui(p.get_mpz_t(), n / d, k);
            total += p;
        }
    }
    return total;
}

// E4 = 1 + 240 sum sigma_3 q^n, or E6 = 1 - 504 sum sigma_5 q^n.
IntSeries eisenstein_integer(long weight, long terms)
{
    const long k = weight == 4 ? 3 : 5;
    const long factor = weight == 4 ? 240 : -504;
    std::vector<Integer> c(terms);
    c[0] = 1;
    for (long n = 1; n < terms; ++n)
        c[n] = sigma_big(k, n) * factor;
    return IntSeries(1, 0, std::move(c));
}

} // namespace

IntSeries eta_series(long terms)
{
    if (terms < 1)
        throw std::invalid_argument("eta_series needs at least one term");
    const auto p = pentagonal(terms - 1);
    std::vector<Integer> c(24 * terms);
    for (long k = 0; k < terms; ++k)
        c[24 * k] = p[k];
    return IntSeries(24, 1, std::move(c));
}

IntSeries delta_series(long terms)
{
    if (terms < 1)
        throw std::invalid_argument("delta_series needs at least one term");
    const long n_max = terms - 1;
    const auto a = pentagonal(n_max);
    std::vector<long> support;
    for (long i = 1; i <= n_max; ++i)
        if (a[i] != 0)
            support.push_back(i);
    // g = f^24 with f the pentagonal series: n g_n = sum_i (25 i - n) a_i g_{n-i}.
    std::vector<Integer> g(n_max + 1);
    g[0] = 1;
    for (long n = 1; n <= n_max; ++n) {
        Integer acc = 0;
        for (long i : support) {
            if (i > n)
                break;
            acc += g[n - i] * (a[i] * (25 * i - n));
        }
        g[n] = acc / n;
    }
    return IntSeries(1, 1, std::move(g));
}

RatSeries eisenstein_series(long m, long terms)
{
    if (m < 2)
        throw std::invalid_argument("eisenstein_series needs m >= 2");
    if (terms < 1)
        throw std::invalid_argument("eisenstein_series needs at least one term");
    std::vector<Rational> c(terms);
    c[0] = bernoulli_classical(m);
    const long factor = (m % 2 == 0 ? 4 : -4) * m;
    for (long n = 1; n < terms; ++n)
        c[n] = Rational(sigma_big(2 * m - 1, n) * factor);
    return RatSeries(1, 0, std::move(c));
}

RatSeries g2_series(long terms) { return eisenstein_series(2, terms).scaled(Rational(5, 2)); }

RatSeries g3_series(long terms) { return eisenstein_series(3, terms).scaled(Rational(7, 36)); }

RatSeries discriminant_series(long terms)
{
    const RatSeries g2 = g2_series(terms);
    const RatSeries g3 = g3_series(terms);
    return (g2.pow(3) - g3.pow(2).scaled(Rational(27))).normalized();
}

RatSeries j_series_exact(long terms)
{
    if (terms < 1)
        throw std::invalid_argument("j_series_exact needs at least one term");
    // Delta starts at q^1, so one extra coefficient keeps q^{terms-2}.
    const RatSeries g2 = g2_series(terms + 1);
    const RatSeries disc = discriminant_series(terms + 1);
    return (g2.pow(3).scaled(Rational(1728)) * inverse(disc)).truncated(terms - 2);
}

IntSeries j_series(long terms)
{
    if (terms < 1)
        throw std::invalid_argument("j_series needs at least one term");
    static std::mutex mu;
    static IntSeries cached;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (cached.high() >= terms - 2 && !cached.coefficients().empty())
            return cached.truncated(terms - 2);
    }
    const IntSeries e4 = eisenstein_integer(4, terms);
    const IntSeries j = (e4.pow(3) * inverse(delta_series(terms))).truncated(terms - 2);
    std::lock_guard<std::mutex> lock(mu);
    if (j.high() > cached.high() || cached.coefficients().empty())
        cached = j;
    return j;
}

CycSeries substitute_conjugate(const IntSeries& s, long a, long b, long d, long level)
{
    if (s.denom() != 1)
        throw std::invalid_argument("substitute_conjugate needs an integral-exponent series");
    if (a < 1 || d < 1 || a * d != level)
        throw std::invalid_argument("substitute_conjugate needs a d = level");
    const long low = a * s.low();
    const long high = a * (s.high() + 1) - 1;
    std::vector<CycInt> c(high - low + 1);
    for (long n = s.low(); n <= s.high(); ++n) {
        const Integer& x = s.coefficients()[n - s.low()];
        if (x == 0)
            continue;
        long e = (a * b % level) * (n % level) % level;
        c[a * n - low] = CycInt::zeta_power(level, e, x);
    }
    return CycSeries(d, low, std::move(c));
}

IntSeries rational_part(const CycSeries& s)
{
    return s.map([](const CycInt& c) {
        if (!c.is_rational())
            throw ReductionFailure("series coefficient is not a rational integer");
        return c.rational_value();
    });
}

IntSeries integral_exponents(const IntSeries& s)
{
    const long l = s.denom();
    if (l == 1)
        return s;
    auto floor_div = [](long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    const long lo = -floor_div(-s.low(), l);
    const long hi = floor_div(s.high(), l);
    std::vector<Integer> c(hi >= lo ? hi - lo + 1 : 0);
    for (long n = s.low(); n <= s.high(); ++n) {
        const Integer& x = s.coefficients()[n - s.low()];
        if (x == 0)
            continue;
        if (n % l != 0)
            throw ReductionFailure("nonzero coefficient at fractional exponent " + std::to_string(n) + "/"
                                   + std::to_string(l));
        c[n / l - lo] = x;
    }
    return IntSeries(1, lo, std::move(c));
}

IntPolynomial series_to_j_polynomial(const IntSeries& s, const IntSeries& jq)
{
    if (s.denom() != 1 || jq.denom() != 1)
        throw std::invalid_argument("series_to_j_polynomial needs integral exponents");
    if (jq.valuation() != -1 || jq.at(-1) != 1)
        throw std::invalid_argument("jq must start with q^-1");
    const long pole = std::max(0L, -s.valuation());
    std::vector<IntSeries> powers;
    powers.reserve(pole + 1);
    powers.push_back(IntSeries::constant(1, 1, jq.high() + 1));
    for (long k = 1; k <= pole; ++k)
        powers.push_back(powers.back() * jq);

    std::vector<Integer> a(pole + 1);
    IntSeries r = s;
    for (long k = pole; k >= 0; --k) {
        if (-k > r.high())
            throw ReductionFailure("series truncated before its principal part ends");
        const Integer c = r.at(-k);
        if (c == 0)
            continue;
        a[k] = c;
        r = r - powers[k].scaled(c);
    }
    if (r.high() < 1)
        throw ReductionFailure("no positive-exponent coefficient left to validate the reduction");
    if (!r.is_known_zero())
        throw ReductionFailure("nonzero residual at q^" + std::to_string(r.valuation()));
    return IntPolynomial(std::move(a));
}

namespace {

template <class C, class F>
BigComplex evaluate_impl(const QSeries<C>& s, const BigComplex& x, F&& to_real)
{
    const numerics::Bits p = x.precision();
    BigComplex acc(p);
    const auto& c = s.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc *= x;
        if (!is_zero(*it))
            acc += BigComplex(to_real(*it, p));
    }
    if (s.low() != 0)
        acc *= numerics::pow(x, s.low());
    return acc;
}

} // namespace

BigComplex evaluate(const IntSeries& s, const BigComplex& q_root)
{
    return evaluate_impl(s, q_root, [](const Integer& c, numerics::Bits p) { return numerics::BigReal(c, p); });
}

BigComplex evaluate(const RatSeries& s, const BigComplex& q_root)
{
    return evaluate_impl(s, q_root, [](const Rational& c, numerics::Bits p) { return numerics::BigReal(c, p); });
}

} // namespace cmforge::qseries
