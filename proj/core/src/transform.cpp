#include <cmforge/transform.hpp>

#include <cmforge/modforms.hpp>
#include <cmforge/qseries.hpp>

#include <map>
#include <mutex>
#include <numeric>
#include <optional>

namespace cmforge::transform {

using numerics::BigComplex;
using numerics::BigReal;

namespace {

void check_level(long s)
{
    if (s < 1 || s > kMaxLevel)
        throw UnsupportedLevel("transformation level " + std::to_string(s) + " is outside 1.." + std::to_string(kMaxLevel));
}

long sum_a_squared(long s)
{
    long t = 0;
    for (const auto& m : representatives(s))
        t += m.a * m.a;
    return t;
}

// Coefficients e_0 .. e_{n-1} of the monic prod (X - r); the X^n coefficient is 1.
std::vector<CycSeries> monic_product(const std::vector<CycSeries>& roots)
{
    std::vector<CycSeries> e;
    for (const auto& r : roots) {
        const std::size_t m = e.size();
        std::vector<CycSeries> next(m + 1);
        // new e_k = e_{k-1} - r e_k, with e_m = 1 and e_{-1} = 0.
        next[m] = (m == 0) ? -r : e[m - 1] - r;
        for (std::size_t k = m; k-- > 0;)
            next[k] = (k == 0) ? -(r * e[0]) : e[k - 1] - r * e[k];
        e = std::move(next);
    }
    return e;
}

BiPolynomial reduce_to_bivariate(const std::vector<CycSeries>& e, const IntSeries& jq)
{
    std::vector<IntPolynomial> rows;
    rows.reserve(e.size() + 1);
    try {
        for (const auto& ek : e)
            rows.push_back(qseries::series_to_j_polynomial(qseries::integral_exponents(qseries::rational_part(ek)), jq));
    } catch (const ReductionFailure& err) {
        throw BudgetTooSmall(std::string("q-series budget too small: ") + err.what());
    }
    rows.push_back(IntPolynomial::constant(1));
    return BiPolynomial(std::move(rows));
}

template <class Build>
BiPolynomial cached(std::map<std::pair<long, long>, BiPolynomial>& cache, std::mutex& mu, long s, long budget,
                    Build&& build)
{
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({s, budget});
        if (it != cache.end())
            return it->second;
    }
    BiPolynomial p = build();
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(s, budget), p);
    return p;
}

} // namespace

bool PrimMatrix::is_primitive() const
{
    return std::gcd(std::gcd(a, b), std::gcd(c, d)) == 1;
}

std::string PrimMatrix::to_string() const
{
    return "(" + std::to_string(a) + " " + std::to_string(b) + "; " + std::to_string(c) + " " + std::to_string(d) + ")";
}

std::vector<PrimMatrix> representatives(long s)
{
    if (s < 1)
        throw std::invalid_argument("determinant must be positive");
    std::vector<PrimMatrix> out;
    for (long a = 1; a <= s; ++a) {
        if (s % a != 0)
            continue;
        const long d = s / a;
        for (long b = 0; b < d; ++b)
            if (std::gcd(std::gcd(a, b), d) == 1)
                out.push_back({a, b, 0, d});
    }
    return out;
}

long psi(long s)
{
    if (s < 1)
        throw std::invalid_argument("psi needs s >= 1");
    long result = s;
    long n = s;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        while (n % p == 0)
            n /= p;
        result += result / p;
    }
    if (n > 1)
        result += result / n;
    return result;
}

long default_budget(long s) { return (psi(s) + 1) * (s + 1) + 16; }

long minimum_budget(long s)
{
    return std::max(psi(s) + 2, s + 1 + sum_a_squared(s));
}

BiPolynomial modular_polynomial_J(long s, long budget)
{
    check_level(s);
    if (budget == 0)
        budget = default_budget(s);
    if (budget < minimum_budget(s))
        throw BudgetTooSmall("budget " + std::to_string(budget) + " is below the minimum "
                             + std::to_string(minimum_budget(s)) + " for level " + std::to_string(s));
    static std::map<std::pair<long, long>, BiPolynomial> cache;
    static std::mutex mu;
    return cached(cache, mu, s, budget, [&] {
        const IntSeries jq = qseries::j_series(budget);
        std::vector<CycSeries> roots;
        for (const auto& m : representatives(s))
            roots.push_back(qseries::substitute_conjugate(jq, m.a, m.b, m.d, s).with_denom(s));
        return reduce_to_bivariate(monic_product(roots), jq);
    });
}

BiPolynomial phi_polynomial(long s, long budget)
{
    check_level(s);
    if (budget == 0)
        budget = default_budget(s);
    if (budget < minimum_budget(s))
        throw BudgetTooSmall("budget " + std::to_string(budget) + " is below the minimum "
                             + std::to_string(minimum_budget(s)) + " for level " + std::to_string(s));
    static std::map<std::pair<long, long>, BiPolynomial> cache;
    static std::mutex mu;
    return cached(cache, mu, s, budget, [&] {
        const IntSeries jq = qseries::j_series(budget);
        const IntSeries delta = qseries::delta_series(budget);
        const CycSeries inv = qseries::inverse(delta)
                                  .with_denom(s)
                                  .map([s](const Integer& c) { return CycInt(s, c); });
        std::vector<CycSeries> roots;
        for (const auto& m : representatives(s)) {
            Integer a12;
            mpz_ui_pow_ui(a12.get_mpz_t(), m.a, 12);
            const CycSeries conj = qseries::substitute_conjugate(delta, m.a, m.b, m.d, s).with_denom(s);
            roots.push_back((conj * inv).scaled(a12));
        }
        return reduce_to_bivariate(monic_product(roots), jq);
    });
}

bool kronecker_congruence_holds(const BiPolynomial& J, long p, long m)
{
    BiPolynomial target;
    target.set_coeff(p + 1, 0, 1);
    target.set_coeff(p, p, -1);
    target.set_coeff(1, 1, -1);
    target.set_coeff(0, p + 1, 1);
    const Integer mod(m);
    return J.reduced_mod(mod) == target.reduced_mod(mod);
}

bool kronecker_congruence_check(long p, long budget)
{
    if (p < 2)
        throw std::invalid_argument("kronecker_congruence_check needs a prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw std::invalid_argument(std::to_string(p) + " is not prime");
    return kronecker_congruence_holds(modular_polynomial_J(p, budget), p, p);
}

BigComplex phi_value(const PrimMatrix& S, const BigComplex& tau, numerics::Bits prec)
{
    const long s = S.det();
    if (s <= 0)
        throw std::invalid_argument("phi_value needs a positive determinant");
    if (tau.imag().sign() <= 0)
        throw std::invalid_argument("tau must lie in the upper half plane");
    const numerics::Bits work = prec + 32;
    const BigComplex t = tau.with_precision(work);
    const BigComplex num = t * S.a + BigComplex(BigReal(S.b, work));
    const BigComplex den = t * S.c + BigComplex(BigReal(S.d, work));
    const BigComplex st = num / den;
    const BigComplex ratio = modforms::delta_value(st, work) / modforms::delta_value(t, work);
    BigReal s12(1L, work);
    for (int i = 0; i < 12; ++i)
        s12 *= BigReal(s, work);
    return (ratio * s12 / numerics::pow(den, 12)).with_precision(prec);
}

BigComplex phi_product(long s, const BigComplex& tau, numerics::Bits prec)
{
    const numerics::Bits work = prec + 16;
    BigComplex out(1, 0, work);
    for (const auto& S : representatives(s))
        out *= phi_value(S, tau, work);
    return out.with_precision(prec);
}

bool leading_coefficient_check(long s, long budget)
{
    long r = 1;
    while ((r + 1) * (r + 1) <= s)
        ++r;
    if (r * r == s)
        throw SquareLevel("level " + std::to_string(s) + " is a perfect square");
    const IntPolynomial diag = modular_polynomial_J(s, budget).diagonal();
    if (diag.is_zero())
        return false;
    return diag.leading() == 1 || diag.leading() == -1;
}

PhiConstantTerm phi_constant_term(const BiPolynomial& phi, long s)
{
    PhiConstantTerm out;
    out.constant = phi.coeff(0, 0);
    out.product_a12 = 1;
    for (const auto& m : representatives(s)) {
        Integer a12;
        mpz_ui_pow_ui(a12.get_mpz_t(), m.a, 12);
        out.product_a12 *= a12;
    }
    out.sign = sgn(out.constant);
    out.magnitude_matches = abs(out.constant) == out.product_a12;
    out.constant_in_y = phi.row(0).degree() <= 0;
    return out;
}

PhiConstantTerm phi_constant_term(long s, long budget)
{
    return phi_constant_term(phi_polynomial(s, budget), s);
}

} // namespace cmforge::transform
