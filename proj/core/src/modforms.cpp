#include <cmforge/modforms.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmforge::modforms {

using numerics::BigReal;

namespace {

constexpr Bits kGuard = 32;

long to_long(const Integer& n)
{
    if (!n.fits_slong_p())
        throw NumericOverflow("integer part out of range during reduction");
    return n.get_si();
}

BigComplex two_pi_i(Bits prec)
{
    const BigReal pi = numerics::const_pi(prec);
    return {BigReal(0L, prec), pi * 2L};
}

// e^{2 pi i tau}
BigComplex q_of(const BigComplex& tau)
{
    return numerics::exp_c(two_pi_i(tau.precision()) * tau);
}

// Extra bits lost computing 2 pi tau for large |Re tau|.
Bits argument_guard(const BigComplex& tau)
{
    const double x = std::fabs(tau.real().to_double());
    return static_cast<Bits>(std::ceil(std::log2(x + 2.0)));
}

void require_upper_half(const BigComplex& tau)
{
    if (tau.imag().sign() <= 0)
        throw std::invalid_argument("tau must lie in the upper half plane");
}

// 1 + sum_{k>=1} (-1)^k (q^{k(3k-1)/2} + q^{k(3k+1)/2}).
BigComplex pentagonal_sum(const BigComplex& q, double log2_abs_q, Bits work)
{
    const Bits p = q.precision();
    BigComplex sum(1, 0, p);
    if (q.is_zero())
        return sum;
    const BigComplex q2 = q * q;
    const BigComplex q3 = q2 * q;
    BigComplex step = q;       // q^{3k-2}, the ratio from e1(k-1) to e1(k)
    BigComplex qe = BigComplex(1, 0, p); // q^{e1(k)}
    BigComplex qk = BigComplex(1, 0, p); // q^k
    for (long k = 1;; ++k) {
        qe *= step;
        qk *= q;
        step *= q3;
        const double e1 = static_cast<double>(k) * (3 * k - 1) / 2.0;
        if (e1 * log2_abs_q < -static_cast<double>(work + 16))
            break;
        BigComplex term = qe + qe * qk;
        if (k % 2 == 1)
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

double log2_abs(const BigComplex& z) { return numerics::log2(numerics::abs(z)).to_double(); }

// Lambert series sum n^k q^n / (1 - q^n) at |q| < 1.
BigComplex lambert(const BigComplex& q, long k, Bits work)
{
    const Bits p = q.precision();
    BigComplex sum(p);
    if (q.is_zero())
        return sum;
    const double lq = log2_abs(q);
    BigComplex qn = q;
    const BigComplex one(1, 0, p);
    for (long n = 1;; ++n) {
        const double mag = n * lq + k * std::log2(static_cast<double>(n));
        if (mag < -static_cast<double>(work + 16))
            break;
        long nk = 1;
        for (long i = 0; i < k; ++i)
            nk *= n;
        sum += (qn / (one - qn)) * BigReal(nk, p);
        qn *= q;
    }
    return sum;
}

// Values at a reduced point tau'.
struct ReducedForms {
    BigComplex q;
    BigComplex e4;
    BigComplex e6;
    BigComplex delta_n;
};

ReducedForms reduced_values(const BigComplex& tau, Bits work, bool need_e6)
{
    ReducedForms r;
    r.q = q_of(tau);
    const double lq = log2_abs(r.q);
    const BigComplex one(1, 0, work);
    r.e4 = one + lambert(r.q, 3, work) * 240L;
    r.e6 = need_e6 ? one - lambert(r.q, 5, work) * 504L : BigComplex(work);
    BigComplex s = pentagonal_sum(r.q, lq, work);
    BigComplex s2 = s * s;
    BigComplex s3 = s2 * s;
    BigComplex s6 = s3 * s3;
    BigComplex s12 = s6 * s6;
    r.delta_n = r.q * (s12 * s12);
    return r;
}

BigComplex two_pi_pow(long k, Bits prec)
{
    BigReal x = numerics::const_pi(prec) * 2L;
    BigReal r(1L, prec);
    for (long i = 0; i < k; ++i)
        r *= x;
    return BigComplex(r);
}

// Oriented, reduced lattice: L = lambda <tau, 1> with tau in the fundamental domain.
struct NormalizedLattice {
    BigComplex tau;
    BigComplex lambda;
};

NormalizedLattice normalize(const Lattice& L, Bits work)
{
    BigComplex w1 = L.w1.with_precision(work);
    const BigComplex w2 = L.w2.with_precision(work);
    if (w2.is_zero())
        throw std::invalid_argument("degenerate lattice basis");
    BigComplex t = w1 / w2;
    if (t.imag().sign() == 0)
        throw std::invalid_argument("lattice basis vectors are linearly dependent over R");
    if (t.imag().sign() < 0)
        t = -t;
    const Reduction red = reduce_to_fundamental_domain(t);
    return {red.tau, w2 * red.M.automorphy(t)};
}

// (2 pi i)^{-2} p(w; <tau, 1>) with tau reduced. Pole when w is a lattice point.
BigComplex p_bracket(BigComplex w, const BigComplex& tau, Bits work)
{
    const Bits p = tau.precision();
    // w into the period parallelogram centred at 0.
    const Integer y = (w.imag() / tau.imag()).round();
    w -= tau * BigReal(y, p);
    const Integer x = w.real().round();
    w -= BigComplex(BigReal(x, p));
    const long lw = w.is_zero() ? 0 : numerics::abs(w).exponent();
    if (w.is_zero() || lw < -(work - 8))
        throw PoleAtLatticePoint("point is on the period lattice");
    const Bits extra = std::max(0L, -lw) + 8;
    const Bits wp = work + extra;
    const BigComplex wq = w.with_precision(wp);
    const BigComplex tq = tau.with_precision(wp);
    const BigComplex U = q_of(wq);
    const BigComplex Ui = BigComplex(1, 0, wp) / U;
    const BigComplex q = q_of(tq);
    const BigComplex one(1, 0, wp);

    auto frac = [&](const BigComplex& x) {
        const BigComplex d = one - x;
        return x / (d * d);
    };

    BigComplex sum = BigComplex(BigReal(Rational(1, 12), wp)) + frac(U);
    const double lq = log2_abs(q);
    const double lu = std::fabs(log2_abs(U));
    BigComplex qm = q;
    for (long m = 1;; ++m) {
        if (m * lq + lu < -static_cast<double>(work + 16))
            break;
        sum += frac(qm * U) + frac(qm * Ui) - frac(qm) * 2L;
        qm *= q;
    }
    return sum.with_precision(work);
}

} // namespace

BigComplex ModMatrix::apply(const BigComplex& tau) const
{
    const Bits p = tau.precision();
    const BigComplex num = tau * alpha + BigComplex(BigReal(beta, p));
    return num / automorphy(tau);
}

BigComplex ModMatrix::automorphy(const BigComplex& tau) const
{
    return tau * gamma + BigComplex(BigReal(delta, tau.precision()));
}

ModMatrix operator*(const ModMatrix& x, const ModMatrix& y)
{
    return {x.alpha * y.alpha + x.beta * y.gamma, x.alpha * y.beta + x.beta * y.delta,
            x.gamma * y.alpha + x.delta * y.gamma, x.gamma * y.beta + x.delta * y.delta};
}

std::string ModMatrix::to_string() const
{
    return "[" + std::to_string(alpha) + " " + std::to_string(beta) + "; " + std::to_string(gamma) + " "
        + std::to_string(delta) + "]";
}

Reduction reduce_to_fundamental_domain(const BigComplex& tau)
{
    require_upper_half(tau);
    Reduction r{tau, ModMatrix{}};
    const BigReal one(1L, tau.precision());
    for (int iter = 0; iter < 100000; ++iter) {
        const long n = to_long(r.tau.real().round());
        if (n != 0) {
            r.tau -= BigComplex(BigReal(n, tau.precision()));
            r.M = ModMatrix::T(-n) * r.M;
        }
        if (!(numerics::norm(r.tau) < one))
            return r;
        r.tau = BigComplex(-1, 0, tau.precision()) / r.tau;
        r.M = ModMatrix::S() * r.M;
    }
    throw NumericOverflow("fundamental domain reduction did not terminate");
}

CMPoint CMPoint::from_form(const quadratic::Form& f, Bits prec)
{
    CMPoint pt;
    pt.D = f.discriminant();
    pt.form = f;
    pt.tau = quadratic::form_to_tau(f, prec);
    pt.e = quadratic::unit_count(pt.D);
    return pt;
}

BigComplex eta_value(const BigComplex& tau, Bits prec)
{
    require_upper_half(tau);
    // |eta(tau)| = |eta(tau')| / |gamma tau + delta|^{1/2}; the product part
    // prod (1 - q^n) can be tiny, which costs that many bits of cancellation.
    const Reduction red = reduce_to_fundamental_domain(tau.with_precision(64));
    const double pi = 3.14159265358979323846;
    const double log_eta_reduced = -pi * red.tau.imag().to_double() / 12.0;
    const double log_auto = std::log(numerics::abs(red.M.automorphy(tau.with_precision(64))).to_double());
    const double log_prod = log_eta_reduced - 0.5 * log_auto + 2 * pi * tau.imag().to_double() / 24.0;
    const Bits loss = static_cast<Bits>(std::max(0.0, -log_prod / std::log(2.0)));
    const Bits work = prec + loss + kGuard + argument_guard(tau);
    const BigComplex t = tau.with_precision(work);
    const BigComplex q = q_of(t);
    const double lq = -2 * pi * tau.imag().to_double() / std::log(2.0);
    const BigComplex s = pentagonal_sum(q, lq, work);
    const BigComplex q24 = numerics::exp_c(two_pi_i(work) * t / BigReal(24L, work));
    return (q24 * s).with_precision(prec);
}

BigComplex delta_value(const BigComplex& tau, Bits prec)
{
    require_upper_half(tau);
    const Bits work = prec + kGuard;
    const BigComplex t = tau.with_precision(work + argument_guard(tau));
    const Reduction red = reduce_to_fundamental_domain(t);
    const ReducedForms v = reduced_values(red.tau, work, false);
    const BigComplex c = red.M.automorphy(t);
    return (two_pi_pow(12, work) * v.delta_n / numerics::pow(c, 12)).with_precision(prec);
}

BigComplex e4_value(const BigComplex& tau, Bits prec)
{
    require_upper_half(tau);
    const Bits work = prec + kGuard;
    const BigComplex t = tau.with_precision(work + argument_guard(tau));
    const Reduction red = reduce_to_fundamental_domain(t);
    const ReducedForms v = reduced_values(red.tau, work, false);
    return (v.e4 / numerics::pow(red.M.automorphy(t), 4)).with_precision(prec);
}

BigComplex e6_value(const BigComplex& tau, Bits prec)
{
    require_upper_half(tau);
    const Bits work = prec + kGuard;
    const BigComplex t = tau.with_precision(work + argument_guard(tau));
    const Reduction red = reduce_to_fundamental_domain(t);
    const ReducedForms v = reduced_values(red.tau, work, true);
    return (v.e6 / numerics::pow(red.M.automorphy(t), 6)).with_precision(prec);
}

BigComplex g2_value(const BigComplex& tau, Bits prec)
{
    const Bits work = prec + 8;
    return (two_pi_pow(4, work) * e4_value(tau, work) / BigReal(12L, work)).with_precision(prec);
}

BigComplex g3_value(const BigComplex& tau, Bits prec)
{
    const Bits work = prec + 8;
    return (two_pi_pow(6, work) * e6_value(tau, work) / BigReal(216L, work)).with_precision(prec);
}

BigComplex j_value(const BigComplex& tau, Bits prec)
{
    require_upper_half(tau);
    const Bits work = prec + kGuard;
    const BigComplex t = tau.with_precision(work + argument_guard(tau));
    const Reduction red = reduce_to_fundamental_domain(t);
    const ReducedForms v = reduced_values(red.tau.with_precision(work), work, false);
    return (v.e4 * v.e4 * v.e4 / v.delta_n).with_precision(prec);
}

long eta_multiplier(const ModMatrix& M)
{
    if (M.det() != 1)
        throw std::invalid_argument("eta_multiplier needs determinant 1");
    if (M.gamma < 0)
        throw std::invalid_argument("eta_multiplier needs gamma >= 0; pass -M");
    const long a = M.alpha, b = M.beta, g = M.gamma, d = M.delta;
    long lambda = 0;
    long g1 = g == 0 ? 1 : g;
    while (g1 % 2 == 0) {
        g1 /= 2;
        ++lambda;
    }
    // The lambda (3/2)(alpha^2 - 1) term must be integral.
    const long lam_term = 3 * lambda * (a * a - 1);
    if (lam_term % 2 != 0)
        throw std::domain_error("non-integral exponent in the eta multiplier for " + M.to_string());
    long exponent;
    int sign;
    if (g % 2 == 1) {
        exponent = b * d * (1 - g * g) + g * (a + d) + 3 * (1 - g1) + 3 * a * (g - g1) + lam_term / 2;
        sign = quadratic::kronecker(a, g);
    } else {
        // Even gamma, including gamma = 0.
        exponent = b * d * (1 - g * g) + g * (a + d) + 3 * d - 3 * g * d;
        sign = quadratic::kronecker(g, d);
    }
    if (sign == 0)
        throw std::logic_error("vanishing symbol in the eta multiplier");
    if (sign < 0)
        exponent += 12;
    exponent %= 24;
    if (exponent < 0)
        exponent += 24;
    return exponent;
}

double eta_transformation_residual(const ModMatrix& M, const BigComplex& tau, Bits prec)
{
    const ModMatrix N = M.gamma < 0 ? -M : M;
    const Bits work = prec + 32;
    const BigComplex t = tau.with_precision(work);
    const BigComplex lhs = eta_value(N.apply(t), work);
    const BigComplex root = numerics::sqrt_principal(-BigComplex::i(work) * N.automorphy(t));
    const BigComplex eps = numerics::root_of_unity(Rational(eta_multiplier(N), 24), work);
    const BigComplex rhs = eps * root * eta_value(t, work);
    return (numerics::abs(lhs - rhs) / numerics::abs(lhs)).to_double();
}

ModMatrix random_sl2z(std::mt19937_64& rng, long bound)
{
    if (bound < 1)
        throw std::invalid_argument("bound must be positive");
    std::uniform_int_distribution<long> gd(0, bound);
    std::uniform_int_distribution<long> dd(-bound, bound);
    for (;;) {
        const long g = gd(rng);
        const long d = dd(rng);
        if (std::gcd(g, d) != 1)
            continue;
        // alpha d - beta g = 1
        long r0 = d, r1 = g, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            const long k = r0 / r1;
            long tmp = r0 - k * r1;
            r0 = r1;
            r1 = tmp;
            tmp = s0 - k * s1;
            s0 = s1;
            s1 = tmp;
            tmp = t0 - k * t1;
            t0 = t1;
            t1 = tmp;
        }
        // s0 d + t0 g = r0 = +-1
        long a = s0 * r0;
        long b = -t0 * r0;
        // Shift by a random multiple of (g, d) to vary alpha, beta.
        const long k = dd(rng);
        a += k * g;
        b += k * d;
        const ModMatrix M{a, b, g, d};
        if (M.det() == 1)
            return M;
    }
}

BigComplex weierstrass_p(const BigComplex& z, const BigComplex& tau, Bits prec)
{
    return weierstrass_p(z, Lattice{tau, BigComplex(1, 0, tau.precision())}, prec);
}

BigComplex weierstrass_p(const BigComplex& z, const Lattice& L, Bits prec)
{
    const Bits work = prec + kGuard;
    const NormalizedLattice n = normalize(L, work);
    const BigComplex w = z.with_precision(work) / n.lambda;
    const BigComplex bracket = p_bracket(w, n.tau, work);
    const BigComplex tpi = two_pi_i(work);
    return (tpi * tpi * bracket / (n.lambda * n.lambda)).with_precision(prec);
}

BigComplex weber_value(const BigComplex& z, const Lattice& L, long e, Bits prec)
{
    if (e != 2 && e != 4 && e != 6)
        throw std::invalid_argument("unit count must be 2, 4 or 6");
    const Bits work = prec + kGuard;
    const NormalizedLattice n = normalize(L, work);
    const BigComplex w = z.with_precision(work) / n.lambda;
    const BigComplex tpi = two_pi_i(work);
    const BigComplex wp = tpi * tpi * p_bracket(w, n.tau, work);
    const ReducedForms v = reduced_values(n.tau, work, e != 4);
    const BigComplex g2 = two_pi_pow(4, work) * v.e4 / BigReal(12L, work);
    const BigComplex g3 = two_pi_pow(6, work) * v.e6 / BigReal(216L, work);
    const BigComplex delta = two_pi_pow(12, work) * v.delta_n;
    BigComplex r(work);
    switch (e) {
    case 2:
        r = -(g2 * g3 / delta) * wp * BigReal(Integer(128 * 243), work);
        break;
    case 4:
        r = (g2 * g2 / delta) * (wp * wp) * BigReal(Integer(256 * 81), work);
        break;
    default:
        r = -(g3 / delta) * (wp * wp * wp) * BigReal(Integer(512 * 729), work);
        break;
    }
    return r.with_precision(prec);
}

BigComplex weber_value(const BigComplex& z, const CMPoint& point, Bits prec)
{
    return weber_value(z, Lattice{point.tau, BigComplex(1, 0, point.tau.precision())}, point.e, prec);
}

} // namespace cmforge::modforms
