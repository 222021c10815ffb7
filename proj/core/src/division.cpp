#include <cmforge/division.hpp>

#include <cmforge/polynomial.hpp>
#include <cmforge/quadratic.hpp>

#include <algorithm>
#include <future>
#include <numeric>
#include <thread>
#include <tuple>

namespace cmforge::division {

using numerics::BigReal;

namespace {

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

long mod(long a, long b)
{
    const long r = a % b;
    return r < 0 ? r + b : r;
}

// Evaluates f(i) for i in [0, n), in parallel when it pays.
template <class F>
std::vector<BigComplex> parallel_map(std::size_t n, Bits prec, F f)
{
    std::vector<BigComplex> out(n, BigComplex(prec));
    const std::size_t workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    if (workers == 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = f(i);
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += workers)
                out[i] = f(i);
        }));
    }
    for (auto& j : jobs)
        j.get();
    return out;
}

struct Recognized {
    std::vector<Rational> values;
    double residual = 0;
};

Recognized recognize_all(const std::vector<BigReal>& xs, const RecognitionOptions& opts)
{
    const BigReal tol = numerics::pow2(-opts.tol_bits, 64);
    Recognized r;
    for (const auto& x : xs) {
        const auto m = numerics::recognize_rational(x, opts.max_denominator, tol);
        r.residual = std::max(r.residual, m.residual.to_double());
        r.values.push_back(m.value);
    }
    return r;
}

quadratic::Form principal(long d_K) { return quadratic::principal_form(d_K); }

} // namespace

long proper_division_count(long N)
{
    if (N < 1)
        throw std::invalid_argument("level must be positive");
    long count = N * N;
    long n = N;
    for (long l = 2; l * l <= n; ++l) {
        if (n % l != 0)
            continue;
        while (n % l == 0)
            n /= l;
        count = count / (l * l) * (l * l - 1);
    }
    if (n > 1)
        count = count / (n * n) * (n * n - 1);
    return count;
}

std::vector<BigComplex> division_values(long N, const modforms::CMPoint& point, Bits prec)
{
    if (N < 2)
        throw std::invalid_argument("division level must be at least 2");
    const Bits work = prec + 16;
    const modforms::CMPoint pt = modforms::CMPoint::from_form(point.form, work);
    std::vector<std::pair<long, long>> pairs;
    for (long x1 = 0; x1 < N; ++x1)
        for (long x2 = 0; x2 < N; ++x2)
            if (std::gcd(std::gcd(x1, x2), N) == 1)
                pairs.emplace_back(x1, x2);
    const BigComplex one(1, 0, work);
    return parallel_map(pairs.size(), prec, [&](std::size_t i) {
        const BigComplex z = (pt.tau * pairs[i].first + one * pairs[i].second) / BigReal(N, work);
        return modforms::weber_value(z, pt, prec);
    });
}

DivisionPolynomial division_polynomial(long N, const modforms::CMPoint& point, Bits prec, const RecognitionOptions& opts)
{
    if (quadratic::class_number(point.D) != 1)
        throw ClassNumberNotOne("division polynomials need class number one, D=" + std::to_string(point.D));
    if (N < 2 || N > 6)
        throw std::invalid_argument("division level must lie in 2..6");
    std::string last;
    for (Bits p = prec > 0 ? prec : 256; p <= opts.cap; p *= 2) {
        try {
            std::vector<Recognized> runs;
            for (Bits bits : {p, p + 64}) {
                const auto coeffs = poly_from_roots(division_values(N, point, bits));
                std::vector<BigReal> re;
                const BigReal tol = numerics::pow2(-opts.tol_bits, 64);
                for (const auto& c : coeffs) {
                    if (numerics::abs(c.imag()) > tol)
                        throw RecognitionFailure("coefficient has an imaginary part above tolerance");
                    re.push_back(c.real());
                }
                runs.push_back(recognize_all(re, opts));
            }
            if (runs[0].values != runs[1].values) {
                last = "recognized coefficients differ between " + std::to_string(p) + " and " + std::to_string(p + 64)
                    + " bits";
                continue;
            }
            DivisionPolynomial out;
            out.N = N;
            out.D = point.D;
            out.coeffs = runs[0].values;
            out.precision = p;
            out.max_residual = std::max(runs[0].residual, runs[1].residual);
            for (const auto& c : out.coeffs)
                out.denominator = lcm(out.denominator, Integer(c.get_den()));
            return out;
        } catch (const RecognitionFailure& e) {
            last = e.what();
        }
    }
    throw RecognitionFailure("T_" + std::to_string(N) + " for D=" + std::to_string(point.D)
                             + " not recognized: " + last);
}

Element multiply(long d_K, const Element& a, const Element& b)
{
    const quadratic::Form f = principal(d_K);
    // theta^2 = -b0 theta - c0
    const long bd = a.y * b.y;
    return {a.x * b.x - bd * f.c, a.x * b.y + a.y * b.x - bd * f.b};
}

long element_norm(long d_K, const Element& a)
{
    const quadratic::Form f = principal(d_K);
    return a.x * a.x - f.b * a.x * a.y + f.c * a.y * a.y;
}

namespace {

// Hermite basis (A, B), (0, C) of the lattice mu O in coordinates (1, theta).
struct Hermite {
    long A = 1;
    long B = 0;
    long C = 1;
};

Hermite hermite(long d_K, const Element& mu)
{
    const quadratic::Form f = principal(d_K);
    const Element p = mu;
    const Element q{-f.c * mu.y, mu.x - f.b * mu.y};
    // Extended gcd of the first coordinates.
    long r0 = p.x, r1 = q.x, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const long k = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - k * t1);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    const long g = r0;
    const Element v1{g, s0 * p.y + t0 * q.y};
    const long C = (p.x / g) * q.y - (q.x / g) * p.y;
    Hermite h;
    h.A = g;
    h.C = C < 0 ? -C : C;
    h.B = mod(v1.y, h.C);
    return h;
}

Element reduce_with(const Hermite& h, Element a)
{
    const long k = floor_div(a.x, h.A);
    a.x -= k * h.A;
    a.y = mod(a.y - k * h.B, h.C);
    return a;
}

} // namespace

RayClassGroup ray_class_group(long d_K, const Element& modulus)
{
    const auto disc = quadratic::Discriminant::make(d_K);
    if (disc.fundamental != d_K)
        throw std::invalid_argument(std::to_string(d_K) + " is not a fundamental discriminant");
    if (quadratic::class_number(d_K) != 1)
        throw ClassNumberNotOne("ray classes need class number one, d_K=" + std::to_string(d_K));
    RayClassGroup g;
    g.d_K = d_K;
    g.modulus = modulus;
    g.norm = element_norm(d_K, modulus);
    if (g.norm < 1 || g.norm > 50)
        throw std::invalid_argument("modulus norm must lie in 1..50");

    g.units = {{1, 0}, {-1, 0}};
    if (d_K == -4)
        g.units.insert(g.units.end(), {{0, 1}, {0, -1}});
    if (d_K == -3) {
        const Element t{0, 1};
        const Element t2 = multiply(d_K, t, t);
        g.units.insert(g.units.end(), {t, {0, -1}, t2, {-t2.x, -t2.y}});
    }

    const Hermite h = hermite(d_K, modulus);
    std::vector<Element> residues;
    for (long u = 0; u < h.A; ++u)
        for (long v = 0; v < h.C; ++v)
            residues.push_back({u, v});
    const Element one = reduce_with(h, {1, 0});
    for (const auto& r : residues) {
        const bool unit = std::any_of(residues.begin(), residues.end(),
                                      [&](const Element& s) { return reduce_with(h, multiply(d_K, r, s)) == one; });
        if (unit)
            g.invertible.push_back(r);
    }
    std::vector<bool> seen(residues.size(), false);
    auto idx = [&](const Element& e) { return static_cast<std::size_t>(e.x * h.C + e.y); };
    for (const auto& r : g.invertible) {
        if (seen[idx(r)])
            continue;
        g.representatives.push_back(r);
        for (const auto& u : g.units)
            seen[idx(reduce_with(h, multiply(d_K, u, r)))] = true;
    }
    return g;
}

Element reduce(const RayClassGroup& g, const Element& a) { return reduce_with(hermite(g.d_K, g.modulus), a); }

std::size_t class_index(const RayClassGroup& g, const Element& a)
{
    const Hermite h = hermite(g.d_K, g.modulus);
    for (const auto& u : g.units) {
        const Element v = reduce_with(h, multiply(g.d_K, u, a));
        const auto it = std::find(g.representatives.begin(), g.representatives.end(), v);
        if (it != g.representatives.end())
            return static_cast<std::size_t>(it - g.representatives.begin());
    }
    throw std::invalid_argument("element is not prime to the modulus");
}

BigComplex ray_class_invariant(const RayClassGroup& g, const Element& r, Bits prec)
{
    const Bits work = prec + 16;
    const BigComplex theta = quadratic::form_to_tau(principal(g.d_K), work);
    const BigComplex one(1, 0, work);
    auto value = [&](const Element& e) { return one * e.x + theta * e.y; };
    const BigComplex mu = value(g.modulus);
    const BigComplex rho = value(r);
    if (rho.is_zero())
        throw std::invalid_argument("representative must be nonzero");
    const BigComplex base = mu / rho;
    const modforms::Lattice L{base * theta, base};
    return modforms::weber_value(one, L, quadratic::unit_count(g.d_K), prec);
}

BigComplex ray_class_invariant(const RayClassGroup& g, std::size_t index, Bits prec)
{
    return ray_class_invariant(g, g.representatives.at(index), prec);
}

RayClassPolynomial ray_class_polynomial(const RayClassGroup& g, Bits prec, const RecognitionOptions& opts)
{
    RayClassPolynomial out;
    out.d_K = g.d_K;
    out.modulus = g.modulus;
    if (g.norm == 1) {
        out.coeffs = {{Rational(1), Rational(0)}};
        return out;
    }
    std::string last;
    for (Bits p = prec > 0 ? prec : 256; p <= opts.cap; p *= 2) {
        try {
            std::vector<std::vector<FieldElement>> runs;
            double residual = 0;
            for (Bits bits : {p, p + 64}) {
                const auto roots = parallel_map(g.representatives.size(), bits,
                                                [&](std::size_t i) { return ray_class_invariant(g, i, bits); });
                const auto coeffs = poly_from_roots(roots);
                const BigReal sq = numerics::sqrt(BigReal(-g.d_K, bits));
                std::vector<BigReal> parts;
                for (const auto& c : coeffs) {
                    parts.push_back(c.real());
                    parts.push_back(c.imag() / sq);
                }
                const Recognized r = recognize_all(parts, opts);
                residual = std::max(residual, r.residual);
                std::vector<FieldElement> fe;
                for (std::size_t i = 0; i < r.values.size(); i += 2)
                    fe.push_back({r.values[i], r.values[i + 1]});
                runs.push_back(std::move(fe));
            }
            if (runs[0] != runs[1]) {
                last = "recognized coefficients differ between " + std::to_string(p) + " and " + std::to_string(p + 64)
                    + " bits";
                continue;
            }
            out.coeffs = runs[0];
            out.precision = p;
            out.max_residual = residual;
            return out;
        } catch (const RecognitionFailure& e) {
            last = e.what();
        }
    }
    throw RecognitionFailure("ray class polynomial not recognized: " + last);
}

} // namespace cmforge::division
