#include <cmforge/classpoly.hpp>

#include <cmforge/modforms.hpp>
#include <cmforge/transform.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace cmforge::classpoly {

using numerics::BigComplex;
using numerics::BigReal;

Bits required_precision(long D)
{
    const auto forms = quadratic::reduced_forms(D);
    double s = 0;
    for (const auto& f : forms)
        s += 1.0 / static_cast<double>(f.a);
    const double bits = 3.14159265358979323846 * std::sqrt(static_cast<double>(-D)) * s / std::log(2.0);
    return static_cast<Bits>(std::ceil(bits * 4.0 / 3.0)) + 64;
}

std::vector<BigComplex> class_invariants(long D, Bits prec)
{
    const auto forms = quadratic::reduced_forms(D);
    std::vector<BigComplex> out(forms.size(), BigComplex(prec));
    const std::size_t workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    if (workers == 1 || forms.size() < 4) {
        for (std::size_t i = 0; i < forms.size(); ++i)
            out[i] = modforms::j_value(quadratic::form_to_tau(forms[i], prec), prec);
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < forms.size(); i += workers)
                out[i] = modforms::j_value(quadratic::form_to_tau(forms[i], prec), prec);
        }));
    }
    for (auto& j : jobs)
        j.get();
    return out;
}

namespace {

struct Attempt {
    IntPolynomial poly;
    double max_residual = 0;
};

Attempt recognize_at(long D, Bits prec, long tol_bits)
{
    const auto roots = class_invariants(D, prec);
    const auto coeffs = poly_from_roots(roots);
    const BigReal tol = numerics::pow2(-tol_bits, 64);
    std::vector<Integer> c;
    c.reserve(coeffs.size());
    Attempt a;
    for (const auto& z : coeffs) {
        if (numerics::abs(z.imag()) > tol)
            throw RecognitionFailure("coefficient of H_" + std::to_string(D) + " has imaginary part above tolerance at "
                                     + std::to_string(prec) + " bits");
        const auto m = numerics::recognize_integer(z.real(), tol);
        a.max_residual = std::max(a.max_residual, m.residual.to_double());
        c.push_back(m.value);
    }
    a.poly = IntPolynomial(std::move(c));
    return a;
}

} // namespace

ClassPolynomial class_polynomial(long D, const Options& opts)
{
    if (!quadratic::is_discriminant(D))
        throw InvalidDiscriminant(std::to_string(D) + " is not a negative discriminant");
    const bool use_cache = opts.precision == 0 && opts.tol_bits == 20;
    static std::map<long, ClassPolynomial> cache;
    static std::mutex mu;
    if (use_cache) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(D);
        if (it != cache.end())
            return it->second;
    }
    Bits prec = opts.precision > 0 ? opts.precision : required_precision(D);
    std::string last_error;
    while (prec <= opts.cap) {
        try {
            const Attempt lo = recognize_at(D, prec, opts.tol_bits);
            const Attempt hi = recognize_at(D, prec + 64, opts.tol_bits);
            if (lo.poly == hi.poly) {
                ClassPolynomial out{D, lo.poly, prec, std::max(lo.max_residual, hi.max_residual)};
                if (use_cache) {
                    std::lock_guard<std::mutex> lock(mu);
                    cache.emplace(D, out);
                }
                return out;
            }
            last_error = "rounded coefficients differ between " + std::to_string(prec) + " and "
                + std::to_string(prec + 64) + " bits";
        } catch (const RecognitionFailure& e) {
            last_error = e.what();
        }
        prec *= 2;
    }
    throw RecognitionFailure("H_" + std::to_string(D) + " not recognized up to " + std::to_string(opts.cap)
                             + " bits: " + last_error);
}

long s_R(long D)
{
    const auto disc = quadratic::Discriminant::make(D);
    if (D == -4)
        return 2;
    const long d = disc.squarefree();
    const long f = disc.conductor;
    const long r = ((-d) % 4 + 4) % 4;
    if (r != 1)
        return d * f * f;
    if (f % 2 == 1)
        return d * f * f;
    return d * f * f / 4;
}

long primitive_norm(long D)
{
    const quadratic::Form p = quadratic::principal_form(D);
    // Norm of x + y theta, theta a root of X^2 + bX + c.
    long best = -1;
    const long ymax = static_cast<long>(std::sqrt(4.0 * 64 / static_cast<double>(-D))) + 2;
    for (long y = 1; y <= ymax; ++y) {
        for (long x = -2 * y - 8; x <= 2 * y + 8; ++x) {
            if (std::gcd(x, y) != 1)
                continue;
            const long n = x * x - p.b * x * y + p.c * y * y;
            if (n >= 2 && (best < 0 || n < best))
                best = n;
        }
    }
    return best;
}

bool divides_check(long D, long s)
{
    if (s == 0)
        s = primitive_norm(D);
    if (s > transform::kMaxLevel || s < 1)
        throw UnsupportedLevel("no supported transformation level for D=" + std::to_string(D) + " (norm "
                               + std::to_string(s) + ")");
    const IntPolynomial diag = transform::modular_polynomial_J(s).diagonal();
    const IntPolynomial H = class_polynomial(D).poly;
    return diag.divmod_monic(H).second.is_zero();
}

} // namespace cmforge::classpoly
