#include <cmforge/cmverify.hpp>

#include <cmforge/finite_field.hpp>
#include <cmforge/modforms.hpp>
#include <cmforge/quadratic.hpp>
#include <cmforge/transform.hpp>

#include <algorithm>
#include <cmath>

namespace cmforge::cmverify {

using numerics::BigComplex;
using numerics::BigReal;
using numerics::Bits;

namespace {

void require_split(long D, long p)
{
    if (quadratic::splitting_type(D, p) != quadratic::Splitting::split)
        throw std::invalid_argument(std::to_string(p) + " does not split for D=" + std::to_string(D));
}

// |x - y| <= tol * max(1, |y|)
bool close(const BigComplex& x, const BigComplex& y, const BigReal& tol)
{
    BigReal scale = numerics::abs(y);
    const BigReal one(1L, scale.precision());
    if (scale < one)
        scale = one;
    return numerics::abs(x - y) <= tol * scale;
}

} // namespace

bool squarefree_mod(const IntPolynomial& H, long p)
{
    const ff::PolyModP h = ff::PolyModP::from_integer(H, p);
    if (h.degree() != H.degree())
        return false;
    return ff::gcd(h, h.derivative()).degree() == 0;
}

std::vector<long> degree_profile(const IntPolynomial& H, long p)
{
    if (!quadratic::is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    const ff::PolyModP h = ff::PolyModP::from_integer(H, p);
    if (h.degree() != H.degree())
        throw std::invalid_argument("p divides the leading coefficient");
    if (ff::gcd(h, h.derivative()).degree() != 0)
        throw NonSquarefree("polynomial is not squarefree modulo " + std::to_string(p));
    return ff::distinct_degree_profile(h);
}

std::vector<long> degree_profile(const classpoly::ClassPolynomial& H, long p) { return degree_profile(H.poly, p); }

bool frobenius_order_check(long D, long p)
{
    require_split(D, p);
    const auto profile = degree_profile(classpoly::class_polynomial(D).poly, p);
    const long ord = quadratic::element_order(quadratic::prime_form(D, p));
    return std::all_of(profile.begin(), profile.end(), [ord](long d) { return d == ord; });
}

bool splitting_completeness_check(long D, long p)
{
    require_split(D, p);
    const auto profile = degree_profile(classpoly::class_polynomial(D).poly, p);
    const bool complete = std::all_of(profile.begin(), profile.end(), [](long d) { return d == 1; });
    return complete == quadratic::principal_represents(D, p);
}

bool genus_check(long D)
{
    const quadratic::ClassGroup g(D);
    return g.squares_index() == g.ambiguous_count();
}

double relative_residual(const BiPolynomial& P, const BigComplex& x, const BigComplex& y)
{
    const Bits prec = x.precision();
    const BigReal ax = numerics::abs(x);
    const BigReal ay = numerics::abs(y);
    BigReal scale(0L, prec);
    for (const auto& t : P.terms()) {
        BigReal term = numerics::abs(BigReal(t.c, prec));
        for (std::size_t i = 0; i < t.i; ++i)
            term *= ax;
        for (std::size_t j = 0; j < t.j; ++j)
            term *= ay;
        scale += term;
    }
    if (scale.is_zero())
        return 0;
    return (numerics::abs(P.evaluate(x, y)) / scale).to_double();
}

CorrespondenceResult correspondence_report(long d_K, long f, long f_prime)
{
    if (f < 1 || f_prime < 1 || f_prime % f != 0)
        throw std::invalid_argument("conductors must satisfy f | f'");
    const long s = f_prime / f;
    CorrespondenceResult out;
    if (s == 1) {
        out.pass = true;
        return out;
    }
    if (s > transform::kMaxLevel)
        throw UnsupportedLevel("conductor ratio " + std::to_string(s) + " exceeds the supported levels");
    const long D_small = f * f * d_K;
    const long D_big = f_prime * f_prime * d_K;
    const Bits prec = 2 * std::max(classpoly::required_precision(D_small), classpoly::required_precision(D_big)) + 64;
    const BigReal tol = numerics::pow2(-(prec - 32), prec);
    const BiPolynomial J = transform::modular_polynomial_J(s);
    const auto small_roots = classpoly::class_invariants(D_small, prec);
    const auto reps = transform::representatives(s);

    out.pass = true;
    for (const auto& form : quadratic::reduced_forms(D_big)) {
        const BigComplex tau = quadratic::form_to_tau(form, prec);
        const BigComplex y = modforms::j_value(tau, prec);
        std::vector<BigComplex> distinct;
        for (const auto& S : reps) {
            const BigComplex st = (tau * S.a + BigComplex(BigReal(S.b, prec))) / BigReal(S.d, prec);
            const BigComplex x = modforms::j_value(st, prec);
            const double r = relative_residual(J, x, y);
            out.max_root_residual = std::max(out.max_root_residual, r);
            if (!(r <= tol.to_double()))
                out.pass = false;
            const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const BigComplex& c) { return close(x, c, tol); });
            if (!seen)
                distinct.push_back(x);
        }
        long matched = 0;
        for (const auto& x : distinct) {
            long hits = 0;
            for (const auto& r : small_roots) {
                if (close(x, r, tol)) {
                    ++hits;
                    BigReal scale = numerics::abs(r);
                    const BigReal one(1L, prec);
                    if (scale < one)
                        scale = one;
                    out.max_match_distance = std::max(out.max_match_distance, (numerics::abs(x - r) / scale).to_double());
                }
            }
            // A candidate near two roots would make the pairing ambiguous.
            if (hits > 1)
                out.pass = false;
            if (hits == 1)
                ++matched;
        }
        if (matched != 1)
            out.pass = false;
    }
    return out;
}

bool correspondence_check(long d_K, long f, long f_prime) { return correspondence_report(d_K, f, f_prime).pass; }

CongruenceProduct congruence_product(long D, long p)
{
    require_split(D, p);
    const quadratic::Discriminant disc = quadratic::Discriminant::make(D);
    const quadratic::ClassGroup G(D);
    const std::size_t iP = G.index_of(quadratic::prime_form(D, p));
    const std::size_t iPinv = G.inverse(iP);

    // log2 |N| <= sum over classes of p log2 |j(k)| + 1, with |j| ~ e^{pi sqrt|D| / a}.
    double magnitude = 0;
    for (const auto& f : G.forms())
        magnitude += p * (3.14159265358979323846 * std::sqrt(static_cast<double>(-D)) / f.a / std::log(2.0) + 1) + 1;
    Bits prec = static_cast<Bits>(magnitude) + classpoly::required_precision(D) + 64;
    const BigReal tol = numerics::pow2(-20, 64);

    auto attempt = [&](Bits bits) {
        const auto j = classpoly::class_invariants(D, bits);
        BigComplex N(1, 0, bits);
        for (std::size_t k = 0; k < j.size(); ++k)
            N *= numerics::pow(j[k], p) - j[G.multiply(k, iPinv)];
        const BigReal sq = numerics::sqrt(BigReal(-disc.fundamental, bits));
        const auto a = numerics::recognize_integer(N.real() * 2L, tol);
        const auto b = numerics::recognize_integer(N.imag() * 2L / sq, tol);
        CongruenceProduct r;
        r.a = a.value;
        r.b = b.value;
        r.residual = std::max(a.residual.to_double(), b.residual.to_double());
        return r;
    };

    std::string last;
    for (int tries = 0; tries < 5; ++tries, prec *= 2) {
        try {
            CongruenceProduct lo = attempt(prec);
            const CongruenceProduct hi = attempt(prec + 64);
            if (lo.a != hi.a || lo.b != hi.b) {
                last = "recognized values differ between precisions";
                continue;
            }
            lo.residual = std::max(lo.residual, hi.residual);
            const Integer four_norm = lo.a * lo.a - Integer(disc.fundamental) * lo.b * lo.b;
            if (four_norm % 4 != 0)
                throw RecognitionFailure("recognized value is not an algebraic integer");
            lo.norm = four_norm / 4;
            lo.pass = lo.norm % p == 0;
            return lo;
        } catch (const RecognitionFailure& e) {
            last = e.what();
        }
    }
    throw RecognitionFailure("congruence product for D=" + std::to_string(D) + ", p=" + std::to_string(p)
                             + " not recognized: " + last);
}

bool congruence_product_check(long D, long p) { return congruence_product(D, p).pass; }

} // namespace cmforge::cmverify
