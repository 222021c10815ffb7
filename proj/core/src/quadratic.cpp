#include <cmforge/quadratic.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cmforge::quadratic {

namespace {

using i128 = __int128;

long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

// Jacobi symbol for odd n > 0.
int jacobi(long a, long n)
{
    a = mod(a, n);
    int s = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const long r = n % 8;
            if (r == 3 || r == 5)
                s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

// (g, x, y) with x a + y b = g >= 0.
struct Egcd {
    long g, x, y;
};

Egcd egcd(long a, long b)
{
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const long q = a / b;
        long t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0)
        return {-a, -x0, -y0};
    return {a, x0, y0};
}

void check_prime(long p)
{
    if (!is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
}

} // namespace

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
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            s = -1;
    }
    long v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0)
            return 0;
        const long r = mod(a, 8);
        if (v % 2 == 1 && (r == 3 || r == 5))
            s = -s;
    }
    return s * jacobi(a, n);
}

bool is_discriminant(long D)
{
    if (D >= 0)
        return false;
    const long r = mod(D, 4);
    return r == 0 || r == 1;
}

Discriminant Discriminant::make(long D)
{
    if (!is_discriminant(D))
        throw InvalidDiscriminant(std::to_string(D) + " is not a negative discriminant");
    // |D| = m^2 d0 with d0 squarefree.
    long rest = -D;
    long m = 1;
    for (long p = 2; p * p <= rest; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            m *= p;
        }
    }
    const long d0 = -rest;
    Discriminant out;
    out.D = D;
    if (mod(d0, 4) == 1) {
        out.fundamental = d0;
        out.conductor = m;
    } else {
        out.fundamental = 4 * d0;
        out.conductor = m / 2;
    }
    return out;
}

long Discriminant::squarefree() const
{
    return mod(fundamental, 4) == 0 ? -fundamental / 4 : -fundamental;
}

bool Form::is_primitive() const
{
    return std::gcd(std::gcd(a, b), c) == 1;
}

bool Form::is_reduced() const
{
    if (a <= 0)
        return false;
    const long ab = b < 0 ? -b : b;
    if (!(ab <= a && a <= c))
        return false;
    if ((ab == a || a == c) && b < 0)
        return false;
    return true;
}

std::string Form::to_string() const
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Form reduce(const Form& f)
{
    const long D = f.discriminant();
    if (f.a <= 0 || D >= 0)
        throw std::invalid_argument("reduce needs a positive definite form");
    long a = f.a, b = f.b, c = f.c;
    auto normalize = [&] {
        // b into (-a, a]
        const long two_a = 2 * a;
        long r = mod(b, two_a);
        if (r > a)
            r -= two_a;
        b = r;
        c = static_cast<long>((static_cast<i128>(b) * b - D) / (4 * static_cast<i128>(a)));
    };
    normalize();
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize();
    }
    if (a == c && b < 0)
        b = -b;
    return {a, b, c};
}

Form principal_form(long D)
{
    if (!is_discriminant(D))
        throw InvalidDiscriminant(std::to_string(D) + " is not a negative discriminant");
    const long b = mod(D, 4) == 0 ? 0 : 1;
    return {1, b, (b * b - D) / 4};
}

std::vector<Form> reduced_forms(long D)
{
    if (!is_discriminant(D))
        throw InvalidDiscriminant(std::to_string(D) + " is not a negative discriminant");
    std::vector<Form> out;
    const long amax = static_cast<long>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (long a = 1; a <= amax; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            const long num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            const Form f{a, b, num / (4 * a)};
            if (f.is_reduced() && f.is_primitive())
                out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long class_number(long D) { return static_cast<long>(reduced_forms(D).size()); }

Form compose(const Form& f, const Form& g)
{
    const long D = f.discriminant();
    if (g.discriminant() != D)
        throw std::invalid_argument("compose needs forms of the same discriminant");
    const long s = (f.b + g.b) / 2;
    const Egcd e1 = egcd(f.a, g.a);
    const Egcd e2 = egcd(e1.g, s);
    const long gg = e2.g;
    const long u = e1.x * e2.x;
    const long v = e1.y * e2.x;
    const long w = e2.y;
    const i128 A = static_cast<i128>(f.a / gg) * (g.a / gg);
    const i128 num = static_cast<i128>(u) * f.a * g.b + static_cast<i128>(v) * g.a * f.b
        + static_cast<i128>(w) * ((static_cast<i128>(f.b) * g.b + D) / 2);
    i128 B = (num / gg) % (2 * A);
    if (B < 0)
        B += 2 * A;
    const i128 C = (B * B - D) / (4 * A);
    return reduce({static_cast<long>(A), static_cast<long>(B), static_cast<long>(C)});
}

long element_order(const Form& f)
{
    const Form unit = principal_form(f.discriminant());
    const Form r = reduce(f);
    Form x = r;
    long n = 1;
    while (x != unit) {
        x = compose(x, r);
        ++n;
    }
    return n;
}

long ambiguous_count(long D)
{
    long n = 0;
    for (const auto& f : reduced_forms(D))
        if (reduce(f.inverse()) == f)
            ++n;
    return n;
}

std::string to_string(Splitting s)
{
    switch (s) {
    case Splitting::split:
        return "split";
    case Splitting::inert:
        return "inert";
    case Splitting::ramified:
        return "ramified";
    }
    return "?";
}

Splitting splitting_type(long D, long p)
{
    check_prime(p);
    const Discriminant d = Discriminant::make(D);
    if (d.conductor % p == 0)
        throw ConductorDivisor(std::to_string(p) + " divides the conductor of " + std::to_string(D));
    const int k = kronecker(d.fundamental, p);
    return k > 0 ? Splitting::split : (k < 0 ? Splitting::inert : Splitting::ramified);
}

Form prime_form(long D, long p)
{
    check_prime(p);
    const Discriminant d = Discriminant::make(D);
    if (d.conductor % p == 0)
        throw ConductorDivisor(std::to_string(p) + " divides the conductor of " + std::to_string(D));
    const long m = 4 * p;
    for (long b = 0; b < 2 * p; ++b) {
        if (mod(b * b - D, m) == 0)
            return reduce({p, b, (b * b - D) / m});
    }
    throw NoSquareRoot(std::to_string(D) + " is not a square modulo " + std::to_string(m));
}

numerics::BigComplex form_to_tau(const Form& f, numerics::Bits prec)
{
    using numerics::BigReal;
    const long D = f.discriminant();
    const BigReal two_a(2 * f.a, prec);
    return {BigReal(-f.b, prec) / two_a, numerics::sqrt(BigReal(-D, prec)) / two_a};
}

long unit_count(long D)
{
    if (D == -3)
        return 6;
    if (D == -4)
        return 4;
    return 2;
}

bool class_number_ratio_check(long d_K, long p, long t)
{
    check_prime(p);
    if (t < 1)
        throw std::invalid_argument("conductor exponent must be positive");
    const Discriminant k = Discriminant::make(d_K);
    if (k.conductor != 1)
        throw std::invalid_argument(std::to_string(d_K) + " is not fundamental");
    long pt = 1;
    for (long i = 0; i < t; ++i)
        pt *= p;
    const long D = pt * pt * d_K;
    const long lhs = class_number(D) * unit_count(d_K);
    long rhs = class_number(d_K) * unit_count(D) * (p - kronecker(d_K, p));
    for (long i = 1; i < t; ++i)
        rhs *= p;
    return lhs == rhs;
}

bool principal_represents(long D, long n)
{
    const Form f = principal_form(D);
    // a x^2 + b x y + c y^2 >= (|D| / 4a) y^2, so |y| <= sqrt(4 a n / |D|).
    const long ymax = static_cast<long>(std::sqrt(4.0 * f.a * n / static_cast<double>(-D))) + 1;
    for (long y = 0; y <= ymax; ++y) {
        // Solve x^2 + b y x + (c y^2 - n) = 0 for integer x.
        const long disc = f.b * f.b * y * y - 4 * (f.c * y * y - n);
        if (disc < 0)
            continue;
        const long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc))));
        for (long s : {r - 1, r, r + 1}) {
            if (s < 0 || s * s != disc)
                continue;
            if ((-f.b * y + s) % 2 == 0 || (-f.b * y - s) % 2 == 0)
                return true;
        }
    }
    return false;
}

ClassGroup::ClassGroup(long D)
    : D_(D), forms_(reduced_forms(D))
{
    const std::size_t h = forms_.size();
    for (std::size_t i = 0; i < h; ++i)
        index_[forms_[i]] = i;
    table_.resize(h * h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) {
            const std::size_t k = index_of(compose(forms_[i], forms_[j]));
            table_[i * h + j] = k;
            table_[j * h + i] = k;
        }
    inverse_.resize(h);
    orders_.resize(h);
    for (std::size_t i = 0; i < h; ++i) {
        inverse_[i] = index_of(reduce(forms_[i].inverse()));
        long n = 1;
        std::size_t x = i;
        while (x != 0) {
            x = multiply(x, i);
            ++n;
        }
        orders_[i] = n;
    }
}

std::size_t ClassGroup::index_of(const Form& f) const
{
    auto it = index_.find(f);
    if (it == index_.end())
        throw std::out_of_range("form " + f.to_string() + " is not reduced for D=" + std::to_string(D_));
    return it->second;
}

long ClassGroup::exponent() const
{
    long e = 1;
    for (long o : orders_)
        e = std::lcm(e, o);
    return e;
}

long ClassGroup::squares_index() const
{
    std::set<std::size_t> squares;
    for (std::size_t i = 0; i < forms_.size(); ++i)
        squares.insert(multiply(i, i));
    return order() / static_cast<long>(squares.size());
}

long ClassGroup::ambiguous_count() const
{
    long n = 0;
    for (std::size_t i = 0; i < forms_.size(); ++i)
        if (inverse_[i] == i)
            ++n;
    return n;
}

} // namespace cmforge::quadratic
