#include <cmforge/polynomial.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cmforge {

using numerics::BigComplex;

namespace {

// Appends " + c*mono" style text; mono empty for the constant term.
void append_term(std::string& out, const Integer& c, const std::string& mono)
{
    const bool negative = c < 0;
    const Integer mag = abs(c);
    if (out.empty())
        out += negative ? "-" : "";
    else
        out += negative ? " - " : " + ";
    if (mono.empty())
        out += mag.get_str();
    else if (mag == 1)
        out += mono;
    else
        out += mag.get_str() + "*" + mono;
}

std::string power(std::string_view var, std::size_t k)
{
    if (k == 0)
        return {};
    std::string s(var);
    if (k > 1)
        s += "^" + std::to_string(k);
    return s;
}

} // namespace

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs)
    : c_(std::move(coeffs))
{
    trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    c_.reserve(coeffs.size());
    for (long c : coeffs)
        c_.emplace_back(c);
    trim();
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

IntPolynomial IntPolynomial::monomial(const Integer& c, std::size_t degree)
{
    std::vector<Integer> v(degree + 1);
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::linear(const Integer& root)
{
    return IntPolynomial(std::vector<Integer>{-root, Integer(1)});
}

void IntPolynomial::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Integer IntPolynomial::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

const Integer& IntPolynomial::leading() const
{
    if (c_.empty())
        throw std::logic_error("leading coefficient of the zero polynomial");
    return c_.back();
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs)
{
    if (rhs.c_.size() > c_.size())
        c_.resize(rhs.c_.size());
    for (std::size_t i = 0; i < rhs.c_.size(); ++i)
        c_[i] += rhs.c_[i];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& rhs)
{
    if (rhs.c_.size() > c_.size())
        c_.resize(rhs.c_.size());
    for (std::size_t i = 0; i < rhs.c_.size(); ++i)
        c_[i] -= rhs.c_[i];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator*=(const Integer& k)
{
    for (auto& c : c_)
        c *= k;
    trim();
    return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Integer> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            out[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-() const
{
    IntPolynomial r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

Integer IntPolynomial::evaluate(const Integer& x) const
{
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

BigComplex IntPolynomial::evaluate(const BigComplex& x) const
{
    const numerics::Bits p = x.precision();
    BigComplex acc(p);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + BigComplex(numerics::BigReal(*it, p));
    return acc;
}

IntPolynomial IntPolynomial::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<Integer> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(d));
}

std::pair<IntPolynomial, IntPolynomial> IntPolynomial::divmod_monic(const IntPolynomial& divisor) const
{
    if (!divisor.is_monic())
        throw std::invalid_argument("divmod_monic needs a monic divisor");
    std::vector<Integer> rem = c_;
    const std::size_t dd = divisor.c_.size() - 1;
    if (rem.size() <= dd)
        return {IntPolynomial{}, *this};
    std::vector<Integer> quo(rem.size() - dd);
    for (std::size_t k = rem.size(); k-- > dd;) {
        const Integer q = rem[k];
        quo[k - dd] = q;
        if (q == 0)
            continue;
        for (std::size_t i = 0; i <= dd; ++i)
            rem[k - dd + i] -= q * divisor.c_[i];
    }
    rem.resize(dd);
    return {IntPolynomial(std::move(quo)), IntPolynomial(std::move(rem))};
}

std::string IntPolynomial::to_string(std::string_view var) const
{
    if (c_.empty())
        return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] != 0)
            append_term(out, c_[k], power(var, k));
    }
    return out;
}

BiPolynomial::BiPolynomial(std::vector<IntPolynomial> rows)
    : rows_(std::move(rows))
{
    trim();
}

void BiPolynomial::trim()
{
    while (!rows_.empty() && rows_.back().is_zero())
        rows_.pop_back();
}

long BiPolynomial::degree_y() const
{
    long d = -1;
    for (const auto& r : rows_)
        d = std::max(d, r.degree());
    return d;
}

IntPolynomial BiPolynomial::row(std::size_t i) const { return i < rows_.size() ? rows_[i] : IntPolynomial{}; }

Integer BiPolynomial::coeff(std::size_t i, std::size_t j) const
{
    return i < rows_.size() ? rows_[i].coeff(j) : Integer(0);
}

void BiPolynomial::set_coeff(std::size_t i, std::size_t j, const Integer& value)
{
    if (i >= rows_.size())
        rows_.resize(i + 1);
    std::vector<Integer> c = rows_[i].coefficients();
    if (j >= c.size())
        c.resize(j + 1);
    c[j] = value;
    rows_[i] = IntPolynomial(std::move(c));
    trim();
}

std::vector<BiPolynomial::Term> BiPolynomial::terms() const
{
    std::vector<Term> out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& c = rows_[i].coefficients();
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0)
                out.push_back({i, j, c[j]});
    }
    return out;
}

BiPolynomial BiPolynomial::swapped() const
{
    BiPolynomial r;
    for (const auto& t : terms())
        r.set_coeff(t.j, t.i, t.c);
    return r;
}

IntPolynomial BiPolynomial::diagonal() const
{
    std::vector<Integer> d;
    for (const auto& t : terms()) {
        if (t.i + t.j >= d.size())
            d.resize(t.i + t.j + 1);
        d[t.i + t.j] += t.c;
    }
    return IntPolynomial(std::move(d));
}

IntPolynomial BiPolynomial::specialize_y(const Integer& y) const
{
    std::vector<Integer> d(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
        d[i] = rows_[i].evaluate(y);
    return IntPolynomial(std::move(d));
}

BiPolynomial BiPolynomial::reduced_mod(const Integer& m) const
{
    std::vector<IntPolynomial> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) {
        std::vector<Integer> c = r.coefficients();
        for (auto& x : c) {
            Integer t;
            mpz_fdiv_r(t.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
            x = t;
        }
        out.emplace_back(std::move(c));
    }
    return BiPolynomial(std::move(out));
}

BigComplex BiPolynomial::evaluate(const BigComplex& x, const BigComplex& y) const
{
    BigComplex acc(x.precision());
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
        acc = acc * x + it->evaluate(y);
    return acc;
}

BiPolynomial operator*(const BiPolynomial& a, const BiPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<IntPolynomial> out(a.rows_.size() + b.rows_.size() - 1);
    for (std::size_t i = 0; i < a.rows_.size(); ++i)
        for (std::size_t k = 0; k < b.rows_.size(); ++k)
            out[i + k] += a.rows_[i] * b.rows_[k];
    return BiPolynomial(std::move(out));
}

BiPolynomial operator-(const BiPolynomial& a, const BiPolynomial& b)
{
    std::vector<IntPolynomial> out = a.rows_;
    if (b.rows_.size() > out.size())
        out.resize(b.rows_.size());
    for (std::size_t i = 0; i < b.rows_.size(); ++i)
        out[i] -= b.rows_[i];
    return BiPolynomial(std::move(out));
}

std::string BiPolynomial::to_string() const
{
    if (rows_.empty())
        return "0";
    std::string out;
    for (std::size_t i = rows_.size(); i-- > 0;) {
        const auto& c = rows_[i].coefficients();
        for (std::size_t j = c.size(); j-- > 0;) {
            if (c[j] == 0)
                continue;
            std::string mono = power("X", i);
            const std::string ym = power("Y", j);
            if (!ym.empty())
                mono = mono.empty() ? ym : mono + "*" + ym;
            append_term(out, c[j], mono);
        }
    }
    return out;
}

namespace {

std::vector<BigComplex> multiply(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b)
{
    const numerics::Bits p = a.front().precision();
    std::vector<BigComplex> out(a.size() + b.size() - 1, BigComplex(p));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

std::vector<BigComplex> product_tree(std::span<const BigComplex> roots)
{
    if (roots.size() == 1) {
        const numerics::Bits p = roots.front().precision();
        return {-roots.front(), BigComplex(1, 0, p)};
    }
    const std::size_t mid = roots.size() / 2;
    return multiply(product_tree(roots.subspan(0, mid)), product_tree(roots.subspan(mid)));
}

} // namespace

std::vector<BigComplex> poly_from_roots(std::span<const BigComplex> roots)
{
    if (roots.empty())
        return {BigComplex(1, 0, 64)};
    return product_tree(roots);
}

BigComplex evaluate(std::span<const BigComplex> coeffs, const BigComplex& x)
{
    BigComplex acc(x.precision());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

} // namespace cmforge
