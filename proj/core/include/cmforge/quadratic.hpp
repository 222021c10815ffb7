#pragma once

// Imaginary quadratic orders through positive definite binary quadratic
// forms. A form (a, b, c) stands for the ideal class with basis quotient
// (-b + sqrt(D)) / (2a); composition of forms is multiplication of classes.

#include <cmforge/errors.hpp>
#include <cmforge/numerics.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cmforge::quadratic {

bool is_prime(long n);

// Kronecker symbol (a | n) for arbitrary integers.
int kronecker(long a, long n);

// D < 0 with D = 0 or 1 mod 4.
bool is_discriminant(long D);

struct Discriminant {
    long D = 0;
    long fundamental = 0; // d_K
    long conductor = 0;   // f with D = f^2 d_K
    // Squarefree d > 0 with Q(sqrt(-d)) the field.
    long squarefree() const;

    // Throws InvalidDiscriminant unless is_discriminant(D).
    static Discriminant make(long D);
};

struct Form {
    long a = 0;
    long b = 0;
    long c = 0;

    long discriminant() const { return b * b - 4 * a * c; }
    bool is_primitive() const;
    bool is_reduced() const;
    // (a, -b, c), the inverse class.
    Form inverse() const { return {a, -b, c}; }
    std::string to_string() const;

    friend auto operator<=>(const Form&, const Form&) = default;
};

// The unique reduced form properly equivalent to f.
// Precondition: a > 0 and negative discriminant.
Form reduce(const Form& f);

Form principal_form(long D);

// Sorted with the principal form first.
std::vector<Form> reduced_forms(long D);

long class_number(long D);

// Reduced representative of the product class.
Form compose(const Form& f, const Form& g);

// Least n >= 1 with f^n principal.
long element_order(const Form& f);

long ambiguous_count(long D);

enum class Splitting { split, inert, ramified };
std::string to_string(Splitting s);

// Via (d_K | p). Throws ConductorDivisor if p divides the conductor.
Splitting splitting_type(long D, long p);

// Reduced form of the class of a prime above p. Throws NoSquareRoot for inert p.
Form prime_form(long D, long p);

// (-b + i sqrt|D|) / (2a).
numerics::BigComplex form_to_tau(const Form& f, numerics::Bits prec);

// Number of roots of unity in the order: 6, 4 or 2.
long unit_count(long D);

// Checks h(p^{2t} d_K) e_1 = h(d_K) e_f p^{t-1} (p - (d_K|p)).
// Covers inert, ramified and split p.
bool class_number_ratio_check(long d_K, long p, long t);

// Does the principal form represent n?
bool principal_represents(long D, long n);

// Finite abelian group of reduced forms with a full multiplication table.
class ClassGroup {
public:
    explicit ClassGroup(long D);

    long discriminant() const { return D_; }
    long order() const { return static_cast<long>(forms_.size()); }
    const std::vector<Form>& forms() const { return forms_; }
    const Form& form(std::size_t i) const { return forms_.at(i); }

    // Throws std::out_of_range if f is not one of the reduced forms.
    std::size_t index_of(const Form& f) const;
    std::size_t multiply(std::size_t i, std::size_t j) const { return table_[i * forms_.size() + j]; }
    std::size_t inverse(std::size_t i) const { return inverse_[i]; }
    long element_order(std::size_t i) const { return orders_[i]; }
    long exponent() const;
    // |Cl / Cl^2|
    long squares_index() const;
    long ambiguous_count() const;

private:
    long D_;
    std::vector<Form> forms_;
    std::map<Form, std::size_t> index_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;
    std::vector<long> orders_;
};

} // namespace cmforge::quadratic
