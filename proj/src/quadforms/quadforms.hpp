#pragma once

// Positive definite binary quadratic forms a x^2 + b x y + c y^2 of negative
// discriminant, their reduction, Gauss composition, and the class groups
// Cl(d) of (not necessarily maximal) imaginary quadratic orders.
//
// Coefficients are 64-bit; discriminants are expected to satisfy |d| < 2^40.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace singmod::quadforms {

/// d = conductor^2 * fundamental, d < 0, d = 0 or 1 (mod 4).
struct Discriminant
{
    std::int64_t value = -3;
    std::int64_t fundamental = -3;
    std::int64_t conductor = 1;

    /// Throws DomainError if d is not a negative discriminant.
    static Discriminant make(std::int64_t d);
    static bool is_valid(std::int64_t d);
    static bool is_fundamental(std::int64_t d);

    bool fundamental_p() const { return value == fundamental; }

    friend bool operator==(Discriminant const &, Discriminant const &) = default;
};

struct QuadForm
{
    std::int64_t a = 1;
    std::int64_t b = 1;
    std::int64_t c = 1;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    bool is_positive_definite() const { return a > 0 && discriminant() < 0; }
    bool is_primitive() const;
    /// |b| <= a <= c with b >= 0 whenever |b| = a or a = c.
    bool is_reduced() const;

    friend auto operator<=>(QuadForm const &, QuadForm const &) = default;
    friend bool operator==(QuadForm const &, QuadForm const &) = default;
};

std::ostream & operator<<(std::ostream & o, QuadForm const & f);
std::string to_string(QuadForm const & f);

/// Unique reduced representative of the proper equivalence class of `f`.
QuadForm reduce(QuadForm f);

/// Principal form (1, d mod 2, (d mod 2 - d)/4).
QuadForm principal_form(Discriminant const & d);

/// Reduced composite of two primitive forms of equal discriminant
/// (Dirichlet composition, Cohen Algorithm 5.4.7).
QuadForm compose(QuadForm const & f1, QuadForm const & f2);

/// reduce((a, -b, c))
QuadForm inverse(QuadForm const & f);

/// f^n for n >= 0 (n = 0 gives the principal form).
QuadForm power(QuadForm const & f, unsigned n);

struct ClassGroup
{
    Discriminant discriminant;
    /// Reduced primitive forms; the principal form comes first.
    std::vector<QuadForm> forms;
    std::size_t identity = 0;

    std::size_t order() const { return forms.size(); }
    /// Position of reduce(f) in `forms`; throws DomainError if absent.
    std::size_t index_of(QuadForm const & f) const;
};

/// Exhaustive scan over |b| <= a <= sqrt(|d|/3) of the reduced primitive forms.
ClassGroup enumerate_reduced(Discriminant const & d);

/// h(d), the number of reduced primitive forms.
std::size_t class_number(Discriminant const & d);

/// Image of the class of `f` (discriminant `source`) under the natural map
/// Cl(source) -> Cl(target) given by extending ideals from the smaller
/// order to the larger one. Requires equal fundamental parts and
/// target.conductor | source.conductor.
QuadForm project_class(QuadForm const & f, Discriminant const & source, Discriminant const & target);

/// Extended Euclid: returns g = gcd(a, b) >= 0 with u a + v b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t & u, std::int64_t & v);

} // namespace singmod::quadforms
