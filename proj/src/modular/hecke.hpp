#pragma once

#include "modular/fundamental_domain.hpp"
#include "numerics/real.hpp"
#include "quadforms/quadforms.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace singmod::modular {

/// Upper triangular [[a, b], [0, d]] with a d = m, 0 <= b < d.
struct HeckeCoset
{
    std::int64_t a = 1, b = 0, d = 1;

    Matrix2 matrix() const { return {a, b, 0, d}; }
    bool primitive() const;
    std::complex<double> apply(std::complex<double> z) const { return matrix().apply(z); }
    Complex apply(Complex const & z) const { return matrix().apply(z); }

    friend bool operator==(HeckeCoset const &, HeckeCoset const &) = default;
};

/// Representatives of Gamma \ {integer matrices of determinant m}, imprimitive
/// ones included; ordered by a, then b. There are sigma_1(m) of them.
std::vector<HeckeCoset> hecke_cosets(std::int64_t m);

std::int64_t sigma1(std::int64_t m);

/// Primitive form whose upper root is (a z + b)/d, where z is the upper root
/// of `f`. Not reduced.
quadforms::QuadForm coset_image(HeckeCoset const & g, quadforms::QuadForm const & f);

} // namespace singmod::modular
