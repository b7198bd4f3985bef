#pragma once

#include "numerics/real.hpp"

#include <complex>
#include <cstdint>

namespace singmod::modular {

/// Integer 2x2 matrix [[a, b], [c, d]] acting by Moebius transformation.
struct Matrix2
{
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }
    Matrix2 operator*(Matrix2 const & o) const
    {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    std::complex<double> apply(std::complex<double> z) const
    {
        return (static_cast<double>(a) * z + static_cast<double>(b))
               / (static_cast<double>(c) * z + static_cast<double>(d));
    }
    Complex apply(Complex const & z) const;

    friend bool operator==(Matrix2 const &, Matrix2 const &) = default;
};

template <class Z>
struct Reduced
{
    Z z;
    Matrix2 gamma; // z = gamma * input
};

/// Moves z into the standard fundamental domain |Re z| <= 1/2, |z| >= 1 by
/// alternating translations and inversions z -> -1/z.
Reduced<std::complex<double>> fd_reduce(std::complex<double> z);
Reduced<Complex> fd_reduce(Complex const & z);

bool in_fundamental_domain(std::complex<double> z, double tol = 1e-12);

} // namespace singmod::modular
