#pragma once

#include "numerics/precision.hpp"
#include "quadforms/quadforms.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace singmod::modular {

struct ClassPolynomial
{
    quadforms::Discriminant discriminant;
    /// Ascending coefficients; the last one is 1.
    std::vector<mpz_class> coeffs;
    /// max over coefficients of |x - round(x)| / max(1, |round(x)|), with the
    /// imaginary parts of the expanded product included.
    double worst_relative_residual = 0.0;
    long bits = 0;
};

/// H_d = prod over reduced forms of (X - j(z_form)), expanded at a precision
/// sized from sum pi sqrt|d| / a and recognised coefficient-wise.
ClassPolynomial classpoly(quadforms::Discriminant const & d, PrecisionContext const & ctx);

/// Bits needed to hold the largest coefficient of H_d, plus guard bits.
long classpoly_precision_estimate(quadforms::Discriminant const & d);

/// "X^2 + 191025*X - 121287375"
std::string format_polynomial(std::vector<mpz_class> const & coeffs, char const * var = "X");

} // namespace singmod::modular
