#pragma once

// Textual points of the upper half plane:
//   "a,b,c"           CM point of a positive definite form
//   "-23"             CM point of the principal form of that discriminant
//   "i", "2i", "0.5+1.2i", "-0.5+0.9i"  decimal complex numbers x + y i

#include "numerics/real.hpp"
#include "quadforms/quadforms.hpp"

#include <complex>
#include <optional>
#include <string>

namespace singmod::io {

struct PointSpec
{
    std::string text;
    std::optional<quadforms::QuadForm> form; // set for CM inputs
    std::string re = "0", im = "1";          // decimal parts otherwise

    std::complex<double> approx() const;
    Complex value(Precision prec) const;
};

/// Throws DomainError on syntax errors and on points outside H.
PointSpec parse_point(std::string const & text);

} // namespace singmod::io
