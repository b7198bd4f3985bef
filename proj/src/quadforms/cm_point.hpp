#pragma once

#include "numerics/real.hpp"
#include "quadforms/quadforms.hpp"

#include <complex>

namespace singmod::quadforms {

/// The root z = (-b + i sqrt|d|) / (2a) in the upper half plane of a
/// positive definite form.
struct CMPoint
{
    QuadForm form;
    Discriminant discriminant;

    std::complex<double> value() const;
    Complex value(Precision prec) const;
    /// Same point moved into the standard fundamental domain (exactly, via
    /// form reduction).
    CMPoint reduced() const;

    friend bool operator==(CMPoint const & x, CMPoint const & y) { return x.form == y.form; }
};

/// CM point of a positive definite form.
CMPoint cm_point(QuadForm const & f);

} // namespace singmod::quadforms
