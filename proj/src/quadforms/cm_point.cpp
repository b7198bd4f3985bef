#include "quadforms/cm_point.hpp"

#include "numerics/precision.hpp"

#include <cmath>

namespace singmod::quadforms {

std::complex<double> CMPoint::value() const
{
    double sq = std::sqrt(static_cast<double>(-discriminant.value));
    return {-static_cast<double>(form.b) / (2.0 * form.a), sq / (2.0 * form.a)};
}

Complex CMPoint::value(Precision prec) const
{
    Real sq = sqrt(Real(static_cast<long>(-discriminant.value), prec));
    Real two_a(static_cast<long>(2 * form.a), prec);
    return {Real(static_cast<long>(-form.b), prec) / two_a, sq / two_a};
}

CMPoint CMPoint::reduced() const
{
    return {reduce(form), discriminant};
}

CMPoint cm_point(QuadForm const & f)
{
    if (!f.is_positive_definite())
        throw DomainError("cm_point: form " + to_string(f) + " is not positive definite");
    return {f, Discriminant::make(f.discriminant())};
}

} // namespace singmod::quadforms
