#include "modular/geometry.hpp"

#include "numerics/precision.hpp"

#include <limits>

namespace singmod::modular {

double cosh_dist(std::complex<double> z1, std::complex<double> z2)
{
    return 1.0 + std::norm(z1 - z2) / (2.0 * z1.imag() * z2.imag());
}

Real cosh_dist(Complex const & z1, Complex const & z2)
{
    return 1L + (z1 - z2).norm() / (z1.im() * z2.im() * 2L);
}

double hyperbolic_distance(std::complex<double> z1, std::complex<double> z2)
{
    return 2.0 * std::asinh(std::abs(z1 - z2) / (2.0 * std::sqrt(z1.imag() * z2.imag())));
}

double y1_distance(std::complex<double> z1, std::complex<double> z2)
{
    if (!(z1.imag() > 0.0) || !(z2.imag() > 0.0))
        throw DomainError("y1_distance: points must lie in the upper half plane");
    auto a = fd_reduce(z1).z;
    auto b = fd_reduce(z2).z;
    // The identity gives an upper bound; every closer translate lies inside
    // that ball.
    double T = cosh_dist(a, b);
    double best = hyperbolic_distance(a, b);
    for_each_orbit_point(a, b, T * (1.0 + 1e-12) + 1e-15, [&](Matrix2 const &, std::complex<double> pt, double) {
        best = std::min(best, hyperbolic_distance(a, pt));
    });
    return best;
}

} // namespace singmod::modular
