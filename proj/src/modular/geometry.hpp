#pragma once

// Hyperbolic geometry on the upper half plane and enumeration of the
// PSL2(Z)-orbit of a point inside a hyperbolic ball.

#include "modular/fundamental_domain.hpp"
#include "numerics/real.hpp"
#include "quadforms/quadforms.hpp"

#include <cmath>
#include <complex>

namespace singmod::modular {

/// cosh d(z1, z2) = 1 + |z1 - z2|^2 / (2 y1 y2)
double cosh_dist(std::complex<double> z1, std::complex<double> z2);
Real cosh_dist(Complex const & z1, Complex const & z2);

/// d(z1, z2), computed as 2 asinh(|z1 - z2| / (2 sqrt(y1 y2))) to keep
/// relative accuracy for nearby points.
double hyperbolic_distance(std::complex<double> z1, std::complex<double> z2);

/// Calls visit(gamma, gamma w, cosh d(z, gamma w)) for every gamma in PSL2(Z)
/// with cosh d(z, gamma w) <= T. Each element of PSL2(Z) is visited once
/// (bottom row (c, d) with c > 0, or (0, 1)).
template <class Visit>
void for_each_orbit_point(std::complex<double> z, std::complex<double> w, double T, Visit && visit)
{
    if (!(T >= 1.0))
        return;
    double x = z.real(), y = z.imag();
    double u = w.real(), v = w.imag();
    double lambda = T + std::sqrt(T * T - 1.0); // e^{d_max}
    double slack = 1e-12 * T;
    // Im(gamma w) = v / |c w + d|^2 >= y / lambda
    double R2 = v * lambda / y * (1.0 + 1e-12);
    auto translates = [&](Matrix2 g0, std::complex<double> w0) {
        double X = w0.real(), Y = w0.imag();
        double rhs = 2.0 * y * Y * (T - 1.0) - (y - Y) * (y - Y);
        if (rhs < -slack)
            return;
        double half = std::sqrt(std::max(rhs, 0.0)) + 1e-9;
        auto n_lo = static_cast<std::int64_t>(std::ceil(x - X - half));
        auto n_hi = static_cast<std::int64_t>(std::floor(x - X + half));
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            std::complex<double> pt(X + static_cast<double>(n), Y);
            double ch = cosh_dist(z, pt);
            if (ch <= T)
                visit(Matrix2{g0.a + n * g0.c, g0.b + n * g0.d, g0.c, g0.d}, pt, ch);
        }
    };
    translates(Matrix2{1, 0, 0, 1}, w);
    auto c_max = static_cast<std::int64_t>(std::floor(std::sqrt(R2) / v));
    for (std::int64_t c = 1; c <= c_max; ++c) {
        double cd = static_cast<double>(c);
        double room = R2 - cd * cd * v * v;
        if (room < 0.0)
            continue;
        double r = std::sqrt(room);
        auto d_lo = static_cast<std::int64_t>(std::ceil(-cd * u - r));
        auto d_hi = static_cast<std::int64_t>(std::floor(-cd * u + r));
        for (std::int64_t d = d_lo; d <= d_hi; ++d) {
            std::int64_t s, t;
            if (quadforms::ext_gcd(d, c, s, t) != 1)
                continue;
            // s d + t c = 1, so [[s, -t], [c, d]] has determinant 1.
            Matrix2 g0{s, -t, c, d};
            translates(g0, g0.apply(w));
        }
    }
}

/// min over gamma in PSL2(Z) of d(z1, gamma z2).
double y1_distance(std::complex<double> z1, std::complex<double> z2);

} // namespace singmod::modular
