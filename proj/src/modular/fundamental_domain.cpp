#include "modular/fundamental_domain.hpp"

#include "numerics/precision.hpp"

#include <cmath>

namespace singmod::modular {

namespace {

constexpr int max_steps = 10000;

Matrix2 translation(std::int64_t n)
{
    return {1, n, 0, 1};
}

constexpr Matrix2 inversion{0, -1, 1, 0};

} // namespace

Complex Matrix2::apply(Complex const & z) const
{
    Complex num = z * static_cast<long>(a) + static_cast<long>(b);
    Complex den = z * static_cast<long>(c) + static_cast<long>(d);
    return num / den;
}

Reduced<std::complex<double>> fd_reduce(std::complex<double> z)
{
    if (!(z.imag() > 0.0))
        throw DomainError("fd_reduce: point must lie in the upper half plane");
    Matrix2 g;
    for (int step = 0; step < max_steps; ++step) {
        double n = std::round(z.real());
        if (n != 0.0) {
            z -= n;
            g = translation(-static_cast<std::int64_t>(n)) * g;
        }
        if (std::norm(z) < 1.0 - 1e-15) {
            z = -1.0 / z;
            g = inversion * g;
        } else {
            break;
        }
    }
    return {z, g};
}

Reduced<Complex> fd_reduce(Complex const & zin)
{
    if (!(zin.im() > 0.0))
        throw DomainError("fd_reduce: point must lie in the upper half plane");
    Complex z = zin;
    Matrix2 g;
    // Inversions are triggered only below 1 - 2^{-(p-8)} so rounding on the
    // unit circle cannot make the loop oscillate.
    Real one_minus = 1L - ldexp(Real(1L, z.prec()), -(static_cast<long>(z.prec()) - 8));
    for (int step = 0; step < max_steps; ++step) {
        Real n = round(z.re());
        if (!n.is_zero()) {
            z.re() -= n;
            g = translation(-static_cast<std::int64_t>(n.to_double())) * g;
        }
        if (z.norm() < one_minus) {
            Complex minus_one({-1L, z.prec()}, {0L, z.prec()});
            z = minus_one / z;
            g = inversion * g;
        } else {
            break;
        }
    }
    return {z, g};
}

bool in_fundamental_domain(std::complex<double> z, double tol)
{
    return z.imag() > 0.0 && std::abs(z.real()) <= 0.5 + tol && std::abs(z) >= 1.0 - tol;
}

} // namespace singmod::modular
