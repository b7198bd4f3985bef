#pragma once

// The modular j-invariant.
//
// Production evaluation uses the eta quotient
//     f(z) = Delta(2z)/Delta(z) = q prod (1 + q^n)^24,
//     j = (1 + 256 f)^3 / f,
// with eta products summed by Euler's pentagonal series; after reduction to
// the fundamental domain |q| <= e^{-pi sqrt 3}, so a few dozen terms reach
// thousands of bits. The exact Fourier coefficients of E4^3/Delta are also
// available and serve as an independent evaluation path.

#include "numerics/precision.hpp"
#include "numerics/real.hpp"
#include "quadforms/cm_point.hpp"

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <vector>

namespace singmod::modular {

/// j(z) for z in the fundamental domain, at the precision of z.
Complex j_eval_reduced(Complex const & z);

/// j(z) for any z in the upper half plane, evaluated with ctx.mantissa_bits
/// (plus guard bits) after fundamental-domain reduction.
Complex j_eval(Complex const & z, PrecisionContext const & ctx);
Complex j_eval(std::complex<double> z, PrecisionContext const & ctx);

/// j at a CM point; the point is reduced exactly through its form.
Complex j_eval(quadforms::CMPoint const & z, Precision prec);

/// Upper bound for the absolute error of a value returned by j_eval_reduced
/// at `prec` bits (dominated by cancellation in 1 + 256 f near j = 0).
double j_abs_error(Complex const & j, Precision prec);

/// The first `count` coefficients c(-1), c(0), c(1), ... of
/// j = q^{-1} + 744 + 196884 q + ..., computed exactly from E4^3 / Delta.
std::vector<mpz_class> j_coefficients(std::size_t count);

/// Truncated Laurent series sum_{n >= -1} c(n) q^n with q = e^{2 pi i z}.
Complex j_qseries(Complex const & z, std::vector<mpz_class> const & coeffs);

/// Thread-safe cache of j-values at CM points, keyed by reduced form.
class JCache
{
public:
    explicit JCache(Precision prec) : prec_(prec) {}
    Precision precision() const { return prec_; }
    Complex get(quadforms::QuadForm const & form);
    std::size_t size() const;

private:
    Precision prec_;
    mutable std::mutex mutex_;
    std::map<quadforms::QuadForm, Complex> values_;
};

} // namespace singmod::modular
