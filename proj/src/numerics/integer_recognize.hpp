#pragma once

#include "numerics/precision.hpp"
#include "numerics/real.hpp"

#include <gmpxx.h>

namespace singmod::numerics {

struct Recognition
{
    bool ok = false;
    mpz_class value;  // round(x), also filled on failure
    Real residual;    // |x - round(x)|
    double tolerance = 0.0; // the accepted residual for this x
};

/// Accepts round(x) when |x - round(x)| < ctx.integer_tolerance * max(1, sqrt|x|).
Recognition integer_recognize(Real const & x, PrecisionContext const & ctx);

/// Like integer_recognize but throws InsufficientPrecision on failure, so it
/// can be used inside with_precision_retry.
mpz_class recognize_or_retry(Real const & x, PrecisionContext const & ctx, char const * what);

} // namespace singmod::numerics
