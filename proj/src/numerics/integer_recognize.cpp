#include "numerics/integer_recognize.hpp"

#include <cmath>
#include <string>

namespace singmod::numerics {

Recognition integer_recognize(Real const & x, PrecisionContext const & ctx)
{
    Recognition r;
    if (!x.is_finite()) {
        r.residual = Real(INFINITY, 64);
        return r;
    }
    r.value = x.round_to_integer();
    r.residual = abs(x - Real(r.value, x.prec()));
    // sqrt|x| computed in log space so huge norms do not overflow a double.
    double log2_abs = 0.0;
    if (!x.is_zero()) {
        long e = 0;
        double mant = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
        log2_abs = std::log2(std::abs(mant)) + static_cast<double>(e);
    }
    double scale = log2_abs > 0.0 ? log2_abs / 2.0 : 0.0;
    Real tol = ldexp(Real(ctx.integer_tolerance, 64), static_cast<long>(std::floor(scale)));
    tol = tol * Real(std::exp2(scale - std::floor(scale)), 64);
    r.tolerance = tol.to_double();
    r.ok = r.residual < tol;
    return r;
}

mpz_class recognize_or_retry(Real const & x, PrecisionContext const & ctx, char const * what)
{
    Recognition r = integer_recognize(x, ctx);
    if (!r.ok)
        throw InsufficientPrecision(std::string(what) + ": value is not within tolerance of an integer (residual "
                                            + r.residual.to_string(6) + ")",
                                    r.residual.to_double());
    return r.value;
}

} // namespace singmod::numerics
