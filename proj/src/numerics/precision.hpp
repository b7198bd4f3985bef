#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace singmod {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input (bad discriminant, out-of-range index, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// A numerical result could not be certified within the retry budget.
class PrecisionError : public Error
{
public:
    PrecisionError(std::string const & what, double residual)
        : Error(what), residual_(residual)
    {
    }
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Evaluation hit the logarithmic singularity of a Green's function or a
/// vanishing factor of a modular polynomial.
class SingularityError : public Error
{
public:
    using Error::Error;
};

/// Working-precision policy shared by all high-precision computations.
struct PrecisionContext
{
    long mantissa_bits = 256;
    /// Accepted distance to the nearest integer, scaled by max(1, sqrt|x|).
    double integer_tolerance = 1e-9;
    /// Number of precision doublings attempted before giving up.
    int max_retries = 4;
    /// Absolute truncation budget for a single series or quadrature.
    double series_tail_bound = 1e-30;

    void validate() const
    {
        if (mantissa_bits < 64)
            throw DomainError("mantissa_bits must be >= 64");
        if (!(integer_tolerance > 0.0 && integer_tolerance < 0.5))
            throw DomainError("integer_tolerance must lie in (0, 0.5)");
        if (max_retries < 0)
            throw DomainError("max_retries must be non-negative");
        if (!(series_tail_bound > 0.0))
            throw DomainError("series_tail_bound must be positive");
    }

    PrecisionContext with_bits(long bits) const
    {
        PrecisionContext c = *this;
        c.mantissa_bits = bits;
        return c;
    }
    PrecisionContext doubled() const { return with_bits(2 * mantissa_bits); }
};

/// Thrown by a computation attempt that should be repeated at higher
/// precision; `with_precision_retry` converts it into a PrecisionError once
/// the budget is exhausted.
class InsufficientPrecision : public Error
{
public:
    InsufficientPrecision(std::string const & what, double residual)
        : Error(what), residual_(residual)
    {
    }
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Runs `attempt(ctx_k)` with ctx_k.mantissa_bits = base * 2^k for
/// k = 0..max_retries until it stops throwing InsufficientPrecision.
template <class Fn>
auto with_precision_retry(PrecisionContext const & ctx, Fn && attempt)
{
    ctx.validate();
    PrecisionContext current = ctx;
    for (int k = 0;; ++k) {
        try {
            return attempt(current);
        } catch (InsufficientPrecision const & e) {
            if (k >= ctx.max_retries)
                throw PrecisionError(std::string(e.what()) + " (after "
                                             + std::to_string(k) + " retries at "
                                             + std::to_string(current.mantissa_bits) + " bits)",
                                     e.residual());
            current = current.doubled();
        }
    }
}

} // namespace singmod
