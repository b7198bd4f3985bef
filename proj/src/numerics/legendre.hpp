#pragma once

// Legendre polynomials P_n, the companion polynomials R_n, and the Legendre
// function of the second kind
//
//     Q_{s-1}(t) = \int_0^\infty (t + sqrt(t^2 - 1) cosh v)^{-s} dv,   t > 1,
//
// both through the closed form (P_{k-1}(t)/2) log((t+1)/(t-1)) - R_{k-1}(t)
// for odd k <= 7 and through direct quadrature of the integral.

#include "numerics/precision.hpp"
#include "numerics/real.hpp"

namespace singmod::numerics {

/// P_n(t) by the three-term recurrence.
template <class T>
T legendre_p(int n, T const & t)
{
    if (n < 0)
        throw DomainError("legendre_p: negative degree");
    T prev = t * 0L + 1L; // P_0
    if (n == 0)
        return prev;
    T cur = t; // P_1
    for (int j = 1; j < n; ++j) {
        // (j+1) P_{j+1} = (2j+1) t P_j - j P_{j-1}
        T next = ((t * cur) * static_cast<long>(2 * j + 1) - prev * static_cast<long>(j))
                 / static_cast<long>(j + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double legendre_p(int n, double t);

/// R_n for n in {0, 2, 4, 6}: the polynomial part of Q_n.
template <class T>
T legendre_r(int n, T const & t)
{
    switch (n) {
    case 0:
        return t * 0L;
    case 2:
        return (t * 3L) / 2L;
    case 4:
        return (t * t * t * 35L) / 8L - (t * 55L) / 24L;
    case 6: {
        T t2 = t * t;
        return (t * t2 * t2 * 231L) / 16L - (t * t2 * 119L) / 8L + (t * 231L) / 80L;
    }
    default:
        throw DomainError("legendre_r: n must be one of 0, 2, 4, 6");
    }
}

double legendre_r(int n, double t);

/// Closed form of Q_{k-1}(t), k in {1, 3, 5, 7}, evaluated at the precision of t.
Real legendre_q_closed(int k, Real const & t);
/// Closed form at ctx.mantissa_bits (+ guard bits for the cancellation near large t).
Real legendre_q_closed(int k, double t, PrecisionContext const & ctx);

/// Q_{s-1}(t) by trapezoidal quadrature of the defining integral. The
/// integrand is even and analytic in v in the strip |Im v| < pi, so the
/// trapezoidal rule converges geometrically; the step and cut-off are chosen
/// so both discretisation and truncation stay below ctx.series_tail_bound.
Real legendre_q_num(Real const & s, Real const & t, PrecisionContext const & ctx);
Real legendre_q_num(double s, double t, PrecisionContext const & ctx);

/// Fast double-precision Q_{s-1}(t) for s > 1 (any real s >= 1 for the
/// hypergeometric branch), stable for large t. Used inside lattice sums.
class LegendreQ
{
public:
    explicit LegendreQ(double s);
    double operator()(double t) const;
    double s() const { return s_; }

private:
    double hypergeometric(double t) const;
    double small_t(double t) const;

    double s_;
    double prefactor_; // sqrt(pi) Gamma(s) / Gamma(s + 1/2) / 2^s
    int odd_k_;        // s if s in {1,3,5,7}, else 0
};

/// Convenience wrapper around LegendreQ.
double legendre_q(double s, double t);

/// m_k = 1 / max_{r in [-1,1]} (-P_{k-1}(r)) for k in {3, 5, 7}.
double mk_constant(int k);

} // namespace singmod::numerics
