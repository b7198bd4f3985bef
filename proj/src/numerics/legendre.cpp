#include "numerics/legendre.hpp"

#include <cmath>
#include <string>

namespace singmod::numerics {

namespace {

void check_closed_index(int k)
{
    if (k != 1 && k != 3 && k != 5 && k != 7)
        throw DomainError("closed-form Q_{k-1} needs k in {1, 3, 5, 7}, got " + std::to_string(k));
}

long double legendre_p_ld(int n, long double t)
{
    long double prev = 1.0L;
    if (n == 0)
        return prev;
    long double cur = t;
    for (int j = 1; j < n; ++j) {
        long double next = ((2 * j + 1) * t * cur - j * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

long double legendre_r_ld(int n, long double t)
{
    long double t2 = t * t;
    switch (n) {
    case 0: return 0.0L;
    case 2: return 1.5L * t;
    case 4: return t * (35.0L / 8.0L * t2 - 55.0L / 24.0L);
    case 6: return t * (231.0L / 16.0L * t2 * t2 - 119.0L / 8.0L * t2 + 231.0L / 80.0L);
    default: throw DomainError("legendre_r: n must be one of 0, 2, 4, 6");
    }
}

} // namespace

double legendre_p(int n, double t)
{
    return legendre_p<double>(n, t);
}

double legendre_r(int n, double t)
{
    return legendre_r<double>(n, t);
}

Real legendre_q_closed(int k, Real const & t)
{
    check_closed_index(k);
    if (!(t > 1.0))
        throw DomainError("legendre_q_closed: t must exceed 1 (logarithmic singularity at t = 1)");
    int n = k - 1;
    // log((t+1)/(t-1)) = log1p(2/(t-1))
    Real lg = log1p(2L / (t - 1L));
    return legendre_p(n, t) * lg / 2L - legendre_r(n, t);
}

Real legendre_q_closed(int k, double t, PrecisionContext const & ctx)
{
    ctx.validate();
    check_closed_index(k);
    if (!(t > 1.0))
        throw DomainError("legendre_q_closed: t must exceed 1 (logarithmic singularity at t = 1)");
    // Q_{k-1}(t) ~ t^{-k} while both closed-form terms grow like t^{k-1}.
    long guard = 64 + static_cast<long>(std::ceil((2.0 * k) * std::log2(std::max(2.0, t))));
    Real tt(t, ctx.mantissa_bits + guard);
    return Real(legendre_q_closed(k, tt), ctx.mantissa_bits);
}

Real legendre_q_num(Real const & s, Real const & t, PrecisionContext const & ctx)
{
    ctx.validate();
    // the integral also converges at s = 1, which gives an oracle for Q_0
    if (!(s >= 1.0) || !(t > 1.0))
        throw DomainError("legendre_q_num: requires s >= 1 and t > 1");

    return with_precision_retry(ctx, [&](PrecisionContext const & c) {
        Precision p = c.mantissa_bits + 32;
        Real sp(s, p), tp(t, p);
        Real root = sqrt(tp * tp - 1L);
        Real neg_s = -sp;
        auto integrand = [&](Real const & v) { return pow(tp + root * cosh(v), neg_s); };

        double tol = c.series_tail_bound;
        double sd = sp.to_double();
        double cd = root.to_double();
        // Tail: integrand <= (c e^v / 2)^{-s}; both the integral and the
        // trapezoid sum beyond V are bounded by (2/c)^s e^{-sV} * K.
        auto cutoff_for = [&](double h) {
            double K = std::max(1.0 / sd, h / (1.0 - std::exp(-sd * h)));
            double V = (sd * std::log(2.0 / cd) + std::log(10.0 * K / tol)) / sd;
            return std::max(V, 1.0);
        };

        double h = 1.0;
        double V = cutoff_for(h / 64.0);
        auto trapezoid = [&](double step) {
            Real sum = integrand(Real(0L, p)) / 2L;
            long n_max = static_cast<long>(std::ceil(V / step));
            Real hv(step, p);
            for (long n = 1; n <= n_max; ++n)
                sum += integrand(hv * n);
            return sum * hv;
        };

        Real prev = trapezoid(h);
        for (int halvings = 0; halvings < 6; ++halvings) {
            h /= 2.0;
            Real cur = trapezoid(h);
            Real diff = abs(cur - prev);
            if (diff < tol / 10.0)
                return Real(cur, c.mantissa_bits);
            prev = std::move(cur);
        }
        throw InsufficientPrecision("legendre_q_num: quadrature did not settle",
                                    abs(prev).to_double());
    });
}

Real legendre_q_num(double s, double t, PrecisionContext const & ctx)
{
    Precision p = ctx.mantissa_bits + 32;
    return legendre_q_num(Real(s, p), Real(t, p), ctx);
}

LegendreQ::LegendreQ(double s) : s_(s), odd_k_(0)
{
    if (!(s >= 1.0))
        throw DomainError("LegendreQ: s must be >= 1");
    prefactor_ = std::sqrt(M_PI) * std::exp(std::lgamma(s) - std::lgamma(s + 0.5)) / std::pow(2.0, s);
    if (s == 1.0 || s == 3.0 || s == 5.0 || s == 7.0)
        odd_k_ = static_cast<int>(s);
}

double LegendreQ::hypergeometric(double t) const
{
    // Q_{s-1}(t) = prefactor t^{-s} 2F1(s/2, (s+1)/2; s + 1/2; 1/t^2)
    double x = 1.0 / (t * t);
    double a = s_ / 2.0, b = (s_ + 1.0) / 2.0, c = s_ + 0.5;
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 400; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x;
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return prefactor_ * std::pow(t, -s_) * sum;
}

double LegendreQ::small_t(double t) const
{
    if (odd_k_ != 0) {
        int n = odd_k_ - 1;
        long double tl = t;
        long double lg = std::log1p(2.0L / (tl - 1.0L));
        return static_cast<double>(legendre_p_ld(n, tl) / 2.0L * lg - legendre_r_ld(n, tl));
    }
    // Trapezoid rule on the defining integral (geometric convergence).
    double c = std::sqrt(t * t - 1.0);
    auto f = [&](double v) { return std::pow(t + c * std::cosh(v), -s_); };
    double h = 0.125;
    double sum = f(0.0) / 2.0;
    for (int n = 1;; ++n) {
        double term = f(n * h);
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return sum * h;
}

double LegendreQ::operator()(double t) const
{
    if (!(t > 1.0))
        throw SingularityError("Q_{s-1}(t) is singular at t = 1");
    if (t >= 1.5)
        return hypergeometric(t);
    return small_t(t);
}

double legendre_q(double s, double t)
{
    return LegendreQ(s)(t);
}

double mk_constant(int k)
{
    switch (k) {
    case 3: return 2.0;
    case 5: return 7.0 / 3.0;
    case 7: return (7.0 * std::sqrt(15.0) - 3.0) / 10.0;
    default: throw DomainError("mk_constant: k must be one of 3, 5, 7");
    }
}

} // namespace singmod::numerics
