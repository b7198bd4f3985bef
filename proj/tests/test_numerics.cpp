#include "doctest.h"

#include "numerics/integer_recognize.hpp"
#include "numerics/legendre.hpp"
#include "numerics/precision.hpp"
#include "numerics/real.hpp"

#include <cmath>
#include <random>

using namespace singmod;
using namespace singmod::numerics;

namespace {

// Independent oracle: Q_{s-1}(t) = sqrt(pi) Gamma(s) / (Gamma(s+1/2) 2^s)
//   * t^{-s} * 2F1(s/2, (s+1)/2; s+1/2; 1/t^2), summed in MPFR.
Real q_hypergeometric_oracle(long k, double t, Precision p)
{
    Real s(k, p), tt(t, p);
    Real x = 1L / (tt * tt);
    Real a = s / 2L, b = (s + 1L) / 2L;
    Real c = s + Real(0.5, p);
    Real term(1L, p), sum(1L, p);
    Real eps = ldexp(Real(1L, p), -static_cast<long>(p) - 8);
    for (long n = 0; n < 200000; ++n) {
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1L)) * x;
        sum += term;
        if (abs(term) < eps * sum)
            break;
    }
    // Gamma ratio for integer s via mpfr_gamma.
    Real g_s(p), g_sh(p);
    mpfr_gamma(g_s.raw(), s.raw(), MPFR_RNDN);
    mpfr_gamma(g_sh.raw(), c.raw(), MPFR_RNDN);
    Real pref = sqrt(Real::pi(p)) * g_s / g_sh / pow(Real(2L, p), static_cast<unsigned long>(k));
    return pref * pow(tt, -s) * sum;
}

} // namespace

TEST_CASE("legendre_p table and recurrence")
{
    CHECK(legendre_p(0, 5.0) == doctest::Approx(1.0));
    CHECK(legendre_p(2, 1.0) == doctest::Approx(1.0));
    CHECK(legendre_p(4, 0.0) == doctest::Approx(3.0 / 8.0));
    for (double t : {-0.7, 0.3, 1.9, 4.0}) {
        CHECK(legendre_p(2, t) == doctest::Approx((3 * t * t - 1) / 2));
        CHECK(legendre_p(4, t) == doctest::Approx((35 * std::pow(t, 4) - 30 * t * t + 3) / 8));
        CHECK(legendre_p(6, t)
              == doctest::Approx((231 * std::pow(t, 6) - 315 * std::pow(t, 4) + 105 * t * t - 5) / 16));
    }
    for (int n = 0; n < 12; ++n)
        CHECK(legendre_p(n, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(legendre_p(-1, 0.5), DomainError);
}

TEST_CASE("legendre_r table")
{
    CHECK(legendre_r(0, 3.0) == 0.0);
    CHECK(legendre_r(2, 3.0) == doctest::Approx(4.5));
    CHECK(legendre_r(4, 1.0) == doctest::Approx(50.0 / 24.0));
    CHECK(legendre_r(6, 1.0) == doctest::Approx(231.0 / 16 - 119.0 / 8 + 231.0 / 80));
    CHECK_THROWS_AS(legendre_r(3, 1.0), DomainError);
    CHECK_THROWS_AS(legendre_r(8, 1.0), DomainError);
}

TEST_CASE("legendre_q_closed examples")
{
    PrecisionContext ctx;
    CHECK(legendre_q_closed(1, 2.0, ctx).to_double() == doctest::Approx(std::log(3.0) / 2));
    // (13/2) ln 2 - 9/2
    CHECK(legendre_q_closed(3, 3.0, ctx).to_double() == doctest::Approx(6.5 * std::log(2.0) - 4.5).epsilon(1e-12));
    CHECK(legendre_q_closed(3, 3.0, ctx).to_double() == doctest::Approx(0.0054566736396445).epsilon(1e-10));
    CHECK_THROWS_AS(legendre_q_closed(3, 1.0, ctx), DomainError);
    CHECK_THROWS_AS(legendre_q_closed(3, 0.5, ctx), DomainError);
    CHECK_THROWS_AS(legendre_q_closed(2, 3.0, ctx), DomainError);
    CHECK_THROWS_AS(legendre_q_closed(9, 3.0, ctx), DomainError);
}

TEST_CASE("closed form agrees with the hypergeometric oracle at high precision")
{
    PrecisionContext ctx;
    for (long k : {1L, 3L, 5L, 7L}) {
        for (double t : {1.05, 1.5, 2.0, 3.0, 7.5, 10.0, 100.0}) {
            Real closed = legendre_q_closed(static_cast<int>(k), t, ctx);
            Real oracle = q_hypergeometric_oracle(k, t, 192);
            Real rel = abs(closed - oracle) / oracle;
            CAPTURE(k);
            CAPTURE(t);
            CHECK(rel.to_double() < 1e-45);
        }
    }
}

TEST_CASE("quadrature agrees with closed form within 10 * series_tail_bound")
{
    PrecisionContext ctx;
    for (int k : {1, 3, 5, 7}) {
        for (double t : {1.01, 1.1, 2.0, 3.0, 5.0, 10.0}) {
            Real num = legendre_q_num(static_cast<double>(k), t, ctx);
            Real closed = legendre_q_closed(k, t, ctx);
            CAPTURE(k);
            CAPTURE(t);
            CHECK(abs(num - closed).to_double() <= 10 * ctx.series_tail_bound);
        }
    }
    // s = 2, t = 3 is the closed form with k = 3
    Real q = legendre_q_num(3.0, 3.0, ctx);
    CHECK(std::abs(q.to_double() - 0.0054566736396445) < 1e-15);
}

TEST_CASE("quadrature near s = 1 and monotonicity in t")
{
    PrecisionContext ctx;
    ctx.series_tail_bound = 1e-12;
    Real v = legendre_q_num(1.0001, 2.0, ctx);
    CHECK(v.is_finite());
    CHECK(v > 0.0);
    CHECK(legendre_q_num(3.0, 2.0, ctx) >= legendre_q_num(3.0, 4.0, ctx));
    CHECK_THROWS_AS(legendre_q_num(0.9, 2.0, ctx), DomainError);
    CHECK_THROWS_AS(legendre_q_num(2.0, 1.0, ctx), DomainError);
}

TEST_CASE("Q positivity and monotonicity grid")
{
    PrecisionContext ctx;
    for (int k : {1, 3, 5, 7}) {
        double prev = INFINITY;
        for (double t : {1.01, 1.1, 2.0, 5.0, 50.0}) {
            double q = legendre_q_closed(k, t, ctx).to_double();
            CHECK(q > 0.0);
            CHECK(q < prev);
            prev = q;
        }
    }
}

TEST_CASE("Legendre ODE residual")
{
    // (1 - t^2) Q'' - 2 t Q' + k(k-1) Q = 0, central differences in MPFR.
    PrecisionContext ctx;
    Precision p = 256;
    Real h = ldexp(Real(1L, p), -30);
    for (int k : {1, 3, 5, 7}) {
        for (double t0 : {1.2, 2.0, 4.0, 9.0}) {
            Real t(t0, p);
            Real q0 = legendre_q_closed(k, t);
            Real qp = legendre_q_closed(k, t + h);
            Real qm = legendre_q_closed(k, t - h);
            Real d1 = (qp - qm) / (h * 2L);
            Real d2 = (qp - q0 * 2L + qm) / (h * h);
            Real res = (1L - t * t) * d2 - t * d1 * 2L + q0 * static_cast<long>(k * (k - 1));
            CAPTURE(k);
            CAPTURE(t0);
            // finite-difference error is O(h^2) times derivatives of order 4
            CHECK(abs(res).to_double() < 1e-15);
        }
    }
}

TEST_CASE("fast LegendreQ kernel matches high precision values")
{
    PrecisionContext ctx;
    for (int k : {1, 3, 5, 7}) {
        LegendreQ q(k);
        for (double t : {1.0001, 1.01, 1.3, 1.49, 1.5, 2.0, 10.0, 1e3, 1e6}) {
            double ref = legendre_q_closed(k, t, ctx).to_double();
            CAPTURE(k);
            CAPTURE(t);
            CHECK(std::abs(q(t) - ref) <= 1e-13 * ref);
        }
    }
    LegendreQ q15(1.5);
    for (double t : {1.01, 1.2, 1.6, 3.0, 40.0}) {
        double ref = legendre_q_num(1.5, t, ctx.with_bits(64)).to_double();
        CHECK(std::abs(q15(t) - ref) <= 1e-12 * ref);
    }
    CHECK_THROWS_AS(q15(1.0), SingularityError);
    CHECK_THROWS_AS(LegendreQ(0.5), DomainError);
}

TEST_CASE("mk constants")
{
    CHECK(mk_constant(3) == 2.0);
    CHECK(mk_constant(5) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
    CHECK(mk_constant(7) == doctest::Approx(2.4110883423451917).epsilon(1e-15));
    CHECK_THROWS_AS(mk_constant(1), DomainError);
    CHECK_THROWS_AS(mk_constant(4), DomainError);

    for (int k : {3, 5, 7}) {
        double worst = -INFINITY;
        for (int i = 0; i <= 10000; ++i) {
            double r = -1.0 + 2.0 * i / 10000.0;
            worst = std::max(worst, -legendre_p(k - 1, r));
        }
        CHECK(mk_constant(k) * worst <= 1.0 + 1e-15);
        CHECK(mk_constant(k) * worst >= 1.0 - 1e-6); // sampling finds the max
    }
}

TEST_CASE("integer recognition")
{
    PrecisionContext ctx;
    auto rec = integer_recognize(Real::from_string("1727.999999999997", 128), ctx);
    CHECK(rec.ok);
    CHECK(rec.value == 1728);
    auto bad = integer_recognize(Real::from_string("1728.4", 128), ctx);
    CHECK_FALSE(bad.ok);
    CHECK(bad.residual.to_double() == doctest::Approx(0.4));
    CHECK_THROWS_AS(recognize_or_retry(Real::from_string("1728.4", 128), ctx, "x"), InsufficientPrecision);

    // idempotent on exact integers, including huge ones
    mpz_class big("8916100448256000000000000000000000000000000000017");
    for (mpz_class const & z : {mpz_class(0), mpz_class(-5), mpz_class(1728), big}) {
        Real x(z, 512);
        auto r = integer_recognize(x, ctx);
        CHECK(r.ok);
        CHECK(r.value == z);
        CHECK(integer_recognize(Real(r.value, 512), ctx).value == z);
    }
}

TEST_CASE("precision context and retry policy")
{
    PrecisionContext ctx;
    CHECK_NOTHROW(ctx.validate());
    CHECK_THROWS_AS(ctx.with_bits(32).validate(), DomainError);
    PrecisionContext bad = ctx;
    bad.integer_tolerance = 0.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);

    std::vector<long> seen;
    long got = with_precision_retry(ctx, [&](PrecisionContext const & c) {
        seen.push_back(c.mantissa_bits);
        if (c.mantissa_bits < 1024)
            throw InsufficientPrecision("more", 1.0);
        return c.mantissa_bits;
    });
    CHECK(got == 1024);
    CHECK(seen == std::vector<long>{256, 512, 1024});

    seen.clear();
    CHECK_THROWS_AS(with_precision_retry(ctx,
                                         [&](PrecisionContext const & c) -> int {
                                             seen.push_back(c.mantissa_bits);
                                             throw InsufficientPrecision("never", 0.3);
                                         }),
                    PrecisionError);
    CHECK(seen.size() == static_cast<std::size_t>(ctx.max_retries + 1));
}

TEST_CASE("Real and Complex basics")
{
    Real a(3L, 128), b(4L, 128);
    CHECK((a * a + b * b) == Real(25L, 128));
    Complex z(a, b);
    CHECK(z.abs().to_double() == 5.0);
    Complex w = pow(z, 3);
    auto ref = std::pow(std::complex<double>(3, 4), 3);
    CHECK(w.re().to_double() == doctest::Approx(ref.real()));
    CHECK(w.im().to_double() == doctest::Approx(ref.imag()));
    Complex q = exp_2pi_i(Complex(std::complex<double>(0.25, 1.0), 128));
    CHECK(q.re().to_double() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q.im().to_double() == doctest::Approx(std::exp(-2 * M_PI)));
    CHECK(Real(2.5, 64).round_to_integer() == 3);
    CHECK(Real(-2.5, 64).round_to_integer() == -3);
}
