#include "modular/classpoly.hpp"

#include "modular/jfunction.hpp"
#include "numerics/integer_recognize.hpp"
#include "quadforms/cm_point.hpp"

#include <cmath>

namespace singmod::modular {

long classpoly_precision_estimate(quadforms::Discriminant const & d)
{
    auto G = quadforms::enumerate_reduced(d);
    double bits = 0.0;
    double root = std::sqrt(static_cast<double>(-d.value));
    for (auto const & f : G.forms)
        bits += M_PI * root / static_cast<double>(f.a) / std::log(2.0);
    // binomial growth of the elementary symmetric functions
    bits += static_cast<double>(G.order()) + 64.0;
    return static_cast<long>(std::ceil(bits));
}

ClassPolynomial classpoly(quadforms::Discriminant const & d, PrecisionContext const & ctx)
{
    ctx.validate();
    auto G = quadforms::enumerate_reduced(d);
    PrecisionContext start = ctx.with_bits(std::max(ctx.mantissa_bits, classpoly_precision_estimate(d)));

    return with_precision_retry(start, [&](PrecisionContext const & c) {
        Precision p = c.mantissa_bits;
        // poly[k] is the coefficient of X^k
        std::vector<Complex> poly{Complex({1L, p}, {0L, p})};
        for (auto const & f : G.forms) {
            Complex root = j_eval(quadforms::cm_point(f), p);
            std::vector<Complex> next(poly.size() + 1, Complex(p));
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= poly[k] * root;
            }
            poly = std::move(next);
        }
        ClassPolynomial out;
        out.discriminant = d;
        out.bits = p;
        for (Complex const & z : poly) {
            numerics::Recognition r = numerics::integer_recognize(z.re(), c);
            Real imag = abs(z.im());
            Real scale = abs(Real(r.value, p));
            if (scale < 1.0)
                scale = Real(1L, p);
            double rel = std::max((r.residual / scale).to_double(), (imag / scale).to_double());
            out.worst_relative_residual = std::max(out.worst_relative_residual, rel);
            if (!r.ok || !(imag.to_double() < r.tolerance))
                throw InsufficientPrecision("classpoly(" + std::to_string(d.value)
                                                    + "): coefficient not recognised as an integer",
                                            std::max(r.residual.to_double(), imag.to_double()));
            out.coeffs.push_back(r.value);
        }
        return out;
    });
}

std::string format_polynomial(std::vector<mpz_class> const & coeffs, char const * var)
{
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        mpz_class c = coeffs[i];
        if (c == 0)
            continue;
        bool neg = c < 0;
        mpz_class a = neg ? mpz_class(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string mono;
        if (i >= 1)
            mono = var;
        if (i >= 2)
            mono += "^" + std::to_string(i);
        if (mono.empty())
            out += a.get_str();
        else if (a == 1)
            out += mono;
        else
            out += a.get_str() + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

} // namespace singmod::modular
