#include "numerics/real.hpp"

#include <cstdlib>
#include <stdexcept>

namespace singmod {

Real Real::from_string(std::string const & s, Precision prec)
{
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("not a decimal number: " + s);
    return r;
}

Real Real::pi(Precision prec)
{
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

mpz_class Real::round_to_integer() const
{
    mpz_class z;
    Real r(prec());
    mpfr_round(r.v_, v_);
    mpfr_get_z(z.get_mpz_t(), r.v_, MPFR_RNDN);
    return z;
}

std::string Real::to_string(int digits) const
{
    char * buf = nullptr;
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    if (mpfr_asprintf(&buf, fmt.c_str(), v_) < 0)
        return "nan";
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Real Complex::abs() const
{
    Real r(prec());
    mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    return r;
}

Complex pow(Complex const & a, unsigned long n)
{
    Complex result({1L, a.prec()}, {0L, a.prec()});
    Complex base = a;
    while (n != 0) {
        if (n & 1UL)
            result = result * base;
        n >>= 1;
        if (n != 0)
            base = sqr(base);
    }
    return result;
}

Complex exp_2pi_i(Complex const & z)
{
    Precision p = z.prec();
    Real two_pi = Real::pi(p) * 2L;
    Real modulus = exp(-(two_pi * z.im()));
    Real angle = two_pi * z.re();
    Real s(p), c(p);
    mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
    return {modulus * c, modulus * s};
}

} // namespace singmod
