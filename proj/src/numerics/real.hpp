#pragma once

// Value-semantic wrappers over MPFR for arbitrary-precision real and complex
// arithmetic. Binary operators produce a result at the larger of the operand
// precisions; compound assignment keeps the precision of the left operand.

#include <mpfr.h>
#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>

namespace singmod {

using Precision = mpfr_prec_t;

class Real
{
public:
    explicit Real(Precision prec = 64)
    {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(double x, Precision prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Real(long x, Precision prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(int x, Precision prec) : Real(static_cast<long>(x), prec) {}
    Real(mpz_class const & z, Precision prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    Real(Real const & o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real && o) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    /// Copy of `o` rounded to `prec` bits.
    Real(Real const & o, Precision prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real & operator=(Real const & o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real & operator=(Real && o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real from_string(std::string const & s, Precision prec);
    static Real pi(Precision prec);

    Precision prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// Binary exponent e with 0.5 <= |x|/2^e < 1; zero maps to a large negative value.
    long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

    /// Nearest integer (ties away from zero).
    mpz_class round_to_integer() const;
    std::string to_string(int digits = 20) const;

    Real & operator+=(Real const & o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real & operator-=(Real const & o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real & operator*=(Real const & o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real & operator/=(Real const & o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real & operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real & operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real & operator+=(long k) { mpfr_add_si(v_, v_, k, MPFR_RNDN); return *this; }

    Real operator-() const
    {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(Real const & a, Real const & b) { return binary(mpfr_add, a, b); }
    friend Real operator-(Real const & a, Real const & b) { return binary(mpfr_sub, a, b); }
    friend Real operator*(Real const & a, Real const & b) { return binary(mpfr_mul, a, b); }
    friend Real operator/(Real const & a, Real const & b) { return binary(mpfr_div, a, b); }

    friend Real operator+(Real const & a, long k) { Real r(a); mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN); return r; }
    friend Real operator+(long k, Real const & a) { return a + k; }
    friend Real operator-(Real const & a, long k) { Real r(a); mpfr_sub_si(r.v_, a.v_, k, MPFR_RNDN); return r; }
    friend Real operator-(long k, Real const & a) { Real r(a); mpfr_si_sub(r.v_, k, a.v_, MPFR_RNDN); return r; }
    friend Real operator*(Real const & a, long k) { Real r(a); mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN); return r; }
    friend Real operator*(long k, Real const & a) { return a * k; }
    friend Real operator/(Real const & a, long k) { Real r(a); mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN); return r; }
    friend Real operator/(long k, Real const & a) { Real r(a); mpfr_si_div(r.v_, k, a.v_, MPFR_RNDN); return r; }

    friend bool operator<(Real const & a, Real const & b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(Real const & a, Real const & b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(Real const & a, Real const & b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(Real const & a, Real const & b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(Real const & a, Real const & b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<(Real const & a, double x) { return mpfr_cmp_d(a.v_, x) < 0; }
    friend bool operator>(Real const & a, double x) { return mpfr_cmp_d(a.v_, x) > 0; }
    friend bool operator<=(Real const & a, double x) { return mpfr_cmp_d(a.v_, x) <= 0; }
    friend bool operator>=(Real const & a, double x) { return mpfr_cmp_d(a.v_, x) >= 0; }

    friend Real sqrt(Real const & a) { return unary(mpfr_sqrt, a); }
    friend Real log(Real const & a) { return unary(mpfr_log, a); }
    friend Real log1p(Real const & a) { return unary(mpfr_log1p, a); }
    friend Real exp(Real const & a) { return unary(mpfr_exp, a); }
    friend Real abs(Real const & a)
    {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real cosh(Real const & a) { return unary(mpfr_cosh, a); }
    friend Real acosh(Real const & a) { return unary(mpfr_acosh, a); }
    friend Real floor(Real const & a)
    {
        Real r(a.prec());
        mpfr_floor(r.v_, a.v_);
        return r;
    }
    friend Real round(Real const & a)
    {
        Real r(a.prec());
        mpfr_round(r.v_, a.v_);
        return r;
    }
    friend Real pow(Real const & a, unsigned long n)
    {
        Real r(a.prec());
        mpfr_pow_ui(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real pow(Real const & a, Real const & b) { return binary(mpfr_pow, a, b); }
    friend Real ldexp(Real const & a, long e)
    {
        Real r(a.prec());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }

private:
    using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    static Real binary(BinaryFn fn, Real const & a, Real const & b)
    {
        Real r(std::max(a.prec(), b.prec()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real unary(UnaryFn fn, Real const & a)
    {
        Real r(a.prec());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

/// Complex number with MPFR components of equal precision.
class Complex
{
public:
    explicit Complex(Precision prec = 64) : re_(prec), im_(prec) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    Complex(std::complex<double> z, Precision prec) : re_(z.real(), prec), im_(z.imag(), prec) {}
    Complex(Complex const & o, Precision prec) : re_(o.re_, prec), im_(o.im_, prec) {}

    Real const & re() const { return re_; }
    Real const & im() const { return im_; }
    Real & re() { return re_; }
    Real & im() { return im_; }
    Precision prec() const { return std::max(re_.prec(), im_.prec()); }

    std::complex<double> to_std() const { return {re_.to_double(), im_.to_double()}; }

    /// |z|^2
    Real norm() const { return re_ * re_ + im_ * im_; }
    Real abs() const;
    Complex conj() const { return {re_, -im_}; }

    friend Complex operator+(Complex const & a, Complex const & b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
    friend Complex operator-(Complex const & a, Complex const & b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
    friend Complex operator-(Complex const & a) { return {-a.re_, -a.im_}; }
    friend Complex operator*(Complex const & a, Complex const & b)
    {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend Complex operator/(Complex const & a, Complex const & b)
    {
        Real den = b.norm();
        return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
    }
    friend Complex operator*(Complex const & a, Real const & x) { return {a.re_ * x, a.im_ * x}; }
    friend Complex operator*(Complex const & a, long k) { return {a.re_ * k, a.im_ * k}; }
    friend Complex operator+(Complex const & a, long k) { return {a.re_ + k, a.im_}; }
    friend Complex operator-(long k, Complex const & a) { return {k - a.re_, -a.im_}; }
    friend Complex operator/(Complex const & a, long k) { return {a.re_ / k, a.im_ / k}; }

    Complex & operator+=(Complex const & o) { re_ += o.re_; im_ += o.im_; return *this; }
    Complex & operator-=(Complex const & o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Complex & operator*=(Complex const & o) { *this = *this * o; return *this; }

    friend Complex sqr(Complex const & a) { return {a.re_ * a.re_ - a.im_ * a.im_, a.re_ * a.im_ * 2L}; }
    friend Complex pow(Complex const & a, unsigned long n);
    /// e^{2 pi i z}
    friend Complex exp_2pi_i(Complex const & z);

private:
    Real re_;
    Real im_;
};

Complex pow(Complex const & a, unsigned long n);
Complex exp_2pi_i(Complex const & z);

} // namespace singmod
