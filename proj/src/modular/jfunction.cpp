#include "modular/jfunction.hpp"

#include "modular/fundamental_domain.hpp"

#include <cmath>

namespace singmod::modular {

namespace {

constexpr long guard_bits = 32;

/// Euler's pentagonal series prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2},
/// truncated once |q|^e < 2^{-prec-16}.
Complex pentagonal(Complex const & q, double log2_abs_q)
{
    Precision p = q.prec();
    Complex sum({1L, p}, {0L, p});
    // For k >= 1 the exponents are k(3k-1)/2 and k(3k+1)/2.
    Complex e_minus = q;           // q^{k(3k-1)/2}, k = 1
    Complex e_plus = sqr(q);       // q^{k(3k+1)/2}, k = 1
    Complex step_minus = pow(q, 4); // q^{3k+1}, multiplier from k to k+1
    Complex step_plus = pow(q, 5);  // q^{3k+2}
    Complex q3 = pow(q, 3);
    double limit = -static_cast<double>(p) - 16.0;
    for (long k = 1;; ++k) {
        if (k % 2 == 1) {
            sum -= e_minus;
            sum -= e_plus;
        } else {
            sum += e_minus;
            sum += e_plus;
        }
        double next_exp = static_cast<double>((k + 1) * (3 * k + 2) / 2);
        if (next_exp * log2_abs_q < limit)
            break;
        e_minus *= step_minus;
        e_plus *= step_plus;
        step_minus *= q3;
        step_plus *= q3;
    }
    return sum;
}

} // namespace

Complex j_eval_reduced(Complex const & z)
{
    Complex q = exp_2pi_i(z);
    double log2_abs_q = -2.0 * M_PI * z.im().to_double() / std::log(2.0);
    Complex e1 = pentagonal(q, log2_abs_q);
    Complex e2 = pentagonal(sqr(q), 2.0 * log2_abs_q);
    // f = q (E(q^2)/E(q))^24
    Complex ratio = e2 / e1;
    Complex r3 = ratio * sqr(ratio);
    Complex r6 = sqr(r3);
    Complex r24 = sqr(sqr(r6));
    Complex f = q * r24;
    Complex u = f * 256L + 1L;
    Complex u3 = u * sqr(u);
    return u3 / f;
}

Complex j_eval(Complex const & z, PrecisionContext const & ctx)
{
    ctx.validate();
    Precision p = ctx.mantissa_bits + guard_bits;
    Reduced<Complex> r = fd_reduce(Complex(z, p));
    return j_eval_reduced(r.z);
}

Complex j_eval(std::complex<double> z, PrecisionContext const & ctx)
{
    ctx.validate();
    Reduced<std::complex<double>> r = fd_reduce(z);
    // Redo the final reduction at full precision from the exact matrix.
    Precision p = ctx.mantissa_bits + guard_bits;
    Complex zz = r.gamma.apply(Complex(z, p));
    return j_eval_reduced(fd_reduce(zz).z);
}

Complex j_eval(quadforms::CMPoint const & z, Precision prec)
{
    quadforms::CMPoint red = z.reduced();
    return j_eval_reduced(red.value(prec + guard_bits));
}

double j_abs_error(Complex const & j, Precision prec)
{
    double mag = std::abs(j.to_std());
    if (!std::isfinite(mag))
        mag = 1e300;
    return std::ldexp(std::max(mag, 1.0) + std::ldexp(1.0, 16), -static_cast<int>(prec) + 20);
}

std::vector<mpz_class> j_coefficients(std::size_t count)
{
    std::size_t n = count + 1;
    // E4 = 1 + 240 sum sigma_3(k) q^k
    std::vector<mpz_class> e4(n, 0);
    e4[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        mpz_class s = 0;
        for (std::size_t d = 1; d <= k; ++d)
            if (k % d == 0)
                s += mpz_class(static_cast<unsigned long>(d * d)) * static_cast<unsigned long>(d);
        e4[k] = 240 * s;
    }
    auto mul = [n](std::vector<mpz_class> const & a, std::vector<mpz_class> const & b) {
        std::vector<mpz_class> c(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t k = 0; i + k < n; ++k)
                c[i + k] += a[i] * b[k];
        }
        return c;
    };
    std::vector<mpz_class> e4cube = mul(mul(e4, e4), e4);
    // Delta / q = prod (1 - q^k)^24
    std::vector<mpz_class> eta(n, 0);
    eta[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        // multiply by (1 - q^k)
        for (std::size_t i = n - 1; i >= k; --i)
            eta[i] -= eta[i - k];
    }
    std::vector<mpz_class> e2 = mul(eta, eta);
    std::vector<mpz_class> e4p = mul(e2, e2);
    std::vector<mpz_class> e8 = mul(e4p, e4p);
    std::vector<mpz_class> e16 = mul(e8, e8);
    std::vector<mpz_class> delta = mul(e16, e8);
    // q j = E4^3 / (Delta/q), delta[0] = 1
    std::vector<mpz_class> out(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        mpz_class v = e4cube[i];
        for (std::size_t k = 1; k <= i; ++k)
            v -= delta[k] * out[i - k];
        out[i] = v;
    }
    return out;
}

Complex j_qseries(Complex const & z, std::vector<mpz_class> const & coeffs)
{
    Precision p = z.prec();
    Complex q = exp_2pi_i(z);
    Complex sum(p);
    Complex qn({1L, p}, {0L, p});
    // sum_{n>=0} c(n-1) q^n, then divide by q
    for (mpz_class const & c : coeffs) {
        sum += qn * Real(c, p);
        qn *= q;
    }
    return sum / q;
}

Complex JCache::get(quadforms::QuadForm const & form)
{
    quadforms::QuadForm key = quadforms::reduce(form);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = values_.find(key);
        if (it != values_.end())
            return it->second;
    }
    Complex v = j_eval(quadforms::cm_point(key), prec_);
    std::lock_guard<std::mutex> lock(mutex_);
    return values_.emplace(key, std::move(v)).first->second;
}

std::size_t JCache::size() const
{
    std::lock_guard<std::mutex> lock(mutex_);
    return values_.size();
}

} // namespace singmod::modular
