#include "verify/factor.hpp"

#include "numerics/precision.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <random>

namespace singmod::verify {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 n)
{
    return static_cast<u64>(static_cast<u128>(a) * b % n);
}

u64 powmod(u64 a, u64 e, u64 n)
{
    u64 r = 1;
    a %= n;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        e >>= 1;
    }
    return r;
}

bool fits_u64(mpz_class const & n)
{
    return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

u64 to_u64(mpz_class const & n)
{
    u64 r = 0;
    mpz_export(&r, nullptr, -1, sizeof r, 0, 0, n.get_mpz_t());
    return r;
}

std::vector<u64> primes_up_to(u64 bound)
{
    std::vector<bool> composite(bound + 1, false);
    std::vector<u64> primes;
    for (u64 p = 2; p <= bound; ++p) {
        if (composite[p])
            continue;
        primes.push_back(p);
        for (u64 q = p * p; q <= bound; q += p)
            composite[q] = true;
    }
    return primes;
}

using Clock = std::chrono::steady_clock;

/// A nontrivial factor of the odd composite n, or nothing before the deadline.
std::optional<mpz_class> brent_rho(mpz_class const & n, std::mt19937_64 & rng, Clock::time_point deadline)
{
    constexpr int block = 128;
    while (Clock::now() < deadline) {
        mpz_class c = mpz_class(static_cast<unsigned long>(rng() >> 1)) % (n - 1) + 1;
        mpz_class y = mpz_class(static_cast<unsigned long>(rng() >> 1)) % n;
        mpz_class x, ys, q = 1, g = 1;
        auto f = [&](mpz_class & v) {
            v = v * v + c;
            v %= n;
        };
        for (unsigned long r = 1; g == 1; r <<= 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                f(y);
            for (unsigned long k = 0; k < r && g == 1; k += block) {
                ys = y;
                for (unsigned long i = 0; i < std::min<unsigned long>(block, r - k); ++i) {
                    f(y);
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                if (Clock::now() >= deadline)
                    return std::nullopt;
            }
        }
        if (g == n) {
            // the block overshot: step one at a time from the saved point
            do {
                f(ys);
                mpz_class diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
    return std::nullopt;
}

} // namespace

mpz_class Factorization::product() const
{
    mpz_class p = cofactor;
    for (auto const & f : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        p *= pe;
    }
    return p;
}

std::uint64_t default_trial_bound(std::int64_t d1, std::int64_t d2, std::int64_t m)
{
    u128 v = static_cast<u128>(std::abs(d1)) * static_cast<u128>(std::abs(d2)) * static_cast<u128>(m)
             * static_cast<u128>(m);
    u64 cap = 1ULL << 32;
    return std::max<u64>(1000000, v > cap ? cap : static_cast<u64>(v));
}

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // these twelve bases are a proof for every n < 2^64
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

bool is_prime(mpz_class const & n)
{
    if (n < 2)
        return false;
    if (fits_u64(n))
        return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Factorization factor_norm(mpz_class const & N, FactorOptions const & opts)
{
    if (N < 2)
        throw DomainError("factor_norm: N must be at least 2");
    std::map<mpz_class, PrimePower> found;
    auto add = [&](mpz_class const & p, unsigned e, bool proven) {
        auto [it, inserted] = found.try_emplace(p, PrimePower{p, 0, proven});
        it->second.exponent += e;
    };

    mpz_class rest = N;
    u64 bound = opts.trial_bound ? opts.trial_bound : 1000000;
    for (u64 p : primes_up_to(bound)) {
        mpz_class pp(static_cast<unsigned long>(p));
        if (pp * pp > rest)
            break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e)
            add(pp, e, true);
    }

    Factorization out;
    std::mt19937_64 rng(opts.seed);
    std::vector<mpz_class> pending;
    if (rest > 1)
        pending.push_back(rest);
    while (!pending.empty()) {
        mpz_class n = pending.back();
        pending.pop_back();
        if (is_prime(n)) {
            add(n, 1, fits_u64(n));
            continue;
        }
        // perfect powers defeat rho
        mpz_class root;
        unsigned long k = 0;
        for (unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2); e >= 2; --e) {
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e)) {
                k = e;
                break;
            }
        }
        if (k) {
            for (unsigned long i = 0; i < k; ++i)
                pending.push_back(root);
            continue;
        }
        auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(opts.rho_seconds));
        auto g = brent_rho(n, rng, deadline);
        if (!g) {
            out.cofactor *= n;
            continue;
        }
        pending.push_back(*g);
        pending.push_back(n / *g);
    }
    for (auto & [p, pp] : found)
        out.factors.push_back(pp);
    return out;
}

} // namespace singmod::verify
