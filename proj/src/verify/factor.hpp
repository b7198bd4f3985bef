#pragma once

// Integer factorization for norms: trial division by a sieve of primes, then
// Brent's variant of Pollard rho with a fixed seed and a wall-clock budget per
// composite. Whatever cannot be split in time stays in the cofactor.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace singmod::verify {

struct PrimePower
{
    mpz_class prime;
    unsigned exponent = 1;
    /// Deterministic test (below 2^64 or found by trial division); otherwise
    /// a strong probable prime.
    bool proven = true;
};

struct Factorization
{
    std::vector<PrimePower> factors; // ascending primes
    /// Product of the parts that were not split (1 if complete).
    mpz_class cofactor = 1;

    bool complete() const { return cofactor == 1; }
    mpz_class product() const;
};

struct FactorOptions
{
    /// 0 selects the caller's default (see default_trial_bound).
    std::uint64_t trial_bound = 0;
    double rho_seconds = 10.0;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// max(10^6, |d1 d2| m^2)
std::uint64_t default_trial_bound(std::int64_t d1, std::int64_t d2, std::int64_t m);

/// Deterministic Miller-Rabin for n < 2^64.
bool is_prime_u64(std::uint64_t n);
/// is_prime_u64 below 2^64, GMP's strong probable prime test above.
bool is_prime(mpz_class const & n);

/// N >= 2 (DomainError otherwise).
Factorization factor_norm(mpz_class const & N, FactorOptions const & opts = {});

} // namespace singmod::verify
