#pragma once

// On-disk cache of integer sequences (class polynomial coefficients, j-series
// coefficients). One file per key:
//
//   <version>
//   <key>
//   <one decimal integer per line>
//   <checksum: 16 hex digits of FNV-1a over "key\n" and the payload lines>
//
// Writers hold an exclusive flock on "<file>.lock" and publish through a
// rename, so readers never see a partial file. Any mismatch (version, key,
// checksum, syntax) reads as a miss and the value is recomputed.

#include "modular/classpoly.hpp"
#include "numerics/precision.hpp"

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace singmod::io {

constexpr int cache_version = 1;

/// Cache directory or file problems.
class IOError : public Error
{
public:
    using Error::Error;
};

struct CacheEntry
{
    int version = cache_version;
    std::string key;
    std::vector<mpz_class> payload;
};

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t entry_checksum(std::string const & key, std::vector<mpz_class> const & payload);

std::string serialize(CacheEntry const & e);
/// Nothing on any kind of corruption or version mismatch.
std::optional<CacheEntry> parse(std::string const & text);

class Cache
{
public:
    /// Creates the directory if needed (IO failures surface as Error).
    explicit Cache(std::filesystem::path dir);

    std::filesystem::path const & dir() const { return dir_; }
    std::filesystem::path path_for(std::string const & key) const;

    std::optional<std::vector<mpz_class>> load(std::string const & key) const;
    void store(std::string const & key, std::vector<mpz_class> const & payload) const;

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }

private:
    std::filesystem::path dir_;
    mutable std::atomic<std::size_t> hits_{0};
    mutable std::atomic<std::size_t> misses_{0};
};

struct CachedClassPolynomial
{
    modular::ClassPolynomial poly;
    bool from_cache = false;
};

/// Key "classpoly:<d>". A null cache always computes.
CachedClassPolynomial classpoly_cached(quadforms::Discriminant const & d, PrecisionContext const & ctx,
                                       Cache const * cache);

/// Key "jcoeffs:<count>".
std::vector<mpz_class> j_coefficients_cached(std::size_t count, Cache const * cache);

} // namespace singmod::io
