#include "io/cache.hpp"

#include "modular/jfunction.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace singmod::io {

namespace fs = std::filesystem;

namespace {

/// RAII exclusive/shared flock on a side file.
class FileLock
{
public:
    FileLock(fs::path const & path, bool exclusive)
    {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ >= 0)
            ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
    }
    ~FileLock()
    {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(FileLock const &) = delete;
    FileLock & operator=(FileLock const &) = delete;

private:
    int fd_ = -1;
};

std::string hex16(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h)
{
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t entry_checksum(std::string const & key, std::vector<mpz_class> const & payload)
{
    std::uint64_t h = fnv1a(key + "\n");
    for (auto const & v : payload)
        h = fnv1a(v.get_str() + "\n", h);
    return h;
}

std::string serialize(CacheEntry const & e)
{
    std::string out = std::to_string(e.version) + "\n" + e.key + "\n";
    for (auto const & v : e.payload)
        out += v.get_str() + "\n";
    out += hex16(entry_checksum(e.key, e.payload)) + "\n";
    return out;
}

std::optional<CacheEntry> parse(std::string const & text)
{
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        lines.push_back(line);
    if (lines.size() < 3)
        return std::nullopt;
    CacheEntry e;
    if (lines[0] != std::to_string(cache_version))
        return std::nullopt;
    e.key = lines[1];
    if (e.key.empty())
        return std::nullopt;
    for (std::size_t i = 2; i + 1 < lines.size(); ++i) {
        mpz_class v;
        if (lines[i].empty() || v.set_str(lines[i], 10) != 0 || v.get_str() != lines[i])
            return std::nullopt;
        e.payload.push_back(std::move(v));
    }
    if (lines.back() != hex16(entry_checksum(e.key, e.payload)))
        return std::nullopt;
    return e;
}

Cache::Cache(fs::path dir) : dir_(std::move(dir))
{
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
        throw IOError("cannot use cache directory " + dir_.string() + ": " + ec.message());
}

fs::path Cache::path_for(std::string const & key) const
{
    std::string name;
    for (char c : key)
        name += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return dir_ / (name + ".cache");
}

std::optional<std::vector<mpz_class>> Cache::load(std::string const & key) const
{
    fs::path p = path_for(key);
    std::string text;
    {
        FileLock lock(fs::path(p.string() + ".lock"), false);
        std::ifstream in(p, std::ios::binary);
        if (in) {
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
    }
    auto e = parse(text);
    if (!e || e->key != key) {
        ++misses_;
        return std::nullopt;
    }
    ++hits_;
    return std::move(e->payload);
}

void Cache::store(std::string const & key, std::vector<mpz_class> const & payload) const
{
    fs::path p = path_for(key);
    FileLock lock(fs::path(p.string() + ".lock"), true);
    fs::path tmp = p.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << serialize({cache_version, key, payload});
        if (!out)
            throw IOError("cannot write cache file " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec)
        throw IOError("cannot publish cache file " + p.string() + ": " + ec.message());
}

CachedClassPolynomial classpoly_cached(quadforms::Discriminant const & d, PrecisionContext const & ctx,
                                       Cache const * cache)
{
    std::string key = "classpoly:" + std::to_string(d.value);
    if (cache) {
        if (auto coeffs = cache->load(key)) {
            // a hit must still look like H_d: monic of degree h(d)
            if (coeffs->size() == quadforms::class_number(d) + 1 && coeffs->back() == 1) {
                CachedClassPolynomial out;
                out.poly.discriminant = d;
                out.poly.coeffs = std::move(*coeffs);
                out.from_cache = true;
                return out;
            }
        }
    }
    CachedClassPolynomial out{modular::classpoly(d, ctx), false};
    if (cache)
        cache->store(key, out.poly.coeffs);
    return out;
}

std::vector<mpz_class> j_coefficients_cached(std::size_t count, Cache const * cache)
{
    std::string key = "jcoeffs:" + std::to_string(count);
    if (cache) {
        if (auto c = cache->load(key); c && c->size() == count)
            return std::move(*c);
    }
    auto coeffs = modular::j_coefficients(count);
    if (cache)
        cache->store(key, coeffs);
    return coeffs;
}

} // namespace singmod::io
