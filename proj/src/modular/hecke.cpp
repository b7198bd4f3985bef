#include "modular/hecke.hpp"

#include "numerics/precision.hpp"

#include <numeric>

namespace singmod::modular {

bool HeckeCoset::primitive() const
{
    return std::gcd(std::gcd(a, b), d) == 1;
}

std::vector<HeckeCoset> hecke_cosets(std::int64_t m)
{
    if (m < 1)
        throw DomainError("hecke_cosets: m must be positive");
    std::vector<HeckeCoset> out;
    for (std::int64_t a = 1; a <= m; ++a) {
        if (m % a != 0)
            continue;
        std::int64_t d = m / a;
        for (std::int64_t b = 0; b < d; ++b)
            out.push_back({a, b, d});
    }
    return out;
}

std::int64_t sigma1(std::int64_t m)
{
    std::int64_t s = 0;
    for (std::int64_t k = 1; k <= m; ++k)
        if (m % k == 0)
            s += k;
    return s;
}

quadforms::QuadForm coset_image(HeckeCoset const & g, quadforms::QuadForm const & f)
{
    // z = (d w - b)/a substituted into a_f z^2 + b_f z + c_f = 0.
    __int128 A = g.a, B = g.b, D = g.d;
    __int128 na = f.a * D * D;
    __int128 nb = f.b * A * D - 2 * f.a * B * D;
    __int128 nc = f.a * B * B - f.b * A * B + f.c * A * A;
    auto g128 = [](__int128 x, __int128 y) {
        if (x < 0)
            x = -x;
        if (y < 0)
            y = -y;
        while (y != 0) {
            __int128 t = x % y;
            x = y;
            y = t;
        }
        return x;
    };
    __int128 k = g128(g128(na, nb), nc);
    na /= k;
    nb /= k;
    nc /= k;
    constexpr __int128 limit = static_cast<__int128>(1) << 62;
    if (na > limit || nb > limit || nb < -limit || nc > limit)
        throw DomainError("coset_image: coefficients exceed 64 bits");
    return {static_cast<std::int64_t>(na), static_cast<std::int64_t>(nb), static_cast<std::int64_t>(nc)};
}

} // namespace singmod::modular
