#include "quadforms/quadforms.hpp"

#include "numerics/precision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace singmod::quadforms {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t m)
{
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t floor_div(std::int64_t x, std::int64_t m)
{
    std::int64_t q = x / m;
    if ((x % m != 0) && ((x < 0) != (m < 0)))
        --q;
    return q;
}

/// Translate b into (-a, a] by x -> x + k.
QuadForm normalize(QuadForm f)
{
    std::int64_t k = floor_div(f.a - f.b, 2 * f.a);
    f.c = f.a * k * k + f.b * k + f.c;
    f.b = f.b + 2 * f.a * k;
    return f;
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c)
{
    return std::gcd(std::gcd(a, b), c);
}

} // namespace

bool Discriminant::is_valid(std::int64_t d)
{
    return d < 0 && (mod(d, 4) == 0 || mod(d, 4) == 1);
}

Discriminant Discriminant::make(std::int64_t d)
{
    if (!is_valid(d))
        throw DomainError("invalid discriminant " + std::to_string(d)
                          + ": must be negative and congruent to 0 or 1 mod 4");
    // d = g^2 * s with s squarefree (negative)
    std::int64_t n = -d;
    std::int64_t g = 1, s = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i)
            g *= p;
        if (e % 2 == 1)
            s *= p;
    }
    s *= n;
    s = -s;
    Discriminant out;
    out.value = d;
    if (mod(s, 4) == 1) {
        out.fundamental = s;
        out.conductor = g;
    } else {
        out.fundamental = 4 * s;
        out.conductor = g / 2;
    }
    return out;
}

bool Discriminant::is_fundamental(std::int64_t d)
{
    return is_valid(d) && make(d).conductor == 1;
}

bool QuadForm::is_primitive() const
{
    return gcd3(a, b, c) == 1;
}

bool QuadForm::is_reduced() const
{
    std::int64_t ab = b < 0 ? -b : b;
    if (!(ab <= a && a <= c))
        return false;
    if ((ab == a || a == c) && b < 0)
        return false;
    return true;
}

std::ostream & operator<<(std::ostream & o, QuadForm const & f)
{
    return o << "(" << f.a << "," << f.b << "," << f.c << ")";
}

std::string to_string(QuadForm const & f)
{
    std::ostringstream os;
    os << f;
    return os.str();
}

QuadForm reduce(QuadForm f)
{
    if (!f.is_positive_definite())
        throw DomainError("reduce: form " + to_string(f) + " is not positive definite");
    f = normalize(f);
    while (f.a > f.c) {
        f = normalize(QuadForm{f.c, -f.b, f.a});
    }
    if (f.a == f.c && f.b < 0)
        f.b = -f.b;
    return f;
}

QuadForm principal_form(Discriminant const & d)
{
    std::int64_t b = mod(d.value, 2);
    return {1, b, (b * b - d.value) / 4};
}

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t & u, std::int64_t & v)
{
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    u = old_s;
    v = old_t;
    return old_r;
}

QuadForm compose(QuadForm const & f1_in, QuadForm const & f2_in)
{
    std::int64_t disc = f1_in.discriminant();
    if (disc != f2_in.discriminant())
        throw DomainError("compose: discriminants differ (" + to_string(f1_in) + " vs " + to_string(f2_in) + ")");
    QuadForm f1 = f1_in, f2 = f2_in;
    if (f1.a > f2.a)
        std::swap(f1, f2);
    std::int64_t s = (f1.b + f2.b) / 2;
    std::int64_t n = f2.b - s;

    std::int64_t y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        std::int64_t u, v;
        d = ext_gcd(f2.a, f1.a, u, v);
        y1 = u;
    }

    std::int64_t x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        std::int64_t u, v;
        d1 = ext_gcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }

    std::int64_t v1 = f1.a / d1;
    std::int64_t v2 = f2.a / d1;
    __int128 rr = (static_cast<__int128>(y1) * y2 % v1 * n - static_cast<__int128>(x2) * f2.c) % v1;
    if (rr < 0)
        rr += v1;
    std::int64_t r = static_cast<std::int64_t>(rr);
    QuadForm f3;
    f3.a = v1 * v2;
    f3.b = f2.b + 2 * v2 * r;
    f3.c = (f3.b * f3.b - disc) / (4 * f3.a);
    return reduce(f3);
}

QuadForm inverse(QuadForm const & f)
{
    return reduce(QuadForm{f.a, -f.b, f.c});
}

QuadForm power(QuadForm const & f, unsigned n)
{
    QuadForm result = principal_form(Discriminant::make(f.discriminant()));
    QuadForm base = reduce(f);
    while (n != 0) {
        if (n & 1U)
            result = compose(result, base);
        n >>= 1;
        if (n != 0)
            base = compose(base, base);
    }
    return result;
}

std::size_t ClassGroup::index_of(QuadForm const & f) const
{
    QuadForm r = reduce(f);
    auto it = std::find(forms.begin(), forms.end(), r);
    if (it == forms.end())
        throw DomainError("form " + to_string(f) + " is not in Cl(" + std::to_string(discriminant.value) + ")");
    return static_cast<std::size_t>(it - forms.begin());
}

ClassGroup enumerate_reduced(Discriminant const & d)
{
    ClassGroup G;
    G.discriminant = d;
    std::int64_t D = d.value;
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (mod(b - D, 2) != 0)
                continue;
            std::int64_t num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            std::int64_t c = num / (4 * a);
            QuadForm f{a, b, c};
            if (!f.is_reduced() || !f.is_primitive())
                continue;
            G.forms.push_back(f);
        }
    }
    std::sort(G.forms.begin(), G.forms.end(), [](QuadForm const & x, QuadForm const & y) {
        if (x.a != y.a)
            return x.a < y.a;
        std::int64_t ax = x.b < 0 ? -x.b : x.b, ay = y.b < 0 ? -y.b : y.b;
        if (ax != ay)
            return ax < ay;
        return x.b > y.b;
    });
    G.identity = 0;
    return G;
}

std::size_t class_number(Discriminant const & d)
{
    return enumerate_reduced(d).order();
}

QuadForm project_class(QuadForm const & f, Discriminant const & source, Discriminant const & target)
{
    if (f.discriminant() != source.value)
        throw DomainError("project_class: form " + to_string(f) + " does not have discriminant "
                          + std::to_string(source.value));
    if (source.fundamental != target.fundamental || source.conductor % target.conductor != 0)
        throw DomainError("project_class: Cl(" + std::to_string(source.value) + ") does not map to Cl("
                          + std::to_string(target.value) + ")");
    std::int64_t g = source.conductor / target.conductor;
    if (g == 1)
        return reduce(f);

    // An equivalent form whose first coefficient is prime to g: evaluate the
    // form at small coprime (x, y) and complete (x, y) to an SL2(Z) matrix.
    QuadForm rep = reduce(f);
    if (std::gcd(rep.a, g) != 1) {
        bool found = false;
        for (std::int64_t bound = 1; !found && bound < 1000; ++bound) {
            for (std::int64_t x = -bound; x <= bound && !found; ++x) {
                for (std::int64_t y : {-bound, bound}) {
                    for (int swap = 0; swap < 2 && !found; ++swap) {
                        std::int64_t xx = swap ? y : x, yy = swap ? x : y;
                        if (std::gcd(xx, yy) != 1)
                            continue;
                        std::int64_t value = rep.a * xx * xx + rep.b * xx * yy + rep.c * yy * yy;
                        if (std::gcd(value, g) != 1)
                            continue;
                        std::int64_t w, u_neg;
                        ext_gcd(xx, yy, w, u_neg); // xx*w + yy*u_neg = 1
                        std::int64_t u = -u_neg;   // xx*w - yy*u = 1
                        QuadForm t;
                        t.a = value;
                        t.b = 2 * rep.a * xx * u + rep.b * (xx * w + yy * u) + 2 * rep.c * yy * w;
                        t.c = rep.a * u * u + rep.b * u * w + rep.c * w * w;
                        rep = t;
                        found = true;
                    }
                }
            }
        }
        if (!found)
            throw Error("project_class: no representative prime to the relative conductor");
    }

    std::int64_t di = target.value;
    std::int64_t a = rep.a;
    for (std::int64_t bb = -a; bb <= a; ++bb) {
        if (mod(bb - di, 2) != 0)
            continue;
        if (mod(g * bb - rep.b, 2 * a) != 0)
            continue;
        if (mod(bb * bb - di, 4 * a) != 0)
            continue;
        return reduce(QuadForm{a, bb, (bb * bb - di) / (4 * a)});
    }
    throw Error("project_class: no compatible middle coefficient for " + to_string(rep));
}

} // namespace singmod::quadforms
