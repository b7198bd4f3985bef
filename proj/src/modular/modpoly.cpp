#include "modular/modpoly.hpp"

#include <cmath>

namespace singmod::modular {

ModpolyValue modpoly_eval(std::int64_t m, Complex const & z1, Complex const & z2, PrecisionContext const & ctx)
{
    ctx.validate();
    if (!(z1.im() > 0.0) || !(z2.im() > 0.0))
        throw DomainError("modpoly_eval: points must lie in the upper half plane");
    Precision p = ctx.mantissa_bits;
    Complex j1 = j_eval(z1, ctx);
    double e1 = j_abs_error(j1, p);
    ModpolyValue out;
    out.value = Complex({1L, j1.prec()}, {0L, j1.prec()});
    auto cosets = hecke_cosets(m);
    Precision wp = j1.prec() + 16;
    for (std::size_t i = 0; i < cosets.size(); ++i) {
        Complex w = cosets[i].apply(Complex(z2, wp));
        Complex jw = j_eval(w, ctx);
        Complex factor = j1 - jw;
        double err = e1 + j_abs_error(jw, p);
        double mag = factor.abs().to_double();
        if (mag <= err) {
            out.zero = true;
            out.zero_cosets.push_back(i);
            continue;
        }
        out.rel_error += err / mag;
        out.value = out.value * factor;
    }
    if (out.zero)
        out.value = Complex(j1.prec());
    return out;
}

std::vector<CMFactor> modpoly_factors_cm(std::int64_t m, quadforms::QuadForm const & z1,
                                         quadforms::QuadForm const & z2, JCache & cache)
{
    quadforms::QuadForm r1 = quadforms::reduce(z1);
    Complex j1 = cache.get(r1);
    std::vector<CMFactor> out;
    for (HeckeCoset const & g : hecke_cosets(m)) {
        CMFactor f;
        f.coset = g;
        f.image = quadforms::reduce(coset_image(g, z2));
        f.zero = f.image == r1;
        if (!f.zero)
            f.value = j1 - cache.get(f.image);
        out.push_back(std::move(f));
    }
    return out;
}

bool modpoly_vanishes_cm(std::int64_t m, quadforms::QuadForm const & z1, quadforms::QuadForm const & z2)
{
    quadforms::QuadForm r1 = quadforms::reduce(z1);
    for (HeckeCoset const & g : hecke_cosets(m))
        if (quadforms::reduce(coset_image(g, z2)) == r1)
            return true;
    return false;
}

} // namespace singmod::modular
