#pragma once

#include "modular/hecke.hpp"
#include "modular/jfunction.hpp"
#include "numerics/precision.hpp"
#include "numerics/real.hpp"
#include "quadforms/cm_point.hpp"

#include <vector>

namespace singmod::modular {

struct ModpolyValue
{
    Complex value;
    /// Sum over factors of (absolute error bound / |factor|).
    double rel_error = 0.0;
    bool zero = false;
    /// Indices into hecke_cosets(m) of the factors that vanish.
    std::vector<std::size_t> zero_cosets;
};

/// phi_m(j(z1), j(z2)) = prod over cosets (j(z1) - j(coset z2)). A factor is
/// declared zero only when its modulus is below its own error bound.
ModpolyValue modpoly_eval(std::int64_t m, Complex const & z1, Complex const & z2, PrecisionContext const & ctx);

/// One factor j(z1) - j(coset z2) at a pair of CM points.
struct CMFactor
{
    HeckeCoset coset;
    quadforms::QuadForm image; // reduced form of coset * z2
    bool zero = false;         // exact: image is the class of z1
    Complex value;             // unset (zero) when `zero`
};

/// All factors of phi_m at a pair of CM points, with exact zero detection
/// through forms and j-values drawn from `cache`.
std::vector<CMFactor> modpoly_factors_cm(std::int64_t m, quadforms::QuadForm const & z1,
                                         quadforms::QuadForm const & z2, JCache & cache);

/// Zero test only (no j evaluation).
bool modpoly_vanishes_cm(std::int64_t m, quadforms::QuadForm const & z1, quadforms::QuadForm const & z2);

} // namespace singmod::modular
