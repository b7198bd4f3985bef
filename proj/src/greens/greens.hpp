#pragma once

// Higher Green's functions on Y(1):
//   g_s(z1, z2)   = -2 Q_{s-1}(cosh d(z1, z2)),
//   G_s(z1, z2)   = sum over gamma in PSL2(Z) of g_s(z1, gamma z2)   (s > 1),
//   G_1(z1, z2)   = 2 log |j(z1) - j(z2)|,
//   G_k^m(z1, z2) = sum over Hecke cosets gamma of G_k(z1, gamma z2),
//   G_f           = sum_m c_f(m) m^{k-1} G_k^m.
//
// G_s is summed over the orbit ball cosh d <= T and completed by a tail bound
// obtained from partial summation against the orbit count N(t) <= A t + B
// (A = max(12, 2 N(T)/T), B = 12) and the monotonicity of t^s Q_{s-1}(t):
//   tail <= 2 [A Q(T) T/(s-1) + max(0, A T + B - N(T)) Q(T)].

#include "cmcycles/cmcycles.hpp"
#include "modular/fundamental_domain.hpp"
#include "numerics/precision.hpp"
#include "numerics/real.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace singmod::greens {

using cd = std::complex<double>;

struct GreensOptions
{
    /// Absolute budget for the truncation error of a single G_s sum.
    double tail_budget = 1e-6;
    /// Largest cosh-distance cutoff tried before giving up.
    double max_cutoff = 1e7;
    unsigned threads = 0;
};

double cosh_dist(cd z1, cd z2);

/// -2 Q_{s-1}(cosh d(z1, z2)); SingularityError for coincident points.
double g_s(double s, cd z1, cd z2);

struct LatticeSum
{
    double value = 0.0;      // partial sum over cosh d <= cutoff
    double tail_bound = 0.0; // bound for |G_s - value|
    double cutoff = 0.0;
    std::size_t terms = 0;
};

/// Orbit counting constants of the tail bound.
constexpr double orbit_count_slope = 12.0;
constexpr double orbit_count_offset = 12.0;

/// G_s with the cutoff grown until the tail bound meets opts.tail_budget.
LatticeSum G_s_sum(double s, cd z1, cd z2, GreensOptions const & opts = {});
/// G_s truncated at a given cutoff (tail bound still reported).
LatticeSum G_s_sum_at(double s, cd z1, cd z2, double cutoff);

/// The group elements used by a truncated sum, so that a sum can be
/// re-evaluated at perturbed first arguments over the same terms.
std::vector<modular::Matrix2> orbit_terms(cd z1, cd z2, double cutoff);
double G_s_over(double s, cd z1, cd z2, std::vector<modular::Matrix2> const & terms);

/// 2 log|j(z1) - j(z2)| at ctx precision; SingularityError if j(z1) = j(z2)
/// numerically.
double G_1(Complex const & z1, Complex const & z2, PrecisionContext const & ctx);

struct HeckeGreens
{
    double value = 0.0;
    double error_bound = 0.0;
    /// Per coset, or per cycle pair for cycle sums.
    std::vector<double> parts;
};

/// G_k^m for k in {1, 3, 5, 7}. The k = 1 path evaluates j at the coset
/// images at ctx precision; k >= 3 uses lattice sums.
HeckeGreens G_k_m(int k, std::int64_t m, Complex const & z1, Complex const & z2, PrecisionContext const & ctx,
                  GreensOptions const & opts = {});

struct PrincipalPart
{
    int k = 1;
    /// c_f(m) for 1 <= m <= m0
    std::map<std::int64_t, double> coeffs;

    void validate() const;
};

HeckeGreens G_f(PrincipalPart const & f, Complex const & z1, Complex const & z2, PrecisionContext const & ctx,
                GreensOptions const & opts = {});

/// Riemannian distance in H^2 from (z1, z2) to the graph of the m-th Hecke
/// correspondence: min over determinant-m gamma of d(z1, gamma z2) / sqrt 2.
double graph_distance(std::int64_t m, cd z1, cd z2);

struct GraphProximity
{
    std::int64_t m = 1;
    double epsilon = 0.0;
    std::vector<double> distances; // per cycle pair
    std::int64_t count = 0;        // with multiplicity
};

GraphProximity tm_count(cmcycles::CMCycle const & cycle, std::int64_t m, double epsilon);

/// Sum over the cycle (with multiplicity) of G_k^m.
HeckeGreens greens_over_cycle(int k, std::int64_t m, cmcycles::CMCycle const & cycle, PrecisionContext const & ctx,
                              GreensOptions const & opts = {});

} // namespace singmod::greens
