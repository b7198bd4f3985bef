#pragma once

// CM 0-cycles on Y(1)^2 and the norm of phi_m over them.
//
// Big case (d1 d2 not a square, gcd(d1, d2) = 1): the Galois orbit of a pair
// of CM points is all of Cl(d1) x Cl(d2), each pair with multiplicity 4, so
// the cycle has 4 h(d1) h(d2) points. Small case (same imaginary quadratic
// field): Cl(d') acts on both coordinates through the projections
// Cl(d') -> Cl(d_i), together with the conjugate branch (-conj z1, -conj z2).

#include "numerics/precision.hpp"
#include "numerics/real.hpp"
#include "quadforms/quadforms.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace singmod::cmcycles {

using quadforms::Discriminant;
using quadforms::QuadForm;

enum class CycleKind
{
    big,
    small,
    diagnostic
};

std::string to_string(CycleKind k);

struct CyclePair
{
    QuadForm z1; // reduced
    QuadForm z2; // reduced
    int multiplicity = 1;

    friend bool operator==(CyclePair const &, CyclePair const &) = default;
};

struct CMCycle
{
    CycleKind kind = CycleKind::big;
    Discriminant d1, d2;
    /// Discriminant of the acting order in the small case.
    std::optional<Discriminant> d_prime;
    /// Sorted by (z1, z2); equal pairs merged.
    std::vector<CyclePair> pairs;
    std::int64_t group_order = 0;

    bool exact() const { return kind != CycleKind::diagnostic; }
};

/// small iff d1 d2 is a perfect square, i.e. equal fundamental parts.
CycleKind cycle_case(Discriminant const & d1, Discriminant const & d2);

/// lcm(f1, f2)^2 d_K
Discriminant small_cycle_discriminant(Discriminant const & d1, Discriminant const & d2);

/// Throws DomainError when d1 d2 is a square. gcd(d1, d2) > 1 gives a
/// diagnostic cycle with the same multiset.
CMCycle big_cm_cycle(Discriminant const & d1, Discriminant const & d2);

/// Base points default to the principal classes.
CMCycle small_cm_cycle(Discriminant const & d1, Discriminant const & d2, std::optional<QuadForm> base1 = {},
                       std::optional<QuadForm> base2 = {});

/// Dispatches on cycle_case.
CMCycle build_cycle(Discriminant const & d1, Discriminant const & d2);

/// Raised when phi_m vanishes at a pair of the cycle.
class CycleSingularity : public SingularityError
{
public:
    CycleSingularity(CyclePair pair, std::int64_t m);
    CyclePair const & pair() const { return pair_; }

private:
    CyclePair pair_;
};

/// First pair (in cycle order) at which phi_m vanishes, decided exactly.
std::optional<CyclePair> find_singular_pair(CMCycle const & cycle, std::int64_t m);

struct LogNorm
{
    Real value;              // sum over pairs, with multiplicity, of log|phi_m|
    double error_bound = 0;  // absolute
    std::vector<double> pair_logs; // log|phi_m| per pair (without multiplicity)
    /// Largest loss of leading bits in a single factor j(z1) - j(gamma z2).
    double max_cancellation_bits = 0;
};

/// Evaluates the log-norm at `bits` of working precision.
LogNorm cycle_log_norm(CMCycle const & cycle, std::int64_t m, long bits, unsigned threads = 0);
LogNorm cycle_log_norm(CMCycle const & cycle, std::int64_t m, PrecisionContext const & ctx, unsigned threads = 0);

struct NormResult
{
    mpz_class value;
    double log_norm = 0.0;
    long bits = 0;          // precision of the successful attempt
    double residual = 0.0;  // distance to the nearest integer before rounding
    double log_error_bound = 0.0;
};

/// N = |Nm phi_m(j(z1), j(z2))| for exact cycles (the integer nearest
/// exp(cycle_log_norm)); the working precision is sized from a low precision
/// estimate of log N and doubled on failed recognition.
NormResult cycle_norm_integer(CMCycle const & cycle, std::int64_t m, PrecisionContext const & ctx,
                              unsigned threads = 0);

} // namespace singmod::cmcycles
