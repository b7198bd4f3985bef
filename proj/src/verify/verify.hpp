#pragma once

// End-to-end certification on CM cycles: the exact norm N, N >= 2, the
// proximity lower bound log N >= 2 |Z(W) n T_{m,eps}| Q_2(cosh(sqrt 2 eps)),
// the Green's function chain 2 log N >= m_k (-G_k^m(Z(W))), factorization
// of N and the smallest prime witness.

#include "cmcycles/cmcycles.hpp"
#include "greens/greens.hpp"
#include "numerics/precision.hpp"
#include "verify/factor.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace singmod::verify {

using cmcycles::CycleKind;
using quadforms::Discriminant;

enum class NormStatus
{
    integer,    // exact N computed
    zero,       // phi_m vanishes at a pair of the cycle
    diagnostic, // non-coprime big case: log-norm only, nothing asserted
    failed      // computational failure (precision, timeout)
};

std::string to_string(NormStatus s);

struct ChainBound
{
    int k = 3;
    double m_k = 0.0;
    double greens = 0.0;      // G_k^m summed over the cycle (truncated)
    double error_bound = 0.0; // truncation bound for `greens`
    /// m_k (-greens); the certified upper value adds error_bound.
    double rhs = 0.0;
    double rhs_upper = 0.0;
    double lhs = 0.0; // 2 log N
    bool pass = false;
};

struct EpsilonBound
{
    double epsilon = 0.0;
    std::int64_t count = 0; // |Z(W) n T_{m,eps}| with multiplicity
    double lhs = 0.0;       // log N
    double rhs = 0.0;       // 2 count Q_2(cosh(sqrt 2 eps))
    bool pass = false;
};

struct Timings
{
    double norm = 0.0;
    double factor = 0.0;
    double chain = 0.0;
    double epsilon = 0.0;
    double total = 0.0;
};

struct VerificationReport
{
    Discriminant d1, d2;
    std::int64_t m = 1;
    CycleKind cycle_kind = CycleKind::big;
    std::int64_t group_order = 0;
    std::size_t distinct_pairs = 0;

    NormStatus status = NormStatus::failed;
    mpz_class norm = 0;      // meaningful when status == integer
    double log_norm = 0.0;   // natural log; also filled in diagnostic mode
    long bits = 0;           // working precision of the norm
    double residual = 0.0;   // rounding distance before recognition
    std::optional<cmcycles::CyclePair> singular_pair;
    std::string failure;     // reason for a computational failure

    /// Asserted only for exact cycles with an integer norm.
    bool nonunit_asserted = false;
    bool nonunit_pass = false;

    std::optional<Factorization> factorization;
    std::optional<mpz_class> isogeny_witness;
    std::map<int, ChainBound> chain;
    std::vector<EpsilonBound> epsilon_bounds;
    Timings timings;

    /// Some asserted inequality or the non-unit claim was violated.
    bool assertion_failed() const;
    bool computational_failure() const { return status == NormStatus::failed; }
};

struct VerifyOptions
{
    bool chain = false;
    std::vector<double> epsilons;
    bool factor = false;
    FactorOptions factor_options;
    greens::GreensOptions greens_options;
    unsigned threads = 0;
};

/// Builds the cycle, computes N and runs whichever extra checks `opts`
/// requests. Computational errors are recorded in the report, not thrown;
/// invalid arguments throw DomainError.
VerificationReport verify_nonunit(Discriminant const & d1, Discriminant const & d2, std::int64_t m,
                                  PrecisionContext const & ctx, VerifyOptions const & opts = {});

/// Throws DomainError outside exact mode and SingularityError when the norm
/// vanishes.
EpsilonBound verify_lower_bound(Discriminant const & d1, Discriminant const & d2, std::int64_t m, double epsilon,
                                PrecisionContext const & ctx);
std::map<int, ChainBound> verify_chain(Discriminant const & d1, Discriminant const & d2, std::int64_t m,
                                       PrecisionContext const & ctx, greens::GreensOptions const & opts = {});

/// Smallest prime factor of N; nothing if the norm vanishes.
std::optional<mpz_class> isogeny_witness(Discriminant const & d1, Discriminant const & d2, std::int64_t m,
                                         PrecisionContext const & ctx, FactorOptions const & opts = {});

/// The pieces above on an already computed cycle and norm.
EpsilonBound lower_bound_for(cmcycles::CMCycle const & cycle, std::int64_t m, mpz_class const & N, double epsilon);
std::map<int, ChainBound> chain_for(cmcycles::CMCycle const & cycle, std::int64_t m, mpz_class const & N,
                                    PrecisionContext const & ctx, greens::GreensOptions const & opts);

struct SweepPolicy
{
    /// Only fundamental discriminants, only coprime pairs.
    bool coprime_fundamental = true;
    /// Also run non-coprime big pairs in diagnostic mode.
    bool include_diagnostics = false;
    VerifyOptions verify;
    unsigned threads = 0; // instances in flight
};

/// Negative discriminants d with dmin <= |d| <= dmax, ascending in |d|.
std::vector<Discriminant> discriminants_in(std::int64_t dmin, std::int64_t dmax, bool fundamental_only);

/// Every unordered pair {d1, d2} from the two lists (d1 taken with |d1| <=
/// |d2| when both lists contain both) and every m, filtered by the policy.
/// Reports come back sorted by (|d1|, |d2|, m).
std::vector<VerificationReport> sweep(std::vector<Discriminant> const & d1s, std::vector<Discriminant> const & d2s,
                                      std::vector<std::int64_t> const & ms, SweepPolicy const & policy,
                                      PrecisionContext const & ctx);

struct SweepSummary
{
    std::size_t total = 0;
    std::size_t pass = 0;
    std::size_t zero = 0;
    std::size_t diagnostic = 0;
    std::size_t assertion_failures = 0;
    std::size_t computational_failures = 0;
};

SweepSummary summarize(std::vector<VerificationReport> const & reports);

} // namespace singmod::verify
