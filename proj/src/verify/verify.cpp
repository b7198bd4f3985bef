#include "verify/verify.hpp"

#include "numerics/legendre.hpp"
#include "numerics/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

namespace singmod::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Natural log of a positive integer of any size.
double log_of(mpz_class const & n)
{
    long e = 0;
    double mant = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(e) * std::log(2.0);
}

void require_m(std::int64_t m)
{
    if (m < 1)
        throw DomainError("m must be a positive integer");
}

struct ExactNorm
{
    cmcycles::CMCycle cycle;
    mpz_class N;
};

ExactNorm exact_norm(Discriminant const & d1, Discriminant const & d2, std::int64_t m,
                     PrecisionContext const & ctx)
{
    require_m(m);
    auto cycle = cmcycles::build_cycle(d1, d2);
    if (!cycle.exact())
        throw DomainError("the pair (" + std::to_string(d1.value) + ", " + std::to_string(d2.value)
                          + ") is not in exact mode (gcd > 1, different fields)");
    if (auto pair = cmcycles::find_singular_pair(cycle, m))
        throw cmcycles::CycleSingularity(*pair, m);
    auto norm = cmcycles::cycle_norm_integer(cycle, m, ctx);
    return {std::move(cycle), norm.value};
}

} // namespace

std::string to_string(NormStatus s)
{
    switch (s) {
    case NormStatus::integer: return "integer";
    case NormStatus::zero: return "zero";
    case NormStatus::diagnostic: return "diagnostic";
    case NormStatus::failed: return "failed";
    }
    return "failed";
}

bool VerificationReport::assertion_failed() const
{
    if (nonunit_asserted && !nonunit_pass)
        return true;
    for (auto const & [k, c] : chain)
        if (!c.pass)
            return true;
    for (auto const & e : epsilon_bounds)
        if (!e.pass)
            return true;
    return false;
}

EpsilonBound lower_bound_for(cmcycles::CMCycle const & cycle, std::int64_t m, mpz_class const & N, double epsilon)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw DomainError("epsilon must be a positive finite real");
    if (N < 1)
        throw DomainError("lower bound needs a nonzero norm");
    EpsilonBound b;
    b.epsilon = epsilon;
    b.count = greens::tm_count(cycle, m, epsilon).count;
    b.lhs = log_of(N);
    if (b.count > 0)
        b.rhs = 2.0 * static_cast<double>(b.count) * numerics::legendre_q(3.0, std::cosh(std::sqrt(2.0) * epsilon));
    b.pass = b.lhs >= b.rhs;
    return b;
}

std::map<int, ChainBound> chain_for(cmcycles::CMCycle const & cycle, std::int64_t m, mpz_class const & N,
                                    PrecisionContext const & ctx, greens::GreensOptions const & opts)
{
    if (N < 1)
        throw DomainError("chain bound needs a nonzero norm");
    std::map<int, ChainBound> out;
    double lhs = 2.0 * log_of(N);
    for (int k : {3, 5, 7}) {
        auto g = greens::greens_over_cycle(k, m, cycle, ctx, opts);
        ChainBound c;
        c.k = k;
        c.m_k = numerics::mk_constant(k);
        c.greens = g.value;
        c.error_bound = g.error_bound;
        c.rhs = c.m_k * -g.value;
        // the truncated sum omits negative terms, so -G_k is at most -value + bound
        c.rhs_upper = c.m_k * (-g.value + g.error_bound);
        c.lhs = lhs;
        c.pass = lhs >= c.rhs_upper;
        out[k] = c;
    }
    return out;
}

VerificationReport verify_nonunit(Discriminant const & d1, Discriminant const & d2, std::int64_t m,
                                  PrecisionContext const & ctx, VerifyOptions const & opts)
{
    require_m(m);
    ctx.validate();
    for (double e : opts.epsilons)
        if (!(e > 0.0) || !std::isfinite(e))
            throw DomainError("epsilon must be a positive finite real");

    auto t_start = Clock::now();
    VerificationReport r;
    r.d1 = d1;
    r.d2 = d2;
    r.m = m;
    auto cycle = cmcycles::build_cycle(d1, d2);
    r.cycle_kind = cycle.kind;
    r.group_order = cycle.group_order;
    r.distinct_pairs = cycle.pairs.size();

    try {
        auto t0 = Clock::now();
        if (auto pair = cmcycles::find_singular_pair(cycle, m)) {
            r.status = NormStatus::zero;
            r.singular_pair = *pair;
        } else if (!cycle.exact()) {
            auto ln = cmcycles::cycle_log_norm(cycle, m, ctx, opts.threads);
            r.status = NormStatus::diagnostic;
            r.log_norm = ln.value.to_double();
            r.bits = ctx.mantissa_bits;
        } else {
            auto n = cmcycles::cycle_norm_integer(cycle, m, ctx, opts.threads);
            r.status = NormStatus::integer;
            r.norm = n.value;
            r.log_norm = n.value > 0 ? log_of(n.value) : -INFINITY;
            r.bits = n.bits;
            r.residual = n.residual;
            r.nonunit_asserted = true;
            r.nonunit_pass = n.value >= 2;
        }
        r.timings.norm = seconds_since(t0);

        if (r.status == NormStatus::integer && r.norm >= 1) {
            if (opts.factor && r.norm >= 2) {
                t0 = Clock::now();
                FactorOptions fo = opts.factor_options;
                if (fo.trial_bound == 0)
                    fo.trial_bound = default_trial_bound(d1.value, d2.value, m);
                r.factorization = factor_norm(r.norm, fo);
                if (!r.factorization->factors.empty())
                    r.isogeny_witness = r.factorization->factors.front().prime;
                r.timings.factor = seconds_since(t0);
            }
            if (!opts.epsilons.empty()) {
                t0 = Clock::now();
                for (double e : opts.epsilons)
                    r.epsilon_bounds.push_back(lower_bound_for(cycle, m, r.norm, e));
                r.timings.epsilon = seconds_since(t0);
            }
            if (opts.chain) {
                t0 = Clock::now();
                greens::GreensOptions go = opts.greens_options;
                if (go.threads == 0)
                    go.threads = opts.threads;
                r.chain = chain_for(cycle, m, r.norm, ctx, go);
                r.timings.chain = seconds_since(t0);
            }
        }
    } catch (DomainError const &) {
        throw;
    } catch (std::exception const & e) {
        r.status = NormStatus::failed;
        r.failure = e.what();
        r.nonunit_asserted = false;
    }
    r.timings.total = seconds_since(t_start);
    return r;
}

EpsilonBound verify_lower_bound(Discriminant const & d1, Discriminant const & d2, std::int64_t m, double epsilon,
                                PrecisionContext const & ctx)
{
    auto e = exact_norm(d1, d2, m, ctx);
    return lower_bound_for(e.cycle, m, e.N, epsilon);
}

std::map<int, ChainBound> verify_chain(Discriminant const & d1, Discriminant const & d2, std::int64_t m,
                                       PrecisionContext const & ctx, greens::GreensOptions const & opts)
{
    auto e = exact_norm(d1, d2, m, ctx);
    return chain_for(e.cycle, m, e.N, ctx, opts);
}

std::optional<mpz_class> isogeny_witness(Discriminant const & d1, Discriminant const & d2, std::int64_t m,
                                         PrecisionContext const & ctx, FactorOptions const & opts)
{
    ExactNorm e;
    try {
        e = exact_norm(d1, d2, m, ctx);
    } catch (cmcycles::CycleSingularity const &) {
        return std::nullopt;
    }
    if (e.N < 2)
        return std::nullopt;
    FactorOptions fo = opts;
    if (fo.trial_bound == 0)
        fo.trial_bound = default_trial_bound(d1.value, d2.value, m);
    auto f = factor_norm(e.N, fo);
    if (f.factors.empty())
        return std::nullopt;
    return f.factors.front().prime;
}

std::vector<Discriminant> discriminants_in(std::int64_t dmin, std::int64_t dmax, bool fundamental_only)
{
    std::vector<Discriminant> out;
    for (std::int64_t a = std::max<std::int64_t>(dmin, 3); a <= dmax; ++a) {
        if (!Discriminant::is_valid(-a))
            continue;
        if (fundamental_only && !Discriminant::is_fundamental(-a))
            continue;
        out.push_back(Discriminant::make(-a));
    }
    return out;
}

std::vector<VerificationReport> sweep(std::vector<Discriminant> const & d1s, std::vector<Discriminant> const & d2s,
                                      std::vector<std::int64_t> const & ms, SweepPolicy const & policy,
                                      PrecisionContext const & ctx)
{
    ctx.validate();
    for (auto m : ms)
        require_m(m);

    // unordered pairs, smaller |d| first
    std::set<std::pair<std::int64_t, std::int64_t>> pairs;
    for (auto const & a : d1s)
        for (auto const & b : d2s) {
            auto lo = std::min(-a.value, -b.value), hi = std::max(-a.value, -b.value);
            bool fundamental = a.fundamental_p() && b.fundamental_p();
            bool coprime = std::gcd(lo, hi) == 1;
            bool same_field = a.fundamental == b.fundamental;
            if (policy.coprime_fundamental && !(fundamental && coprime))
                continue;
            if (!coprime && !same_field && !policy.include_diagnostics)
                continue;
            pairs.emplace(lo, hi);
        }

    struct Job
    {
        std::int64_t a, b, m;
    };
    std::vector<Job> jobs;
    for (auto [a, b] : pairs)
        for (auto m : ms)
            jobs.push_back({a, b, m});
    std::sort(jobs.begin(), jobs.end(),
              [](Job const & x, Job const & y) { return std::tie(x.a, x.b, x.m) < std::tie(y.a, y.b, y.m); });

    std::vector<VerificationReport> reports(jobs.size());
    VerifyOptions vo = policy.verify;
    vo.threads = 1; // parallelism is across instances
    vo.greens_options.threads = 1;
    parallel_for(jobs.size(), policy.threads, [&](std::size_t i) {
        auto const & j = jobs[i];
        auto d1 = Discriminant::make(-j.a), d2 = Discriminant::make(-j.b);
        try {
            reports[i] = verify_nonunit(d1, d2, j.m, ctx, vo);
        } catch (std::exception const & e) {
            VerificationReport r;
            r.d1 = d1;
            r.d2 = d2;
            r.m = j.m;
            r.status = NormStatus::failed;
            r.failure = e.what();
            reports[i] = std::move(r);
        }
    });
    return reports;
}

SweepSummary summarize(std::vector<VerificationReport> const & reports)
{
    SweepSummary s;
    for (auto const & r : reports) {
        ++s.total;
        if (r.computational_failure())
            ++s.computational_failures;
        else if (r.assertion_failed())
            ++s.assertion_failures;
        else if (r.status == NormStatus::zero)
            ++s.zero;
        else if (r.status == NormStatus::diagnostic)
            ++s.diagnostic;
        else
            ++s.pass;
    }
    return s;
}

} // namespace singmod::verify
