#include "cmcycles/cmcycles.hpp"

#include "modular/jfunction.hpp"
#include "modular/modpoly.hpp"
#include "numerics/integer_recognize.hpp"
#include "numerics/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace singmod::cmcycles {

namespace {

void normalize(CMCycle & c)
{
    std::sort(c.pairs.begin(), c.pairs.end(), [](CyclePair const & x, CyclePair const & y) {
        return std::tie(x.z1, x.z2) < std::tie(y.z1, y.z2);
    });
    std::vector<CyclePair> merged;
    for (CyclePair const & p : c.pairs) {
        if (!merged.empty() && merged.back().z1 == p.z1 && merged.back().z2 == p.z2)
            merged.back().multiplicity += p.multiplicity;
        else
            merged.push_back(p);
    }
    c.pairs = std::move(merged);
    c.group_order = 0;
    for (CyclePair const & p : c.pairs)
        c.group_order += p.multiplicity;
}

std::string pair_string(CyclePair const & p)
{
    return "(" + quadforms::to_string(p.z1) + ", " + quadforms::to_string(p.z2) + ")";
}

} // namespace

std::string to_string(CycleKind k)
{
    switch (k) {
    case CycleKind::big: return "big";
    case CycleKind::small: return "small";
    case CycleKind::diagnostic: return "diagnostic";
    }
    return "?";
}

CycleKind cycle_case(Discriminant const & d1, Discriminant const & d2)
{
    return d1.fundamental == d2.fundamental ? CycleKind::small : CycleKind::big;
}

Discriminant small_cycle_discriminant(Discriminant const & d1, Discriminant const & d2)
{
    if (d1.fundamental != d2.fundamental)
        throw DomainError("small cycle needs d1 d2 to be a perfect square");
    std::int64_t f = std::lcm(d1.conductor, d2.conductor);
    return Discriminant::make(f * f * d1.fundamental);
}

CMCycle big_cm_cycle(Discriminant const & d1, Discriminant const & d2)
{
    if (cycle_case(d1, d2) != CycleKind::big)
        throw DomainError("big CM cycle needs d1 d2 to be a non-square (got " + std::to_string(d1.value) + ", "
                          + std::to_string(d2.value) + ")");
    CMCycle c;
    c.kind = std::gcd(d1.value, d2.value) == 1 ? CycleKind::big : CycleKind::diagnostic;
    c.d1 = d1;
    c.d2 = d2;
    auto G1 = quadforms::enumerate_reduced(d1);
    auto G2 = quadforms::enumerate_reduced(d2);
    for (auto const & a : G1.forms)
        for (auto const & b : G2.forms)
            c.pairs.push_back({a, b, 4});
    normalize(c);
    return c;
}

CMCycle small_cm_cycle(Discriminant const & d1, Discriminant const & d2, std::optional<QuadForm> base1,
                       std::optional<QuadForm> base2)
{
    Discriminant dp = small_cycle_discriminant(d1, d2);
    QuadForm c1 = base1 ? quadforms::reduce(*base1) : quadforms::principal_form(d1);
    QuadForm c2 = base2 ? quadforms::reduce(*base2) : quadforms::principal_form(d2);
    if (c1.discriminant() != d1.value || c2.discriminant() != d2.value)
        throw DomainError("small_cm_cycle: base forms do not match the discriminants");
    CMCycle c;
    c.kind = CycleKind::small;
    c.d1 = d1;
    c.d2 = d2;
    c.d_prime = dp;
    QuadForm c1_bar = quadforms::inverse(c1), c2_bar = quadforms::inverse(c2);
    for (auto const & s : quadforms::enumerate_reduced(dp).forms) {
        QuadForm p1 = quadforms::project_class(s, dp, d1);
        QuadForm p2 = quadforms::project_class(s, dp, d2);
        c.pairs.push_back({quadforms::compose(c1, p1), quadforms::compose(c2, p2), 1});
        c.pairs.push_back({quadforms::compose(c1_bar, p1), quadforms::compose(c2_bar, p2), 1});
    }
    normalize(c);
    return c;
}

CMCycle build_cycle(Discriminant const & d1, Discriminant const & d2)
{
    return cycle_case(d1, d2) == CycleKind::small ? small_cm_cycle(d1, d2) : big_cm_cycle(d1, d2);
}

CycleSingularity::CycleSingularity(CyclePair pair, std::int64_t m)
    : SingularityError("cycle meets singularity: phi_" + std::to_string(m) + " vanishes at the pair "
                       + pair_string(pair)),
      pair_(pair)
{
}

std::optional<CyclePair> find_singular_pair(CMCycle const & cycle, std::int64_t m)
{
    for (CyclePair const & p : cycle.pairs)
        if (modular::modpoly_vanishes_cm(m, p.z1, p.z2))
            return p;
    return std::nullopt;
}

LogNorm cycle_log_norm(CMCycle const & cycle, std::int64_t m, long bits, unsigned threads)
{
    if (auto bad = find_singular_pair(cycle, m))
        throw CycleSingularity(*bad, m);
    modular::JCache cache(bits);
    std::size_t n = cycle.pairs.size();
    std::vector<Real> logs(n, Real(static_cast<Precision>(bits)));
    std::vector<double> errs(n, 0.0), cancel(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        CyclePair const & p = cycle.pairs[i];
        auto factors = modular::modpoly_factors_cm(m, p.z1, p.z2, cache);
        Complex j1 = cache.get(p.z1);
        double j1_err = modular::j_abs_error(j1, bits);
        double j1_log2 = std::log2(std::max(1.0, std::abs(j1.to_std())));
        Real sum(static_cast<Precision>(j1.prec()));
        for (auto const & f : factors) {
            Complex jw = cache.get(f.image);
            Real nrm = f.value.norm();
            sum += log(nrm) / 2L;
            double mag = f.value.abs().to_double();
            double log2_mag;
            if (mag > 0.0 && std::isfinite(mag)) {
                log2_mag = std::log2(mag);
            } else {
                long e = 0;
                double mant = mpfr_get_d_2exp(&e, nrm.raw(), MPFR_RNDN);
                log2_mag = (std::log2(mant) + static_cast<double>(e)) / 2.0;
            }
            double jw_log2 = std::log2(std::max(1.0, std::abs(jw.to_std())));
            double err = j1_err + modular::j_abs_error(jw, bits);
            // relative error of the factor, in log2
            errs[i] += std::exp2(std::log2(err) - log2_mag);
            cancel[i] = std::max(cancel[i], std::max(j1_log2, jw_log2) - log2_mag);
        }
        logs[i] = std::move(sum);
    });
    LogNorm out;
    out.value = Real(static_cast<Precision>(bits + 32));
    for (std::size_t i = 0; i < n; ++i) {
        long mult = cycle.pairs[i].multiplicity;
        out.value += logs[i] * mult;
        out.error_bound += errs[i] * static_cast<double>(mult);
        out.pair_logs.push_back(logs[i].to_double());
        out.max_cancellation_bits = std::max(out.max_cancellation_bits, cancel[i]);
    }
    return out;
}

LogNorm cycle_log_norm(CMCycle const & cycle, std::int64_t m, PrecisionContext const & ctx, unsigned threads)
{
    ctx.validate();
    return cycle_log_norm(cycle, m, ctx.mantissa_bits, threads);
}

NormResult cycle_norm_integer(CMCycle const & cycle, std::int64_t m, PrecisionContext const & ctx, unsigned threads)
{
    ctx.validate();
    if (auto bad = find_singular_pair(cycle, m))
        throw CycleSingularity(*bad, m);

    // Low precision pass to size the working precision.
    long est_bits = 128;
    LogNorm est = cycle_log_norm(cycle, m, est_bits, threads);
    while (!(est.error_bound < 1e-3) && est_bits < (1L << 20)) {
        est_bits *= 4;
        est = cycle_log_norm(cycle, m, est_bits, threads);
    }
    double log2_n = std::max(0.0, est.value.to_double() / std::log(2.0));
    double terms = std::log2(static_cast<double>(std::max<std::int64_t>(cycle.group_order, 1)) * 8.0);
    long needed = static_cast<long>(std::ceil(log2_n + est.max_cancellation_bits + terms)) + 96;
    PrecisionContext start = ctx.with_bits(std::max(ctx.mantissa_bits, needed));

    return with_precision_retry(start, [&](PrecisionContext const & c) {
        LogNorm ln = cycle_log_norm(cycle, m, c.mantissa_bits, threads);
        Real x = exp(ln.value);
        numerics::Recognition r = numerics::integer_recognize(x, c);
        double residual = r.residual.to_double();
        if (!r.ok || !(residual < 0.25))
            throw InsufficientPrecision("cycle norm is not within tolerance of an integer (residual "
                                                + r.residual.to_string(6) + ")",
                                        residual);
        NormResult out;
        out.value = r.value;
        out.log_norm = ln.value.to_double();
        out.bits = c.mantissa_bits;
        out.residual = residual;
        out.log_error_bound = ln.error_bound;
        return out;
    });
}

} // namespace singmod::cmcycles
