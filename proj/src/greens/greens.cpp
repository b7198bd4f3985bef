#include "greens/greens.hpp"

#include "modular/geometry.hpp"
#include "modular/hecke.hpp"
#include "modular/jfunction.hpp"
#include "numerics/legendre.hpp"
#include "numerics/parallel.hpp"
#include "quadforms/cm_point.hpp"

#include <cmath>
#include <mutex>
#include <string>

namespace singmod::greens {

namespace {

constexpr double coincidence = 1e-14;

void check_s(double s)
{
    if (!(s > 1.0))
        throw DomainError("G_s needs s > 1 (the sum diverges at s = 1; use G_1)");
}

void check_k(int k)
{
    if (k != 1 && k != 3 && k != 5 && k != 7)
        throw DomainError("k must be odd in {1, 3, 5, 7}, got " + std::to_string(k));
}

double tail_bound(numerics::LegendreQ const & Q, double T, std::size_t terms)
{
    double s = Q.s();
    double n = static_cast<double>(terms);
    double A = std::max(orbit_count_slope, 2.0 * n / T);
    double qT = Q(T);
    return 2.0 * (A * qT * T / (s - 1.0) + std::max(0.0, A * T + orbit_count_offset - n) * qT);
}

double predicted_tail(numerics::LegendreQ const & Q, double T)
{
    return tail_bound(Q, T, 0);
}

} // namespace

double cosh_dist(cd z1, cd z2)
{
    return modular::cosh_dist(z1, z2);
}

double g_s(double s, cd z1, cd z2)
{
    double t = cosh_dist(z1, z2);
    if (!(t - 1.0 > coincidence))
        throw SingularityError("g_s: coincident points");
    return -2.0 * numerics::legendre_q(s, t);
}

LatticeSum G_s_sum_at(double s, cd z1, cd z2, double cutoff)
{
    check_s(s);
    numerics::LegendreQ Q(s);
    cd a = modular::fd_reduce(z1).z;
    cd b = modular::fd_reduce(z2).z;
    LatticeSum out;
    out.cutoff = cutoff;
    double sum = 0.0, comp = 0.0; // Kahan summation
    modular::for_each_orbit_point(a, b, cutoff, [&](modular::Matrix2 const &, cd, double t) {
        if (!(t - 1.0 > coincidence))
            throw SingularityError("G_s: z1 is equivalent to z2");
        double y = Q(t) - comp;
        double next = sum + y;
        comp = (next - sum) - y;
        sum = next;
        ++out.terms;
    });
    out.value = -2.0 * sum;
    out.tail_bound = tail_bound(Q, cutoff, out.terms);
    return out;
}

LatticeSum G_s_sum(double s, cd z1, cd z2, GreensOptions const & opts)
{
    check_s(s);
    numerics::LegendreQ Q(s);
    double T = 4.0;
    while (predicted_tail(Q, T) > opts.tail_budget) {
        T *= 1.5;
        if (T > opts.max_cutoff)
            throw Error("G_s: tail budget " + std::to_string(opts.tail_budget) + " unreachable below cutoff "
                        + std::to_string(opts.max_cutoff) + " for s = " + std::to_string(s));
    }
    for (;;) {
        LatticeSum r = G_s_sum_at(s, z1, z2, T);
        if (r.tail_bound <= opts.tail_budget)
            return r;
        T *= 2.0;
        if (T > opts.max_cutoff)
            throw Error("G_s: tail budget unreachable (orbit count too large near the cusp)");
    }
}

std::vector<modular::Matrix2> orbit_terms(cd z1, cd z2, double cutoff)
{
    std::vector<modular::Matrix2> out;
    modular::for_each_orbit_point(z1, z2, cutoff,
                                  [&](modular::Matrix2 const & g, cd, double) { out.push_back(g); });
    return out;
}

double G_s_over(double s, cd z1, cd z2, std::vector<modular::Matrix2> const & terms)
{
    numerics::LegendreQ Q(s);
    double sum = 0.0;
    for (auto const & g : terms)
        sum += Q(cosh_dist(z1, g.apply(z2)));
    return -2.0 * sum;
}

double G_1(Complex const & z1, Complex const & z2, PrecisionContext const & ctx)
{
    Complex j1 = modular::j_eval(z1, ctx);
    Complex j2 = modular::j_eval(z2, ctx);
    Complex diff = j1 - j2;
    double err = modular::j_abs_error(j1, ctx.mantissa_bits) + modular::j_abs_error(j2, ctx.mantissa_bits);
    if (!(diff.abs().to_double() > err))
        throw SingularityError("G_1: j(z1) = j(z2)");
    return (log(diff.norm())).to_double();
}

HeckeGreens G_k_m(int k, std::int64_t m, Complex const & z1, Complex const & z2, PrecisionContext const & ctx,
                  GreensOptions const & opts)
{
    check_k(k);
    ctx.validate();
    auto cosets = modular::hecke_cosets(m);
    HeckeGreens out;
    out.parts.assign(cosets.size(), 0.0);
    std::vector<double> errs(cosets.size(), 0.0);
    if (k == 1) {
        Complex j1 = modular::j_eval(z1, ctx);
        double e1 = modular::j_abs_error(j1, ctx.mantissa_bits);
        Precision wp = std::max(z2.prec(), static_cast<Precision>(ctx.mantissa_bits + 48));
        for (std::size_t i = 0; i < cosets.size(); ++i) {
            Complex w = cosets[i].apply(Complex(z2, wp));
            Complex jw = modular::j_eval(w, ctx);
            Complex f = j1 - jw;
            double err = e1 + modular::j_abs_error(jw, ctx.mantissa_bits);
            double mag = f.abs().to_double();
            if (!(mag > err))
                throw SingularityError("G_1^m: pair lies on the Hecke correspondence (coset "
                                       + std::to_string(cosets[i].a) + "," + std::to_string(cosets[i].b) + ","
                                       + std::to_string(cosets[i].d) + ")");
            out.parts[i] = log(f.norm()).to_double();
            errs[i] = 2.0 * err / mag;
        }
    } else {
        cd a = z1.to_std();
        parallel_for(cosets.size(), opts.threads, [&](std::size_t i) {
            cd w = cosets[i].apply(z2).to_std();
            LatticeSum r;
            try {
                r = G_s_sum(static_cast<double>(k), a, w, opts);
            } catch (SingularityError const &) {
                throw SingularityError("G_k^m: pair lies on the Hecke correspondence (coset "
                                       + std::to_string(cosets[i].a) + "," + std::to_string(cosets[i].b) + ","
                                       + std::to_string(cosets[i].d) + ")");
            }
            out.parts[i] = r.value;
            errs[i] = r.tail_bound + 1e-13 * std::abs(r.value);
        });
    }
    for (std::size_t i = 0; i < cosets.size(); ++i) {
        out.value += out.parts[i];
        out.error_bound += errs[i];
    }
    return out;
}

void PrincipalPart::validate() const
{
    check_k(k);
    for (auto const & [m, c] : coeffs)
        if (m < 1)
            throw DomainError("principal part index m must be >= 1");
}

HeckeGreens G_f(PrincipalPart const & f, Complex const & z1, Complex const & z2, PrecisionContext const & ctx,
                GreensOptions const & opts)
{
    f.validate();
    HeckeGreens out;
    for (auto const & [m, c] : f.coeffs) {
        if (c == 0.0)
            continue;
        double w = c * std::pow(static_cast<double>(m), f.k - 1);
        HeckeGreens g = G_k_m(f.k, m, z1, z2, ctx, opts);
        out.value += w * g.value;
        out.error_bound += std::abs(w) * g.error_bound;
        for (double v : g.parts)
            out.parts.push_back(w * v);
    }
    return out;
}

double graph_distance(std::int64_t m, cd z1, cd z2)
{
    double best = INFINITY;
    for (auto const & g : modular::hecke_cosets(m))
        best = std::min(best, modular::y1_distance(z1, g.apply(z2)));
    return best / std::sqrt(2.0);
}

GraphProximity tm_count(cmcycles::CMCycle const & cycle, std::int64_t m, double epsilon)
{
    if (!(epsilon > 0.0))
        throw DomainError("tm_count: epsilon must be positive");
    GraphProximity out;
    out.m = m;
    out.epsilon = epsilon;
    for (auto const & p : cycle.pairs) {
        double d = graph_distance(m, quadforms::cm_point(p.z1).value(), quadforms::cm_point(p.z2).value());
        out.distances.push_back(d);
        if (d < epsilon)
            out.count += p.multiplicity;
    }
    return out;
}

HeckeGreens greens_over_cycle(int k, std::int64_t m, cmcycles::CMCycle const & cycle, PrecisionContext const & ctx,
                              GreensOptions const & opts)
{
    check_k(k);
    HeckeGreens out;
    std::size_t n = cycle.pairs.size();
    std::vector<double> vals(n, 0.0), errs(n, 0.0);
    if (k == 1) {
        Precision p = ctx.mantissa_bits + 64;
        parallel_for(n, opts.threads, [&](std::size_t i) {
            auto const & pr = cycle.pairs[i];
            HeckeGreens g = G_k_m(1, m, quadforms::cm_point(pr.z1).value(p), quadforms::cm_point(pr.z2).value(p),
                                  ctx, opts);
            vals[i] = g.value;
            errs[i] = g.error_bound;
        });
    } else {
        // Each term depends only on (z1, coset image of z2) as exact forms.
        using Key = std::pair<quadforms::QuadForm, quadforms::QuadForm>;
        std::map<Key, LatticeSum> cache;
        auto cosets = modular::hecke_cosets(m);
        for (auto const & pr : cycle.pairs)
            for (auto const & g : cosets) {
                quadforms::QuadForm img = quadforms::reduce(modular::coset_image(g, pr.z2));
                if (img == pr.z1)
                    throw SingularityError("G_k^m: cycle pair " + quadforms::to_string(pr.z1) + ", "
                                           + quadforms::to_string(pr.z2) + " lies on the Hecke correspondence");
                cache.emplace(Key{pr.z1, img}, LatticeSum{});
            }
        std::vector<Key> keys;
        for (auto const & kv : cache)
            keys.push_back(kv.first);
        std::vector<LatticeSum> sums(keys.size());
        GreensOptions inner = opts;
        inner.threads = 1;
        parallel_for(keys.size(), opts.threads, [&](std::size_t i) {
            sums[i] = G_s_sum(static_cast<double>(k), quadforms::cm_point(keys[i].first).value(),
                              quadforms::cm_point(keys[i].second).value(), inner);
        });
        for (std::size_t i = 0; i < keys.size(); ++i)
            cache[keys[i]] = sums[i];
        for (std::size_t i = 0; i < n; ++i) {
            auto const & pr = cycle.pairs[i];
            for (auto const & g : cosets) {
                quadforms::QuadForm img = quadforms::reduce(modular::coset_image(g, pr.z2));
                LatticeSum const & s = cache.at(Key{pr.z1, img});
                vals[i] += s.value;
                errs[i] += s.tail_bound + 1e-13 * std::abs(s.value);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double mult = cycle.pairs[i].multiplicity;
        out.parts.push_back(vals[i]);
        out.value += mult * vals[i];
        out.error_bound += mult * errs[i];
    }
    return out;
}

} // namespace singmod::greens
