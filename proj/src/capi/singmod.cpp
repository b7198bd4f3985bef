#include "singmod/singmod.h"

#include "cmcycles/cmcycles.hpp"
#include "greens/greens.hpp"
#include "io/cache.hpp"
#include "io/points.hpp"
#include "io/report_json.hpp"
#include "modular/hecke.hpp"
#include "modular/jfunction.hpp"
#include "modular/modpoly.hpp"
#include "quadforms/cm_point.hpp"
#include "verify/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

using namespace singmod;
using io::json;

struct sm_context
{
    PrecisionContext precision;
    greens::GreensOptions greens;
    unsigned threads = 0;
    std::optional<io::Cache> cache;
    std::string last_error;
};

struct sm_report
{
    bool is_sweep = false;
    std::vector<verify::VerificationReport> reports;
};

namespace {

char * dup_string(std::string const & s)
{
    char * out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

/// Runs fn, translating exceptions into status codes and the context's error text.
template <class Fn>
sm_status guarded(sm_context * ctx, Fn && fn)
{
    if (!ctx)
        return SM_E_ARGUMENT;
    ctx->last_error.clear();
    auto fail = [&](sm_status st, char const * what) {
        ctx->last_error = what;
        return st;
    };
    try {
        fn();
        return SM_OK;
    } catch (SingularityError const & e) {
        return fail(SM_E_SINGULAR, e.what());
    } catch (DomainError const & e) {
        return fail(SM_E_DOMAIN, e.what());
    } catch (PrecisionError const & e) {
        return fail(SM_E_PRECISION, e.what());
    } catch (InsufficientPrecision const & e) {
        return fail(SM_E_PRECISION, e.what());
    } catch (io::IOError const & e) {
        return fail(SM_E_IO, e.what());
    } catch (Error const & e) {
        // truncation budgets and other computational limits
        return fail(SM_E_PRECISION, e.what());
    } catch (std::invalid_argument const & e) {
        return fail(SM_E_DOMAIN, e.what());
    } catch (std::exception const & e) {
        return fail(SM_E_INTERNAL, e.what());
    } catch (...) {
        return fail(SM_E_INTERNAL, "unknown error");
    }
}

sm_status emit(json const & j, char ** out)
{
    *out = dup_string(j.dump(2));
    return *out ? SM_OK : SM_E_INTERNAL;
}

io::Cache const * cache_of(sm_context const * ctx)
{
    return ctx->cache ? &*ctx->cache : nullptr;
}

json complex_json(Complex const & z, int digits)
{
    return {{"re", z.re().to_string(digits)}, {"im", z.im().to_string(digits)}};
}

int digits_for(PrecisionContext const & p)
{
    return static_cast<int>(std::min<long>(60, p.mantissa_bits * 3 / 10));
}

verify::VerifyOptions verify_options(sm_context const * ctx, sm_norm_options const * o)
{
    verify::VerifyOptions vo;
    vo.threads = ctx->threads;
    vo.greens_options = ctx->greens;
    vo.greens_options.threads = ctx->threads;
    if (!o)
        return vo;
    vo.chain = o->chain != 0;
    vo.factor = o->factor != 0;
    if (o->epsilon_count && !o->epsilons)
        throw DomainError("epsilons is NULL but epsilon_count is nonzero");
    vo.epsilons.assign(o->epsilons, o->epsilons + o->epsilon_count);
    if (!(o->rho_seconds > 0.0))
        throw DomainError("rho_seconds must be positive");
    vo.factor_options.rho_seconds = o->rho_seconds;
    return vo;
}

json coset_json(modular::HeckeCoset const & c)
{
    return json::array({c.a, c.b, c.d});
}

} // namespace

extern "C" {

const char * sm_status_string(sm_status status)
{
    switch (status) {
    case SM_OK: return "ok";
    case SM_E_ARGUMENT: return "invalid argument";
    case SM_E_DOMAIN: return "domain error";
    case SM_E_SINGULAR: return "singularity";
    case SM_E_PRECISION: return "precision exhausted";
    case SM_E_IO: return "i/o error";
    case SM_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char * sm_version(void)
{
    return "0.1.0";
}

sm_status sm_context_create(sm_context ** out)
{
    if (!out)
        return SM_E_ARGUMENT;
    try {
        *out = new sm_context();
        return SM_OK;
    } catch (...) {
        *out = nullptr;
        return SM_E_INTERNAL;
    }
}

void sm_context_destroy(sm_context * ctx)
{
    delete ctx;
}

const char * sm_context_last_error(const sm_context * ctx)
{
    return ctx ? ctx->last_error.c_str() : "null context";
}

sm_status sm_context_set_precision_bits(sm_context * ctx, long bits)
{
    return guarded(ctx, [&] {
        auto p = ctx->precision.with_bits(bits);
        p.validate();
        ctx->precision = p;
    });
}

sm_status sm_context_set_tolerance(sm_context * ctx, double tolerance)
{
    return guarded(ctx, [&] {
        auto p = ctx->precision;
        p.integer_tolerance = tolerance;
        p.validate();
        ctx->precision = p;
    });
}

sm_status sm_context_set_threads(sm_context * ctx, unsigned threads)
{
    return guarded(ctx, [&] {
        ctx->threads = threads;
        ctx->greens.threads = threads;
    });
}

sm_status sm_context_set_tail_budget(sm_context * ctx, double budget)
{
    return guarded(ctx, [&] {
        if (!(budget > 0.0))
            throw DomainError("tail budget must be positive");
        ctx->greens.tail_budget = budget;
    });
}

sm_status sm_context_set_cache_dir(sm_context * ctx, const char * dir)
{
    return guarded(ctx, [&] {
        if (!dir || !*dir)
            ctx->cache.reset();
        else
            ctx->cache.emplace(dir);
    });
}

void sm_string_free(char * s)
{
    std::free(s);
}

sm_status sm_classpoly_json(sm_context * ctx, int64_t d, char ** json_out)
{
    if (!json_out)
        return SM_E_ARGUMENT;
    return guarded(ctx, [&] {
        auto disc = quadforms::Discriminant::make(d);
        auto c = io::classpoly_cached(disc, ctx->precision, cache_of(ctx));
        emit(io::to_json(c), json_out);
    });
}

sm_status sm_cm_points_json(sm_context * ctx, int64_t d, char ** json_out)
{
    if (!json_out)
        return SM_E_ARGUMENT;
    return guarded(ctx, [&] {
        auto disc = quadforms::Discriminant::make(d);
        auto group = quadforms::enumerate_reduced(disc);
        Precision prec = ctx->precision.mantissa_bits;
        int digits = digits_for(ctx->precision);
        // independent check of each j-value against the exact q-expansion
        auto coeffs = io::j_coefficients_cached(120, cache_of(ctx));
        json points = json::array();
        for (auto const & f : group.forms) {
            auto pt = quadforms::cm_point(f);
            Complex tau = pt.value(prec + 32);
            Complex j = modular::j_eval(pt, prec);
            Complex jq = modular::j_qseries(tau, coeffs);
            double scale = std::max(1.0, j.abs().to_double());
            points.push_back({{"form", io::form_json(f)},
                              {"tau", complex_json(tau, digits)},
                              {"j", complex_json(j, digits)},
                              {"j_qseries_relative_difference", (j - jq).abs().to_double() / scale}});
        }
        emit({{"d", disc.value},
              {"fundamental", disc.fundamental},
              {"conductor", disc.conductor},
              {"class_number", group.order()},
              {"points", points}},
             json_out);
    });
}

sm_status sm_modpoly_eval_json(sm_context * ctx, int64_t m, const char * z1, const char * z2, char ** json_out)
{
    if (!json_out || !z1 || !z2)
        return SM_E_ARGUMENT;
    return guarded(ctx, [&] {
        if (m < 1)
            throw DomainError("m must be a positive integer");
        auto p1 = io::parse_point(z1), p2 = io::parse_point(z2);
        Precision prec = ctx->precision.mantissa_bits + 64;
        auto v = modular::modpoly_eval(m, p1.value(prec), p2.value(prec), ctx->precision);
        auto cosets = modular::hecke_cosets(m);
        json j{{"m", m}, {"z1", p1.text}, {"z2", p2.text}};
        json zero_cosets = json::array();
        bool zero = v.zero;
        if (p1.form && p2.form) {
            // exact decision for CM inputs
            modular::JCache jc(prec);
            zero = false;
            for (auto const & f : modular::modpoly_factors_cm(m, *p1.form, *p2.form, jc))
                if (f.zero) {
                    zero = true;
                    zero_cosets.push_back(coset_json(f.coset));
                }
            j["zero_decided"] = "exact";
        } else {
            for (auto i : v.zero_cosets)
                zero_cosets.push_back(coset_json(cosets[i]));
            j["zero_decided"] = "numerical";
        }
        j["zero"] = zero;
        j["zero_cosets"] = zero_cosets;
        j["value"] = complex_json(v.value, digits_for(ctx->precision));
        j["log_abs"] = zero ? json(nullptr) : json(log(v.value.abs()).to_double());
        j["rel_error"] = v.rel_error;
        emit(j, json_out);
    });
}

sm_status sm_greens_points_json(sm_context * ctx, int k, int64_t m, const char * z1, const char * z2, char ** json_out)
{
    if (!json_out || !z1 || !z2)
        return SM_E_ARGUMENT;
    return guarded(ctx, [&] {
        if (m < 1)
            throw DomainError("m must be a positive integer");
        auto p1 = io::parse_point(z1), p2 = io::parse_point(z2);
        Precision prec = ctx->precision.mantissa_bits + 64;
        auto g = greens::G_k_m(k, m, p1.value(prec), p2.value(prec), ctx->precision, ctx->greens);
        auto cosets = modular::hecke_cosets(m);
        json parts = json::array();
        for (std::size_t i = 0; i < cosets.size(); ++i)
            parts.push_back({{"coset", coset_json(cosets[i])}, {"value", g.parts[i]}});
        emit({{"k", k},
              {"m", m},
              {"z1", p1.text},
              {"z2", p2.text},
              {"value", g.value},
              {"error_bound", g.error_bound},
              {"parts", parts}},
             json_out);
    });
}

sm_status sm_greens_cycle_json(sm_context * ctx, int k, int64_t m, int64_t d1, int64_t d2, char ** json_out)
{
    if (!json_out)
        return SM_E_ARGUMENT;
    return guarded(ctx, [&] {
        if (m < 1)
            throw DomainError("m must be a positive integer");
        auto cycle = cmcycles::build_cycle(quadforms::Discriminant::make(d1), quadforms::Discriminant::make(d2));
        auto g = greens::greens_over_cycle(k, m, cycle, ctx->precision, ctx->greens);
        json parts = json::array();
        for (std::size_t i = 0; i < cycle.pairs.size(); ++i)
            parts.push_back({{"z1", io::form_json(cycle.pairs[i].z1)},
                             {"z2", io::form_json(cycle.pairs[i].z2)},
                             {"multiplicity", cycle.pairs[i].multiplicity},
                             {"value", g.parts[i]}});
        emit({{"k", k},
              {"m", m},
              {"d1", d1},
              {"d2", d2},
              {"cycle_kind", cmcycles::to_string(cycle.kind)},
              {"group_order", cycle.group_order},
              {"value", g.value},
              {"error_bound", g.error_bound},
              {"parts", parts}},
             json_out);
    });
}

void sm_norm_options_init(sm_norm_options * opts)
{
    if (!opts)
        return;
    opts->chain = 0;
    opts->factor = 0;
    opts->epsilons = nullptr;
    opts->epsilon_count = 0;
    opts->rho_seconds = 10.0;
}

sm_status sm_norm(sm_context * ctx, int64_t d1, int64_t d2, int64_t m, const sm_norm_options * opts, sm_report ** out)
{
    if (!out)
        return SM_E_ARGUMENT;
    *out = nullptr;
    return guarded(ctx, [&] {
        auto vo = verify_options(ctx, opts);
        auto r = std::make_unique<sm_report>();
        r->reports.push_back(verify::verify_nonunit(quadforms::Discriminant::make(d1),
                                                    quadforms::Discriminant::make(d2), m, ctx->precision, vo));
        *out = r.release();
    });
}

void sm_sweep_options_init(sm_sweep_options * opts)
{
    if (!opts)
        return;
    opts->dmin = 3;
    opts->dmax = 40;
    opts->mmin = 1;
    opts->mmax = 3;
    opts->coprime_fundamental = 1;
    opts->include_diagnostics = 0;
    sm_norm_options_init(&opts->verify);
}

sm_status sm_sweep(sm_context * ctx, const sm_sweep_options * opts, sm_report ** out)
{
    if (!out || !opts)
        return SM_E_ARGUMENT;
    *out = nullptr;
    return guarded(ctx, [&] {
        if (opts->mmin < 1 || opts->dmin < 0)
            throw DomainError("sweep ranges must be positive");
        verify::SweepPolicy policy;
        policy.coprime_fundamental = opts->coprime_fundamental != 0;
        policy.include_diagnostics = opts->include_diagnostics != 0;
        policy.verify = verify_options(ctx, &opts->verify);
        policy.threads = ctx->threads;
        bool fundamental = policy.coprime_fundamental;
        auto ds = verify::discriminants_in(opts->dmin, opts->dmax, fundamental);
        std::vector<std::int64_t> ms;
        for (auto m = opts->mmin; m <= opts->mmax; ++m)
            ms.push_back(m);
        auto r = std::make_unique<sm_report>();
        r->is_sweep = true;
        r->reports = verify::sweep(ds, ds, ms, policy, ctx->precision);
        *out = r.release();
    });
}

size_t sm_report_count(const sm_report * report)
{
    return report ? report->reports.size() : 0;
}

sm_outcome sm_report_outcome(const sm_report * report)
{
    if (!report)
        return SM_OUTCOME_COMPUTATIONAL_FAILURE;
    bool computational = false;
    for (auto const & r : report->reports) {
        if (r.assertion_failed())
            return SM_OUTCOME_ASSERTION_FAILURE;
        computational = computational || r.computational_failure();
    }
    // a sweep records per-instance failures without failing as a whole
    return computational && !report->is_sweep ? SM_OUTCOME_COMPUTATIONAL_FAILURE : SM_OUTCOME_PASS;
}

sm_status sm_report_json(const sm_report * report, int include_timings, char ** json_out)
{
    if (!report || !json_out)
        return SM_E_ARGUMENT;
    try {
        if (!report->is_sweep && report->reports.size() == 1)
            return emit(io::to_json(report->reports.front(), include_timings != 0), json_out);
        json arr = json::array();
        for (auto const & r : report->reports)
            arr.push_back(io::to_json(r, include_timings != 0));
        return emit(arr, json_out);
    } catch (...) {
        return SM_E_INTERNAL;
    }
}

sm_status sm_report_summary_json(const sm_report * report, char ** json_out)
{
    if (!report || !json_out)
        return SM_E_ARGUMENT;
    try {
        return emit(io::to_json(verify::summarize(report->reports)), json_out);
    } catch (...) {
        return SM_E_INTERNAL;
    }
}

void sm_report_destroy(sm_report * report)
{
    delete report;
}

} // extern "C"
