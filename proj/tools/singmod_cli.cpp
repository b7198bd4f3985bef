// Command-line front end. Everything goes through the C interface.
//
// Exit codes: 0 all requested assertions hold (or the value is legally
// zero), 1 an assertion failed, 2 a computation failed, 64 usage error.

#include "singmod/singmod.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

constexpr int exit_usage = 64;
constexpr int exit_computation = 2;

struct Globals
{
    long precision_bits = 256;
    double tolerance = 1e-9;
    unsigned threads = 0;
    double tail_budget = 1e-6;
    std::string cache_dir;
    bool json_output = false;
    std::string out_path;
};

struct ContextDeleter
{
    void operator()(sm_context * c) const { sm_context_destroy(c); }
};
struct ReportDeleter
{
    void operator()(sm_report * r) const { sm_report_destroy(r); }
};
using ContextPtr = std::unique_ptr<sm_context, ContextDeleter>;
using ReportPtr = std::unique_ptr<sm_report, ReportDeleter>;

/// Thrown to unwind with a given exit code after the message is printed.
struct Exit
{
    int code;
};

class Runner
{
public:
    explicit Runner(Globals const & g) : g_(g)
    {
        sm_context * raw = nullptr;
        if (sm_context_create(&raw) != SM_OK)
            fail(SM_E_INTERNAL, "cannot create context");
        ctx_.reset(raw);
        check(sm_context_set_precision_bits(ctx(), g.precision_bits));
        check(sm_context_set_tolerance(ctx(), g.tolerance));
        check(sm_context_set_threads(ctx(), g.threads));
        check(sm_context_set_tail_budget(ctx(), g.tail_budget));
        if (!g.cache_dir.empty())
            check(sm_context_set_cache_dir(ctx(), g.cache_dir.c_str()));
    }

    sm_context * ctx() const { return ctx_.get(); }
    Globals const & globals() const { return g_; }

    void check(sm_status st) const
    {
        if (st != SM_OK)
            fail(st, sm_context_last_error(ctx_.get()));
    }

    [[noreturn]] void fail(sm_status st, std::string const & message) const
    {
        int code = (st == SM_E_ARGUMENT || st == SM_E_DOMAIN) ? exit_usage : exit_computation;
        if (g_.json_output) {
            json err{{"error", {{"status", sm_status_string(st)}, {"message", message}, {"exit_code", code}}}};
            std::cout << err.dump(2) << "\n";
        }
        std::cerr << "error (" << sm_status_string(st) << "): " << message << "\n";
        throw Exit{code};
    }

    json take(char * s) const
    {
        json j = json::parse(s);
        sm_string_free(s);
        return j;
    }

    /// Writes the document to --out if given, and to stdout in JSON mode.
    void publish(json const & doc, std::string const & text) const
    {
        if (!g_.out_path.empty()) {
            std::ofstream out(g_.out_path);
            out << doc.dump(2) << "\n";
            if (!out)
                fail(SM_E_IO, "cannot write " + g_.out_path);
        }
        if (g_.json_output)
            std::cout << doc.dump(2) << "\n";
        else
            std::cout << text;
    }

private:
    Globals g_;
    ContextPtr ctx_;
};

std::string fmt(double x, int digits = 12)
{
    std::ostringstream s;
    s << std::setprecision(digits) << x;
    return s.str();
}

std::string complex_text(json const & z)
{
    std::string re = z["re"], im = z["im"];
    if (!im.empty() && im[0] == '-')
        return re + " - " + im.substr(1) + " i";
    return re + " + " + im + " i";
}

std::string factorization_text(json const & f)
{
    std::string s;
    for (auto const & p : f["factors"]) {
        if (!s.empty())
            s += " * ";
        s += p["prime"].get<std::string>();
        if (p["exponent"].get<int>() != 1)
            s += "^" + std::to_string(p["exponent"].get<int>());
    }
    if (f["cofactor"] != "1")
        s += (s.empty() ? "" : " * ") + std::string("(") + f["cofactor"].get<std::string>() + ", unfactored)";
    return s;
}

std::string report_text(json const & r)
{
    std::ostringstream o;
    o << "instance      d1 = " << r["d1"] << ", d2 = " << r["d2"] << ", m = " << r["m"] << "\n";
    o << "cycle         " << r["cycle_kind"].get<std::string>() << ", " << r["group_order"] << " points, "
      << r["distinct_pairs"] << " distinct pairs\n";
    std::string status = r["status"];
    if (status == "integer") {
        o << "N             " << r["norm"].get<std::string>() << "\n";
        o << "log N         " << fmt(r["log_norm"].get<double>()) << "\n";
        o << "non-unit      " << (r["nonunit"]["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    } else if (status == "zero") {
        auto const & p = r["singular_pair"];
        o << "N             zero (phi_m vanishes at the pair " << p["z1"].dump() << ", " << p["z2"].dump() << ")\n";
    } else if (status == "diagnostic") {
        o << "log N         " << fmt(r["log_norm"].get<double>())
          << " (diagnostic: d1, d2 share a factor; not asserted)\n";
    } else {
        o << "N             failed: " << r["failure"].get<std::string>() << "\n";
    }
    if (!r["factorization"].is_null())
        o << "factorization " << factorization_text(r["factorization"]) << "\n";
    if (!r["isogeny_witness"].is_null())
        o << "witness       " << r["isogeny_witness"].get<std::string>() << "\n";
    for (auto const & e : r["epsilon_bounds"])
        o << "epsilon " << std::left << std::setw(6) << fmt(e["epsilon"].get<double>(), 6) << std::right
          << "count " << e["count"] << ", log N = " << fmt(e["lhs"].get<double>(), 8)
          << " >= " << fmt(e["rhs"].get<double>(), 8) << "  " << (e["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    for (auto const & c : r["chain"])
        o << "chain k = " << c["k"] << "     2 log N = " << fmt(c["lhs"].get<double>(), 8)
          << " >= m_k (-G) = " << fmt(c["rhs"].get<double>(), 8) << " (+" << fmt(c["rhs_upper"].get<double>()
                                                                                 - c["rhs"].get<double>(), 3)
          << ")  " << (c["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    o << "outcome       " << r["outcome"].get<std::string>() << "\n";
    return o.str();
}

int cmd_classpoly(Runner const & run, std::int64_t d)
{
    char * s = nullptr;
    run.check(sm_classpoly_json(run.ctx(), d, &s));
    json j = run.take(s);
    run.publish(j, j["polynomial"].get<std::string>() + "\n");
    return 0;
}

int cmd_cmpoints(Runner const & run, std::int64_t d)
{
    char * s = nullptr;
    run.check(sm_cm_points_json(run.ctx(), d, &s));
    json j = run.take(s);
    std::ostringstream o;
    o << "d = " << j["d"] << ", h = " << j["class_number"] << "\n";
    for (auto const & p : j["points"])
        o << std::left << std::setw(18) << p["form"].dump() << std::right << " tau = " << complex_text(p["tau"]) << "\n"
          << std::setw(18) << "" << "   j = " << complex_text(p["j"]) << "\n";
    run.publish(j, o.str());
    return 0;
}

int cmd_modpoly(Runner const & run, std::int64_t m, std::string const & z1, std::string const & z2)
{
    char * s = nullptr;
    run.check(sm_modpoly_eval_json(run.ctx(), m, z1.c_str(), z2.c_str(), &s));
    json j = run.take(s);
    std::ostringstream o;
    if (j["zero"].get<bool>())
        o << "phi_" << m << "(j(z1), j(z2)) = 0 (" << j["zero_decided"].get<std::string>() << "; cosets "
          << j["zero_cosets"].dump() << ")\n";
    else
        o << "phi_" << m << "(j(z1), j(z2)) = " << complex_text(j["value"]) << "\n"
          << "log |.|  = " << fmt(j["log_abs"].get<double>(), 15) << "\n";
    run.publish(j, o.str());
    return 0;
}

int cmd_greens(Runner const & run, int k, std::int64_t m, std::string const & z1, std::string const & z2,
               std::vector<std::int64_t> const & cycle)
{
    char * s = nullptr;
    if (!cycle.empty())
        run.check(sm_greens_cycle_json(run.ctx(), k, m, cycle[0], cycle[1], &s));
    else
        run.check(sm_greens_points_json(run.ctx(), k, m, z1.c_str(), z2.c_str(), &s));
    json j = run.take(s);
    std::ostringstream o;
    o << "G_" << k << "^" << m << " = " << fmt(j["value"].get<double>(), 15) << "  (error bound "
      << fmt(j["error_bound"].get<double>(), 3) << ")\n";
    for (auto const & p : j["parts"]) {
        if (p.contains("coset"))
            o << "  coset " << std::left << std::setw(14) << p["coset"].dump() << std::right;
        else
            o << "  pair " << p["z1"].dump() << " " << p["z2"].dump() << " x" << p["multiplicity"] << "  ";
        o << fmt(p["value"].get<double>(), 15) << "\n";
    }
    run.publish(j, o.str());
    return 0;
}

sm_norm_options norm_options(bool chain, bool factor, std::vector<double> const & eps)
{
    sm_norm_options o;
    sm_norm_options_init(&o);
    o.chain = chain;
    o.factor = factor;
    o.epsilons = eps.empty() ? nullptr : eps.data();
    o.epsilon_count = eps.size();
    return o;
}

int cmd_norm(Runner const & run, std::int64_t d1, std::int64_t d2, std::int64_t m, bool chain, bool factor,
             std::vector<double> const & eps)
{
    auto opts = norm_options(chain, factor, eps);
    sm_report * raw = nullptr;
    run.check(sm_norm(run.ctx(), d1, d2, m, &opts, &raw));
    ReportPtr rep(raw);
    char * s = nullptr;
    run.check(sm_report_json(rep.get(), 1, &s));
    json j = run.take(s);
    run.publish(j, report_text(j));
    return static_cast<int>(sm_report_outcome(rep.get()));
}

int cmd_sweep(Runner const & run, sm_sweep_options opts, bool chain, bool factor, std::vector<double> const & eps)
{
    opts.verify = norm_options(chain, factor, eps);
    sm_report * raw = nullptr;
    run.check(sm_sweep(run.ctx(), &opts, &raw));
    ReportPtr rep(raw);
    char * s = nullptr;
    run.check(sm_report_json(rep.get(), 1, &s));
    json reports = run.take(s);
    run.check(sm_report_summary_json(rep.get(), &s));
    json summary = run.take(s);

    if (!run.globals().out_path.empty()) {
        std::ofstream out(run.globals().out_path);
        out << reports.dump(2) << "\n";
        if (!out)
            run.fail(SM_E_IO, "cannot write " + run.globals().out_path);
    }
    if (run.globals().json_output)
        std::cout << json{{"summary", summary}, {"reports", reports}}.dump(2) << "\n";
    else {
        for (auto const & r : reports)
            if (r["outcome"] != "pass")
                std::cout << r["d1"] << " " << r["d2"] << " " << r["m"] << ": " << r["outcome"].get<std::string>()
                          << (r["failure"].is_null() ? "" : " (" + r["failure"].get<std::string>() + ")") << "\n";
        std::cout << "sweep: " << summary["total"] << " instances, " << summary["pass"] << " pass, "
                  << summary["zero"] << " zero, " << summary["diagnostic"] << " diagnostic, "
                  << summary["assertion_failures"] << " assertion failures, " << summary["computational_failures"]
                  << " computational failures\n";
    }
    return static_cast<int>(sm_report_outcome(rep.get()));
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Norms of modular polynomials at CM points, and the bounds they satisfy"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sm_version()));

    Globals g;
    auto add_globals = [&](CLI::App * sub) {
        sub->add_option("--precision-bits", g.precision_bits, "base working precision in bits")
            ->check(CLI::Range(64L, 1L << 24));
        sub->add_option("--tolerance", g.tolerance, "integer recognition tolerance")
            ->check(CLI::Range(1e-300, 0.49));
        sub->add_option("--threads", g.threads, "worker threads (0 = all cores)");
        sub->add_option("--tail-budget", g.tail_budget, "truncation budget per Green's function lattice sum")
            ->check(CLI::PositiveNumber);
        sub->add_option("--cache-dir", g.cache_dir, "directory for cached class polynomials and j coefficients");
        sub->add_flag("--json", g.json_output, "print JSON instead of text");
        sub->add_option("--out", g.out_path, "also write the JSON document to this file");
    };

    std::int64_t d = 0, d1 = 0, d2 = 0, m = 1;
    int k = 1;
    std::string z1, z2;
    std::vector<std::int64_t> cycle;
    bool chain = false, factor = false, all_pairs = false, diagnostics = false;
    std::vector<double> eps;

    auto * classpoly = app.add_subcommand("classpoly", "class polynomial H_d");
    classpoly->add_option("d", d, "negative discriminant")->required();

    auto * cmpoints = app.add_subcommand("cmpoints", "reduced forms of discriminant d, their CM points and j-values");
    cmpoints->add_option("d", d, "negative discriminant")->required();

    auto * modpoly = app.add_subcommand("modpoly-eval", "phi_m(j(z1), j(z2))");
    modpoly->add_option("m", m, "degree")->required()->check(CLI::PositiveNumber);
    modpoly->add_option("z1", z1, "point: a,b,c | discriminant | x+yi")->required();
    modpoly->add_option("z2", z2, "point: a,b,c | discriminant | x+yi")->required();

    auto * norm = app.add_subcommand("norm", "exact norm of phi_m over the CM cycle of (d1, d2), with checks");
    norm->add_option("d1", d1)->required();
    norm->add_option("d2", d2)->required();
    norm->add_option("m", m)->required()->check(CLI::PositiveNumber);
    norm->add_flag("--chain", chain, "check 2 log N >= m_k (-G_k^m) for k = 3, 5, 7");
    norm->add_flag("--factor", factor, "factor N and report the smallest prime");
    norm->add_option("--epsilon", eps, "check the proximity lower bound at this radius (repeatable)")
        ->check(CLI::PositiveNumber);

    auto * greens = app.add_subcommand("greens", "higher Green's function G_k^m at two points or over a CM cycle");
    greens->add_option("--k", k, "weight parameter, odd in {1, 3, 5, 7}")->required();
    greens->add_option("--m", m, "Hecke index")->check(CLI::PositiveNumber);
    auto * oz1 = greens->add_option("--z1", z1, "first point");
    auto * oz2 = greens->add_option("--z2", z2, "second point");
    auto * ocycle = greens->add_option("--cycle", cycle, "sum over the CM cycle of (d1, d2)")->expected(2);
    oz1->needs(oz2);
    oz2->needs(oz1);
    ocycle->excludes(oz1)->excludes(oz2);

    sm_sweep_options sweep_opts;
    sm_sweep_options_init(&sweep_opts);
    auto * sweep = app.add_subcommand("sweep", "run the norm checks over a grid of discriminants and m");
    sweep->add_option("--dmin", sweep_opts.dmin, "smallest |d|");
    sweep->add_option("--dmax", sweep_opts.dmax, "largest |d|")->required();
    sweep->add_option("--mmin", sweep_opts.mmin, "smallest m")->check(CLI::PositiveNumber);
    sweep->add_option("--mmax", sweep_opts.mmax, "largest m");
    auto * ocf = sweep->add_flag("--coprime-fundamental", "only coprime pairs of fundamental discriminants (default)");
    auto * oall = sweep->add_flag("--all-pairs", all_pairs, "every discriminant; non-coprime pairs in the same field too");
    ocf->excludes(oall);
    sweep->add_flag("--include-diagnostics", diagnostics, "also run non-coprime pairs from different fields");
    sweep->add_flag("--chain", chain, "check the Green's function chain");
    sweep->add_flag("--factor", factor, "factor every norm");
    sweep->add_option("--epsilon", eps, "proximity radius (repeatable)")->check(CLI::PositiveNumber);

    for (auto * sub : {classpoly, cmpoints, modpoly, norm, greens, sweep})
        add_globals(sub);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*greens && cycle.empty() && z1.empty())
            throw CLI::ValidationError("greens", "give either --z1 and --z2 or --cycle d1 d2");
    } catch (CLI::ParseError const & e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        Runner run(g);
        if (*classpoly)
            return cmd_classpoly(run, d);
        if (*cmpoints)
            return cmd_cmpoints(run, d);
        if (*modpoly)
            return cmd_modpoly(run, m, z1, z2);
        if (*norm)
            return cmd_norm(run, d1, d2, m, chain, factor, eps);
        if (*greens)
            return cmd_greens(run, k, m, z1, z2, cycle);
        if (*sweep) {
            sweep_opts.coprime_fundamental = all_pairs ? 0 : 1;
            sweep_opts.include_diagnostics = diagnostics;
            return cmd_sweep(run, sweep_opts, chain, factor, eps);
        }
    } catch (Exit const & e) {
        return e.code;
    } catch (std::exception const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_computation;
    }
    return exit_usage;
}
