// Uses nothing but the public C interface.
#include "doctest.h"

#include "singmod/singmod.h"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <unistd.h>

using nlohmann::json;

namespace {

struct Ctx
{
    sm_context * p = nullptr;
    Ctx() { REQUIRE(sm_context_create(&p) == SM_OK); }
    ~Ctx() { sm_context_destroy(p); }
};

json take(char * s)
{
    json j = json::parse(s);
    sm_string_free(s);
    return j;
}

} // namespace

TEST_CASE("context settings are validated")
{
    Ctx c;
    CHECK(sm_context_set_precision_bits(c.p, 32) == SM_E_DOMAIN);
    CHECK(std::strlen(sm_context_last_error(c.p)) > 0);
    CHECK(sm_context_set_precision_bits(c.p, 512) == SM_OK);
    CHECK(std::strlen(sm_context_last_error(c.p)) == 0);
    CHECK(sm_context_set_tolerance(c.p, 0.7) == SM_E_DOMAIN);
    CHECK(sm_context_set_tolerance(c.p, 1e-12) == SM_OK);
    CHECK(sm_context_set_tail_budget(c.p, -1) == SM_E_DOMAIN);
    CHECK(sm_context_set_threads(c.p, 2) == SM_OK);
    CHECK(sm_context_set_precision_bits(nullptr, 256) == SM_E_ARGUMENT);
    CHECK(std::string(sm_status_string(SM_E_SINGULAR)) == "singularity");
    CHECK(sm_context_create(nullptr) == SM_E_ARGUMENT);
}

TEST_CASE("classpoly and cm points")
{
    Ctx c;
    char * s = nullptr;
    REQUIRE(sm_classpoly_json(c.p, -15, &s) == SM_OK);
    json j = take(s);
    CHECK(j["coeffs"] == json::array({"-121287375", "191025", "1"}));
    CHECK(j["worst_relative_residual"].get<double>() < 1e-20);
    CHECK(sm_classpoly_json(c.p, -5, &s) == SM_E_DOMAIN);
    CHECK(sm_classpoly_json(c.p, -15, nullptr) == SM_E_ARGUMENT);

    REQUIRE(sm_cm_points_json(c.p, -23, &s) == SM_OK);
    j = take(s);
    CHECK(j["class_number"] == 3);
    for (auto const & p : j["points"])
        CHECK(p["j_qseries_relative_difference"].get<double>() < 1e-40);
}

TEST_CASE("cache directory")
{
    Ctx c;
    auto dir = std::filesystem::temp_directory_path() / ("singmod-capi-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    REQUIRE(sm_context_set_cache_dir(c.p, dir.c_str()) == SM_OK);
    char * s = nullptr;
    REQUIRE(sm_classpoly_json(c.p, -23, &s) == SM_OK);
    json first = take(s);
    REQUIRE(sm_classpoly_json(c.p, -23, &s) == SM_OK);
    json second = take(s);
    CHECK(first["source"] == "computed");
    CHECK(second["source"] == "cache");
    CHECK(first["coeffs"] == second["coeffs"]);
    CHECK(std::filesystem::exists(dir / "classpoly_-23.cache"));
    REQUIRE(sm_context_set_cache_dir(c.p, nullptr) == SM_OK);
    REQUIRE(sm_classpoly_json(c.p, -23, &s) == SM_OK);
    CHECK(take(s)["source"] == "computed");
    std::filesystem::remove_all(dir);
}

TEST_CASE("modpoly and greens")
{
    Ctx c;
    char * s = nullptr;
    REQUIRE(sm_modpoly_eval_json(c.p, 2, "-4", "-4", &s) == SM_OK);
    json j = take(s);
    CHECK(j["zero"] == true);
    CHECK(j["zero_decided"] == "exact");
    CHECK(j["zero_cosets"] == json::array({json::array({1, 1, 2})}));
    REQUIRE(sm_modpoly_eval_json(c.p, 1, "-3", "-4", &s) == SM_OK);
    j = take(s);
    CHECK(j["zero"] == false);
    CHECK(j["log_abs"].get<double>() == doctest::Approx(std::log(1728.0)));
    CHECK(sm_modpoly_eval_json(c.p, 1, "i", "0.5-i", &s) == SM_E_DOMAIN);
    CHECK(sm_modpoly_eval_json(c.p, 0, "i", "2i", &s) == SM_E_DOMAIN);

    REQUIRE(sm_greens_cycle_json(c.p, 1, 1, -3, -4, &s) == SM_OK);
    j = take(s);
    CHECK(j["value"].get<double>() == doctest::Approx(8 * std::log(1728.0)));
    REQUIRE(sm_greens_points_json(c.p, 3, 1, "i", "2i", &s) == SM_OK);
    j = take(s);
    CHECK(j["value"].get<double>() < 0);
    CHECK(sm_greens_points_json(c.p, 2, 1, "i", "2i", &s) == SM_E_DOMAIN);
    CHECK(sm_greens_points_json(c.p, 3, 2, "i", "1,0,1", &s) == SM_E_SINGULAR);
    CHECK(std::string(sm_context_last_error(c.p)).find("coset") != std::string::npos);
}

TEST_CASE("norm reports")
{
    Ctx c;
    sm_norm_options o;
    sm_norm_options_init(&o);
    double eps[] = {0.5, 1.0};
    o.chain = 1;
    o.factor = 1;
    o.epsilons = eps;
    o.epsilon_count = 2;
    sm_report * r = nullptr;
    REQUIRE(sm_norm(c.p, -3, -4, 1, &o, &r) == SM_OK);
    CHECK(sm_report_count(r) == 1);
    CHECK(sm_report_outcome(r) == SM_OUTCOME_PASS);
    char * s = nullptr;
    REQUIRE(sm_report_json(r, 0, &s) == SM_OK);
    json j = take(s);
    CHECK(j["norm"] == "8916100448256");
    CHECK(j["chain"].size() == 3);
    CHECK(j["epsilon_bounds"].size() == 2);
    CHECK_FALSE(j.contains("timings"));
    sm_report_destroy(r);

    REQUIRE(sm_norm(c.p, -4, -4, 4, nullptr, &r) == SM_OK);
    CHECK(sm_report_outcome(r) == SM_OUTCOME_PASS);
    REQUIRE(sm_report_json(r, 1, &s) == SM_OK);
    CHECK(take(s)["outcome"] == "zero");
    sm_report_destroy(r);

    CHECK(sm_norm(c.p, -3, -5, 1, nullptr, &r) == SM_E_DOMAIN);
    CHECK(r == nullptr);
    o.epsilons = nullptr;
    CHECK(sm_norm(c.p, -3, -4, 1, &o, &r) == SM_E_DOMAIN);
}

TEST_CASE("sweep reports")
{
    Ctx c;
    sm_sweep_options o;
    sm_sweep_options_init(&o);
    o.dmax = 20;
    o.mmax = 2;
    sm_report * r = nullptr;
    REQUIRE(sm_sweep(c.p, &o, &r) == SM_OK);
    CHECK(sm_report_count(r) > 10);
    CHECK(sm_report_outcome(r) == SM_OUTCOME_PASS);
    char * s = nullptr;
    REQUIRE(sm_report_summary_json(r, &s) == SM_OK);
    json sum = take(s);
    CHECK(sum["pass"] == sum["total"]);
    REQUIRE(sm_report_json(r, 0, &s) == SM_OK);
    json arr = take(s);
    CHECK(arr.is_array());
    CHECK(arr.size() == sm_report_count(r));
    sm_report_destroy(r);

    o.dmax = 0;
    REQUIRE(sm_sweep(c.p, &o, &r) == SM_OK);
    CHECK(sm_report_count(r) == 0);
    REQUIRE(sm_report_json(r, 0, &s) == SM_OK);
    CHECK(take(s) == json::array());
    sm_report_destroy(r);
    CHECK(sm_sweep(c.p, nullptr, &r) == SM_E_ARGUMENT);
}
