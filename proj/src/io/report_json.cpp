#include "io/report_json.hpp"

#include "modular/classpoly.hpp"

#include <cmath>

namespace singmod::io {

namespace {

json finite_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

} // namespace

std::string outcome(verify::VerificationReport const & r)
{
    if (r.computational_failure())
        return "computational_failure";
    if (r.assertion_failed())
        return "assertion_failure";
    if (r.status == verify::NormStatus::zero)
        return "zero";
    if (r.status == verify::NormStatus::diagnostic)
        return "diagnostic";
    return "pass";
}

json form_json(quadforms::QuadForm const & f)
{
    return json::array({f.a, f.b, f.c});
}

json to_json(verify::Factorization const & f)
{
    json factors = json::array();
    for (auto const & p : f.factors)
        factors.push_back({{"prime", p.prime.get_str()}, {"exponent", p.exponent}, {"proven", p.proven}});
    return {{"factors", factors}, {"cofactor", f.cofactor.get_str()}, {"complete", f.complete()}};
}

json to_json(verify::VerificationReport const & r, bool include_timings)
{
    using verify::NormStatus;
    json j;
    j["d1"] = r.d1.value;
    j["d2"] = r.d2.value;
    j["m"] = r.m;
    j["cycle_kind"] = cmcycles::to_string(r.cycle_kind);
    j["group_order"] = r.group_order;
    j["distinct_pairs"] = r.distinct_pairs;
    j["status"] = verify::to_string(r.status);
    switch (r.status) {
    case NormStatus::integer: j["norm"] = r.norm.get_str(); break;
    case NormStatus::zero: j["norm"] = "zero"; break;
    case NormStatus::failed: j["norm"] = "failed"; break;
    case NormStatus::diagnostic: j["norm"] = nullptr; break;
    }
    j["log_norm"] = r.status == NormStatus::integer || r.status == NormStatus::diagnostic ? finite_or_null(r.log_norm)
                                                                                          : json(nullptr);
    j["precision_bits"] = r.bits;
    j["residual"] = r.residual;
    if (r.singular_pair)
        j["singular_pair"] = {{"z1", form_json(r.singular_pair->z1)}, {"z2", form_json(r.singular_pair->z2)}};
    else
        j["singular_pair"] = nullptr;
    j["failure"] = r.failure.empty() ? json(nullptr) : json(r.failure);
    j["nonunit"] = {{"asserted", r.nonunit_asserted}, {"pass", r.nonunit_pass}};
    j["factorization"] = r.factorization ? to_json(*r.factorization) : json(nullptr);
    j["isogeny_witness"] = r.isogeny_witness ? json(r.isogeny_witness->get_str()) : json(nullptr);
    json chain = json::array();
    for (auto const & [k, c] : r.chain)
        chain.push_back({{"k", k},
                         {"m_k", c.m_k},
                         {"greens", c.greens},
                         {"error_bound", c.error_bound},
                         {"rhs", c.rhs},
                         {"rhs_upper", c.rhs_upper},
                         {"lhs", c.lhs},
                         {"pass", c.pass}});
    j["chain"] = chain;
    json eps = json::array();
    for (auto const & e : r.epsilon_bounds)
        eps.push_back({{"epsilon", e.epsilon}, {"count", e.count}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"pass", e.pass}});
    j["epsilon_bounds"] = eps;
    j["outcome"] = outcome(r);
    if (include_timings)
        j["timings"] = {{"norm", r.timings.norm},
                        {"factor", r.timings.factor},
                        {"chain", r.timings.chain},
                        {"epsilon", r.timings.epsilon},
                        {"total", r.timings.total}};
    return j;
}

json to_json(verify::SweepSummary const & s)
{
    return {{"total", s.total},
            {"pass", s.pass},
            {"zero", s.zero},
            {"diagnostic", s.diagnostic},
            {"assertion_failures", s.assertion_failures},
            {"computational_failures", s.computational_failures}};
}

json to_json(CachedClassPolynomial const & c)
{
    json coeffs = json::array();
    for (auto const & v : c.poly.coeffs)
        coeffs.push_back(v.get_str());
    json j{{"d", c.poly.discriminant.value},
           {"degree", c.poly.coeffs.size() - 1},
           {"coeffs", coeffs},
           {"polynomial", modular::format_polynomial(c.poly.coeffs)},
           {"source", c.from_cache ? "cache" : "computed"}};
    if (!c.from_cache) {
        j["worst_relative_residual"] = c.poly.worst_relative_residual;
        j["precision_bits"] = c.poly.bits;
    }
    return j;
}

json to_json(greens::HeckeGreens const & g)
{
    return {{"value", g.value}, {"error_bound", g.error_bound}, {"parts", g.parts}};
}

} // namespace singmod::io
