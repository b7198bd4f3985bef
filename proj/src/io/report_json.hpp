#pragma once

// JSON encodings of reports. Integers that can exceed 64 bits are decimal
// strings. The schema is described in docs/report_schema.md.

#include "greens/greens.hpp"
#include "io/cache.hpp"
#include "verify/verify.hpp"

#include <json.hpp>

namespace singmod::io {

using nlohmann::json;

/// "pass", "zero", "diagnostic", "assertion_failure" or "computational_failure".
std::string outcome(verify::VerificationReport const & r);

json form_json(quadforms::QuadForm const & f);
json to_json(verify::Factorization const & f);
json to_json(verify::VerificationReport const & r, bool include_timings = true);
json to_json(verify::SweepSummary const & s);
json to_json(CachedClassPolynomial const & c);
json to_json(greens::HeckeGreens const & g);

} // namespace singmod::io
