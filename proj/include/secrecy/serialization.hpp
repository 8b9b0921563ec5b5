#pragma once

#include <json.hpp>
#include <string>

#include "secrecy/fading.hpp"
#include "secrecy/lowsnr.hpp"
#include "secrecy/wiretap.hpp"

// JSON formats used by the command-line tool.
//
//   channel:    {"Hm": [[[re, im], ...], ...], "He": ..., "Nm": 1.0, "Ne": 1.0}
//               (a bare number is accepted for a purely real entry)
//   covariance: {"K": [[[re, im], ...], ...]}  (any PSD matrix; divided by its trace)
//   model:      {"kind": "iid_rayleigh" | "correlated_scalar_pair" | "fixed",
//                "nT", "nR", "nE", "Nm", "Ne", "rho"?, "variances"?: {"Hm", "He"},
//                "Hm"?, "He"? (fixed only; all-ones when absent)}
//
// Infinite values (minimum energy when secrecy is impossible, wideband slope
// with zero curvature) are written as null and read back as +inf.

namespace secrecy {

using Json = nlohmann::json;

/// Parses a JSON document, converting library exceptions to FormatError.
Json parse_json(const std::string& text);

ComplexMatrix matrix_from_json(const Json& j, const char* field);
Json matrix_to_json(const ComplexMatrix& m);

WiretapChannel channel_from_json(const Json& j);
Json channel_to_json(const WiretapChannel& ch);

NormalizedCovariance covariance_from_json(const Json& j);

Json profile_to_json(const LowSnrProfile& p);

FadingModel fading_model_from_json(const Json& j);
Json fading_model_to_json(const FadingModel& m);

Json fading_profile_to_json(const FadingProfile& p);
FadingProfile fading_profile_from_json(const Json& j);

/// Number, or +inf for null.
double number_or_infinity(const Json& j);
Json finite_or_null(double x);

}  // namespace secrecy
