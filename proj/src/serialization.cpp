#include "secrecy/serialization.hpp"

#include <cmath>
#include <limits>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

const Json& require(const Json& j, const char* field) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(field);
  if (it == j.end()) throw FormatError(std::string("missing field '") + field + "'");
  return *it;
}

double require_number(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number()) throw FormatError(std::string("field '") + field + "' must be a number");
  return v.get<double>();
}

std::size_t require_count(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw FormatError(std::string("field '") + field + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

Complex complex_from_json(const Json& v, const char* field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw FormatError(std::string("field '") + field + "': entries must be [re, im] pairs");
}

const char* kind_name(FadingKind kind) {
  switch (kind) {
    case FadingKind::iid_rayleigh: return "iid_rayleigh";
    case FadingKind::correlated_scalar_pair: return "correlated_scalar_pair";
    case FadingKind::fixed: return "fixed";
  }
  return "unknown";
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

double number_or_infinity(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw FormatError("expected a number or null");
  return j.get<double>();
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

ComplexMatrix matrix_from_json(const Json& j, const char* field) {
  const Json& rows = require(j, field);
  if (!rows.is_array() || rows.empty()) {
    throw FormatError(std::string("field '") + field + "' must be a non-empty 2-D array");
  }
  const std::size_t r = rows.size();
  std::size_t c = 0;
  std::vector<Complex> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.empty()) {
      throw FormatError(std::string("field '") + field + "': every row must be a non-empty array");
    }
    if (c == 0) c = row.size();
    if (row.size() != c) throw ShapeError(std::string("field '") + field + "': ragged rows");
    for (const auto& v : row) entries.push_back(complex_from_json(v, field));
  }
  return ComplexMatrix(r, c, std::move(entries));
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

WiretapChannel channel_from_json(const Json& j) {
  return WiretapChannel(matrix_from_json(j, "Hm"), matrix_from_json(j, "He"),
                        require_number(j, "Nm"), require_number(j, "Ne"));
}

Json channel_to_json(const WiretapChannel& ch) {
  return {{"Hm", matrix_to_json(ch.hm())},
          {"He", matrix_to_json(ch.he())},
          {"Nm", ch.nm()},
          {"Ne", ch.ne()}};
}

NormalizedCovariance covariance_from_json(const Json& j) {
  return NormalizedCovariance::from_unnormalized(HermitianMatrix(matrix_from_json(j, "K")));
}

Json profile_to_json(const LowSnrProfile& p) {
  Json eigenspace = Json::array();
  for (const auto& u : p.eigenspace) {
    Json vec = Json::array();
    for (const auto& e : u) vec.push_back({e.real(), e.imag()});
    eigenspace.push_back(std::move(vec));
  }
  return {{"c1", p.c1},
          {"c2", p.c2},
          {"lambda_max", p.lambda_max},
          {"multiplicity", p.multiplicity()},
          {"alpha", p.alpha},
          {"eigenspace", std::move(eigenspace)},
          {"eb_n0_min_db", finite_or_null(p.eb_n0_min_db)},
          {"wideband_slope", finite_or_null(p.wideband_slope)},
          {"secrecy_possible", p.secrecy_possible}};
}

FadingModel fading_model_from_json(const Json& j) {
  FadingModel m;
  const Json& kind = require(j, "kind");
  if (!kind.is_string()) throw FormatError("field 'kind' must be a string");
  const auto name = kind.get<std::string>();
  if (name == "iid_rayleigh") {
    m.kind = FadingKind::iid_rayleigh;
  } else if (name == "correlated_scalar_pair") {
    m.kind = FadingKind::correlated_scalar_pair;
  } else if (name == "fixed") {
    m.kind = FadingKind::fixed;
  } else {
    throw FormatError("unknown fading kind '" + name + "'");
  }
  m.n_t = require_count(j, "nT");
  m.n_r = require_count(j, "nR");
  m.n_e = require_count(j, "nE");
  m.noise_m = require_number(j, "Nm");
  m.noise_e = require_number(j, "Ne");
  if (j.contains("rho")) m.rho = require_number(j, "rho");
  if (j.contains("variances")) {
    const Json& v = j.at("variances");
    m.variance_m = require_number(v, "Hm");
    m.variance_e = require_number(v, "He");
  }
  if (j.contains("Hm") || j.contains("He")) {
    if (m.kind != FadingKind::fixed) throw FormatError("'Hm'/'He' are only valid for kind 'fixed'");
    m.fixed_hm = matrix_from_json(j, "Hm");
    m.fixed_he = matrix_from_json(j, "He");
  }
  m.validate();
  return m;
}

Json fading_model_to_json(const FadingModel& m) {
  Json j = {{"kind", kind_name(m.kind)},
            {"nT", m.n_t},
            {"nR", m.n_r},
            {"nE", m.n_e},
            {"Nm", m.noise_m},
            {"Ne", m.noise_e},
            {"variances", {{"Hm", m.variance_m}, {"He", m.variance_e}}}};
  if (m.kind == FadingKind::correlated_scalar_pair) j["rho"] = m.rho;
  if (m.fixed_hm) {
    j["Hm"] = matrix_to_json(*m.fixed_hm);
    j["He"] = matrix_to_json(*m.fixed_he);
  }
  return j;
}

Json fading_profile_to_json(const FadingProfile& p) {
  return {{"c1_avg", p.c1_avg},
          {"c2_avg", p.c2_avg},
          {"eb_n0_min_db", finite_or_null(p.eb_n0_min_db)},
          {"standard_error_c1", p.standard_error_c1},
          {"standard_error_c2", p.standard_error_c2},
          {"samples", p.samples}};
}

FadingProfile fading_profile_from_json(const Json& j) {
  FadingProfile p;
  p.c1_avg = require_number(j, "c1_avg");
  p.c2_avg = require_number(j, "c2_avg");
  p.eb_n0_min_db = number_or_infinity(require(j, "eb_n0_min_db"));
  p.standard_error_c1 = require_number(j, "standard_error_c1");
  p.standard_error_c2 = require_number(j, "standard_error_c2");
  p.samples = require_count(j, "samples");
  return p;
}

}  // namespace secrecy
