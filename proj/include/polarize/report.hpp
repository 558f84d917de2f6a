#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "polarize/algebra.hpp"
#include "polarize/moments.hpp"
#include "polarize/unitary_group.hpp"
#include "polarize/version.hpp"

namespace polarize {

using OrderedJson = nlohmann::ordered_json;

/// All scalars serialize as strings: rationals as "p/q", floats as the
/// shortest round-trip decimal. This keeps reports byte-identical across
/// reruns with the same (spec, group, seed, backend, version).
template <typename S>
std::string scalar_json(const S& v) {
  return scalar_traits<S>::to_string(v);
}

template <typename S>
OrderedJson element_json(const Element<S>& e) {
  OrderedJson coords = OrderedJson::array();
  for (std::size_t i = 0; i < e.dim(); ++i) coords.push_back(scalar_json(e[i]));
  OrderedJson out;
  out["coords"] = std::move(coords);
  out["pretty"] = e.to_string();
  return out;
}

template <typename S>
OrderedJson certificate_json(const PolarizationCertificate<S>& cert) {
  OrderedJson out;
  out["spans"] = cert.spans;
  out["first_moment_norm"] = scalar_json(cert.first_moment_norm);
  out["is_polarizing"] = cert.is_polarizing;
  return out;
}

template <typename S>
OrderedJson kappa_report_json(const KappaReport<S>& rep) {
  OrderedJson out;
  out["algebra"] = rep.algebra_id;
  out["group"] = rep.group_id;
  out["mu2"] = element_json(rep.mu2);
  out["kappa"] = element_json(rep.kappa);
  out["residual"] = scalar_json(rep.residual);
  if (rep.closed_form) {
    out["closed_form"] = element_json(*rep.closed_form);
    out["closed_form_error"] = scalar_json(*rep.closed_form_error);
  }
  return out;
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x00000100000001B3ull;
  }
  return h;
}

/// Machine-readable run record emitted by every CLI command.
struct RunReport {
  std::string operation;
  std::string algebra_spec;
  std::string group_id;
  std::string backend;
  std::uint64_t seed = 0;
  double tolerance = kDefaultEpsilon;
  OrderedJson outputs = OrderedJson::object();
  double timing_ms = 0.0;

  OrderedJson to_json() const {
    OrderedJson j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kVersion;
    j["operation"] = operation;
    j["algebra"] = algebra_spec;
    j["group"] = group_id;
    j["backend"] = backend;
    j["seed"] = seed;
    j["tolerance"] = tolerance;
    j["inputs_digest"] = fnv1a64(operation + "|" + algebra_spec + "|" + group_id + "|" + backend +
                                 "|" + std::to_string(seed));
    j["outputs"] = outputs;
    j["timing_ms"] = timing_ms;
    return j;
  }
};

}  // namespace polarize
