#pragma once

#include <json.hpp>

#include "resmatch/color_subgraph.hpp"
#include "resmatch/graph.hpp"
#include "resmatch/matching.hpp"
#include "resmatch/reduction.hpp"
#include "resmatch/spectrum.hpp"

namespace resmatch {

using Json = nlohmann::ordered_json;

/// [[u, v], ...] in canonical order.
Json edges_json(std::span<const Edge> edges);

/// {"nu", "ell", "L", "achieved", "witness_min", "witness_max", "matchings_enumerated", "truncated"}
Json to_json(const SpectrumReport& s);
Json to_json(const DegreeProfile& d);
Json to_json(const BoundReport& b);
/// {"k", "size", "color0", "color1", ...}
Json to_json(const ColorableResult& c);
Json to_json(const ApproxReport& r);
Json to_json(const Problem1Result& r);
/// The reduction certificate.
Json to_json(const Certificate& c);

/// The fields of a certificate file that verification recomputes.
struct CertificateSummary {
  std::string variant;
  int m = 0;
  int vertices = 0;
  int edges = 0;
  int expected_edges = 0;
  int max_degree = 0;
  int nu = 0;
  std::optional<int> k_param;
};

/// Throws std::invalid_argument when a required field is missing.
CertificateSummary certificate_summary(const Json& j);

}  // namespace resmatch
