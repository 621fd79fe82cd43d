#include "resmatch/report.hpp"

namespace resmatch {

Json edges_json(std::span<const Edge> edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

Json to_json(const SpectrumReport& s) {
  return Json{{"nu", s.nu},
              {"ell", s.ell},
              {"L", s.big_l},
              {"achieved", s.achieved},
              {"witness_min", edges_json(s.witness_min.edges)},
              {"witness_max", edges_json(s.witness_max.edges)},
              {"matchings_enumerated", s.matchings_enumerated},
              {"truncated", s.truncated}};
}

Json to_json(const DegreeProfile& d) {
  Json histogram = Json::object();
  for (auto [degree, count] : d.histogram) histogram[std::to_string(degree)] = count;
  return Json{{"max", d.max_degree}, {"min", d.min_degree}, {"histogram", histogram}};
}

Json to_json(const BoundReport& b) {
  return Json{{"ell", b.ell},
              {"L", b.big_l},
              {"perfect_matching", b.has_perfect_matching},
              {"ell_le_L", b.ordered},
              {"L_le_2ell", b.within_double},
              {"2L_le_3ell", b.within_three_halves},
              {"violations", b.violations}};
}

Json to_json(const ColorableResult& c) {
  Json j{{"k", c.k}, {"size", c.size}};
  for (std::size_t i = 0; i < c.classes.size(); ++i) j["color" + std::to_string(i)] = edges_json(c.classes[i]);
  return j;
}

Json to_json(const ApproxReport& r) {
  Json trials = Json::array();
  for (const ApproxTrial& t : r.trials) {
    trials.push_back({{"seed", t.seed},
                      {"residual", t.residual},
                      {"r_ell", t.ratio_ell ? Json(to_string(*t.ratio_ell)) : Json(nullptr)},
                      {"r_L", t.ratio_big_l ? Json(to_string(*t.ratio_big_l)) : Json(nullptr)}});
  }
  return Json{{"nu", r.nu},
              {"ell", r.ell},
              {"L", r.big_l},
              {"trials", trials},
              {"undefined_ratio_trials", r.undefined_ratio_trials},
              {"ratios_within", r.ratios_within}};
}

Json to_json(const Problem1Result& r) {
  Json j{{"answer", to_string(r.answer)}, {"enumerated", r.enumerated}, {"matchings_examined", r.matchings_examined}};
  j["witness"] = r.witness ? edges_json(r.witness->edges) : Json(nullptr);
  j["witness_residual"] = r.witness_residual ? Json(*r.witness_residual) : Json(nullptr);
  return j;
}

Json to_json(const Certificate& c) {
  Json checks = Json::array();
  for (const ResidualCheck& rc : c.residual_checks)
    checks.push_back({{"assignment", rc.assignment}, {"sat", rc.sat}, {"expected", rc.expected}, {"actual", rc.actual}});
  Json j{{"variant", to_string(c.variant)},
         {"m", c.m},
         {"n", c.n},
         {"V", c.vertices},
         {"expectedV", c.expected_vertices},
         {"E", c.edges},
         {"expectedE", c.expected_edges},
         {"publishedE", c.published_edges},
         {"twoAttachmentE", c.two_attachment_edges},
         {"edgeRule", c.edge_rule},
         {"maxDeg", c.max_degree},
         {"expectedMaxDeg", c.expected_max_degree},
         {"bipartite", c.bipartite_by_parity},
         {"connected", c.connected},
         {"nu", c.nu},
         {"expectedNu", c.expected_nu},
         {"kParam", c.k_param ? Json(*c.k_param) : Json(nullptr)},
         {"exhaustive", c.exhaustive},
         {"residualChecks", checks}};
  if (c.spectrum_checked) {
    j["spectrum"] = {{"maximumMatchings", c.maximum_matchings},
                     {"truncated", c.spectrum_truncated},
                     {"ell", c.ell},
                     {"L", c.big_l},
                     {"expectedEll", c.expected_ell},
                     {"expectedL", c.expected_big_l}};
  }
  j["discrepancies"] = c.discrepancies;
  j["ok"] = c.ok();
  return j;
}

CertificateSummary certificate_summary(const Json& j) {
  auto field = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw std::invalid_argument(std::string("certificate lacks field '") + key + "'");
    return j.at(key);
  };
  CertificateSummary s;
  s.variant = field("variant").get<std::string>();
  s.m = field("m").get<int>();
  s.vertices = field("V").get<int>();
  s.edges = field("E").get<int>();
  s.expected_edges = field("expectedE").get<int>();
  s.max_degree = field("maxDeg").get<int>();
  s.nu = field("nu").get<int>();
  if (j.contains("kParam") && !j.at("kParam").is_null()) s.k_param = j.at("kParam").get<int>();
  return s;
}

}  // namespace resmatch
