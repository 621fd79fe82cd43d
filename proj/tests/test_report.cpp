#include <doctest.h>

#include "oracles.hpp"
#include "resmatch/report.hpp"

using namespace resmatch;

TEST_CASE("spectrum JSON") {
  Json j = to_json(spectrum(oracle::path(5)));
  CHECK(j.at("nu") == 2);
  CHECK(j.at("ell") == 1);
  CHECK(j.at("L") == 2);
  CHECK(j.at("achieved") == Json::array({1, 2}));
  CHECK(j.at("matchings_enumerated") == 3);
  CHECK(j.at("truncated") == false);
  CHECK(j.at("witness_min").size() == 2);
  CHECK(j.dump() == to_json(spectrum(oracle::path(5))).dump());
}

TEST_CASE("colour classes and degree profile JSON") {
  Graph c6 = oracle::cycle(6);
  Json c = to_json(nu2_bipartite(c6, *bipartition(c6)));
  CHECK(c.at("size") == 6);
  CHECK(c.at("color0").size() == 3);
  CHECK(c.at("color1").size() == 3);
  Json d = to_json(degree_profile(oracle::path(5)));
  CHECK(d.at("histogram").at("1") == 2);
}

TEST_CASE("problem JSON carries null witness on no") {
  Json no = to_json(decide_problem1(oracle::path(5), 0, ToleranceFunction::constant(0)));
  CHECK(no.at("answer") == "no");
  CHECK(no.at("witness").is_null());
  Json yes = to_json(decide_problem1(oracle::path(5), 2, ToleranceFunction::constant(0)));
  CHECK(yes.at("witness_residual") == 2);
}

TEST_CASE("approx JSON prints exact ratios") {
  Json r = to_json(approx_trial(oracle::path(5), std::vector<std::uint64_t>{0}));
  REQUIRE(r.at("trials").size() == 1);
  CHECK(r.at("trials")[0].at("r_ell").is_string());
}

TEST_CASE("certificate JSON round trips through the summary") {
  CnfInstance cnf = make_cnf(3, {{1, -2, 3}});
  ReductionArtifact a = build_artifact(cnf, Variant::big_l);
  VerifyOptions options;
  options.exhaustive = true;
  Json j = to_json(verify_artifact(a, cnf, options));
  CHECK(j.at("ok") == true);
  CHECK(j.at("V") == 32);
  CHECK(j.at("E") == 36);
  CHECK(j.at("kParam") == 10);
  CHECK(j.at("spectrum").at("ell") == 9);
  CHECK(j.at("residualChecks").size() == 8);
  CertificateSummary s = certificate_summary(Json::parse(j.dump()));
  CHECK(s.variant == "L");
  CHECK(s.vertices == 32);
  CHECK(s.k_param == 10);

  Json ell = to_json(verify_artifact(build_artifact(cnf, Variant::ell), cnf));
  CHECK(ell.at("kParam").is_null());
  CHECK_FALSE(ell.contains("spectrum"));
  CHECK_FALSE(certificate_summary(ell).k_param);

  Json broken = j;
  broken.erase("E");
  CHECK_THROWS_AS(certificate_summary(broken), std::invalid_argument);
}
