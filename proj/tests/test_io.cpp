#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "wickrot/io.hpp"

using namespace wick;

namespace {

Json minimal_s2_doc() {
  return Json{{"dimension", 2},
              {"signature", {2, 0}},
              {"riemann", {Json{{"idx", {0, 1, 0, 1}}, {"re", 1.0}, {"im", 0.0}}}}};
}

}  // namespace

TEST_CASE("a single representative expands to the unit sphere bundle") {
  const CurvatureBundle b = parse_document(minimal_s2_doc());
  CHECK(b.metric.signature == Signature{2, 0});
  CHECK(b.riemann.at(0, {0, 1, 0, 1}) == Complex(1.0, 0.0));
  CHECK(b.riemann.at(0, {1, 0, 1, 0}) == Complex(1.0, 0.0));
  int nonzero = 0;
  for (const Complex& c : b.riemann.comps) nonzero += (c != Complex(0.0, 0.0));
  CHECK(nonzero == 4);
}

TEST_CASE("an empty riemann list is the flat bundle") {
  const CurvatureBundle b = parse_document(
      Json{{"dimension", 3}, {"signature", {1, 2}}, {"riemann", Json::array()}});
  CHECK(b.riemann.max_abs() == 0.0);
  CHECK(b.metric.signature == Signature{1, 2});
}

TEST_CASE("schema violations reject with ParseError") {
  // Antisymmetry conflict.
  Json conflict = minimal_s2_doc();
  conflict["riemann"].push_back(Json{{"idx", {1, 0, 0, 1}}, {"re", 1.0}});
  CHECK_THROWS_AS(parse_document(conflict), ParseError);

  // Complex component.
  Json complex_comp = minimal_s2_doc();
  complex_comp["riemann"][0]["im"] = 0.5;
  CHECK_THROWS_AS(parse_document(complex_comp), ParseError);

  // Out-of-range index.
  Json bad_idx = minimal_s2_doc();
  bad_idx["riemann"][0]["idx"] = {0, 1, 0, 7};
  CHECK_THROWS_AS(parse_document(bad_idx), ParseError);

  // Signature mismatch and missing fields.
  CHECK_THROWS_AS(parse_document(Json{{"dimension", 3}, {"signature", {2, 0}}}), ParseError);
  CHECK_THROWS_AS(parse_document(Json{{"signature", {2, 0}}}), ParseError);

  // A lone R_0123 representative violates the first Bianchi identity.
  const Json bianchi{{"dimension", 4},
                     {"signature", {4, 0}},
                     {"riemann", {Json{{"idx", {0, 1, 2, 3}}, {"re", 1.0}}}}};
  CHECK_THROWS_WITH_AS(parse_document(bianchi), doctest::Contains("Bianchi"), ParseError);
}

TEST_CASE("catalog emit/parse round trip is bit exact") {
  for (const std::string& name : {"s2xs2", "lorentz_L", "neutral_N", "ppwave_vsi", "flat"}) {
    const CurvatureBundle original = catalog_metric(name);
    const CurvatureBundle back = parse_document(emit_document(original));
    REQUIRE(back.riemann.comps.size() == original.riemann.comps.size());
    for (std::size_t i = 0; i < back.riemann.comps.size(); ++i) {
      CHECK(back.riemann.comps[i] == original.riemann.comps[i]);
    }
    CHECK(back.metric.signature == original.metric.signature);
  }
}

TEST_CASE("derivative tensors parse with trailing-four completion") {
  Json doc = minimal_s2_doc();
  doc["derivatives"] = Json::array();
  doc["derivatives"].push_back(
      Json::array({Json{{"idx", {0, 0, 1, 0, 1}}, {"re", 2.0}, {"im", 0.0}}}));
  const CurvatureBundle b = parse_document(doc);
  REQUIRE(b.derivatives.size() == 1);
  CHECK(b.derivatives[0].at(0, {0, 0, 1, 0, 1}) == Complex(2.0, 0.0));
  CHECK(b.derivatives[0].at(0, {0, 1, 0, 0, 1}) == Complex(-2.0, 0.0));
  CHECK(b.derivatives[0].at(0, {0, 0, 1, 1, 0}) == Complex(-2.0, 0.0));

  const CurvatureBundle back = parse_document(emit_document(b));
  REQUIRE(back.derivatives.size() == 1);
  for (std::size_t i = 0; i < back.derivatives[0].comps.size(); ++i) {
    CHECK(back.derivatives[0].comps[i] == b.derivatives[0].comps[i]);
  }
}

TEST_CASE("file round trip through write_document/parse_input") {
  const std::string path = "io_roundtrip_tmp.json";
  const CurvatureBundle original = catalog_metric("neutral_N");
  write_document(original, path);
  const CurvatureBundle back = parse_input(path);
  for (std::size_t i = 0; i < back.riemann.comps.size(); ++i) {
    CHECK(back.riemann.comps[i] == original.riemann.comps[i]);
  }
  std::remove(path.c_str());

  CHECK_THROWS_AS(parse_input("definitely_missing_file.json"), ParseError);

  std::ofstream bad("io_bad_tmp.json");
  bad << "{ not json";
  bad.close();
  CHECK_THROWS_AS(parse_input("io_bad_tmp.json"), ParseError);
  std::remove("io_bad_tmp.json");
}

TEST_CASE("report builders echo configuration") {
  FlowConfig config;
  config.seed = 7;
  const Json j = config_json(config);
  CHECK(j["seed"] == 7);
  CHECK(j["grad_tol"] == 1e-10);
  CHECK(j["blowup_bound"] == 1e8);

  const CurvatureBundle flat = catalog_metric("flat");
  const FlowResult r = norm_flow(flow_vector(flat), GroupSpec::real(flat.metric.signature), config);
  const Json fj = flow_json(r);
  CHECK(fj["verdict"] == "converged-in-orbit");
  CHECK(fj["config"]["seed"] == 7);
}
