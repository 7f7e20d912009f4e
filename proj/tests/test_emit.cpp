#include <cstring>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "weingarten/emit.hpp"
#include "weingarten/error.hpp"

using namespace weingarten;

namespace {

GeneratingCurve run(const WeingartenSpec& spec, double theta0 = 0.0) {
  return trace(spec, InitialConditions::with_angle(theta0));
}

}  // namespace

TEST_CASE("CSV round-trips bit-exactly") {
  auto c = run(LinearPrincipal{-2, 1});
  std::stringstream ss;
  const std::size_t bytes = write_curve(c, CurveFormat::CSV, ss);
  CHECK(bytes == ss.str().size());
  CHECK(ss.str().rfind("s,x,z,theta\n", 0) == 0);
  auto back = read_curve_csv(ss);
  REQUIRE(back.size() == c.samples.size());
  bool exact = true;
  for (std::size_t i = 0; i < back.size(); ++i) {
    exact = exact && std::memcmp(&back[i], &c.samples[i], sizeof(CurveState)) == 0;
  }
  CHECK(exact);
}

TEST_CASE("JSON schema") {
  auto c = run(GaussConstant{1});
  std::stringstream ss;
  write_curve(c, CurveFormat::JSON, ss);
  auto j = nlohmann::json::parse(ss.str());
  CHECK(j["spec"]["kind"] == "GaussConstant");
  CHECK(j["samples"].size() == c.samples.size());
  CHECK(j["samples"][0].size() == 4);
  CHECK(j["left_end"]["kind"] == "VerticalTangent");
  CHECK(j["right_end"]["kind"] == "VerticalTangent");
  CHECK(j["ic"]["theta0"] == 0.0);
}

TEST_CASE("empty curve") {
  GeneratingCurve empty;
  std::stringstream ss;
  CHECK_THROWS_AS(write_curve(empty, CurveFormat::CSV, ss), Error);
  CHECK_THROWS_AS(render_svg({empty}), Error);
  CHECK_THROWS_AS(sweep_mesh(empty, 1.0, 2), Error);
}

TEST_CASE("render_svg") {
  const std::string axis_only = render_svg({});
  CHECK(axis_only.find("<svg") != std::string::npos);
  CHECK(axis_only.find("ideal-boundary") != std::string::npos);
  CHECK(axis_only.find("<polyline") == std::string::npos);

  SvgStyle style;
  style.caption = "K = 1";
  style.labels = {"(a)"};
  auto k1 = run(GaussConstant{1});
  const std::string doc = render_svg({k1}, style);
  CHECK(doc.find("<polyline") != std::string::npos);
  CHECK(doc.find("K = 1") != std::string::npos);
  CHECK(doc == render_svg({k1}, style));

  style.caption = "k1 < 2 & k2 > 0";
  const std::string escaped = render_svg({k1}, style);
  CHECK(escaped.find("k1 &lt; 2 &amp; k2 &gt; 0") != std::string::npos);
}

TEST_CASE("sweep_mesh and OBJ") {
  auto flat = run(GaussConstant{0});
  auto strip = sweep_mesh(flat, 2.0, 2);
  CHECK(strip.cols == 2);
  for (const auto& v : strip.vertices) CHECK(v[2] == 1.0);

  GeneratingCurve hundred = flat;
  hundred.samples.resize(100);
  auto m = sweep_mesh(hundred, 1.0, 10);
  CHECK(m.vertices.size() == 1000);
  CHECK(m.faces.size() == 891);
  for (const auto& f : m.faces) {
    for (auto idx : f) CHECK(idx < m.vertices.size());
  }

  auto curved = sweep_mesh(run(LinearPrincipal{-2, 1}), 0.5, 4);
  for (const auto& v : curved.vertices) CHECK(v[2] > 0.0);

  std::stringstream a, b;
  write_obj(m, a);
  write_obj(m, b);
  CHECK(a.str() == b.str());
  std::size_t vlines = 0, flines = 0;
  std::string line;
  while (std::getline(a, line)) {
    vlines += line.rfind("v ", 0) == 0;
    flines += line.rfind("f ", 0) == 0;
  }
  CHECK(vlines == 1000);
  CHECK(flines == 891);
  CHECK_THROWS_AS(sweep_mesh(flat, 1.0, 1), Error);
}

TEST_CASE("classification JSON") {
  auto spec = WeingartenSpec{LinearPrincipal{-2, 1}};
  auto c = run(spec);
  auto rep = predict(spec, 0);
  auto j = nlohmann::json::parse(classification_json(spec, 0, rep, verify(spec, c, rep)));
  CHECK(j["regime"] == "LWConcaveGraph");
  CHECK(j["verification"]["passed"] == true);
  CHECK(j["quantitative"]["contact_angle"].get<double>() == doctest::Approx(1.230959).epsilon(1e-6));
}
