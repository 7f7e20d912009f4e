#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "weingarten/error.hpp"
#include "weingarten/emit.hpp"

using weingarten::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("trace --K 1 --format csv") {
  auto r = call({"trace", "--K", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  auto samples = weingarten::read_curve_csv(is);
  REQUIRE(samples.size() > 10);
  CHECK(samples.front().s == doctest::Approx(-0.881374).epsilon(1e-6));
  CHECK(samples.back().s == doctest::Approx(0.881374).epsilon(1e-6));
}

TEST_CASE("trace json to a file") {
  auto r = call({"trace", "--m", "3", "--n", "1", "--format", "json", "--out", "cli_trace.json"});
  REQUIRE(r.code == 0);
  std::ifstream is("cli_trace.json");
  auto j = nlohmann::json::parse(is);
  CHECK(j["spec"]["m"] == 3.0);
}

TEST_CASE("--a/--b/--c matches --m/--n") {
  auto abc = call({"trace", "--a", "2", "--b", "4", "--c", "6", "--theta0", "1.5707963267948966"});
  auto mn = call({"trace", "--m", "-2", "--n", "3", "--theta0", "1.5707963267948966"});
  REQUIRE(abc.code == 0);
  CHECK(abc.out == mn.out);
}

TEST_CASE("classify --m -2 --n 1") {
  auto r = call({"classify", "--m", "-2", "--n", "1"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verification"]["passed"] == true);
  CHECK(j["quantitative"]["contact_angle"].get<double>() == doctest::Approx(1.230959).epsilon(1e-6));
}

TEST_CASE("constant principal curvature") {
  auto r = call({"classify", "--a", "0", "--b", "1", "--c", "0.5"});
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["regime"] == "ConstantPC");
  CHECK(call({"trace", "--a", "0", "--b", "1", "--c", "0.5"}).code == 2);
}

TEST_CASE("help exits 0") {
  auto r = call({"trace", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--theta0") != std::string::npos);
}

TEST_CASE("mesh") {
  auto r = call({"mesh", "--K", "0", "--t-width", "1e0", "--cols", "3", "--out", "cli_mesh.obj"});
  REQUIRE(r.code == 0);
  std::ifstream is("cli_mesh.obj");
  std::string first;
  std::getline(is, first);
  CHECK(first.rfind("v ", 0) == 0);
}

TEST_CASE("figures") {
  std::filesystem::remove_all("cli_figs");
  auto r = call({"figures", "--out-dir", "cli_figs"});
  CHECK(r.code == 0);
  std::size_t n = 0;
  for (const auto& e : std::filesystem::directory_iterator("cli_figs")) n += e.path().extension() == ".svg";
  CHECK(n == 6);
}

TEST_CASE("flag errors exit 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"trace"}).code == 2);
  CHECK(call({"trace", "--K", "1", "--m", "2", "--n", "1"}).code == 2);
  CHECK(call({"trace", "--m", "2"}).code == 2);
  CHECK(call({"trace", "--K", "abc"}).code == 2);
  CHECK(call({"trace", "--K", "1", "--format", "xml"}).code == 2);
  CHECK(call({"trace", "--a", "1", "--b", "-1", "--c", "0"}).code == 2);
  CHECK(call({"mesh", "--K", "0", "--t-width", "1", "--cols", "1", "--out", "x.obj"}).code == 2);
  auto r = call({"figures"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("config file") {
  {
    std::ofstream os("cli_good.cfg");
    os << "# shorter trace\ns_max = 2.5\nrel_tol = 1e-11\n";
  }
  {
    std::ofstream os("cli_bad.cfg");
    os << "s_maxx = 3\n";
  }
  auto good = call({"--config", "cli_good.cfg", "trace", "--K", "0"});
  REQUIRE(good.code == 0);
  std::istringstream is(good.out);
  auto samples = weingarten::read_curve_csv(is);
  CHECK(samples.back().s == doctest::Approx(2.5));
  CHECK(call({"--config", "cli_bad.cfg", "trace", "--K", "0"}).code == 2);
  CHECK(call({"--config", "missing.cfg", "trace", "--K", "0"}).code == 2);

  std::istringstream bad_value("z_floor = 2\n");
  CHECK_THROWS_AS(weingarten::cli::parse_config(bad_value), weingarten::Error);
  std::istringstream rk("integrator = rk4\nstop_at_symmetry = true\n");
  auto o = weingarten::cli::parse_config(rk);
  CHECK(o.integrator == weingarten::Integrator::FixedRK4);
  CHECK(o.stop_at_symmetry);
}
