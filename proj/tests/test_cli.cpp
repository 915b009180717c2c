#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;
using mqshape::cli::run;

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

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string first_data_header(const std::string& csv) {
  for (const auto& line : lines(csv))
    if (!line.empty() && line[0] != '#') return line;
  return {};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("fraction parsing") {
  CHECK(mqshape::cli::parse_real("1/30") == 1.0 / 30.0);
  CHECK(mqshape::cli::parse_real("-1") == -1.0);
  CHECK(mqshape::cli::parse_real("2.5e-1") == 0.25);
  CHECK_THROWS(mqshape::cli::parse_real("abc"));
  CHECK_THROWS(mqshape::cli::parse_real("1/0"));
}

TEST_CASE("constants document") {
  const Result r = call({"constants", "--n", "2", "--beta", "-1", "--b0", "1", "--delta", "1/30"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["meta"]["tool"] == "mqshape");
  CHECK(j["meta"]["command"] == "constants");
  CHECK(j["meta"]["case"] == "Case2");
  CHECK(j["meta"]["config"]["n"] == 2);
  CHECK(j["branch"] == "b");
  CHECK(j["C"] == 8.0);
  CHECK(j["rho"] == 1.0);
  CHECK(j["delta0_const"] == 1.0);
  CHECK(j["schedule"]["l"] == 2);
  CHECK(j.contains("lambda_prime"));
  CHECK(j.contains("delta_max"));
  CHECK(j.contains("s"));

  const Result pos = call({"constants", "--n", "1", "--beta", "1", "--b0", "1", "--sigma", "1"});
  CHECK(pos.code == 0);
  CHECK(json::parse(pos.out)["branch"] == "c");
  CHECK(json::parse(pos.out)["delta0_const"] == 0.25);
  const Result neg = call({"constants", "--n", "1", "--beta", "-1", "--b0", "1", "--sigma", "1"});
  CHECK(neg.code == 0);
  CHECK(json::parse(neg.out)["branch"] == "b");
}

TEST_CASE("points CSV") {
  const Result r = call({"points", "--n", "2", "--l", "2"});
  REQUIRE(r.code == 0);
  CHECK(first_data_header(r.out) == "index,x1,x2,k1,k2,k3");
  const auto all = lines(r.out);
  CHECK(all[0].rfind("# mqshape", 0) == 0);
  int rows = 0;
  for (const auto& line : all)
    if (!line.empty() && line[0] != '#') ++rows;
  CHECK(rows == 7);
  const Result j = call({"points", "--n", "3", "--l", "2", "--format", "json"});
  CHECK(json::parse(j.out)["points"].size() == 10);
}

TEST_CASE("mn-curve and optimal-c") {
  const Result curve = call({"mn-curve", "--n", "2", "--beta", "-1", "--l", "2", "--points", "50"});
  REQUIRE(curve.code == 0);
  CHECK(first_data_header(curve.out) == "c,mn_value");
  CHECK(curve.out.find("# case: Case2") != std::string::npos);

  const Result best = call({"optimal-c", "--n", "2", "--beta", "-1", "--sigma", "1", "--l", "2"});
  REQUIRE(best.code == 0);
  const json j = json::parse(best.out);
  CHECK(j["case"] == "Case2");
  CHECK(j["optimal_c"] == 5.0);
  CHECK(j["boundary_optimum"] == false);
  CHECK(j.contains("mn_at_optimum"));
  CHECK(j.contains("branch_note"));
  CHECK(j["diagnostics"].contains("iterations"));
  CHECK(j["diagnostics"].contains("bracket"));

  const Result c3 = call({"optimal-c", "--n", "1", "--beta", "-1", "--sigma", "1", "--delta", "1/30"});
  REQUIRE(c3.code == 0);
  const json k = json::parse(c3.out);
  CHECK(k["case"] == "Case3");
  CHECK(k["branch_note"].get<std::string>().find("right") != std::string::npos);
}

TEST_CASE("s_mn scales the bound but not the minimizer") {
  const std::vector<std::string> base{"optimal-c", "--n", "1", "--beta", "1", "--sigma", "1", "--delta", "1/60"};
  auto with = base;
  with.insert(with.end(), {"--s-mn", "1000"});
  const json a = json::parse(call(base).out);
  const json b = json::parse(call(with).out);
  CHECK(a["optimal_c"] == b["optimal_c"]);
  CHECK(b["bound_at_optimum"].get<double>() == doctest::Approx(std::sqrt(1000.0) * a["bound_at_optimum"].get<double>()));
}

TEST_CASE("fit from a data file and from the test function") {
  const auto dir = std::filesystem::temp_directory_path() / "mqshape_cli_test";
  std::filesystem::create_directories(dir);
  const auto data = dir / "data.csv";
  std::ofstream(data) << "x1,y\n0,1\n1,0\n";
  const Result r = call({"fit", "--beta", "-1", "--c", "1", "--data", data.string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  for (const char* key : {"beta", "c", "m", "centers", "coeffs", "poly_coeffs", "cond_estimate"}) CHECK(j.contains(key));
  CHECK(std::abs(j["coeffs"][0].get<double>() - 1.1283791670955126) < 1e-12);
  CHECK(std::abs(j["coeffs"][1].get<double>() + 0.7978845608028654) < 1e-12);

  const Result t = call({"fit", "--n", "2", "--beta", "1", "--c", "0.5", "--delta", "1/30"});
  REQUIRE(t.code == 0);
  CHECK(json::parse(t.out)["centers"].size() == 6);
  CHECK(call({"fit", "--beta", "-1", "--data", data.string()}).code == 2);
}

TEST_CASE("verify-bound and sweep") {
  const Result r = call({"verify-bound", "--n", "2", "--beta", "-1", "--b0", "1", "--sigma", "1", "--delta", "1/30",
                         "--c", "5"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["runs"].size() == 1);
  const json& run0 = j["runs"][0];
  CHECK(run0["holds"] == true);
  CHECK(run0["ratio"].get<double>() <= 1.0);
  for (const char* key : {"empirical_max_error", "bound_rhs", "cond_estimate", "node_residual"}) CHECK(run0.contains(key));

  const Result s = call({"sweep", "--n", "1", "--beta", "-1", "--sigma", "1", "--delta", "1/30", "--points", "8"});
  REQUIRE(s.code == 0);
  CHECK(first_data_header(s.out) == "c,empirical_max_error,bound_rhs,mn_value");
}

TEST_CASE("exit codes") {
  CHECK(call({"constants", "--n", "2", "--beta", "2"}).code == 2);
  CHECK(call({"constants", "--n", "2", "--beta", "-1", "--delta", "0.5"}).code == 2);
  CHECK(call({"optimal-c", "--n", "1", "--beta", "-0.5", "--l", "2"}).code == 3);
  CHECK(call({"verify-bound", "--n", "2", "--beta", "-1.5", "--delta", "0.01", "--c", "1"}).code == 3);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"mn-curve", "--n", "2", "--beta", "-1", "--l", "2", "--format", "xml"}).code == 2);
  CHECK(call({"fit", "--n", "1", "--beta", "-1", "--c", "1e4", "--l", "6"}).code == 4);
  CHECK(call({"--version"}).code == 0);
}

TEST_CASE("outputs are byte-identical across runs") {
  const auto dir = std::filesystem::temp_directory_path() / "mqshape_cli_test";
  std::filesystem::create_directories(dir);
  const auto svg = dir / "curve.svg";
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"mn-curve", "--n", "1", "--beta", "-1", "--l", "2", "--svg", svg.string()},
           {"sweep", "--n", "2", "--beta", "-1", "--delta", "1/30", "--points", "16"},
           {"verify-bound", "--n", "1", "--beta", "-1", "--delta", "1/30"}}) {
    std::vector<std::string> first = args, second = args;
    first.insert(first.end(), {"--out", (dir / "a.out").string()});
    second.insert(second.end(), {"--out", (dir / "b.out").string()});
    REQUIRE(call(first).code == 0);
    REQUIRE(call(second).code == 0);
    CHECK(slurp(dir / "a.out") == slurp(dir / "b.out"));
    CHECK(!slurp(dir / "a.out").empty());
  }
  const std::string picture = slurp(svg);
  CHECK(picture.rfind("<svg", 0) == 0);
  CHECK(picture.find("<polyline") != std::string::npos);
  CHECK(picture.find("<circle") != std::string::npos);
}
