#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "micsmp/cli.hpp"
#include "micsmp/exact.hpp"

using namespace micsmp;
using namespace micsmp::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string text;
  json doc() const { return json::parse(text); }
};

Run exact(ExactArgs args) {
  std::ostringstream out;
  const int code = cmd_exact(args, make_manifest("exact", {}), {}, out);
  return {code, out.str()};
}

Run simulate(SimulateArgs args) {
  std::ostringstream out;
  const int code = cmd_simulate(args, make_manifest("simulate", {}, args.seed), {}, out);
  return {code, out.str()};
}

Run verify(VerifyArgs args) {
  std::ostringstream out;
  const int code = cmd_verify(args, make_manifest("verify", {}), {}, out);
  return {code, out.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::ofstream(name) << body;
  return name;
}

}  // namespace

TEST_CASE("manifest timestamp honours SOURCE_DATE_EPOCH") {
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  const auto m = make_manifest("exact", {"--model", "@galanis"}, 5);
  CHECK(m.timestamp == "1970-01-01T00:00:00Z");
  const json j = to_json(m);
  CHECK(j["tool_version"] == std::string(kToolVersion));
  CHECK(j["seed"] == 5);
  CHECK(j["arguments"].size() == 2);
}

TEST_CASE("exact on builtin models") {
  auto g = exact({.model = "@galanis", .overrides = {.r = 1.0}, .init = "level:1:uniform"});
  CHECK(g.code == 0);
  CHECK(g.doc()["rho_alpha"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(g.doc().contains("manifest"));

  auto c = exact({.model = "@complete:5", .overrides = {.r = 2.0}, .init = "mask:1"});
  CHECK(c.code == 0);
  CHECK(c.doc()["rho_alpha"].get<double>() == doctest::Approx(16.0 / 31).epsilon(1e-12));

  auto it = exact({.model = "@complete:4", .overrides = {.r = 2.0}, .init = "mask:3", .solver = "iterative"});
  CHECK(it.code == 0);
  CHECK(it.doc()["solver"]["kind"] == "iterative");
  CHECK(it.doc()["rho_alpha"].get<double>() == doctest::Approx(moran_rho(2, 4, 2.0)).epsilon(1e-9));
}

TEST_CASE("exact error paths") {
  const auto path = write_temp("test_cli_bad.json", R"({"n":2,"W":[[0.5,0.6],[0.5,0.5]]})");
  auto bad = exact({.model = path});
  CHECK(bad.code == 2);
  CHECK(bad.doc()["error"]["code"] == "NotStochastic");
  std::remove(path.c_str());

  auto missing = exact({.model = "/nonexistent.json"});
  CHECK(missing.code == 1);
  CHECK(missing.doc()["error"]["code"] == "IoError");

  auto init = exact({.model = "@galanis", .init = "mask:7"});
  CHECK(init.code == 2);
  CHECK(init.doc()["error"]["code"] == "AtomOnAbsorbing");

  auto solver = exact({.model = "@galanis", .solver = "magic"});
  CHECK(solver.code == 2);
}

TEST_CASE("simulate") {
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  SimulateArgs args{.model = "@galanis", .overrides = {.r = 1.0}, .init = "mask:1",
                    .trials = 100000, .seed = 42};
  const auto first = simulate(args);
  CHECK(first.code == 0);
  const double f = first.doc()["frequency"].get<double>();
  CHECK(std::abs(f - 1.0 / 3) <= 3 * std::sqrt((1.0 / 3) * (2.0 / 3) / 1e5));
  args.workers = 3;
  CHECK(simulate(args).text == first.text);

  args.trials = 0;
  CHECK(simulate(args).code == 2);
  args.trials = 10;
  args.mode = "sometimes";
  CHECK(simulate(args).code == 2);
}

TEST_CASE("sweep") {
  std::ostringstream out;
  CHECK(cmd_sweep({.c = 1.0, .r = 4.0, .grid = 201}, out) == 0);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "a,m,F");
  int rows = 0, centre = 0;
  while (std::getline(in, line)) {
    ++rows;
    double a, m, value;
    char c1, c2;
    std::istringstream(line) >> a >> c1 >> m >> c2 >> value;
    if (m == 0.5) {
      ++centre;
      CHECK(std::abs(value - 1.0) <= 1e-12);
    }
  }
  CHECK(rows == 201 * 201);
  CHECK(centre == 201);

  std::ostringstream again;
  cmd_sweep({.c = 1.0, .r = 4.0, .grid = 201}, again);
  CHECK(again.str() == out.str());

  std::ostringstream sink;
  CHECK(cmd_sweep({.grid = 1}, sink) == 2);
  CHECK(cmd_sweep({.grid = 3, .out_path = "/nonexistent-dir/sweep.csv"}, sink) == 1);
}

TEST_CASE("verify on user models") {
  auto uniform = verify({.model = "@galanis", .overrides = {.mu = "uniform"}});
  CHECK(uniform.code == 0);
  const json checks = uniform.doc()["checks"];
  CHECK(checks["macro_markov_check"]["pass"] == false);
  CHECK(checks["ratio_constancy"]["max_deviation"].get<double>() > 0.0);

  auto complete = verify({.model = "@complete:4", .overrides = {.r = 1.0}});
  CHECK(complete.code == 0);
  CHECK(complete.doc()["checks"]["macro_markov_check"]["pass"] == true);
  CHECK(complete.doc()["pass"] == true);

  auto dump_without_model = verify({.dump_kernel = "kernel.csv"});
  CHECK(dump_without_model.code == 2);
}

TEST_CASE("kernel dump") {
  const std::string path = "test_cli_kernel.csv";
  auto res = verify({.model = "@n2:1,1", .overrides = {.r = 2.0}, .dump_kernel = path});
  CHECK(res.code == 0);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "from_mask,to_mask,prob");
  std::vector<std::pair<int, int>> keys;
  while (std::getline(in, line)) {
    int from, to;
    char c;
    std::istringstream(line) >> from >> c >> to;
    keys.emplace_back(from, to);
  }
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(keys.front() == std::pair{0, 0});
  CHECK(keys.back() == std::pair{3, 3});
  std::remove(path.c_str());
}
