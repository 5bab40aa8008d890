#include <doctest.h>

#include <fstream>

#include "micsmp/error.hpp"
#include "micsmp/model_io.hpp"

using namespace micsmp;
using nlohmann::json;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("numbers and rationals") {
  CHECK(parse_number(json(0.25)) == 0.25);
  CHECK(parse_number(json("1/4")) == 0.25);
  CHECK(parse_number(json("3/7")) == 3.0 / 7);
  CHECK(parse_number(json(" 0.5 ")) == 0.5);
  CHECK(parse_number(std::string_view("-2/3")) == -2.0 / 3);
  CHECK(code_of([] { parse_number(std::string_view("1/0")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_number(std::string_view("abc")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_number(json::array()); }) == ErrorCode::ParseError);
}

TEST_CASE("model documents") {
  const json doc = {{"n", 3},
                    {"W", {{0, "1/4", "3/4"}, {"1/4", 0, "3/4"}, {"1/2", "1/2", 0}}},
                    {"r", 2}};
  const auto model = parse_model(doc);
  CHECK(model.n() == 3);
  CHECK(model.fitness() == 2.0);
  CHECK(model.has_stationary_selection());
  CHECK(model.policy()[2] == doctest::Approx(3.0 / 7));

  json with_mu = doc;
  with_mu["mu"] = "uniform";
  CHECK(parse_model(with_mu).policy()[0] == doctest::Approx(1.0 / 3));
  with_mu["mu"] = {"1/2", "1/4", "1/4"};
  CHECK(parse_model(with_mu).policy()[1] == 0.25);

  const auto overridden = parse_model(doc, {.r = 0.5, .mu = "0.2,0.3,0.5"});
  CHECK(overridden.fitness() == 0.5);
  CHECK(overridden.policy()[2] == 0.5);

  json defaults = {{"W", {{0, 1}, {1, 0}}}};
  CHECK(parse_model(defaults).fitness() == 1.0);

  json bad_row = doc;
  bad_row["W"][0] = {0, 0.5, 0.6};
  CHECK(code_of([&] { parse_model(bad_row); }) == ErrorCode::NotStochastic);
  json bad_n = doc;
  bad_n["n"] = 4;
  CHECK(code_of([&] { parse_model(bad_n); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_model(json::array()); }) == ErrorCode::ParseError);
  json bad_r = doc;
  bad_r["r"] = -1;
  CHECK(code_of([&] { parse_model(bad_r); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("builtin models") {
  const auto galanis = load_model("@galanis", {.r = 1.0});
  CHECK(galanis.n() == 3);
  CHECK(galanis.weights()(2, 0) == 0.5);
  CHECK(galanis.has_stationary_selection());
  CHECK(load_model("@complete:5").n() == 5);
  const auto n2 = load_model("@n2:1/2,1/4", {.r = 3.0});
  CHECK(n2.weights()(0, 1) == 0.5);
  CHECK(n2.weights()(1, 0) == 0.25);
  CHECK(n2.fitness() == 3.0);
  CHECK(code_of([] { load_model("@nope"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { load_model("@complete:1"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { load_model("/nonexistent/model.json"); }) == ErrorCode::IoError);
}

TEST_CASE("model files") {
  const std::string path = "test_model_io_model.json";
  {
    std::ofstream out(path);
    out << R"({"n": 2, "W": [[0, 1], [1, 0]], "mu": "uniform", "r": "3/2"})";
  }
  const auto model = load_model(path);
  CHECK(model.fitness() == 1.5);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK(code_of([&] { load_model(path); }) == ErrorCode::ParseError);
  std::remove(path.c_str());
}

TEST_CASE("initial distribution specs") {
  auto single = parse_init("mask:1", 3);
  REQUIRE(single.atoms().size() == 1);
  CHECK(single.atoms()[0].x.bits == 1);
  CHECK(parse_init("6", 3).atoms()[0].x.bits == 6);
  CHECK(parse_init("level:2:uniform", 4).atoms().size() == 6);
  const auto atoms = parse_init("atoms:[(1, 1/3), (2,1/3),(4, 1/3)]", 3);
  REQUIRE(atoms.atoms().size() == 3);
  CHECK(atoms.atoms()[2].weight == doctest::Approx(1.0 / 3));

  CHECK(code_of([] { parse_init("mask:7", 3); }) == ErrorCode::AtomOnAbsorbing);
  CHECK(code_of([] { parse_init("mask:8", 3); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_init("level:0:uniform", 3); }) == ErrorCode::LevelOutOfRange);
  CHECK(code_of([] { parse_init("level:1", 3); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_init("atoms:[]", 3); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_init("atoms:[(1,0.5)]", 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("report encodings") {
  const auto model = load_model("@complete:3", {.r = 2.0});
  const auto report = fixation_probabilities(model);
  const json j = to_json(report, 2.0);
  CHECK(j["rho"].size() == 8);
  CHECK(j["rho"][1]["mask"] == 1);
  CHECK(j["rho"][1]["value"].get<double>() == doctest::Approx(4.0 / 7));
  CHECK(j.contains("solver"));
  CHECK_FALSE(j.contains("rho_alpha"));
}
