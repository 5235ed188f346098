#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sp/cli.hpp"
#include "sp/errors.hpp"
#include "sp/io.hpp"

using namespace sp;
using nlohmann::json;

namespace {

struct CoutCapture {
  std::ostringstream buffer;
  std::streambuf* saved;
  CoutCapture() : saved(std::cout.rdbuf(buffer.rdbuf())) {}
  ~CoutCapture() { std::cout.rdbuf(saved); }
  std::string str() const { return buffer.str(); }
};

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("models load from json documents") {
  SpModel h = model_from_json(json::parse(R"({"kind":"hilbert","dim":3})"));
  CHECK(h.kind == ModelKind::Hilbert);
  CHECK(h.dimension == 3);

  SpModel c = model_from_json(json::parse(R"({"kind":"classical","n":5})"));
  CHECK(c.kind == ModelKind::Classical);
  CHECK(c.dimension == 5);

  SpModel s =
      model_from_json(json::parse(R"({"kind":"sectored","dims":[2,3]})"));
  CHECK(s.kind == ModelKind::Sectored);
  CHECK(s.sectors == std::vector<Index>{2, 3});

  SpModel t = model_from_json(
      json::parse(R"({"kind":"matrix","n":2,"p":[[1.0,0.1],[0.2,1.0]]})"));
  CHECK(t.kind == ModelKind::Matrix);
  CHECK(t.table(0, 1) == 0.1);
  CHECK(t.table(1, 0) == 0.2);
}

TEST_CASE("model schema errors are reported as such") {
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"dim":3})")), SchemaError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"frobnitz"})")),
                  SchemaError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"hilbert"})")),
                  SchemaError);
  CHECK_THROWS_AS(
      model_from_json(json::parse(R"({"kind":"matrix","n":2,"p":[[1.0]]})")),
      SchemaError);
  CHECK_THROWS_AS(
      model_from_json(json::parse(R"({"kind":"sectored","dims":[]})")),
      SchemaError);
}

TEST_CASE("builtin descriptors and files both load") {
  CHECK(load_model("builtin:hilbert:4").dimension == 4);
  CHECK(load_model("builtin:classical:6").dimension == 6);
  CHECK(load_model("builtin:sectored:2,3,4").sectors ==
        std::vector<Index>{2, 3, 4});

  auto path = write_temp("sp_model_ok.json", R"({"kind":"hilbert","dim":2})");
  CHECK(load_model(path.string()).dimension == 2);

  CHECK_THROWS_AS(load_model("builtin:hilbert:zero"), ParseError);
  CHECK_THROWS_AS(load_model("builtin:nosuch:3"), ParseError);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ParseError);
  auto bad = write_temp("sp_model_bad.json", "{not json");
  CHECK_THROWS_AS(load_model(bad.string()), ParseError);
}

TEST_CASE("states round-trip through json") {
  SpModel m = make_hilbert(2);
  State x = state_from_json(
      json::parse(
          R"({"kind":"hilbert_state","dim":2,"amplitudes":[[0.6,0.0],[0.0,0.8]]})"),
      m);
  CHECK(std::abs(similarity(m, x, canonical_state(m, 0)) - 0.36) <= 1e-12);

  auto j = state_to_json(m, x);
  State back = state_from_json(j, m);
  CHECK(states_equivalent(m, back, x));

  SpModel s = make_sectored({2, 2});
  State y = state_from_json(
      json::parse(
          R"({"kind":"sectored_state","sector":1,"amplitudes":[[1.0,0.0],[0.0,0.0]]})"),
      s);
  CHECK(states_equivalent(s, y, canonical_state(s, 2)));
  CHECK(states_equivalent(s, state_from_json(state_to_json(s, y), s), y));

  SpModel c = make_classical(3);
  State z = state_from_json(
      json::parse(R"({"kind":"classical_state","index":2})"), c);
  CHECK(std::get<ClassicalState>(z).index == 2);

  CHECK_THROWS_AS(
      state_from_json(
          json::parse(
              R"({"kind":"hilbert_state","dim":2,"amplitudes":[[1.0,0.0],[1.0,0.0]]})"),
          m),
      InvalidState);
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"kind":"other"})"), m),
                  SchemaError);
}

TEST_CASE("observables load from hermitian and spectral fixtures") {
  SpModel m = make_hilbert(2);
  Observable h = observable_from_json(
      json::parse(
          R"({"kind":"hermitian","dim":2,
              "matrix":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[-1.0,0.0]]]})"),
      m);
  CHECK(h.parts.size() == 2);
  CHECK(h.bound() == 1.0);

  Observable sp_obs = observable_from_json(
      json::parse(
          R"({"kind":"spectral","parts":[
                {"lambda":2.0,"basis":[[[1.0,0.0],[0.0,0.0]]]},
                {"lambda":1.0,"basis":[[[0.0,0.0],[1.0,0.0]]]}]})"),
      m);
  CHECK(sp_obs.parts.size() == 2);
  CHECK(std::abs(mean_value(m, sp_obs, canonical_state(m, 0)) - 2.0) <=
        1e-12);

  SpModel c = make_classical(2);
  Observable co = observable_from_json(
      json::parse(R"({"kind":"spectral","parts":[
                {"lambda":5.0,"basis":[0]},
                {"lambda":-1.0,"basis":[1]}]})"),
      c);
  CHECK(std::abs(mean_value(c, co, ClassicalState{0}) - 5.0) <= 1e-15);

  CHECK_THROWS_AS(observable_from_json(json::parse(R"({"kind":"x"})"), m),
                  SchemaError);
  CHECK_THROWS_AS(
      observable_from_json(
          json::parse(R"({"kind":"hermitian","dim":2,"matrix":[[1,2]]})"), m),
      SchemaError);
}

TEST_CASE("the cli checks models and reports through exit codes") {
  {
    CoutCapture cap;
    int rc = run_cli({"check", "--model", "builtin:hilbert:2",
                      "--samples", "60", "--seed", "5"});
    CHECK(rc == 0);
    auto doc = json::parse(cap.str());
    CHECK(doc["all_pass"] == true);
    CHECK(doc["reports"].size() == 9);
    CHECK(doc["config"]["seed"] == 5);
  }
  {
    auto bad = write_temp("sp_cli_bad.json",
                          R"({"kind":"matrix","n":2,"p":[[1.0,0.1],[0.2,1.0]]})");
    CoutCapture cap;
    int rc = run_cli({"check", "--model", bad.string()});
    CHECK(rc == 1);
    auto doc = json::parse(cap.str());
    CHECK(doc["all_pass"] == false);
  }
  {
    CoutCapture cap;
    int rc = run_cli({"fuzz", "--model", "builtin:hilbert:2",
                      "--samples", "40", "--rounds", "2"});
    CHECK(rc == 0);
  }
  {
    CoutCapture cap;
    int rc = run_cli({"check", "--model", "builtin:classical:3",
                      "--samples", "50", "--text"});
    CHECK(rc == 0);
    CHECK(cap.str().find("pass") != std::string::npos);
  }
}

TEST_CASE("the cli demos exercise the showcase paths") {
  for (const char* name : {"spin-half", "two-path", "pauli"}) {
    CoutCapture cap;
    CHECK(run_cli({"demo", name}) == 0);
    CHECK_FALSE(cap.str().empty());
  }
}

TEST_CASE("usage and schema problems exit with code two") {
  CoutCapture cap;
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"check"}) == 2);  // --model is required
  CHECK(run_cli({"demo", "nosuch"}) == 2);
  CHECK(run_cli({"check", "--model", "builtin:quux:1"}) == 2);
  CHECK(run_cli({"check", "--model", "/nope/missing.json"}) == 2);
  CHECK(run_cli({"check", "--model", "builtin:hilbert:2", "--tol",
                 "0.5"}) == 2);
}

TEST_CASE("the seed environment variable supplies the default") {
  setenv("SPCHECK_SEED", "97", 1);
  CoutCapture cap;
  int rc = run_cli({"check", "--model", "builtin:hilbert:2",
                    "--samples", "30"});
  unsetenv("SPCHECK_SEED");
  CHECK(rc == 0);
  auto doc = json::parse(cap.str());
  CHECK(doc["config"]["seed"] == 97);
}
