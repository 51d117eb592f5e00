// End-to-end tests for the capinf executable: exit-code contract, output
// determinism, format switches, and validation messages, all via subprocess.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(CAPINF_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) result.out += buf;
  const int status = pclose(pipe);
  result.code = WEXITSTATUS(status);
  return result;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

const char* kRadialConfig = R"({
  "schema": 1,
  "space": {"n": 3, "gamma": 0.5},
  "exterior": {"schema": 1, "family": "bounded_obstacle", "params": {"radius": 1.0}},
  "grid": {"cells": 32},
  "rmax": 2.0
})";

}  // namespace

TEST_CASE("capacity: radial config lands near the exact value, exit 0") {
  write_file("cli_radial.json", kRadialConfig);
  RunResult r = run("capacity --config cli_radial.json");
  REQUIRE(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  const double value = doc["results"]["value"].get<double>();
  const double exact = doc["results"]["radial_exact"].get<double>();
  CHECK(std::abs(value - exact) / exact < 0.02);
  // Provenance: resolved config and tool version ride along.
  CHECK(doc["config"]["space"]["gamma"].get<double>() == 0.5);
  CHECK(doc["version"].is_string());
}

TEST_CASE("capacity: identical config gives byte-identical output") {
  write_file("cli_radial.json", kRadialConfig);
  RunResult a = run("capacity --config cli_radial.json --grid 16");
  RunResult b = run("capacity --config cli_radial.json --grid 16");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("capacity: empty exterior is a zero-capacity success") {
  write_file("cli_empty.json", R"({
    "schema": 1,
    "space": {"n": 3, "gamma": 0.0},
    "exterior": {"schema": 1, "family": "union_of_balls", "params": {"balls": []}},
    "grid": {"cells": 16},
    "rmax": 2.0
  })");
  RunResult r = run("capacity --config cli_empty.json");
  REQUIRE(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"]["value"].get<double>() == 0.0);
  CHECK(doc["results"]["empty_interior"].get<int>() == 1);
}

TEST_CASE("wiener: csv output carries metadata lines and the term table") {
  write_file("cli_half.json", R"({
    "schema": 1,
    "space": {"n": 3, "gamma": 0.0},
    "exterior": {"schema": 1, "family": "half_space"},
    "grid": {"cells": 16}
  })");
  RunResult r = run("wiener --config cli_half.json --window 3..4 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# tool=capinf", 0) == 0);
  CHECK(r.out.find("k,term") != std::string::npos);
  CHECK(r.out.find("\n3,") != std::string::npos);
  CHECK(r.out.find("\n4,") != std::string::npos);
}

TEST_CASE("classify: verdict and series come back for a chain geometry") {
  write_file("cli_chain.json", R"({
    "schema": 1,
    "space": {"n": 3, "gamma": 0.0},
    "exterior": {"schema": 1, "family": "dyadic_ball_chain",
                 "params": {"radius_rule": {"type": "power", "p": 2.0}}},
    "grid": {"cells": 16},
    "window": {"first": 3, "last": 9}
  })");
  RunResult r = run("classify --config cli_chain.json");
  REQUIRE(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"]["verdict"].is_string());
  CHECK(doc["results"].contains("slope"));
  CHECK(doc["table"]["rows"].size() == 7);
}

TEST_CASE("validation failures exit 2 with a message") {
  write_file("cli_badgamma.json", R"({
    "schema": 1,
    "space": {"n": 3, "gamma": -1.0},
    "exterior": {"schema": 1, "family": "half_space"}
  })");
  RunResult r = run("capacity --config cli_badgamma.json");
  CHECK(r.code == 2);
  CHECK(r.out.find("gamma > 2 - n") != std::string::npos);

  CHECK(run("capacity").code == 2);                  // no exterior anywhere
  CHECK(run("capacity --window 3..").code == 2);     // malformed window
  CHECK(run("capacity --rmax nope").code == 2);      // malformed radius
  CHECK(run("definitely-not-a-command").code == 2);  // unknown subcommand
}

TEST_CASE("harmonic-measure: probe inside the obstacle exits 2") {
  write_file("cli_badprobe.json", R"({
    "schema": 1,
    "space": {"n": 3, "gamma": 0.0},
    "exterior": {"schema": 1, "family": "bounded_obstacle", "params": {"radius": 1.0}},
    "grid": {"cells": 16},
    "rmax": 16.0,
    "probes": [[0.5, 0, 0]]
  })");
  RunResult r = run("harmonic-measure --config cli_badprobe.json");
  CHECK(r.code == 2);
  CHECK(r.out.find("outside the domain") != std::string::npos);
}

TEST_CASE("uniqueness: dyadic rmax form steers the schedule") {
  write_file("cli_half.json", R"({
    "schema": 1,
    "space": {"n": 3, "gamma": 0.0},
    "exterior": {"schema": 1, "family": "half_space"},
    "grid": {"cells": 16},
    "probes": [[1.0, 0, 0]]
  })");
  RunResult r = run("uniqueness --config cli_half.json --rmax 2^5 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# verdict=") != std::string::npos);
  CHECK(r.out.find("\n32,") != std::string::npos);   // last schedule entry
  CHECK(r.out.find("\n64,") == std::string::npos);   // honors the cap
}

TEST_CASE("verify: named suite passes, unknown suite exits 2") {
  RunResult good = run("verify capacity-properties");
  CHECK(good.code == 0);
  CHECK(good.out.find("suite capacity-properties") != std::string::npos);
  CHECK(good.out.find("FAIL") == std::string::npos);

  RunResult bad = run("verify no-such-suite");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("unknown suite") != std::string::npos);
}
