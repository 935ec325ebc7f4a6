#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "unruhqi/commands.hpp"

using namespace unruhqi;
using namespace unruhqi::cli;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const auto tmp = std::filesystem::temp_directory_path() / "unruhqi_test_commands.out";
  const std::string cmd = std::string(UNRUHQI_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::filesystem::remove(tmp);
  return r;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("parse_range") {
  const auto r = parse_range("0.1:2.0:0.1").values();
  REQUIRE(r.size() == 20);
  CHECK(r.front() == doctest::Approx(0.1));
  CHECK(r.back() == doctest::Approx(2.0));
  CHECK(parse_range("0.5").values() == std::vector<double>{0.5});
  CHECK_THROWS_AS(parse_range("1:0:0.1").values(), UsageError);
  CHECK_THROWS_AS(parse_range("0:1:0"), UsageError);
  CHECK_THROWS_AS(parse_range("abc"), UsageError);
  CHECK_THROWS_AS(parse_range("0:1"), UsageError);
}

TEST_CASE("parse names") {
  CHECK(parse_measure("pi_tangle") == Measure::PiTangle);
  CHECK(measure_name(Measure::Geo1) == "geo1");
  CHECK(is_tripartite(Measure::GlobalDiscord));
  CHECK_FALSE(is_tripartite(Measure::Discord));
  CHECK_THROWS_AS(parse_measure("concurrence"), UsageError);
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_family("unruh") == Family::Unruh);
}

TEST_CASE("sweep config validation") {
  SweepConfig c;
  c.measure = Measure::PiTangle;
  c.qr2 = parse_range("0.5");
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.measure = Measure::Discord;
  CHECK_NOTHROW(c.validate());
  c.qr2 = parse_range("1.5");
  CHECK_THROWS(c.validate());
}

TEST_CASE("negativity sweep at p = 1 is flat") {
  SweepConfig c;
  c.measure = Measure::Negativity;
  c.omega = parse_range("0.1:2.0:0.1");
  c.p = parse_range("1");
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 20);
  for (const auto& r : rows) {
    CHECK_FALSE(r.error.has_value());
    CHECK(format_number(r.value) == "1.00000000");
  }
  std::ostringstream csv;
  write_csv(rows, csv);
  CHECK(csv.str().rfind("omega,p,qr2,measure,value\n", 0) == 0);
  CHECK(count_lines(csv.str()) == 21);
}

TEST_CASE("geometric sweep and determinism") {
  SweepConfig c;
  c.measure = Measure::Geo2;
  c.omega = parse_range("0.3:0.5:0.1");
  c.p = parse_range("0:1:0.25");
  c.grid = GridSpec{31, 31, 3, 0.25};
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 15);
  for (const auto& r : rows) CHECK(r.value == doctest::Approx(r.p * r.p / 2).epsilon(1e-8));

  std::ostringstream a, b, j;
  write_csv(rows, a);
  c.threads = 1;
  write_csv(run_sweep(c), b);
  CHECK(a.str() == b.str());
  write_json(rows, j);
  CHECK(j.str().front() == '[');
  CHECK(j.str().find("\"measure\": \"geo2\"") != std::string::npos);
}

TEST_CASE("checks_to_json keys") {
  const std::vector<CheckResult> checks{{"x", 1, 1.0, 0.5, 0.1, false, "detail"}};
  const auto json = checks_to_json(checks);
  for (const char* key : {"\"id\"", "\"expected\"", "\"observed\"", "\"tolerance\"", "\"pass\""})
    CHECK(json.find(key) != std::string::npos);
  CHECK(json.find("false") != std::string::npos);
}

TEST_CASE("state command output") {
  std::ostringstream os;
  StateConfig c;
  c.family = Family::Bipartite;
  c.p = 0.5;
  CHECK(cmd_state(c, os) == kExitOk);
  const auto s = os.str();
  CHECK(s.find("0.375000") != std::string::npos);
  CHECK(s.find("0.250000") != std::string::npos);
  CHECK(s.find("trace") != std::string::npos);
  CHECK(s.find("psd") != std::string::npos);
}

TEST_CASE("command-line binary") {
  CHECK(run_cli("").code == kExitUsage);
  CHECK(run_cli("sweep --measure nope --omega 0.5 --p 1").code == kExitUsage);
  CHECK(run_cli("sweep --measure negativity --omega 0:1:-1 --p 1").code == kExitUsage);
  CHECK(run_cli("sweep --measure pi_tangle --omega 0.5 --p 1 --qr2 0.5").code == kExitUsage);

  const auto sweep = run_cli("sweep --measure negativity --omega 0.1:2.0:0.1 --p 1");
  CHECK(sweep.code == kExitOk);
  CHECK(count_lines(sweep.out) == 21);
  CHECK(sweep.out.find("1.00000000") != std::string::npos);

  const auto state = run_cli("state tripartite --p 1 --omega 0.5");
  CHECK(state.code == kExitOk);
  CHECK(state.out.find("0.500000") != std::string::npos);
}
