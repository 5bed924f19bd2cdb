#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "degenfront/artifacts.hpp"
#include "degenfront/commands.hpp"

using namespace degenfront;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("degenfront_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string write_config(const fs::path& dir, const std::string& text) {
  const auto p = dir / "config.json";
  std::ofstream(p) << text;
  return p.string();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(DEGENFRONT_BINARY) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* kSmall = R"({"diffusion":{"quadratic":{"b":1}},"reaction":"auto",
  "grid":{"n_nodes":401},"spectral":{"sweep_n_nodes":201},
  "evolution":{"t_end":20,"nonlinear_t_end":2,"snapshot_every":100}})";

}  // namespace

TEST_CASE("front writes a profile and its sidecar") {
  const auto dir = scratch("front");
  const auto cfg = write_config(dir, kSmall);
  CHECK(cli("front --config " + cfg + " --out " + (dir / "out").string()) == 0);
  const auto side = json::parse(read_file((dir / "out" / "profile.json").string()));
  CHECK(side["omega0"].get<double>() == doctest::Approx(3.0310672854).epsilon(1e-9));
  CHECK(side["schema"] == "degenfront.profile/1");
}

TEST_CASE("file pipeline matches the in-process pipeline") {
  const auto dir = scratch("pipeline");
  const auto cfg = write_config(dir, kSmall);
  const auto files = (dir / "files").string(), inl = (dir / "inline").string();
  REQUIRE(cli("front --config " + cfg + " --out " + files) == 0);
  const auto cfg2 = write_config(dir, R"({"grid":{"n_nodes":401},
    "evolution":{"t_end":20,"nonlinear_t_end":2}})");
  REQUIRE(cli("spectrum --config " + cfg2 + " --out " + files) == 0);
  REQUIRE(cli("evolve --config " + cfg2 + " --out " + files) == 0);
  const auto cfg3 = write_config(dir, R"({"diffusion":{"quadratic":{"b":1}},"reaction":"auto",
    "grid":{"n_nodes":401},"evolution":{"t_end":20,"nonlinear_t_end":2}})");
  REQUIRE(cli("spectrum --config " + cfg3 + " --out " + inl) == 0);
  REQUIRE(cli("evolve --config " + cfg3 + " --out " + inl) == 0);

  const auto a = json::parse(read_file(files + "/spectrum.json"));
  const auto b = json::parse(read_file(inl + "/spectrum.json"));
  CHECK(std::abs(a["lambda1"][0].get<double>() - b["lambda1"][0].get<double>()) <= 1e-12);
  const auto fa = json::parse(read_file(files + "/decay_fit.json"));
  const auto fb = json::parse(read_file(inl + "/decay_fit.json"));
  CHECK(std::abs(fa["rate"].get<double>() - fb["rate"].get<double>()) <= 1e-12);
  CHECK(read_file(files + "/eigenvalues.csv") == read_file(inl + "/eigenvalues.csv"));
  CHECK(read_file(files + "/run.csv") == read_file(inl + "/run.csv"));
}

TEST_CASE("evolve and sweep artifacts") {
  const auto dir = scratch("artifacts");
  const auto cfg = write_config(dir, kSmall);
  const auto out = (dir / "out").string();
  REQUIRE(cli("evolve --config " + cfg + " --out " + out) == 0);
  CHECK(read_file(out + "/trajectory.csv").rfind("t,norm_u,norm_Pu", 0) == 0);
  CHECK(read_file(out + "/run.csv").rfind("t,residual,shift,min_v,max_v", 0) == 0);
  CHECK(fs::exists(out + "/snapshots"));
  REQUIRE(cli("sweep --config " + cfg + " --out " + out) == 0);
  const auto sw = json::parse(read_file(out + "/sweep.json"));
  CHECK(sw["reports"].size() == 5);
  for (const auto& r : sw["reports"]) CHECK(fs::exists(out + "/" + r.get<std::string>()));
}

TEST_CASE("exit codes for configuration errors") {
  const auto dir = scratch("errors");
  CHECK(cli("spectrum --config " + write_config(dir, "{}") + " --out " + (dir / "out").string()) == 2);
  CHECK(cli("front --config " + write_config(dir, R"({"reaction":{"cubic":{"alpha":1.5}}})")) == 2);
  CHECK(cli("front --config " + (dir / "absent.json").string()) == 2);
  CHECK(cli("frnt --config " + write_config(dir, kSmall)) == 2);
  CHECK(cli("front") == 2);
}

TEST_CASE("missing profile input is reported") {
  const auto dir = scratch("missing");
  RunConfig cfg;
  cfg.output = (dir / "out").string();
  std::ostringstream log;
  CHECK_THROWS_WITH(run_subcommand(Subcommand::spectrum, cfg, log), "missing profile input");
}

TEST_CASE("numerical failures remove partial artifacts") {
  const auto dir = scratch("partial");
  // the run is too short for a decay fit, which fails after the trajectory was written
  const auto cfg = write_config(dir, R"({"diffusion":{"quadratic":{"b":1}},"reaction":"auto",
    "grid":{"n_nodes":401},"evolution":{"t_end":0.05}})");
  const auto out = dir / "out";
  const int rc = cli("evolve --config " + cfg + " --out " + out.string());
  CHECK(rc == 3);
  CHECK_FALSE(fs::exists(out / "trajectory.csv"));
  CHECK_FALSE(fs::exists(out / "decay_fit.json"));
}

TEST_CASE("check exit status reflects the suite") {
  const auto dir = scratch("check");
  const auto cfg = write_config(dir, R"({"diffusion":{"quadratic":{"b":1}},"reaction":"auto"})");
  const auto out = (dir / "out").string();
  const int rc = cli("check --config " + cfg + " --out " + out);
  const auto j = json::parse(read_file(out + "/check.json"));
  CHECK(j["checks"].size() == 11);
  CHECK(rc == (j["passed"].get<bool>() ? 0 : 1));
}

TEST_CASE("reports are deterministic outside the provenance block") {
  const auto dir = scratch("report");
  const auto cfg = write_config(dir, R"({"diffusion":{"quadratic":{"b":1}},"reaction":"auto","seed":5})");
  REQUIRE(cli("report --config " + cfg + " --out " + (dir / "a").string()) == 0);
  REQUIRE(cli("report --config " + cfg + " --out " + (dir / "b").string() + " --seed 5") == 0);
  const auto a = json::parse(read_file((dir / "a" / "report.json").string()));
  const auto b = json::parse(read_file((dir / "b" / "report.json").string()));
  CHECK(a["report"].dump() == b["report"].dump());
  CHECK(a["provenance"]["config_hash"] == b["provenance"]["config_hash"]);
  CHECK(a["report"]["checks"].size() == 11);
  for (const auto& c : a["report"]["checks"]) {
    const auto s = c["status"].get<std::string>();
    CHECK((s == "pass" || s == "fail" || s == "skipped"));
  }
  CHECK(fs::exists(dir / "a" / "report.txt"));
}
