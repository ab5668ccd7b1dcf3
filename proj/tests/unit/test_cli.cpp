#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "scalebench/app/cli.hpp"
#include "scalebench/app/config.hpp"
#include "scalebench/app/output.hpp"

using namespace scalebench::app;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("scalebench_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> e(-300.0, 300.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::pow(10.0, e(rng)) * (i % 2 ? -1.0 : 1.0);
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(200.0) == "200");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("classify reports the explosive regime") {
  const Run r = run({"cycles", "classify", "--c", "0.6", "--nu", "1.2"});
  CHECK(r.code == kExitOk);
  CHECK(value_of(r.out, "regime") == "explosive_oscillatory");
  CHECK(std::stod(value_of(r.out, "period")) == doctest::Approx(10.358).epsilon(1e-4));
}

TEST_CASE("gwp over twenty years") {
  const Run r = run({"ghg", "gwp", "--half-life", "7", "--horizon", "20", "--a-ratio", "1"});
  CHECK(r.code == kExitOk);
  CHECK(std::abs(std::stod(value_of(r.out, "gwp")) - 0.4353) < 1e-4);
}

TEST_CASE("exit codes and error lines") {
  const Run missing = run({"--config", "/nonexistent/scalebench.json", "cycles", "classify"});
  CHECK(missing.code == kExitValidation);
  CHECK(missing.err.find("error_code=config_not_found") != std::string::npos);

  CHECK(run({}).code == kExitUsage);
  CHECK(run({"cycles"}).code == kExitUsage);
  CHECK(run({"cycles", "classify", "--no-such-flag", "1"}).code == kExitUsage);
  CHECK(run({"--format", "xml", "cycles", "classify"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);

  const Run bad = run({"cycles", "closed-form", "--c", "1.5"});
  CHECK(bad.code == kExitValidation);
  CHECK(bad.err.find("error_code=invalid_params") != std::string::npos);

  const Run numerical = run({"ghg", "critical-gain", "--hi", "0.1"});
  CHECK(numerical.code == kExitNumerical);
  CHECK(numerical.err.find("error_code=no_crossing") != std::string::npos);

  CHECK(run({"--seed", "-4", "tipping", "run"}).code == kExitValidation);
}

TEST_CASE("config files are strict and layered under flags") {
  TempDir d;
  const fs::path cfg = d.path / "c.json";
  std::ofstream(cfg) << R"({"schema_version": 1, "c": 0.5, "nu": 1.0})";
  const Run base = run({"--config", cfg.string(), "cycles", "classify"});
  CHECK(base.code == kExitOk);
  CHECK(value_of(base.out, "regime") == "boundary");
  const Run over = run({"--config", cfg.string(), "cycles", "classify", "--nu", "0.5"});
  CHECK(value_of(over.out, "regime") == "damped_oscillatory");

  std::ofstream(cfg) << R"({"schema_version": 1, "c": 0.5, "zeta": 1})";
  const Run unknown = run({"--config", cfg.string(), "cycles", "classify"});
  CHECK(unknown.code == kExitValidation);
  CHECK(unknown.err.find("zeta") != std::string::npos);

  std::ofstream(cfg) << R"({"c": 0.5})";
  CHECK(run({"--config", cfg.string(), "cycles", "classify"}).code == kExitValidation);
  std::ofstream(cfg) << R"({"schema_version": 2})";
  CHECK(run({"--config", cfg.string(), "cycles", "classify"}).code == kExitValidation);
  std::ofstream(cfg) << R"({"schema_version": 1, "c": "high"})";
  CHECK(run({"--config", cfg.string(), "cycles", "classify"}).code == kExitValidation);
}

TEST_CASE("resolve_config fills defaults in schema order") {
  const Schema s{{"a", ParamKind::number, 1.0, "", {}}, {"b", ParamKind::text, "x", "", {"x", "y"}}};
  const Json c = resolve_config(s, Json(), {{"b", "y"}});
  CHECK(c.dump() == R"({"a":1.0,"b":"y"})");
  CHECK_THROWS((void)resolve_config(s, Json(), {{"b", "z"}}));
}

TEST_CASE("output directory, manifest and determinism") {
  TempDir d;
  const std::vector<std::string> args{"tipping", "run", "--steps", "3000", "--quiet"};
  auto with_out = [&](const std::string& sub) {
    std::vector<std::string> a{"--out", (d.path / sub).string()};
    a.insert(a.end(), args.begin(), args.end());
    return run(a);
  };
  REQUIRE(with_out("a").code == kExitOk);
  REQUIRE(with_out("b").code == kExitOk);
  CHECK(verify_manifest(d.path / "a").empty());
  CHECK(slurp(d.path / "a" / "trajectory.csv") == slurp(d.path / "b" / "trajectory.csv"));
  CHECK(slurp(d.path / "a" / "trajectory.csv").rfind("t,T,alpha,basin\n", 0) == 0);
  const Json m = Json::parse(slurp(d.path / "a" / "manifest.json"));
  CHECK(m["subcommand"] == "tipping run");
  CHECK(m["seed"] == 20180101);
  CHECK(m["config"]["steps"] == 3000);
  CHECK(!fs::exists(d.path / "a" / ".manifest.json.tmp"));

  // Tampering is detected.
  std::ofstream(d.path / "a" / "trajectory.csv", std::ios::app) << "x";
  CHECK(verify_manifest(d.path / "a") == std::vector<std::string>{"trajectory.csv"});

  // A different seed changes the path.
  REQUIRE(run({"--out", (d.path / "c").string(), "--seed", "5", "tipping", "run", "--steps", "3000", "--quiet"}).code == 0);
  CHECK(slurp(d.path / "c" / "trajectory.csv") != slurp(d.path / "b" / "trajectory.csv"));
}

TEST_CASE("json format wraps series") {
  const Run r = run({"--format", "json", "cycles", "closed-form", "--steps", "10", "--quiet"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["times"].size() == 11);
  CHECK(j["values"][0].size() == 2);
  CHECK(j["times"][3] == 3.0);
}

TEST_CASE("unwritable output directory is a usage failure") {
  TempDir d;
  const fs::path file = d.path / "plain";
  std::ofstream(file) << "x";
  const Run r = run({"--out", (file / "sub").string(), "cycles", "classify"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("error_code=output_unwritable") != std::string::npos);
}

TEST_CASE("csv column schemas") {
  auto header = [](std::vector<std::string> args) {
    const Run r = run(std::move(args));
    REQUIRE(r.code == kExitOk);
    return r.out.substr(0, r.out.find('\n'));
  };
  CHECK(header({"exo", "run", "--t-end", "5", "--quiet"}) == "t,N1,N2,N3,N4,N5,N6,NF,NR,SR,C_md,C_i");
  CHECK(header({"cycles", "run", "--quiet"}) == "t,Y,trend,cycle,residual");
  CHECK(header({"ghg", "simulate", "--horizon", "5", "--quiet"}) == "t,c,m,T_at,T_oc");
  CHECK(header({"ghg", "simulate", "--preset", "albedo", "--horizon", "5", "--quiet"}) == "t,a,T_at,T_oc");
  CHECK(header({"glass", "msd", "--N", "64", "--steps", "200", "--equilibration-time", "0.2", "--quiet"}) ==
        "lag_time,msd_total,msd_A,msd_B");
}
