#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(RFSPECTRA_CLI_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rfspectra_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::string kSmallFig1Config =
    R"({"m": 20, "N": 80, "d_grid": [2, 5], "sigma_grid": [3], "trials": 2, "seed": 11})";

}  // namespace

TEST_CASE("missing config file exits 2 and writes nothing") {
  const auto dir = fresh_dir("missing");
  const int code = run_cli("figure1 --config " +
                           (dir / "absent.json").string() + " --out " +
                           (dir / "out").string());
  CHECK(code == 2);
  CHECK(!fs::exists(dir / "out" / "fig1_extreme_sv_vs_d.csv"));
}

TEST_CASE("unknown subcommand and malformed config exit 2") {
  const auto dir = fresh_dir("bad");
  CHECK(run_cli("frobnicate") == 2);

  write_file(dir / "broken.json", "{not json");
  CHECK(run_cli("figure1 --config " + (dir / "broken.json").string()) == 2);

  write_file(dir / "unknown_key.json", R"({"m": 10, "wibble": 3})");
  CHECK(run_cli("figure1 --config " + (dir / "unknown_key.json").string()) ==
        2);

  // verify requires a verify_* / lemma2 experiment
  write_file(dir / "fig_for_verify.json",
             R"({"experiment": "fig1_extreme_sv_vs_d"})");
  CHECK(run_cli("verify --config " +
                (dir / "fig_for_verify.json").string()) == 2);
}

TEST_CASE("figure1 with a single trial writes a zero-std CSV") {
  const auto dir = fresh_dir("fig1_single");
  write_file(dir / "config.json",
             R"({"m": 15, "N": 40, "d_grid": [2], "sigma_grid": [3], )"
             R"("trials": 1, "seed": 3})");
  const int code = run_cli("figure1 --config " +
                           (dir / "config.json").string() + " --out " +
                           dir.string());
  CHECK(code == 0);
  const auto csv = read_file(dir / "fig1_extreme_sv_vs_d.csv");
  CHECK(csv.rfind("# config {", 0) == 0);
  CHECK(csv.find("\n3,2,std,0,0,0\n") != std::string::npos);
  CHECK(fs::exists(dir / "fig1_extreme_sv_vs_d.svg"));
  CHECK(!fs::exists(dir / "fig1_extreme_sv_vs_d.csv.tmp"));
}

TEST_CASE("bounds subcommand reports the failing variance condition") {
  const auto dir = fresh_dir("bounds");
  write_file(dir / "thm1.json",
             R"({"theorem": "thm1", "d": 10, "m": 100, "N": 5000, )"
             R"("gamma": 1, "sigma": 3, "delta": 0.05, "eta": 0.5})");
  const int code = run_cli("bounds --config " + (dir / "thm1.json").string() +
                           " --out " + dir.string());
  CHECK(code == 0);
  const auto report = nlohmann::json::parse(read_file(dir /
                                                      "bound_report.json"));
  CHECK(report.at("theorem") == "thm1");
  bool found = false;
  for (const auto& condition : report.at("conditions")) {
    if (condition.at("name").get<std::string>().find("variance product") !=
        std::string::npos) {
      found = true;
      CHECK(condition.at("holds") == false);
      CHECK(condition.at("lhs") == doctest::Approx(9.0));
    }
  }
  CHECK(found);
}

TEST_CASE("identical invocations produce byte-identical outputs") {
  const auto dir = fresh_dir("idempotent");
  write_file(dir / "config.json", kSmallFig1Config);
  for (const char* out : {"a", "b"}) {
    const int code = run_cli("figure1 --config " +
                             (dir / "config.json").string() + " --out " +
                             (dir / out).string());
    CHECK(code == 0);
  }
  CHECK(read_file(dir / "a" / "fig1_extreme_sv_vs_d.csv") ==
        read_file(dir / "b" / "fig1_extreme_sv_vs_d.csv"));
  CHECK(read_file(dir / "a" / "fig1_extreme_sv_vs_d.svg") ==
        read_file(dir / "b" / "fig1_extreme_sv_vs_d.svg"));
}

TEST_CASE("--set overrides and --seed rewrite config fields") {
  const auto dir = fresh_dir("overrides");
  write_file(dir / "config.json", kSmallFig1Config);
  const int code = run_cli("figure1 --config " +
                           (dir / "config.json").string() + " --out " +
                           dir.string() + " --seed 777 --set trials=3" +
                           " --set d_grid=[4]");
  CHECK(code == 0);
  const auto csv = read_file(dir / "fig1_extreme_sv_vs_d.csv");
  CHECK(csv.find("\"seed\":777") != std::string::npos);
  CHECK(csv.find("\"trials\":3") != std::string::npos);
  CHECK(csv.find("\"d_grid\":[4]") != std::string::npos);
}

TEST_CASE("verify subcommand writes the campaign CSV plus bound reports") {
  const auto dir = fresh_dir("verify");
  write_file(dir / "config.json",
             R"({"experiment": "verify_thm1", "m": 200, "N": 15, )"
             R"("d_grid": [5], "trials": 2, "seed": 9})");
  const int code = run_cli("verify --config " +
                           (dir / "config.json").string() + " --out " +
                           dir.string());
  CHECK(code == 0);
  CHECK(fs::exists(dir / "verify_thm1.csv"));
  const auto reports =
      nlohmann::json::parse(read_file(dir / "verify_thm1_bounds.json"));
  REQUIRE(reports.is_array());
  CHECK(reports.size() == 1);
  CHECK(reports[0].at("report").at("theorem") == "thm1");
  CHECK(reports[0].at("parameters").at("d") == "5");
}

TEST_CASE("kernel subcommand exports a matrix with the config comment") {
  const auto dir = fresh_dir("kernel");
  write_file(dir / "config.json",
             R"({"kind": "full_gaussian", "n": 3, "gamma": 1, "sigma": 1, )"
             R"("d": 2})");
  const int code = run_cli("kernel --config " +
                           (dir / "config.json").string() + " --out " +
                           dir.string());
  CHECK(code == 0);
  const auto csv = read_file(dir / "kernel.csv");
  CHECK(csv.rfind("# config {", 0) == 0);
  CHECK(csv.find("0,1,2\n") != std::string::npos);
  CHECK(csv.find("0.5+0j") != std::string::npos);  // (2+1)^-1 entry
}

TEST_CASE("spectrum subcommand writes an index,value CSV") {
  const auto dir = fresh_dir("spectrum");
  write_file(dir / "config.json",
             R"({"m": 10, "N": 25, "d": 4, "gamma": 1, "sigma": 3, )"
             R"("seed": 2, "normalize": true})");
  const int code = run_cli("spectrum --config " +
                           (dir / "config.json").string() + " --out " +
                           dir.string());
  CHECK(code == 0);
  const auto csv = read_file(dir / "spectrum.csv");
  CHECK(csv.find("index,value\n") != std::string::npos);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 2 + 10);  // comment + header + min(m, N) values
}
