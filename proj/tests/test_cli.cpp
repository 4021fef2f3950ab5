#include <doctest.h>

#include <spinwire/io.hpp>
#include <spinwire/runner.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

using namespace spinwire;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("spinwire_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int value = 0;
    return value;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// data rows of a CSV payload (skips '#' comments and the header line)
std::vector<std::vector<double>> csv_rows(const std::string& content) {
  std::vector<std::vector<double>> rows;
  std::istringstream stream(content);
  std::string line;
  bool header_seen = false;
  while (std::getline(stream, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_header(const std::string& content) {
  std::istringstream stream(content);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return "";
}

}  // namespace

TEST_CASE("shipped defaults") {
  const RunConfig cfg = parse_config({"fidelity"});
  CHECK(cfg.command == Command::fidelity);
  CHECK(cfg.n == 150);
  CHECK(cfg.j == 1.0);
  CHECK(cfg.d == 14.455);
  CHECK(cfg.b == 500.0);
  CHECK(cfg.alpha == 1.0);
  CHECK(cfg.method == FidelityMethod::exact);
  CHECK(cfg.format == OutputFormat::csv);
  CHECK(parse_config({"optimize"}).format == OutputFormat::json);
}

TEST_CASE("flag overrides keep the remaining defaults") {
  const RunConfig cfg = parse_config({"fidelity", "--n", "2", "--d", "0", "--b", "0"});
  CHECK(cfg.n == 2);
  CHECK(cfg.d == 0.0);
  CHECK(cfg.b == 0.0);
  CHECK(cfg.j == 1.0);
  CHECK(cfg.alpha == 1.0);
}

TEST_CASE("validation names the offending field") {
  CHECK_THROWS_WITH_AS(parse_config({"fidelity", "--n", "0"}), doctest::Contains("n_sites"),
                       InvalidParams);
  CHECK_THROWS_WITH_AS(parse_config({"fidelity", "--alpha", "-2"}), doctest::Contains("alpha"),
                       InvalidParams);
  CHECK_THROWS_AS(parse_config({"evolve", "--n", "3", "--site-out", "99"}), InvalidParams);
  CHECK_THROWS_AS(parse_config({"optimize", "--budget", "5"}), InvalidParams);
  CHECK_THROWS_AS(parse_config({"optimize", "--format", "csv"}), InvalidParams);
}

TEST_CASE("usage errors: unknown flags, bad values, missing subcommand") {
  CHECK_THROWS_AS(parse_config({"fidelity", "--no-such-flag", "1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"fidelity", "--n", "two"}), UsageError);
  CHECK_THROWS_AS(parse_config({}), UsageError);
  CHECK_THROWS_AS(parse_config({"frobnicate"}), UsageError);
}

TEST_CASE("config file merges below flags; unknown keys are hard errors") {
  TempDir dir;
  {
    std::ofstream out(dir.file("run.cfg"));
    out << "# chain setup\n";
    out << "n = 5\n";
    out << "t-max = 10\n";
  }
  const RunConfig cfg =
      parse_config({"fidelity", "--config", dir.file("run.cfg"), "--n", "7"});
  CHECK(cfg.n == 7);       // flag wins
  CHECK(cfg.t_max == 10.0);  // file applies

  {
    std::ofstream out(dir.file("bad.cfg"));
    out << "n = 5\nnonsense = 1\n";
  }
  CHECK_THROWS_WITH_AS(parse_config({"fidelity", "--config", dir.file("bad.cfg")}),
                       doctest::Contains("nonsense"), UsageError);

  {
    std::ofstream out(dir.file("dup.cfg"));
    out << "n = 5\nn = 6\n";
  }
  CHECK_THROWS_AS(parse_config({"fidelity", "--config", dir.file("dup.cfg")}), UsageError);
  CHECK_THROWS_AS(parse_config({"fidelity", "--config", dir.file("missing.cfg")}), UsageError);
}

TEST_CASE("environment overrides the file but not flags") {
  TempDir dir;
  {
    std::ofstream out(dir.file("run.cfg"));
    out << "j = 3\n";
  }
  ::setenv("SPINWIRE_J", "2.5", 1);
  CHECK(parse_config({"fidelity", "--config", dir.file("run.cfg")}).j == 2.5);
  CHECK(parse_config({"fidelity", "--j", "4"}).j == 4.0);
  ::unsetenv("SPINWIRE_J");
  CHECK(parse_config({"fidelity", "--config", dir.file("run.cfg")}).j == 3.0);
}

TEST_CASE("echoed config reparses to an identical RunConfig") {
  TempDir dir;
  const RunConfig original = parse_config(
      {"fidelity", "--n", "2", "--d", "0", "--b", "0", "--t-max", "6.2832", "--t-steps", "100"});
  {
    std::ofstream out(dir.file("echo.cfg"));
    for (const auto& [key, value] : echo_config(original)) {
      out << key << " = " << value << "\n";
    }
  }
  const RunConfig reparsed = parse_config({"fidelity", "--config", dir.file("echo.cfg")});
  CHECK(reparsed == original);
}

TEST_CASE("round trip through the emitted CSV preamble") {
  TempDir dir;
  RunConfig cfg = parse_config({"evolve", "--n", "4", "--j", "2", "--t-max", "3.5",
                                "--t-steps", "7", "--site-in", "2"});
  cfg.output = dir.file("out.csv");
  REQUIRE(run(cfg) == 0);

  std::istringstream stream(slurp(cfg.output));
  std::ofstream out(dir.file("echo.cfg"));
  std::string line;
  while (std::getline(stream, line)) {
    if (line.rfind("# ", 0) != 0) break;
    const std::string body = line.substr(2);
    if (body.rfind("spinwire ", 0) == 0) continue;  // command banner
    out << body << "\n";
  }
  out.close();
  const RunConfig reparsed = parse_config({"evolve", "--config", dir.file("echo.cfg")});
  CHECK(reparsed == cfg);
}

TEST_CASE("fidelity CSV matches the closed form |sin(t/2)|") {
  TempDir dir;
  RunConfig cfg = parse_config({"fidelity", "--method", "exact", "--n", "2", "--j", "1", "--d",
                                "0", "--b", "0", "--alpha", "1", "--t-max", "6.2832",
                                "--t-steps", "100"});
  cfg.output = dir.file("fid.csv");
  REQUIRE(run(cfg) == 0);

  const std::string content = slurp(cfg.output);
  CHECK(csv_header(content) == "t,F_re,F_im,F_abs");
  const auto rows = csv_rows(content);
  REQUIRE(rows.size() == 100);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 4);
    CHECK(std::abs(row[3] - std::abs(std::sin(row[0] / 2.0))) < 1e-10);
  }
}

TEST_CASE("spectrum CSV for the single site") {
  TempDir dir;
  RunConfig cfg = parse_config({"spectrum", "--n", "1", "--b", "7"});
  cfg.output = dir.file("spec.csv");
  REQUIRE(run(cfg) == 0);
  const std::string content = slurp(cfg.output);
  CHECK(csv_header(content) == "k,eigenvalue");
  CHECK(content.find("\n1,-7\n") != std::string::npos);
}

TEST_CASE("evolve defaults to the site-1 to site-N amplitude") {
  TempDir dir;
  RunConfig evolve_cfg = parse_config({"evolve", "--n", "3", "--d", "2", "--b", "4",
                                       "--t-max", "9", "--t-steps", "10"});
  CHECK(evolve_cfg.site_out == 3);
  evolve_cfg.output = dir.file("evolve.csv");
  REQUIRE(run(evolve_cfg) == 0);

  RunConfig fid_cfg = parse_config({"fidelity", "--n", "3", "--d", "2", "--b", "4",
                                    "--t-max", "9", "--t-steps", "10"});
  fid_cfg.output = dir.file("fid.csv");
  REQUIRE(run(fid_cfg) == 0);

  const auto a = csv_rows(slurp(evolve_cfg.output));
  const auto b = csv_rows(slurp(fid_cfg.output));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i][3] - b[i][3]) < 1e-12);
  }
}

TEST_CASE("analytic fidelity carries the nodes_used column") {
  TempDir dir;
  RunConfig cfg = parse_config({"fidelity", "--method", "analytic", "--n", "8", "--d", "2",
                                "--b", "300", "--t-max", "4", "--t-steps", "5"});
  cfg.output = dir.file("analytic.csv");
  REQUIRE(run(cfg) == 0);
  const std::string content = slurp(cfg.output);
  CHECK(csv_header(content) == "t,F_re,F_im,F_abs,nodes_used");
  for (const auto& row : csv_rows(content)) {
    REQUIRE(row.size() == 5);
    CHECK(row[4] >= 64.0);
  }
}

TEST_CASE("sweep CSV schema and determinism across runs") {
  TempDir dir;
  RunConfig cfg = parse_config({"sweep", "--n", "6",  "--b", "20", "--t-max", "10",
                                "--t-steps", "12", "--d-min", "0", "--d-max", "4",
                                "--d-steps", "5"});
  cfg.output = dir.file("grid.csv");
  REQUIRE(run(cfg) == 0);
  const std::string a = slurp(cfg.output);
  REQUIRE(run(cfg) == 0);
  const std::string b = slurp(cfg.output);

  CHECK(csv_header(a) == "t,D,F_abs");
  CHECK(a == b);
  CHECK(csv_rows(a).size() == 12 * 5);
}

TEST_CASE("exit codes through run_cli") {
  TempDir dir;
  SUBCASE("success") {
    CHECK(run_cli({"spectrum", "--n", "2", "--output", dir.file("s.csv")}) == 0);
  }
  SUBCASE("usage error") {
    CHECK(run_cli({"spectrum", "--n", "0"}) == 1);
    CHECK(run_cli({"no-such-command"}) == 1);
    CHECK(run_cli({"fidelity", "--method", "analytic", "--b", "0", "--output",
                   dir.file("f.csv")}) == 1);
  }
  SUBCASE("numerical failure") {
    CHECK(run_cli({"fidelity", "--method", "analytic", "--max-refine", "1", "--t-min", "200",
                   "--t-max", "200", "--t-steps", "1", "--output", dir.file("f.csv")}) == 2);
  }
  SUBCASE("verification pass") {
    CHECK(run_cli({"verify", "--n-max", "8", "--output", dir.file("v.json")}) == 0);
    const std::string report = slurp(dir.file("v.json"));
    CHECK(report.find("\"pass\": true") != std::string::npos);
    CHECK(report.find("\"tolerance\": 1e-08") != std::string::npos);
  }
  SUBCASE("bscan pass") {
    CHECK(run_cli({"bscan", "--n", "5", "--d", "2", "--b-list", "1,10", "--t-max", "10",
                   "--t-steps", "20", "--output", dir.file("b.json")}) == 0);
  }
  SUBCASE("help") {
    CHECK(run_cli({"--help"}) == 0);
    CHECK(run_cli({"fidelity", "--help"}) == 0);
  }
}

TEST_CASE("output files appear atomically, without stray temp files") {
  TempDir dir;
  RunConfig cfg = parse_config({"spectrum", "--n", "3"});
  cfg.output = dir.file("out.csv");
  REQUIRE(run(cfg) == 0);
  CHECK(fs::exists(cfg.output));
  int entries = 0;
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    (void)entry;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("the installed binary runs end to end") {
  TempDir dir;
  const std::string out = dir.file("spec.csv");
  const std::string command =
      std::string(SPINWIRE_CLI_PATH) + " spectrum --n 1 --b 7 --output " + out;
  const int status = std::system(command.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(slurp(out).find("\n1,-7\n") != std::string::npos);
}
