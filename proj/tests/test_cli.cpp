#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "glab/cli.hpp"
#include "json.hpp"

using namespace glab;
using namespace glab::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "glab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "glab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

// CSV rows (without header) whose experiment column starts with name.
std::vector<std::vector<std::string>> rows_of(const std::string& csv, const std::string& name) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.starts_with(name + ",") && !line.starts_with(name + ";")) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    out.push_back(fields);
  }
  return out;
}

}  // namespace

TEST_CASE("grid specs") {
  CHECK(parse_grid("5") == std::vector<std::uint64_t>{5});
  CHECK(parse_grid("1e3, 10,7") == std::vector<std::uint64_t>{1000, 10, 7});
  CHECK(parse_grid("4:8") == std::vector<std::uint64_t>{4, 5, 6, 7, 8});
  CHECK(parse_grid("10:30:10") == std::vector<std::uint64_t>{10, 20, 30});
  CHECK(parse_grid("1e3:1e6:log1") == std::vector<std::uint64_t>{1000, 10000, 100000, 1000000});
  CHECK(parse_grid("1e3:1e4:log4") == std::vector<std::uint64_t>{1000, 1778, 3162, 5623, 10000});
  CHECK(parse_grid("1:3:log10") == std::vector<std::uint64_t>{1, 2, 3});
  CHECK_THROWS_AS(parse_grid(""), ConfigError);
  CHECK_THROWS_AS(parse_grid("8:4"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1:2:0"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1.5"), ConfigError);
  CHECK_THROWS_AS(parse_grid("a:b"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:10:log2"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1:2:3:4"), ConfigError);

  CHECK(parse_real_list("54.598, 1/2") == std::vector<double>{54.598, 0.5});
  CHECK(parse_tolerance("fujii=2.5") == std::pair<std::string, double>{"fujii", 2.5});
  CHECK_THROWS_AS(parse_tolerance("fujii"), ConfigError);
  CHECK_THROWS_AS(parse_tolerance("fujii=-1"), ConfigError);
}

TEST_CASE("command line parsing") {
  const char* argv[] = {"glab", "verify-fujii", "--grid", "1e3:1e4:log1", "--zeros", "z.txt", "--max-gamma",
                        "1e4", "--tolerance", "fujii=2", "--no-timestamp", "--format", "json"};
  const auto c = parse_command_line(13, argv);
  CHECK(c.command == "verify-fujii");
  CHECK(c.grid == "1e3:1e4:log1");
  CHECK(c.max_gamma == 1e4);
  CHECK(c.tolerances.at("fujii") == 2.0);
  CHECK_FALSE(c.timestamp);
  CHECK(c.format == "json");

  const char* bad_cmd[] = {"glab", "frobnicate"};
  CHECK_THROWS_AS(parse_command_line(2, bad_cmd), ConfigError);
  const char* both[] = {"glab", "verify-fujii", "--max-gamma", "10", "--max-zeros", "5"};
  CHECK_THROWS_AS(parse_command_line(6, both), ConfigError);
  const char* bad_fmt[] = {"glab", "sieve", "--format", "xml"};
  CHECK_THROWS_AS(parse_command_line(4, bad_fmt), ConfigError);
  const char* help[] = {"glab", "--help"};
  CHECK_THROWS_AS(parse_command_line(2, help), HelpRequested);
}

TEST_CASE("verify-identities passes and is deterministic") {
  const auto a = scratch("id_a.csv");
  const auto b = scratch("id_b.csv");
  CHECK(run_args({"verify-identities", "--n-max", "2000", "--no-timestamp", "--out", a.string()}) == kPass);
  CHECK(run_args({"verify-identities", "--n-max", "2000", "--no-timestamp", "--out", b.string()}) == kPass);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.starts_with(std::string(kCsvHeader) + "\n"));
  CHECK(rows_of(text, "identity").size() == 1997);
  CHECK(rows_of(text, "psi20-routes").size() == 1997);
  CHECK(rows_of(text, "psi2-fft").size() == 1);
  CHECK(text.find(",false") == std::string::npos);

  CHECK(run_args({"verify-identities", "--n-max", "100", "--out", a.string()}) == kPass);
  CHECK(slurp(a).starts_with("# generated "));
}

TEST_CASE("failing tolerance gives exit 1 with a report") {
  const auto out = scratch("tight.csv");
  CHECK(run_args({"verify-identities", "--n-max", "500", "--tolerance", "identity=1e-30", "--tolerance",
                  "psi20=1e-30", "--no-timestamp", "--out", out.string()}) == kAssertionFailure);
  CHECK(slurp(out).find(",false") != std::string::npos);
}

TEST_CASE("configuration and data errors") {
  CHECK(run_args({"frobnicate"}) == kConfigError);
  CHECK(run_args({"verify-identities", "--grid", "1:10"}) == kConfigError);
  CHECK(run_args({"verify-identities", "--n-max", "100", "--grid", "4:200"}) == kConfigError);
  CHECK(run_args({"sieve"}) == kConfigError);
  CHECK(run_args({"verify-fujii", "--grid", "1000"}) == kConfigError);
  CHECK(run_args({"verify-fujii", "--grid", "1000", "--zeros", "/nonexistent/z.txt"}) == kDataError);
  CHECK(run_args({"verify-fujii", "--grid", "1000", "--zeros", GLAB_ZEROS_FILE, "--max-zeros", "10",
                  "--out", scratch("small.csv").string()}) == kPass);
  CHECK(run_args({"zfr", "--family", "constant:0.9"}) == kConfigError);
  CHECK(run_args({"zfr", "--family", "table:/nonexistent"}) == kConfigError);

  const auto bad = scratch("bad_zeros.txt");
  {
    std::ofstream f(bad);
    f << "14.134725141734693\nfoo\n";
  }
  CHECK(run_args({"verify-fujii", "--grid", "1000", "--zeros", bad.string()}) == kDataError);
  {
    std::ofstream f(bad);
    f << "21.022039638771555\n25.010857580145688\n";
  }
  CHECK(run_args({"verify-fujii", "--grid", "1000", "--zeros", bad.string()}) == kDataError);
  CHECK(run_args({"verify-psi-explicit", "--grid", "1000", "--heights", "1e6", "--zeros", GLAB_ZEROS_FILE,
                  "--max-gamma", "100"}) == kDataError);
}

TEST_CASE("zfr with constant eta") {
  const auto out = scratch("zfr.csv");
  CHECK(run_args({"zfr", "--family", "constant:0.5", "--x", "54.598", "--no-timestamp", "--out", out.string()}) ==
        kPass);
  const auto rows = rows_of(slurp(out), "omega");
  REQUIRE(rows.size() == 1);
  CHECK(std::stod(rows[0][3]) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("zfr default family report") {
  const auto out = scratch("zfr_lp.json");
  CHECK(run_args({"zfr", "--format", "json", "--no-timestamp", "--out", out.string()}) == kPass);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["command"] == "zfr");
  CHECK(doc["pass"] == true);
  CHECK_FALSE(doc.contains("generated"));
  bool saw_asymptotic = false;
  for (const auto& row : doc["rows"]) {
    CHECK(row.contains("provenance"));
    CHECK(row["provenance"].contains("family"));
    if (row["experiment"] == "omega-asymptotic") saw_asymptotic = true;
  }
  CHECK(saw_asymptotic);
}

TEST_CASE("verify-fujii reports fitted constants") {
  const auto out = scratch("fujii.csv");
  const int code = run_args({"verify-fujii", "--grid", "1e3:1e5:log1", "--zeros", GLAB_ZEROS_FILE, "--max-gamma",
                             "1e3", "--no-timestamp", "--out", out.string()});
  CHECK(code == kPass);
  const auto text = slurp(out);
  const auto rows = rows_of(text, "fujii");
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r[0].find("T=1000") != std::string::npos);
    CHECK(std::stod(r[6]) > 0.0);
  }
  CHECK(rows_of(text, "fujii-trend").size() == 2);
}

TEST_CASE("circle commands") {
  const auto out = scratch("contour.csv");
  CHECK(run_args({"verify-contour", "--grid", "10,50", "--no-timestamp", "--out", out.string()}) == kPass);
  const auto rows = rows_of(slurp(out), "contour");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0].find("M=") != std::string::npos);
  CHECK(run_args({"verify-parseval", "--grid", "16,100", "--no-timestamp", "--out", out.string()}) == kPass);
}

TEST_CASE("smooth and explicit commands") {
  const auto out = scratch("smooth.csv");
  CHECK(run_args({"verify-smooth", "--grid", "100,1000", "--zeros", GLAB_ZEROS_FILE, "--max-gamma", "100",
                  "--no-timestamp", "--out", out.string()}) == kPass);
  CHECK(rows_of(slurp(out), "smoothed-psi")[0][0].find("n_cut=") != std::string::npos);
  CHECK(run_args({"verify-psi-explicit", "--grid", "1e3,1e4", "--heights", "100,1000", "--zeros", GLAB_ZEROS_FILE,
                  "--max-gamma", "1000", "--no-timestamp", "--out", out.string()}) == kPass);
  CHECK(rows_of(slurp(out), "psi-explicit").size() == 4);
}

TEST_CASE("sieve cache") {
  const auto dir = scratch("cache_dir");
  std::filesystem::remove_all(dir);
  const auto cache = dir / "table.glmb";
  const auto out = scratch("sieve.csv");
  CHECK(run_args({"sieve", "--n-max", "5000", "--cache", cache.string(), "--no-timestamp", "--out", out.string()}) ==
        kPass);
  CHECK(std::filesystem::exists(cache));
  const auto first = slurp(out);
  CHECK(run_args({"sieve", "--n-max", "5000", "--cache", cache.string(), "--no-timestamp", "--out", out.string()}) ==
        kPass);
  CHECK(slurp(out) == first);
  // A cache for another n_max is rebuilt.
  CHECK(run_args({"sieve", "--n-max", "6000", "--cache", cache.string(), "--no-timestamp", "--out", out.string()}) ==
        kPass);

  setenv(kCacheDirEnv, dir.c_str(), 1);
  CHECK(run_args({"sieve", "--n-max", "7000", "--no-timestamp", "--out", out.string()}) == kPass);
  CHECK(std::filesystem::exists(dir / "lambda_7000.glmb"));
  unsetenv(kCacheDirEnv);
}

TEST_CASE("tool binary") {
  const std::string cmd = std::string(GLAB_TOOL_PATH) + " zfr --family constant:0.5 --x 54.598 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string bad = std::string(GLAB_TOOL_PATH) + " verify-identities --grid 1:2 2> /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == kConfigError);
}
