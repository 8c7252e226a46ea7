#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  const char* p = std::getenv("CPVAR_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CPVAR_CLI must point at the cpvar binary");
  return p;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const auto err_file = fs::temp_directory_path() / "cpvar_cli_stderr.txt";
  const std::string cmd = cli_path() + " " + args + " 2>" + err_file.string();
  std::array<char, 4096> buf{};
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string scratch_dir() {
  const auto dir = fs::temp_directory_path() / "cpvar_cli_test";
  fs::create_directories(dir);
  return dir.string();
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() + "/" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

std::string constant_csv(int n, double value) {
  std::ostringstream ss;
  for (int i = 0; i < n; ++i) ss << value << "\n";
  return write_file("constant.csv", ss.str());
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("estimate: constant column gives zero for every estimator") {
  const auto csv = constant_csv(50, 2.75);
  const auto res = run_cli("estimate " + csv + " --estimator=all --K=5");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() >= 7);  // header + 6 estimators
  CHECK(rows[0][0] == "name");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    CHECK(std::stod(rows[r][2]) == 0.0);  // sigma_hat
  }
}

TEST_CASE("estimate: auto K echoes the chosen K in K_used") {
  // scenario-3 shaped deterministic series
  std::ostringstream ss;
  for (int i = 0; i < 1000; ++i) {
    const double theta = (i % 20 < 10) ? 1.0 : -1.0;
    ss << theta + 0.01 * ((i * 2654435761u % 1000) / 1000.0 - 0.5) << "\n";
  }
  const auto csv = write_file("s3.csv", ss.str());
  const auto res = run_cli("estimate " + csv + " --estimator=eve --K=auto");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[1][1].empty());
  const int used = std::stoi(rows[1][1]);
  CHECK(used >= 5);
  CHECK(used <= 20);
}

TEST_CASE("estimate: sigma close to one for a gaussian-ish column") {
  // deterministic light-tailed pseudo-noise via a fixed LCG + Box-Muller
  std::ostringstream ss;
  uint64_t state = 88172645463325252ull;
  auto next_u = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return (state >> 11) * 0x1.0p-53;
  };
  for (int i = 0; i < 500; ++i) {
    const double u1 = 1.0 - next_u();
    const double u2 = next_u();
    ss << std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2) << "\n";
  }
  const auto csv = write_file("gauss.csv", ss.str());
  const auto res = run_cli("estimate " + csv + " --estimator=eve --K=10");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  const double sigma_hat = std::stod(rows[1][2]);
  CHECK(sigma_hat > 0.85);
  CHECK(sigma_hat < 1.15);
}

TEST_CASE("estimate error paths: missing file 1, short series 1, bad flag 2") {
  CHECK(run_cli("estimate /nonexistent/file.csv").exit_code == 1);
  const auto tiny = write_file("tiny.csv", "1\n2\n3\n");
  CHECK(run_cli("estimate " + tiny).exit_code == 1);
  const auto ok = constant_csv(20, 0.0);
  CHECK(run_cli("estimate " + ok + " --no-such-flag").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("risk: bound curve table") {
  const auto res = run_cli("risk --L=2,10 --w-max=0.5 --steps=2 --kappa4=3");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 7);  // header + 2 * 3 grid points
  CHECK(rows[0] == std::vector<std::string>{"L", "w", "lower", "upper_ols", "upper_gls"});
  // w = 0 rows: all three bounds coincide
  CHECK(std::stod(rows[1][2]) == doctest::Approx(std::stod(rows[1][3])));
  CHECK(std::stod(rows[1][2]) == doctest::Approx(std::stod(rows[1][4])));
  // L=2 at w=0.5: upper_ols = kappa4 + 4 + 8*0.5 = 11
  CHECK(std::stod(rows[3][1]) == doctest::Approx(0.5));
  CHECK(std::stod(rows[3][3]) == doctest::Approx(11.0).epsilon(1e-12));
  // lower <= min(uppers) on every row
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double lower = std::stod(rows[r][2]);
    CHECK(lower <= std::stod(rows[r][3]) + 1e-10);
    CHECK(lower <= std::stod(rows[r][4]) + 1e-10);
  }
}

TEST_CASE("verify: c vectors and matrix input") {
  {
    const auto res = run_cli("verify --c=\"2,-1\" --L=2");
    REQUIRE(res.exit_code == 0);
    const auto v = nlohmann::json::parse(res.out);
    CHECK(v.at("in_QL").get<bool>());
    CHECK(v.at("equivariant").get<bool>());
    CHECK(v.at("unbiased_circular").get<bool>());
  }
  {
    const auto res = run_cli("verify --c=\"1,0\" --L=2");
    REQUIRE(res.exit_code == 0);
    const auto v = nlohmann::json::parse(res.out);
    CHECK_FALSE(v.at("in_QL").get<bool>());
  }
  {
    // identity/n as a dense csv: unbiased_circular must be false
    const int n = 12;
    std::ostringstream ss;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) ss << (i == j ? 1.0 / n : 0.0) << (j + 1 < n ? "," : "\n");
    }
    const auto path = write_file("identity.csv", ss.str());
    const auto res = run_cli("verify " + path + " --L=3 --classical");
    REQUIRE(res.exit_code == 0);
    const auto v = nlohmann::json::parse(res.out);
    CHECK(v.at("equivariant").get<bool>());
    CHECK_FALSE(v.at("unbiased_circular").get<bool>());
    CHECK_FALSE(v.at("unbiased_classical").at("by_enumeration").get<bool>());
  }
  {
    // c-vector json file
    const auto path = write_file("c.json", R"({"c": [2.0, -1.0], "n": 16})");
    const auto res = run_cli("verify --c-json=" + path + " --L=2");
    REQUIRE(res.exit_code == 0);
    const auto v = nlohmann::json::parse(res.out);
    CHECK(v.at("n").get<int>() == 16);
    CHECK(v.at("unbiased_circular").get<bool>());
  }
  CHECK(run_cli("verify").exit_code == 2);
}

TEST_CASE("simulate: deterministic outputs, NA for single replicate") {
  const std::string cfg = R"({
    "n": 100, "replicates": 3, "seed": 77,
    "scenarios": [1], "noises": ["gaussian"],
    "estimators": [{"kind": "eve", "K": 5}, {"kind": "oracle"}]
  })";
  const auto cfg_path = write_file("sim.json", cfg);
  const auto out1 = scratch_dir() + "/out1";
  const auto out2 = scratch_dir() + "/out2";
  REQUIRE(run_cli("simulate " + cfg_path + " --out=" + out1).exit_code == 0);
  REQUIRE(run_cli("simulate " + cfg_path + " --out=" + out2).exit_code == 0);

  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto t1a = slurp(out1 + "/table1.csv");
  CHECK(t1a == slurp(out2 + "/table1.csv"));
  CHECK(slurp(out1 + "/table3.csv") == slurp(out2 + "/table3.csv"));
  CHECK(t1a.rfind("scenario,", 0) == 0);

  const std::string cfg1 = R"({
    "n": 100, "replicates": 1, "seed": 77,
    "scenarios": [1], "noises": ["gaussian"],
    "estimators": [{"kind": "eve", "K": 5}]
  })";
  const auto cfg1_path = write_file("sim1.json", cfg1);
  const auto out3 = scratch_dir() + "/out3";
  REQUIRE(run_cli("simulate " + cfg1_path + " --out=" + out3).exit_code == 0);
  const auto t1 = slurp(out3 + "/table1.csv");
  CHECK(t1.find("NA") != std::string::npos);

  CHECK(run_cli("simulate /nonexistent/config.json").exit_code == 1);
}

TEST_CASE("simulate: bundled quick config produces the table layout") {
  const char* cfg_dir = std::getenv("CPVAR_CONFIG_DIR");
  REQUIRE_MESSAGE(cfg_dir != nullptr, "CPVAR_CONFIG_DIR must point at configs/");
  const auto out = scratch_dir() + "/quick_out";
  const auto res =
      run_cli("simulate " + std::string(cfg_dir) + "/quick.json --out=" + out);
  REQUIRE(res.exit_code == 0);
  std::ifstream t1(out + "/table1.csv");
  REQUIRE(t1.good());
  std::string header;
  std::getline(t1, header);
  CHECK(header.find("EVE(K=10)_mean") != std::string::npos);
  CHECK(header.find("Oracle_mean") != std::string::npos);
  std::string row;
  int rows = 0;
  while (std::getline(t1, row))
    if (!row.empty()) ++rows;
  CHECK(rows == 2);  // S1-G and S3-G
  std::ifstream t3(out + "/table3.csv");
  REQUIRE(t3.good());
  std::getline(t3, header);
  CHECK(header.find("Rice") != std::string::npos);
  CHECK(header.find("Oracle") == std::string::npos);
}

TEST_CASE("tune: score table marks the selected K") {
  std::ostringstream ss;
  for (int i = 0; i < 400; ++i) {
    const double theta = (i % 20 < 10) ? 1.0 : -1.0;
    ss << theta + 0.02 * ((i * 2654435761u % 997) / 997.0 - 0.5) << "\n";
  }
  const auto csv = write_file("tune.csv", ss.str());
  const auto res = run_cli("tune " + csv + " --K-min=5 --K-max=20");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 17);  // header + 16 K values
  CHECK(rows[0] == std::vector<std::string>{"K", "score", "selected"});
  int selected_count = 0, selected_K = 0;
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (rows[r][2] == "1") {
      ++selected_count;
      selected_K = std::stoi(rows[r][0]);
    }
  CHECK(selected_count == 1);
  CHECK(selected_K == 10);
}
