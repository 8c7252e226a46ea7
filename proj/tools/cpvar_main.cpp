// Command-line front end: estimate | simulate | risk | verify | tune.
// Exit codes: 0 success, 1 input error, 2 usage error. Data goes to stdout
// or files, diagnostics to stderr.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpvar/circular_series.hpp"
#include "cpvar/estimators.hpp"
#include "cpvar/lag_stats.hpp"
#include "cpvar/minimax.hpp"
#include "cpvar/quad_estimator.hpp"
#include "cpvar/risk.hpp"
#include "cpvar/sim.hpp"
#include "cpvar/verifier.hpp"

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int threads_from_env() {
  const char* env = std::getenv("EVE_THREADS");
  if (!env) return 0;
  const int v = std::atoi(env);
  return v > 0 ? v : 0;
}

struct EstimateArgs {
  std::string input;
  std::string estimator = "eve";
  std::string K = "10";
  int L = 10;
  double w = 0.0;
  bool header = false;
};

void print_estimate_row(const cpvar::VarianceEstimate& e) {
  std::cout << e.kind.label() << ","
            << (e.K_used ? std::to_string(*e.K_used) : std::string()) << ","
            << fmt(e.sigma_hat) << "," << fmt(e.sigma2_hat) << "\n";
}

int run_estimate(const EstimateArgs& args) {
  const auto x = cpvar::read_series_csv(args.input, args.header);

  std::optional<int> K;
  if (args.K != "auto") {
    try {
      size_t pos = 0;
      K = std::stoi(args.K, &pos);
      if (pos != args.K.size()) throw std::invalid_argument(args.K);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--K must be an integer or 'auto'");
    }
  }
  auto eve_est = [&]() {
    if (K) return cpvar::eve_ols(x, *K);
    const int chosen = cpvar::tune_K(x, 5, 20);
    auto e = cpvar::eve_ols(x, chosen);
    e.kind = cpvar::EstimatorKind::eve_tuned();
    return e;
  };
  auto ms_est = [&]() { return cpvar::ms_ols(x, K ? *K : 10); };

  std::vector<std::string> wanted;
  if (args.estimator == "all")
    wanted = {"eve", "ms", "gls", "mad", "dk", "rice"};
  else
    wanted = {args.estimator};

  std::cout << "name,K_used,sigma_hat,sigma2_hat\n";
  for (const auto& name : wanted) {
    if (name == "eve")
      print_estimate_row(eve_est());
    else if (name == "ms")
      print_estimate_row(ms_est());
    else if (name == "gls")
      print_estimate_row(cpvar::gls(x, args.L, args.w));
    else if (name == "mad")
      print_estimate_row(cpvar::mad(x));
    else if (name == "dk")
      print_estimate_row(cpvar::dk(x));
    else if (name == "rice")
      print_estimate_row(cpvar::rice(x));
    else if (name == "sd")
      print_estimate_row(cpvar::sample_sd(x));
    else
      throw CLI::ValidationError("unknown estimator '" + name + "'");
  }
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  const auto cfg = cpvar::load_sim_config(config_path);
  cpvar::RunOptions options;
  options.threads = threads_from_env();
  options.re_on_variance_scale = cfg.re_on_variance_scale;

  std::vector<cpvar::SimResult> rows;
  for (int sid : cfg.scenario_ids) {
    for (const auto& noise : cfg.noises) {
      cpvar::SimScenario scenario;
      scenario.n = cfg.n;
      scenario.mean = cpvar::build_scenario(sid, cfg.n);
      scenario.noise = noise;
      scenario.replicates = cfg.replicates;
      scenario.seed = cfg.seed;
      scenario.label = "S" + std::to_string(sid) + "-" + noise.label();
      std::cerr << "running " << scenario.label << " (" << cfg.replicates
                << " replicates)\n";
      rows.push_back(cpvar::run_table(scenario, cfg.estimators, options));
    }
  }
  std::filesystem::create_directories(out_dir);
  cpvar::write_mean_se_table(out_dir + "/table1.csv", rows);
  cpvar::write_rel_eff_table(out_dir + "/table3.csv", rows);
  return 0;
}

int run_risk(const std::string& L_list, double w_max, int steps, double kappa4,
             const std::string& out_path) {
  std::vector<int> Ls;
  std::stringstream ss(L_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      Ls.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--L expects a comma-separated integer list");
    }
  }
  if (Ls.empty()) throw CLI::ValidationError("--L expects at least one value");
  if (out_path.empty()) {
    cpvar::write_bound_curves(std::cout, Ls, w_max, steps, kappa4);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    cpvar::write_bound_curves(out, Ls, w_max, steps, kappa4);
  }
  return 0;
}

std::vector<double> parse_c_list(const std::string& text) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      c.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--c expects a comma-separated number list");
    }
  }
  if (c.empty()) throw CLI::ValidationError("--c expects at least one value");
  return c;
}

int run_verify(const std::string& matrix_path, const std::string& c_text,
               const std::string& c_json_path, int L, int n, bool classical) {
  nlohmann::json verdict;
  std::optional<cpvar::QuadEstimator> a;

  if (!c_text.empty() || !c_json_path.empty()) {
    std::vector<double> c;
    if (!c_text.empty()) {
      c = parse_c_list(c_text);
    } else {
      std::ifstream in(c_json_path);
      if (!in) throw std::runtime_error("cannot open " + c_json_path);
      nlohmann::json j;
      in >> j;
      for (const auto& v : j.at("c")) c.push_back(v.get<double>());
      if (j.contains("n")) n = j.at("n").get<int>();
    }
    if (2 * static_cast<int>(c.size()) > n)
      throw std::runtime_error("need n >= 2*len(c) to materialize the estimator");
    double sum = 0, ksum = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      sum += c[i];
      ksum += static_cast<double>(i + 1) * c[i];
    }
    verdict["in_QL"] = cpvar::is_in_QL(c);
    verdict["constraints"] = {{"sum_c", sum}, {"sum_kc", ksum}};
    a = cpvar::QuadEstimator::from_coefficients(n, c);
  } else if (!matrix_path.empty()) {
    a = cpvar::read_matrix_csv(matrix_path);
    verdict["constraints"] = {{"trace", a->trace()}};
  } else {
    throw CLI::ValidationError("verify needs a matrix csv, --c or --c-json");
  }

  verdict["n"] = a->n();
  verdict["L"] = L;
  verdict["equivariant"] = cpvar::is_equivariant(*a);
  verdict["unbiased_circular"] = cpvar::is_unbiased_circular(*a, L);
  if (classical) {
    const auto cv = cpvar::is_unbiased_classical(*a, L);
    nlohmann::json jc;
    jc["by_enumeration"] = cv.by_enumeration;
    if (cv.by_conditions)
      jc["by_conditions"] = *cv.by_conditions;
    else
      jc["by_conditions"] = nullptr;
    verdict["unbiased_classical"] = jc;
  }
  std::cout << verdict.dump(2) << "\n";
  return 0;
}

int run_tune(const std::string& input, int K_min, int K_max, bool header) {
  const auto x = cpvar::read_series_csv(input, header);
  const auto y = cpvar::rescaled_stats(x, K_max + 1, true);
  const auto scores = cpvar::tune_scores(y, K_min, K_max);
  const int chosen = cpvar::tune_K_on_stats(y, K_min, K_max);
  std::cout << "K,score,selected\n";
  for (int K = K_min; K <= K_max; ++K)
    std::cout << K << "," << fmt(scores[static_cast<std::size_t>(K - K_min)]) << ","
              << (K == chosen ? 1 : 0) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variance estimation for multiple change-point models"};
  app.require_subcommand(1);

  EstimateArgs est_args;
  auto* est = app.add_subcommand("estimate", "estimate sigma from a one-column csv");
  est->add_option("input", est_args.input, "input csv")->required();
  est->add_option("--estimator", est_args.estimator,
                  "eve|ms|gls|mad|dk|rice|sd|all (default eve)");
  est->add_option("--K", est_args.K, "lag count for eve/ms, or 'auto'");
  est->add_option("--L", est_args.L, "lag count for gls");
  est->add_option("--w", est_args.w, "W(theta)/(n sigma^2) ratio for gls");
  est->add_flag("--header", est_args.header, "input csv has a header row");

  std::string sim_config, sim_out = ".";
  auto* sim = app.add_subcommand("simulate", "run a scenario table from a json config");
  sim->add_option("config", sim_config, "json config")->required();
  sim->add_option("--out", sim_out, "output directory (table1.csv, table3.csv)");

  std::string risk_L = "2";
  double risk_wmax = 0.8;
  int risk_steps = 100;
  double risk_kappa4 = 3.0;
  std::string risk_out;
  auto* risk = app.add_subcommand("risk", "emit minimax bound curves as csv");
  risk->add_option("--L", risk_L, "comma-separated segment-length bounds");
  risk->add_option("--w-max", risk_wmax, "grid upper end for w");
  risk->add_option("--steps", risk_steps, "grid steps");
  risk->add_option("--kappa4", risk_kappa4, "standardized fourth moment");
  risk->add_option("--out", risk_out, "output file (default stdout)");

  std::string verify_matrix, verify_c, verify_cjson;
  int verify_L = 2, verify_n = 24;
  bool verify_classical = false;
  auto* verify = app.add_subcommand("verify", "check equivariance/unbiasedness");
  verify->add_option("matrix", verify_matrix, "dense symmetric matrix csv");
  verify->add_option("--c", verify_c, "coefficient list, e.g. \"2,-1\"");
  verify->add_option("--c-json", verify_cjson, "json file {\"c\": [...], \"n\": int}");
  verify->add_option("--L", verify_L, "model class parameter L");
  verify->add_option("--n", verify_n, "dimension when building from --c");
  verify->add_flag("--classical", verify_classical, "also check Theta_L^c unbiasedness");

  std::string tune_input;
  int tune_kmin = 5, tune_kmax = 20;
  bool tune_header = false;
  auto* tune = app.add_subcommand("tune", "data-driven K selection scores");
  tune->add_option("input", tune_input, "input csv")->required();
  tune->add_option("--K-min", tune_kmin, "smallest K");
  tune->add_option("--K-max", tune_kmax, "largest K");
  tune->add_flag("--header", tune_header, "input csv has a header row");

  try {
    app.parse(argc, argv);
    if (est->parsed()) return run_estimate(est_args);
    if (sim->parsed()) return run_simulate(sim_config, sim_out);
    if (risk->parsed())
      return run_risk(risk_L, risk_wmax, risk_steps, risk_kappa4, risk_out);
    if (verify->parsed())
      return run_verify(verify_matrix, verify_c, verify_cjson, verify_L, verify_n,
                        verify_classical);
    if (tune->parsed()) return run_tune(tune_input, tune_kmin, tune_kmax, tune_header);
    std::cerr << app.help() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      std::cout << app.help() << "\n";
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
