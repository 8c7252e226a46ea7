#include "cpvar/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cpvar/lag_stats.hpp"

namespace cpvar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(uint64_t seed) {
  uint64_t s = seed;
  eng_.seed(splitmix64(s));
}

RngStream RngStream::for_replicate(uint64_t seed, uint64_t replicate_index) {
  return RngStream(seed ^ replicate_index);
}

double RngStream::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = kTwoPi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double RngStream::exponential() { return -std::log(1.0 - uniform01()); }

NoiseSpec NoiseSpec::gaussian(double sigma) {
  NoiseSpec s;
  s.kind = NoiseKind::Gaussian;
  s.sigma = sigma;
  return s;
}

NoiseSpec NoiseSpec::scaled_t6(double sigma) {
  NoiseSpec s;
  s.kind = NoiseKind::ScaledT6;
  s.sigma = sigma;
  return s;
}

NoiseSpec NoiseSpec::exp_shifted(double sigma) {
  NoiseSpec s;
  s.kind = NoiseKind::ExpShifted;
  s.sigma = sigma;
  return s;
}

NoiseSpec NoiseSpec::empirical_from_values(std::vector<double> values, double sigma) {
  if (values.size() < 2)
    throw std::invalid_argument("empirical noise: need at least 2 residuals");
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  if (!(var > 0.0))
    throw std::invalid_argument("empirical noise: residuals have zero variance");
  const double sd = std::sqrt(var);
  for (double& v : values) v = (v - mean) / sd;
  NoiseSpec s;
  s.kind = NoiseKind::Empirical;
  s.sigma = sigma;
  s.pool = std::move(values);
  return s;
}

NoiseSpec NoiseSpec::empirical_from_csv(const std::string& path, bool has_header,
                                        double sigma) {
  auto values = read_column_csv(path, has_header);
  auto s = empirical_from_values(std::move(values), sigma);
  s.source = path;
  return s;
}

double NoiseSpec::kappa4_hint() const {
  switch (kind) {
    case NoiseKind::Gaussian:
      return 3.0;
    case NoiseKind::ScaledT6:
      return 6.0;
    case NoiseKind::ExpShifted:
      return 9.0;
    case NoiseKind::Empirical:
      return kNaN;
  }
  return kNaN;
}

std::string NoiseSpec::label() const {
  switch (kind) {
    case NoiseKind::Gaussian:
      return "G";
    case NoiseKind::ScaledT6:
      return "T";
    case NoiseKind::ExpShifted:
      return "E";
    case NoiseKind::Empirical:
      return "EMP";
  }
  return "?";
}

double sample_one(const NoiseSpec& spec, RngStream& rng) {
  switch (spec.kind) {
    case NoiseKind::Gaussian:
      return spec.sigma * rng.normal();
    case NoiseKind::ScaledT6: {
      // sqrt(2/3) t_6 = Z * sqrt(2 / (E1 + E2 + E3)); chi^2_6 = 2(E1+E2+E3)
      const double z = rng.normal();
      const double e = rng.exponential() + rng.exponential() + rng.exponential();
      return spec.sigma * z * std::sqrt(2.0 / e);
    }
    case NoiseKind::ExpShifted:
      return spec.sigma * (rng.exponential() - 1.0);
    case NoiseKind::Empirical: {
      const std::size_t m = spec.pool.size();
      std::size_t idx = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(m));
      if (idx >= m) idx = m - 1;
      return spec.sigma * spec.pool[idx];
    }
  }
  throw std::logic_error("sample_one: unknown noise kind");
}

std::vector<double> sample_noise(const NoiseSpec& spec, int n, RngStream& rng) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& v : out) v = sample_one(spec, rng);
  return out;
}

MeanProfile build_scenario(int id, int n) {
  if (n < 4) throw std::domain_error("build_scenario: n >= 4 required");
  switch (id) {
    case 1:
      return MeanProfile::constant(n, 0.0);
    case 2: {
      if (n % 1000 != 0)
        throw std::domain_error("build_scenario: scenario 2 needs n divisible by 1000");
      std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; ++i) {
        const int p = i % 1000 + 1;  // position within the template
        for (int m = 1; m <= 6; ++m)
          if (p >= 100 * m + 1 && p <= 100 * m + 10) theta[static_cast<std::size_t>(i)] = 1.0;
        if (p >= 801 && p <= 820) theta[static_cast<std::size_t>(i)] = -3.0;
      }
      return MeanProfile::from_vector_circular(theta);
    }
    case 3: {
      if (n % 20 != 0)
        throw std::domain_error("build_scenario: scenario 3 needs n divisible by 20");
      std::vector<double> theta(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        theta[static_cast<std::size_t>(i)] = (i % 20 < 10) ? 1.0 : -1.0;
      return MeanProfile::from_vector_circular(theta);
    }
    default:
      throw std::domain_error("build_scenario: id must be 1, 2 or 3");
  }
}

namespace {

VarianceEstimate evaluate_kind(const EstimatorKind& kind, const CircularSeries& x,
                               const MeanProfile& mean) {
  switch (kind.tag) {
    case EstimatorKind::Tag::EVE: {
      if (kind.K != 0) return eve_ols(x, kind.K);
      const int chosen = tune_K(x, kind.K_min, kind.K_max);
      auto e = eve_ols(x, chosen);
      e.kind = kind;
      e.K_used = chosen;
      return e;
    }
    case EstimatorKind::Tag::MS:
      return ms_ols(x, kind.K);
    case EstimatorKind::Tag::GLS:
      return gls(x, kind.L, kind.w);
    case EstimatorKind::Tag::MAD:
      return mad(x);
    case EstimatorKind::Tag::DK:
      return dk(x);
    case EstimatorKind::Tag::RICE:
      return rice(x);
    case EstimatorKind::Tag::ORACLE:
      return oracle(x, mean);
    case EstimatorKind::Tag::SAMPLE_SD:
      return sample_sd(x);
  }
  throw std::logic_error("evaluate_kind: unknown estimator tag");
}

struct Moments {
  double mean = kNaN;
  double sd = kNaN;
  double mse = kNaN;
  long count = 0;
};

Moments column_moments(const std::vector<double>& v, double target) {
  Moments m;
  double sum = 0, sum_sq_err = 0;
  for (double x : v) {
    if (std::isnan(x)) continue;
    sum += x;
    ++m.count;
  }
  if (m.count == 0) return m;
  m.mean = sum / static_cast<double>(m.count);
  double ss = 0;
  for (double x : v) {
    if (std::isnan(x)) continue;
    ss += (x - m.mean) * (x - m.mean);
    sum_sq_err += (x - target) * (x - target);
  }
  m.sd = m.count > 1 ? std::sqrt(ss / static_cast<double>(m.count - 1)) : kNaN;
  m.mse = sum_sq_err / static_cast<double>(m.count);
  return m;
}

}  // namespace

SimResult run_table(const SimScenario& scenario,
                    const std::vector<EstimatorKind>& estimators,
                    const RunOptions& options) {
  if (scenario.replicates < 1)
    throw std::domain_error("run_table: replicates >= 1 required");
  if (scenario.mean.n() != scenario.n)
    throw std::domain_error("run_table: mean profile length mismatch");

  const std::size_t n_est = estimators.size();
  const std::size_t reps = static_cast<std::size_t>(scenario.replicates);

  SimResult result;
  result.label = scenario.label;
  result.seed = scenario.seed;
  result.replicates = scenario.replicates;
  result.sigma_true = scenario.noise.sigma;
  result.sigma_hat.assign(n_est, std::vector<double>(reps, kNaN));
  result.sigma2_hat.assign(n_est, std::vector<double>(reps, kNaN));

  std::vector<std::vector<long>> failures(n_est);

  const auto theta = scenario.mean.theta();
  auto worker = [&](std::size_t begin, std::size_t end, std::vector<long>& fail_counts) {
    fail_counts.assign(n_est, 0);
    for (std::size_t r = begin; r < end; ++r) {
      auto rng = RngStream::for_replicate(scenario.seed, r);
      std::vector<double> draw(theta.size());
      for (std::size_t i = 0; i < theta.size(); ++i)
        draw[i] = theta[i] + sample_one(scenario.noise, rng);
      const CircularSeries x(std::move(draw));
      for (std::size_t e = 0; e < n_est; ++e) {
        try {
          const auto est = evaluate_kind(estimators[e], x, scenario.mean);
          result.sigma_hat[e][r] = est.sigma_hat;
          result.sigma2_hat[e][r] = est.sigma2_hat;
        } catch (const std::exception&) {
          ++fail_counts[e];
        }
      }
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t n_threads = options.threads > 0 ? static_cast<std::size_t>(options.threads)
                                              : static_cast<std::size_t>(hw);
  n_threads = std::min(n_threads, reps);
  if (n_threads <= 1) {
    failures.resize(1);
    worker(0, reps, failures[0]);
  } else {
    failures.resize(n_threads);
    std::vector<std::thread> pool;
    const std::size_t chunk = (reps + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(reps, begin + chunk);
      pool.emplace_back(worker, begin, end, std::ref(failures[t]));
    }
    for (auto& th : pool) th.join();
  }

  const double sigma_true = scenario.noise.sigma;
  std::optional<std::size_t> oracle_idx;
  for (std::size_t e = 0; e < n_est; ++e)
    if (estimators[e].tag == EstimatorKind::Tag::ORACLE) oracle_idx = e;

  result.estimators.resize(n_est);
  for (std::size_t e = 0; e < n_est; ++e) {
    auto& summary = result.estimators[e];
    summary.kind = estimators[e];
    summary.label = estimators[e].label();
    const auto m = column_moments(result.sigma_hat[e], sigma_true);
    const auto m2 = column_moments(result.sigma2_hat[e], sigma_true * sigma_true);
    summary.mean_sigma_hat = m.mean;
    summary.se_sigma_hat = m.sd;
    summary.mse = options.re_on_variance_scale ? m2.mse : m.mse;
    summary.mean_sigma2_hat = m2.mean;
    for (const auto& f : failures) summary.failures += f[e];
  }
  if (oracle_idx) {
    const double mse_o = result.estimators[*oracle_idx].mse;
    for (auto& s : result.estimators) s.rel_efficiency = s.mse / mse_o;
  } else {
    for (auto& s : result.estimators) s.rel_efficiency = kNaN;
  }
  return result;
}

std::vector<double> relative_efficiency(const SimResult& result, bool on_variance_scale) {
  std::optional<std::size_t> oracle_idx;
  for (std::size_t e = 0; e < result.estimators.size(); ++e)
    if (result.estimators[e].kind.tag == EstimatorKind::Tag::ORACLE) oracle_idx = e;
  if (!oracle_idx)
    throw std::domain_error("relative_efficiency: no oracle estimator in result");

  const double target = on_variance_scale ? result.sigma_true * result.sigma_true
                                          : result.sigma_true;
  const auto& table = on_variance_scale ? result.sigma2_hat : result.sigma_hat;
  std::vector<double> mse(result.estimators.size());
  for (std::size_t e = 0; e < table.size(); ++e)
    mse[e] = column_moments(table[e], target).mse;
  std::vector<double> re(mse.size());
  for (std::size_t e = 0; e < mse.size(); ++e) re[e] = mse[e] / mse[*oracle_idx];
  return re;
}

namespace {

NoiseSpec noise_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "gaussian" || s == "G") return NoiseSpec::gaussian();
    if (s == "t6" || s == "scaled_t6" || s == "T") return NoiseSpec::scaled_t6();
    if (s == "exp" || s == "exp_shifted" || s == "E") return NoiseSpec::exp_shifted();
    throw std::runtime_error("config: unknown noise '" + s + "'");
  }
  if (j.is_object() && j.contains("empirical"))
    return NoiseSpec::empirical_from_csv(j.at("empirical").get<std::string>(),
                                         j.value("header", false));
  throw std::runtime_error("config: bad noise entry");
}

EstimatorKind estimator_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "eve") {
    if (j.contains("K") && j.at("K").is_string()) {
      if (j.at("K").get<std::string>() != "auto")
        throw std::runtime_error("config: eve K must be an integer or \"auto\"");
      return EstimatorKind::eve_tuned(j.value("K_min", 5), j.value("K_max", 20));
    }
    return EstimatorKind::eve(j.value("K", 10));
  }
  if (kind == "ms") return EstimatorKind::ms(j.value("K", 10));
  if (kind == "gls") return EstimatorKind::gls(j.value("L", 10), j.value("w", 0.0));
  if (kind == "mad") return EstimatorKind::mad();
  if (kind == "dk") return EstimatorKind::dk();
  if (kind == "rice") return EstimatorKind::rice();
  if (kind == "oracle") return EstimatorKind::oracle();
  if (kind == "sd") return EstimatorKind::sample_sd();
  throw std::runtime_error("config: unknown estimator kind '" + kind + "'");
}

}  // namespace

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  in >> j;

  SimConfig cfg;
  cfg.n = j.value("n", 1000);
  cfg.replicates = j.value("replicates", 500);
  cfg.seed = j.value("seed", static_cast<uint64_t>(1));
  cfg.re_on_variance_scale = j.value("re_scale", std::string("sigma")) == "sigma2";
  for (const auto& s : j.at("scenarios")) cfg.scenario_ids.push_back(s.get<int>());
  for (const auto& s : j.at("noises")) cfg.noises.push_back(noise_from_json(s));
  for (const auto& s : j.at("estimators")) cfg.estimators.push_back(estimator_from_json(s));
  if (cfg.scenario_ids.empty() || cfg.noises.empty() || cfg.estimators.empty())
    throw std::runtime_error("config: scenarios, noises and estimators must be non-empty");
  return cfg;
}

namespace {

void write_cell(std::ofstream& out, double v) {
  if (std::isnan(v)) {
    out << "NA";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

}  // namespace

void write_mean_se_table(const std::string& path, const std::vector<SimResult>& rows) {
  if (rows.empty()) throw std::domain_error("write_mean_se_table: no rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write table: " + path);
  out << "scenario";
  for (const auto& e : rows.front().estimators)
    out << "," << e.label << "_mean," << e.label << "_se";
  out << "\n";
  for (const auto& row : rows) {
    out << row.label;
    for (const auto& e : row.estimators) {
      out << ",";
      write_cell(out, e.mean_sigma_hat);
      out << ",";
      write_cell(out, e.se_sigma_hat);
    }
    out << "\n";
  }
}

void write_rel_eff_table(const std::string& path, const std::vector<SimResult>& rows) {
  if (rows.empty()) throw std::domain_error("write_rel_eff_table: no rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write table: " + path);
  out << "scenario";
  for (const auto& e : rows.front().estimators)
    if (e.kind.tag != EstimatorKind::Tag::ORACLE) out << "," << e.label;
  out << "\n";
  for (const auto& row : rows) {
    out << row.label;
    for (const auto& e : row.estimators) {
      if (e.kind.tag == EstimatorKind::Tag::ORACLE) continue;
      out << ",";
      write_cell(out, e.rel_efficiency);
    }
    out << "\n";
  }
}

}  // namespace cpvar
