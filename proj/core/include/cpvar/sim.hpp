#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cpvar/estimators.hpp"
#include "cpvar/mean_profile.hpp"

namespace cpvar {

uint64_t splitmix64(uint64_t& state);

/// Per-replicate random stream. Streams are derived from (seed, replicate)
/// as splitmix64(seed XOR replicate), which keeps results independent of
/// how replicates are distributed over threads.
class RngStream {
public:
  explicit RngStream(uint64_t seed);
  static RngStream for_replicate(uint64_t seed, uint64_t replicate_index);

  double uniform01();     // [0, 1)
  double normal();        // Box-Muller, spare value cached
  double exponential();   // Exp(1)
  uint64_t next_u64() { return eng_(); }

private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class NoiseKind { Gaussian, ScaledT6, ExpShifted, Empirical };

/// All built-in kinds have mean 0 and variance 1 (kappa4 = 3, 6, 9). The
/// empirical kind resamples with replacement from a residual pool that is
/// standardized to mean 0 / variance 1 on load. sigma scales the draws.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::Gaussian;
  double sigma = 1.0;
  std::vector<double> pool;  // standardized residuals, Empirical only
  std::string source;

  static NoiseSpec gaussian(double sigma = 1.0);
  static NoiseSpec scaled_t6(double sigma = 1.0);
  static NoiseSpec exp_shifted(double sigma = 1.0);
  static NoiseSpec empirical_from_csv(const std::string& path, bool has_header = false,
                                      double sigma = 1.0);
  static NoiseSpec empirical_from_values(std::vector<double> values, double sigma = 1.0);

  double kappa4_hint() const;  // 3, 6, 9; NaN for empirical
  std::string label() const;   // G, T, E, EMP
};

double sample_one(const NoiseSpec& spec, RngStream& rng);
std::vector<double> sample_noise(const NoiseSpec& spec, int n, RngStream& rng);

/// Mean structures of the three simulation scenarios: 1 is the constant
/// zero vector, 2 a sparse pattern on a length-1000 template (six unit
/// blocks of length 10 and one level -3 block of length 20), 3 alternating
/// +-1 blocks of length 10. n must be a multiple of the scenario period
/// (1000 for scenario 2, 20 for scenario 3); larger n tiles the template.
MeanProfile build_scenario(int id, int n);

struct SimScenario {
  int n = 1000;
  MeanProfile mean = MeanProfile::constant(1000);
  NoiseSpec noise;
  int replicates = 500;
  uint64_t seed = 1;
  std::string label;
};

struct EstimatorSummary {
  EstimatorKind kind;
  std::string label;
  double mean_sigma_hat = 0.0;
  double se_sigma_hat = 0.0;  // sample sd across replicates; NaN when < 2 values
  double mean_sigma2_hat = 0.0;
  double mse = 0.0;             // of sigma_hat about the true sigma
  double rel_efficiency = 0.0;  // MSE ratio vs the oracle column; NaN if absent
  long failures = 0;
};

struct SimResult {
  std::string label;
  uint64_t seed = 0;
  int replicates = 0;
  double sigma_true = 1.0;
  std::vector<EstimatorSummary> estimators;
  // per-replicate draws, row e = estimators[e]; NaN marks a recorded failure
  std::vector<std::vector<double>> sigma_hat;
  std::vector<std::vector<double>> sigma2_hat;
};

struct RunOptions {
  int threads = 0;  // 0 = all cores
  bool re_on_variance_scale = false;
};

/// Runs `replicates` draws X = theta + eps, evaluates every estimator on
/// the same draw, and aggregates sqrt-scale statistics. Bit-identical for a
/// fixed (seed, scenario) regardless of thread count: replicate r uses its
/// own stream and aggregation runs in replicate order.
SimResult run_table(const SimScenario& scenario,
                    const std::vector<EstimatorKind>& estimators,
                    const RunOptions& options = {});

/// MSE(estimator)/MSE(oracle), recomputed from a finished result.
std::vector<double> relative_efficiency(const SimResult& result,
                                        bool on_variance_scale = false);

struct SimConfig {
  int n = 1000;
  int replicates = 500;
  uint64_t seed = 1;
  std::vector<int> scenario_ids;
  std::vector<NoiseSpec> noises;
  std::vector<EstimatorKind> estimators;
  bool re_on_variance_scale = false;
};

SimConfig load_sim_config(const std::string& path);

/// table1: label + mean/se column pair per estimator. table3: label + one
/// relative-efficiency column per non-oracle estimator. SEs of single-
/// replicate runs are written as NA.
void write_mean_se_table(const std::string& path, const std::vector<SimResult>& rows);
void write_rel_eff_table(const std::string& path, const std::vector<SimResult>& rows);

}  // namespace cpvar
