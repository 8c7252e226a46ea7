// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Runs everything from scratch with fixed seeds.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../helpers/test_linalg.hpp"
#include "cpvar/estimators.hpp"
#include "cpvar/lag_stats.hpp"
#include "cpvar/minimax.hpp"
#include "cpvar/quad_estimator.hpp"
#include "cpvar/risk.hpp"
#include "cpvar/sim.hpp"
#include "cpvar/verifier.hpp"

using namespace cpvar;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

bool rel_close(double a, double b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
  return std::abs(a - b) / scale <= tol;
}

// ---------------------------------------------------------------------------
// criterion 1: Table 1, S1-G, EVE(K=10)

Outcome criterion1() {
  SimScenario sc;
  sc.n = 1000;
  sc.mean = build_scenario(1, 1000);
  sc.noise = NoiseSpec::gaussian();
  sc.replicates = 500;
  sc.seed = 107;
  sc.label = "S1-G";

  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_table(sc, {EstimatorKind::eve(10)}, RunOptions{1, false});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const double mean = r.estimators[0].mean_sigma_hat;
  const double se = r.estimators[0].se_sigma_hat;
  const bool pass = std::abs(mean - 1.000) <= 0.004 && se >= 0.021 && se <= 0.031 &&
                    secs < 60.0;
  return {pass, fmt("mean=%.4f (target 1.000+-0.004), se=%.4f (target [0.021,0.031]), "
                    "%.2fs single-threaded (limit 60s)",
                    mean, se, secs)};
}

// criterion 2: Table 1, S3-G, EVE(K=15) upward bias

Outcome criterion2() {
  SimScenario sc;
  sc.n = 1000;
  sc.mean = build_scenario(3, 1000);
  sc.noise = NoiseSpec::gaussian();
  sc.replicates = 500;
  sc.seed = 107;
  sc.label = "S3-G";
  const auto r = run_table(sc, {EstimatorKind::eve(15)}, RunOptions{0, false});
  const double mean = r.estimators[0].mean_sigma_hat;
  const bool pass = std::abs(mean - 1.253) <= 0.008;
  return {pass, fmt("mean=%.4f (target 1.253+-0.008)", mean)};
}

// criterion 3: tuner picks K = 10 in scenario 3

Outcome criterion3() {
  const int reps = 500;
  const auto theta = build_scenario(3, 1000).theta();
  const auto noise = NoiseSpec::gaussian();
  int hits = 0;
  for (int r = 0; r < reps; ++r) {
    auto rng = RngStream::for_replicate(211, static_cast<uint64_t>(r));
    std::vector<double> x(theta.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = theta[i] + sample_one(noise, rng);
    if (tune_K(CircularSeries(std::move(x)), 5, 20) == 10) ++hits;
  }
  const double freq = static_cast<double>(hits) / reps;
  return {freq >= 0.90, fmt("K_hat=10 frequency %.3f (paper 0.968, threshold 0.90)", freq)};
}

// criterion 4: Table 3 relative efficiencies

Outcome criterion4() {
  RunOptions opt{0, false};
  SimScenario s1;
  s1.n = 1000;
  s1.mean = build_scenario(1, 1000);
  s1.noise = NoiseSpec::gaussian();
  s1.replicates = 500;
  s1.seed = 107;
  const auto r1 = run_table(
      s1, {EstimatorKind::eve(10), EstimatorKind::rice(), EstimatorKind::oracle()}, opt);
  const double re_eve = r1.estimators[0].rel_efficiency;

  SimScenario s3 = s1;
  s3.mean = build_scenario(3, 1000);
  const auto r3 = run_table(
      s3, {EstimatorKind::eve(10), EstimatorKind::rice(), EstimatorKind::oracle()}, opt);
  const double re_rice = r3.estimators[1].rel_efficiency;

  const bool pass = re_eve >= 1.10 && re_eve <= 1.35 && re_rice >= 10.0;
  return {pass, fmt("RE(EVE10,S1-G)=%.3f (target [1.10,1.35], paper 1.21); "
                    "RE(Rice,S3-G)=%.2f (target >=10, paper 17.63)",
                    re_eve, re_rice)};
}

// criterion 5: deterministic risk identity, no Monte Carlo

Outcome criterion5() {
  const int n = 240, K = 5;
  const int len = 48;
  const double g = std::sqrt(1.5);  // W = 8 g^2 = 12, Wratio = 12/240 = 0.05
  std::vector<double> theta_vec(static_cast<std::size_t>(n));
  const double levels[5] = {0.0, g, 0.0, g, 2.0 * g};
  for (int i = 0; i < n; ++i) theta_vec[static_cast<std::size_t>(i)] = levels[(i / len) % 5];
  const auto theta = MeanProfile::from_vector_circular(theta_vec);
  if (theta.L() != len || !rel_close(theta.W() / (n * 1.0), 0.05, 1e-12))
    return {false, "bad test fixture"};

  const auto a = QuadEstimator::eve_matrix(n, K);
  double worst = 0;
  for (double kappa4 : {3.0, 6.0, 9.0}) {
    const NoiseMoments nm(1.0, kappa4);
    const double lhs = quad_risk(a, theta, nm);
    const double rhs = ols_risk(K, n, nm, 0.05, true).risk;
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return {worst <= 1e-8, fmt("max relative gap %.2e (tolerance 1e-8)", worst)};
}

// criterion 6: tightness of the K = L(theta) upper bound

Outcome criterion6() {
  const int n = 40, K = 4;
  double worst = 0;
  double lhs1 = 0, rhs1 = 0;
  for (double kappa4 : {3.0, 6.0, 9.0}) {
    const NoiseMoments nm(1.0, kappa4);
    const auto theta = MeanProfile::alternating_blocks(n, K, 1.0, -1.0);
    const double wratio = theta.W() / (n * nm.sigma2);
    const double lhs = quad_risk(QuadEstimator::eve_matrix(n, K), theta, nm);
    const double rhs = ols_risk(K, n, nm, wratio, false).risk;
    if (kappa4 == 3.0) {
      lhs1 = lhs;
      rhs1 = rhs;
    }
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return {worst <= 1e-8,
          fmt("max relative gap %.2e (tolerance 1e-8); at kappa4=3: exact risk %.6f vs "
              "bound %.6f. The noise-mean cross terms cancel for alternating blocks "
              "(A theta is orthogonal to the jump pattern), so equality cannot hold at "
              "this theta; staircase profiles approach the bound instead.",
              worst, lhs1, rhs1)};
}

// criterion 7: exact minimax risk of alpha_2

Outcome criterion7() {
  const int n = 40;
  const NoiseMoments nm(1.0, 3.0);
  double worst = 0;
  double lhs1 = 0, rhs1 = 0;
  for (double mu : {0.5, 1.0, 2.0}) {
    const auto theta = MeanProfile::alternating_blocks(n, 2, mu, -mu);
    const double w = theta.W() / (n * nm.sigma2);
    const double lhs = quad_risk(QuadEstimator::eve_matrix(n, 2), theta, nm);
    const double rhs = nm.kappa4 + 4.0 + 8.0 * w;
    if (mu == 1.0) {
      lhs1 = lhs;
      rhs1 = rhs;
    }
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return {worst <= 1e-8,
          fmt("max relative gap %.2e vs kappa4+4+8w; at mu=1: exact risk %.6f vs %.6f. "
              "For length-2 alternating blocks A theta = 0 identically (each noise "
              "coordinate's coefficient 2(2theta_i - theta_{i+1} - theta_{i-1}) - "
              "(2theta_i - theta_{i+2} - theta_{i-2}) vanishes), so the risk stays at "
              "kappa4+4 for every mu and the stated equality cannot be attained.",
              worst, lhs1, rhs1)};
}

// criterion 8: minimax machinery

Outcome criterion8() {
  for (int L = 2; L <= 30; ++L) {
    const double expect = 3.0 - 1.0 + (4.0 * L + 2.0) / (L * (L - 1.0));
    if (std::abs(g_L(L, 0.0, 3.0) - expect) > 1e-12 * expect)
      return {false, fmt("g_L(0) mismatch at L=%d", L)};
  }
  for (double lambda : {0.5, 1.0, 2.0}) {
    const auto d = d_sequence(lambda, 8);
    for (int L = 1; L <= 8; ++L) {
      auto m = testlin::zeros(static_cast<std::size_t>(L), static_cast<std::size_t>(L));
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              lambda * (std::min(i, j) + 1) + (i == j ? 1.0 : 0.0);
      const double det = testlin::determinant(m);
      if (!rel_close(d[static_cast<std::size_t>(L)], det, 1e-10))
        return {false, fmt("D_L vs determinant mismatch at L=%d lambda=%.2f", L, lambda)};
    }
  }
  for (int L : {10, 15}) {
    for (int s = 0; s <= 100; ++s) {
      const double w = 0.8 * s / 100.0;
      const auto b = minimax_bounds(L, w, 3.0);
      if (b.lower > b.upper() + 1e-10)
        return {false, fmt("bracket violated at L=%d w=%.3f", L, w)};
    }
  }
  return {true, "g_L(0) exact (L=2..30); D_L = dense det (L<=8); "
                "g_L(2w) <= min(OLS-L, GLS-L) on the 100-point grid (L=10,15)"};
}

// criterion 9: circulant-basis completeness certificate at small n

Outcome criterion9() {
  for (int n : {12, 16}) {
    for (int L : {2, 3}) {
      const int m = n / 2;
      // constraint system on the circulant symbol (s_0..s_m)
      testlin::Matrix rows;
      std::vector<double> rhs;
      {
        std::vector<double> tr(static_cast<std::size_t>(m + 1), 0.0);
        tr[0] = n;
        rows.push_back(std::move(tr));
        rhs.push_back(1.0);
      }
      {
        std::vector<double> full(static_cast<std::size_t>(m + 1), 0.0);
        full[0] = n;
        for (int u = 1; u <= n - 1; ++u)
          full[static_cast<std::size_t>(std::min(u, n - u))] += n;
        rows.push_back(std::move(full));
        rhs.push_back(0.0);
      }
      for (int len = L; len <= n - L; ++len) {
        std::vector<double> row(static_cast<std::size_t>(m + 1), 0.0);
        row[0] = len;
        for (int u = 1; u <= len - 1; ++u)
          row[static_cast<std::size_t>(std::min(u, n - u))] += 2.0 * (len - u);
        rows.push_back(std::move(row));
        rhs.push_back(0.0);
      }
      const auto sol = testlin::solve_affine(rows, rhs);
      if (!sol.consistent) return {false, fmt("inconsistent system n=%d L=%d", n, L)};
      if (static_cast<int>(sol.null_basis.size()) != L - 2)
        return {false, fmt("solution space dim %zu != L-2 at n=%d L=%d",
                           sol.null_basis.size(), n, L)};

      // symbol columns of the A_k basis
      testlin::Matrix basis = testlin::zeros(static_cast<std::size_t>(m + 1),
                                             static_cast<std::size_t>(L));
      for (int k = 1; k <= L; ++k) {
        basis[0][static_cast<std::size_t>(k - 1)] = 1.0 / n;
        if (2 * k == n)
          basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)] = -1.0 / n;
        else
          basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)] =
              -0.5 / n;
      }
      auto decompose = [&](const std::vector<double>& target, bool particular) -> bool {
        const auto c = testlin::lstsq(basis, target);
        double resid2 = 0;
        for (int row = 0; row <= m; ++row) {
          double fit = 0;
          for (int k = 0; k < L; ++k)
            fit += basis[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] *
                   c[static_cast<std::size_t>(k)];
          const double d = fit - target[static_cast<std::size_t>(row)];
          resid2 += d * d;
        }
        if (std::sqrt(resid2) > 1e-9) return false;
        double s = 0, ks = 0;
        for (int k = 1; k <= L; ++k) {
          s += c[static_cast<std::size_t>(k - 1)];
          ks += k * c[static_cast<std::size_t>(k - 1)];
        }
        const double target_sum = particular ? 1.0 : 0.0;
        return std::abs(s - target_sum) <= 1e-9 && std::abs(ks) <= 1e-9;
      };
      if (!decompose(sol.particular, true))
        return {false, fmt("particular solution not in span{A_k} n=%d L=%d", n, L)};
      for (const auto& nb : sol.null_basis)
        if (!decompose(nb, false))
          return {false, fmt("null direction escapes span{A_k} n=%d L=%d", n, L)};

      // 1000 random Q_L-constrained c-vectors must pass the predicate
      RngStream rng(31337);
      for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> c(static_cast<std::size_t>(L));
        for (double& v : c) v = 4.0 * rng.uniform01() - 2.0;
        double s = 0, ks = 0;
        for (int k = 1; k <= L; ++k) {
          s += c[static_cast<std::size_t>(k - 1)];
          ks += k * c[static_cast<std::size_t>(k - 1)];
        }
        // affine projection onto {sum c = 1, sum k c = 0}
        const double Ld = L;
        testlin::Matrix ztz = {{Ld, Ld * (Ld + 1) / 2},
                               {Ld * (Ld + 1) / 2, Ld * (Ld + 1) * (2 * Ld + 1) / 6}};
        const auto y = testlin::solve(ztz, {s - 1.0, ks});
        for (int k = 1; k <= L; ++k)
          c[static_cast<std::size_t>(k - 1)] -= y[0] + y[1] * k;
        if (!is_unbiased_circular(QuadEstimator::from_coefficients(n, c), L))
          return {false, fmt("random Q_L member rejected at n=%d L=%d trial %d", n, L,
                             trial)};
      }
    }
  }
  return {true, "solution space dim = L-2, all basis directions decompose over "
                "{A_1..A_L} (residual <= 1e-9), 4 x 1000 random Q_L members pass"};
}

// criterion 10: lag-statistic moment formulas vs Monte Carlo

Outcome criterion10() {
  const int n = 200, reps = 100000;
  const auto profile = MeanProfile::alternating_blocks(n, 20, 1.0, -1.0);
  const auto theta = profile.theta();
  const double W = profile.W();
  const NoiseMoments nm(1.0, 3.0);

  std::vector<std::vector<double>> t(4, std::vector<double>(reps));
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int r = 0; r < reps; ++r) {
    auto rng = RngStream::for_replicate(424243, static_cast<uint64_t>(r));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = theta[i] + rng.normal();
    for (int k = 1; k <= 4; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) {
        int j = i + k;
        if (j >= n) j -= n;
        const double d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
        s += d * d;
      }
      t[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(r)] = s;
    }
  }

  std::vector<double> mean(4), var(4), m4c(4);
  for (int k = 0; k < 4; ++k) {
    double s = 0;
    for (double v : t[static_cast<std::size_t>(k)]) s += v;
    mean[static_cast<std::size_t>(k)] = s / reps;
    double v2 = 0, v4 = 0;
    for (double v : t[static_cast<std::size_t>(k)]) {
      const double d = v - mean[static_cast<std::size_t>(k)];
      v2 += d * d;
      v4 += d * d * d * d;
    }
    var[static_cast<std::size_t>(k)] = v2 / reps;
    m4c[static_cast<std::size_t>(k)] = v4 / reps;
  }

  double worst_z = 0;
  std::string worst_what = "none";
  auto track = [&](double z, const std::string& what) {
    if (z > worst_z) {
      worst_z = z;
      worst_what = what;
    }
  };
  for (int k = 1; k <= 4; ++k) {
    const double mu = 2.0 * n * 1.0 + k * W;
    const double se_mean = std::sqrt(var[static_cast<std::size_t>(k - 1)] / reps);
    track(std::abs(mean[static_cast<std::size_t>(k - 1)] - mu) / se_mean,
          fmt("mean T_%d", k));

    const double v_formula = tk_moments(profile, nm, k).var;
    const double se_var =
        std::sqrt(std::max(m4c[static_cast<std::size_t>(k - 1)] -
                               var[static_cast<std::size_t>(k - 1)] *
                                   var[static_cast<std::size_t>(k - 1)],
                           0.0) /
                  reps);
    track(std::abs(var[static_cast<std::size_t>(k - 1)] - v_formula) / se_var,
          fmt("var T_%d", k));
  }
  for (int k = 1; k <= 4; ++k) {
    for (int h = k + 1; h <= 4; ++h) {
      double c = 0, c2 = 0;
      for (int r = 0; r < reps; ++r) {
        const double a =
            t[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(r)] -
            mean[static_cast<std::size_t>(k - 1)];
        const double b =
            t[static_cast<std::size_t>(h - 1)][static_cast<std::size_t>(r)] -
            mean[static_cast<std::size_t>(h - 1)];
        c += a * b;
        c2 += a * b * a * b;
      }
      c /= reps;
      c2 /= reps;
      const double cov_formula = *tk_moments(profile, nm, k, h).cov;
      const double se_cov = std::sqrt(std::max(c2 - c * c, 0.0) / reps);
      track(std::abs(c - cov_formula) / se_cov, fmt("cov T_%d T_%d", k, h));
    }
  }
  return {worst_z <= 4.0,
          fmt("worst |z| = %.2f MC SEs (%s), threshold 4; n=200, R=1e5, L(theta)=20",
              worst_z, worst_what.c_str())};
}

// criterion 11: open-question resolution tests (outcome recorded)

Outcome criterion11() {
  // (a) finite-difference g_L'(0) vs the two printed candidates
  int picked_base = 0, picked_doubled = 0;
  for (int L : {2, 5, 8, 10, 15}) {
    const double h = 1e-5;
    const double fd =
        (detail::g_L_unchecked(L, h, 3.0) - detail::g_L_unchecked(L, -h, 3.0)) / (2 * h);
    const double cand1 = (L + 1.0) * (L + 2.0) * (2.0 * L + 1.0) / (15.0 * L * (L - 1.0));
    const double cand2 = 2.0 * cand1;
    (std::abs(fd - cand1) < std::abs(fd - cand2) ? picked_base : picked_doubled)++;
  }
  const bool ga_consistent = picked_base == 5 || picked_doubled == 5;
  const char* ga_pick = picked_base == 5 ? "(L+1)(L+2)(2L+1)/(15L(L-1))"
                                         : "twice (L+1)(L+2)(2L+1)/(15L(L-1))";

  // (b) MS small-sample 1/n coefficient vs quadratic-form oracle, n=60, K=5
  const int n = 60, K = 5;
  int picked_raw_b = 0, picked_over15_b = 0;
  for (double kappa4 : {3.0, 3.5, 4.5, 6.0, 9.0}) {
    const NoiseMoments nm(1.0, kappa4);
    const auto flat = MeanProfile::constant(n);
    const double observed = quad_risk(QuadEstimator::ms_matrix(n, K), flat, nm) -
                            quad_risk(QuadEstimator::eve_matrix(n, K), flat, nm);
    const double d_raw = ms_risk(K, n, nm, 0.0, true, MsVariant::Unscaled).risk -
                          ols_risk(K, n, nm, 0.0, true).risk;
    const double d_over15 = ms_risk(K, n, nm, 0.0, true, MsVariant::Over15).risk -
                           ols_risk(K, n, nm, 0.0, true).risk;
    (std::abs(observed - d_raw) < std::abs(observed - d_over15) ? picked_raw_b
                                                                : picked_over15_b)++;
  }
  const bool msb_consistent = picked_raw_b == 5 || picked_over15_b == 5;
  const char* msb_pick =
      picked_over15_b == 5 ? "with the 1/15 factor" : "without the 1/15 factor";

  // (c) the mean-gap coefficient (2K+1) vs (2K-1) in the MS-EVE difference,
  //     isolated on classical two-segment profiles with theta_1 != theta_n
  int picked_2kp1 = 0, picked_2km1 = 0;
  for (double gap : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const NoiseMoments nm(1.0, 3.0);
    std::vector<double> tv(static_cast<std::size_t>(n), 0.0);
    for (int i = n / 2; i < n; ++i) tv[static_cast<std::size_t>(i)] = gap;
    const auto theta_c = MeanProfile::from_vector_classical(tv);
    const auto theta_circ = MeanProfile::from_vector_circular(tv);
    const double observed = quad_risk(QuadEstimator::ms_matrix(n, K), theta_c, nm) -
                            quad_risk(QuadEstimator::eve_matrix(n, K), theta_circ, nm);
    const double c15 = 2.0 * (K - 7.0) * (K + 1.0) * (K + 2.0) / (15.0 * K * (K - 1.0));
    auto predicted = [&](double factor) {
      const double cv = (K + 1.0) * (K + 2.0) * factor / (15.0 * K * (K - 1.0));
      return (c15 - 2.0 * gap * gap * cv) / n;
    };
    (std::abs(observed - predicted(2.0 * K + 1.0)) <
             std::abs(observed - predicted(2.0 * K - 1.0))
         ? picked_2kp1
         : picked_2km1)++;
  }
  const bool gap_consistent = picked_2kp1 == 5 || picked_2km1 == 5;
  const char* gap_pick = picked_2kp1 == 5 ? "(2K+1)" : "(2K-1)";

  const bool pass = ga_consistent && msb_consistent && gap_consistent;
  return {pass,
          fmt("g_L'(0) -> %s [5/5]; MS 1/n term -> %s [5/5]; MS gap coefficient -> %s "
              "[5/5]",
              ga_pick, msb_pick, gap_pick)};
}

// empirical-noise pipeline (Tables 4-6 stand-in): bundled residual file

Outcome empirical_pipeline() {
  const std::string path = std::string(CPVAR_DATA_DIR) + "/residuals_synthetic.csv";
  SimScenario sc;
  sc.n = 1000;
  sc.mean = build_scenario(3, 1000);
  sc.noise = NoiseSpec::empirical_from_csv(path, true);
  sc.replicates = 300;
  sc.seed = 515;
  sc.label = "S3-EMP";
  const std::vector<EstimatorKind> est{
      EstimatorKind::eve(10), EstimatorKind::ms(10),  EstimatorKind::mad(),
      EstimatorKind::dk(),    EstimatorKind::rice(),  EstimatorKind::oracle()};
  const auto r = run_table(sc, est, RunOptions{0, false});

  const std::size_t oracle_idx = 5;
  double worst_margin = 1e300;
  for (std::size_t e = 0; e + 1 < est.size(); ++e) {
    std::vector<double> diff(static_cast<std::size_t>(sc.replicates));
    for (int rep = 0; rep < sc.replicates; ++rep) {
      const double dm = r.sigma_hat[e][static_cast<std::size_t>(rep)] - 1.0;
      const double db = r.sigma_hat[oracle_idx][static_cast<std::size_t>(rep)] - 1.0;
      diff[static_cast<std::size_t>(rep)] = dm * dm - db * db;
    }
    RngStream boot(99);
    const int B = 400;
    double bm = 0, bm2 = 0;
    for (int b = 0; b < B; ++b) {
      double s = 0;
      for (int rep = 0; rep < sc.replicates; ++rep) {
        std::size_t idx = static_cast<std::size_t>(boot.uniform01() * sc.replicates);
        if (idx >= diff.size()) idx = diff.size() - 1;
        s += diff[idx];
      }
      s /= sc.replicates;
      bm += s;
      bm2 += s * s;
    }
    bm /= B;
    const double boot_se = std::sqrt(std::max(bm2 / B - bm * bm, 0.0));
    const double mse_diff = r.estimators[e].mse - r.estimators[oracle_idx].mse;
    worst_margin = std::min(worst_margin, mse_diff + 3.0 * boot_se);
  }
  const bool pass = worst_margin >= 0.0 && r.estimators[oracle_idx].failures == 0;
  return {pass, fmt("bootstrap-noise table completed; oracle dominance margin %.2e >= 0",
                    worst_margin)};
}

}  // namespace

int main() {
  struct Entry {
    std::string name;
    std::function<Outcome()> fn;
  };
  const std::vector<Entry> criteria{
      {"criterion 1: Table 1 S1-G EVE(K=10) mean/se/runtime", criterion1},
      {"criterion 2: Table 1 S3-G EVE(K=15) bias", criterion2},
      {"criterion 3: tuner frequency of K=10 in S3-G", criterion3},
      {"criterion 4: Table 3 relative efficiencies", criterion4},
      {"criterion 5: closed-form vs matrix-form risk identity (n=240, K=5)", criterion5},
      {"criterion 6: tightness of the K=L(theta) bound (n=40, K=4)", criterion6},
      {"criterion 7: exact Theta_2 risk kappa4+4+8w (n=40)", criterion7},
      {"criterion 8: minimax machinery (g_L, D_L, bracket)", criterion8},
      {"criterion 9: equivariant-unbiased characterization at small n", criterion9},
      {"criterion 10: T_k moments vs Monte Carlo (n=200, R=1e5)", criterion10},
      {"criterion 11: open-question resolutions (recorded)", criterion11},
      {"empirical pipeline: bootstrap noise + oracle dominance", empirical_pipeline},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    Outcome outcome;
    try {
      outcome = entry.fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s -- %s\n", outcome.pass ? "PASS" : "FAIL", entry.name.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
