// Copyright 2026 driftsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Acceptance suite: one pass/fail line per criterion. Exits non-zero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <set>
#include <string>

#include "oracles.hpp"

using namespace driftsim;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("CRITERION %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// 1. All 14 tabulated reference values at printed precision, < 1 s.
void criterion_1() {
  Timer timer;
  auto rep = table2_report();
  int bad = 0;
  for (const auto& e : rep)
    if (!e.pass) ++bad;
  const double dt = timer.seconds();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "summary table: %zu/%zu values at printed precision in %.3f s", rep.size() - bad,
                rep.size(), dt);
  report(1, bad == 0 && dt < 1.0, buf);
}

// 2. Bias-bound dominance on random instances and both lattice models, < 2 min.
void criterion_2() {
  Timer timer;
  const int trials = 200;
  std::atomic<int> violations{0};
  exp_detail::parallel_for(trials, [&](std::size_t k) {
    RngStream rng(0xb1a5, static_cast<std::uint64_t>(k));
    const int n = 1 + static_cast<int>(rng.next_u64() % 2);
    const int l = 2 + static_cast<int>(rng.next_u64() % 3);
    auto h = oracles::random_hamiltonian(n, l, 1.0, rng);
    const double t = oracles::uniform_in(rng, 0.01, 0.5) / h.lambda();
    const int nn = 1 + static_cast<int>(rng.next_u64() % 3);
    // Random sampling distribution with full support.
    std::vector<double> probs(h.size());
    double s = 0;
    for (double& x : probs) s += (x = oracles::uniform_in(rng, 0.05, 1.0));
    for (double& x : probs) x /= s;
    auto q = SamplingDistribution::custom(probs);
    auto prof = weight_profile(h, q);
    auto est = diamond_distance(exact_channel(h, t), average_qdrift_channel(h, q, t, nn), 4,
                                1e-8, 0xc2 + k);
    if (est.value > qdrift_bias_bound(h.lambda(), t, nn, prof) + 1e-8) ++violations;

    // Random two-block composite instance, same size regime.
    auto a = oracles::random_hamiltonian(n, 2, 1.0, rng);
    auto b = oracles::random_hamiltonian(n, 2, 1.0, rng);
    Partition part(a, b);
    const double tc = oracles::uniform_in(rng, 0.01, 0.5) / part.full().lambda();
    auto pb = SamplingDistribution::standard(part.b());
    auto prof_b = weight_profile(part.b(), pb);
    const int r = 1 + static_cast<int>(rng.next_u64() % 2);
    auto estc = diamond_distance(exact_channel(part.full(), tc),
                                 composite_channel_average(part, pb, tc, 1, r), 4, 1e-8,
                                 0xc3 + k);
    if (estc.value > composite_bias_bound(part, prof_b, tc, 1, r) + 1e-8) ++violations;
  });

  // Both built-in models at t = 0.05.
  const CostTable costs = default_cost_table();
  for (int variant = 0; variant < 2; ++variant) {
    auto part = build_lattice_model(1.0, 0.1, variant);
    auto full = part.full();
    auto exact = exact_channel(full, 0.05);
    for (int use_qc = 0; use_qc < 2; ++use_qc) {
      auto qf = use_qc ? SamplingDistribution::cost_weighted(full, costs)
                       : SamplingDistribution::standard(full);
      auto prof = weight_profile(full, qf);
      auto est =
          diamond_distance(exact, average_qdrift_channel(full, qf, 0.05, 1), 4, 1e-8, 0xd0);
      if (est.value > qdrift_bias_bound(full.lambda(), 0.05, 1, prof) + 1e-8) ++violations;

      auto qb = use_qc ? SamplingDistribution::cost_weighted(part.b(), costs)
                       : SamplingDistribution::standard(part.b());
      auto prof_b = weight_profile(part.b(), qb);
      auto estc = diamond_distance(exact, composite_channel_average(part, qb, 0.05, 1, 1), 4,
                                   1e-8, 0xd1);
      if (estc.value > composite_bias_bound(part, prof_b, 0.05, 1, 1) + 1e-8) ++violations;
    }
  }
  const double dt = timer.seconds();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "bias-bound dominance: %d violations over %d random + 8 model checks in %.1f s",
                violations.load(), trials * 2, dt);
  report(2, violations == 0 && dt < 120.0, buf);
}

// 3. Brute-force multi-index enumeration oracle (L = 3, N = 3), < 10 s.
void criterion_3() {
  Timer timer;
  RngStream seed_rng(0x0eac, 0);
  auto h = oracles::random_hamiltonian(2, 3, 1.0, seed_rng);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    RngStream rng(0x0eac, 1 + static_cast<std::uint64_t>(trial));
    std::vector<double> probs(3);
    double s = 0;
    for (double& x : probs) s += (x = oracles::uniform_in(rng, 0.05, 1.0));
    for (double& x : probs) x /= s;
    auto q = SamplingDistribution::custom(probs);
    auto fast = average_qdrift_channel(h, q, 0.4, 3);
    Matrix ref = oracles::qdrift_average_oracle(h, q, 0.4, 3);
    worst = std::max(worst, (fast.mat - ref).cwiseAbs().maxCoeff());
  }
  const double dt = timer.seconds();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "brute-force channel oracle: max deviation %.2e over 20 distributions in %.2f s",
                worst, dt);
  report(3, worst < 1e-12 && dt < 10.0, buf);
}

// 4. Concentration in M: log-log slope in (-0.65, -0.35).
void criterion_4() {
  Timer timer;
  auto part = build_lattice_model(1.0, 0.1, 0);
  auto full = part.full();
  auto q = SamplingDistribution::standard(full);
  auto avg = average_qdrift_channel(full, q, 0.05, 1);
  const int m_values[3] = {10, 100, 1000};
  const int seeds = 50;
  double mean_dist[3] = {0, 0, 0};
  for (int mi = 0; mi < 3; ++mi) {
    std::vector<double> dist(seeds, 0.0);
    exp_detail::parallel_for(seeds, [&](std::size_t s) {
      auto fin = finite_qdrift_channel(full, q, 0.05, 1, m_values[mi],
                                       0xfeed + static_cast<std::uint64_t>(s), 0);
      dist[s] = diamond_distance(avg, fin, 3, 1e-8, 0xabc + s).value;
    });
    for (double x : dist) mean_dist[mi] += x / seeds;
  }
  // Least-squares slope of log10(mean) against log10(M).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int mi = 0; mi < 3; ++mi) {
    const double x = std::log10(static_cast<double>(m_values[mi]));
    const double y = std::log10(mean_dist[mi]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "concentration in M: means %.3e / %.3e / %.3e at M=10/100/1000, slope %.3f "
                "(target (-0.65,-0.35)) in %.1f s",
                mean_dist[0], mean_dist[1], mean_dist[2], slope, timer.seconds());
  report(4, slope > -0.65 && slope < -0.35, buf);
}

// 5. Cost-reduction inequalities on 1e4 random instances; equality iff constant costs.
void criterion_5() {
  Timer timer;
  int failures = 0;
  int equality_errors = 0;
  RngStream rng(0x5eed5, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const int l = 2 + static_cast<int>(rng.next_u64() % 4);
    auto h = oracles::random_hamiltonian(2, l, 2.0, rng);
    const bool constant = (trial % 10 == 0);
    CostTable c;
    const double c0 = oracles::uniform_in(rng, 0.1, 10.0);
    for (const auto& t : h.terms())
      c.set(t.op, constant ? c0 : oracles::uniform_in(rng, 0.1, 10.0));
    auto rep = verify_cost_reduction(h, c);
    if (!rep.all_pass) ++failures;
    if (rep.equality_case != constant) ++equality_errors;
    if (constant && std::abs(rep.pure_lhs_qc - rep.pure_rhs_p) > 1e-9) ++equality_errors;
  }
  // Composite inequalities (Theorem 5 analogue) on partition instances.
  for (int trial = 0; trial < 500; ++trial) {
    auto a = oracles::random_hamiltonian(2, 2, 2.0, rng);
    auto b = oracles::random_hamiltonian(2, 3, 2.0, rng);
    Partition part(a, b);
    CostTable c;
    for (const auto& t : part.full().terms())
      if (!c.contains(t.op)) c.set(t.op, oracles::uniform_in(rng, 0.1, 10.0));
    auto rep = verify_cost_reduction(part, c);
    if (!rep.all_pass) ++failures;
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "cost-reduction theorems: %d inequality failures, %d equality-detection errors "
                "over 10500 instances in %.1f s",
                failures, equality_errors, timer.seconds());
  report(5, failures == 0 && equality_errors == 0, buf);
}

// 6. Qualitative sweep reproduction at R = 50, < 30 min.
void criterion_6() {
  Timer timer;
  bool factor3 = true, std_ok = true, support_ok = true, qc_cheaper = true;
  double worst_ratio = 1.0, worst_std = 0.0;

  for (double t : {0.05, 0.1}) {
    ExperimentConfig cfg;
    cfg.model = "lattice_0";
    cfg.t = t;
    cfg.b_values = default_b_sweep();
    ChannelSpec trot;
    trot.type = ChannelType::Trotter;
    ChannelSpec comp_avg;
    comp_avg.type = ChannelType::CompositeAvg;
    ChannelSpec fin1;
    fin1.type = ChannelType::CompositeFinite;
    ChannelSpec fin10;
    fin10.type = ChannelType::CompositeFinite;
    fin10.m_experiments = 10;
    cfg.channels = {trot, comp_avg, fin1, fin10};
    cfg.distributions = {DistributionSpec::Standard, DistributionSpec::CostWeighted};
    cfg.repetitions = 50;
    cfg.master_seed = 2026;
    cfg.diamond_restarts = 6;
    cfg.diamond_tol = 1e-7;
    auto result = run_experiment(cfg);

    // (a) composite means within a factor 3 of the Trotter curve.
    for (double b : cfg.b_values) {
      double trotter_mean = 0;
      for (const auto& agg : result.aggregates)
        if (agg.b == b && agg.channel == trot.name() &&
            agg.distribution == "standard")
          trotter_mean = agg.mean_diamond;
      for (const auto& agg : result.aggregates) {
        if (agg.b != b || agg.channel == trot.name()) continue;
        const double ratio = agg.mean_diamond / trotter_mean;
        worst_ratio = std::max({worst_ratio, ratio, 1.0 / ratio});
        if (ratio > 3.0 || ratio < 1.0 / 3.0) factor3 = false;
        // (b) repetition scatter.
        worst_std = std::max(worst_std, agg.std_diamond);
        if (agg.std_diamond > 1e-3) std_ok = false;
      }
    }

    // (c) histogram support within the achievable cost set; pooled standard-q
    // support covers it exactly.
    const CostTable costs = default_cost_table();
    for (double b : cfg.b_values) {
      auto part = build_lattice_model(1.0, b, 0);
      std::set<long long> pooled_standard;
      std::set<long long> achievable_keys;
      {
        ChannelSpec probe = fin1;
        for (double x : achievable_costs(part, costs, probe))
          achievable_keys.insert(std::llround(x * 1e6));
      }
      for (const auto& hist : result.histograms) {
        if (hist.b != b) continue;
        for (const auto& bin : hist.bins) {
          const long long key = std::llround(bin.cost * 1e6);
          if (!achievable_keys.count(key)) support_ok = false;
          if (hist.distribution == "standard") pooled_standard.insert(key);
        }
        // (d) mean sampled cost under q_c is never above the mean under p.
        if (hist.distribution == "cost_weighted" &&
            hist.expected_cost_qc > hist.expected_cost_p + 1e-9)
          qc_cheaper = false;
      }
      if (pooled_standard != achievable_keys) support_ok = false;

      // (d) on the actual samples.
      double mean_cost[2] = {0, 0};
      long long n_cost[2] = {0, 0};
      for (const auto& row : result.rows) {
        if (row.b != b || !row.has_cost) continue;
        const int di = row.distribution == "standard" ? 0 : 1;
        for (double cst : row.circuit_costs) {
          mean_cost[di] += cst;
          ++n_cost[di];
        }
      }
      if (n_cost[0] > 0 && n_cost[1] > 0 &&
          mean_cost[1] / n_cost[1] > mean_cost[0] / n_cost[0] + 1e-9)
        qc_cheaper = false;
    }
  }

  const double dt = timer.seconds();
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "sweep reproduction: factor-3 %s (worst ratio %.2f), std<=1e-3 %s (worst "
                "%.2e), histogram support %s, q_c cheaper %s, %.0f s",
                factor3 ? "ok" : "VIOLATED", worst_ratio, std_ok ? "ok" : "VIOLATED", worst_std,
                support_ok ? "ok" : "VIOLATED", qc_cheaper ? "ok" : "VIOLATED", dt);
  report(6, factor3 && std_ok && support_ok && qc_cheaper && dt < 1800.0, buf);
}

// 7. Diamond estimator certification against the closed-form unitary oracle.
void criterion_7() {
  Timer timer;
  std::atomic<int> bad{0};
  std::vector<double> errs(100, 0.0);
  exp_detail::parallel_for(100, [&](std::size_t k) {
    RngStream rng(0xd1a, static_cast<std::uint64_t>(k));
    const Eigen::Index d = (k % 2) ? 2 : 4;
    Matrix u = oracles::random_unitary(d, rng);
    Matrix v = oracles::random_unitary(d, rng);
    auto est =
        diamond_distance(conjugation_superop(u), conjugation_superop(v), 8, 1e-9, 0x77 + k);
    errs[k] = std::abs(est.value - oracles::unitary_diamond_oracle(u, v));
    if (errs[k] > 1e-6) ++bad;
  });
  double worst = 0;
  for (double e : errs) worst = std::max(worst, e);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "diamond certification: %d/100 outside 1e-6 (worst %.2e); sandwich enforced by "
                "construction on every invocation; %.1f s",
                bad.load(), worst, timer.seconds());
  report(7, bad == 0, buf);
}

// 8. Byte-identical CSV at 1 and 8 threads.
void criterion_8() {
  Timer timer;
  ExperimentConfig cfg;
  cfg.model = "lattice_0";
  cfg.t = 0.05;
  cfg.b_values = {0.02, 0.1, 0.5};
  ChannelSpec trot;
  trot.type = ChannelType::Trotter;
  ChannelSpec fin;
  fin.type = ChannelType::CompositeFinite;
  fin.m_experiments = 3;
  cfg.channels = {trot, fin};
  cfg.distributions = {DistributionSpec::Standard, DistributionSpec::CostWeighted};
  cfg.repetitions = 4;
  cfg.diamond_restarts = 4;
  setenv("DRIFTSIM_THREADS", "1", 1);
  const std::string csv1 = run_experiment(cfg).to_csv();
  setenv("DRIFTSIM_THREADS", "8", 1);
  const std::string csv8 = run_experiment(cfg).to_csv();
  unsetenv("DRIFTSIM_THREADS");
  char buf[160];
  std::snprintf(buf, sizeof(buf), "determinism: CSVs %s (%zu bytes) in %.1f s",
                csv1 == csv8 ? "byte-identical" : "DIFFER", csv1.size(), timer.seconds());
  report(8, csv1 == csv8, buf);
}

// 9. Acknowledged non-reproducibles.
void criterion_9() {
  report(9, true,
         "acknowledged: the fluctuation-bound constant alpha is not specified analytically "
         "(exposed as a parameter, default 1.0) and the sweep figures' exact numeric curves "
         "are not published; criteria 4 and 6 stand in as property-based substitutes");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_6();  // longest last, so quick failures surface early
  std::printf("ACCEPTANCE: %s (%d failing)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
