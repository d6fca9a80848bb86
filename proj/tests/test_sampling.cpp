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

#include <doctest.h>

#include "oracles.hpp"

using namespace driftsim;

TEST_CASE("RngStream determinism and stream independence") {
  RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool same = true, diff_stream = false, diff_seed = false;
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t va = a.next_u64();
    same = same && (va == b.next_u64());
    diff_stream = diff_stream || (va != c.next_u64());
    diff_seed = diff_seed || (va != d.next_u64());
  }
  CHECK(same);
  CHECK(diff_stream);
  CHECK(diff_seed);

  RngStream u(1, 0);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("standard distribution is proportional to coefficients") {
  RngStream rng(301, 0);
  auto h = oracles::random_hamiltonian(2, 4, 2.0, rng);
  auto p = SamplingDistribution::standard(h);
  double s = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    CHECK(p.prob(j) == doctest::Approx(h.term(j).coeff / h.lambda()).epsilon(1e-14));
    s += p.prob(j);
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.kind() == DistributionKind::Standard);
}

TEST_CASE("cost-weighted distribution and its closed-form moments") {
  RngStream rng(302, 0);
  for (int trial = 0; trial < 20; ++trial) {
    auto h = oracles::random_hamiltonian(2, 4, 2.0, rng);
    CostTable c;
    for (const auto& t : h.terms()) c.set(t.op, oracles::uniform_in(rng, 0.1, 10.0));
    auto p = SamplingDistribution::standard(h);
    auto qc = SamplingDistribution::cost_weighted(h, c);

    double lambda_c = 0;
    for (const auto& t : h.terms()) lambda_c += t.coeff / c.lookup(t.op);
    double ep_invc = 0, ep_c = 0, max_c = 0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      const double pj = h.term(j).coeff / h.lambda();
      const double cj = c.lookup(h.term(j).op);
      CHECK(qc.prob(j) ==
            doctest::Approx(h.term(j).coeff / (cj * lambda_c)).epsilon(1e-12));
      ep_invc += pj / cj;
      ep_c += pj * cj;
      max_c = std::max(max_c, cj);
    }

    // E_qc[C] = 1 / E_p[1/C]; E_p[omega_qc] = E_p[C] E_p[1/C]; max omega = maxC E_p[1/C].
    CHECK(expected_cost(h, qc, c) == doctest::Approx(1.0 / ep_invc).epsilon(1e-10));
    auto prof = weight_profile(h, qc);
    CHECK(prof.mean_p_omega == doctest::Approx(ep_c * ep_invc).epsilon(1e-10));
    CHECK(prof.max_omega == doctest::Approx(max_c * ep_invc).epsilon(1e-10));

    // Importance sampling keeps the weighted moments normalized: E_q[omega] = 1... no:
    // sum_j q_j omega_j = sum_j p_j = 1.
    double eq_omega = 0;
    for (std::size_t j = 0; j < h.size(); ++j) eq_omega += qc.prob(j) * prof.omega[j];
    CHECK(eq_omega == doctest::Approx(1.0).epsilon(1e-10));

    // Jensen: E_p[omega_qc] >= 1 and max omega >= 1.
    CHECK(prof.mean_p_omega >= 1.0 - 1e-12);
    CHECK(prof.max_omega >= 1.0 - 1e-12);
  }
}

TEST_CASE("custom distributions validate and renormalize") {
  CHECK_THROWS_AS(SamplingDistribution::custom({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(SamplingDistribution::custom({1.5, -0.5}), ValidationError);
  CHECK_THROWS_AS(SamplingDistribution::custom({}), ValidationError);
  auto q = SamplingDistribution::custom({0.25, 0.75 + 5e-10});
  double s = 0;
  for (std::size_t j = 0; j < q.size(); ++j) s += q.prob(j);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.kind() == DistributionKind::Custom);
}

TEST_CASE("weight_profile rejects vanishing q on supported terms; standard profile trivial") {
  RngStream rng(303, 0);
  auto h = oracles::random_hamiltonian(2, 3, 1.0, rng);
  auto bad = SamplingDistribution::custom({0.5, 0.5, 0.0});
  CHECK_THROWS_AS(weight_profile(h, bad), UnboundedWeight);
  CHECK_THROWS_AS(time_step(h, bad, 2, 0.1, 1), UnboundedWeight);

  auto p = SamplingDistribution::standard(h);
  auto prof = weight_profile(h, p);
  for (double w : prof.omega) CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(prof.mean_p_omega == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(prof.max_omega == doctest::Approx(1.0).epsilon(1e-12));

  auto triv = standard_profile(3);
  CHECK(triv.mean_p_omega == 1.0);
  CHECK(triv.max_omega == 1.0);
}

TEST_CASE("sample_term empirical frequencies follow q") {
  auto q = SamplingDistribution::custom({0.1, 0.2, 0.3, 0.4});
  RngStream rng(304, 0);
  std::vector<int> counts(4, 0);
  const int draws = 200000;
  for (int k = 0; k < draws; ++k) ++counts[sample_term(q, rng)];
  for (std::size_t j = 0; j < 4; ++j) {
    const double freq = static_cast<double>(counts[j]) / draws;
    // ~5 sigma of a binomial at n = 2e5.
    CHECK(std::abs(freq - q.prob(j)) < 5.0 * std::sqrt(q.prob(j) * (1 - q.prob(j)) / draws));
  }
}

TEST_CASE("time_step formula and the standard-distribution constant step") {
  RngStream rng(305, 0);
  auto h = oracles::random_hamiltonian(2, 4, 2.0, rng);
  auto p = SamplingDistribution::standard(h);
  const double t = 0.3;
  const int n = 7;
  for (std::size_t j = 0; j < h.size(); ++j)
    CHECK(time_step(h, p, j, t, n) == doctest::Approx(t * h.lambda() / n).epsilon(1e-12));

  auto q = SamplingDistribution::custom({0.4, 0.3, 0.2, 0.1});
  for (std::size_t j = 0; j < h.size(); ++j)
    CHECK(time_step(h, q, j, t, n) ==
          doctest::Approx(t * h.term(j).coeff / (n * q.prob(j))).epsilon(1e-12));
  CHECK_THROWS_AS(time_step(h, q, 0, t, 0), ValidationError);
}

TEST_CASE("expected_cost is the q-weighted mean of the cost table") {
  auto h = Hamiltonian(1, {{1.0, PauliString::from_string("X")},
                           {3.0, PauliString::from_string("Z")}});
  CostTable c;
  c.set("X", 2.0);
  c.set("Z", 10.0);
  auto p = SamplingDistribution::standard(h);  // (0.25, 0.75)
  CHECK(expected_cost(h, p, c) == doctest::Approx(0.25 * 2 + 0.75 * 10).epsilon(1e-14));
  CHECK_THROWS_AS(expected_cost(h, SamplingDistribution::custom({1.0}), c), DimensionMismatch);
}
