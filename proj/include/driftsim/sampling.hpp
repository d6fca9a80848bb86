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

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "driftsim/hamiltonian.hpp"

namespace driftsim {

/**
 * A seeded random stream: (master_seed, stream_index) determines the whole
 * sample sequence, identically across runs and platforms.
 *
 * The generator is SplitMix64 (Steele, Lea & Flood, "Fast splittable
 * pseudorandom number generators"); each stream is keyed by mixing the
 * master seed with the stream index through the same finalizer.
 */
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : master_seed_(master_seed), stream_index_(stream_index) {
    state_ = mix(master_seed + 0x9e3779b97f4a7c15ull * (stream_index + 1));
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /** Uniform double in [0, 1) with 53 random bits. */
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_;
};

enum class DistributionKind { Standard, CostWeighted, Custom };

/**
 * A normalized probability vector over the terms of a bound Hamiltonian.
 * q(j) > 0 wherever h_j > 0 (zero-coefficient terms are already stripped
 * at Hamiltonian construction, so q must be strictly positive everywhere).
 */
class SamplingDistribution {
 public:
  /** Standard qDrift distribution p(j) = h_j / lambda. */
  static SamplingDistribution standard(const Hamiltonian& h) {
    const double lam = h.lambda();
    std::vector<double> probs(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) probs[j] = h.term(j).coeff / lam;
    return SamplingDistribution(std::move(probs), DistributionKind::Standard);
  }

  /** Cost-aware distribution q_c(j) = h_j / (C_j lambda_c), lambda_c = sum h_l / C_l. */
  static SamplingDistribution cost_weighted(const Hamiltonian& h, const CostTable& c) {
    std::vector<double> w(h.size());
    double lambda_c = 0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      const double cost = c.lookup(h.term(j).op);
      w[j] = h.term(j).coeff / cost;
      lambda_c += w[j];
    }
    for (double& x : w) x /= lambda_c;
    return SamplingDistribution(std::move(w), DistributionKind::CostWeighted);
  }

  /**
   * Explicit probability vector; renormalized if the sum is within 1e-9 of
   * one, rejected otherwise.
   */
  static SamplingDistribution custom(std::vector<double> probs) {
    double s = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(s - 1.0) > 1e-9)
      throw ValidationError("SamplingDistribution: probabilities sum to " + std::to_string(s));
    for (double& x : probs) x /= s;
    return SamplingDistribution(std::move(probs), DistributionKind::Custom);
  }

  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t j) const { return probs_[j]; }
  const std::vector<double>& probs() const { return probs_; }
  DistributionKind kind() const { return kind_; }

 private:
  SamplingDistribution(std::vector<double> probs, DistributionKind kind)
      : probs_(std::move(probs)), kind_(kind) {
    if (probs_.empty()) throw ValidationError("SamplingDistribution: empty");
    for (double x : probs_)
      if (!(x >= 0)) throw ValidationError("SamplingDistribution: negative probability");
  }

  std::vector<double> probs_;
  DistributionKind kind_;
};

/** Reweighting factors omega(j) = p(j)/q(j) and their two moments. */
struct WeightProfile {
  std::vector<double> omega;
  double mean_p_omega;  // E_p[omega] = sum_j p_j omega_j
  double max_omega;     // max_j omega(j)
};

inline WeightProfile weight_profile(const Hamiltonian& h, const SamplingDistribution& q) {
  if (q.size() != h.size())
    throw DimensionMismatch("weight_profile: distribution length does not match term count");
  const double lam = h.lambda();
  WeightProfile wp;
  wp.omega.resize(h.size());
  wp.mean_p_omega = 0;
  wp.max_omega = 0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double pj = h.term(j).coeff / lam;
    if (q.prob(j) <= 0)
      throw UnboundedWeight("weight_profile: q(j) = 0 on a supported term");
    wp.omega[j] = pj / q.prob(j);
    wp.mean_p_omega += pj * wp.omega[j];
    wp.max_omega = std::max(wp.max_omega, wp.omega[j]);
  }
  return wp;
}

/** Trivial profile for q = p (omega identically 1). */
inline WeightProfile standard_profile(std::size_t n_terms) {
  return WeightProfile{std::vector<double>(n_terms, 1.0), 1.0, 1.0};
}

/**
 * Draw one term index in [0, L) with probability q(j); inverse-CDF over the
 * cumulative vector, one uniform draw per sample.
 */
inline std::size_t sample_term(const SamplingDistribution& q, RngStream& rng) {
  const double u = rng.uniform();
  double acc = 0;
  for (std::size_t j = 0; j + 1 < q.size(); ++j) {
    acc += q.prob(j);
    if (u < acc) return j;
  }
  return q.size() - 1;
}

/** Per-sample duration tau_j = t h_j / (N q_j); constant t lambda / N when q = p. */
inline double time_step(const Hamiltonian& h, const SamplingDistribution& q, std::size_t j,
                        double t, int n_samples) {
  if (n_samples < 1) throw ValidationError("time_step: N must be >= 1");
  if (q.prob(j) <= 0) throw UnboundedWeight("time_step: q(j) = 0 on a supported term");
  return t * h.term(j).coeff / (static_cast<double>(n_samples) * q.prob(j));
}

/** Expected per-sample cost sum_j q(j) C_j. */
inline double expected_cost(const Hamiltonian& h, const SamplingDistribution& q,
                            const CostTable& c) {
  if (q.size() != h.size())
    throw DimensionMismatch("expected_cost: distribution length does not match term count");
  double s = 0;
  for (std::size_t j = 0; j < h.size(); ++j) s += q.prob(j) * c.lookup(h.term(j).op);
  return s;
}

}  // namespace driftsim
