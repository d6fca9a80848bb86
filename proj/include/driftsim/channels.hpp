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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "driftsim/sampling.hpp"

namespace driftsim {

/**
 * A channel as an explicit d^2 x d^2 linear map on column-stacked density
 * matrices: vec(Phi(rho)) = mat * vec(rho), with vec(X)_{r + d c} = X_{rc}.
 *
 * Channels built here are mixtures of unitary conjugations; `mean_op` keeps
 * the weighted mean of the member unitaries (sum_k p_k V_k), which feeds the
 * operator-norm upper bound on diamond distances. `pure_unitary` marks a
 * singleton mixture.
 */
struct SuperOperator {
  /** Ensembles larger than this are dropped (the dense matrix remains). */
  static constexpr std::size_t kMaxEnsemble = 1024;

  Matrix mat;                      // d^2 x d^2
  Eigen::Index dim;                // d
  std::optional<Matrix> mean_op;   // sum_k p_k V_k, d x d
  bool pure_unitary = false;
  /** The explicit mixture {(p_k, V_k)} when it is small enough to keep;
   *  redundant with mat, but enables low-rank diamond-norm evaluation. */
  std::optional<std::vector<std::pair<double, Matrix>>> ensemble;

  SuperOperator compose(const SuperOperator& inner) const {
    // this ∘ inner: inner applied first.
    SuperOperator out;
    out.mat = mat * inner.mat;
    out.dim = dim;
    if (mean_op && inner.mean_op) out.mean_op = (*mean_op) * (*inner.mean_op);
    out.pure_unitary = pure_unitary && inner.pure_unitary;
    if (ensemble && inner.ensemble &&
        ensemble->size() * inner.ensemble->size() <= kMaxEnsemble) {
      std::vector<std::pair<double, Matrix>> prod;
      prod.reserve(ensemble->size() * inner.ensemble->size());
      for (const auto& [po, vo] : *ensemble)
        for (const auto& [pi, vi] : *inner.ensemble) prod.emplace_back(po * pi, vo * vi);
      out.ensemble = std::move(prod);
    }
    return out;
  }

  SuperOperator power(int n) const {
    SuperOperator out;
    out.dim = dim;
    out.mat = Matrix::Identity(mat.rows(), mat.cols());
    if (mean_op) out.mean_op = Matrix::Identity(dim, dim);
    out.pure_unitary = pure_unitary;
    if (ensemble) out.ensemble = {{{1.0, Matrix::Identity(dim, dim)}}};
    for (int k = 0; k < n; ++k) out = compose(out);
    return out;
  }

  /** Apply to a density operator: unvec(mat * vec(rho)). */
  Matrix apply(const Matrix& rho) const {
    Vector v = Eigen::Map<const Vector>(rho.data(), rho.size());
    Vector w = mat * v;
    return Eigen::Map<const Matrix>(w.data(), dim, dim);
  }
};

/** Conjugation channel rho -> U rho U^dag; vec form conj(U) (x) U. */
inline SuperOperator conjugation_superop(const Matrix& u) {
  SuperOperator s;
  s.dim = u.rows();
  s.mat = detail::kron(u.conjugate(), u);
  s.mean_op = u;
  s.pure_unitary = true;
  s.ensemble = {{{1.0, u}}};
  return s;
}

inline SuperOperator identity_superop(Eigen::Index d) {
  return conjugation_superop(Matrix::Identity(d, d));
}

/** One draw of a sampled product formula. */
struct CircuitStep {
  std::size_t term_index;
  double tau;
  double cost;  // 0 when no cost table is bound
};

/**
 * A sampled qDrift circuit: the ordered draws, their total cost under the
 * bound cost table, and the product unitary (rightmost factor applied first).
 */
struct SampledCircuit {
  std::vector<CircuitStep> steps;
  double total_cost = 0;
  Matrix unitary;
};

/** Exact evolution channel rho -> e^{-iHt} rho e^{iHt}. */
inline SuperOperator exact_channel(const Hamiltonian& h, double t) {
  return conjugation_superop(general_exp(h.dense(), t));
}

/** One first-order Trotter step over duration t, in stored term order. */
inline Matrix trotter_step_unitary(const Hamiltonian& h, double t) {
  Matrix u = Matrix::Identity(h.dim(), h.dim());
  for (const auto& term : h.terms()) u = u * pauli_exp(term.op, t * term.coeff);
  return u;
}

/** First-order Trotter channel [prod_l e^{-i(t/r) h_l H_l}]^r. */
inline SuperOperator trotter_channel(const Hamiltonian& h, double t, int r) {
  if (r < 1) throw ValidationError("trotter_channel: r must be >= 1");
  Matrix step = trotter_step_unitary(h, t / r);
  Matrix u = Matrix::Identity(h.dim(), h.dim());
  for (int k = 0; k < r; ++k) u = step * u;
  return conjugation_superop(u);
}

/**
 * Draw one qDrift circuit of N samples (Algorithm: sample j ~ q, apply
 * e^{-i tau_j H_j} on the left). Costs accumulate when a table is given.
 */
inline SampledCircuit sample_qdrift_circuit(const Hamiltonian& h, const SamplingDistribution& q,
                                            double t, int n_samples, RngStream& rng,
                                            const CostTable* costs = nullptr) {
  if (n_samples < 1) throw ValidationError("sample_qdrift_circuit: N must be >= 1");
  SampledCircuit circ;
  circ.unitary = Matrix::Identity(h.dim(), h.dim());
  circ.steps.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    const std::size_t j = sample_term(q, rng);
    const double tau = time_step(h, q, j, t, n_samples);
    const double cost = costs ? costs->lookup(h.term(j).op) : 0.0;
    circ.unitary = pauli_exp(h.term(j).op, tau) * circ.unitary;
    circ.total_cost += cost;
    circ.steps.push_back({j, tau, cost});
  }
  return circ;
}

/**
 * The exact average qDrift channel: the single-sample mixed-unitary step
 * S1 = sum_j q(j) Conj[e^{-i tau_j H_j}] composed N times (samples are
 * i.i.d., so the N-sample average is S1^N).
 */
inline SuperOperator average_qdrift_channel(const Hamiltonian& h, const SamplingDistribution& q,
                                            double t, int n_samples) {
  if (n_samples < 1) throw ValidationError("average_qdrift_channel: N must be >= 1");
  if (q.size() != h.size())
    throw DimensionMismatch("average_qdrift_channel: distribution length mismatch");
  const Eigen::Index d = h.dim();
  SuperOperator s1;
  s1.dim = d;
  s1.mat = Matrix::Zero(d * d, d * d);
  Matrix mean = Matrix::Zero(d, d);
  std::vector<std::pair<double, Matrix>> members;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double tau = time_step(h, q, j, t, n_samples);
    Matrix v = pauli_exp(h.term(j).op, tau);
    s1.mat += q.prob(j) * detail::kron(v.conjugate(), v);
    mean += q.prob(j) * v;
    members.emplace_back(q.prob(j), std::move(v));
  }
  s1.mean_op = mean;
  if (members.size() <= SuperOperator::kMaxEnsemble) s1.ensemble = std::move(members);
  s1.pure_unitary = (h.size() == 1);
  return s1.power(n_samples);
}

/** A finite mixture channel together with the per-experiment circuit costs. */
struct FiniteChannel {
  SuperOperator channel;
  std::vector<double> experiment_costs;
};

/**
 * Finite qDrift channel: arithmetic average of M sampled experiments.
 * Experiment m draws from stream (master_seed, stream_offset + m); the
 * average is reduced in ascending experiment index.
 */
inline FiniteChannel finite_qdrift_channel_detail(const Hamiltonian& h,
                                                  const SamplingDistribution& q, double t,
                                                  int n_samples, int m_experiments,
                                                  std::uint64_t master_seed,
                                                  std::uint64_t stream_offset = 0,
                                                  const CostTable* costs = nullptr) {
  if (m_experiments < 1) throw ValidationError("finite_qdrift_channel: M must be >= 1");
  const Eigen::Index d = h.dim();
  FiniteChannel out;
  out.channel.dim = d;
  out.channel.mat = Matrix::Zero(d * d, d * d);
  Matrix mean = Matrix::Zero(d, d);
  std::vector<std::pair<double, Matrix>> members;
  for (int m = 0; m < m_experiments; ++m) {
    RngStream rng(master_seed, stream_offset + static_cast<std::uint64_t>(m));
    SampledCircuit circ = sample_qdrift_circuit(h, q, t, n_samples, rng, costs);
    out.channel.mat += detail::kron(circ.unitary.conjugate(), circ.unitary);
    mean += circ.unitary;
    members.emplace_back(1.0 / m_experiments, circ.unitary);
    out.experiment_costs.push_back(circ.total_cost);
  }
  out.channel.mat /= static_cast<double>(m_experiments);
  out.channel.mean_op = mean / static_cast<double>(m_experiments);
  out.channel.pure_unitary = (m_experiments == 1);
  if (members.size() <= SuperOperator::kMaxEnsemble) out.channel.ensemble = std::move(members);
  return out;
}

inline SuperOperator finite_qdrift_channel(const Hamiltonian& h, const SamplingDistribution& q,
                                           double t, int n_samples, int m_experiments,
                                           std::uint64_t master_seed,
                                           std::uint64_t stream_offset = 0) {
  return finite_qdrift_channel_detail(h, q, t, n_samples, m_experiments, master_seed,
                                      stream_offset)
      .channel;
}

/**
 * Exact average composite channel: per time segment, one first-order Trotter
 * step for block A composed with the average qDrift channel for block B,
 * repeated r times.
 */
inline SuperOperator composite_channel_average(const Partition& p, const SamplingDistribution& q,
                                               double t, int n_samples, int r) {
  if (r < 1) throw ValidationError("composite_channel_average: r must be >= 1");
  SuperOperator step_a = conjugation_superop(trotter_step_unitary(p.a(), t / r));
  SuperOperator step_b = average_qdrift_channel(p.b(), q, t / r, n_samples);
  return step_a.compose(step_b).power(r);
}

/**
 * Finite composite channel Omega_q(t;N,M,r): average of M experiments, each
 * composed of r segments [TrotterStep_A(t/r) . sampled qDrift on B]; each
 * experiment m draws its N*r indices from stream (master_seed, offset + m).
 */
inline FiniteChannel composite_channel_finite_detail(const Partition& p,
                                                     const SamplingDistribution& q, double t,
                                                     int n_samples, int m_experiments, int r,
                                                     std::uint64_t master_seed,
                                                     std::uint64_t stream_offset = 0,
                                                     const CostTable* costs = nullptr) {
  if (r < 1) throw ValidationError("composite_channel_finite: r must be >= 1");
  if (m_experiments < 1) throw ValidationError("composite_channel_finite: M must be >= 1");
  const Eigen::Index d = p.a().dim();
  const Matrix u_a = trotter_step_unitary(p.a(), t / r);
  const double cost_a = costs ? total_cost(p.a(), *costs) : 0.0;
  FiniteChannel out;
  out.channel.dim = d;
  out.channel.mat = Matrix::Zero(d * d, d * d);
  Matrix mean = Matrix::Zero(d, d);
  std::vector<std::pair<double, Matrix>> members;
  for (int m = 0; m < m_experiments; ++m) {
    RngStream rng(master_seed, stream_offset + static_cast<std::uint64_t>(m));
    Matrix w = Matrix::Identity(d, d);
    double cost = 0;
    for (int s = 0; s < r; ++s) {
      SampledCircuit circ = sample_qdrift_circuit(p.b(), q, t / r, n_samples, rng, costs);
      w = u_a * circ.unitary * w;
      cost += cost_a + circ.total_cost;
    }
    out.channel.mat += detail::kron(w.conjugate(), w);
    mean += w;
    members.emplace_back(1.0 / m_experiments, std::move(w));
    out.experiment_costs.push_back(cost);
  }
  out.channel.mat /= static_cast<double>(m_experiments);
  out.channel.mean_op = mean / static_cast<double>(m_experiments);
  out.channel.pure_unitary = (m_experiments == 1);
  if (members.size() <= SuperOperator::kMaxEnsemble) out.channel.ensemble = std::move(members);
  return out;
}

inline SuperOperator composite_channel_finite(const Partition& p, const SamplingDistribution& q,
                                              double t, int n_samples, int m_experiments, int r,
                                              std::uint64_t master_seed,
                                              std::uint64_t stream_offset = 0) {
  return composite_channel_finite_detail(p, q, t, n_samples, m_experiments, r, master_seed,
                                         stream_offset)
      .channel;
}

}  // namespace driftsim
