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

#include "driftsim/sampling.hpp"

namespace driftsim {

/**
 * Inputs shared by the resource planners. alpha is the numerical constant of
 * the fluctuation bound (not quantified analytically; calibrate empirically),
 * kappa > 1 splits the accuracy budget between bias and fluctuations.
 */
struct BoundParams {
  double t = 0;
  double epsilon = 0;
  double delta = 0.05;
  double kappa = 2.0;
  double alpha = 1.0;
  int n_qubits = 0;

  void validate() const {
    if (!(epsilon > 0)) throw ValidationError("BoundParams: epsilon must be > 0");
    if (!(kappa > 1)) throw ValidationError("BoundParams: kappa must be > 1");
    if (!(alpha > 0)) throw ValidationError("BoundParams: alpha must be > 0");
    if (n_qubits < 1) throw ValidationError("BoundParams: n_qubits must be >= 1");
  }
};

/** Formula outputs before and after rounding up to the next integer. */
struct ResourcePlan {
  double n_samples_real = 0;
  long long n_samples = 0;
  double m_experiments_real = 0;
  long long m_experiments = 0;
  double r_segments_real = 1;
  long long r_segments = 1;
  double expected_total_cost = 0;
};

namespace detail {

inline long long ceil_positive(double x) {
  return static_cast<long long>(std::ceil(std::max(x, 1.0)));
}

}  // namespace detail

/** First-order Trotter error bound (L^2 Lambda^2 t^2 / 2r) e^{Lambda t L / r}. */
inline double trotter_error_bound(const Hamiltonian& h, double t, int r) {
  if (r < 1) throw ValidationError("trotter_error_bound: r must be >= 1");
  const double ll = static_cast<double>(h.size());
  const double lam_max = h.lambda_max();
  return (ll * ll * lam_max * lam_max * t * t) / (2.0 * r) * std::exp(lam_max * t * ll / r);
}

/** Bias bound (t^2 lambda^2 / N)(1 + E_p[omega]); 2 t^2 lambda^2 / N when q = p. */
inline double qdrift_bias_bound(double lambda, double t, int n_samples,
                                const WeightProfile& profile) {
  if (n_samples < 1) throw ValidationError("qdrift_bias_bound: N must be >= 1");
  return (t * t * lambda * lambda / n_samples) * (1.0 + profile.mean_p_omega);
}

/** Sample count N_q = ceil((t^2 lambda^2 / eps)(1 + E_p[omega])); always >= N_p. */
inline ResourcePlan qdrift_sample_count(double lambda, double t, double epsilon,
                                        const WeightProfile& profile) {
  if (!(epsilon > 0)) throw ValidationError("qdrift_sample_count: epsilon must be > 0");
  ResourcePlan plan;
  plan.n_samples_real = (t * t * lambda * lambda / epsilon) * (1.0 + profile.mean_p_omega);
  plan.n_samples = detail::ceil_positive(plan.n_samples_real);
  return plan;
}

/** Concentration budget NM = 11 (t^2 lambda^2 / eps^2)(1 + max omega)^2 (n+1) log(2/delta). */
inline double concentration_budget(double lambda, double t, double epsilon, double delta,
                                   int n_qubits, const WeightProfile& profile) {
  if (!(epsilon > 0) || epsilon > 4.0 * t * lambda)
    throw EpsilonOutOfRange("concentration_budget: epsilon must lie in (0, 4 t lambda]");
  if (!(delta > 0) || !(delta < 1))
    throw ValidationError("concentration_budget: delta must lie in (0, 1)");
  const double w = 1.0 + profile.max_omega;
  return 11.0 * (t * t * lambda * lambda / (epsilon * epsilon)) * w * w * (n_qubits + 1) *
         std::log(2.0 / delta);
}

/** Composite budget NMr; reduces to the plain budget with lambda = lambda_B at r = 1. */
inline double composite_concentration_budget(double lambda_b, double t, double epsilon,
                                             double delta, int n_qubits,
                                             const WeightProfile& profile) {
  return concentration_budget(lambda_b, t, epsilon, delta, n_qubits, profile);
}

/**
 * Expected fluctuation bound: bias term plus the two concentration terms,
 *   2(t^2 lambda^2/N)(1+E_p[omega]) + alpha n t lambda (1+max omega)/(NM)
 *   + alpha sqrt(n/(NM)) t lambda (1+max omega).
 */
inline double fluctuation_bound(double lambda, double t, int n_samples, int m_experiments,
                                int n_qubits, double alpha, const WeightProfile& profile) {
  const double nm = static_cast<double>(n_samples) * m_experiments;
  const double w = 1.0 + profile.max_omega;
  return 2.0 * (t * t * lambda * lambda / n_samples) * (1.0 + profile.mean_p_omega) +
         alpha * n_qubits * t * lambda * w / nm +
         alpha * std::sqrt(n_qubits / nm) * t * lambda * w;
}

/**
 * Pure-qDrift resource plan:
 *   N = 2 kappa (t^2 lambda^2 / eps)(1 + E_p[omega]),
 *   M = (n/eps)(2 alpha^2 kappa / (kappa-1)^2)(1 + max omega)^2 / (1 + E_p[omega]).
 */
inline ResourcePlan plan_pure_qdrift(double lambda, const BoundParams& bp,
                                     const WeightProfile& profile) {
  bp.validate();
  ResourcePlan plan;
  const double w = 1.0 + profile.max_omega;
  plan.n_samples_real =
      2.0 * bp.kappa * (bp.t * bp.t * lambda * lambda / bp.epsilon) * (1.0 + profile.mean_p_omega);
  plan.m_experiments_real = (bp.n_qubits / bp.epsilon) *
                            (2.0 * bp.alpha * bp.alpha * bp.kappa / ((bp.kappa - 1) * (bp.kappa - 1))) *
                            w * w / (1.0 + profile.mean_p_omega);
  plan.n_samples = detail::ceil_positive(plan.n_samples_real);
  plan.m_experiments = detail::ceil_positive(plan.m_experiments_real);
  return plan;
}

/** Composite bias bound (t^2/r)(Gamma_comm + lambda_B^2 (1 + E_p[omega]) / N). */
inline double composite_bias_bound(const Partition& p, const WeightProfile& profile, double t,
                                   int n_samples, int r) {
  if (n_samples < 1 || r < 1)
    throw ValidationError("composite_bias_bound: N and r must be >= 1");
  const double lb = p.b().lambda();
  return (t * t / r) *
         (gamma_comm(p) + lb * lb * (1.0 + profile.mean_p_omega) / n_samples);
}

/**
 * Cost-optimal number of B-samples per segment,
 *   N_B = lambda_B sqrt[ (1 + E_p[omega]) / E_q[C^B] * C^A_tot / Gamma_comm ].
 * Diverges when Gamma_comm = 0 (Trotter on A is then error-free and N should
 * come from the bias formula alone); that case raises ZeroCommutatorTerm.
 */
inline double optimal_nb(const Partition& p, const SamplingDistribution& q, const CostTable& c,
                         const WeightProfile& profile) {
  const double gamma = gamma_comm(p);
  if (gamma <= 0)
    throw ZeroCommutatorTerm("optimal_nb: Gamma_comm = 0 makes N_B diverge");
  const double ca_tot = total_cost(p.a(), c);
  const double ecb = expected_cost(p.b(), q, c);
  return p.b().lambda() *
         std::sqrt((1.0 + profile.mean_p_omega) / ecb * ca_tot / gamma);
}

/**
 * Expected cost at the optimal N_B:
 *   (t^2/eps)(sqrt(Gamma_comm C^A_tot) + lambda_B sqrt(E_q[C^B](1+E_p[omega])))^2.
 */
inline double optimal_composite_cost(const Partition& p, const SamplingDistribution& q,
                                     const CostTable& c, const BoundParams& bp,
                                     const WeightProfile& profile) {
  const double gamma = gamma_comm(p);
  const double ca_tot = total_cost(p.a(), c);
  const double ecb = expected_cost(p.b(), q, c);
  const double lb = p.b().lambda();
  const double root = std::sqrt(gamma * ca_tot) +
                      lb * std::sqrt(ecb * (1.0 + profile.mean_p_omega));
  return (bp.t * bp.t / bp.epsilon) * root * root;
}

/**
 * Composite resource plan: N from optimal_nb, r from the bias budget
 * r = 2 kappa (t^2/eps)(Gamma + lambda_B^2(1+E_p[omega])/N), M from the
 * mu_q formula; expected total cost r (C^A_tot + N E_q[C^B]).
 */
inline ResourcePlan plan_composite(const Partition& p, const SamplingDistribution& q,
                                   const CostTable& c, const BoundParams& bp,
                                   const WeightProfile& profile) {
  bp.validate();
  const double gamma = gamma_comm(p);
  const double lb = p.b().lambda();
  const double ca_tot = total_cost(p.a(), c);
  const double ecb = expected_cost(p.b(), q, c);
  const double one_plus_ew = 1.0 + profile.mean_p_omega;

  ResourcePlan plan;
  if (gamma > 0) {
    plan.n_samples_real = optimal_nb(p, q, c, profile);
  } else {
    // Fall back to the bias formula alone; one segment of qDrift on B.
    plan.n_samples_real = (bp.t * bp.t * lb * lb / bp.epsilon) * one_plus_ew;
  }
  plan.n_samples = detail::ceil_positive(plan.n_samples_real);

  plan.r_segments_real = 2.0 * bp.kappa * (bp.t * bp.t / bp.epsilon) *
                         (gamma + lb * lb * one_plus_ew / plan.n_samples_real);
  plan.r_segments = detail::ceil_positive(plan.r_segments_real);

  const double w = 1.0 + profile.max_omega;
  const double mu_denom = std::sqrt(gamma * ca_tot) + lb * std::sqrt(one_plus_ew * ecb);
  const double mu_q = w * w * std::sqrt(ecb / one_plus_ew) / mu_denom;
  plan.m_experiments_real = mu_q * (bp.n_qubits / bp.epsilon) *
                            (2.0 * bp.alpha * bp.alpha * bp.kappa /
                             ((bp.kappa - 1) * (bp.kappa - 1))) *
                            lb / std::sqrt(ca_tot);
  plan.m_experiments = detail::ceil_positive(plan.m_experiments_real);

  plan.expected_total_cost =
      plan.r_segments_real * (ca_tot + plan.n_samples_real * ecb);
  return plan;
}

/** Composite fluctuation bound (bias slice plus the two concentration terms). */
inline double composite_fluctuation_bound(const Partition& p, const WeightProfile& profile,
                                          double t, int n_samples, int m_experiments, int r,
                                          const BoundParams& bp) {
  const double lb = p.b().lambda();
  const double nmr = static_cast<double>(n_samples) * m_experiments * r;
  const double w = 1.0 + profile.max_omega;
  return 2.0 * (t * t / r) *
             (gamma_comm(p) + lb * lb * (1.0 + profile.mean_p_omega) / n_samples) +
         bp.alpha * bp.n_qubits * t * lb * w / nmr +
         bp.alpha * std::sqrt(bp.n_qubits / nmr) * t * lb * w;
}

/** Both sides of each cost-reduction inequality, plus pass/fail flags. */
struct CostReductionReport {
  // Pure qDrift, in units of t^2 lambda^2 / eps: N E[C] for p and q_c.
  double pure_lhs_qc = 0;  // (1 + E_p[omega_qc]) E_qc[C]
  double pure_rhs_p = 0;   // 2 E_p[C]
  bool pure_pass = false;
  // Experiment-count increase factor (independent of t).
  double m_increase_factor = 0;
  bool m_increase_pass = false;
  // Composite channel expected costs at the optimal N_B (units t^2/eps).
  double composite_cost_qc = 0;
  double composite_cost_p = 0;
  bool composite_pass = false;
  bool has_composite = false;
  // M_qc >= M_p for the composite plans.
  double composite_m_qc = 0;
  double composite_m_p = 0;
  bool composite_m_pass = false;
  bool equality_case = false;  // costs constant => q_c = p and all equalities
  bool all_pass = false;
};

namespace detail {

inline void pure_cost_reduction(const Hamiltonian& h, const CostTable& c,
                                CostReductionReport& rep) {
  auto p = SamplingDistribution::standard(h);
  auto qc = SamplingDistribution::cost_weighted(h, c);
  auto prof_qc = weight_profile(h, qc);
  rep.pure_lhs_qc = (1.0 + prof_qc.mean_p_omega) * expected_cost(h, qc, c);
  rep.pure_rhs_p = 2.0 * expected_cost(h, p, c);
  rep.pure_pass = rep.pure_lhs_qc <= rep.pure_rhs_p + 1e-12;

  const double ep_c = expected_cost(h, p, c);
  double ep_invc = 0;
  double max_c = 0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double cj = c.lookup(h.term(j).op);
    ep_invc += (h.term(j).coeff / h.lambda()) / cj;
    max_c = std::max(max_c, cj);
  }
  rep.m_increase_factor =
      (1.0 + ep_invc * max_c) * (1.0 + ep_invc * max_c) / (1.0 + ep_invc * ep_c);
  rep.m_increase_pass = rep.m_increase_factor >= 1.0 - 1e-12;
}

}  // namespace detail

/** Checkable form of the cost-reduction statements for a plain Hamiltonian. */
inline CostReductionReport verify_cost_reduction(const Hamiltonian& h, const CostTable& c) {
  CostReductionReport rep;
  detail::pure_cost_reduction(h, c, rep);
  double cmin = 1e300, cmax = 0;
  for (const auto& t : h.terms()) {
    const double cj = c.lookup(t.op);
    cmin = std::min(cmin, cj);
    cmax = std::max(cmax, cj);
  }
  rep.equality_case = (cmax - cmin) <= 1e-12 * cmax;
  rep.all_pass = rep.pure_pass && rep.m_increase_pass;
  return rep;
}

/** Cost-reduction report for a Partition: pure inequalities on B plus the composite ones. */
inline CostReductionReport verify_cost_reduction(const Partition& part, const CostTable& c,
                                                 const BoundParams& bp_in = {}) {
  CostReductionReport rep = verify_cost_reduction(part.b(), c);
  rep.has_composite = true;

  BoundParams bp = bp_in;
  if (!(bp.t > 0)) bp.t = 0.05;
  if (!(bp.epsilon > 0)) bp.epsilon = 1e-3;
  if (bp.n_qubits < 1) bp.n_qubits = part.n_qubits();

  auto p = SamplingDistribution::standard(part.b());
  auto qc = SamplingDistribution::cost_weighted(part.b(), c);
  auto prof_p = weight_profile(part.b(), p);
  auto prof_qc = weight_profile(part.b(), qc);

  rep.composite_cost_p = optimal_composite_cost(part, p, c, bp, prof_p);
  rep.composite_cost_qc = optimal_composite_cost(part, qc, c, bp, prof_qc);
  rep.composite_pass = rep.composite_cost_qc <= rep.composite_cost_p + 1e-12;

  rep.composite_m_p = plan_composite(part, p, c, bp, prof_p).m_experiments_real;
  rep.composite_m_qc = plan_composite(part, qc, c, bp, prof_qc).m_experiments_real;
  rep.composite_m_pass = rep.composite_m_qc >= rep.composite_m_p - 1e-12;

  rep.all_pass =
      rep.pure_pass && rep.m_increase_pass && rep.composite_pass && rep.composite_m_pass;
  return rep;
}

}  // namespace driftsim
