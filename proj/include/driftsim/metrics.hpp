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

#include <algorithm>
#include <cmath>
#include <string>

#include "driftsim/channels.hpp"

namespace driftsim {

/** Largest singular value. */
inline double spectral_norm(const Matrix& m) {
  if (m.rows() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/** Sum of singular values. */
inline double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

/** Sum of absolute eigenvalues of a Hermitian matrix (its trace norm). */
inline double trace_norm_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/**
 * Choi matrix of a (difference of) superoperator(s) under column-stacking:
 * J_{(i d + a),(j d + b)} = [Phi(E_ab)]_{ij}, i.e. a reshuffle of the map's
 * matrix. Trace d and PSD for trace-preserving, completely positive maps.
 */
inline Matrix choi_matrix(const SuperOperator& s) {
  const Eigen::Index d = s.dim;
  Matrix j(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index jj = 0; jj < d; ++jj)
        for (Eigen::Index b = 0; b < d; ++b)
          j(i * d + a, jj * d + b) = s.mat(i + d * jj, a + d * b);
  return j;
}

/**
 * Lemma-style diamond upper bound for a unitary against an ensemble of
 * unitaries: 2 ||U - sum_k p_k V_k||.
 */
inline double lemma_upper_bound(const Matrix& u,
                                const std::vector<std::pair<double, Matrix>>& ensemble) {
  double wsum = 0;
  Matrix mean = Matrix::Zero(u.rows(), u.cols());
  for (const auto& [w, v] : ensemble) {
    wsum += w;
    mean += w * v;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw ValidationError("lemma_upper_bound: ensemble weights sum to " + std::to_string(wsum));
  return 2.0 * spectral_norm(u - mean);
}

struct DiamondEstimate {
  double value = 0;
  double lower_bound = 0;
  double upper_bound = 2;
  std::string method = "pure_state_ascent";
  int restarts_used = 0;
  bool converged = false;
};

namespace detail {

/**
 * Apply a superoperator to the first tensor factor of a (d^2, d^2) operator
 * on system (x) ancilla: out_{(ia),(jb)} = sum_{i'j'} S_{(ij),(i'j')} X_{(i'a),(j'b)}.
 * Implemented as a permuted matrix product.
 */
inline Matrix apply_super_to_first(const Matrix& s, const Matrix& x, Eigen::Index d) {
  Matrix xp(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          xp(i + d * j, a + d * b) = x(i * d + a, j * d + b);
  Matrix yp = s * xp;
  Matrix out(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          out(i * d + a, j * d + b) = yp(i + d * j, a + d * b);
  return out;
}

inline Vector random_unit_vector(Eigen::Index n, RngStream& rng) {
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    // Box-Muller
    const double u1 = std::max(rng.uniform(), 1e-300);
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    v(k) = Complex(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
  }
  v.normalize();
  return v;
}

/**
 * Objective/gradient evaluator for the full d^2 x d^2 map matrix:
 * f(psi) = ||(Delta (x) Id)(|psi><psi|)||_1.
 */
struct DenseDelta {
  const Matrix& delta;
  Matrix delta_adj;
  Eigen::Index d;

  DenseDelta(const Matrix& m, Eigen::Index dim) : delta(m), delta_adj(m.adjoint()), d(dim) {}

  double value(const Vector& psi) const {
    Matrix m = apply_super_to_first(delta, psi * psi.adjoint(), d);
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }

  /** Returns f and fills grad with A psi (the Euclidean ascent direction). */
  double value_and_grad(const Vector& psi, Vector& grad) const {
    Matrix m = apply_super_to_first(delta, psi * psi.adjoint(), d);
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const Eigen::VectorXd& mu = es.eigenvalues();
    const double f = mu.cwiseAbs().sum();
    // Subgradient W = sum_k sign(mu_k) v_k v_k^dag; f(psi) = psi^dag A psi
    // with A the pullback of W through the adjoint map.
    Vector signs(mu.size());
    for (Eigen::Index k = 0; k < mu.size(); ++k) signs(k) = (mu(k) >= 0) ? 1.0 : -1.0;
    Matrix w = es.eigenvectors() * signs.asDiagonal() * es.eigenvectors().adjoint();
    Matrix a = apply_super_to_first(delta_adj, w, d);
    grad = a * psi;
    return f;
  }
};

/**
 * Low-rank evaluator for a signed mixture of unitary conjugations,
 * Delta(rho) = sum_k mu_k V_k rho V_k^dag. The doubled-space operator
 * M(psi) = sum_k mu_k y_k y_k^dag with y_k = (V_k (x) Id) psi has rank at
 * most K, so the objective needs only a K x K eigenproblem after a QR of
 * the d^2 x K frame Y.
 */
struct EnsembleDelta {
  Eigen::VectorXd weights;
  std::vector<Matrix> unitaries;
  Eigen::Index d;

  EnsembleDelta(const std::vector<std::pair<double, Matrix>>& plus,
                const std::vector<std::pair<double, Matrix>>& minus, Eigen::Index dim)
      : d(dim) {
    weights.resize(static_cast<Eigen::Index>(plus.size() + minus.size()));
    Eigen::Index k = 0;
    for (const auto& [w, v] : plus) {
      weights(k++) = w;
      unitaries.push_back(v);
    }
    for (const auto& [w, v] : minus) {
      weights(k++) = -w;
      unitaries.push_back(v);
    }
  }

  Eigen::Index size() const { return weights.size(); }

  /** Frame Y with columns (V_k (x) Id) psi, via the reshape psi -> Psi(a, i). */
  Matrix frame(const Vector& psi) const {
    const Eigen::Index k_count = size();
    Matrix y(d * d, k_count);
    Eigen::Map<const Matrix> psi_mat(psi.data(), d, d);  // (ancilla, system)
    for (Eigen::Index k = 0; k < k_count; ++k) {
      Matrix t = psi_mat * unitaries[static_cast<std::size_t>(k)].transpose();
      y.col(k) = Eigen::Map<const Vector>(t.data(), d * d);
    }
    return y;
  }

  double value(const Vector& psi) const {
    Matrix y = frame(psi);
    Eigen::HouseholderQR<Matrix> qr(y);
    const Eigen::Index k_count = size();
    Matrix r = qr.matrixQR().topRows(k_count).template triangularView<Eigen::Upper>();
    Matrix small = r * weights.asDiagonal() * r.adjoint();
    small = 0.5 * (small + small.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(small, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }

  double value_and_grad(const Vector& psi, Vector& grad) const {
    const Eigen::Index k_count = size();
    Matrix y = frame(psi);
    Eigen::HouseholderQR<Matrix> qr(y);
    Matrix q = qr.householderQ() * Matrix::Identity(d * d, k_count);
    Matrix z = q.adjoint() * y;  // K x K coordinates of the frame
    Matrix small = z * weights.asDiagonal() * z.adjoint();
    small = 0.5 * (small + small.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(small);
    const Eigen::VectorXd& mu = es.eigenvalues();
    const double f = mu.cwiseAbs().sum();
    Vector signs(mu.size());
    for (Eigen::Index k = 0; k < mu.size(); ++k) signs(k) = (mu(k) >= 0) ? 1.0 : -1.0;
    // W = Q W' Q^dag; grad = sum_k mu_k (V_k^dag (x) Id) W y_k = sum_k mu_k
    // reshape(Q (W' z_k)) conj(V_k).
    Matrix wp = es.eigenvectors() * signs.asDiagonal() * es.eigenvectors().adjoint();
    Matrix g_cols = q * (wp * z);  // column k = W y_k
    grad = Vector::Zero(d * d);
    for (Eigen::Index k = 0; k < k_count; ++k) {
      Eigen::Map<const Matrix> t(g_cols.col(k).data(), d, d);
      Matrix applied = t * unitaries[static_cast<std::size_t>(k)].conjugate();
      grad += weights(k) * Eigen::Map<const Vector>(applied.data(), d * d);
    }
    return f;
  }
};

/** One gradient-ascent run of psi -> ||(Delta (x) Id)(|psi><psi|)||_1 on the sphere. */
template <class Evaluator>
inline double ascend_trace_norm(const Evaluator& eval, Vector psi, double tol, RngStream& rng) {
  const int max_iters = 300;
  double f_prev = -1;
  int perturbations = 0;
  double f = 0;
  for (int iter = 0; iter < max_iters; ++iter) {
    Vector grad;
    f = eval.value_and_grad(psi, grad);
    // Riemannian gradient on the unit sphere.
    const Complex overlap = psi.dot(grad);
    Vector g = grad - overlap * psi;
    const double gnorm = g.norm();
    if (gnorm < 1e-12) {
      if (perturbations < 3) {
        // Possible eigenvalue-crossing kink: nudge and retry.
        psi = (psi + 1e-9 * random_unit_vector(psi.size(), rng)).normalized();
        ++perturbations;
        continue;
      }
      break;
    }
    // Backtracking line search along the normalized gradient.
    double eta = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Vector cand = (psi + (eta / gnorm) * g).normalized();
      const double fc = eval.value(cand);
      if (fc > f + 1e-15) {
        psi = cand;
        f = fc;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      if (perturbations < 3) {
        psi = (psi + 1e-9 * random_unit_vector(psi.size(), rng)).normalized();
        ++perturbations;
        continue;
      }
      break;
    }
    if (f_prev >= 0 && f - f_prev < tol * 0.01) break;
    f_prev = f;
  }
  return f;
}

inline bool is_trace_preserving(const SuperOperator& s, double tol = 1e-10) {
  // Trace preservation: sum over the output diagonal of each column block,
  // i.e. row vec(I)^T of the map must equal vec(I)^T.
  const Eigen::Index d = s.dim;
  Vector vec_id = Vector::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k) vec_id(k + d * k) = 1.0;
  Vector row = s.mat.adjoint() * vec_id;
  return (row - vec_id).cwiseAbs().maxCoeff() < tol;
}

}  // namespace detail

/**
 * Diamond distance between two trace-preserving channels, via gradient
 * ascent over pure states on the doubled space (ancilla dimension = system
 * dimension), certified by an analytic sandwich:
 *   lower  = ||Choi(s1) - Choi(s2)||_1 / d   (maximally entangled input),
 *   upper  = 2 ||mean(s1) - mean(s2)||       (mixtures of unitaries),
 * and upper = 2 otherwise. converged is true when at least two restarts
 * agree with the best value within tol. When both channels carry explicit
 * unitary ensembles small enough, the ascent runs through a low-rank
 * evaluator; the objective is identical.
 */
inline DiamondEstimate diamond_distance(const SuperOperator& s1, const SuperOperator& s2,
                                        int restarts = 20, double tol = 1e-7,
                                        std::uint64_t seed = 0x5eed) {
  if (s1.dim != s2.dim || s1.mat.rows() != s2.mat.rows())
    throw DimensionMismatch("diamond_distance: channel dimensions differ");
  if (!detail::is_trace_preserving(s1) || !detail::is_trace_preserving(s2))
    throw NotTracePreserving("diamond_distance: inputs must be trace-preserving");
  if (restarts < 1) throw ValidationError("diamond_distance: restarts must be >= 1");

  const Eigen::Index d = s1.dim;
  Matrix diff_mat = s1.mat - s2.mat;

  DiamondEstimate est;
  {
    SuperOperator diff;
    diff.dim = d;
    diff.mat = diff_mat;
    Matrix choi = choi_matrix(diff);
    // Differences of unitary-mixture channels have Hermitian Choi matrices.
    if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() < 1e-10)
      est.lower_bound = trace_norm_hermitian(0.5 * (choi + choi.adjoint())) / double(d);
    else
      est.lower_bound = trace_norm(choi) / double(d);
  }
  if (s1.mean_op && s2.mean_op)
    est.upper_bound = std::min(2.0, 2.0 * spectral_norm(*s1.mean_op - *s2.mean_op));
  else
    est.upper_bound = 2.0;

  const bool low_rank = s1.ensemble && s2.ensemble &&
                        static_cast<Eigen::Index>(s1.ensemble->size() + s2.ensemble->size()) <=
                            d * d;
  std::optional<detail::EnsembleDelta> ens;
  std::optional<detail::DenseDelta> dense;
  if (low_rank) {
    ens.emplace(*s1.ensemble, *s2.ensemble, d);
    est.method = "pure_state_ascent_low_rank";
  } else {
    dense.emplace(diff_mat, d);
  }

  // Restart 0 starts from the maximally entangled state (whose objective is
  // exactly the Choi lower bound); the rest start from random unit vectors.
  double best = 0;
  int agreeing = 0;
  for (int rst = 0; rst < restarts; ++rst) {
    RngStream rng(seed, static_cast<std::uint64_t>(rst));
    Vector psi;
    if (rst == 0) {
      psi = Vector::Zero(d * d);
      for (Eigen::Index k = 0; k < d; ++k) psi(k * d + k) = 1.0 / std::sqrt(double(d));
    } else {
      psi = detail::random_unit_vector(d * d, rng);
    }
    const double f = low_rank ? detail::ascend_trace_norm(*ens, psi, tol, rng)
                              : detail::ascend_trace_norm(*dense, psi, tol, rng);
    if (f > best + tol) {
      best = f;
      agreeing = 1;
    } else if (f > best - tol) {
      best = std::max(best, f);
      ++agreeing;
    }
    est.restarts_used = rst + 1;
  }
  est.value = best;
  est.converged = agreeing >= 2;

  // Numerical slack on the certified sandwich.
  est.value = std::max(est.value, 0.0);
  if (est.value < est.lower_bound) {
    if (est.lower_bound - est.value > 1e-9)
      throw Error("diamond_distance: ascent value below Choi lower bound");
    est.value = est.lower_bound;
  }
  if (est.value > est.upper_bound + 1e-9)
    throw Error("diamond_distance: ascent value exceeds certified upper bound");
  return est;
}

}  // namespace driftsim
