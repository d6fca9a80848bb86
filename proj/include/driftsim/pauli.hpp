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

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "driftsim/errors.hpp"

namespace driftsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/** Dense representations live in at most this many qubits (exactness over scalability). */
inline constexpr int kMaxQubits = 10;

/** Single-qubit Pauli labels. */
enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/**
 * A tensor product of single-qubit Pauli operators.
 *
 * Qubit 1 is the leftmost tensor factor (big-endian), so "ZI" acts with Z on
 * qubit 1 and identity on qubit 2. Every PauliString is Hermitian, unitary
 * and has spectral norm exactly 1.
 */
class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ValidationError("PauliString: empty factor list");
    if (static_cast<int>(factors_.size()) > kMaxQubits)
      throw ValidationError("PauliString: more than " + std::to_string(kMaxQubits) + " qubits");
  }

  /** Parse from text over {I,X,Y,Z}, e.g. "ZIZI". */
  static PauliString from_string(const std::string& s) {
    std::vector<Pauli> f;
    f.reserve(s.size());
    for (char c : s) {
      switch (c) {
        case 'I': f.push_back(Pauli::I); break;
        case 'X': f.push_back(Pauli::X); break;
        case 'Y': f.push_back(Pauli::Y); break;
        case 'Z': f.push_back(Pauli::Z); break;
        default:
          throw ParseError(std::string("PauliString: unknown Pauli label '") + c + "' in \"" + s + "\"");
      }
    }
    return PauliString(std::move(f));
  }

  int n_qubits() const { return static_cast<int>(factors_.size()); }
  const std::vector<Pauli>& factors() const { return factors_; }
  Pauli factor(int k) const { return factors_[static_cast<std::size_t>(k)]; }

  bool is_identity() const {
    for (Pauli p : factors_)
      if (p != Pauli::I) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(factors_.size());
    for (Pauli p : factors_) s.push_back(static_cast<char>(p));
    return s;
  }

  /** Pauli strings either commute or anticommute; true iff they commute. */
  bool commutes_with(const PauliString& other) const {
    if (n_qubits() != other.n_qubits())
      throw DimensionMismatch("commutes_with: qubit counts differ");
    int anti = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      Pauli a = factors_[k], b = other.factors_[k];
      if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
    }
    return anti % 2 == 0;
  }

  bool operator==(const PauliString& other) const { return factors_ == other.factors_; }
  bool operator!=(const PauliString& other) const { return !(*this == other); }

 private:
  std::vector<Pauli> factors_;
};

namespace detail {

inline const Matrix& single_qubit_matrix(Pauli p) {
  static const Matrix i2 = Matrix::Identity(2, 2);
  static const Matrix x = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix y = (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Matrix z = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  switch (p) {
    case Pauli::X: return x;
    case Pauli::Y: return y;
    case Pauli::Z: return z;
    default: return i2;
  }
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace detail

/** Dense 2^n x 2^n matrix of a Pauli string (qubit 1 = leftmost Kronecker factor). */
inline Matrix dense_matrix(const PauliString& p) {
  Matrix m = detail::single_qubit_matrix(p.factor(0));
  for (int k = 1; k < p.n_qubits(); ++k)
    m = detail::kron(m, detail::single_qubit_matrix(p.factor(k)));
  return m;
}

/**
 * Fast-forwarded exponential e^{-i theta P} = cos(theta) I - i sin(theta) P.
 * Exact because P^2 = I; no series truncation.
 */
inline Matrix pauli_exp(const PauliString& p, double theta) {
  const Eigen::Index d = Eigen::Index(1) << p.n_qubits();
  Matrix m = dense_matrix(p);
  return std::cos(theta) * Matrix::Identity(d, d) + Complex(0, -1) * std::sin(theta) * m;
}

/**
 * Exact propagator e^{-iHt} of a Hermitian matrix via eigendecomposition.
 * Throws NonHermitianInput if max-abs of H - H^dag exceeds 1e-10.
 */
inline Matrix general_exp(const Matrix& h, double t) {
  if (h.rows() != h.cols()) throw DimensionMismatch("general_exp: matrix not square");
  const double herm_err = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-10)
    throw NonHermitianInput("general_exp: input deviates from Hermitian by " + std::to_string(herm_err));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(Complex(0, -w(k) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/**
 * Spectral norm of [P1, P2]. Pauli strings either commute or anticommute,
 * so the value is exactly 0 or 2.
 */
inline double commutator_norm(const PauliString& p1, const PauliString& p2) {
  if (p1.n_qubits() != p2.n_qubits())
    throw DimensionMismatch("commutator_norm: qubit counts differ");
  return p1.commutes_with(p2) ? 0.0 : 2.0;
}

}  // namespace driftsim
