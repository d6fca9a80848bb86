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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "driftsim/pauli.hpp"

namespace driftsim {

/** One weighted term h_l * H_l of a Hamiltonian; h_l > 0 by convention. */
struct Term {
  double coeff;
  PauliString op;
};

/**
 * A Hamiltonian as an ordered, weighted sum of Pauli strings.
 *
 * Coefficients are strictly positive (signs are absorbed into the
 * generators); zero-coefficient terms are stripped at construction. Term
 * order is preserved, since first-order Trotter products depend on it.
 */
class Hamiltonian {
 public:
  Hamiltonian(int n_qubits, std::vector<Term> terms) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
      throw ValidationError("Hamiltonian: n_qubits out of range");
    terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (t.op.n_qubits() != n_qubits)
        throw ValidationError("Hamiltonian: term \"" + t.op.to_string() +
                              "\" has inconsistent qubit count");
      if (t.coeff < 0)
        throw ValidationError("Hamiltonian: non-positive coefficient for \"" +
                              t.op.to_string() + "\"");
      if (t.coeff == 0) continue;
      terms_.push_back(std::move(t));
    }
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& term(std::size_t l) const { return terms_[l]; }

  /** lambda = sum of coefficients. */
  double lambda() const {
    double s = 0;
    for (const auto& t : terms_) s += t.coeff;
    return s;
  }

  /** Largest coefficient. */
  double lambda_max() const {
    double m = 0;
    for (const auto& t : terms_) m = std::max(m, t.coeff);
    return m;
  }

  Matrix dense() const {
    Matrix m = Matrix::Zero(dim(), dim());
    for (const auto& t : terms_) m += t.coeff * dense_matrix(t.op);
    return m;
  }

 private:
  int n_qubits_;
  std::vector<Term> terms_;
};

/** Per-generator implementation cost C_j > 0, keyed by the Pauli text form. */
class CostTable {
 public:
  CostTable() = default;

  void set(const PauliString& p, double cost) { set(p.to_string(), cost); }
  void set(const std::string& pauli, double cost) {
    if (!(cost > 0)) throw NonPositiveCost("CostTable: cost for \"" + pauli + "\" must be > 0");
    entries_[pauli] = cost;
  }

  bool contains(const PauliString& p) const { return entries_.count(p.to_string()) > 0; }

  double lookup(const PauliString& p) const {
    auto it = entries_.find(p.to_string());
    if (it == entries_.end())
      throw MissingCost("CostTable: no cost for generator \"" + p.to_string() + "\"");
    return it->second;
  }

  const std::map<std::string, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, double> entries_;
};

/**
 * A two-block split H = A + B. Block A is meant for deterministic Trotter
 * steps, block B for the stochastic channel.
 */
class Partition {
 public:
  Partition(Hamiltonian a, Hamiltonian b, std::string label = "")
      : a_(std::move(a)), b_(std::move(b)), label_(std::move(label)) {
    if (a_.n_qubits() != b_.n_qubits())
      throw ValidationError("Partition: blocks have different qubit counts");
  }

  const Hamiltonian& a() const { return a_; }
  const Hamiltonian& b() const { return b_; }
  const std::string& label() const { return label_; }
  int n_qubits() const { return a_.n_qubits(); }

  /** Term-concatenation A then B; dense matrix equals dense(A) + dense(B). */
  Hamiltonian full() const {
    std::vector<Term> ts = a_.terms();
    ts.insert(ts.end(), b_.terms().begin(), b_.terms().end());
    return Hamiltonian(n_qubits(), std::move(ts));
  }

 private:
  Hamiltonian a_;
  Hamiltonian b_;
  std::string label_;
};

/**
 * Gamma_comm = sum_{i<j} a_i a_j ||[A_i,A_j]|| + 1/2 sum_{ij} a_i b_j ||[A_i,B_j]||.
 * Zero iff all A-terms mutually commute and commute with all B-terms.
 */
inline double gamma_comm(const Partition& p) {
  const auto& at = p.a().terms();
  const auto& bt = p.b().terms();
  double g = 0;
  for (std::size_t i = 0; i < at.size(); ++i)
    for (std::size_t j = i + 1; j < at.size(); ++j)
      g += at[i].coeff * at[j].coeff * commutator_norm(at[i].op, at[j].op);
  for (const auto& ta : at)
    for (const auto& tb : bt)
      g += 0.5 * ta.coeff * tb.coeff * commutator_norm(ta.op, tb.op);
  return g;
}

namespace detail {

inline std::vector<Term> make_terms(double coeff, const std::vector<std::string>& paulis) {
  std::vector<Term> ts;
  ts.reserve(paulis.size());
  for (const auto& s : paulis) ts.push_back({coeff, PauliString::from_string(s)});
  return ts;
}

}  // namespace detail

/**
 * The built-in 4-qubit lattice model with its two partitionings.
 *
 * Variant 0 puts the dominant kinetic-plus-selected-ZZ structure in A (10
 * terms, coefficient a) and the remaining Z-type terms in B (9 terms,
 * coefficient b). Variant 1 instead groups the cheap generators in A (9
 * terms) and the expensive ones in B (10 terms).
 */
inline Partition build_lattice_model(double a, double b, int variant) {
  if (!(a > 0)) throw ValidationError("build_lattice_model: a must be positive");
  if (!(b > 0)) throw ValidationError("build_lattice_model: b must be positive");
  if (variant == 0) {
    auto at = detail::make_terms(
        a, {"XIII", "IXII", "IIXI", "IIIX", "ZIIZ", "IZZI", "ZZZI", "ZZIZ", "ZIZZ", "IZZZ"});
    auto bt = detail::make_terms(
        b, {"ZIII", "IZII", "IIZI", "IIIZ", "ZZII", "ZIZI", "IZIZ", "IIZZ", "ZZZZ"});
    return Partition(Hamiltonian(4, std::move(at)), Hamiltonian(4, std::move(bt)), "lattice_0");
  }
  if (variant == 1) {
    auto at = detail::make_terms(
        a, {"XIII", "IXII", "IIXI", "IIIX", "ZIII", "ZIIZ", "IZZI", "IZIZ", "ZZIZ"});
    auto bt = detail::make_terms(
        b, {"IZII", "IIZI", "IIIZ", "ZZII", "ZIZI", "IIZZ", "ZZZI", "IZZZ", "ZIZZ", "ZZZZ"});
    return Partition(Hamiltonian(4, std::move(at)), Hamiltonian(4, std::move(bt)), "lattice_1");
  }
  throw InvalidVariant("build_lattice_model: variant must be 0 or 1");
}

/** CNOT-count costs for the lattice-model generators (linear connectivity 1423). */
inline CostTable default_cost_table() {
  CostTable c;
  c.set("XIII", 0.1);
  c.set("IXII", 0.1);
  c.set("IIXI", 0.1);
  c.set("IIIX", 0.1);
  c.set("ZIII", 0.1);
  c.set("IZII", 0.1);
  c.set("IIZI", 0.1);
  c.set("IIIZ", 0.1);
  c.set("ZIIZ", 2);   // Z1Z4
  c.set("IZIZ", 2);   // Z2Z4
  c.set("IZZI", 2);   // Z2Z3
  c.set("ZZIZ", 4);   // Z1Z2Z4
  c.set("IZZZ", 4);   // Z2Z3Z4
  c.set("ZZII", 6);   // Z1Z2
  c.set("IIZZ", 6);   // Z3Z4
  c.set("ZZZZ", 6);   // Z1Z2Z3Z4
  c.set("ZIZZ", 8);   // Z1Z3Z4
  c.set("ZZZI", 8);   // Z1Z2Z3
  c.set("ZIZI", 10);  // Z1Z3
  return c;
}

/** Sum of costs over the generators of a Hamiltonian block. */
inline double total_cost(const Hamiltonian& h, const CostTable& c) {
  double s = 0;
  for (const auto& t : h.terms()) s += c.lookup(t.op);
  return s;
}

}  // namespace driftsim
