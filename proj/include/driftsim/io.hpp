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

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "driftsim/channels.hpp"

namespace driftsim {

/**
 * Partition file schema (JSON):
 * {
 *   "n_qubits": 4,
 *   "label": "optional text",
 *   "A": [{"coeff": 1.0, "pauli": "XIII"}, ...],
 *   "B": [{"coeff": 0.1, "pauli": "ZIII"}, ...],
 *   "costs": {"XIII": 0.1, ...}          // optional
 * }
 * Term order is preserved; coefficients must be positive.
 */
struct PartitionDocument {
  Partition partition;
  std::optional<CostTable> costs;
};

namespace io_detail {

inline std::vector<Term> parse_block(const nlohmann::json& arr, int n_qubits,
                                     const std::string& block) {
  if (!arr.is_array())
    throw ParseError("partition file: block \"" + block + "\" must be an array");
  std::vector<Term> terms;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto& rec = arr[k];
    if (!rec.contains("coeff") || !rec.contains("pauli"))
      throw ParseError("partition file: " + block + "[" + std::to_string(k) +
                       "] needs fields coeff and pauli");
    const double coeff = rec["coeff"].get<double>();
    PauliString ps = PauliString::from_string(rec["pauli"].get<std::string>());
    if (ps.n_qubits() != n_qubits)
      throw ValidationError("partition file: " + block + "[" + std::to_string(k) +
                            "] has wrong qubit count");
    if (!(coeff > 0))
      throw ValidationError("partition file: " + block + "[" + std::to_string(k) +
                            "] coefficient must be positive");
    terms.push_back({coeff, std::move(ps)});
  }
  return terms;
}

}  // namespace io_detail

inline PartitionDocument parse_partition(const nlohmann::json& doc) {
  if (!doc.contains("n_qubits")) throw ParseError("partition file: missing n_qubits");
  const int n = doc["n_qubits"].get<int>();
  if (n < 1 || n > kMaxQubits) throw ValidationError("partition file: n_qubits out of range");
  if (!doc.contains("A") || !doc.contains("B"))
    throw ParseError("partition file: missing block A or B");
  Hamiltonian a(n, io_detail::parse_block(doc["A"], n, "A"));
  Hamiltonian b(n, io_detail::parse_block(doc["B"], n, "B"));
  std::string label = doc.value("label", std::string{});
  PartitionDocument out{Partition(std::move(a), std::move(b), label), std::nullopt};
  if (doc.contains("costs")) {
    CostTable c;
    for (const auto& [key, val] : doc["costs"].items()) {
      PauliString ps = PauliString::from_string(key);  // validates labels
      if (ps.n_qubits() != n) throw ValidationError("partition file: cost key wrong length");
      c.set(key, val.get<double>());
    }
    out.costs = std::move(c);
  }
  return out;
}

inline PartitionDocument load_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open partition file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("partition file " + path + ": " + e.what());
  }
  return parse_partition(doc);
}

inline nlohmann::json partition_to_json(const Partition& p, const CostTable* costs = nullptr) {
  nlohmann::json doc;
  doc["n_qubits"] = p.n_qubits();
  if (!p.label().empty()) doc["label"] = p.label();
  auto block = [](const Hamiltonian& h) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : h.terms())
      arr.push_back({{"coeff", t.coeff}, {"pauli", t.op.to_string()}});
    return arr;
  };
  doc["A"] = block(p.a());
  doc["B"] = block(p.b());
  if (costs && !costs->empty()) {
    nlohmann::json cj;
    for (const auto& [pauli, cost] : costs->entries()) cj[pauli] = cost;
    doc["costs"] = cj;
  }
  return doc;
}

inline void save_partition(const Partition& p, const std::string& path,
                           const CostTable* costs = nullptr) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write partition file: " + path);
  out << partition_to_json(p, costs).dump(2) << "\n";
}

/**
 * Custom distribution file: [{"pauli": "...", "probability": ...}, ...];
 * must cover exactly the terms of the target block.
 */
inline SamplingDistribution load_distribution(const std::string& path, const Hamiltonian& h) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open distribution file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("distribution file " + path + ": " + e.what());
  }
  if (!doc.is_array()) throw ParseError("distribution file: expected an array of records");
  std::map<std::string, double> by_pauli;
  for (const auto& rec : doc) {
    if (!rec.contains("pauli") || !rec.contains("probability"))
      throw ParseError("distribution file: records need pauli and probability");
    by_pauli[rec["pauli"].get<std::string>()] = rec["probability"].get<double>();
  }
  if (by_pauli.size() != h.size())
    throw ValidationError("distribution file: must cover exactly the target block's terms");
  std::vector<double> probs(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    auto it = by_pauli.find(h.term(j).op.to_string());
    if (it == by_pauli.end())
      throw ValidationError("distribution file: missing term \"" + h.term(j).op.to_string() +
                            "\"");
    probs[j] = it->second;
  }
  return SamplingDistribution::custom(std::move(probs));
}

/** Audit/debug export of a sampled circuit: records {step, pauli, tau, cost}. */
inline nlohmann::json circuit_to_json(const SampledCircuit& c, const Hamiltonian& h) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const auto& s = c.steps[k];
    arr.push_back({{"step", k},
                   {"pauli", h.term(s.term_index).op.to_string()},
                   {"tau", s.tau},
                   {"cost", s.cost}});
  }
  return arr;
}

}  // namespace driftsim
