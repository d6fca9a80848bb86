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

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "driftsim/driftsim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNotConverged = 3;

int cmd_run(const std::string& config_path, bool strict) {
  driftsim::ExperimentConfig cfg = driftsim::load_config(config_path);
  driftsim::ExperimentResult result = driftsim::run_experiment(cfg);
  driftsim::write_outputs(cfg, result);

  int flagged = 0;
  for (const auto& row : result.rows) {
    if (!row.diamond.converged) {
      ++flagged;
      std::cout << "WARNING: non-converged diamond estimate at b=" << row.b << " channel="
                << row.channel << " distribution=" << row.distribution << " repetition="
                << row.repetition << "\n";
    }
  }
  std::cout << result.rows.size() << " rows written to " << cfg.output_dir
            << "/results.csv (" << flagged << " non-converged)\n";
  return (strict && flagged > 0) ? kExitNotConverged : kExitOk;
}

int cmd_table2() {
  auto report = driftsim::table2_report();
  std::printf("%-36s %6s %12s %12s %6s\n", "quantity", "model", "computed", "reference",
              "match");
  bool all = true;
  for (const auto& e : report) {
    std::printf("%-36s %6d %12.5f %12g %6s\n", e.quantity.c_str(), e.model, e.computed,
                e.expected, e.pass ? "yes" : "NO");
    all = all && e.pass;
  }
  std::printf("table2: %s\n", all ? "all entries match" : "MISMATCH");
  return all ? kExitOk : kExitNotConverged;
}

int cmd_costs(const std::string& config_path, bool strict) {
  driftsim::ExperimentConfig cfg = driftsim::load_config(config_path);
  std::vector<driftsim::ChannelSpec> finite;
  for (const auto& ch : cfg.channels)
    if (ch.is_finite()) finite.push_back(ch);
  if (finite.empty())
    throw driftsim::ConfigError("costs: config has no finite (sampled) channels");
  cfg.channels = std::move(finite);
  driftsim::ExperimentResult result = driftsim::run_experiment(cfg);
  driftsim::write_outputs(cfg, result);

  for (const auto& h : result.histograms) {
    std::printf("b=%g  %s  %s  (E_p[C]=%.4f  E_qc[C]=%.4f)\n", h.b, h.channel.c_str(),
                h.distribution.c_str(), h.expected_cost_p, h.expected_cost_qc);
    for (const auto& bin : h.bins)
      std::printf("  cost %10.4f : %lld circuits  (per-rep %.2f +- %.2f)\n", bin.cost,
                  bin.count, bin.mean_count_per_repetition, bin.ci95_halfwidth);
  }

  int flagged = 0;
  for (const auto& row : result.rows)
    if (!row.diamond.converged) ++flagged;
  if (flagged > 0) std::cout << "WARNING: " << flagged << " non-converged diamond estimates\n";
  return (strict && flagged > 0) ? kExitNotConverged : kExitOk;
}

int cmd_bounds_plan(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw driftsim::ConfigError("cannot open config file: " + config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw driftsim::ConfigError(std::string("config parse error: ") + e.what());
  }

  const std::string model = j.value("model", std::string("lattice_0"));
  const double a = j.value("a", 1.0);
  const double b = j.value("b", 0.1);
  driftsim::Partition part = [&] {
    if (model == "lattice_0") return driftsim::build_lattice_model(a, b, 0);
    if (model == "lattice_1") return driftsim::build_lattice_model(a, b, 1);
    return driftsim::load_partition(model).partition;
  }();
  driftsim::CostTable costs = driftsim::default_cost_table();
  if (model != "lattice_0" && model != "lattice_1") {
    auto doc = driftsim::load_partition(model);
    if (!doc.costs) throw driftsim::ConfigError("bounds-plan: partition file has no cost map");
    costs = *doc.costs;
  }

  driftsim::BoundParams bp;
  bp.t = j.value("t", 0.05);
  bp.epsilon = j.value("epsilon", 1e-3);
  bp.delta = j.value("delta", 0.05);
  bp.kappa = j.value("kappa", 2.0);
  bp.alpha = j.value("alpha", 1.0);
  bp.n_qubits = part.n_qubits();
  bp.validate();

  const std::string mode = j.value("mode", std::string("composite"));
  const std::string dist = j.value("distribution", std::string("cost_weighted"));

  nlohmann::json out;
  out["model"] = model;
  out["mode"] = mode;
  out["distribution"] = dist;
  if (mode == "pure") {
    const driftsim::Hamiltonian full = part.full();
    auto q = dist == "standard" ? driftsim::SamplingDistribution::standard(full)
                                : driftsim::SamplingDistribution::cost_weighted(full, costs);
    auto prof = driftsim::weight_profile(full, q);
    auto plan = driftsim::plan_pure_qdrift(full.lambda(), bp, prof);
    out["N"] = plan.n_samples;
    out["N_real"] = plan.n_samples_real;
    out["M"] = plan.m_experiments;
    out["M_real"] = plan.m_experiments_real;
    out["expected_cost_per_sample"] = driftsim::expected_cost(full, q, costs);
  } else if (mode == "composite") {
    auto q = dist == "standard" ? driftsim::SamplingDistribution::standard(part.b())
                                : driftsim::SamplingDistribution::cost_weighted(part.b(), costs);
    auto prof = driftsim::weight_profile(part.b(), q);
    auto plan = driftsim::plan_composite(part, q, costs, bp, prof);
    out["N"] = plan.n_samples;
    out["N_real"] = plan.n_samples_real;
    out["M"] = plan.m_experiments;
    out["M_real"] = plan.m_experiments_real;
    out["r"] = plan.r_segments;
    out["r_real"] = plan.r_segments_real;
    out["expected_total_cost"] = plan.expected_total_cost;
    out["gamma_comm"] = driftsim::gamma_comm(part);
  } else {
    throw driftsim::ConfigError("bounds-plan: mode must be \"pure\" or \"composite\"");
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized product-formula simulator and resource planner"};
  app.require_subcommand(1);

  std::string run_config, costs_config, plan_config;
  bool run_strict = false, costs_strict = false;

  auto* run = app.add_subcommand("run", "Run an experiment grid from a JSON config");
  run->add_option("config", run_config, "Path to the experiment config")->required();
  run->add_flag("--strict", run_strict, "Exit 3 when any diamond estimate did not converge");

  auto* table2 = app.add_subcommand("table2", "Recompute the built-in model summary table");

  auto* costs = app.add_subcommand("costs", "Cost histograms for the sampled channels only");
  costs->add_option("config", costs_config, "Path to the experiment config")->required();
  costs->add_flag("--strict", costs_strict, "Exit 3 when any diamond estimate did not converge");

  auto* plan = app.add_subcommand("bounds-plan", "Compute a resource plan from a JSON config");
  plan->add_option("config", plan_config, "Path to the plan config")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_config, run_strict);
    if (table2->parsed()) return cmd_table2();
    if (costs->parsed()) return cmd_costs(costs_config, costs_strict);
    if (plan->parsed()) return cmd_bounds_plan(plan_config);
  } catch (const driftsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const driftsim::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const driftsim::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const driftsim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
