// Copyright 2026 The capot Authors
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


#include "capot_cli/run.hpp"

#include <cmath>
#include <ostream>

#include "capot/dual.hpp"
#include "capot/error.hpp"
#include "capot/feasibility.hpp"
#include "capot/instances.hpp"
#include "capot/io.hpp"
#include "capot/limit.hpp"
#include "capot/primal.hpp"
#include "capot/verify.hpp"
#include "json.hpp"

namespace capot::cli {
namespace {

using Json = nlohmann::ordered_json;

Json to_json(std::span<const double> values) { return Json(std::vector<double>(values.begin(), values.end())); }

Json to_json(const DualPotentials& p) {
  return Json{{"u", to_json(p.u())}, {"v", to_json(p.v())}};
}

Json to_json(const Rectangle& r) { return Json{{"A", r.a}, {"B", r.b}}; }

Json to_json(const FeasibilityCertificate& cert) {
  Json j{{"feasible", cert.feasible}, {"flow_value", cert.flow_value}};
  if (cert.deficit) j["deficit"] = *cert.deficit;
  if (cert.rectangle) j["rectangle"] = to_json(*cert.rectangle);
  return j;
}

Json to_json(const CoercivityDiagnostics& d) {
  Json j{{"eta", d.eta},
         {"eps", d.eps},
         {"eps_prime", d.eps_prime},
         {"I", d.I_value},
         {"mean_uf", d.mean_uf},
         {"mean_vg", d.mean_vg},
         {"mean_sum", d.mean_sum},
         {"mean_lower", d.mean_lower},
         {"witness_available", d.witness_available}};
  j["mean_upper"] = d.mean_upper ? Json(*d.mean_upper) : Json(nullptr);
  j["surplus_fg_l1"] = d.surplus_fg_l1;
  j["oscillation"] = Json{
      {"u", Json{{"sigma", d.sigma_u}, {"lhs", d.osc_lhs_u}, {"rhs", d.osc_rhs_u}}},
      {"v", Json{{"sigma", d.sigma_v}, {"lhs", d.osc_lhs_v}, {"rhs", d.osc_rhs_v}}}};
  j["l1_u"] = d.l1_u;
  j["l1_v"] = d.l1_v;
  j["l1_bound"] = d.l1_bound ? Json(*d.l1_bound) : Json(nullptr);
  j["inequalities_hold"] = d.inequalities_hold();
  return j;
}

Json to_json(const SlacknessReport& r) {
  Json violations = Json::array();
  for (const SlacknessViolation& v : r.violations) {
    violations.push_back(Json{{"i", v.i},
                              {"j", v.j},
                              {"class", std::string(to_string(v.cell_class))},
                              {"reduced", v.reduced},
                              {"residual", v.residual}});
  }
  return Json{{"gap", r.gap},
              {"n_zero_ok", r.n_zero_ok},
              {"n_mid_ok", r.n_mid_ok},
              {"n_sat_ok", r.n_sat_ok},
              {"max_violation", r.max_violation},
              {"optimal", r.optimal},
              {"violations", std::move(violations)}};
}

void emit(const RunConfig& config, const Json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  out << text;
  if (config.report_path) write_text_file(*config.report_path, text);
}

int run_feasible(const RunConfig& config, const Problem& problem, std::ostream& out) {
  const FeasibilityCertificate cert = check_feasibility(problem, config.scale);
  Json report = to_json(cert);
  report["scale"] = config.scale;
  if (config.oracle) {
    const FeasibilityCertificate brute = brute_force_levin(problem, config.scale);
    report["oracle"] = Json{{"feasible", brute.feasible},
                            {"max_deficit", brute.max_deficit},
                            {"agrees", brute.feasible == cert.feasible}};
  }
  emit(config, report, out);
  return cert.feasible ? kExitOk : kExitInfeasible;
}

int report_infeasible(const RunConfig& config, const InfeasibleError& e, std::ostream& out) {
  Json report = to_json(e.certificate());
  report["error"] = e.what();
  emit(config, report, out);
  return kExitInfeasible;
}

int run_solve(const RunConfig& config, const Problem& problem, std::ostream& out) {
  const PrimalSolution sol = solve_primal(problem);
  const StructureReport structure = support_structure(sol.plan, problem);
  Json cells = Json::array();
  for (const Cell& c : sol.basis_cells) cells.push_back(Json::array({c.i, c.j}));
  Json report{{"value", sol.value},
              {"iterations", sol.iterations},
              {"counts", Json{{"zero", structure.count_zero},
                              {"saturated", structure.count_saturated},
                              {"fractional", structure.count_fractional}}},
              {"potentials", to_json(sol.potentials)},
              {"basis_cells", std::move(cells)}};
  int code = kExitOk;
  if (config.oracle) {
    const double exact = brute_force_primal(problem);
    const double diff = std::abs(exact - sol.value);
    const bool agrees = diff <= config.oracle_tol;
    report["oracle"] = Json{{"value", exact}, {"abs_diff", diff}, {"agrees", agrees}};
    if (!agrees) code = kExitNotReached;
  }
  if (config.plan_path) write_matrix_csv(*config.plan_path, sol.plan.values());
  emit(config, report, out);
  return code;
}

int run_dual(const RunConfig& config, const Problem& problem, std::ostream& out) {
  DualOptions options;
  options.max_iter = config.max_iter;
  options.tol = config.tol;
  options.step_floor = config.step_floor;
  if (config.target_from_primal) options.target_value = solve_primal(problem).value;
  const DualSolveResult result = minimize_dual(problem, options);
  Json report{{"value", result.value}};
  report["gap"] = result.gap ? Json(*result.gap) : Json(nullptr);
  report["target"] = options.target_value ? Json(*options.target_value) : Json(nullptr);
  report["iterations"] = result.iterations;
  report["converged"] = result.converged;
  report["attainment_hypothesis"] = result.attainment_hypothesis;
  report["potentials"] = to_json(result.potentials);
  report["coercivity"] = to_json(coercivity_diagnostics(result.potentials, problem));
  emit(config, report, out);
  return result.converged ? kExitOk : kExitNotReached;
}

int run_verify(const RunConfig& config, const Problem& problem, std::ostream& out) {
  if (!config.plan_path) throw InvalidArgument("verify needs --plan");
  if (!config.potentials_path) throw InvalidArgument("verify needs --potentials");
  const TransportPlan plan(read_matrix_csv(*config.plan_path));
  if (plan.rows() != problem.m() || plan.cols() != problem.n()) {
    throw DimensionError("plan is " + std::to_string(plan.rows()) + "x" +
                         std::to_string(plan.cols()) + ", problem is " +
                         std::to_string(problem.m()) + "x" + std::to_string(problem.n()));
  }
  const DualPotentials potentials = read_potentials_json(*config.potentials_path, problem);
  const SlacknessReport report = verify_slackness(plan, potentials, problem, config.tol);
  Json j = to_json(report);
  j["tol"] = config.tol;
  emit(config, j, out);
  return report.optimal ? kExitOk : kExitNotReached;
}

int run_sweep(const RunConfig& config, const Problem& problem, std::ostream& out) {
  const std::vector<double> ks =
      config.ks.empty() ? default_capacity_levels(problem.x(), problem.y()) : config.ks;
  SweepOptions options;
  options.dual_max_iter = config.max_iter;
  const SweepResult sweep = limit_sweep(problem.x(), problem.y(), problem.s(), ks, options);
  Json points = Json::array();
  bool all_converged = true;
  for (const SweepPoint& p : sweep.points) {
    all_converged = all_converged && p.dual_converged;
    points.push_back(Json{{"k", p.k},
                          {"primal_value", p.primal_value},
                          {"dual_value", p.dual_value},
                          {"dual_gap", p.dual_gap},
                          {"dual_iterations", p.dual_iterations},
                          {"dual_converged", p.dual_converged},
                          {"mean_uf", p.mean_uf},
                          {"mean_vg", p.mean_vg},
                          {"pos_part_mass", p.pos_part_mass},
                          {"plan_distance", p.plan_distance},
                          {"potential_l1", p.potential_l1},
                          {"mean_bound", p.mean_bound}});
  }
  const Json report{{"min_level", sweep.min_level},
                    {"eta", sweep.eta},
                    {"unconstrained_value", sweep.unconstrained_value},
                    {"decay_constant", sweep.decay_constant},
                    {"unconstrained_potentials", to_json(sweep.unconstrained_potentials)},
                    {"points", std::move(points)}};
  emit(config, report, out);
  return all_converged ? kExitOk : kExitNotReached;
}

int run_generate(const RunConfig& config, std::ostream& out) {
  const Problem problem = generate_instance(config.kind, config.m, config.n, config.seed);
  const std::string text = format_problem_json(problem);
  if (config.output_path) {
    write_text_file(*config.output_path, text);
  } else {
    out << text;
  }
  return kExitOk;
}

}  // namespace

void validate(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw InvalidArgument("--tol must be positive");
  if (config.max_iter == 0) throw InvalidArgument("--max-iter must be positive");
  if (!(config.scale >= 0.0)) throw InvalidArgument("--scale must be non-negative");
  if (!(config.oracle_tol > 0.0)) throw InvalidArgument("--oracle-tol must be positive");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.command == Command::kGenerate) return run_generate(config, out);
    const Problem problem = read_problem_json(config.input_path);
    switch (config.command) {
      case Command::kFeasible:
        return run_feasible(config, problem, out);
      case Command::kSolve:
        return run_solve(config, problem, out);
      case Command::kDual:
        return run_dual(config, problem, out);
      case Command::kVerify:
        return run_verify(config, problem, out);
      case Command::kSweep:
        return run_sweep(config, problem, out);
      case Command::kGenerate:
        break;
    }
    return kExitInputError;
  } catch (const InfeasibleError& e) {
    return report_infeasible(config, e, out);
  } catch (const IterationLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotReached;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace capot::cli
