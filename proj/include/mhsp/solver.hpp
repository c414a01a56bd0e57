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

#ifndef MHSP_SOLVER_HPP_
#define MHSP_SOLVER_HPP_

#include <string>
#include <vector>

#include "mhsp/linear_model.hpp"

namespace mhsp {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kGapReached,
  kIterationLimit,
};

std::string to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> primal;  // by variable id
  std::vector<double> duals;   // by constraint id; LP solves only
  double rel_gap = 0.0;        // MILP only
  double best_bound = 0.0;     // MILP only
  double wall_seconds = 0.0;
  long long simplex_iterations = 0;
  long long bb_nodes = 0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
  bool has_incumbent() const {
    return status == SolveStatus::kOptimal || status == SolveStatus::kGapReached;
  }
};

struct LpOptions {
  double feas_tol = 1e-7;   // primal feasibility on bounds and rows
  double dual_tol = 1e-7;   // reduced-cost optimality threshold
  long long max_iterations = -1;  // -1: 200000 + 40 * (rows + cols)
  int refactor_interval = 96;
  bool log = false;
};

struct MilpOptions {
  double rel_gap = 0.01;
  double int_tol = 1e-6;
  long long max_nodes = 20'000'000;
  LpOptions lp;
};

// Primal revised simplex on the bounded standard form. Requires a model with
// no binaries and no indicator links; returns primal and dual solutions.
SolveReport solve_lp(const LinearModel& model, const LpOptions& options = {});

// Branch and bound over the binary variables with best-bound node selection
// and most-fractional branching. Indicator links are enforced by bound fixing
// at the tree nodes. Stops once the relative gap is proven.
SolveReport solve_milp(const LinearModel& model, const MilpOptions& options = {});

inline SolveReport solve_milp(const LinearModel& model, double rel_gap) {
  MilpOptions opt;
  opt.rel_gap = rel_gap;
  return solve_milp(model, opt);
}

}  // namespace mhsp

#endif  // MHSP_SOLVER_HPP_
