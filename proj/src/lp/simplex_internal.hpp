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

#ifndef MHSP_SRC_LP_SIMPLEX_INTERNAL_HPP_
#define MHSP_SRC_LP_SIMPLEX_INTERNAL_HPP_

#include <vector>

#include "mhsp/linear_model.hpp"
#include "mhsp/solver.hpp"
#include "sparse_lu.hpp"

namespace mhsp::lp {

// Bounded standard form: min c'x over  A x - s = 0,  lb <= (x, s) <= ub,
// where s_i carries the row activity and its bounds encode sense and rhs.
// Columns 0..n-1 are structural, n..n+m-1 logical.
struct ComputationalForm {
  int m = 0;
  int n = 0;
  SparseMatrix cols;         // structural columns
  std::vector<double> cost;  // size n
  double offset = 0.0;
  std::vector<double> lb;    // size n + m
  std::vector<double> ub;    // size n + m

  static ComputationalForm build(const LinearModel& model);
};

struct SimplexResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;        // includes the offset
  std::vector<double> x;         // size n + m
  std::vector<double> y;         // duals by row, size m
  long long iterations = 0;
};

// Solves the form with the given working bounds (same layout as form.lb/ub;
// branch and bound passes tightened copies). Two-phase primal simplex with a
// sparse LU basis, product-form updates between refactorizations, Dantzig
// pricing and a Bland fallback after degenerate stalls.
SimplexResult simplex_solve(const ComputationalForm& form,
                            const std::vector<double>& lb,
                            const std::vector<double>& ub,
                            const LpOptions& options);

}  // namespace mhsp::lp

#endif  // MHSP_SRC_LP_SIMPLEX_INTERNAL_HPP_
