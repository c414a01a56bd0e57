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

#ifndef MHSP_LINEAR_MODEL_HPP_
#define MHSP_LINEAR_MODEL_HPP_

#include <limits>
#include <string>
#include <vector>

#include "mhsp/errors.hpp"

namespace mhsp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType { kContinuous, kBinary };

enum class Sense { kLe, kEq, kGe };

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = kInf;
  VarType type = VarType::kContinuous;
};

struct LinTerm {
  int var = -1;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<LinTerm> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
};

// binary == active_value forces the continuous variable to zero.
struct IndicatorLink {
  int binary_var = -1;
  int active_value = 1;
  int forced_var = -1;
};

// Common substrate for the operational LPs, the deterministic equivalent and
// the surrogate MIP: variables with bounds and integrality marks, sparse
// constraint rows, a minimization objective and indicator links.
class LinearModel {
 public:
  int add_variable(const std::string& name, double lb, double ub,
                   VarType type = VarType::kContinuous);
  int add_constraint(const std::string& name, std::vector<LinTerm> terms,
                     Sense sense, double rhs);
  void add_objective_term(int var, double coef);
  void set_objective_offset(double offset) { objective_offset_ = offset; }
  void add_indicator_link(int binary_var, int active_value, int forced_var);

  void set_bounds(int var, double lb, double ub);
  void fix_variable(int var, double value) { set_bounds(var, value, value); }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_binaries() const { return num_binaries_; }
  long long num_nonzeros() const;

  const Variable& variable(int id) const { return variables_.at(static_cast<std::size_t>(id)); }
  const Constraint& constraint(int id) const { return constraints_.at(static_cast<std::size_t>(id)); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<IndicatorLink>& indicator_links() const { return indicator_links_; }
  const std::vector<double>& objective() const { return objective_; }
  double objective_offset() const { return objective_offset_; }
  double objective_coef(int var) const { return objective_.at(static_cast<std::size_t>(var)); }

  // Objective value of a full primal assignment (includes the offset).
  double objective_value(const std::vector<double>& x) const;

  // Largest constraint violation of a primal assignment (bounds included).
  double max_violation(const std::vector<double>& x) const;

  // Throws ValidationError / StructuralError when a model invariant fails:
  // term ids must exist, lb <= ub, binaries within [0,1], indicator links must
  // pair a binary with a nonnegative continuous variable.
  void validate() const;

 private:
  void check_var(int id, const char* what) const;

  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<double> objective_;  // dense by variable id
  double objective_offset_ = 0.0;
  std::vector<IndicatorLink> indicator_links_;
  int num_binaries_ = 0;
};

}  // namespace mhsp

#endif  // MHSP_LINEAR_MODEL_HPP_
