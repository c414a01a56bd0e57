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

#include "mhsp/linear_model.hpp"

#include <cmath>
#include <string>

namespace mhsp {

int LinearModel::add_variable(const std::string& name, double lb, double ub,
                              VarType type) {
  if (name.empty()) throw StructuralError("variable name must not be empty");
  if (std::isnan(lb) || std::isnan(ub)) {
    throw ValidationError("variable '" + name + "' has NaN bound");
  }
  if (lb > ub) {
    throw ValidationError("variable '" + name + "' has lb > ub");
  }
  variables_.push_back(Variable{name, lb, ub, type});
  objective_.push_back(0.0);
  if (type == VarType::kBinary) {
    if (lb < 0.0 || ub > 1.0) {
      throw ValidationError("binary variable '" + name + "' has bounds outside [0,1]");
    }
    ++num_binaries_;
  }
  return static_cast<int>(variables_.size()) - 1;
}

int LinearModel::add_constraint(const std::string& name,
                                std::vector<LinTerm> terms, Sense sense,
                                double rhs) {
  for (const LinTerm& t : terms) check_var(t.var, "constraint term");
  constraints_.push_back(Constraint{name, std::move(terms), sense, rhs});
  return static_cast<int>(constraints_.size()) - 1;
}

void LinearModel::add_objective_term(int var, double coef) {
  check_var(var, "objective term");
  objective_[static_cast<std::size_t>(var)] += coef;
}

void LinearModel::add_indicator_link(int binary_var, int active_value,
                                     int forced_var) {
  check_var(binary_var, "indicator binary");
  check_var(forced_var, "indicator forced variable");
  if (active_value != 0 && active_value != 1) {
    throw ValidationError("indicator active value must be 0 or 1");
  }
  indicator_links_.push_back(IndicatorLink{binary_var, active_value, forced_var});
}

void LinearModel::set_bounds(int var, double lb, double ub) {
  check_var(var, "bound change");
  if (lb > ub) throw ValidationError("set_bounds with lb > ub");
  Variable& v = variables_[static_cast<std::size_t>(var)];
  v.lb = lb;
  v.ub = ub;
}

long long LinearModel::num_nonzeros() const {
  long long nnz = 0;
  for (const Constraint& c : constraints_) nnz += static_cast<long long>(c.terms.size());
  return nnz;
}

double LinearModel::objective_value(const std::vector<double>& x) const {
  double v = objective_offset_;
  for (std::size_t j = 0; j < objective_.size(); ++j) v += objective_[j] * x[j];
  return v;
}

double LinearModel::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const Variable& v = variables_[j];
    worst = std::max(worst, v.lb - x[j]);
    worst = std::max(worst, x[j] - v.ub);
  }
  for (const Constraint& c : constraints_) {
    double a = 0.0;
    for (const LinTerm& t : c.terms) a += t.coef * x[static_cast<std::size_t>(t.var)];
    switch (c.sense) {
      case Sense::kLe: worst = std::max(worst, a - c.rhs); break;
      case Sense::kGe: worst = std::max(worst, c.rhs - a); break;
      case Sense::kEq: worst = std::max(worst, std::abs(a - c.rhs)); break;
    }
  }
  return worst;
}

void LinearModel::validate() const {
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const Variable& v = variables_[j];
    if (v.lb > v.ub) throw ValidationError("variable '" + v.name + "' has lb > ub");
    if (v.type == VarType::kBinary && (v.lb < 0.0 || v.ub > 1.0)) {
      throw ValidationError("binary variable '" + v.name + "' escaped [0,1]");
    }
  }
  for (const Constraint& c : constraints_) {
    for (const LinTerm& t : c.terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw StructuralError("constraint '" + c.name + "' references unknown variable id " +
                              std::to_string(t.var));
      }
    }
  }
  for (const IndicatorLink& link : indicator_links_) {
    if (link.binary_var < 0 || link.binary_var >= num_variables() ||
        link.forced_var < 0 || link.forced_var >= num_variables()) {
      throw StructuralError("indicator link references unknown variable id");
    }
    const Variable& b = variables_[static_cast<std::size_t>(link.binary_var)];
    const Variable& f = variables_[static_cast<std::size_t>(link.forced_var)];
    if (b.type != VarType::kBinary) {
      throw ValidationError("indicator link binary side '" + b.name + "' is not binary");
    }
    if (f.type != VarType::kContinuous || f.lb < 0.0) {
      throw ValidationError("indicator link forced side '" + f.name +
                            "' must be a nonnegative continuous variable");
    }
  }
}

void LinearModel::check_var(int id, const char* what) const {
  if (id < 0 || id >= num_variables()) {
    throw StructuralError(std::string(what) + " references unknown variable id " +
                          std::to_string(id));
  }
}

}  // namespace mhsp
