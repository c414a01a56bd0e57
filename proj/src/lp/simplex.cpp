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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "mhsp/util/log.hpp"
#include "simplex_internal.hpp"

namespace mhsp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kGapReached: return "gap-reached";
    case SolveStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

}  // namespace mhsp

namespace mhsp::lp {

ComputationalForm ComputationalForm::build(const LinearModel& model) {
  ComputationalForm f;
  f.n = model.num_variables();
  f.m = model.num_constraints();
  f.offset = model.objective_offset();
  f.cost = model.objective();

  // Constraint rows arrive row-wise; transpose into CSC.
  std::vector<int> count(static_cast<std::size_t>(f.n), 0);
  for (const Constraint& c : model.constraints()) {
    for (const LinTerm& t : c.terms) ++count[static_cast<std::size_t>(t.var)];
  }
  f.cols.rows = f.m;
  f.cols.cols = f.n;
  f.cols.col_start.assign(static_cast<std::size_t>(f.n) + 1, 0);
  for (int j = 0; j < f.n; ++j) {
    f.cols.col_start[static_cast<std::size_t>(j) + 1] =
        f.cols.col_start[static_cast<std::size_t>(j)] + count[static_cast<std::size_t>(j)];
  }
  f.cols.row_index.assign(static_cast<std::size_t>(f.cols.col_start.back()), 0);
  f.cols.value.assign(static_cast<std::size_t>(f.cols.col_start.back()), 0.0);
  std::vector<int> fill(f.cols.col_start.begin(), f.cols.col_start.end() - 1);
  for (int i = 0; i < f.m; ++i) {
    for (const LinTerm& t : model.constraint(i).terms) {
      const int p = fill[static_cast<std::size_t>(t.var)]++;
      f.cols.row_index[static_cast<std::size_t>(p)] = i;
      f.cols.value[static_cast<std::size_t>(p)] = t.coef;
    }
  }

  f.lb.assign(static_cast<std::size_t>(f.n + f.m), 0.0);
  f.ub.assign(static_cast<std::size_t>(f.n + f.m), 0.0);
  for (int j = 0; j < f.n; ++j) {
    f.lb[static_cast<std::size_t>(j)] = model.variable(j).lb;
    f.ub[static_cast<std::size_t>(j)] = model.variable(j).ub;
  }
  for (int i = 0; i < f.m; ++i) {
    const Constraint& c = model.constraint(i);
    double lo = -kInf, hi = kInf;
    switch (c.sense) {
      case Sense::kLe: hi = c.rhs; break;
      case Sense::kGe: lo = c.rhs; break;
      case Sense::kEq: lo = hi = c.rhs; break;
    }
    f.lb[static_cast<std::size_t>(f.n + i)] = lo;
    f.ub[static_cast<std::size_t>(f.n + i)] = hi;
  }
  return f;
}

namespace {

enum class VStat : char { kAtLower, kAtUpper, kFree, kBasic };

struct Eta {
  int slot = -1;
  double pivot = 0.0;
  std::vector<std::pair<int, double>> terms;  // excludes the pivot slot
};

class Simplex {
 public:
  Simplex(const ComputationalForm& form, const std::vector<double>& lb,
          const std::vector<double>& ub, const LpOptions& opt)
      : f_(form), lb_(lb), ub_(ub), opt_(opt), m_(form.m), n_(form.n),
        total_(form.n + form.m) {
    source_.a = &f_.cols;
    source_.n_struct = n_;
  }

  SimplexResult run() {
    init_basis();
    refactorize();

    const long long max_iters =
        opt_.max_iterations > 0 ? opt_.max_iterations
                                : 200000 + 40LL * static_cast<long long>(total_);
    SimplexResult res;
    res.status = SolveStatus::kIterationLimit;

    bool phase_one = true;
    long long stall = 0;
    bland_ = false;

    while (iters_ < max_iters) {
      if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
        refactorize();
      }
      if (phase_one && max_infeasibility() <= opt_.feas_tol) {
        phase_one = false;
        stall = 0;
        bland_ = false;
      }

      set_phase_costs(phase_one);
      compute_duals();

      const auto [q, dir] = price();
      if (q < 0) {
        if (phase_one) {
          res.status = SolveStatus::kInfeasible;
        } else {
          res.status = SolveStatus::kOptimal;
        }
        break;
      }

      column(q, w_rhs_);
      ftran_vec(w_rhs_, w_);

      const Ratio r = ratio_test(q, dir, phase_one);
      if (r.kind == Ratio::kUnbounded) {
        if (phase_one) {
          // A descent direction with no blocking event cannot happen while
          // infeasibility is positive; treat as numerical trouble.
          refactorize();
          ++stall;
          if (stall > 64) {
            res.status = SolveStatus::kIterationLimit;
            break;
          }
          continue;
        }
        res.status = SolveStatus::kUnbounded;
        break;
      }
      if (r.kind == Ratio::kRetry) {
        refactorize();
        continue;
      }

      apply_step(q, dir, r);
      ++iters_;

      if (r.theta <= 1e-12) {
        ++stall;
        if (stall >= 1000) bland_ = true;
      } else {
        stall = 0;
        if (bland_) bland_ = false;
      }
      if (opt_.log && (iters_ & 0x3ff) == 0) {
        log::kv(2, "simplex", {{"iter", log::num(iters_)},
                               {"phase", log::num(static_cast<long long>(phase_one ? 1 : 2))},
                               {"infeas", log::num(total_infeasibility())},
                               {"obj", log::num(current_objective())}});
      }
    }

    res.iterations = iters_;
    if (res.status == SolveStatus::kOptimal ||
        res.status == SolveStatus::kIterationLimit ||
        res.status == SolveStatus::kUnbounded) {
      res.x.assign(xval_.begin(), xval_.end());
      res.objective = current_objective() + f_.offset;
    }
    if (res.status == SolveStatus::kOptimal) {
      set_phase_costs(false);
      compute_duals();
      res.y.assign(y_.begin(), y_.end());
    }
    return res;
  }

 private:
  struct Ratio {
    enum Kind { kStep, kBoundFlip, kUnbounded, kRetry } kind = kUnbounded;
    double theta = 0.0;
    int leaving_slot = -1;
    bool leaving_to_upper = false;
  };

  void init_basis() {
    vstat_.assign(static_cast<std::size_t>(total_), VStat::kAtLower);
    xval_.assign(static_cast<std::size_t>(total_), 0.0);
    basis_.resize(static_cast<std::size_t>(m_));
    in_basis_.assign(static_cast<std::size_t>(total_), -1);
    for (int j = 0; j < n_; ++j) set_nonbasic_start(j);
    for (int i = 0; i < m_; ++i) {
      const int col = n_ + i;
      basis_[static_cast<std::size_t>(i)] = col;
      in_basis_[static_cast<std::size_t>(col)] = i;
      vstat_[static_cast<std::size_t>(col)] = VStat::kBasic;
    }
    w_.assign(static_cast<std::size_t>(m_), 0.0);
    w_rhs_.assign(static_cast<std::size_t>(m_), 0.0);
    y_.assign(static_cast<std::size_t>(m_), 0.0);
    yslot_.assign(static_cast<std::size_t>(m_), 0.0);
    cb_.assign(static_cast<std::size_t>(m_), 0.0);
    cost_.assign(static_cast<std::size_t>(total_), 0.0);
  }

  void set_nonbasic_start(int j) {
    const double lo = lb_[static_cast<std::size_t>(j)];
    const double hi = ub_[static_cast<std::size_t>(j)];
    if (std::isfinite(lo) && (std::abs(lo) <= std::abs(hi) || !std::isfinite(hi))) {
      vstat_[static_cast<std::size_t>(j)] = VStat::kAtLower;
      xval_[static_cast<std::size_t>(j)] = lo;
    } else if (std::isfinite(hi)) {
      vstat_[static_cast<std::size_t>(j)] = VStat::kAtUpper;
      xval_[static_cast<std::size_t>(j)] = hi;
    } else {
      vstat_[static_cast<std::size_t>(j)] = VStat::kFree;
      xval_[static_cast<std::size_t>(j)] = 0.0;
    }
  }

  // Column col_id of [A | -I] scattered into out (size m).
  void column(int col_id, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    if (col_id >= n_) {
      out[static_cast<std::size_t>(col_id - n_)] = -1.0;
      return;
    }
    for (int p = f_.cols.col_start[static_cast<std::size_t>(col_id)];
         p < f_.cols.col_start[static_cast<std::size_t>(col_id) + 1]; ++p) {
      out[static_cast<std::size_t>(f_.cols.row_index[static_cast<std::size_t>(p)])] =
          f_.cols.value[static_cast<std::size_t>(p)];
    }
  }

  void refactorize() {
    for (;;) {
      const std::vector<int> repaired = lu_.factorize(m_, source_, basis_);
      etas_.clear();
      if (repaired.empty()) break;
      // Dependent columns were replaced by logical columns inside the
      // factorization; mirror that repair in the basis bookkeeping.
      for (const int slot : repaired) {
        const int out_col = basis_[static_cast<std::size_t>(slot)];
        const int row = lu_.pivot_rows()[static_cast<std::size_t>(
            lu_.slot_position()[static_cast<std::size_t>(slot)])];
        const int in_col = n_ + row;
        if (in_basis_[static_cast<std::size_t>(in_col)] >= 0) {
          throw Error("basis repair collision; model is numerically degenerate");
        }
        basis_[static_cast<std::size_t>(slot)] = in_col;
        in_basis_[static_cast<std::size_t>(in_col)] = slot;
        in_basis_[static_cast<std::size_t>(out_col)] = -1;
        vstat_[static_cast<std::size_t>(in_col)] = VStat::kBasic;
        set_nonbasic_start(out_col);
      }
      // Re-run with the repaired basis so the factors match it exactly.
    }
    compute_basics();
  }

  void compute_basics() {
    // B x_B = -N x_N; nonbasics sit exactly on their bounds.
    std::fill(w_rhs_.begin(), w_rhs_.end(), 0.0);
    for (int j = 0; j < n_; ++j) {
      if (vstat_[static_cast<std::size_t>(j)] == VStat::kBasic) continue;
      const double v = xval_[static_cast<std::size_t>(j)];
      if (v == 0.0) continue;
      for (int p = f_.cols.col_start[static_cast<std::size_t>(j)];
           p < f_.cols.col_start[static_cast<std::size_t>(j) + 1]; ++p) {
        w_rhs_[static_cast<std::size_t>(f_.cols.row_index[static_cast<std::size_t>(p)])] -=
            f_.cols.value[static_cast<std::size_t>(p)] * v;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int col = n_ + i;
      if (vstat_[static_cast<std::size_t>(col)] == VStat::kBasic) continue;
      w_rhs_[static_cast<std::size_t>(i)] += xval_[static_cast<std::size_t>(col)];
    }
    ftran_vec(w_rhs_, w_);
    for (int k = 0; k < m_; ++k) {
      xval_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(k)])] =
          w_[static_cast<std::size_t>(k)];
    }
  }

  // in: by row; out: by basis slot. `in` is clobbered.
  void ftran_vec(std::vector<double>& in, std::vector<double>& out) {
    lu_.ftran(in);
    out.swap(in);
    for (const Eta& e : etas_) {
      double t = out[static_cast<std::size_t>(e.slot)];
      if (t == 0.0) {
        continue;
      }
      t /= e.pivot;
      out[static_cast<std::size_t>(e.slot)] = t;
      for (const auto& [slot, v] : e.terms) {
        out[static_cast<std::size_t>(slot)] -= v * t;
      }
    }
  }

  // in: by basis slot; out: by row. `in` is clobbered.
  void btran_vec(std::vector<double>& in, std::vector<double>& out) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = in[static_cast<std::size_t>(it->slot)];
      for (const auto& [slot, v] : it->terms) {
        s -= v * in[static_cast<std::size_t>(slot)];
      }
      in[static_cast<std::size_t>(it->slot)] = s / it->pivot;
    }
    lu_.btran(in);
    out.swap(in);
  }

  double total_infeasibility() const {
    double s = 0.0;
    for (int k = 0; k < m_; ++k) {
      const int col = basis_[static_cast<std::size_t>(k)];
      const double v = xval_[static_cast<std::size_t>(col)];
      const double lo = lb_[static_cast<std::size_t>(col)];
      const double hi = ub_[static_cast<std::size_t>(col)];
      if (v < lo) s += lo - v;
      if (v > hi) s += v - hi;
    }
    return s;
  }

  void set_phase_costs(bool phase_one) {
    if (!phase_one) {
      std::memcpy(cost_.data(), f_.cost.data(), sizeof(double) * static_cast<std::size_t>(n_));
      std::memset(cost_.data() + n_, 0, sizeof(double) * static_cast<std::size_t>(m_));
      return;
    }
    std::memset(cost_.data(), 0, sizeof(double) * static_cast<std::size_t>(total_));
    for (int k = 0; k < m_; ++k) {
      const int col = basis_[static_cast<std::size_t>(k)];
      const double v = xval_[static_cast<std::size_t>(col)];
      if (v < lb_[static_cast<std::size_t>(col)] - opt_.feas_tol) {
        cost_[static_cast<std::size_t>(col)] = -1.0;
      } else if (v > ub_[static_cast<std::size_t>(col)] + opt_.feas_tol) {
        cost_[static_cast<std::size_t>(col)] = 1.0;
      }
    }
  }

  void compute_duals() {
    for (int k = 0; k < m_; ++k) {
      cb_[static_cast<std::size_t>(k)] =
          cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(k)])];
    }
    yslot_ = cb_;
    btran_vec(yslot_, y_);
  }

  double reduced_cost(int j) const {
    if (j >= n_) return cost_[static_cast<std::size_t>(j)] + y_[static_cast<std::size_t>(j - n_)];
    double d = cost_[static_cast<std::size_t>(j)];
    for (int p = f_.cols.col_start[static_cast<std::size_t>(j)];
         p < f_.cols.col_start[static_cast<std::size_t>(j) + 1]; ++p) {
      d -= f_.cols.value[static_cast<std::size_t>(p)] *
           y_[static_cast<std::size_t>(f_.cols.row_index[static_cast<std::size_t>(p)])];
    }
    return d;
  }

  // Returns the entering column and its direction (+1 increase, -1 decrease),
  // or {-1, 0} at phase optimality.
  std::pair<int, int> price() {
    int best = -1;
    int best_dir = 0;
    double best_merit = -opt_.dual_tol;
    for (int j = 0; j < total_; ++j) {
      const VStat st = vstat_[static_cast<std::size_t>(j)];
      if (st == VStat::kBasic) continue;
      if (lb_[static_cast<std::size_t>(j)] == ub_[static_cast<std::size_t>(j)]) continue;
      const double d = reduced_cost(j);
      double merit = 0.0;
      int dir = 0;
      if (st == VStat::kAtLower) {
        if (d < -opt_.dual_tol) { merit = d; dir = 1; }
      } else if (st == VStat::kAtUpper) {
        if (d > opt_.dual_tol) { merit = -d; dir = -1; }
      } else {  // free
        if (d < -opt_.dual_tol) { merit = d; dir = 1; }
        else if (d > opt_.dual_tol) { merit = -d; dir = -1; }
      }
      if (dir == 0) continue;
      if (bland_) return {j, dir};
      if (merit < best_merit) {
        best_merit = merit;
        best = j;
        best_dir = dir;
      }
    }
    return {best, best_dir};
  }

  Ratio ratio_test(int q, int dir, bool phase_one) {
    Ratio r;
    const double lo_q = lb_[static_cast<std::size_t>(q)];
    const double hi_q = ub_[static_cast<std::size_t>(q)];
    double theta_best = kInf;
    if (std::isfinite(lo_q) && std::isfinite(hi_q)) theta_best = hi_q - lo_q;
    int best_slot = -1;
    bool best_to_upper = false;
    double best_pivot_mag = 0.0;
    constexpr double kPivotTol = 1e-9;

    for (int k = 0; k < m_; ++k) {
      const double wk = w_[static_cast<std::size_t>(k)];
      if (std::abs(wk) <= kPivotTol) continue;
      const int col = basis_[static_cast<std::size_t>(k)];
      const double delta = -static_cast<double>(dir) * wk;  // d x_B(k) / d theta
      const double v = xval_[static_cast<std::size_t>(col)];
      const double lo = lb_[static_cast<std::size_t>(col)];
      const double hi = ub_[static_cast<std::size_t>(col)];

      double theta_k = kInf;
      bool to_upper = false;
      if (phase_one && v < lo - opt_.feas_tol) {
        // Infeasible below: blocks only when climbing back to its lower bound.
        if (delta > 0.0) { theta_k = (lo - v) / delta; to_upper = false; }
      } else if (phase_one && v > hi + opt_.feas_tol) {
        if (delta < 0.0) { theta_k = (v - hi) / (-delta); to_upper = true; }
      } else if (delta < 0.0) {
        if (std::isfinite(lo)) { theta_k = (v - lo) / (-delta); to_upper = false; }
      } else {
        if (std::isfinite(hi)) { theta_k = (hi - v) / delta; to_upper = true; }
      }
      if (!std::isfinite(theta_k)) continue;
      theta_k = std::max(theta_k, 0.0);

      const bool wins =
          theta_k < theta_best - 1e-12 ||
          (theta_k <= theta_best + 1e-12 && best_slot >= 0 &&
           (bland_ ? col < basis_[static_cast<std::size_t>(best_slot)]
                   : std::abs(wk) > best_pivot_mag)) ||
          (theta_k <= theta_best + 1e-12 && best_slot < 0 && theta_k <= theta_best);
      if (wins) {
        theta_best = std::min(theta_best, theta_k);
        best_slot = k;
        best_to_upper = to_upper;
        best_pivot_mag = std::abs(wk);
      }
    }

    if (!std::isfinite(theta_best)) {
      r.kind = Ratio::kUnbounded;
      return r;
    }
    if (best_slot < 0) {
      r.kind = Ratio::kBoundFlip;
      r.theta = theta_best;
      return r;
    }
    // Tiny pivots right before a long eta file are untrustworthy; recompute.
    if (best_pivot_mag < 1e-8 && !etas_.empty()) {
      r.kind = Ratio::kRetry;
      return r;
    }
    r.kind = Ratio::kStep;
    r.theta = theta_best;
    r.leaving_slot = best_slot;
    r.leaving_to_upper = best_to_upper;
    return r;
  }

  void apply_step(int q, int dir, const Ratio& r) {
    const double step = static_cast<double>(dir) * r.theta;
    if (r.theta != 0.0) {
      for (int k = 0; k < m_; ++k) {
        const double wk = w_[static_cast<std::size_t>(k)];
        if (wk == 0.0) continue;
        xval_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(k)])] -= step * wk;
      }
    }

    if (r.kind == Ratio::kBoundFlip) {
      const std::size_t jq = static_cast<std::size_t>(q);
      if (vstat_[jq] == VStat::kAtLower) {
        vstat_[jq] = VStat::kAtUpper;
        xval_[jq] = ub_[jq];
      } else {
        vstat_[jq] = VStat::kAtLower;
        xval_[jq] = lb_[jq];
      }
      return;
    }

    const int slot = r.leaving_slot;
    const int leaving = basis_[static_cast<std::size_t>(slot)];
    const double wr = w_[static_cast<std::size_t>(slot)];

    // Entering value, then swap the basis slot.
    xval_[static_cast<std::size_t>(q)] =
        (vstat_[static_cast<std::size_t>(q)] == VStat::kAtUpper
             ? ub_[static_cast<std::size_t>(q)]
             : (vstat_[static_cast<std::size_t>(q)] == VStat::kAtLower
                    ? lb_[static_cast<std::size_t>(q)]
                    : xval_[static_cast<std::size_t>(q)])) +
        step;
    vstat_[static_cast<std::size_t>(leaving)] =
        r.leaving_to_upper ? VStat::kAtUpper : VStat::kAtLower;
    xval_[static_cast<std::size_t>(leaving)] =
        r.leaving_to_upper ? ub_[static_cast<std::size_t>(leaving)]
                           : lb_[static_cast<std::size_t>(leaving)];
    basis_[static_cast<std::size_t>(slot)] = q;
    in_basis_[static_cast<std::size_t>(q)] = slot;
    in_basis_[static_cast<std::size_t>(leaving)] = -1;
    vstat_[static_cast<std::size_t>(q)] = VStat::kBasic;

    Eta e;
    e.slot = slot;
    e.pivot = wr;
    e.terms.reserve(16);
    for (int k = 0; k < m_; ++k) {
      if (k == slot) continue;
      const double wk = w_[static_cast<std::size_t>(k)];
      if (wk != 0.0) e.terms.emplace_back(k, wk);
    }
    etas_.push_back(std::move(e));
  }

  double current_objective() const {
    double v = 0.0;
    for (int j = 0; j < n_; ++j) {
      v += f_.cost[static_cast<std::size_t>(j)] * xval_[static_cast<std::size_t>(j)];
    }
    return v;
  }

  const ComputationalForm& f_;
  const std::vector<double>& lb_;
  const std::vector<double>& ub_;
  LpOptions opt_;
  int m_, n_, total_;
  BasisColumnSource source_;

  SparseLu lu_;
  std::vector<Eta> etas_;
  std::vector<int> basis_;
  std::vector<int> in_basis_;
  std::vector<VStat> vstat_;
  std::vector<double> xval_;
  std::vector<double> w_, w_rhs_, y_, yslot_, cb_, cost_;
  bool bland_ = false;
  long long iters_ = 0;
};

}  // namespace

SimplexResult simplex_solve(const ComputationalForm& form,
                            const std::vector<double>& lb,
                            const std::vector<double>& ub,
                            const LpOptions& options) {
  Simplex s(form, lb, ub, options);
  return s.run();
}

}  // namespace mhsp::lp

namespace mhsp {

SolveReport solve_lp(const LinearModel& model, const LpOptions& options) {
  model.validate();
  if (model.num_binaries() > 0 || !model.indicator_links().empty()) {
    throw StructuralError("solve_lp requires a model without binaries and indicator links");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const lp::ComputationalForm form = lp::ComputationalForm::build(model);
  const lp::SimplexResult r = lp::simplex_solve(form, form.lb, form.ub, options);

  SolveReport rep;
  rep.status = r.status;
  rep.simplex_iterations = r.iterations;
  if (!r.x.empty()) {
    rep.primal.assign(r.x.begin(), r.x.begin() + model.num_variables());
    rep.objective = r.objective;
  }
  rep.duals = r.y;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (options.log) {
    log::kv(1, "solve_lp", {{"status", to_string(rep.status)},
                            {"obj", log::num(rep.objective)},
                            {"iter", log::num(rep.simplex_iterations)},
                            {"seconds", log::num(rep.wall_seconds)}});
  }
  return rep;
}

}  // namespace mhsp
