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

#include "sparse_lu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace mhsp::lp {

namespace {
constexpr double kSingularTol = 1e-11;
}

std::vector<int> SparseLu::factorize(int m, const BasisColumnSource& source,
                                     const std::vector<int>& basis) {
  m_ = m;
  l_start_.assign(1, 0);
  l_index_.clear();
  l_value_.clear();
  u_start_.assign(1, 0);
  u_index_.clear();
  u_value_.clear();
  u_diag_.assign(static_cast<std::size_t>(m), 0.0);
  prow_.assign(static_cast<std::size_t>(m), -1);
  pinv_.assign(static_cast<std::size_t>(m), -1);
  slot_pos_.assign(static_cast<std::size_t>(m), -1);
  work_.assign(static_cast<std::size_t>(m), 0.0);

  const SparseMatrix& a = *source.a;
  const int n_struct = source.n_struct;

  auto col_nnz = [&](int col_id) {
    if (col_id >= n_struct) return 1;
    return a.col_start[static_cast<std::size_t>(col_id) + 1] -
           a.col_start[static_cast<std::size_t>(col_id)];
  };

  // Static fill-reducing order: shortest columns first.
  std::vector<int> elimslot(static_cast<std::size_t>(m));
  std::iota(elimslot.begin(), elimslot.end(), 0);
  std::stable_sort(elimslot.begin(), elimslot.end(), [&](int s1, int s2) {
    return col_nnz(basis[static_cast<std::size_t>(s1)]) <
           col_nnz(basis[static_cast<std::size_t>(s2)]);
  });

  std::vector<double>& x = work_;
  std::vector<char> visited(static_cast<std::size_t>(m), 0);
  std::vector<int> pattern;       // topological order, original rows
  std::vector<int> dfs_stack;     // node
  std::vector<int> dfs_entry;     // next child index per node on the stack
  pattern.reserve(64);
  std::vector<int> deferred;      // elimination positions that were singular

  for (int j = 0; j < m; ++j) {
    const int slot = elimslot[static_cast<std::size_t>(j)];
    slot_pos_[static_cast<std::size_t>(slot)] = j;
    const int col_id = basis[static_cast<std::size_t>(slot)];

    // Scatter the basis column and compute its reach through L.
    pattern.clear();
    auto dfs_from = [&](int root) {
      if (visited[static_cast<std::size_t>(root)]) return;
      dfs_stack.assign(1, root);
      dfs_entry.assign(1, 0);
      visited[static_cast<std::size_t>(root)] = 1;
      while (!dfs_stack.empty()) {
        const int node = dfs_stack.back();
        const int p = pinv_[static_cast<std::size_t>(node)];
        bool descended = false;
        if (p >= 0) {
          int& next = dfs_entry.back();
          const int begin = l_start_[static_cast<std::size_t>(p)];
          const int end = l_start_[static_cast<std::size_t>(p) + 1];
          while (begin + next < end) {
            const int child = l_index_[static_cast<std::size_t>(begin + next)];
            ++next;
            if (!visited[static_cast<std::size_t>(child)]) {
              visited[static_cast<std::size_t>(child)] = 1;
              dfs_stack.push_back(child);
              dfs_entry.push_back(0);
              descended = true;
              break;
            }
          }
        }
        if (!descended && (p < 0 || dfs_entry.back() >= l_start_[static_cast<std::size_t>(p) + 1] -
                                         l_start_[static_cast<std::size_t>(p)])) {
          pattern.push_back(node);
          dfs_stack.pop_back();
          dfs_entry.pop_back();
        }
      }
    };

    if (col_id >= n_struct) {
      const int row = col_id - n_struct;
      x[static_cast<std::size_t>(row)] = -1.0;
      dfs_from(row);
    } else {
      for (int p = a.col_start[static_cast<std::size_t>(col_id)];
           p < a.col_start[static_cast<std::size_t>(col_id) + 1]; ++p) {
        x[static_cast<std::size_t>(a.row_index[static_cast<std::size_t>(p)])] =
            a.value[static_cast<std::size_t>(p)];
      }
      for (int p = a.col_start[static_cast<std::size_t>(col_id)];
           p < a.col_start[static_cast<std::size_t>(col_id) + 1]; ++p) {
        dfs_from(a.row_index[static_cast<std::size_t>(p)]);
      }
    }

    // pattern is in post-order; reversing it gives a topological order in
    // which every node is processed before the rows it updates.
    for (auto it = pattern.rbegin(); it != pattern.rend(); ++it) {
      const int node = *it;
      const int p = pinv_[static_cast<std::size_t>(node)];
      if (p < 0) continue;
      const double v = x[static_cast<std::size_t>(node)];
      if (v == 0.0) continue;
      for (int q = l_start_[static_cast<std::size_t>(p)];
           q < l_start_[static_cast<std::size_t>(p) + 1]; ++q) {
        x[static_cast<std::size_t>(l_index_[static_cast<std::size_t>(q)])] -=
            l_value_[static_cast<std::size_t>(q)] * v;
      }
    }

    // Partial pivoting over rows not yet pivotal.
    int pivot_row = -1;
    double pivot_abs = 0.0;
    for (const int node : pattern) {
      if (pinv_[static_cast<std::size_t>(node)] >= 0) continue;
      const double mag = std::abs(x[static_cast<std::size_t>(node)]);
      if (mag > pivot_abs || (mag == pivot_abs && pivot_row >= 0 && node < pivot_row)) {
        pivot_abs = mag;
        pivot_row = node;
      }
    }

    if (pivot_row < 0 || pivot_abs <= kSingularTol) {
      // Linearly dependent column: defer, the slot is repaired below.
      deferred.push_back(j);
      u_start_.push_back(static_cast<int>(u_index_.size()));
      l_start_.push_back(static_cast<int>(l_index_.size()));
    } else {
      const double piv = x[static_cast<std::size_t>(pivot_row)];
      for (const int node : pattern) {
        const double v = x[static_cast<std::size_t>(node)];
        const int p = pinv_[static_cast<std::size_t>(node)];
        if (p >= 0) {
          if (v != 0.0) {
            u_index_.push_back(p);
            u_value_.push_back(v);
          }
        } else if (node != pivot_row && v != 0.0) {
          l_index_.push_back(node);  // original row; remapped after the loop
          l_value_.push_back(v / piv);
        }
      }
      u_diag_[static_cast<std::size_t>(j)] = piv;
      pinv_[static_cast<std::size_t>(pivot_row)] = j;
      prow_[static_cast<std::size_t>(j)] = pivot_row;
      u_start_.push_back(static_cast<int>(u_index_.size()));
      l_start_.push_back(static_cast<int>(l_index_.size()));
    }

    for (const int node : pattern) {
      x[static_cast<std::size_t>(node)] = 0.0;
      visited[static_cast<std::size_t>(node)] = 0;
    }
  }

  // Repair deferred positions with logical columns (-e_row) on the rows that
  // never became pivotal. The factorization then exactly represents the basis
  // with those slots swapped to the matching logical variables.
  std::vector<int> repaired_slots;
  if (!deferred.empty()) {
    std::vector<int> free_rows;
    for (int r = 0; r < m; ++r) {
      if (pinv_[static_cast<std::size_t>(r)] < 0) free_rows.push_back(r);
    }
    for (std::size_t k = 0; k < deferred.size(); ++k) {
      const int j = deferred[k];
      const int row = free_rows[k];
      u_diag_[static_cast<std::size_t>(j)] = -1.0;
      pinv_[static_cast<std::size_t>(row)] = j;
      prow_[static_cast<std::size_t>(j)] = row;
      // Map elimination position back to the basis slot it serves.
      for (int slot = 0; slot < m; ++slot) {
        if (slot_pos_[static_cast<std::size_t>(slot)] == j) {
          repaired_slots.push_back(slot);
          break;
        }
      }
    }
  }

  // Remap L's row indices from original rows to pivot positions; every row is
  // pivotal now, and each entry lands strictly below its column's position.
  for (std::size_t p = 0; p < l_index_.size(); ++p) {
    l_index_[p] = pinv_[static_cast<std::size_t>(l_index_[p])];
  }

  return repaired_slots;
}

void SparseLu::ftran(std::vector<double>& x) const {
  std::vector<double>& w = work_;
  for (int j = 0; j < m_; ++j) {
    w[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(prow_[static_cast<std::size_t>(j)])];
  }
  for (int j = 0; j < m_; ++j) {
    const double v = w[static_cast<std::size_t>(j)];
    if (v == 0.0) continue;
    for (int p = l_start_[static_cast<std::size_t>(j)];
         p < l_start_[static_cast<std::size_t>(j) + 1]; ++p) {
      w[static_cast<std::size_t>(l_index_[static_cast<std::size_t>(p)])] -=
          l_value_[static_cast<std::size_t>(p)] * v;
    }
  }
  for (int j = m_ - 1; j >= 0; --j) {
    double v = w[static_cast<std::size_t>(j)];
    if (v == 0.0) continue;
    v /= u_diag_[static_cast<std::size_t>(j)];
    w[static_cast<std::size_t>(j)] = v;
    for (int p = u_start_[static_cast<std::size_t>(j)];
         p < u_start_[static_cast<std::size_t>(j) + 1]; ++p) {
      w[static_cast<std::size_t>(u_index_[static_cast<std::size_t>(p)])] -=
          u_value_[static_cast<std::size_t>(p)] * v;
    }
  }
  // Scatter from elimination positions to basis slots.
  for (int slot = 0; slot < m_; ++slot) {
    x[static_cast<std::size_t>(slot)] =
        w[static_cast<std::size_t>(slot_pos_[static_cast<std::size_t>(slot)])];
  }
}

void SparseLu::btran(std::vector<double>& y) const {
  std::vector<double>& w = work_;
  for (int slot = 0; slot < m_; ++slot) {
    w[static_cast<std::size_t>(slot_pos_[static_cast<std::size_t>(slot)])] =
        y[static_cast<std::size_t>(slot)];
  }
  // U' v = w, forward sweep: U' is lower triangular with u_diag on the
  // diagonal and U's column j supplying row j of U'.
  for (int j = 0; j < m_; ++j) {
    double s = w[static_cast<std::size_t>(j)];
    for (int p = u_start_[static_cast<std::size_t>(j)];
         p < u_start_[static_cast<std::size_t>(j) + 1]; ++p) {
      s -= u_value_[static_cast<std::size_t>(p)] *
           w[static_cast<std::size_t>(u_index_[static_cast<std::size_t>(p)])];
    }
    w[static_cast<std::size_t>(j)] = s / u_diag_[static_cast<std::size_t>(j)];
  }
  // L' x = v, backward sweep.
  for (int j = m_ - 1; j >= 0; --j) {
    double s = w[static_cast<std::size_t>(j)];
    for (int p = l_start_[static_cast<std::size_t>(j)];
         p < l_start_[static_cast<std::size_t>(j) + 1]; ++p) {
      s -= l_value_[static_cast<std::size_t>(p)] *
           w[static_cast<std::size_t>(l_index_[static_cast<std::size_t>(p)])];
    }
    w[static_cast<std::size_t>(j)] = s;
  }
  for (int j = 0; j < m_; ++j) {
    y[static_cast<std::size_t>(prow_[static_cast<std::size_t>(j)])] =
        w[static_cast<std::size_t>(j)];
  }
}

}  // namespace mhsp::lp
