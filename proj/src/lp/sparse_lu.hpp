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

#ifndef MHSP_SRC_LP_SPARSE_LU_HPP_
#define MHSP_SRC_LP_SPARSE_LU_HPP_

#include <vector>

namespace mhsp::lp {

// Compressed sparse column matrix, 0-based.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> col_start;  // size cols + 1
  std::vector<int> row_index;  // size nnz
  std::vector<double> value;   // size nnz

  int nnz() const { return static_cast<int>(row_index.size()); }
};

// Callback interface that hands basis columns to the factorization without
// materializing them: col_id < n_struct refers to a structural column of A,
// col_id >= n_struct is the logical column -e_{col_id - n_struct}.
struct BasisColumnSource {
  const SparseMatrix* a = nullptr;
  int n_struct = 0;
};

// Sparse LU of a basis matrix B (m x m) via left-looking elimination with
// partial pivoting (Gilbert-Peierls). Columns are eliminated in ascending
// nonzero-count order; after factorization both factors live in pivot
// position space, so solves are plain triangular sweeps.
class SparseLu {
 public:
  // basis[k] is the column id (see BasisColumnSource) at basis position k.
  // Returns the basis positions whose columns turned out linearly dependent;
  // those positions were repaired with identity columns and the caller must
  // patch the basis (swap in the matching logical variable) and refactorize.
  std::vector<int> factorize(int m, const BasisColumnSource& source,
                             const std::vector<int>& basis);

  // Solves B x = b. Input b is indexed by row; output x by basis position.
  void ftran(std::vector<double>& x) const;

  // Solves B' y = c. Input c is indexed by basis position; output y by row.
  void btran(std::vector<double>& y) const;

  long long nnz() const { return static_cast<long long>(l_value_.size() + u_value_.size()); }
  bool valid() const { return m_ > 0; }
  int dim() const { return m_; }

  // prow[k] = original row pivoted at position k.
  const std::vector<int>& pivot_rows() const { return prow_; }
  // position_of_basis_index[k] = elimination position of basis slot k.
  const std::vector<int>& slot_position() const { return slot_pos_; }

 private:
  int m_ = 0;
  // L: unit lower triangular, strictly-below-diagonal entries, CSC by
  // elimination position, row indices in position space.
  std::vector<int> l_start_, l_index_;
  std::vector<double> l_value_;
  // U: strictly-above-diagonal entries in position space plus diagonal.
  std::vector<int> u_start_, u_index_;
  std::vector<double> u_value_;
  std::vector<double> u_diag_;
  std::vector<int> prow_;      // position -> original row
  std::vector<int> pinv_;      // original row -> position
  std::vector<int> slot_pos_;  // basis slot -> elimination position
  mutable std::vector<double> work_;
};

}  // namespace mhsp::lp

#endif  // MHSP_SRC_LP_SPARSE_LU_HPP_
