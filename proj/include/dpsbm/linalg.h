// Copyright 2026 The DP-SBM Authors.
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

// Dense symmetric linear algebra backed by LAPACK.

#ifndef DPSBM_LINALG_H_
#define DPSBM_LINALG_H_

#include <cstddef>
#include <vector>

namespace dpsbm {

class Graph;

// Dense symmetric matrix in row-major storage (identical to column-major).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n, double fill = 0.0);

  // Validates symmetry (|m_ij - m_ji| < tol::kSymmetry) and finiteness, then
  // stores the exactly symmetrized average.
  static SymMatrix FromDense(int n, std::vector<double> data);
  static SymMatrix Identity(int n);
  static SymMatrix Ones(int n);
  static SymMatrix Diagonal(const std::vector<double>& d);
  static SymMatrix FromGraph(const Graph& g);
  // Outer product v v^T.
  static SymMatrix Outer(const std::vector<double>& v);

  int n() const { return n_; }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  // Writes (i, j) and (j, i).
  void Set(int i, int j, double v);

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  std::vector<double> Multiply(const std::vector<double>& x) const;
  double Frobenius() const;
  double Inner(const SymMatrix& o) const;
  double Trace() const;
  double Sum() const;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);

// All eigenvalues, ascending. Throws NonFinite.
std::vector<double> Eigenvalues(const SymMatrix& m);

// Largest absolute eigenvalue.
double SpectralNorm(const SymMatrix& m);

// The k smallest eigenvalues, ascending; 1 <= k <= n.
std::vector<double> SmallestEigenvalues(const SymMatrix& m, int k);

struct Eigenpairs {
  std::vector<double> values;   // Ascending.
  std::vector<double> vectors;  // Column t (length n) at offset t * n.
};

// The k largest eigenpairs, ascending by value.
Eigenpairs LargestEigenpairs(const SymMatrix& m, int k);

// True iff lambda_min(m) >= -tol.
bool IsPsd(const SymMatrix& m, double tol);

// Euclidean projection onto the PSD cone.
SymMatrix PsdProject(const SymMatrix& m);

// Reusable workspace for repeated PSD projections of one size. Chooses
// between a full divide-and-conquer decomposition and a partial one covering
// only the side of the spectrum that is expected to be smaller.
class PsdProjector {
 public:
  explicit PsdProjector(int n);

  // In place: data <- projection of data (row-major n x n, symmetric).
  void Project(double* data);

  int last_positive_count() const { return positive_; }

 private:
  void ProjectFull(double* data);
  void ProjectPartial(double* data, bool positive_side);
  // data <- sign * sum_t |w_t| v_t v_t^T (+ data when accumulate).
  void LowRankUpdate(double* data, const double* vectors,
                     const double* values, int count, bool accumulate,
                     double sign);

  int n_;
  int positive_ = -1;
  std::vector<double> work_matrix_;
  std::vector<double> values_;
  std::vector<double> vectors_;
  std::vector<double> scaled_;
  std::vector<int> support_;
};

}  // namespace dpsbm

#endif  // DPSBM_LINALG_H_
