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

#include "dpsbm/linalg.h"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dpsbm/error.h"
#include "dpsbm/graph.h"
#include "dpsbm/simd.h"
#include "dpsbm/tolerances.h"

namespace dpsbm {
namespace {

void CheckFinite(const double* data, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i) {
    if (!std::isfinite(data[i])) {
      throw Error(ErrorKind::kNonFinite, "matrix has a non-finite entry");
    }
  }
}

void CheckLapack(lapack_int info, const char* routine) {
  if (info != 0) {
    throw Error(ErrorKind::kNonFinite, std::string(routine) +
                                           " failed with info=" +
                                           std::to_string(info));
  }
}

// Eigenpairs with index range [il, iu] (1-based, ascending).
void IndexRange(const SymMatrix& m, int il, int iu, bool vectors,
                std::vector<double>* values, std::vector<double>* vecs) {
  CheckFinite(m.data(), m.size());
  const int n = m.n();
  std::vector<double> a(m.data(), m.data() + m.size());
  const int count = iu - il + 1;
  values->assign(n, 0.0);
  std::vector<double> z;
  if (vectors) z.assign(static_cast<std::size_t>(n) * count, 0.0);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'I', 'U', n, a.data(), n, 0.0,
      0.0, il, iu, 0.0, &found, values->data(), vectors ? z.data() : nullptr,
      n, isuppz.data());
  if (info > 0) {
    // dsyevr can fail to converge on tightly clustered spectra; the
    // divide-and-conquer driver is slower but robust there.
    std::copy(m.data(), m.data() + m.size(), a.begin());
    std::vector<double> all(n);
    CheckLapack(LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'U', n,
                               a.data(), n, all.data()),
                "dsyevd");
    values->assign(all.begin() + (il - 1), all.begin() + iu);
    if (vectors) {
      vecs->assign(a.begin() + static_cast<std::size_t>(il - 1) * n,
                   a.begin() + static_cast<std::size_t>(iu) * n);
    }
    return;
  }
  CheckLapack(info, "dsyevr");
  values->resize(found);
  if (vectors) *vecs = std::move(z);
}

}  // namespace

SymMatrix::SymMatrix(int n, double fill)
    : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {
  if (n < 0) throw Error(ErrorKind::kInvalidParams, "negative dimension");
}

SymMatrix SymMatrix::FromDense(int n, std::vector<double> data) {
  if (n < 0 || data.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorKind::kShapeMismatch, "dense data has wrong size");
  }
  CheckFinite(data.data(), data.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double& u = data[static_cast<std::size_t>(i) * n + j];
      double& l = data[static_cast<std::size_t>(j) * n + i];
      if (std::abs(u - l) >= tol::kSymmetry) {
        throw Error(ErrorKind::kInvalidParams, "matrix is not symmetric");
      }
      u = l = 0.5 * (u + l);
    }
  }
  SymMatrix m;
  m.n_ = n;
  m.data_ = std::move(data);
  return m;
}

SymMatrix SymMatrix::Identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i) * n + i] = 1;
  return m;
}

SymMatrix SymMatrix::Ones(int n) { return SymMatrix(n, 1.0); }

SymMatrix SymMatrix::Diagonal(const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i) * n + i] = d[i];
  return m;
}

SymMatrix SymMatrix::FromGraph(const Graph& g) {
  SymMatrix m;
  m.n_ = g.n();
  m.data_ = g.Dense();
  return m;
}

SymMatrix SymMatrix::Outer(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.data_[static_cast<std::size_t>(i) * n + j] = v[i] * v[j];
    }
  }
  return m;
}

void SymMatrix::Set(int i, int j, double v) {
  data_[static_cast<std::size_t>(i) * n_ + j] = v;
  data_[static_cast<std::size_t>(j) * n_ + i] = v;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (o.n_ != n_) throw Error(ErrorKind::kShapeMismatch, "matrix sizes differ");
  simd::Active().axpy(1.0, o.data(), data(), size());
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (o.n_ != n_) throw Error(ErrorKind::kShapeMismatch, "matrix sizes differ");
  simd::Active().axpy(-1.0, o.data(), data(), size());
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

std::vector<double> SymMatrix::Multiply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw Error(ErrorKind::kShapeMismatch, "vector size differs from matrix");
  }
  const auto& k = simd::Active();
  std::vector<double> y(n_);
  for (int i = 0; i < n_; ++i) {
    y[i] = k.dot(data_.data() + static_cast<std::size_t>(i) * n_, x.data(), n_);
  }
  return y;
}

double SymMatrix::Frobenius() const {
  return std::sqrt(simd::Active().dot(data(), data(), size()));
}

double SymMatrix::Inner(const SymMatrix& o) const {
  if (o.n_ != n_) throw Error(ErrorKind::kShapeMismatch, "matrix sizes differ");
  return simd::Active().dot(data(), o.data(), size());
}

double SymMatrix::Trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::Sum() const { return simd::Active().sum(data(), size()); }

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

std::vector<double> Eigenvalues(const SymMatrix& m) {
  CheckFinite(m.data(), m.size());
  const int n = m.n();
  std::vector<double> a(m.data(), m.data() + m.size());
  std::vector<double> w(n);
  if (n == 0) return w;
  CheckLapack(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n,
                             w.data()),
              "dsyevd");
  return w;
}

double SpectralNorm(const SymMatrix& m) {
  if (m.n() == 0) return 0.0;
  std::vector<double> lo, hi, unused;
  IndexRange(m, 1, 1, false, &lo, &unused);
  IndexRange(m, m.n(), m.n(), false, &hi, &unused);
  return std::max(std::abs(lo[0]), std::abs(hi[0]));
}

std::vector<double> SmallestEigenvalues(const SymMatrix& m, int k) {
  if (k < 1 || k > m.n()) {
    throw Error(ErrorKind::kInvalidParams, "k must lie in [1, n]");
  }
  std::vector<double> values, unused;
  IndexRange(m, 1, k, false, &values, &unused);
  return values;
}

Eigenpairs LargestEigenpairs(const SymMatrix& m, int k) {
  if (k < 1 || k > m.n()) {
    throw Error(ErrorKind::kInvalidParams, "k must lie in [1, n]");
  }
  Eigenpairs out;
  IndexRange(m, m.n() - k + 1, m.n(), true, &out.values, &out.vectors);
  return out;
}

bool IsPsd(const SymMatrix& m, double tol) {
  if (m.n() == 0) return true;
  return SmallestEigenvalues(m, 1)[0] >= -tol;
}

SymMatrix PsdProject(const SymMatrix& m) {
  CheckFinite(m.data(), m.size());
  SymMatrix out = m;
  if (m.n() == 0) return out;
  PsdProjector projector(m.n());
  projector.Project(out.data());
  return out;
}

PsdProjector::PsdProjector(int n)
    : n_(n),
      work_matrix_(static_cast<std::size_t>(n) * n),
      values_(n),
      vectors_(static_cast<std::size_t>(n) * n),
      scaled_(static_cast<std::size_t>(n) * n),
      support_(2 * static_cast<std::size_t>(n)) {}

void PsdProjector::Project(double* data) {
  if (n_ == 0) return;
  const int smaller_side =
      positive_ < 0 ? n_ : std::min(positive_, n_ - positive_);
  // Partial decompositions pay off only when few eigenvectors are needed.
  if (smaller_side * 8 < n_) {
    ProjectPartial(data, positive_ <= n_ - positive_);
  } else {
    ProjectFull(data);
  }
}

void PsdProjector::ProjectFull(double* data) {
  std::copy(data, data + work_matrix_.size(), work_matrix_.begin());
  CheckLapack(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n_,
                             work_matrix_.data(), n_, values_.data()),
              "dsyevd");
  int first_positive = n_;
  for (int t = 0; t < n_; ++t) {
    if (values_[t] > 0.0) {
      first_positive = t;
      break;
    }
  }
  positive_ = n_ - first_positive;
  const double* v = work_matrix_.data();
  if (positive_ <= n_ - positive_) {
    LowRankUpdate(data, v + static_cast<std::size_t>(first_positive) * n_,
                  values_.data() + first_positive, positive_, false, 1.0);
  } else {
    LowRankUpdate(data, v, values_.data(), first_positive, true, 1.0);
  }
}

void PsdProjector::ProjectPartial(double* data, bool positive_side) {
  std::copy(data, data + work_matrix_.size(), work_matrix_.begin());
  // Every eigenvalue lies within the Frobenius norm; an infinite interval end
  // would overflow LAPACK's internal scaling.
  const double big =
      2.0 * std::sqrt(simd::Active().dot(data, data, work_matrix_.size())) + 1.0;
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'V', 'U', n_, work_matrix_.data(), n_,
      positive_side ? 0.0 : -big, positive_side ? big : 0.0, 0, 0, 0.0, &found,
      values_.data(), vectors_.data(), n_, support_.data());
  if (info > 0) {
    ProjectFull(data);
    return;
  }
  CheckLapack(info, "dsyevr");
  if (positive_side) {
    positive_ = found;
    LowRankUpdate(data, vectors_.data(), values_.data(), found, false, 1.0);
  } else {
    positive_ = n_ - found;
    LowRankUpdate(data, vectors_.data(), values_.data(), found, true, 1.0);
  }
}

void PsdProjector::LowRankUpdate(double* data, const double* vectors,
                                 const double* values, int count,
                                 bool accumulate, double sign) {
  const std::size_t n = static_cast<std::size_t>(n_);
  if (count == 0) {
    if (!accumulate) std::fill(data, data + n * n, 0.0);
    return;
  }
  for (int t = 0; t < count; ++t) {
    const double s = std::sqrt(std::abs(values[t]));
    const double* src = vectors + static_cast<std::size_t>(t) * n;
    double* dst = scaled_.data() + static_cast<std::size_t>(t) * n;
    for (std::size_t i = 0; i < n; ++i) dst[i] = s * src[i];
  }
  cblas_dsyrk(CblasColMajor, CblasUpper, CblasNoTrans, n_, count, sign,
              scaled_.data(), n_, accumulate ? 1.0 : 0.0, data, n_);
  // Column-major upper triangle is the row-major lower one; mirror it.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) data[i * n + j] = data[j * n + i];
  }
}

}  // namespace dpsbm
