// Copyright 2026 The QRS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrs/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrs {
namespace {

void require_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw Error(ErrorCode::kUnsupported, "matrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kArgument, "matrix dimensions differ");
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c) {
      if (r != c) sum += std::norm(m(r, c));
    }
  }
  return std::sqrt(sum);
}

// One complex Jacobi rotation in the (p, q) plane, A <- U^† A U. U first
// rotates the phase of a_pq away, then applies the real symmetric rotation.
void jacobi_rotate(ComplexMatrix& a, int p, int q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;
  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  ComplexMatrix u = ComplexMatrix::identity(a.dim());
  u(p, p) = c;
  u(p, q) = s;
  u(q, p) = -s * std::conj(phase);
  u(q, q) = c * std::conj(phase);
  a = u.adjoint() * a * u;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kArgument: return "argument error";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kCalibration: return "calibration failure";
    case ErrorCode::kEstimation: return "estimation error";
    case ErrorCode::kIngestion: return "ingestion error";
    case ErrorCode::kParse: return "parse error";
  }
  return "unknown error";
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { require_dim(dim); }

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<Complex> row_major) : dim_(dim) {
  require_dim(dim);
  if (static_cast<int>(row_major.size()) != dim * dim) {
    throw Error(ErrorCode::kArgument, "entry count does not match a square matrix of the declared dimension");
  }
  std::copy(row_major.begin(), row_major.end(), entries_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::projector(const std::vector<Complex>& ket) {
  ComplexMatrix m(static_cast<int>(ket.size()));
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c) m(r, c) = ket[r] * std::conj(ket[c]);
  }
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
  }
  return out;
}

double ComplexMatrix::hermitian_error() const { return max_abs_diff(*this, adjoint()); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (int i = 0; i < dim_ * dim_; ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (int i = 0; i < dim_ * dim_; ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (int i = 0; i < dim_ * dim_; ++i) entries_[i] *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  ComplexMatrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r) {
    for (int k = 0; k < a.dim(); ++k) {
      const Complex ark = a(r, k);
      for (int c = 0; c < a.dim(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double worst = 0.0;
  for (int r = 0; r < a.dim(); ++r) {
    for (int c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  }
  return worst;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  Complex t = 0.0;
  for (int r = 0; r < a.dim(); ++r) {
    for (int k = 0; k < a.dim(); ++k) t += a(r, k) * b(k, r);
  }
  return t;
}

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

ComplexMatrix pauli(int j) {
  using namespace std::complex_literals;
  switch (j) {
    case 1: return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case 2: return ComplexMatrix(2, {0.0, -1i, 1i, 0.0});
    case 3: return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
    default: throw Error(ErrorCode::kArgument, "Pauli index must be 1, 2 or 3, got " + std::to_string(j));
  }
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int dim = a.dim() * b.dim();
  if (dim > 4) {
    throw Error(ErrorCode::kUnsupported, "tensor product of dimension " + std::to_string(dim) + " exceeds 4");
  }
  ComplexMatrix out(dim);
  for (int ar = 0; ar < a.dim(); ++ar) {
    for (int ac = 0; ac < a.dim(); ++ac) {
      for (int br = 0; br < b.dim(); ++br) {
        for (int bc = 0; bc < b.dim(); ++bc) {
          out(ar * b.dim() + br, ac * b.dim() + bc) = a(ar, ac) * b(br, bc);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced) {
  if (m.dim() != 4) {
    throw Error(ErrorCode::kArgument, "partial trace needs a 4x4 operator");
  }
  ComplexMatrix out(2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (int k = 0; k < 2; ++k) {
        out(r, c) += traced == Subsystem::kSecond ? m(2 * r + k, 2 * c + k) : m(2 * k + r, 2 * k + c);
      }
    }
  }
  return out;
}

std::vector<double> eig_hermitian(const ComplexMatrix& m) {
  const double herm = m.hermitian_error();
  if (herm > tolerance::kHermitian) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |m - m^dagger| = " << herm << ")";
    throw Error(ErrorCode::kDomain, msg.str());
  }
  std::vector<double> values;
  if (m.dim() == 2) {
    // m = c·1 + v·sigma has eigenvalues c ± |v|.
    const double c = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double vz = 0.5 * (m(0, 0).real() - m(1, 1).real());
    const Complex off = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double v = std::sqrt(vz * vz + std::norm(off));
    values = {c + v, c - v};
  } else {
    ComplexMatrix a = m;
    for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > tolerance::kJacobiOffDiagonal; ++sweep) {
      for (int p = 0; p < a.dim() - 1; ++p) {
        for (int q = p + 1; q < a.dim(); ++q) jacobi_rotate(a, p, q);
      }
    }
    for (int i = 0; i < a.dim(); ++i) values.push_back(a(i, i).real());
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

DensityCheck is_density_matrix(const ComplexMatrix& m) {
  DensityCheck check;
  check.hermitian_error = m.hermitian_error();
  check.trace_error = std::abs(m.trace() - 1.0);
  if (check.hermitian_error > tolerance::kHermitian) {
    check.reason = "not Hermitian";
    return check;
  }
  check.min_eigenvalue = eig_hermitian(m).back();
  if (check.trace_error > tolerance::kTrace) {
    check.reason = "trace differs from 1";
  } else if (check.min_eigenvalue < -tolerance::kPsd) {
    check.reason = "negative eigenvalue";
  } else {
    check.valid = true;
  }
  return check;
}

ComplexMatrix bloch_state(const BlochVector& n) {
  using namespace std::complex_literals;
  return ComplexMatrix(2, {0.5 * (1.0 + n.z), 0.5 * (n.x - 1i * n.y), 0.5 * (n.x + 1i * n.y), 0.5 * (1.0 - n.z)});
}

BlochVector bloch_components(const ComplexMatrix& m) {
  if (m.dim() != 2) throw Error(ErrorCode::kArgument, "Bloch components need a 2x2 operator");
  return {trace_product(m, pauli(1)).real(), trace_product(m, pauli(2)).real(), trace_product(m, pauli(3)).real()};
}

}  // namespace qrs
