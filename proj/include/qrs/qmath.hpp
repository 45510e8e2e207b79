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

#ifndef QRS_QMATH_HPP_
#define QRS_QMATH_HPP_

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrs {

using Complex = std::complex<double>;

// Global numeric policy. Every validity check in the library reads these.
namespace tolerance {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kPsd = 1e-9;
inline constexpr double kBlochNorm = 1e-9;
inline constexpr double kJacobiOffDiagonal = 1e-12;
}  // namespace tolerance

enum class ErrorCode {
  kArgument = 1,
  kDomain = 2,
  kUnsupported = 3,
  kCalibration = 4,
  kEstimation = 5,
  kIngestion = 6,
  kParse = 7,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; the code tells callers (and the C
// API) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Square complex matrix of dimension 2 (one qubit) or 4 (two qubits),
/// stored row-major. Two-qubit matrices use the (first ⊗ second) block order:
/// basis index = 2 * first + second.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::initializer_list<Complex> row_major);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix projector(const std::vector<Complex>& ket);

  int dim() const noexcept { return dim_; }
  Complex operator()(int row, int col) const { return entries_[row * dim_ + col]; }
  Complex& operator()(int row, int col) { return entries_[row * dim_ + col]; }

  Complex trace() const;
  ComplexMatrix adjoint() const;
  double hermitian_error() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  int dim_;
  std::array<Complex, 16> entries_{};
};

/// Largest entrywise modulus of a - b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double norm() const;
  double dot(const BlochVector& other) const { return x * other.x + y * other.y + z * other.z; }

  friend BlochVector operator+(const BlochVector& a, const BlochVector& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend BlochVector operator-(const BlochVector& a, const BlochVector& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend BlochVector operator*(double s, const BlochVector& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// Pauli matrix sigma_j for j in {1, 2, 3}.
ComplexMatrix pauli(int j);

/// Kronecker product a ⊗ b; only 2 ⊗ 2 is representable.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { kFirst, kSecond };

/// Traces out `traced` from a two-qubit operator.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced);

/// Real eigenvalues of a Hermitian matrix, sorted descending. Dimension 2 uses
/// the closed form; dimension 4 uses cyclic complex Jacobi sweeps.
std::vector<double> eig_hermitian(const ComplexMatrix& m);

struct DensityCheck {
  bool valid = false;
  double hermitian_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  std::string reason;
};

DensityCheck is_density_matrix(const ComplexMatrix& m);

/// (1 + n·sigma) / 2.
ComplexMatrix bloch_state(const BlochVector& n);

/// Components Tr(m sigma_j) of a single-qubit operator.
BlochVector bloch_components(const ComplexMatrix& m);

}  // namespace qrs

#endif  // QRS_QMATH_HPP_
