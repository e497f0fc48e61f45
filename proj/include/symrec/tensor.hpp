// Copyright 2026 The symrec Authors
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

#pragma once

// Dense complex linear algebra over labelled multipartite Hilbert spaces.
//
// Index convention: the first subsystem of a layout is the most significant
// digit of the flat index, which matches kron(A, B) ordering.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "symrec/error.hpp"

namespace symrec {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClamp = 1e-10;
inline constexpr double kPsdReject = 1e-8;

/// Largest total dimension a dense operator may have. Defaults to 4096 and
/// can be overridden with the SYMREC_DIM_CAP environment variable.
std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);
void require_within_cap(std::size_t dim, std::string_view what);

struct Subsystem {
  std::string label;
  std::size_t dim = 1;
};

class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> parts);

  const std::vector<Subsystem>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  std::size_t total_dim() const { return total_dim_; }
  std::vector<std::size_t> dims() const;

  bool contains(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;
  std::size_t dim_of(std::string_view label) const;

  /// Sub-layout holding `labels`, kept in this layout's order.
  SystemLayout select(std::span<const std::string> labels) const;
  SystemLayout without(std::span<const std::string> labels) const;
  SystemLayout concat(const SystemLayout& other) const;

  bool operator==(const SystemLayout& other) const;

 private:
  std::vector<Subsystem> parts_;
  std::size_t total_dim_ = 1;
};

struct LabelledFactor {
  Matrix op;
  std::string label;
};

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Kronecker product of `factors`, which must follow `layout` order exactly.
Matrix tensor_compose(std::span<const LabelledFactor> factors,
                      const SystemLayout& layout);

/// `local` acting on subsystem `label`, identity elsewhere.
Matrix embed(const Matrix& local, std::string_view label,
             const SystemLayout& layout);

/// Reorders tensor factors: output factor i is input factor perm[i].
Matrix permute_subsystems(const Matrix& op, std::span<const std::size_t> dims,
                          std::span<const std::size_t> perm);
Vector permute_subsystems(const Vector& psi, std::span<const std::size_t> dims,
                          std::span<const std::size_t> perm);

Matrix partial_trace(const Matrix& op, const SystemLayout& layout,
                     std::span<const std::string> keep);

/// Reduced density matrix of the pure state `psi` on `keep`, computed without
/// forming the global projector.
Matrix reduced_state(const Vector& psi, const SystemLayout& layout,
                     std::span<const std::string> keep);

/// Reshapes `psi` into a (kept x rest) coefficient matrix, kept subsystems in
/// layout order forming the row index.
Matrix split_coefficients(const Vector& psi, const SystemLayout& layout,
                          std::span<const std::string> keep);

struct Spectrum {
  RealVector values;  // descending
  Matrix vectors;     // orthonormal columns
};

Spectrum hermitian_spectrum(const Matrix& h);
Matrix psd_sqrt(const Matrix& p);
/// Pseudo-inverse square root on eigenvalues above `cutoff`.
Matrix psd_inverse_sqrt(const Matrix& p, double cutoff);

/// Cheap upper bound on the spectral norm, refined to the exact value only
/// when the bound is inconclusive against `tol`.
double spectral_norm_at_most(const Matrix& m, double tol);
double spectral_norm(const Matrix& m);

bool is_hermitian(const Matrix& h, double tol = kHermitianTol);
bool is_unitary(const Matrix& u, double tol = kHermitianTol);
bool is_isometry(const Matrix& v, double tol = kHermitianTol);
void require_hermitian(const Matrix& h, std::string_view what);
void require_square(const Matrix& m, std::size_t dim, std::string_view what);

Matrix hermitian_part(const Matrix& m);
/// exp(i * t * h) for Hermitian h.
Matrix unitary_from_generator(const Matrix& h, double t);
Matrix identity(std::size_t dim);
Matrix projector(const Vector& v);
/// Polar factor W = U V^† of m = U S V^†; W is an isometry when rows >= cols.
Matrix polar_isometry(const Matrix& m);

}  // namespace symrec
