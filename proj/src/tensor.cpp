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

#include "symrec/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace symrec {
namespace {

std::size_t initial_cap() {
  if (const char* env = std::getenv("SYMREC_DIM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{initial_cap()};
  return cap;
}

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Flat input offsets for every multi-index over the subsystems in `which`,
// enumerated with `which` in the given order (first = most significant).
std::vector<std::size_t> offsets_for(std::span<const std::size_t> dims,
                                     std::span<const std::size_t> which) {
  const auto strides = strides_of(dims);
  std::size_t count = 1;
  for (auto w : which) count *= dims[w];
  std::vector<std::size_t> out(count, 0);
  std::vector<std::size_t> digit(which.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < which.size(); ++k) off += digit[k] * strides[which[k]];
    out[n] = off;
    for (std::size_t k = which.size(); k-- > 0;) {
      if (++digit[k] < dims[which[k]]) break;
      digit[k] = 0;
    }
  }
  return out;
}

struct KeepSplit {
  std::vector<std::size_t> keep_offsets;
  std::vector<std::size_t> rest_offsets;
};

KeepSplit split_offsets(const SystemLayout& layout,
                        std::span<const std::string> keep) {
  std::vector<bool> kept(layout.size(), false);
  for (const auto& label : keep) kept[layout.index_of(label)] = true;
  std::vector<std::size_t> keep_idx, rest_idx;
  for (std::size_t i = 0; i < layout.size(); ++i)
    (kept[i] ? keep_idx : rest_idx).push_back(i);
  const auto dims = layout.dims();
  return {offsets_for(dims, keep_idx), offsets_for(dims, rest_idx)};
}

}  // namespace

std::size_t dimension_cap() { return cap_storage().load(); }
void set_dimension_cap(std::size_t cap) { cap_storage().store(cap > 0 ? cap : 1); }

void require_within_cap(std::size_t dim, std::string_view what) {
  require(dim <= dimension_cap(), ErrorCode::kDimensionCap,
          std::string(what) + ": dimension " + std::to_string(dim) +
              " exceeds cap " + std::to_string(dimension_cap()));
}

SystemLayout::SystemLayout(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    require(parts_[i].dim > 0, ErrorCode::kInvalidArgument,
            "subsystem '" + parts_[i].label + "' has zero dimension");
    for (std::size_t j = 0; j < i; ++j)
      require(parts_[j].label != parts_[i].label, ErrorCode::kInvalidArgument,
              "duplicate subsystem label '" + parts_[i].label + "'");
    total_dim_ *= parts_[i].dim;
  }
}

std::vector<std::size_t> SystemLayout::dims() const {
  std::vector<std::size_t> d;
  d.reserve(parts_.size());
  for (const auto& p : parts_) d.push_back(p.dim);
  return d;
}

bool SystemLayout::contains(std::string_view label) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::size_t SystemLayout::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].label == label) return i;
  fail(ErrorCode::kUnknownLabel, "unknown subsystem label '" + std::string(label) + "'");
}

std::size_t SystemLayout::dim_of(std::string_view label) const {
  return parts_[index_of(label)].dim;
}

SystemLayout SystemLayout::select(std::span<const std::string> labels) const {
  for (const auto& l : labels) (void)index_of(l);
  std::vector<Subsystem> out;
  for (const auto& p : parts_)
    if (std::find(labels.begin(), labels.end(), p.label) != labels.end()) out.push_back(p);
  return SystemLayout(std::move(out));
}

SystemLayout SystemLayout::without(std::span<const std::string> labels) const {
  for (const auto& l : labels) (void)index_of(l);
  std::vector<Subsystem> out;
  for (const auto& p : parts_)
    if (std::find(labels.begin(), labels.end(), p.label) == labels.end()) out.push_back(p);
  return SystemLayout(std::move(out));
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  auto parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  return SystemLayout(std::move(parts));
}

bool SystemLayout::operator==(const SystemLayout& other) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].label != other.parts_[i].label || parts_[i].dim != other.parts_[i].dim)
      return false;
  return true;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix tensor_compose(std::span<const LabelledFactor> factors, const SystemLayout& layout) {
  require(factors.size() == layout.size(), ErrorCode::kDimensionMismatch,
          "tensor_compose: factor count does not match layout");
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& part = layout.parts()[i];
    const auto& f = factors[i];
    require(f.label == part.label, ErrorCode::kDimensionMismatch,
            "tensor_compose: factor '" + f.label + "' out of layout order");
    require(static_cast<std::size_t>(f.op.rows()) == part.dim &&
                static_cast<std::size_t>(f.op.cols()) == part.dim,
            ErrorCode::kDimensionMismatch,
            "tensor_compose: factor '" + f.label + "' has wrong dimension");
    out = kron(out, f.op);
  }
  return out;
}

Matrix embed(const Matrix& local, std::string_view label, const SystemLayout& layout) {
  const auto idx = layout.index_of(label);
  const auto d = layout.parts()[idx].dim;
  require(static_cast<std::size_t>(local.rows()) == d && static_cast<std::size_t>(local.cols()) == d,
          ErrorCode::kDimensionMismatch, "embed: operator dimension mismatch on '" + std::string(label) + "'");
  std::size_t before = 1, after = 1;
  for (std::size_t i = 0; i < idx; ++i) before *= layout.parts()[i].dim;
  for (std::size_t i = idx + 1; i < layout.size(); ++i) after *= layout.parts()[i].dim;
  require_within_cap(layout.total_dim(), "embed");
  return kron(kron(identity(before), local), identity(after));
}

namespace {

std::vector<std::size_t> permutation_map(std::span<const std::size_t> dims,
                                         std::span<const std::size_t> perm) {
  require(perm.size() == dims.size(), ErrorCode::kDimensionMismatch,
          "permute_subsystems: permutation size mismatch");
  std::vector<std::size_t> out_dims(dims.size());
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    require(perm[i] < dims.size() && !seen[perm[i]], ErrorCode::kInvalidArgument,
            "permute_subsystems: not a permutation");
    seen[perm[i]] = true;
    out_dims[i] = dims[perm[i]];
  }
  const auto out_strides = strides_of(out_dims);
  std::vector<std::size_t> out_stride_of_input(dims.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out_stride_of_input[perm[i]] = out_strides[i];
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) off += digit[k] * out_stride_of_input[k];
    map[n] = off;
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++digit[k] < dims[k]) break;
      digit[k] = 0;
    }
  }
  return map;
}

}  // namespace

Matrix permute_subsystems(const Matrix& op, std::span<const std::size_t> dims,
                          std::span<const std::size_t> perm) {
  const auto map = permutation_map(dims, perm);
  require(static_cast<std::size_t>(op.rows()) == map.size() && op.rows() == op.cols(),
          ErrorCode::kDimensionMismatch, "permute_subsystems: operator dimension mismatch");
  Matrix out(op.rows(), op.cols());
  for (Eigen::Index j = 0; j < op.cols(); ++j)
    for (Eigen::Index i = 0; i < op.rows(); ++i) out(map[i], map[j]) = op(i, j);
  return out;
}

Vector permute_subsystems(const Vector& psi, std::span<const std::size_t> dims,
                          std::span<const std::size_t> perm) {
  const auto map = permutation_map(dims, perm);
  require(static_cast<std::size_t>(psi.size()) == map.size(), ErrorCode::kDimensionMismatch,
          "permute_subsystems: vector dimension mismatch");
  Vector out(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) out(map[i]) = psi(i);
  return out;
}

Matrix partial_trace(const Matrix& op, const SystemLayout& layout,
                     std::span<const std::string> keep) {
  require(op.rows() == op.cols() && static_cast<std::size_t>(op.rows()) == layout.total_dim(),
          ErrorCode::kDimensionMismatch, "partial_trace: operator does not match layout");
  const auto split = split_offsets(layout, keep);
  const auto nk = static_cast<Eigen::Index>(split.keep_offsets.size());
  Matrix out = Matrix::Zero(nk, nk);
  for (Eigen::Index b = 0; b < nk; ++b)
    for (Eigen::Index a = 0; a < nk; ++a) {
      cplx acc = 0.0;
      for (auto r : split.rest_offsets)
        acc += op(split.keep_offsets[a] + r, split.keep_offsets[b] + r);
      out(a, b) = acc;
    }
  return out;
}

Matrix split_coefficients(const Vector& psi, const SystemLayout& layout,
                          std::span<const std::string> keep) {
  require(static_cast<std::size_t>(psi.size()) == layout.total_dim(), ErrorCode::kDimensionMismatch,
          "split_coefficients: vector does not match layout");
  const auto split = split_offsets(layout, keep);
  Matrix c(split.keep_offsets.size(), split.rest_offsets.size());
  for (std::size_t r = 0; r < split.rest_offsets.size(); ++r)
    for (std::size_t a = 0; a < split.keep_offsets.size(); ++a)
      c(a, r) = psi(split.keep_offsets[a] + split.rest_offsets[r]);
  return c;
}

Matrix reduced_state(const Vector& psi, const SystemLayout& layout,
                     std::span<const std::string> keep) {
  const Matrix c = split_coefficients(psi, layout, keep);
  return c * c.adjoint();
}

Spectrum hermitian_spectrum(const Matrix& h) {
  require(h.rows() == h.cols(), ErrorCode::kDimensionMismatch, "hermitian_spectrum: matrix not square");
  require_hermitian(h, "hermitian_spectrum");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  const auto n = h.rows();
  Spectrum s{RealVector(n), Matrix(n, n)};
  Matrix vecs = es.eigenvectors();
  // Fix the phase: first entry above 1e-8 in magnitude made real positive.
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(vecs(i, k)) > 1e-8) {
        vecs.col(k) *= std::conj(vecs(i, k)) / std::abs(vecs(i, k));
        break;
      }
    }
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(ev(a) - ev(b)) > 1e-10 * scale) return ev(a) > ev(b);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ma = std::abs(vecs(i, a)), mb = std::abs(vecs(i, b));
      if (std::abs(ma - mb) > 1e-10) return ma > mb;
    }
    return a < b;
  });
  for (Eigen::Index k = 0; k < n; ++k) {
    s.values(k) = ev(order[k]);
    s.vectors.col(k) = vecs.col(order[k]);
  }
  return s;
}

Matrix psd_sqrt(const Matrix& p) {
  const auto spec = hermitian_spectrum(p);
  const auto n = p.rows();
  RealVector root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = spec.values(i);
    require(v >= -kPsdReject, ErrorCode::kNotPositive,
            "psd_sqrt: eigenvalue " + std::to_string(v) + " is materially negative");
    root(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return spec.vectors * root.asDiagonal() * spec.vectors.adjoint();
}

Matrix psd_inverse_sqrt(const Matrix& p, double cutoff) {
  const auto spec = hermitian_spectrum(p);
  const auto n = p.rows();
  RealVector inv(n);
  for (Eigen::Index i = 0; i < n; ++i)
    inv(i) = spec.values(i) > cutoff ? 1.0 / std::sqrt(spec.values(i)) : 0.0;
  return spec.vectors * inv.asDiagonal() * spec.vectors.adjoint();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double spectral_norm_at_most(const Matrix& m, double tol) {
  if (m.size() == 0) return 0.0;
  const double fro = m.norm();
  const double one = m.cwiseAbs().colwise().sum().maxCoeff();
  const double inf = m.cwiseAbs().rowwise().sum().maxCoeff();
  const double bound = std::min(fro, std::sqrt(one * inf));
  if (bound <= tol) return bound;
  return spectral_norm(m);
}

namespace {
double magnitude_scale(const Matrix& m) {
  return m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
}
}  // namespace

bool is_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  const double t = tol * magnitude_scale(h);
  return spectral_norm_at_most(h - h.adjoint(), t) <= t;
}

bool is_isometry(const Matrix& v, double tol) {
  if (v.rows() < v.cols()) return false;
  // Round-off in V^†V grows with the contracted dimension.
  const double t = tol * std::max(1.0, std::sqrt(static_cast<double>(v.rows())));
  const Matrix gram = v.adjoint() * v - identity(v.cols());
  return spectral_norm_at_most(gram, t) <= t;
}

bool is_unitary(const Matrix& u, double tol) {
  return u.rows() == u.cols() && is_isometry(u, tol);
}

void require_hermitian(const Matrix& h, std::string_view what) {
  require(is_hermitian(h), ErrorCode::kNotHermitian, std::string(what) + ": operator is not Hermitian");
}

void require_square(const Matrix& m, std::size_t dim, std::string_view what) {
  require(m.rows() == m.cols() && static_cast<std::size_t>(m.rows()) == dim,
          ErrorCode::kDimensionMismatch,
          std::string(what) + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) +
              " operator, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix unitary_from_generator(const Matrix& h, double t) {
  const auto spec = hermitian_spectrum(h);
  Vector phases(spec.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::polar(1.0, t * spec.values(i));
  return spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
}

Matrix identity(std::size_t dim) {
  return Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Matrix polar_isometry(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace symrec
