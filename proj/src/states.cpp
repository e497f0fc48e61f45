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

#include "symrec/states.hpp"

#include <algorithm>
#include <cmath>

namespace symrec {
namespace {

void require_same_dims(const Matrix& a, const Matrix& b, const char* what) {
  require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
          ErrorCode::kDimensionMismatch, std::string(what) + ": dimension mismatch");
}

}  // namespace

SystemLayout single_system(const std::string& label, std::size_t dim) {
  return SystemLayout({{label, dim}});
}

DensityMatrix make_density(Matrix m, SystemLayout layout) {
  require_square(m, layout.total_dim(), "density matrix");
  require_hermitian(m, "density matrix");
  require(std::abs(m.trace() - cplx(1.0)) <= 1e-10 * std::max<double>(1.0, m.rows() / 64.0),
          ErrorCode::kInvalidArgument, "density matrix: trace is not 1");
  const auto spec = hermitian_spectrum(m);
  require(spec.values.size() == 0 || spec.values(spec.values.size() - 1) >= -kPsdReject,
          ErrorCode::kNotPositive, "density matrix: not positive semidefinite");
  return {hermitian_part(m), std::move(layout)};
}

PureState make_pure(Vector v, SystemLayout layout) {
  require(static_cast<std::size_t>(v.size()) == layout.total_dim(), ErrorCode::kDimensionMismatch,
          "pure state: amplitude count does not match layout");
  require(std::abs(v.norm() - 1.0) <= 1e-12 * std::max(1.0, std::sqrt(static_cast<double>(v.size()))),
          ErrorCode::kInvalidArgument, "pure state: not normalised");
  return {std::move(v), std::move(layout)};
}

DensityMatrix to_density(const PureState& psi) {
  return {projector(psi.amplitudes), psi.layout};
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  require_same_dims(rho, sigma, "fidelity");
  // sum of sqrt eig(sqrt(a) b sqrt(a)), with a restricted to its numerical support
  auto support = [](const Matrix& m) {
    const auto s = hermitian_spectrum(m);
    const double floor = 1e-14 * std::max(1.0, s.values(0));
    Eigen::Index r = 0;
    while (r < s.values.size() && s.values(r) > floor) ++r;
    return std::pair{s, r};
  };
  auto [sa, ra] = support(rho);
  auto [sb, rb] = support(sigma);
  const Matrix* other = &sigma;
  if (rb < ra) {
    std::swap(sa, sb);
    std::swap(ra, rb);
    other = &rho;
  }
  if (ra == 0) return 0.0;
  const Matrix half = sa.vectors.leftCols(ra) * sa.values.head(ra).cwiseSqrt().asDiagonal();
  const Matrix m = hermitian_part(half.adjoint() * *other * half);
  const RealVector ev = hermitian_spectrum(m).values;
  const double floor = 1e-14 * std::max(1.0, ev(0));
  double f = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > floor) f += std::sqrt(ev(i));
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const Vector& psi, const Matrix& sigma) {
  require(sigma.rows() == psi.size() && sigma.cols() == psi.size(), ErrorCode::kDimensionMismatch,
          "fidelity: dimension mismatch");
  const double f2 = std::real(psi.dot(sigma * psi));
  return std::sqrt(std::clamp(f2, 0.0, 1.0));
}

double purified_distance_from_fidelity(double f) {
  f = std::clamp(f, 0.0, 1.0);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double purified_distance(const Matrix& rho, const Matrix& sigma) {
  return purified_distance_from_fidelity(fidelity(rho, sigma));
}

PureState purify(const DensityMatrix& rho, const std::string& reference_label) {
  const auto spec = hermitian_spectrum(rho.matrix);
  std::size_t rank = 0;
  while (rank < static_cast<std::size_t>(spec.values.size()) && spec.values(rank) > kRankCutoff) ++rank;
  rank = std::max<std::size_t>(rank, 1);
  const auto d = rho.matrix.rows();
  Vector psi = Vector::Zero(d * static_cast<Eigen::Index>(rank));
  double norm2 = 0.0;
  for (std::size_t i = 0; i < rank; ++i) norm2 += std::max(spec.values(i), 0.0);
  for (std::size_t i = 0; i < rank; ++i) {
    const double w = std::sqrt(std::max(spec.values(i), 0.0) / norm2);
    for (Eigen::Index a = 0; a < d; ++a) psi(a * rank + i) = w * spec.vectors(a, i);
  }
  auto parts = rho.layout.parts();
  parts.push_back({reference_label, rank});
  return {psi, SystemLayout(std::move(parts))};
}

double expectation(const Matrix& rho, const Matrix& x) {
  require_same_dims(rho, x, "expectation");
  return (rho.cwiseProduct(x.transpose())).sum().real();
}

double variance(const Matrix& rho, const Matrix& x) {
  const double m = expectation(rho, x);
  return std::max(0.0, expectation(rho, x * x) - m * m);
}

double variance(const Vector& psi, const Matrix& x) {
  const Vector xv = x * psi;
  const double m = std::real(psi.dot(xv));
  return std::max(0.0, xv.squaredNorm() - m * m);
}

Moments moments(const Matrix& rho, const Matrix& x) {
  require_hermitian(x, "moments");
  Moments out;
  out.mean = expectation(rho, x);
  out.variance = variance(rho, x);
  const Matrix shifted = x - out.mean * identity(x.rows());
  const auto spec = hermitian_spectrum(shifted);
  const Matrix absdev =
      spec.vectors * spec.values.cwiseAbs().cast<cplx>().asDiagonal() * spec.vectors.adjoint();
  out.mean_deviation = std::max(0.0, expectation(rho, absdev));
  return out;
}

double covariance(const Matrix& rho, const Matrix& x, const Matrix& y) {
  require_same_dims(rho, x, "covariance");
  require_same_dims(rho, y, "covariance");
  require_hermitian(x, "covariance");
  require_hermitian(y, "covariance");
  const double mx = expectation(rho, x);
  const double my = expectation(rho, y);
  return 0.5 * expectation(rho, x * y + y * x) - mx * my;
}

RealMatrix qfi_matrix(const Matrix& rho, const std::vector<Matrix>& generators) {
  const auto spec = hermitian_spectrum(rho);
  const auto n = rho.rows();
  std::vector<Matrix> rotated;
  rotated.reserve(generators.size());
  for (const auto& g : generators) {
    require_same_dims(rho, g, "qfi");
    require_hermitian(g, "qfi");
    rotated.push_back(spec.vectors.adjoint() * g * spec.vectors);
  }
  const auto m = static_cast<Eigen::Index>(generators.size());
  RealMatrix out = RealMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double ri = std::max(spec.values(i), 0.0);
      const double rj = std::max(spec.values(j), 0.0);
      if (ri + rj <= kRankCutoff) continue;
      const double w = 2.0 * (ri - rj) * (ri - rj) / (ri + rj);
      if (w == 0.0) continue;
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = a; b < m; ++b)
          out(a, b) += w * std::real(rotated[a](i, j) * rotated[b](j, i));
    }
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < a; ++b) out(a, b) = out(b, a);
  return out;
}

double qfi(const Matrix& rho, const Matrix& x) {
  return std::max(0.0, qfi_matrix(rho, {x})(0, 0));
}

MinimalVarianceReference minimal_variance_reference(const DensityMatrix& rho, const Matrix& x) {
  require_same_dims(rho.matrix, x, "minimal_variance_reference");
  require_hermitian(x, "minimal_variance_reference");
  MinimalVarianceReference out;
  out.purification = purify(rho, "ref");
  const auto spec = hermitian_spectrum(rho.matrix);
  const auto r = static_cast<Eigen::Index>(out.purification.layout.parts().back().dim);
  const Matrix basis = spec.vectors.leftCols(r);
  const Matrix xe = basis.adjoint() * x * basis;
  Matrix xr = Matrix::Zero(r, r);
  for (Eigen::Index l = 0; l < r; ++l)
    for (Eigen::Index lp = 0; lp < r; ++lp) {
      const double rl = std::max(spec.values(l), 0.0);
      const double rlp = std::max(spec.values(lp), 0.0);
      const double c = 2.0 * std::sqrt(rl * rlp) / (rl + rlp);
      xr(lp, l) = -c * xe(l, lp);
    }
  out.reference_observable = hermitian_part(xr);
  const Matrix total = kron(x, identity(r)) + kron(identity(x.rows()), out.reference_observable);
  out.four_variance = 4.0 * variance(out.purification.amplitudes, total);
  return out;
}

TradeoffCheck mvd_tradeoff_check(const Matrix& rho, const Matrix& sigma, const Matrix& x,
                                 double slack) {
  require_same_dims(rho, sigma, "mvd_tradeoff_check");
  require_same_dims(rho, x, "mvd_tradeoff_check");
  require_hermitian(x, "mvd_tradeoff_check");
  TradeoffCheck out;
  out.delta = expectation(rho, x) - expectation(sigma, x);
  out.distance = purified_distance(rho, sigma);
  const double sv = std::sqrt(variance(rho, x)) + std::sqrt(variance(sigma, x));
  out.lhs = std::abs(out.delta);
  out.rhs = out.distance * (sv + out.lhs);
  out.lhs_squared = out.delta * out.delta;
  out.rhs_squared = out.distance * out.distance * (sv * sv + out.lhs_squared);
  out.satisfied = out.lhs <= out.rhs + slack;
  out.satisfied_squared = out.lhs_squared <= out.rhs_squared + slack;
  return out;
}

}  // namespace symrec
