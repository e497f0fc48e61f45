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

#include "symrec/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace symrec {

Matrix total_charge(const std::map<std::string, Matrix>& local, const SystemLayout& layout) {
  require_within_cap(layout.total_dim(), "total_charge");
  const auto d = layout.total_dim();
  std::size_t before = 1;
  const std::size_t total = d;
  RealVector diag = RealVector::Zero(d);
  bool all_diag = true;
  for (const auto& p : layout.parts()) {
    auto it = local.find(p.label);
    if (it != local.end() && !it->second.isDiagonal(1e-14)) all_diag = false;
  }
  if (all_diag) {
    for (const auto& p : layout.parts()) {
      const std::size_t after = total / (before * p.dim);
      auto it = local.find(p.label);
      if (it != local.end()) {
        for (std::size_t idx = 0; idx < d; ++idx) {
          const std::size_t digit = (idx / after) % p.dim;
          diag(idx) += it->second(digit, digit).real();
        }
      }
      before *= p.dim;
    }
    return diag.cast<cplx>().asDiagonal();
  }
  Matrix out = Matrix::Zero(d, d);
  for (const auto& p : layout.parts()) {
    auto it = local.find(p.label);
    if (it != local.end()) out += embed(it->second, p.label, layout);
  }
  return out;
}

ChargeSpec make_charge_spec(std::map<std::string, Matrix> local, SystemLayout input,
                            SystemLayout output) {
  require(input.total_dim() == output.total_dim(), ErrorCode::kDimensionMismatch,
          "charge spec: input and output dimensions differ");
  for (const auto& [label, x] : local) {
    std::size_t dim = 0;
    if (input.contains(label)) dim = input.dim_of(label);
    else if (output.contains(label)) dim = output.dim_of(label);
    else fail(ErrorCode::kUnknownLabel, "charge spec: unknown label '" + label + "'");
    require_square(x, dim, "charge '" + label + "'");
    require_hermitian(x, "charge '" + label + "'");
  }
  return {std::move(local), std::move(input), std::move(output)};
}

Matrix ChargeSpec::total_input() const { return total_charge(local, input); }
Matrix ChargeSpec::total_output() const { return total_charge(local, output); }

Matrix ChargeSpec::charge(const std::string& label) const {
  auto it = local.find(label);
  if (it != local.end()) return it->second;
  std::size_t dim = input.contains(label) ? input.dim_of(label) : output.dim_of(label);
  return Matrix::Zero(dim, dim);
}

ViolationReport conservation_check(const Matrix& u, const ChargeSpec& charges) {
  require_square(u, charges.input.total_dim(), "conservation_check");
  require(is_unitary(u), ErrorCode::kNotUnitary, "conservation_check: operator is not unitary");
  ViolationReport out;
  out.Z = hermitian_part(u * charges.total_input() * u.adjoint() - charges.total_output());
  const auto spec = hermitian_spectrum(out.Z);
  out.spread_DZ = spec.values(0) - spec.values(spec.values.size() - 1);
  return out;
}

std::vector<ChargeSector> charge_sectors(const Matrix& x_total) {
  require(x_total.rows() == x_total.cols(), ErrorCode::kDimensionMismatch, "charge_sectors: not square");
  require_hermitian(x_total, "charge_sectors");
  const auto n = x_total.rows();
  std::vector<ChargeSector> out;
  if (x_total.isDiagonal(1e-14)) {
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return x_total(a, a).real() < x_total(b, b).real();
    });
    std::size_t start = 0;
    for (std::size_t i = 1; i <= order.size(); ++i) {
      if (i < order.size() &&
          x_total(order[i], order[i]).real() - x_total(order[i - 1], order[i - 1]).real() <= kSectorGap)
        continue;
      ChargeSector s;
      s.basis = Matrix::Zero(n, static_cast<Eigen::Index>(i - start));
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) {
        s.basis(order[j], static_cast<Eigen::Index>(j - start)) = 1.0;
        sum += x_total(order[j], order[j]).real();
      }
      s.value = sum / static_cast<double>(i - start);
      out.push_back(std::move(s));
      start = i;
    }
    return out;
  }
  const auto spec = hermitian_spectrum(x_total);
  Eigen::Index end = n;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (i > 0 && spec.values(i - 1) - spec.values(i) <= kSectorGap) continue;
    ChargeSector s;
    s.basis = spec.vectors.middleCols(i, end - i);
    s.value = spec.values.segment(i, end - i).mean();
    out.push_back(std::move(s));
    end = i;
  }
  return out;
}

Matrix sample_block_haar(const std::vector<ChargeSector>& sectors, Rng& rng) {
  require(!sectors.empty(), ErrorCode::kInvalidArgument, "sample_block_haar: no sectors");
  const auto n = sectors.front().basis.rows();
  Matrix u = Matrix::Zero(n, n);
  std::size_t covered = 0;
  for (const auto& s : sectors) {
    const Matrix block = haar_unitary(s.dim(), rng);
    u.noalias() += s.basis * block * s.basis.adjoint();
    covered += s.dim();
  }
  require(covered == static_cast<std::size_t>(n), ErrorCode::kInvalidArgument,
          "sample_block_haar: sectors are not complete");
  return u;
}

Matrix sample_block_haar(const std::vector<ChargeSector>& sectors, std::uint64_t seed) {
  Rng rng(seed);
  return sample_block_haar(sectors, rng);
}

double covariance_check(const QuantumChannel& ch, const Matrix& x_in, const Matrix& x_out, int grid) {
  require_square(x_in, ch.input.total_dim(), "covariance_check input charge");
  require_square(x_out, ch.output.total_dim(), "covariance_check output charge");
  const auto din = static_cast<Eigen::Index>(ch.input.total_dim());
  const auto spec_in = hermitian_spectrum(x_in);
  const auto spec_out = hermitian_spectrum(x_out);
  // Kraus operators expressed in the output charge eigenbasis, where the
  // output rotation is a diagonal phase
  std::vector<Matrix> kraus;
  for (const auto& k : kraus_operators(ch)) kraus.push_back(spec_out.vectors.adjoint() * k);
  const auto dout = spec_out.values.size();
  std::vector<Matrix> images;
  images.reserve(din * din);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index j = 0; j < din; ++j) {
      Matrix out = Matrix::Zero(dout, dout);
      for (const auto& k : kraus) out.noalias() += k.col(i) * k.col(j).adjoint();
      images.push_back(std::move(out));
    }
  double worst = 0.0;
  for (int g = 0; g < grid; ++g) {
    const double theta = 2.0 * std::numbers::pi * g / grid;
    Vector ph_in(din), ph_out(dout);
    for (Eigen::Index i = 0; i < din; ++i) ph_in(i) = std::polar(1.0, theta * spec_in.values(i));
    for (Eigen::Index i = 0; i < dout; ++i) ph_out(i) = std::polar(1.0, theta * spec_out.values(i));
    const Matrix vin = spec_in.vectors * ph_in.asDiagonal() * spec_in.vectors.adjoint();
    const Matrix phases = ph_out * ph_out.adjoint();
    std::vector<Matrix> kv;
    for (const auto& k : kraus) kv.push_back(k * vin);
    for (Eigen::Index i = 0; i < din; ++i)
      for (Eigen::Index j = 0; j < din; ++j) {
        Matrix diff = -phases.cwiseProduct(images[i * din + j]);
        for (const auto& m : kv) diff.noalias() += m.col(i) * m.col(j).adjoint();
        // Frobenius bounds the spectral norm; refine only above round-off
        const double frob = diff.norm();
        if (frob <= worst) continue;
        worst = frob <= 1e-12 ? frob : std::max(worst, spectral_norm(diff));
      }
  }
  return worst;
}

QuantumChannel erasure_noise(const SystemLayout& physical, const std::vector<Vector>& reset_states) {
  const auto n = physical.size();
  require(n >= 1, ErrorCode::kInvalidArgument, "erasure_noise: empty layout");
  require(reset_states.size() == n, ErrorCode::kInvalidArgument,
          "erasure_noise: need one reset state per subsystem");
  for (std::size_t i = 0; i < n; ++i)
    require(static_cast<std::size_t>(reset_states[i].size()) == physical.parts()[i].dim &&
                std::abs(reset_states[i].norm() - 1.0) <= 1e-10,
            ErrorCode::kInvalidArgument, "erasure_noise: invalid reset state for '" +
                                             physical.parts()[i].label + "'");
  SystemLayout output = single_system("C", n).concat(physical);
  std::vector<Matrix> kraus;
  const double w = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& part = physical.parts()[i];
    for (std::size_t b = 0; b < part.dim; ++b) {
      Vector bra = Vector::Zero(part.dim);
      bra(b) = 1.0;
      const Matrix local = reset_states[i] * bra.adjoint();
      Matrix reg = Matrix::Zero(n, 1);
      reg(i, 0) = w;
      kraus.push_back(kron(reg, embed(local, part.label, physical)));
    }
  }
  return channel_from_kraus(kraus, physical, output, "E");
}

CovariantErasure covariant_erasure_noise(const SystemLayout& physical,
                                         const std::vector<Matrix>& local_charges) {
  require(local_charges.size() == physical.size(), ErrorCode::kInvalidArgument,
          "covariant_erasure_noise: need one charge per subsystem");
  CovariantErasure out;
  for (std::size_t i = 0; i < physical.size(); ++i) {
    require_square(local_charges[i], physical.parts()[i].dim, "covariant_erasure_noise");
    const auto spec = hermitian_spectrum(local_charges[i]);
    const auto last = spec.values.size() - 1;
    Eigen::Index pick = last;
    for (Eigen::Index k = 0; k < spec.values.size(); ++k)
      if (std::abs(spec.values(k)) <= kSectorGap) {
        pick = k;
        break;
      }
    out.reset_states.push_back(spec.vectors.col(pick));
    out.shifts.push_back(std::abs(spec.values(pick)) <= kSectorGap ? 0.0 : spec.values(pick));
  }
  out.channel = erasure_noise(physical, out.reset_states);
  return out;
}

}  // namespace symrec
