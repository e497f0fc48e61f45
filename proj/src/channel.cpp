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

#include "symrec/channel.hpp"

#include <algorithm>
#include <cmath>

namespace symrec {

QuantumChannel make_channel(Matrix isometry, SystemLayout input, SystemLayout output,
                            SystemLayout environment) {
  require(static_cast<std::size_t>(isometry.cols()) == input.total_dim() &&
              static_cast<std::size_t>(isometry.rows()) == output.total_dim() * environment.total_dim(),
          ErrorCode::kDimensionMismatch, "channel: isometry shape does not match layouts");
  require(is_isometry(isometry), ErrorCode::kNotUnitary, "channel: Stinespring operator is not an isometry");
  return {std::move(isometry), std::move(input), std::move(output), std::move(environment)};
}

QuantumChannel channel_from_kraus(const std::vector<Matrix>& kraus, SystemLayout input,
                                  SystemLayout output, const std::string& env_label) {
  require(!kraus.empty(), ErrorCode::kInvalidArgument, "channel: empty Kraus list");
  const auto din = static_cast<Eigen::Index>(input.total_dim());
  const auto dout = static_cast<Eigen::Index>(output.total_dim());
  const auto ne = static_cast<Eigen::Index>(kraus.size());
  Matrix v = Matrix::Zero(dout * ne, din);
  for (Eigen::Index e = 0; e < ne; ++e) {
    const auto& k = kraus[e];
    require(k.rows() == dout && k.cols() == din, ErrorCode::kDimensionMismatch,
            "channel: Kraus operator shape does not match layouts");
    for (Eigen::Index o = 0; o < dout; ++o) v.row(o * ne + e) = k.row(o);
  }
  return make_channel(std::move(v), std::move(input), std::move(output),
                      single_system(env_label, kraus.size()));
}

QuantumChannel identity_channel(const SystemLayout& layout) {
  return make_channel(identity(layout.total_dim()), layout, layout, single_system("E", 1));
}

QuantumChannel unitary_channel(const Matrix& u, const SystemLayout& layout) {
  require_square(u, layout.total_dim(), "unitary_channel");
  require(is_unitary(u), ErrorCode::kNotUnitary, "unitary_channel: operator is not unitary");
  return make_channel(u, layout, layout, single_system("E", 1));
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  require(second.input.total_dim() == first.output.total_dim(), ErrorCode::kDimensionMismatch,
          "compose: intermediate dimensions differ");
  const auto e1 = first.environment.total_dim();
  const Matrix v = kron(second.isometry, identity(e1)) * first.isometry;
  return make_channel(v, first.input, second.output,
                      single_system("E", second.environment.total_dim() * e1));
}

std::vector<Matrix> kraus_operators(const QuantumChannel& ch) {
  const auto dout = static_cast<Eigen::Index>(ch.output.total_dim());
  const auto ne = static_cast<Eigen::Index>(ch.environment.total_dim());
  std::vector<Matrix> out;
  out.reserve(ne);
  for (Eigen::Index e = 0; e < ne; ++e) {
    Matrix k(dout, ch.isometry.cols());
    for (Eigen::Index o = 0; o < dout; ++o) k.row(o) = ch.isometry.row(o * ne + e);
    out.push_back(std::move(k));
  }
  return out;
}

Matrix apply_map(const QuantumChannel& ch, const Matrix& rho) {
  require_square(rho, ch.input.total_dim(), "apply_map");
  const auto dout = static_cast<Eigen::Index>(ch.output.total_dim());
  Matrix out = Matrix::Zero(dout, dout);
  for (const auto& k : kraus_operators(ch)) out.noalias() += k * rho * k.adjoint();
  return out;
}

Matrix adjoint_map(const QuantumChannel& ch, const Matrix& observable) {
  require_square(observable, ch.output.total_dim(), "adjoint_map");
  const auto din = static_cast<Eigen::Index>(ch.input.total_dim());
  Matrix out = Matrix::Zero(din, din);
  for (const auto& k : kraus_operators(ch)) out.noalias() += k.adjoint() * observable * k;
  return out;
}

Matrix complementary_map(const QuantumChannel& ch, const Matrix& rho) {
  require_square(rho, ch.input.total_dim(), "complementary_map");
  const Matrix full = ch.isometry * rho * ch.isometry.adjoint();
  const auto layout = ch.output.concat(ch.environment);
  std::vector<std::string> keep;
  for (const auto& p : ch.environment.parts()) keep.push_back(p.label);
  return partial_trace(full, layout, keep);
}

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho,
                            const std::vector<std::string>& spectators) {
  const auto& layout = rho.layout;
  require(layout.size() == ch.input.size() + spectators.size(), ErrorCode::kDimensionMismatch,
          "apply_channel: layout is not input plus spectators");
  std::vector<std::size_t> perm;
  for (const auto& p : ch.input.parts()) {
    const auto idx = layout.index_of(p.label);
    require(layout.parts()[idx].dim == p.dim, ErrorCode::kDimensionMismatch,
            "apply_channel: dimension mismatch on '" + p.label + "'");
    perm.push_back(idx);
  }
  std::vector<Subsystem> spectator_parts;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (std::find(perm.begin(), perm.end(), i) != perm.end()) continue;
    require(std::find(spectators.begin(), spectators.end(), layout.parts()[i].label) != spectators.end(),
            ErrorCode::kUnknownLabel, "apply_channel: '" + layout.parts()[i].label + "' is neither input nor spectator");
    perm.push_back(i);
    spectator_parts.push_back(layout.parts()[i]);
  }
  const auto dims = layout.dims();
  const Matrix ordered = permute_subsystems(rho.matrix, dims, perm);
  std::size_t ds = 1;
  for (const auto& p : spectator_parts) ds *= p.dim;
  const auto dout = ch.output.total_dim();
  require_within_cap(dout * ds, "apply_channel");
  Matrix out = Matrix::Zero(dout * ds, dout * ds);
  const Matrix is = identity(ds);
  for (const auto& k : kraus_operators(ch)) {
    const Matrix big = kron(k, is);
    out.noalias() += big * ordered * big.adjoint();
  }
  return {hermitian_part(out), ch.output.concat(SystemLayout(std::move(spectator_parts)))};
}

}  // namespace symrec
