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

#include "symrec/qec.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include <nlohmann/json.hpp>

namespace symrec {
namespace {

using nlohmann::json;

Vector basis_vector(std::size_t dim, std::size_t i) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

// Sum of basis states given as bit strings, normalised.
Vector bits(std::initializer_list<std::pair<const char*, double>> terms) {
  std::size_t n = 0;
  for (const auto& t : terms) n = std::strlen(t.first);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  for (const auto& [s, c] : terms) v(static_cast<Eigen::Index>(std::stoul(s, nullptr, 2))) += c;
  return v / v.norm();
}

SystemLayout qubits(int n, const std::string& prefix) {
  std::vector<Subsystem> parts;
  for (int i = 1; i <= n; ++i) parts.push_back({prefix + std::to_string(i), 2});
  return SystemLayout(std::move(parts));
}

Matrix diag01() {
  Matrix x = Matrix::Zero(2, 2);
  x(1, 1) = 1.0;
  return x;
}

CodeSpec qubit_code(std::string name, const std::vector<Vector>& words, Matrix x_logical) {
  const int n = static_cast<int>(std::log2(static_cast<double>(words.front().size())) + 0.5);
  Matrix iso(words.front().size(), static_cast<Eigen::Index>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i) iso.col(static_cast<Eigen::Index>(i)) = words[i];
  return make_code_spec(std::move(name), iso, single_system("L", words.size()), qubits(n, "P"),
                        std::move(x_logical), std::vector<Matrix>(static_cast<std::size_t>(n), diag01()));
}

Matrix parse_matrix(const json& j, const std::string& what) {
  if (j.is_object() && j.contains("diag")) {
    const auto d = j.at("diag").get<std::vector<double>>();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return m;
  }
  const json& re = j.is_object() ? j.at("real") : j;
  const auto rows = re.get<std::vector<std::vector<double>>>();
  require(!rows.empty(), ErrorCode::kConfig, what + ": empty matrix");
  std::vector<std::vector<double>> ims;
  if (j.is_object() && j.contains("imag")) ims = j.at("imag").get<std::vector<std::vector<double>>>();
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == rows.front().size(), ErrorCode::kConfig, what + ": ragged rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const double im = ims.empty() ? 0.0 : ims.at(r).at(c);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cplx(rows[r][c], im);
    }
  }
  require(ims.empty() || ims.size() == rows.size(), ErrorCode::kConfig, what + ": real/imag shapes differ");
  return m;
}

json matrix_json(const Matrix& m) {
  std::vector<std::vector<double>> re(m.rows(), std::vector<double>(m.cols()));
  auto im = re;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re[r][c] = m(r, c).real();
      im[r][c] = m(r, c).imag();
    }
  return json{{"real", re}, {"imag", im}};
}

SystemLayout parse_layout(const json& j) {
  std::vector<Subsystem> parts;
  for (const auto& p : j) parts.push_back({p.at("label").get<std::string>(), p.at("dim").get<std::size_t>()});
  return SystemLayout(std::move(parts));
}

json layout_json(const SystemLayout& l) {
  json out = json::array();
  for (const auto& p : l.parts()) out.push_back({{"label", p.label}, {"dim", p.dim}});
  return out;
}

// Unitary mapping `from` to `to`, a phased Householder reflection.
Matrix transport(const Vector& from, const Vector& to) {
  const cplx overlap = from.dot(to);
  const cplx phase = std::abs(overlap) > 1e-15 ? overlap / std::abs(overlap) : cplx(1.0);
  const Vector aligned = to / phase;
  const Vector u = from - aligned;
  const auto d = from.size();
  if (u.norm() < 1e-15) return phase * identity(static_cast<std::size_t>(d));
  const Vector n = u / u.norm();
  return phase * (identity(static_cast<std::size_t>(d)) - 2.0 * n * n.adjoint());
}

double loop_error(const QuantumChannel& loop, std::uint64_t seed) {
  Rng rng(seed);
  const auto worst = worst_case_input(kraus_operators(loop), rng, 8);
  return purified_distance_from_fidelity(std::sqrt(std::max(0.0, worst.min_fidelity2)));
}

}  // namespace

CodeSpec make_code_spec(std::string name, const Matrix& isometry, SystemLayout logical, SystemLayout physical,
                        Matrix x_logical, std::vector<Matrix> x_physical) {
  require(x_physical.size() == physical.size(), ErrorCode::kConfig,
          "code: need one charge per physical subsystem");
  require_square(x_logical, logical.total_dim(), "code: logical charge");
  require_hermitian(x_logical, "code: logical charge");
  for (std::size_t i = 0; i < x_physical.size(); ++i) {
    require_square(x_physical[i], physical.parts()[i].dim, "code: physical charge");
    require_hermitian(x_physical[i], "code: physical charge");
  }
  CodeSpec s;
  s.name = std::move(name);
  s.code = make_channel(isometry, std::move(logical), std::move(physical), SystemLayout());
  s.x_logical = std::move(x_logical);
  s.x_physical = std::move(x_physical);
  return s;
}

CodeSpec phase_covariant_code(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double w = 1.0 / std::sqrt(3.0), h = 1.0 / std::sqrt(2.0);
  const Vector zero = bits({{"001", c * w}, {"010", c * w - s * h}, {"100", c * w + s * h}});
  const Vector one = bits({{"110", c * w}, {"101", c * w - s * h}, {"011", c * w + s * h}});
  return qubit_code("phase:" + std::to_string(theta), {zero, one}, diag01());
}

CodeSpec repetition_code() {
  return qubit_code("repetition", {bits({{"000", 1.0}}), bits({{"111", 1.0}})}, diag01());
}

CodeSpec four_two_two_code() {
  return qubit_code("kl422", {bits({{"0011", 1.0}, {"1100", 1.0}}), bits({{"0101", 1.0}, {"1010", 1.0}})},
                    Matrix::Zero(2, 2));
}

CodeSpec trivial_code() { return qubit_code("trivial", {bits({{"0", 1.0}}), bits({{"1", 1.0}})}, diag01()); }

CodeSpec builtin_code(const std::string& name) {
  if (name.rfind("phase:", 0) == 0) {
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(name.substr(6), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used > 0 && used == name.size() - 6, ErrorCode::kConfig, "unknown builtin code '" + name + "'");
    return phase_covariant_code(theta);
  }
  if (name == "repetition") return repetition_code();
  if (name == "kl422") return four_two_two_code();
  if (name == "trivial") return trivial_code();
  fail(ErrorCode::kConfig, "unknown builtin code '" + name + "'");
}

CodeSpec parse_code_json(const std::string& text) {
  try {
    const auto j = json::parse(text);
    std::vector<Matrix> xp;
    for (const auto& m : j.at("charges").at("physical")) xp.push_back(parse_matrix(m, "physical charge"));
    return make_code_spec(j.value("name", std::string("code")), parse_matrix(j.at("isometry"), "isometry"),
                          parse_layout(j.at("logical")), parse_layout(j.at("physical")),
                          parse_matrix(j.at("charges").at("logical"), "logical charge"), std::move(xp));
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfig, std::string("code file: ") + e.what());
  }
}

std::string code_to_json(const CodeSpec& s) {
  json xp = json::array();
  for (const auto& m : s.x_physical) xp.push_back(matrix_json(m));
  const json j{{"name", s.name},
               {"logical", layout_json(s.code.input)},
               {"physical", layout_json(s.code.output)},
               {"isometry", matrix_json(s.code.isometry)},
               {"charges", {{"logical", matrix_json(s.x_logical)}, {"physical", xp}}}};
  return j.dump(2);
}

Matrix erasure_equivalence(const SystemLayout& physical, const std::vector<Vector>& from,
                           const std::vector<Vector>& to) {
  const auto n = physical.size();
  const auto dp = static_cast<Eigen::Index>(physical.total_dim());
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(n) * dp, static_cast<Eigen::Index>(n) * dp);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = static_cast<Eigen::Index>(i) * dp;
    w.block(b, b, dp, dp) = embed(transport(from[i], to[i]), physical.parts()[i].label, physical);
  }
  return w;
}

AuditReport audit_code(const CodeSpec& spec, int trials, std::uint64_t seed) {
  require(trials >= 1, ErrorCode::kConfig, "audit_code: trials must be positive");
  const auto& physical = spec.code.output;
  AuditReport r;
  r.name = spec.name;
  r.N = static_cast<int>(physical.size());
  std::map<std::string, Matrix> local;
  for (std::size_t i = 0; i < physical.size(); ++i) local[physical.parts()[i].label] = spec.x_physical[i];
  const Matrix xp = total_charge(local, physical);
  r.covariance_deviation = covariance_check(spec.code, spec.x_logical, xp);
  r.applicable = r.covariance_deviation <= kCovarianceTol;
  r.D_XL = operator_spread(spec.x_logical);
  for (const auto& x : spec.x_physical) r.D_max = std::max(r.D_max, operator_spread(x));
  r.bound = eastin_knill_bound(r.D_XL, r.D_max, r.N);

  const auto noise = covariant_erasure_noise(physical, spec.x_physical);
  r.shifts = noise.shifts;
  const auto& nv = noise.channel.isometry;
  r.noise_tp_defect = (nv.adjoint() * nv - identity(static_cast<std::size_t>(nv.cols()))).cwiseAbs().maxCoeff();
  const Matrix xout = kron(identity(physical.size()), xp);
  r.noise_covariance = covariance_check(noise.channel, xp, xout);

  CodeErrorReport best;
  for (int t = 0; t < trials; ++t) {
    auto rep = code_error(spec.code, noise.channel, derive_seed(seed, static_cast<std::uint64_t>(t)));
    r.trial_estimates.push_back(rep.estimate);
    if (t == 0 || rep.estimate < best.estimate) best = std::move(rep);
  }
  r.delta_C = best.estimate;
  r.delta_C_max_entangled = best.maximally_entangled;

  // W-equivalence with erasure onto uniform superpositions
  std::vector<Vector> plain_reset;
  for (const auto& p : physical.parts())
    plain_reset.push_back(Vector::Constant(static_cast<Eigen::Index>(p.dim), 1.0 / std::sqrt(static_cast<double>(p.dim))));
  const auto plain = erasure_noise(physical, plain_reset);
  const Matrix w = erasure_equivalence(physical, noise.reset_states, plain_reset);
  const auto tilde_loop = compose(noise.channel, spec.code);
  const auto plain_loop = compose(plain, spec.code);
  const auto dl = spec.code.input.total_dim();
  for (std::size_t i = 0; i < dl; ++i)
    for (std::size_t j = 0; j < dl; ++j) {
      const Matrix e = basis_vector(dl, i) * basis_vector(dl, j).adjoint();
      const Matrix diff = apply_map(plain_loop, e) - w * apply_map(tilde_loop, e) * w.adjoint();
      r.w_defect = std::max(r.w_defect, diff.cwiseAbs().maxCoeff());
    }
  const auto undo = unitary_channel(w.adjoint(), plain.output);
  const auto eval_seed = derive_seed(seed, 0x5eed);
  const double tilde_value = loop_error(compose(best.recovery, tilde_loop), eval_seed);
  r.delta_C_plain = loop_error(compose(compose(best.recovery, undo), plain_loop), eval_seed);
  // compared as D^2 = 1 - F^2
  r.w_equivalent = r.w_defect <= 1e-8 &&
                   std::abs(r.delta_C_plain * r.delta_C_plain - tilde_value * tilde_value) <= 1e-8;
  r.consistent = r.bound.value <= r.delta_C + kBoundSlack;
  return r;
}

}  // namespace symrec
