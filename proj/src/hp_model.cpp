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

#include "symrec/hp_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "symrec/parallel.hpp"

namespace symrec {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t pow2(int q) { return std::size_t{1} << q; }

int weight(std::size_t i) { return std::popcount(i); }

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return std::round(out);
}

RealVector psi_weights(const HPConfig& c) {
  const auto d = pow2(c.k);
  RealVector p = RealVector::Zero(static_cast<Eigen::Index>(d));
  if (c.psi == PsiKind::kMaxEntangled) {
    p.setConstant(1.0 / static_cast<double>(d));
    return p;
  }
  const auto levels = c.levels.empty() ? default_levels(c.k) : c.levels;
  for (std::size_t i = 0; i < d; ++i) {
    const int w = weight(i);
    if (std::find(levels.begin(), levels.end(), w) != levels.end())
      p(static_cast<Eigen::Index>(i)) = 1.0 / (static_cast<double>(levels.size()) * binomial(c.k, w));
  }
  return p;
}

RealVector phi_weights(const HPConfig& c) {
  const auto d = pow2(c.N);
  RealVector p = RealVector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const int w = weight(i);
    if (c.phi == PhiKind::kMaxEntangled || (w >= c.s_window && w <= c.N - c.s_window))
      p(static_cast<Eigen::Index>(i)) = 1.0;
  }
  return p / p.sum();
}

PureState diagonal_purification(const RealVector& p, const std::string& label, const std::string& ref) {
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) support.push_back(i);
  const auto r = static_cast<Eigen::Index>(support.size());
  Vector v = Vector::Zero(p.size() * r);
  for (Eigen::Index j = 0; j < r; ++j) v(support[j] * r + j) = std::sqrt(p(support[j]));
  return make_pure(v, SystemLayout({{label, static_cast<std::size_t>(p.size())},
                                    {ref, static_cast<std::size_t>(r)}}));
}

std::vector<Eigen::Index> support_of(const RealVector& p) {
  std::vector<Eigen::Index> s;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) s.push_back(i);
  return s;
}

ChargeSpec hp_charges(const HPConfig& c) {
  const int n = c.N + c.k;
  const SystemLayout in({{labels::kA, pow2(c.k)}, {labels::kB, pow2(c.N)}});
  const SystemLayout out({{labels::kAp, pow2(c.l)}, {labels::kBp, pow2(n - c.l)}});
  return make_charge_spec({{labels::kA, qubit_charge(c.k)},
                           {labels::kB, qubit_charge(c.N)},
                           {labels::kAp, qubit_charge(c.l)},
                           {labels::kBp, qubit_charge(n - c.l)}},
                          in, out);
}

ScramblingInstance assemble(const HPConfig& c, Matrix u) {
  return make_instance(diagonal_purification(psi_weights(c), labels::kA, labels::kRA),
                       diagonal_purification(phi_weights(c), labels::kB, labels::kRB), std::move(u),
                       SystemLayout({{labels::kAp, pow2(c.l)}, {labels::kBp, pow2(c.N + c.k - c.l)}}),
                       hp_charges(c));
}

struct Heisenberg {
  Matrix x_ap;     // E*(X_A') on A
  Matrix target;   // E*(X_A') - (X_A + x_B) l / (N + k)
  double x_B = 0.0;
  double ratio = 0.0;
};

Heisenberg heisenberg(const ScramblingInstance& inst, const HPConfig& c) {
  Heisenberg h;
  h.ratio = static_cast<double>(c.l) / (c.N + c.k);
  h.x_B = expectation(rho_B(inst), qubit_charge(c.N));
  h.x_ap = adjoint_map(induced_channel(inst), qubit_charge(c.l));
  h.target = h.x_ap - h.ratio * (qubit_charge(c.k) + h.x_B * identity(inst.dim_A()));
  return h;
}

}  // namespace

std::vector<int> default_levels(int k) {
  if (k % 4 == 0) return {3 * k / 4, k / 4};
  return {0, k};
}

void validate_config(const HPConfig& c) {
  require(c.k >= 1 && c.N >= 1, ErrorCode::kConfig, "hp: k and N must be positive");
  require(c.l >= 0 && c.l <= c.N + c.k, ErrorCode::kConfig, "hp: l must satisfy 0 <= l <= N + k");
  require(c.s_window >= 0, ErrorCode::kConfig, "hp: sector window must be non-negative");
  require(c.samples >= 1, ErrorCode::kConfig, "hp: samples must be positive");
  require(c.probes >= 0, ErrorCode::kConfig, "hp: probes must be non-negative");
  require(2 * c.s_window <= c.N + c.k, ErrorCode::kConfig, "hp: empty sector window");
  if (c.phi == PhiKind::kSectorTruncated)
    require(2 * c.s_window <= c.N, ErrorCode::kConfig, "hp: empty truncation window on B");
  if (c.psi == PsiKind::kEigenMixture) {
    const auto levels = c.levels.empty() ? default_levels(c.k) : c.levels;
    std::set<int> seen;
    for (int v : levels) {
      require(v >= 0 && v <= c.k, ErrorCode::kConfig, "hp: eigen-mixture level outside [0, k]");
      require(seen.insert(v).second, ErrorCode::kConfig, "hp: repeated eigen-mixture level");
    }
  }
  require_within_cap(pow2(c.N + c.k), "hp: dim(AB)");
}

Matrix qubit_charge(int qubits) {
  const auto d = pow2(qubits);
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = weight(i);
  return x;
}

ScramblingInstance build_hp_instance(const HPConfig& c, Rng& rng) {
  validate_config(c);
  const auto sectors = charge_sectors(qubit_charge(c.N + c.k));
  return assemble(c, sample_block_haar(sectors, rng));
}

ScramblingInstance build_hp_instance(const HPConfig& c) {
  Rng rng(c.seed);
  return build_hp_instance(c, rng);
}

EquidistributionSample equidistribution_sample(const ScramblingInstance& inst, const HPConfig& c) {
  const auto h = heisenberg(inst, c);
  const Matrix ra = rho_A(inst);
  const auto spec = hermitian_spectrum(ra);
  Eigen::Index r = 0;
  while (r < spec.values.size() && spec.values(r) > kRankCutoff) ++r;
  const Matrix q = spec.vectors.leftCols(r);
  const auto comp = hermitian_spectrum(hermitian_part(q.adjoint() * h.target * q));
  EquidistributionSample s;
  s.sup_deviation = comp.values.cwiseAbs().maxCoeff();
  const double m = moments(ra, qubit_charge(c.k)).mean_deviation;
  const double mg = m * (1.0 - h.ratio);
  s.epsilon_hat = mg > 1e-12 ? 2.0 * s.sup_deviation / mg : kNaN;
  s.conservation = conservation_check(inst.U, inst.charges).spread_DZ;
  const int nbp = c.N + c.k - c.l;
  const Matrix x_bp = adjoint_map(instance_channel(inst, {labels::kBp}), qubit_charge(nbp));
  s.bookkeeping = spectral_norm(h.x_ap + x_bp - qubit_charge(c.k) - h.x_B * identity(inst.dim_A()));
  return s;
}

EquidistributionReport equidistribution_check(const HPConfig& c) {
  validate_config(c);
  EquidistributionReport rep;
  const auto pa = psi_weights(c);
  const auto support = support_of(pa);
  const Matrix xa = qubit_charge(c.k);
  Matrix ra = Matrix::Zero(pa.size(), pa.size());
  ra.diagonal() = pa.cast<cplx>();
  rep.M = moments(ra, xa).mean_deviation;
  rep.gamma = 1.0 - static_cast<double>(c.l) / (c.N + c.k);
  rep.normalized = rep.M * rep.gamma > 1e-12;
  const auto n = static_cast<std::size_t>(c.samples);
  rep.samples.resize(n);
  std::vector<std::vector<ProbeRow>> rows(n);
  parallel_for(n, [&](std::size_t i) {
    Rng rng(derive_seed(c.seed, i));
    const auto inst = build_hp_instance(c, rng);
    rep.samples[i] = equidistribution_sample(inst, c);
    const auto h = heisenberg(inst, c);
    std::vector<std::pair<bool, Vector>> probes;
    for (auto idx : support) {
      Vector e = Vector::Zero(pa.size());
      e(idx) = 1.0;
      probes.emplace_back(true, e);
    }
    Rng prng(derive_seed(c.seed ^ 0x9e3779b97f4a7c15ULL, i));
    for (int p = 0; p < c.probes; ++p) {
      const Vector z = random_pure(support.size(), prng);
      Vector e = Vector::Zero(pa.size());
      for (std::size_t j = 0; j < support.size(); ++j) e(support[j]) = z(static_cast<Eigen::Index>(j));
      probes.emplace_back(false, e);
    }
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const Vector& v = probes[p].second;
      ProbeRow row;
      row.sample = static_cast<int>(i);
      row.probe = static_cast<int>(p);
      row.eigenstate = probes[p].first;
      row.x_A = v.dot(xa * v).real();
      row.x_Ap = v.dot(h.x_ap * v).real();
      row.predicted = (row.x_A + h.x_B) * h.ratio;
      row.deviation = std::abs(row.x_Ap - row.predicted);
      row.normalized = rep.normalized ? 2.0 * row.deviation / (rep.M * rep.gamma) : kNaN;
      rows[i].push_back(row);
    }
  });
  rep.x_B = expectation(Matrix(phi_weights(c).cast<cplx>().asDiagonal()), qubit_charge(c.N));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = rep.samples[i];
    rep.sup_deviation_mean += s.sup_deviation / static_cast<double>(n);
    if (rep.normalized) {
      rep.epsilon_hat += s.epsilon_hat / static_cast<double>(n);
      rep.epsilon_hat_max = std::max(rep.epsilon_hat_max, s.epsilon_hat);
    }
    rep.probes.insert(rep.probes.end(), rows[i].begin(), rows[i].end());
  }
  if (!rep.normalized) rep.epsilon_hat = rep.epsilon_hat_max = kNaN;
  return rep;
}

double concentration_bound(int n_total, int s, int l, double t) {
  if (l == 0) return 0.0;
  const double c = binomial(n_total, s);
  return 2.0 * std::exp(-(c - 2.0) * t * t / (48.0 * l * l));
}

ConcentrationReport concentration_sweep(const HPConfig& c, const std::vector<double>& t_grid) {
  validate_config(c);
  const int n_total = c.N + c.k;
  const auto pa = psi_weights(c);
  const auto pb = phi_weights(c);
  const auto sa = support_of(pa), sb = support_of(pb);
  int lo = n_total, hi = 0;
  for (auto a : sa)
    for (auto b : sb) {
      const int w = weight(static_cast<std::size_t>(a)) + weight(static_cast<std::size_t>(b));
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  require(lo >= c.s_window && hi <= n_total - c.s_window, ErrorCode::kConfig,
          "concentration_sweep: support of rho (x) rho_B leaves the sector window");
  for (double t : t_grid) require(t > 0.0, ErrorCode::kConfig, "concentration_sweep: t must be positive");

  // probe 0 is rho_A itself, then its X_A eigenstates
  std::vector<RealVector> probes{pa};
  for (auto a : sa) {
    RealVector e = RealVector::Zero(pa.size());
    e(a) = 1.0;
    probes.push_back(e);
  }
  const Matrix xa = qubit_charge(c.k);
  const double x_b = pb.dot(qubit_charge(c.N).diagonal().real());
  const double ratio = static_cast<double>(c.l) / n_total;
  const auto n = static_cast<std::size_t>(c.samples);
  std::vector<std::vector<double>> x_ap(n);
  parallel_for(n, [&](std::size_t i) {
    Rng rng(derive_seed(c.seed, i));
    const auto inst = build_hp_instance(c, rng);
    const Matrix e = adjoint_map(induced_channel(inst), qubit_charge(c.l));
    for (const auto& p : probes) x_ap[i].push_back(p.dot(e.diagonal().real()));
  });

  ConcentrationReport rep;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double pred = (probes[p].dot(xa.diagonal().real()) + x_b) * ratio;
    double mean = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x_ap[i][p] / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) sq += (x_ap[i][p] - mean) * (x_ap[i][p] - mean);
    rep.predicted.push_back(pred);
    rep.mean_x_Ap.push_back(mean);
    rep.mean_se.push_back(n > 1 ? std::sqrt(sq / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0);
    for (double t : t_grid) {
      TailRow row;
      row.probe = static_cast<int>(p);
      row.t = t;
      row.bound = concentration_bound(n_total, c.s_window, c.l, t);
      row.samples = static_cast<int>(n);
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(x_ap[i][p] - pred) > t) ++row.exceed;
      row.frequency = static_cast<double>(row.exceed) / static_cast<double>(n);
      const double q = std::min(row.bound, 1.0);
      row.se = std::sqrt(q * (1.0 - q) / static_cast<double>(n));
      row.pass = row.frequency <= row.bound + 3.0 * row.se;
      rep.pass = rep.pass && row.pass;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

FoggyReport foggy_mirror_experiment(const HPConfig& base, const std::vector<int>& ls_in, bool control) {
  auto ls = ls_in;
  if (ls.empty())
    for (int l = 1; l <= base.N + base.k; ++l) ls.push_back(l);
  std::vector<HPConfig> configs;
  for (int l : ls) {
    HPConfig c = base;
    c.l = l;
    validate_config(c);
    configs.push_back(c);
  }
  const auto samples = static_cast<std::size_t>(base.samples);
  std::vector<FoggyRow> rows(configs.size() * samples);
  parallel_for(rows.size(), [&](std::size_t idx) {
    const auto& c = configs[idx / samples];
    const auto sample = idx % samples;
    const auto seed = derive_seed(derive_seed(base.seed, static_cast<std::uint64_t>(c.l)), sample);
    Rng rng(seed);
    const auto inst = build_hp_instance(c, rng);
    FoggyRow row;
    row.l = c.l;
    row.sample = static_cast<int>(sample);
    row.trivial = c.l >= c.N + c.k;
    row.gamma = 1.0 - static_cast<double>(c.l) / (c.N + c.k);
    row.M = moments(rho_A(inst), qubit_charge(c.k)).mean_deviation;
    row.F = 4.0 * variance(rho_B(inst), qubit_charge(c.N));
    const auto eq = equidistribution_sample(inst, c);
    row.epsilon_hat = eq.epsilon_hat;
    const double eps = std::isnan(eq.epsilon_hat) ? 0.0 : eq.epsilon_hat;
    const auto rec = optimize_recovery(inst, RecoveryMode::kWithRB, derive_seed(seed, 1));
    row.delta_up = rec.achieved_error;
    const DeltaInterval delta{0.0, row.delta_up};
    const auto hp = hp_bounds({c.k, c.N, c.l, row.M, eps, row.F}, delta);
    row.hp13 = hp[0].lhs;
    row.hp14 = hp[1].lhs;
    row.hp16 = hp[2].lhs;
    row.epsilon_free = row.M / (2.0 * (c.N + 2.0 * c.k));
    const auto terms = instance_terms(inst);
    const auto siq1 = evaluate_bound(BoundKind::kSIQ1, terms, delta, {0.0, 1.0});
    const auto siq2 = evaluate_bound(BoundKind::kSIQ2, terms, delta, {0.0, 1.0});
    row.siq1 = siq1.lhs;
    row.siq2 = siq2.lhs;
    row.pass = siq1.satisfied && siq2.satisfied;
    for (const auto& b : hp) row.pass = row.pass && b.satisfied;
    row.reference = std::pow(2.0, -(c.l - c.k));
    row.control_delta = kNaN;
    if (control) {
      Rng crng(derive_seed(seed, 2));
      const auto haar = assemble(c, haar_unitary(pow2(c.N + c.k), crng));
      row.control_delta = optimize_recovery(haar, RecoveryMode::kWithRB, derive_seed(seed, 3)).achieved_error;
    }
    rows[idx] = row;
  });
  FoggyReport rep;
  rep.rows = std::move(rows);
  for (const auto& r : rep.rows) {
    rep.pass = rep.pass && r.pass;
    rep.l_independent = rep.l_independent && r.epsilon_free == rep.rows.front().epsilon_free;
  }
  return rep;
}

}  // namespace symrec
