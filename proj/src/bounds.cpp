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

#include "symrec/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace symrec {
namespace {

constexpr std::array<std::pair<BoundKind, const char*>, 18> kKindNames{{
    {BoundKind::kSIQ1, "SIQ1"},   {BoundKind::kSIQ2, "SIQ2"},     {BoundKind::kSIQ1P, "SIQ1P"},
    {BoundKind::kRSIQ1, "RSIQ1"}, {BoundKind::kRSIQ2, "RSIQ2"},   {BoundKind::kVSIQ1, "VSIQ1"},
    {BoundKind::kVSIQ2, "VSIQ2"}, {BoundKind::kSIQV1, "SIQV1"},   {BoundKind::kSIQV2, "SIQV2"},
    {BoundKind::kRSIQV1, "RSIQV1"}, {BoundKind::kRSIQV2, "RSIQV2"}, {BoundKind::kMSIQ1, "MSIQ1"},
    {BoundKind::kMSIQ2, "MSIQ2"}, {BoundKind::kMSIQ1P, "MSIQ1P"}, {BoundKind::kEK17, "EK17"},
    {BoundKind::kHP13, "HP13"},   {BoundKind::kHP14, "HP14"},     {BoundKind::kHP16, "HP16"},
}};

std::string canonical(std::string s) {
  std::string out;
  for (char c : s)
    if (c != '-' && c != '_' && c != '\'' && c != ' ') out.push_back(static_cast<char>(std::toupper(c)));
  return out;
}

constexpr double kNoiseFloor = 1e-12;

double ratio(double num, double den) {
  if (den > kNoiseFloor) return num / den;
  if (num <= kNoiseFloor) return std::min(num, 0.0);
  return std::numeric_limits<double>::infinity();
}

struct TermStats {
  std::vector<double> deltas;
  double single = 0.0;
  double sum = 0.0;
};

TermStats term_stats(const Decomposition& d, const Matrix& kp) {
  TermStats s;
  for (const auto& [p, rho] : d) {
    const double delta = expectation(rho, kp);
    s.deltas.push_back(delta);
    s.single = std::max(s.single, p * std::abs(delta));
    s.sum += p * std::abs(delta);
  }
  return s;
}

Decomposition povm_decomposition(const Matrix& sq, const std::vector<Matrix>& effects) {
  Decomposition d;
  for (const auto& e : effects) {
    const Matrix part = hermitian_part(sq * e * sq);
    const double p = part.trace().real();
    if (p <= 1e-14) continue;
    d.emplace_back(p, part / p);
  }
  double total = 0.0;
  for (const auto& t : d) total += t.first;
  for (auto& t : d) t.first /= total;
  return d;
}

// Makes 0 <= E <= I satisfy Tr(rho E) = 1/2.
Matrix balance_effect(const Matrix& e, const Matrix& rho) {
  const double w = expectation(rho, e);
  const Matrix id = identity(e.rows());
  if (w >= 0.5) return w > 0.0 ? Matrix(e / (2.0 * w)) : e;
  const double wc = 1.0 - w;
  return id - (id - e) / (2.0 * wc);
}

Decomposition equal_split(const Matrix& sq, const Matrix& e) {
  const Matrix id = identity(e.rows());
  return {{0.5, hermitian_part(2.0 * sq * e * sq)}, {0.5, hermitian_part(2.0 * sq * (id - e) * sq)}};
}

double a_two_of(const Decomposition& split, const Matrix& kp) {
  const auto s = term_stats(split, kp);
  return s.sum;
}

Matrix random_effect(std::size_t d, Rng& rng) {
  const Matrix v = haar_unitary(d, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector ev(d);
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = u(rng);
  return v * ev.cast<cplx>().asDiagonal() * v.adjoint();
}

Matrix clip_effect(const Matrix& e) {
  const auto spec = hermitian_spectrum(hermitian_part(e));
  RealVector ev = spec.values.cwiseMax(0.0).cwiseMin(1.0);
  return spec.vectors * ev.cast<cplx>().asDiagonal() * spec.vectors.adjoint();
}

void absorb(FluctuationReport& r, const Decomposition& d, const Matrix& kp) {
  const auto s = term_stats(d, kp);
  if (s.single > r.A_single) {
    r.A_single = s.single;
    r.witness_single = d;
  }
  if (s.sum > r.A_sum) {
    r.A_sum = s.sum;
    r.witness_sum = d;
  }
  for (double x : s.deltas) r.delta_max = std::max(r.delta_max, std::abs(x));
}

void absorb_two(FluctuationReport& r, const Decomposition& d, const Matrix& kp) {
  const double v = a_two_of(d, kp);
  if (v > r.A_two) {
    r.A_two = v;
    r.witness_two = d;
  }
  absorb(r, d, kp);
}

void spectral_strategy(FluctuationReport& r, const Matrix& rho, const Matrix& kp) {
  const auto n = rho.rows();
  const Matrix sq = psd_sqrt(rho);
  const Matrix kpp = hermitian_part(sq * kp * sq);
  const auto spec = hermitian_spectrum(kpp);
  Matrix eplus = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (spec.values(i) > 0.0) eplus += projector(spec.vectors.col(i));
  absorb(r, povm_decomposition(sq, {eplus, identity(n) - eplus}), kp);

  const auto rs = hermitian_spectrum(rho);
  const double cut = kRankCutoff * std::max(1.0, rs.values(0));
  Eigen::Index rank = 0;
  while (rank < n && rs.values(rank) > cut) ++rank;
  rank = std::max<Eigen::Index>(rank, 1);
  const Matrix bs = rs.vectors.leftCols(rank);
  const Matrix rho_s = hermitian_part(bs.adjoint() * rho * bs);
  const Matrix kpp_s = hermitian_part(bs.adjoint() * kpp * bs);
  const auto ks = hermitian_spectrum(hermitian_part(bs.adjoint() * kp * bs));
  r.delta_max = std::max(ks.values.cwiseAbs().maxCoeff(), r.delta_max);

  auto g = [&](double mu) {
    const auto s = hermitian_spectrum(hermitian_part(kpp_s - mu * rho_s));
    return s.values.cwiseMax(0.0).sum() + 0.5 * mu;
  };
  double lo = ks.values(rank - 1), hi = ks.values(0);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    if (g1 <= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - phi * (hi - lo);
      g1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + phi * (hi - lo);
      g2 = g(x2);
    }
  }
  const double mu = 0.5 * (lo + hi);
  r.A_two_upper = 2.0 * std::min({g(mu), g(lo), g(hi)});

  const auto hs = hermitian_spectrum(hermitian_part(kpp_s - mu * rho_s));
  const double tol = 1e-9 * std::max(1.0, hs.values.cwiseAbs().maxCoeff());
  Matrix pos = Matrix::Zero(rank, rank), zero = Matrix::Zero(rank, rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    if (hs.values(i) > tol) pos += projector(hs.vectors.col(i));
    else if (hs.values(i) >= -tol) zero += projector(hs.vectors.col(i));
  }
  const double a = expectation(rho_s, pos), b = a + expectation(rho_s, zero);
  Matrix e = pos;
  if (b - a > 0.0 && a <= 0.5 && b >= 0.5) e += ((0.5 - a) / (b - a)) * zero;
  e = balance_effect(e, rho_s);
  absorb_two(r, equal_split(sq, bs * e * bs.adjoint()), kp);
}

void eigen_strategy(FluctuationReport& r, const ScramblingInstance& inst, const Matrix& rho, const Matrix& kp) {
  const auto d = eigen_decomposition(inst);
  absorb(r, d, kp);
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t j = 0; j < d.size(); ++j) order.emplace_back(expectation(d[j].second, kp), j);
  std::sort(order.begin(), order.end(), [](auto x, auto y) { return x.first > y.first; });
  Matrix first = Matrix::Zero(rho.rows(), rho.cols());
  double filled = 0.0;
  for (const auto& [delta, j] : order) {
    if (filled >= 0.5) break;
    const double take = std::min(d[j].first, 0.5 - filled);
    first += take * d[j].second;
    filled += take;
  }
  absorb_two(r, {{0.5, hermitian_part(2.0 * first)}, {0.5, hermitian_part(2.0 * (rho - first))}}, kp);
}

void random_strategy(FluctuationReport& r, const Matrix& rho, const Matrix& kp, const FluctuationOptions& o) {
  Rng rng(o.seed);
  const auto n = static_cast<std::size_t>(rho.rows());
  const Matrix sq = psd_sqrt(rho);
  std::uniform_int_distribution<int> terms(2, std::max(2, o.max_terms));
  for (int e = 0; e < o.ensembles; ++e) {
    const int m = terms(rng);
    std::vector<Matrix> g;
    Matrix total = Matrix::Zero(n, n);
    for (int j = 0; j < m; ++j) {
      const Matrix x = ginibre(n, 1, rng);
      g.push_back(x * x.adjoint());
      total += g.back();
    }
    const Matrix inv = psd_inverse_sqrt(hermitian_part(total), 1e-14);
    std::vector<Matrix> effects;
    for (const auto& gj : g) effects.push_back(hermitian_part(inv * gj * inv));
    absorb(r, povm_decomposition(sq, effects), kp);
    absorb_two(r, equal_split(sq, balance_effect(random_effect(n, rng), rho)), kp);
  }
}

void two_term_strategy(FluctuationReport& r, const Matrix& rho, const Matrix& kp, const FluctuationOptions& o) {
  Rng rng(o.seed);
  const auto n = static_cast<std::size_t>(rho.rows());
  const Matrix sq = psd_sqrt(rho);
  auto score = [&](const Matrix& e) {
    return term_stats(povm_decomposition(sq, {e, identity(n) - e}), kp).sum;
  };
  for (int s = 0; s < o.restarts; ++s) {
    Matrix e = random_effect(n, rng);
    double best = score(e);
    double step = 0.3;
    for (int it = 0; it < 30; ++it, step *= 0.8) {
      const Matrix trial = clip_effect(e + step * random_hermitian(n, rng));
      const double v = score(trial);
      if (v > best) {
        best = v;
        e = trial;
      }
    }
    absorb(r, povm_decomposition(sq, {e, identity(n) - e}), kp);
    absorb_two(r, equal_split(sq, balance_effect(e, rho)), kp);
  }
}

}  // namespace

std::string to_string(BoundKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

BoundKind parse_bound_kind(const std::string& name) {
  const auto c = canonical(name);
  for (const auto& [k, n] : kKindNames)
    if (canonical(n) == c) return k;
  fail(ErrorCode::kConfig, "unknown bound kind '" + name + "'");
}

std::string to_string(FluctuationStrategy s) {
  switch (s) {
    case FluctuationStrategy::kSpectral: return "spectral";
    case FluctuationStrategy::kEigen: return "eigen";
    case FluctuationStrategy::kRandomEnsembles: return "random_ensembles";
    case FluctuationStrategy::kTwoTermSearch: return "two_term_search";
  }
  return "?";
}

FluctuationStrategy parse_strategy(const std::string& name) {
  for (auto s : {FluctuationStrategy::kSpectral, FluctuationStrategy::kEigen,
                 FluctuationStrategy::kRandomEnsembles, FluctuationStrategy::kTwoTermSearch})
    if (to_string(s) == name) return s;
  fail(ErrorCode::kConfig, "unknown fluctuation strategy '" + name + "'");
}

double operator_spread(const Matrix& x) {
  const auto s = hermitian_spectrum(x);
  return std::max(0.0, s.values(0) - s.values(s.values.size() - 1));
}

Matrix fluctuation_operator(const ScramblingInstance& inst, const Matrix& x_a, const Matrix& x_ap) {
  require_square(x_a, inst.dim_A(), "fluctuation_operator X_A");
  require_square(x_ap, inst.dim_Ap(), "fluctuation_operator X_A'");
  const Matrix k = hermitian_part(x_a - adjoint_map(induced_channel(inst), x_ap));
  const double shift = expectation(rho_A(inst), k);
  return k - shift * identity(inst.dim_A());
}

double delta_j(const ScramblingInstance& inst, const Matrix& rho_j) {
  require_square(rho_j, inst.dim_A(), "delta_j");
  const Matrix kp = fluctuation_operator(inst, inst.charges.charge(labels::kA), inst.charges.charge(labels::kAp));
  return expectation(rho_j, kp);
}

Decomposition eigen_decomposition(const ScramblingInstance& inst) {
  const Matrix rho = rho_A(inst);
  const Matrix xa = inst.charges.charge(labels::kA);
  require(spectral_norm(rho * xa - xa * rho) <= 1e-9, ErrorCode::kInvalidArgument,
          "eigen strategy: rho_A does not commute with X_A");
  Decomposition d;
  for (const auto& s : charge_sectors(xa)) {
    const Matrix p = s.projector();
    const Matrix part = hermitian_part(p * rho * p);
    const double w = part.trace().real();
    if (w <= 1e-14) continue;
    d.emplace_back(w, part / w);
  }
  return d;
}

FluctuationReport dynamical_fluctuation(const ScramblingInstance& inst, const FluctuationOptions& options,
                                        const Decomposition* decomposition) {
  const Matrix rho = rho_A(inst);
  const Matrix xa = inst.charges.charge(labels::kA);
  const Matrix xap = inst.charges.charge(labels::kAp);
  const Matrix kp = fluctuation_operator(inst, xa, xap);
  FluctuationReport r;
  r.strategy = options.strategy;
  r.delta_plus = 0.5 * (operator_spread(xa) + operator_spread(xap));
  switch (options.strategy) {
    case FluctuationStrategy::kSpectral: spectral_strategy(r, rho, kp); break;
    case FluctuationStrategy::kEigen: eigen_strategy(r, inst, rho, kp); break;
    case FluctuationStrategy::kRandomEnsembles: random_strategy(r, rho, kp, options); break;
    case FluctuationStrategy::kTwoTermSearch: two_term_strategy(r, rho, kp, options); break;
  }
  if (r.witness_sum.empty()) r.witness_sum = {{1.0, rho}};
  if (r.witness_single.empty()) r.witness_single = r.witness_sum;
  if (r.witness_two.empty()) r.witness_two = {{0.5, rho}, {0.5, rho}};
  if (decomposition) {
    validate_decomposition(*decomposition, rho);
    r.decomposition = *decomposition;
  } else {
    r.decomposition = r.witness_sum;
  }
  const auto s = term_stats(r.decomposition, kp);
  r.deltas = s.deltas;
  r.A_var = 0.0;
  for (std::size_t j = 0; j < s.deltas.size(); ++j) r.A_var += r.decomposition[j].first * s.deltas[j] * s.deltas[j];
  return r;
}

InstanceTerms instance_terms(const ScramblingInstance& inst, const FluctuationOptions& options,
                             const Decomposition* decomposition) {
  InstanceTerms t;
  t.fluctuation = dynamical_fluctuation(inst, options, decomposition);
  const Matrix xa = inst.charges.charge(labels::kA);
  const Matrix xb = inst.charges.charge(labels::kB);
  const Matrix xap = inst.charges.charge(labels::kAp);
  const Matrix xbp = inst.charges.charge(labels::kBp);
  const Matrix rb = rho_B(inst);
  t.F = 4.0 * variance(rb, xb);
  const Matrix final_bp = apply_map(instance_channel(inst, {labels::kBp}), rho_A(inst));
  t.F_f = 4.0 * variance(hermitian_part(final_bp), xbp);
  t.F_B = qfi(rb, xb);
  t.D_XA = operator_spread(xa);
  t.D_XAp = operator_spread(xap);
  const Matrix ra = rho_A(inst);
  t.V_A = variance(ra, xa);
  t.V_Ap = variance(apply_map(induced_channel(inst), ra), xap);
  double sq = 0.0;
  for (double x : t.fluctuation.deltas) sq += x * x;
  t.B = sq / 2.0 + 8.0 * (t.V_A + t.V_Ap);
  return t;
}

BoundReport evaluate_bound(BoundKind kind, const InstanceTerms& t, const DeltaInterval& delta,
                           const DeltaInterval& delta_tilde, const ViolationReport* violation) {
  BoundReport r;
  r.kind = kind;
  r.delta = kind == BoundKind::kSIQ1P ? delta_tilde : delta;
  const auto& f = t.fluctuation;
  const double a = f.A_single, a2 = f.A_two, dp = f.delta_plus, dm = f.delta_max;
  const double sf = std::sqrt(t.F), sff = std::sqrt(t.F_f), sfb = std::sqrt(t.F_B);
  r.terms = {{"A", a},        {"A_sum", f.A_sum}, {"A_two", a2},   {"A_var", f.A_var},
             {"F", t.F},      {"F_f", t.F_f},     {"F_B", t.F_B},  {"delta_plus", dp},
             {"delta_max", dm}, {"B", t.B}};
  double dz = 0.0;
  const bool violated = kind == BoundKind::kSIQV1 || kind == BoundKind::kSIQV2 || kind == BoundKind::kRSIQV1 ||
                        kind == BoundKind::kRSIQV2;
  if (violated) {
    require(violation != nullptr, ErrorCode::kInvalidArgument,
            "evaluate_bound: " + to_string(kind) + " needs a violation report");
    dz = violation->spread_DZ;
    r.terms["D_Z"] = dz;
  }
  const double up = r.delta.upper;
  auto vsiq = [&](double fisher) {
    r.lhs = std::sqrt(ratio(f.A_var, 8.0 * (fisher + t.B)));
    r.terms["scalar_margin"] = fisher + t.B - ratio(f.A_var, 8.0 * up * up);
  };
  switch (kind) {
    case BoundKind::kSIQ1: r.lhs = ratio(a, 2.0 * (sf + 4.0 * dp)); break;
    case BoundKind::kSIQ2: r.lhs = ratio(a, 2.0 * (sff + dm)); break;
    case BoundKind::kSIQ1P: r.lhs = ratio(a, 2.0 * (sfb + 4.0 * dp)); break;
    case BoundKind::kRSIQ1: r.lhs = ratio(a2, sf + 4.0 * dp); break;
    case BoundKind::kRSIQ2: r.lhs = ratio(a2, sff + dm); break;
    case BoundKind::kVSIQ1: vsiq(t.F); break;
    case BoundKind::kVSIQ2: vsiq(t.F_f); break;
    case BoundKind::kSIQV1: r.lhs = ratio(a - 2.0 * dz, 2.0 * (sf + 4.0 * dp + dz)); break;
    case BoundKind::kSIQV2: r.lhs = ratio(a - 2.0 * dz, 2.0 * (sff + dm)); break;
    case BoundKind::kRSIQV1: r.lhs = ratio(a2 - 2.0 * dz, sf + 4.0 * dp + dz); break;
    case BoundKind::kRSIQV2: r.lhs = ratio(a2 - 2.0 * dz, sff + dm); break;
    default:
      fail(ErrorCode::kInvalidArgument, "evaluate_bound: " + to_string(kind) + " is not an instance scalar bound");
  }
  r.rhs = up;
  r.margin = r.rhs - r.lhs;
  r.satisfied = r.lhs <= r.rhs + kBoundSlack;
  return r;
}

BoundReport evaluate_bound(BoundKind kind, const ScramblingInstance& inst, std::uint64_t seed,
                           const Decomposition* decomposition, const ViolationReport* violation) {
  const auto terms = instance_terms(inst, {}, decomposition);
  const auto with = optimize_recovery(inst, RecoveryMode::kWithRB, seed);
  const auto without = optimize_recovery(inst, RecoveryMode::kWithoutRB, seed);
  return evaluate_bound(kind, terms, {0.0, with.achieved_error}, {0.0, without.achieved_error}, violation);
}

BoundReport evaluate_matrix_bound(BoundKind kind, const ScramblingInstance& inst, const GeneratorSet& gens,
                                  const Decomposition& decomposition, const DeltaInterval& delta,
                                  const DeltaInterval& delta_tilde) {
  require(kind == BoundKind::kMSIQ1 || kind == BoundKind::kMSIQ2 || kind == BoundKind::kMSIQ1P,
          ErrorCode::kInvalidArgument, "evaluate_matrix_bound: not a matrix bound kind");
  const auto m = gens.A.size();
  require(m >= 1 && gens.B.size() == m && gens.Ap.size() == m && gens.Bp.size() == m,
          ErrorCode::kDimensionMismatch, "evaluate_matrix_bound: generator lists differ in length");
  const auto in = inst.input();
  for (std::size_t a = 0; a < m; ++a) {
    const Matrix xin = kron(gens.A[a], identity(inst.dim_B())) + kron(identity(inst.dim_A()), gens.B[a]);
    const Matrix xout = kron(gens.Ap[a], identity(inst.dim_Bp())) + kron(identity(inst.dim_Ap()), gens.Bp[a]);
    const double defect = spectral_norm(inst.U * xin * inst.U.adjoint() - xout);
    require(defect <= 1e-9 * std::max(1.0, spectral_norm(xin)), ErrorCode::kNotCovariant,
            "evaluate_matrix_bound: generator " + std::to_string(a) + " is not conserved by U");
  }
  const Matrix ra = rho_A(inst);
  validate_decomposition(decomposition, ra);
  const Matrix era = apply_map(induced_channel(inst), ra);
  const auto mm = static_cast<Eigen::Index>(m);
  std::vector<std::vector<double>> deltas(m);
  for (std::size_t a = 0; a < m; ++a) {
    const Matrix kp = fluctuation_operator(inst, gens.A[a], gens.Ap[a]);
    for (const auto& [p, rho] : decomposition) deltas[a].push_back(expectation(rho, kp));
  }
  RealMatrix av = RealMatrix::Zero(mm, mm), bm = RealMatrix::Zero(mm, mm);
  for (Eigen::Index a = 0; a < mm; ++a)
    for (Eigen::Index b = 0; b < mm; ++b) {
      double s = 0.0, plain = 0.0;
      for (std::size_t j = 0; j < decomposition.size(); ++j) {
        s += decomposition[j].first * deltas[a][j] * deltas[b][j];
        plain += deltas[a][j] * deltas[b][j];
      }
      av(a, b) = s;
      bm(a, b) = 8.0 * (covariance(ra, gens.A[a], gens.A[b]) + covariance(era, gens.Ap[a], gens.Ap[b])) + plain / 2.0;
    }
  RealMatrix fisher;
  // pure-state Fisher matrix: 4 x covariance on the reduced state
  auto pure_fisher = [&](const Matrix& reduced, const std::vector<Matrix>& g) {
    RealMatrix f(mm, mm);
    for (Eigen::Index a = 0; a < mm; ++a)
      for (Eigen::Index b = 0; b < mm; ++b) f(a, b) = 4.0 * covariance(reduced, g[a], g[b]);
    return f;
  };
  if (kind == BoundKind::kMSIQ1) {
    fisher = pure_fisher(rho_B(inst), gens.B);
  } else if (kind == BoundKind::kMSIQ2) {
    fisher = pure_fisher(hermitian_part(apply_map(instance_channel(inst, {labels::kBp}), ra)), gens.Bp);
  } else {
    fisher = qfi_matrix(rho_B(inst), gens.B);
  }
  BoundReport r;
  r.kind = kind;
  r.delta = kind == BoundKind::kMSIQ1P ? delta_tilde : delta;
  const double up = r.delta.upper;
  const RealMatrix base = fisher + bm;
  r.matrix = up > 0.0 ? RealMatrix(base - av / (8.0 * up * up)) : base;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (r.matrix + r.matrix.transpose()));
  r.margin = es.eigenvalues()(0);
  if (up <= 0.0 && av.norm() > 0.0) r.margin = -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<RealMatrix> bs(0.5 * (base + base.transpose()));
  const double scale = std::max(1.0, bs.eigenvalues().cwiseAbs().maxCoeff());
  r.satisfied = r.margin >= -1e-8 * scale;
  if (bs.eigenvalues()(0) > 1e-12 * scale) {
    Eigen::GeneralizedSelfAdjointEigenSolver<RealMatrix> ge(0.5 * (av + av.transpose()),
                                                            0.5 * (base + base.transpose()));
    r.lhs = std::sqrt(std::max(0.0, ge.eigenvalues().maxCoeff()) / 8.0);
  } else {
    r.note = "F + B is singular; implied error bound not computed";
  }
  r.rhs = up;
  r.terms = {{"min_eigenvalue", r.margin}, {"scale", scale}, {"generators", static_cast<double>(m)},
             {"A_var_trace", av.trace()}, {"F_trace", fisher.trace()}, {"B_trace", bm.trace()}};
  return r;
}

EastinKnill eastin_knill_bound(double d_xl, double d_max, int n) {
  require(d_xl >= 0.0 && d_max > 0.0 && n >= 1, ErrorCode::kInvalidArgument,
          "eastin_knill_bound: spreads must be positive and N >= 1");
  EastinKnill out;
  const double q = d_xl / (4.0 * d_max);
  out.value = q / (n + q);
  const double h = d_xl / (2.0 * d_max);
  out.variant = h / (n + h);
  return out;
}

std::vector<BoundReport> hp_bounds(const HPConfigStats& s, const DeltaInterval& delta) {
  require(s.k >= 1 && s.N >= 1 && s.l >= 0, ErrorCode::kInvalidArgument, "hp_bounds: invalid sizes");
  const double k = s.k, n = s.N, l = s.l;
  const double gamma = 1.0 - l / (n + k);
  const bool trivial = s.l >= s.N + s.k;
  const double factor = (1.0 - s.epsilon) / (1.0 + s.epsilon);
  const std::map<std::string, double> common{
      {"k", k}, {"N", n}, {"l", l}, {"M", s.M}, {"epsilon", s.epsilon}, {"gamma", gamma},
      {"A_lower", gamma * s.M * (1.0 - s.epsilon)}, {"sqrt_F_f_upper", gamma * (n + k)},
      {"delta_max_upper", gamma * k * (1.0 + s.epsilon)}, {"epsilon_free", s.M / (2.0 * (n + 2.0 * k))},
      {"F", s.F}};
  std::vector<BoundReport> out;
  auto finish = [&](BoundKind kind, double value, std::map<std::string, double> extra) {
    BoundReport r;
    r.kind = kind;
    r.delta = delta;
    r.terms = common;
    for (auto& [key, v] : extra) r.terms[key] = v;
    r.applicable = !trivial;
    r.lhs = trivial ? 0.0 : value;
    if (trivial) r.note = "trivial regime";
    r.rhs = delta.upper;
    r.margin = r.rhs - r.lhs;
    r.satisfied = r.lhs <= r.rhs + kBoundSlack;
    out.push_back(std::move(r));
  };
  const double leading = factor * s.M / (2.0 * (n + 2.0 * k));
  finish(BoundKind::kHP13, leading, {});
  finish(BoundKind::kHP14, leading, {{"const", factor * s.M / (4.0 * k)}});
  finish(BoundKind::kHP16, factor * s.M * gamma / (2.0 * (std::sqrt(s.F) + 2.0 * (k + l))), {});
  return out;
}

}  // namespace symrec
