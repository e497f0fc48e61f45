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

#include "symrec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "symrec/error.hpp"
#include "symrec/parallel.hpp"

namespace symrec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kTermColumns{"A",  "A_sum",      "A_two",     "A_var", "F",
                                            "F_f", "F_B", "delta_plus", "delta_max", "B"};

std::vector<std::string> join(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void append(std::vector<Cell>& row, const std::vector<Cell>& more) { row.insert(row.end(), more.begin(), more.end()); }

std::vector<Cell> term_cells(const InstanceTerms& t) {
  const auto& f = t.fluctuation;
  return {f.A_single, f.A_sum, f.A_two, f.A_var, t.F, t.F_f, t.F_B, f.delta_plus, f.delta_max, t.B};
}

Cell flag(bool b) { return std::int64_t{b ? 1 : 0}; }
Cell verdict(bool ok) { return std::string(ok ? "pass" : "fail"); }
Cell integer(long long v) { return static_cast<std::int64_t>(v); }

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Matrix weighted_charge(const std::vector<int>& w, std::size_t from, std::size_t to) {
  const std::size_t n = to - from;
  const std::size_t dim = std::size_t{1} << n;
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    double v = 0.0;
    for (std::size_t q = 0; q < n; ++q)
      if ((b >> (n - 1 - q)) & 1U) v += w[from + q];
    x(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = v;
  }
  return x;
}

struct Built {
  RandomInstance r;
  GeneratorSet generators;
};

// Conserves every weight vector in `weights` simultaneously; the first one is
// the instance's charge.
Built build_conserving(Rng& rng, int k, int n_b, int l, const std::vector<std::vector<int>>& weights,
                       const std::string& descriptor) {
  const auto n = static_cast<std::size_t>(k + n_b);
  const std::size_t da = std::size_t{1} << k, db = std::size_t{1} << n_b;
  const std::size_t dap = std::size_t{1} << l, dbp = std::size_t{1} << (n - l);
  Built b;
  Matrix mixed = Matrix::Zero(static_cast<Eigen::Index>(da * db), static_cast<Eigen::Index>(da * db));
  double scale = 1.0;
  for (const auto& w : weights) {
    mixed += scale * weighted_charge(w, 0, n);
    scale *= std::numbers::sqrt2;
    b.generators.A.push_back(weighted_charge(w, 0, k));
    b.generators.B.push_back(weighted_charge(w, k, n));
    b.generators.Ap.push_back(weighted_charge(w, 0, l));
    b.generators.Bp.push_back(weighted_charge(w, l, n));
  }
  const Matrix u = sample_block_haar(charge_sectors(mixed), rng);
  auto psi = make_pure(random_pure(da * da, rng), SystemLayout({{labels::kA, da}, {labels::kRA, da}}));
  auto phi = make_pure(random_pure(db * db, rng), SystemLayout({{labels::kB, db}, {labels::kRB, db}}));
  const SystemLayout in({{labels::kA, da}, {labels::kB, db}});
  const SystemLayout out({{labels::kAp, dap}, {labels::kBp, dbp}});
  auto charges = make_charge_spec({{labels::kA, b.generators.A[0]},
                                   {labels::kB, b.generators.B[0]},
                                   {labels::kAp, b.generators.Ap[0]},
                                   {labels::kBp, b.generators.Bp[0]}},
                                  in, out);
  b.r.instance = make_instance(std::move(psi), std::move(phi), u, out, std::move(charges));
  b.r.k = k;
  b.r.N = n_b;
  b.r.l = l;
  b.r.weights = weights[0];
  b.r.descriptor = descriptor;
  return b;
}

int pick(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

std::string instance_descriptor(std::uint64_t seed, int k, int n, int l, const std::vector<std::vector<int>>& w) {
  std::string d = "conserving;seed=" + std::to_string(seed) + ";k=" + std::to_string(k) + ";N=" +
                  std::to_string(n) + ";l=" + std::to_string(l);
  for (const auto& v : w) d += ";w=" + join_ints(v);
  return d;
}

bool proportional(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

Built random_built(std::uint64_t seed, int max_qubits, int generators) {
  Rng rng(seed);
  const int k = pick(rng, 1, max_qubits), n = pick(rng, 1, max_qubits);
  const int l = pick(rng, 1, k + n - 1);
  std::vector<std::vector<int>> w(static_cast<std::size_t>(generators));
  for (int g = 0; g < generators; ++g) {
    do {
      w[g].clear();
      for (int q = 0; q < k + n; ++q) w[g].push_back(g == 0 ? pick(rng, 1, 2) : pick(rng, 0, 2));
    } while (g > 0 && proportional(w[g], w[0]));
  }
  return build_conserving(rng, k, n, l, w, instance_descriptor(seed, k, n, l, w));
}

// Largest instance-level lower bound; it is the lower end of the reported
// error interval.
double lower_estimate(const InstanceTerms& t, double delta_up) {
  double best = 0.0;
  for (auto kind : {BoundKind::kSIQ1, BoundKind::kSIQ2, BoundKind::kRSIQ1, BoundKind::kRSIQ2})
    best = std::max(best, evaluate_bound(kind, t, {0.0, delta_up}, {0.0, delta_up}).lhs);
  return std::min(best, delta_up);
}

Decomposition spectral_decomposition(const Matrix& rho) {
  const auto spec = hermitian_spectrum(rho);
  Decomposition d;
  for (Eigen::Index j = 0; j < spec.values.size(); ++j)
    if (spec.values(j) > 1e-12) d.emplace_back(spec.values(j), projector(spec.vectors.col(j)));
  double total = 0.0;
  for (const auto& term : d) total += term.first;
  for (auto& term : d) term.first /= total;
  return d;
}

template <class RowFn>
void collect(Table& table, std::size_t n, RowFn&& fn) {
  std::vector<std::vector<std::pair<std::string, std::vector<Cell>>>> slots(n);
  std::vector<std::uint64_t> seeds(n);
  parallel_for(n, [&](std::size_t i) { fn(i, slots[i], seeds[i]); });
  for (std::size_t i = 0; i < n; ++i)
    for (auto& [desc, cells] : slots[i]) table.add(seeds[i], desc, std::move(cells));
}

int count_failures(const Table& t) {
  const auto& cols = t.columns();
  const auto it = std::find(cols.begin(), cols.end(), "verdict");
  if (it == cols.end()) return 0;
  const auto idx = static_cast<std::size_t>(it - cols.begin());
  int n = 0;
  for (const auto& row : t.rows())
    if (std::get<std::string>(row[idx]) == "fail") ++n;
  return n;
}

double column_stat(const Table& t, const std::string& name, bool want_max) {
  const auto& cols = t.columns();
  const auto it = std::find(cols.begin(), cols.end(), name);
  if (it == cols.end()) return kNaN;
  const auto idx = static_cast<std::size_t>(it - cols.begin());
  double best = kNaN;
  for (const auto& row : t.rows()) {
    const auto* v = std::get_if<double>(&row[idx]);
    if (!v || std::isnan(*v)) continue;
    if (std::isnan(best) || (want_max ? *v > best : *v < best)) best = *v;
  }
  return best;
}

ExperimentResult finish(std::string command, std::uint64_t seed, Table table,
                        const std::vector<std::string>& max_columns, const std::vector<std::string>& min_columns) {
  ExperimentResult r;
  r.command = std::move(command);
  r.seed = seed;
  r.table = std::move(table);
  r.violations = count_failures(r.table);
  r.aggregates["rows"] = static_cast<double>(r.table.rows().size());
  for (const auto& c : max_columns) r.aggregates["max_" + c] = column_stat(r.table, c, true);
  for (const auto& c : min_columns) r.aggregates["min_" + c] = column_stat(r.table, c, false);
  return r;
}

// ---------------------------------------------------------------- verify

ExperimentResult verify_metrics(int trials, std::uint64_t seed) {
  constexpr int kPairs = 200;
  constexpr double kEps = 1e-4;
  Table table({"trial", "dim", "qfi", "qfi_finite_difference", "qfi_error", "pure_qfi", "pure_four_variance",
               "pure_error", "mvr_four_variance", "mvr_qfi", "mvr_error", "pairs", "rcr2_violations",
               "nrc_violations", "verdict"});
  collect(table, static_cast<std::size_t>(trials), [&](std::size_t i, auto& out, std::uint64_t& s) {
    s = derive_seed(seed, i);
    Rng rng(s);
    const auto d = static_cast<std::size_t>(pick(rng, 2, 4));
    const Matrix x = random_hermitian(d, rng);
    const Matrix rho = random_density(d, rng);
    const double q = qfi(rho, x);
    const Matrix u = unitary_from_generator(x, -kEps);
    const double dist = purified_distance(u * rho * u.adjoint(), rho);
    const double fd = 4.0 * dist * dist / (kEps * kEps);
    const Vector psi = random_pure(d, rng);
    const double pq = qfi(projector(psi), x), pv = 4.0 * variance(psi, x);
    const Matrix mixed = random_density(d, static_cast<std::size_t>(pick(rng, 1, static_cast<int>(d))), rng);
    const auto mvr = minimal_variance_reference(make_density(mixed, single_system("S", d)), x);
    const double mq = qfi(mixed, x);
    int rcr = 0, nrc = 0;
    for (int p = 0; p < kPairs; ++p) {
      const auto dp = static_cast<std::size_t>(pick(rng, 2, 4));
      const Matrix a = random_density(dp, static_cast<std::size_t>(pick(rng, 1, static_cast<int>(dp))), rng);
      const Matrix b = random_density(dp, static_cast<std::size_t>(pick(rng, 1, static_cast<int>(dp))), rng);
      const auto chk = mvd_tradeoff_check(a, b, random_hermitian(dp, rng));
      if (!chk.satisfied_squared) ++rcr;
      if (!chk.satisfied) ++nrc;
    }
    const bool ok = std::abs(fd - q) <= 1e-4 && std::abs(pq - pv) <= 1e-9 &&
                    std::abs(mvr.four_variance - mq) <= 1e-8 && rcr == 0 && nrc == 0;
    out.push_back({"metrics;seed=" + std::to_string(s) + ";d=" + std::to_string(d),
                   {integer(static_cast<long long>(i)), integer(static_cast<long long>(d)), q, fd, std::abs(fd - q),
                    pq, pv, std::abs(pq - pv), mvr.four_variance, mq, std::abs(mvr.four_variance - mq),
                    integer(kPairs), integer(rcr), integer(nrc), verdict(ok)}});
  });
  auto r = finish("verify metrics", seed, std::move(table), {"qfi_error", "pure_error", "mvr_error"}, {});
  r.aggregates["pairs"] = static_cast<double>(trials) * kPairs;
  return r;
}

std::vector<std::string> instance_columns() { return {"trial", "k", "N", "l"}; }
std::vector<Cell> instance_cells(std::size_t i, const RandomInstance& r) {
  return {integer(static_cast<long long>(i)), integer(r.k), integer(r.N), integer(r.l)};
}

ExperimentResult verify_lemma1(int trials, std::uint64_t seed) {
  Table table(join(join(instance_columns(), {"terms_in_decomposition", "centred_sum", "sigma_sum", "rhs",
                                             "delta_lower", "delta_upper"}),
                   join(kTermColumns, {"verdict"})));
  collect(table, static_cast<std::size_t>(trials), [&](std::size_t i, auto& out, std::uint64_t& s) {
    s = derive_seed(seed, i);
    const auto r = random_conserving_instance(s);
    const auto dec = spectral_decomposition(rho_A(r.instance));
    const auto res = decoupling_residuals(r.instance, dec);
    const double up = optimize_recovery(r.instance, RecoveryMode::kWithRB, derive_seed(s, 1)).achieved_error;
    const auto terms = instance_terms(r.instance);
    const double rhs = 4.0 * up * up + 1e-6;
    std::vector<Cell> row = instance_cells(i, r);
    append(row, {integer(static_cast<long long>(dec.size())), res.centred_sum, res.sigma_sum, rhs,
                 lower_estimate(terms, up), up});
    append(row, term_cells(terms));
    row.push_back(verdict(res.centred_sum <= rhs));
    out.push_back({r.descriptor, std::move(row)});
  });
  return finish("verify lemma1", seed, std::move(table), {"centred_sum", "delta_upper"}, {});
}

ExperimentResult verify_bounds(int trials, std::uint64_t seed) {
  const std::vector<BoundKind> kinds{BoundKind::kSIQ1,  BoundKind::kSIQ2,  BoundKind::kSIQ1P, BoundKind::kRSIQ1,
                                     BoundKind::kRSIQ2, BoundKind::kVSIQ1, BoundKind::kVSIQ2};
  Table table(join(join(instance_columns(), {"kind", "lhs", "delta_lower", "delta_upper", "margin"}),
                   join(kTermColumns, {"verdict"})));
  collect(table, static_cast<std::size_t>(trials), [&](std::size_t i, auto& out, std::uint64_t& s) {
    s = derive_seed(seed, i);
    const auto r = random_conserving_instance(s);
    const auto terms = instance_terms(r.instance);
    const double up = optimize_recovery(r.instance, RecoveryMode::kWithRB, derive_seed(s, 1)).achieved_error;
    const double up_tilde =
        optimize_recovery(r.instance, RecoveryMode::kWithoutRB, derive_seed(s, 2)).achieved_error;
    for (auto kind : kinds) {
      const auto b = evaluate_bound(kind, terms, {0.0, up}, {0.0, up_tilde});
      std::vector<Cell> row = instance_cells(i, r);
      append(row, {to_string(kind), b.lhs, std::clamp(b.lhs, 0.0, b.rhs), b.rhs, b.margin});
      append(row, term_cells(terms));
      row.push_back(verdict(b.satisfied));
      out.push_back({r.descriptor, std::move(row)});
    }
  });
  return finish("verify bounds", seed, std::move(table), {"lhs"}, {"margin"});
}

ExperimentResult verify_violated(int trials, std::uint64_t seed) {
  const std::vector<double> etas{0.0, 1e-4, 1e-3, 1e-2, 3e-2, 0.1, 0.3};
  const std::vector<std::pair<BoundKind, BoundKind>> kinds{{BoundKind::kSIQV1, BoundKind::kSIQ1},
                                                           {BoundKind::kSIQV2, BoundKind::kSIQ2},
                                                           {BoundKind::kRSIQV1, BoundKind::kRSIQ1},
                                                           {BoundKind::kRSIQV2, BoundKind::kRSIQ2}};
  Table table(join(join(instance_columns(), {"eta", "D_Z", "kind", "lhs", "symmetric_kind", "symmetric_lhs",
                                             "difference", "continuity_limit", "delta_lower", "delta_upper",
                                             "margin"}),
                   join(kTermColumns, {"holds", "continuous", "verdict"})));
  const auto n = static_cast<std::size_t>(trials) * etas.size();
  collect(table, n, [&](std::size_t idx, auto& out, std::uint64_t& s) {
    const std::size_t i = idx / etas.size(), e = idx % etas.size();
    s = derive_seed(seed, i);
    auto r = random_conserving_instance(s);
    Rng rng(derive_seed(s, 7));
    Matrix h = random_hermitian(r.instance.U.rows(), rng);
    h /= spectral_norm(h);
    const Matrix u = r.instance.U * unitary_from_generator(h, etas[e]);
    auto inst = make_instance(r.instance.psi, r.instance.phi, u, r.instance.output, r.instance.charges);
    const auto violation = conservation_check(inst.U, inst.charges);
    const auto terms = instance_terms(inst);
    const double up = optimize_recovery(inst, RecoveryMode::kWithRB, derive_seed(s, 1)).achieved_error;
    const double dz = violation.spread_DZ;
    for (const auto& [vk, sk] : kinds) {
      const auto b = evaluate_bound(vk, terms, {0.0, up}, {0.0, up}, &violation);
      const auto base = evaluate_bound(sk, terms, {0.0, up}, {0.0, up});
      const double diff = std::abs(b.lhs - base.lhs);
      const double limit = 10.0 * dz + 1e-12;
      std::vector<Cell> row = instance_cells(i, r);
      append(row, {etas[e], dz, to_string(vk), b.lhs, to_string(sk), base.lhs, diff, limit,
                   std::clamp(b.lhs, 0.0, up), up, b.margin});
      append(row, term_cells(terms));
      append(row, {flag(b.satisfied), flag(diff <= limit), verdict(b.satisfied && diff <= limit)});
      out.push_back({r.descriptor + ";eta=" + std::to_string(etas[e]), std::move(row)});
    }
  });
  return finish("verify violated", seed, std::move(table), {"D_Z", "difference"}, {"margin"});
}

ExperimentResult verify_matrix(int trials, std::uint64_t seed) {
  Table table(join(instance_columns(), {"kind", "generators", "lhs", "min_eigenvalue", "scalar_lhs",
                                        "scalar_margin", "match_error", "delta_lower", "delta_upper",
                                        "A_var_trace", "F_trace", "B_trace", "verdict"}));
  collect(table, static_cast<std::size_t>(trials), [&](std::size_t i, auto& out, std::uint64_t& s) {
    s = derive_seed(seed, i);
    const auto b = random_built(s, 2, 2);
    const auto& inst = b.r.instance;
    const auto dec = spectral_decomposition(rho_A(inst));
    const double up = optimize_recovery(inst, RecoveryMode::kWithRB, derive_seed(s, 1)).achieved_error;
    const double up_tilde = optimize_recovery(inst, RecoveryMode::kWithoutRB, derive_seed(s, 2)).achieved_error;
    auto emit = [&](const std::string& name, const BoundReport& m, double scalar_lhs, double scalar_margin,
                    double match, bool ok) {
      std::vector<Cell> row = instance_cells(i, b.r);
      append(row, {name, m.terms.at("generators"), m.lhs, m.margin, scalar_lhs, scalar_margin, match,
                   std::clamp(m.lhs, 0.0, m.rhs), m.rhs, m.terms.at("A_var_trace"), m.terms.at("F_trace"),
                   m.terms.at("B_trace"), verdict(ok)});
      out.push_back({b.r.descriptor, std::move(row)});
    };
    for (auto kind : {BoundKind::kMSIQ1, BoundKind::kMSIQ2, BoundKind::kMSIQ1P}) {
      const auto m = evaluate_matrix_bound(kind, inst, b.generators, dec, {0.0, up}, {0.0, up_tilde});
      emit(to_string(kind), m, kNaN, kNaN, kNaN, m.satisfied && m.margin >= -1e-8);
    }
    GeneratorSet single{{b.generators.A[0]}, {b.generators.B[0]}, {b.generators.Ap[0]}, {b.generators.Bp[0]}};
    const auto terms = instance_terms(inst, {}, &dec);
    for (auto [mk, sk] : {std::pair{BoundKind::kMSIQ1, BoundKind::kVSIQ1}, {BoundKind::kMSIQ2, BoundKind::kVSIQ2}}) {
      const auto m = evaluate_matrix_bound(mk, inst, single, dec, {0.0, up}, {0.0, up_tilde});
      const auto v = evaluate_bound(sk, terms, {0.0, up}, {0.0, up_tilde});
      const double sm = v.terms.at("scalar_margin");
      const double match = std::max(std::abs(m.lhs - v.lhs), std::abs(m.margin - sm));
      emit(to_string(mk) + "-single", m, v.lhs, sm, match, match <= 1e-10);
    }
  });
  return finish("verify matrix-bounds", seed, std::move(table), {"match_error"}, {"min_eigenvalue"});
}

ExperimentResult verify_avg_ent(int samples, std::uint64_t seed) {
  const std::vector<double> levels{0.0, 0.1, 0.25, 0.4, 0.5};
  Table table({"level", "entanglement_fidelity2", "predicted", "monte_carlo_mean", "se", "samples", "z", "verdict"});
  const SystemLayout q = single_system("Q", 2);
  collect(table, levels.size(), [&](std::size_t i, auto& out, std::uint64_t& s) {
    s = derive_seed(seed, i);
    const double p = levels[i];
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const auto ch = channel_from_kraus({std::sqrt(1.0 - p) * identity(2), std::sqrt(p) * z}, q, q);
    Vector phi = Vector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::numbers::sqrt2;
    const auto half = make_pure(phi, SystemLayout({{"Q", 2}, {"R", 2}}));
    const auto out_state = apply_channel(ch, to_density(half), {"R"});
    const double fe = std::real(phi.dot(out_state.matrix * phi));
    const double predicted = avg_from_entanglement_fidelity(fe, 2);
    Rng rng(s);
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < samples; ++k) {
      const Vector v = random_pure(2, rng);
      const double f = std::real(v.dot(apply_map(ch, projector(v)) * v));
      sum += f;
      sum2 += f * f;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, sum2 / samples - mean * mean) * samples / std::max(1, samples - 1);
    const double se = std::sqrt(var / samples);
    const double dev = std::abs(mean - predicted);
    out.push_back({"avg-ent;dephasing;p=" + std::to_string(p),
                   {p, fe, predicted, mean, se, integer(samples), se > 0 ? dev / se : 0.0,
                    verdict(dev <= 3.0 * se + 1e-12)}});
  });
  return finish("verify avg-ent", seed, std::move(table), {"z"}, {});
}

std::vector<std::string> hp_common_columns() { return {"k", "N", "l", "s_window"}; }
std::vector<Cell> hp_common_cells(const HPConfig& c, int l) {
  return {integer(c.k), integer(c.N), integer(l), integer(c.s_window)};
}

std::string hp_descriptor(const HPConfig& c, int l) {
  std::string d = "hp;k=" + std::to_string(c.k) + ";N=" + std::to_string(c.N) + ";l=" + std::to_string(l) +
                  ";s=" + std::to_string(c.s_window) + ";psi=" + std::to_string(static_cast<int>(c.psi)) +
                  ";phi=" + std::to_string(static_cast<int>(c.phi)) + ";levels=" + join_ints(c.levels);
  return d;
}

std::string relax_json(const std::string& text) {
  static const std::regex bare(R"(([\{,]\s*)([A-Za-z_][A-Za-z0-9_]*)\s*:)");
  return std::regex_replace(text, bare, "$1\"$2\":");
}

nlohmann::json parse_inputs(const std::string& inputs) {
  std::string text = inputs;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(ErrorCode::kConfig, "bound: empty inputs");
  if (text[first] != '{') {
    std::ifstream f(inputs);
    require(static_cast<bool>(f), ErrorCode::kConfig, "bound: cannot read inputs file " + inputs);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    auto j = nlohmann::json::parse(relax_json(text));
    require(j.is_object(), ErrorCode::kConfig, "bound: inputs must be a JSON object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kConfig, std::string("bound: malformed inputs: ") + e.what());
  }
}

double number(const nlohmann::json& j, const std::string& key, double fallback = kNaN) {
  if (!j.contains(key)) return fallback;
  require(j[key].is_number(), ErrorCode::kConfig, "bound: input '" + key + "' must be a number");
  return j[key].get<double>();
}

double required_number(const nlohmann::json& j, const std::string& key) {
  require(j.contains(key), ErrorCode::kConfig, "bound: missing input '" + key + "'");
  return number(j, key);
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", *d == 0.0 ? 0.0 : *d);
    return buf;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

Table::Table(std::vector<std::string> columns) {
  columns_ = {"schema_version", "seed", "instance_hash"};
  columns_.insert(columns_.end(), columns.begin(), columns.end());
}

void Table::add(std::uint64_t seed, const std::string& descriptor, std::vector<Cell> cells) {
  require(cells.size() + 3 == columns_.size(), ErrorCode::kInvalidArgument, "Table::add: wrong number of cells");
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(descriptor)));
  std::vector<Cell> row{integer(kSchemaVersion), std::to_string(seed), std::string(hash)};
  row.insert(row.end(), std::make_move_iterator(cells.begin()), std::make_move_iterator(cells.end()));
  rows_.push_back(std::move(row));
}

std::string Table::csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += '\n';
  }
  return out;
}

std::string ExperimentResult::json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["violations"] = violations;
  j["columns"] = table.columns();
  nlohmann::ordered_json agg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : aggregates) {
    if (std::isnan(v)) agg[k] = nullptr;
    else agg[k] = std::stod(format_cell(v));
  }
  j["aggregates"] = agg;
  return j.dump(2) + "\n";
}

RandomInstance random_conserving_instance(std::uint64_t seed, int max_qubits) {
  require(max_qubits >= 1 && max_qubits <= 6, ErrorCode::kConfig, "random instance: max_qubits must be in [1, 6]");
  return random_built(seed, max_qubits, 1).r;
}

ExperimentResult run_verify(const std::string& suite, int trials, std::uint64_t seed) {
  require(trials >= 0, ErrorCode::kConfig, "verify: trials must be non-negative");
  auto pick_trials = [&](int fallback) { return trials > 0 ? trials : fallback; };
  if (suite == "metrics") return verify_metrics(pick_trials(50), seed);
  if (suite == "lemma1") return verify_lemma1(pick_trials(100), seed);
  if (suite == "bounds") return verify_bounds(pick_trials(200), seed);
  if (suite == "matrix-bounds") return verify_matrix(pick_trials(50), seed);
  if (suite == "violated") return verify_violated(pick_trials(10), seed);
  if (suite == "avg-ent") return verify_avg_ent(pick_trials(100000), seed);
  fail(ErrorCode::kConfig, "verify: unknown suite '" + suite + "'");
}

HPMode parse_hp_mode(const std::string& name) {
  if (name == "equidistribution") return HPMode::kEquidistribution;
  if (name == "concentration") return HPMode::kConcentration;
  if (name == "foggy") return HPMode::kFoggy;
  fail(ErrorCode::kConfig, "hp: unknown mode '" + name + "'");
}

ExperimentResult run_hp(const HPRunOptions& o) {
  const auto& c = o.config;
  validate_config(c);
  if (o.mode == HPMode::kEquidistribution) {
    const auto rep = equidistribution_check(c);
    Table table(join(hp_common_columns(),
                     {"row_type", "sample", "probe", "eigenstate", "x_A", "x_Ap", "predicted", "deviation", "se",
                      "normalized", "M", "gamma", "epsilon_hat", "conservation", "bookkeeping", "verdict"}));
    const std::string desc = hp_descriptor(c, c.l);
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
      const auto& s = rep.samples[i];
      const bool ok = s.conservation <= 1e-9 && s.bookkeeping <= 1e-10;
      std::vector<Cell> row = hp_common_cells(c, c.l);
      append(row, {std::string("sample"), integer(static_cast<long long>(i)), integer(-1), flag(false), kNaN, kNaN,
                   kNaN, s.sup_deviation, kNaN, s.epsilon_hat, rep.M, rep.gamma, s.epsilon_hat, s.conservation,
                   s.bookkeeping, verdict(ok)});
      table.add(derive_seed(c.seed, i), desc, std::move(row));
    }
    for (const auto& p : rep.probes) {
      std::vector<Cell> row = hp_common_cells(c, c.l);
      append(row, {std::string("probe"), integer(p.sample), integer(p.probe), flag(p.eigenstate), p.x_A, p.x_Ap,
                   p.predicted, p.deviation, kNaN, p.normalized, rep.M, rep.gamma, kNaN, kNaN, kNaN,
                   std::string("info")});
      table.add(derive_seed(c.seed, static_cast<std::uint64_t>(p.sample)), desc, std::move(row));
    }
    // Mean law per probe index: signed deviation averaged over samples.
    std::map<int, std::vector<const ProbeRow*>> by_probe;
    for (const auto& p : rep.probes) by_probe[p.probe].push_back(&p);
    for (const auto& [probe, rows] : by_probe) {
      const double n = static_cast<double>(rows.size());
      double sx = 0, sp = 0, sd = 0, sd2 = 0;
      bool eigen = true;
      for (const auto* p : rows) {
        const double d = p->x_Ap - p->predicted;
        sx += p->x_Ap;
        sp += p->predicted;
        sd += d;
        sd2 += d * d;
        eigen = eigen && p->eigenstate;
      }
      const double mean = sd / n;
      const double var = n > 1 ? std::max(0.0, (sd2 - n * mean * mean) / (n - 1)) : 0.0;
      const double se = std::sqrt(var / n);
      std::vector<Cell> row = hp_common_cells(c, c.l);
      append(row, {std::string("mean"), integer(-1), integer(probe), flag(eigen), kNaN, sx / n, sp / n, mean, se,
                   kNaN, rep.M, rep.gamma, rep.epsilon_hat, kNaN, kNaN,
                   verdict(std::abs(mean) <= 3.0 * se + 1e-12)});
      table.add(c.seed, desc, std::move(row));
    }
    auto r = finish("hp equidistribution", c.seed, std::move(table), {"conservation", "bookkeeping"}, {});
    r.aggregates["M"] = rep.M;
    r.aggregates["gamma"] = rep.gamma;
    r.aggregates["epsilon_hat_mean"] = rep.epsilon_hat;
    r.aggregates["epsilon_hat_max"] = rep.epsilon_hat_max;
    return r;
  }
  if (o.mode == HPMode::kConcentration) {
    const auto rep = concentration_sweep(c, o.t_grid);
    Table table(join(hp_common_columns(), {"row_type", "probe", "t", "bound", "exceed", "samples", "frequency",
                                           "se", "mean_x_Ap", "predicted", "verdict"}));
    const std::string desc = hp_descriptor(c, c.l);
    for (const auto& t : rep.rows) {
      std::vector<Cell> row = hp_common_cells(c, c.l);
      append(row, {std::string("tail"), integer(t.probe), t.t, t.bound, integer(t.exceed), integer(t.samples),
                   t.frequency, t.se, kNaN, kNaN, verdict(t.pass)});
      table.add(c.seed, desc, std::move(row));
    }
    for (std::size_t p = 0; p < rep.mean_x_Ap.size(); ++p) {
      std::vector<Cell> row = hp_common_cells(c, c.l);
      append(row, {std::string("mean"), integer(static_cast<long long>(p)), kNaN, kNaN, integer(0),
                   integer(c.samples), kNaN, rep.mean_se[p], rep.mean_x_Ap[p], rep.predicted[p], std::string("info")});
      table.add(c.seed, desc, std::move(row));
    }
    return finish("hp concentration", c.seed, std::move(table), {"frequency"}, {});
  }
  const auto rep = foggy_mirror_experiment(c, o.l_sweep, o.control);
  Table table(join(hp_common_columns(),
                   {"sample", "trivial", "M", "gamma", "F", "epsilon_hat", "epsilon_free", "bound_hp13", "bound_hp14",
                    "bound_hp16", "bound_siq1", "bound_siq2", "delta_lower", "delta_upper", "control_delta",
                    "reference", "verdict"}));
  for (const auto& f : rep.rows) {
    std::vector<Cell> row = hp_common_cells(c, f.l);
    const double lower = f.trivial ? 0.0 : std::clamp(std::max({f.hp13, f.siq1, f.siq2}), 0.0, f.delta_up);
    append(row, {integer(f.sample), flag(f.trivial), f.M, f.gamma, f.F, f.epsilon_hat, f.epsilon_free, f.hp13,
                 f.hp14, f.hp16, f.siq1, f.siq2, lower, f.delta_up, f.control_delta, f.reference,
                 verdict(f.pass)});
    table.add(derive_seed(derive_seed(c.seed, static_cast<std::uint64_t>(f.l)), static_cast<std::uint64_t>(f.sample)),
              hp_descriptor(c, f.l) + ";sample=" + std::to_string(f.sample), std::move(row));
  }
  auto r = finish("hp foggy", c.seed, std::move(table), {"bound_hp13", "delta_upper"}, {"delta_upper"});
  r.aggregates["l_independent"] = rep.l_independent ? 1.0 : 0.0;
  if (!rep.l_independent) ++r.violations;
  return r;
}

ExperimentResult run_example(const std::vector<int>& Ms, bool seesaw, std::uint64_t seed) {
  require(!Ms.empty(), ErrorCode::kConfig, "example: no M given");
  for (int m : Ms) require(m >= 1, ErrorCode::kConfig, "example: M must be positive");
  Table table({"M", "error", "error_sparse", "error_dense", "expected_error", "A", "delta_plus", "F", "F_expected",
               "bound_siq1", "delta_lower", "delta_upper", "conservation", "bitflip_defect", "seesaw_error",
               "below_A_over_8", "verdict"});
  std::vector<AlleviationReport> reps(Ms.size());
  parallel_for(Ms.size(), [&](std::size_t i) { reps[i] = verify_alleviation(Ms[i], seesaw, derive_seed(seed, i)); });
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const auto& a = reps[i];
    const double err = std::isnan(a.error_dense) ? a.error_sparse : a.error_dense;
    table.add(seed, "alleviation;M=" + std::to_string(a.M),
              {integer(a.M), err, a.error_sparse, a.error_dense, a.expected_error, a.A_single, a.delta_plus, a.F,
               a.F_expected, a.siq1, std::clamp(a.siq1, 0.0, err), err, a.conservation, a.bitflip_defect,
               a.seesaw_error, flag(a.below_A_over_8), verdict(a.pass)});
  }
  return finish("example", seed, std::move(table), {"bound_siq1"}, {"error"});
}

ExperimentResult run_qec(const std::string& code, int trials, std::uint64_t seed) {
  require(trials >= 1, ErrorCode::kConfig, "qec: trials must be positive");
  std::vector<CodeSpec> specs;
  std::vector<double> params;
  if (code == "family:phase") {
    for (int j = 0; j <= 8; ++j) {
      params.push_back(j * std::numbers::pi / 16.0);
      specs.push_back(phase_covariant_code(params.back()));
    }
  } else if (code.rfind("builtin:", 0) == 0) {
    specs.push_back(builtin_code(code.substr(8)));
    params.push_back(kNaN);
  } else {
    std::ifstream f(code);
    require(static_cast<bool>(f), ErrorCode::kConfig, "qec: cannot read code file " + code);
    std::stringstream ss;
    ss << f.rdbuf();
    specs.push_back(parse_code_json(ss.str()));
    params.push_back(kNaN);
  }
  Table table({"code", "parameter", "N", "covariance_deviation", "applicable", "D_XL", "D_max", "bound_ek",
               "bound_variant", "delta_C", "delta_C_max_entangled", "delta_lower", "delta_upper", "noise_tp_defect",
               "noise_covariance", "w_defect", "delta_C_plain", "w_equivalent", "consistent", "verdict"});
  std::vector<AuditReport> reps(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) { reps[i] = audit_code(specs[i], trials, derive_seed(seed, i)); });
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& a = reps[i];
    const bool ok = (!a.applicable || a.consistent) && a.w_equivalent && a.noise_tp_defect <= 1e-10 &&
                    a.noise_covariance <= 1e-10;
    table.add(derive_seed(seed, i), "code;" + code_to_json(specs[i]),
              {a.name, params[i], integer(a.N), a.covariance_deviation, flag(a.applicable), a.D_XL, a.D_max,
               a.bound.value, a.bound.variant, a.delta_C, a.delta_C_max_entangled,
               a.applicable ? std::min(a.bound.value, a.delta_C) : 0.0, a.delta_C, a.noise_tp_defect,
               a.noise_covariance, a.w_defect, a.delta_C_plain, flag(a.w_equivalent), flag(a.consistent),
               verdict(ok)});
  }
  return finish("qec", seed, std::move(table), {"covariance_deviation", "bound_ek", "w_defect"}, {"delta_C"});
}

ExperimentResult run_bound(const std::string& kind_name, const std::string& inputs) {
  BoundKind kind;
  try {
    kind = parse_bound_kind(kind_name);
  } catch (const Error& e) {
    fail(ErrorCode::kConfig, e.what());
  }
  const auto j = parse_inputs(inputs);
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<std::string> raw{"dxl", "dmax", "n", "k", "N", "l", "M", "epsilon", "D_Z"};
  Table table(join(join({"kind", "value", "variant", "delta_lower", "delta_upper", "margin", "applicable"},
                        join(raw, kTermColumns)),
                   {"verdict"}));
  BoundReport b;
  double variant = kNaN;
  switch (kind) {
    case BoundKind::kEK17: {
      const double n = required_number(j, "n");
      require(n >= 1 && n == std::floor(n), ErrorCode::kConfig, "bound: n must be a positive integer");
      EastinKnill ek;
      try {
        ek = eastin_knill_bound(required_number(j, "dxl"), required_number(j, "dmax"), static_cast<int>(n));
      } catch (const Error& e) {
        fail(ErrorCode::kConfig, e.what());
      }
      b.kind = kind;
      b.lhs = ek.value;
      variant = ek.variant;
      b.rhs = number(j, "delta", inf);
      b.margin = b.rhs - b.lhs;
      b.satisfied = b.lhs <= b.rhs + kBoundSlack;
      break;
    }
    case BoundKind::kHP13:
    case BoundKind::kHP14:
    case BoundKind::kHP16: {
      HPConfigStats s;
      s.k = static_cast<int>(required_number(j, "k"));
      s.N = static_cast<int>(required_number(j, "N"));
      s.l = static_cast<int>(required_number(j, "l"));
      s.M = required_number(j, "M");
      s.epsilon = number(j, "epsilon", 0.0);
      s.F = number(j, "F", 0.0);
      std::vector<BoundReport> all;
      try {
        all = hp_bounds(s, {0.0, number(j, "delta", inf)});
      } catch (const Error& e) {
        fail(ErrorCode::kConfig, e.what());
      }
      for (auto& r : all)
        if (r.kind == kind) b = r;
      break;
    }
    case BoundKind::kMSIQ1:
    case BoundKind::kMSIQ2:
    case BoundKind::kMSIQ1P:
      fail(ErrorCode::kConfig, "bound: matrix kinds need an instance, not raw terms");
    default: {
      InstanceTerms t;
      t.fluctuation.A_single = number(j, "A", 0.0);
      t.fluctuation.A_sum = number(j, "A_sum", t.fluctuation.A_single);
      t.fluctuation.A_two = number(j, "A_two", 0.0);
      t.fluctuation.A_var = number(j, "A_var", 0.0);
      t.fluctuation.delta_plus = number(j, "delta_plus", 0.0);
      t.fluctuation.delta_max = number(j, "delta_max", 0.0);
      t.F = number(j, "F", 0.0);
      t.F_f = number(j, "F_f", 0.0);
      t.F_B = number(j, "F_B", t.F);
      t.B = number(j, "B", 0.0);
      ViolationReport v;
      v.spread_DZ = number(j, "D_Z", 0.0);
      const double d = number(j, "delta", inf);
      b = evaluate_bound(kind, t, {0.0, d}, {0.0, number(j, "delta_tilde", d)}, &v);
    }
  }
  std::vector<Cell> row{to_string(kind), b.lhs, variant, std::clamp(b.lhs, 0.0, b.rhs), b.rhs, b.margin,
                        flag(b.applicable)};
  for (const auto& key : raw) row.push_back(number(j, key));
  for (const auto& key : kTermColumns) row.push_back(number(j, key == "A" ? "A" : key));
  row.push_back(verdict(b.satisfied));
  Table t = std::move(table);
  t.add(0, "bound;" + to_string(kind) + ";" + j.dump(), std::move(row));
  auto r = finish("bound", 0, std::move(t), {}, {});
  r.aggregates["value"] = b.lhs;
  return r;
}

}  // namespace symrec
