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

#include "symrec/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symrec {
namespace {

Matrix reshape_rows(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

Vector flatten_rows(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

void require_layout(const SystemLayout& layout, const std::vector<std::string>& expected,
                    const std::string& what) {
  bool ok = layout.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) ok = layout.parts()[i].label == expected[i];
  require(ok, ErrorCode::kDimensionMismatch, what + ": unexpected subsystem labels");
}

// Support of a PSD matrix: eigenvectors above a relative cutoff, then the rest.
struct Support {
  Matrix basis;
  Matrix complement;
};

Support support_of(const Matrix& rho) {
  const auto spec = hermitian_spectrum(rho);
  const double cut = kRankCutoff * std::max(1.0, spec.values(0));
  Eigen::Index r = 0;
  while (r < spec.values.size() && spec.values(r) > cut) ++r;
  r = std::max<Eigen::Index>(r, 1);
  return {spec.vectors.leftCols(r), spec.vectors.rightCols(spec.values.size() - r)};
}

// Fidelity maximisation over recovery isometries W : span(basis) -> A (x) E.
// One entry of `q` per input; q(a*r+i, t) = sum_ra conj(psi[a,ra]) Sigma[i,ra,t].
class Seesaw {
 public:
  Seesaw(std::vector<Matrix> q, Eigen::Index da, Eigen::Index r, Eigen::Index de)
      : q_(std::move(q)), da_(da), r_(r), de_(de) {}

  Eigen::Index env_dim() const { return de_; }

  double value(const Matrix& w, std::vector<Matrix>* chis = nullptr) const {
    const Matrix wt = to_wt(w);
    double total = 0.0;
    if (chis) chis->clear();
    for (const auto& q : q_) {
      Matrix chi = wt * q;
      total += chi.norm();
      if (chis) chis->push_back(std::move(chi));
    }
    return total / static_cast<double>(q_.size());
  }

  struct Run {
    Matrix w;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    bool monotone = true;
  };

  Run run(Matrix w, int max_iters) const {
    Run out;
    std::vector<Matrix> chis;
    double current = value(w, &chis);
    for (int it = 0; it < max_iters; ++it) {
      Matrix hp = Matrix::Zero(de_, da_ * r_);
      for (std::size_t j = 0; j < q_.size(); ++j) {
        const double n = chis[j].norm();
        if (n <= 0.0) continue;
        hp.noalias() += (chis[j] / n) * q_[j].adjoint();
      }
      Matrix next = polar_isometry(from_hp(hp));
      std::vector<Matrix> next_chis;
      const double v = value(next, &next_chis);
      out.iterations = it + 1;
      if (v < current - 1e-12) out.monotone = false;
      const double gain = v - current;
      if (v >= current) {
        w = std::move(next);
        chis = std::move(next_chis);
        current = v;
      }
      if (gain < 1e-10) {
        out.converged = true;
        break;
      }
    }
    out.w = std::move(w);
    out.value = current;
    return out;
  }

  Matrix from_kraus(const std::vector<Matrix>& kraus, const Matrix& basis) const {
    require(static_cast<Eigen::Index>(kraus.size()) <= de_, ErrorCode::kInvalidArgument,
            "seesaw: initial channel has too many Kraus operators");
    Matrix w = Matrix::Zero(da_ * de_, r_);
    for (std::size_t k = 0; k < kraus.size(); ++k) {
      const Matrix kb = kraus[k] * basis;
      for (Eigen::Index a = 0; a < da_; ++a) w.row(a * de_ + static_cast<Eigen::Index>(k)) = kb.row(a);
    }
    return polar_isometry(w);
  }

  std::vector<Matrix> to_kraus(const Matrix& w, const Matrix& basis, const Matrix& complement) const {
    std::vector<Matrix> kraus;
    for (Eigen::Index e = 0; e < de_; ++e) {
      Matrix k(da_, r_);
      for (Eigen::Index a = 0; a < da_; ++a) k.row(a) = w.row(a * de_ + e);
      if (k.norm() > 1e-15) kraus.push_back(k * basis.adjoint());
    }
    for (Eigen::Index c = 0; c < complement.cols(); ++c) {
      Matrix k = Matrix::Zero(da_, basis.rows());
      k.row(0) = complement.col(c).adjoint();
      kraus.push_back(std::move(k));
    }
    return kraus;
  }

 private:
  Matrix to_wt(const Matrix& w) const {
    Matrix wt(de_, da_ * r_);
    for (Eigen::Index a = 0; a < da_; ++a)
      for (Eigen::Index e = 0; e < de_; ++e)
        for (Eigen::Index i = 0; i < r_; ++i) wt(e, a * r_ + i) = w(a * de_ + e, i);
    return wt;
  }

  Matrix from_hp(const Matrix& hp) const {
    Matrix h(da_ * de_, r_);
    for (Eigen::Index a = 0; a < da_; ++a)
      for (Eigen::Index e = 0; e < de_; ++e)
        for (Eigen::Index i = 0; i < r_; ++i) h(a * de_ + e, i) = hp(e, a * r_ + i);
    return h;
  }

  std::vector<Matrix> q_;
  Eigen::Index da_, r_, de_;
};

// target: dA x dR; global: dS x (dR dT), both row-major reshapes.
Matrix build_q(const Matrix& target, const Matrix& global, const Matrix& basis, Eigen::Index dt) {
  const Eigen::Index da = target.rows(), dr = target.cols(), r = basis.cols();
  const Matrix sigma = basis.adjoint() * global;
  Matrix q = Matrix::Zero(da * r, dt);
  for (Eigen::Index ra = 0; ra < dr; ++ra) {
    const Matrix block = sigma.middleCols(ra * dt, dt);
    for (Eigen::Index a = 0; a < da; ++a) q.middleRows(a * r, r) += std::conj(target(a, ra)) * block;
  }
  return q;
}

struct ModeView {
  Vector global;  // [S..., R_A, T...]
  SystemLayout layout;
  std::vector<std::string> s_labels;
  Eigen::Index ds = 1, dr = 1, dt = 1;
};

ModeView mode_view(const ScramblingInstance& inst, const ScrambleResult& sr, RecoveryMode mode) {
  ModeView v;
  const auto dims = sr.global.layout.dims();
  const auto& parts = sr.global.layout.parts();
  std::vector<std::size_t> perm = mode == RecoveryMode::kWithRB ? std::vector<std::size_t>{0, 3, 2, 1}
                                                                : std::vector<std::size_t>{0, 2, 1, 3};
  v.global = permute_subsystems(sr.global.amplitudes, dims, perm);
  std::vector<Subsystem> p;
  for (auto i : perm) p.push_back(parts[i]);
  v.layout = SystemLayout(p);
  v.dr = static_cast<Eigen::Index>(inst.dim_RA());
  if (mode == RecoveryMode::kWithRB) {
    v.s_labels = {labels::kAp, labels::kRB};
    v.ds = static_cast<Eigen::Index>(inst.dim_Ap() * inst.dim_RB());
    v.dt = static_cast<Eigen::Index>(inst.dim_Bp());
  } else {
    v.s_labels = {labels::kAp};
    v.ds = static_cast<Eigen::Index>(inst.dim_Ap());
    v.dt = static_cast<Eigen::Index>(inst.dim_Bp() * inst.dim_RB());
  }
  return v;
}

double fw_value(const std::vector<Matrix>& g, const Matrix& rho, std::vector<cplx>* t = nullptr) {
  double f = 0.0;
  if (t) t->clear();
  for (const auto& gk : g) {
    const cplx tk = (gk.cwiseProduct(rho.transpose())).sum();
    f += std::norm(tk);
    if (t) t->push_back(tk);
  }
  return f;
}

}  // namespace

SystemLayout ScramblingInstance::input() const {
  return SystemLayout({{labels::kA, dim_A()}, {labels::kB, dim_B()}});
}

ScramblingInstance make_instance(PureState psi, PureState phi, Matrix u, SystemLayout output,
                                 ChargeSpec charges) {
  require_layout(psi.layout, {labels::kA, labels::kRA}, "instance psi");
  require_layout(phi.layout, {labels::kB, labels::kRB}, "instance phi");
  require_layout(output, {labels::kAp, labels::kBp}, "instance output");
  const auto din = psi.layout.dim_of(labels::kA) * phi.layout.dim_of(labels::kB);
  require(output.total_dim() == din, ErrorCode::kDimensionMismatch,
          "instance: dim(AB) differs from dim(A'B')");
  require_square(u, din, "instance U");
  require(is_unitary(u), ErrorCode::kNotUnitary, "instance: U is not unitary");
  require(std::abs(psi.amplitudes.norm() - 1.0) <= 1e-10 && std::abs(phi.amplitudes.norm() - 1.0) <= 1e-10,
          ErrorCode::kInvalidArgument, "instance: states are not normalised");
  ScramblingInstance inst{std::move(psi), std::move(phi), std::move(u), std::move(output), std::move(charges)};
  require(inst.charges.input == inst.input() && inst.charges.output == inst.output,
          ErrorCode::kDimensionMismatch, "instance: charge layouts do not match the instance");
  return inst;
}

Matrix rho_A(const ScramblingInstance& inst) {
  const std::vector<std::string> keep{labels::kA};
  return reduced_state(inst.psi.amplitudes, inst.psi.layout, keep);
}

Matrix rho_B(const ScramblingInstance& inst) {
  const std::vector<std::string> keep{labels::kB};
  return reduced_state(inst.phi.amplitudes, inst.phi.layout, keep);
}

QuantumChannel instance_channel(const ScramblingInstance& inst, const std::vector<std::string>& outputs) {
  const auto da = static_cast<Eigen::Index>(inst.dim_A());
  const auto db = static_cast<Eigen::Index>(inst.dim_B());
  const auto drb = static_cast<Eigen::Index>(inst.dim_RB());
  const Matrix phi = reshape_rows(inst.phi.amplitudes, db, drb);
  const std::vector<Subsystem> natural{{labels::kAp, inst.dim_Ap()}, {labels::kBp, inst.dim_Bp()},
                                       {labels::kRB, inst.dim_RB()}};
  std::vector<std::size_t> perm;
  std::vector<Subsystem> out_parts, env_parts;
  for (const auto& l : outputs) {
    auto it = std::find_if(natural.begin(), natural.end(), [&](const Subsystem& s) { return s.label == l; });
    require(it != natural.end(), ErrorCode::kUnknownLabel, "instance_channel: unknown output '" + l + "'");
    perm.push_back(static_cast<std::size_t>(it - natural.begin()));
    out_parts.push_back(*it);
  }
  for (std::size_t i = 0; i < natural.size(); ++i)
    if (std::find(perm.begin(), perm.end(), i) == perm.end()) {
      perm.push_back(i);
      env_parts.push_back(natural[i]);
    }
  std::vector<std::size_t> dims{inst.dim_Ap(), inst.dim_Bp(), inst.dim_RB()};
  Matrix v(static_cast<Eigen::Index>(inst.dim_Ap() * inst.dim_Bp()) * drb, da);
  for (Eigen::Index a = 0; a < da; ++a) {
    const Matrix evolved = inst.U.middleCols(a * db, db) * phi;
    v.col(a) = permute_subsystems(flatten_rows(evolved), dims, perm);
  }
  return make_channel(std::move(v), single_system(labels::kA, inst.dim_A()), SystemLayout(out_parts),
                      SystemLayout(env_parts));
}

QuantumChannel induced_channel(const ScramblingInstance& inst) {
  return instance_channel(inst, {labels::kAp});
}

ScrambleResult scramble(const ScramblingInstance& inst) {
  const auto da = inst.dim_A(), db = inst.dim_B(), dra = inst.dim_RA(), drb = inst.dim_RB();
  const Vector joint = kron(inst.psi.amplitudes, inst.phi.amplitudes);
  const std::vector<std::size_t> dims{da, dra, db, drb};
  const std::vector<std::size_t> perm{0, 2, 1, 3};
  const Vector ordered = permute_subsystems(joint, dims, perm);
  const Matrix c = reshape_rows(ordered, static_cast<Eigen::Index>(da * db), static_cast<Eigen::Index>(dra * drb));
  ScrambleResult out;
  out.global.amplitudes = flatten_rows(inst.U * c);
  out.global.layout = SystemLayout({{labels::kAp, inst.dim_Ap()},
                                    {labels::kBp, inst.dim_Bp()},
                                    {labels::kRA, dra},
                                    {labels::kRB, drb}});
  const auto& g = out.global;
  auto marginal = [&](std::vector<std::string> keep) { return reduced_state(g.amplitudes, g.layout, keep); };
  out.rho_Ap = marginal({labels::kAp});
  out.rho_Bp = marginal({labels::kBp});
  out.rho_ApRB = marginal({labels::kAp, labels::kRB});
  out.rho_RABp = marginal({labels::kRA, labels::kBp});
  return out;
}

QuantumChannel petz_recovery(const QuantumChannel& ch, const Matrix& prior) {
  const auto d = ch.input.total_dim();
  require_square(prior, d, "petz_recovery prior");
  constexpr double eps = 1e-9;
  const Matrix sigma = (1.0 - eps) * hermitian_part(prior) + (eps / static_cast<double>(d)) * identity(d);
  const Matrix image = hermitian_part(apply_map(ch, sigma));
  const Matrix inv_sqrt = psd_inverse_sqrt(image, 1e-14);
  const Matrix sqrt_sigma = psd_sqrt(sigma);
  std::vector<Matrix> kraus;
  for (const auto& k : kraus_operators(ch)) kraus.push_back(sqrt_sigma * k.adjoint() * inv_sqrt);
  const auto spec = hermitian_spectrum(image);
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    if (spec.values(i) > 1e-14) continue;
    Matrix k = Matrix::Zero(static_cast<Eigen::Index>(d), image.rows());
    k.row(0) = spec.vectors.col(i).adjoint();
    kraus.push_back(std::move(k));
  }
  const auto ne = static_cast<Eigen::Index>(kraus.size());
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(d) * ne, image.rows());
  for (Eigen::Index e = 0; e < ne; ++e)
    for (Eigen::Index o = 0; o < static_cast<Eigen::Index>(d); ++o) v.row(o * ne + e) = kraus[e].row(o);
  return make_channel(polar_isometry(v), ch.output, ch.input, single_system("E", kraus.size()));
}

double recovery_error(const ScramblingInstance& inst, const QuantumChannel& recovery, RecoveryMode mode) {
  const auto sr = scramble(inst);
  const auto view = mode_view(inst, sr, mode);
  auto keep = view.s_labels;
  keep.push_back(labels::kRA);
  DensityMatrix rho{reduced_state(view.global, view.layout, keep), view.layout.select(keep)};
  require(recovery.input.total_dim() == static_cast<std::size_t>(view.ds) &&
              recovery.output.total_dim() == inst.dim_A(),
          ErrorCode::kDimensionMismatch, "recovery_error: recovery has the wrong shape");
  QuantumChannel relabelled = recovery;
  relabelled.input = view.layout.select(view.s_labels);
  relabelled.output = single_system(labels::kA, inst.dim_A());
  const auto out = apply_channel(relabelled, rho, {labels::kRA});
  return purified_distance_from_fidelity(fidelity(inst.psi.amplitudes, out.matrix));
}

RecoveryResult optimize_recovery(const ScramblingInstance& inst, RecoveryMode mode, std::uint64_t seed,
                                 int max_iters) {
  const auto sr = scramble(inst);
  const auto view = mode_view(inst, sr, mode);
  const auto da = static_cast<Eigen::Index>(inst.dim_A());
  const Matrix target = reshape_rows(inst.psi.amplitudes, da, view.dr);
  const Matrix global = reshape_rows(view.global, view.ds, view.dr * view.dt);
  const auto support = support_of(global * global.adjoint());
  const auto r = support.basis.cols();

  const auto forward = instance_channel(
      inst, mode == RecoveryMode::kWithRB ? std::vector<std::string>{labels::kAp, labels::kRB}
                                          : std::vector<std::string>{labels::kAp});
  const auto petz = petz_recovery(forward, rho_A(inst));
  const auto petz_kraus = kraus_operators(petz);

  std::vector<Matrix> extension;
  if (mode == RecoveryMode::kWithRB) {
    const auto base = optimize_recovery(inst, RecoveryMode::kWithoutRB, seed, max_iters);
    const auto drb = static_cast<Eigen::Index>(inst.dim_RB());
    for (const auto& k : kraus_operators(base.recovery))
      for (Eigen::Index j = 0; j < drb; ++j) {
        Matrix bra = Matrix::Zero(1, drb);
        bra(0, j) = 1.0;
        extension.push_back(kron(k, bra));
      }
  }
  const Eigen::Index de = std::max<Eigen::Index>(
      {r * da, static_cast<Eigen::Index>(petz_kraus.size()), static_cast<Eigen::Index>(extension.size())});
  const Seesaw seesaw({build_q(target, global, support.basis, view.dt)}, da, r, de);

  std::vector<Matrix> starts{seesaw.from_kraus(petz_kraus, support.basis)};
  if (!extension.empty()) starts.push_back(seesaw.from_kraus(extension, support.basis));
  Rng rng(seed);
  for (int k = 0; k < kSeesawRestarts; ++k) starts.push_back(haar_isometry(da * de, r, rng));

  RecoveryResult out;
  Seesaw::Run best;
  best.value = -1.0;
  for (auto& w0 : starts) {
    auto run = seesaw.run(std::move(w0), max_iters);
    out.monotone = out.monotone && run.monotone;
    if (run.value > best.value) best = std::move(run);
  }
  out.iterations = best.iterations;
  out.converged = best.converged;
  out.recovery = channel_from_kraus(seesaw.to_kraus(best.w, support.basis, support.complement),
                                    view.layout.select(view.s_labels), single_system(labels::kA, inst.dim_A()));
  out.achieved_error = recovery_error(inst, out.recovery, mode);
  out.petz_error = recovery_error(inst, petz, mode);
  return out;
}

WorstInput worst_case_input(const std::vector<Matrix>& g, Rng& rng, int restarts) {
  require(!g.empty(), ErrorCode::kInvalidArgument, "worst_case_input: no operators");
  const auto d = g.front().rows();
  WorstInput best;
  best.min_fidelity2 = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= restarts; ++s) {
    Matrix rho = s == 0 ? Matrix(identity(d) / static_cast<double>(d)) : projector(random_pure(d, rng));
    std::vector<cplx> a;
    double f = fw_value(g, rho, &a);
    for (int it = 0; it < 400; ++it) {
      Matrix h = Matrix::Zero(d, d);
      for (std::size_t k = 0; k < g.size(); ++k) h += std::conj(a[k]) * g[k] + a[k] * g[k].adjoint();
      const auto spec = hermitian_spectrum(hermitian_part(h));
      const Vector v = spec.vectors.col(d - 1);
      const double gap = expectation(rho, hermitian_part(h)) - spec.values(d - 1);
      if (gap < 1e-13) break;
      double num = 0.0, den = 0.0;
      std::vector<cplx> b(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) {
        b[k] = v.dot(g[k] * v);
        const cplx diff = b[k] - a[k];
        num += std::real(std::conj(a[k]) * diff);
        den += std::norm(diff);
      }
      if (den <= 0.0) break;
      const double gamma = std::clamp(-num / den, 0.0, 1.0);
      if (gamma <= 0.0) break;
      rho = (1.0 - gamma) * rho + gamma * projector(v);
      for (std::size_t k = 0; k < g.size(); ++k) a[k] = (1.0 - gamma) * a[k] + gamma * b[k];
      const double nf = fw_value(g, rho, &a);
      const bool stalled = f - nf < 1e-15;
      f = nf;
      if (stalled) break;
    }
    if (f < best.min_fidelity2) {
      best.min_fidelity2 = f;
      best.rho = hermitian_part(rho);
    }
  }
  best.min_fidelity2 = std::clamp(best.min_fidelity2, 0.0, 1.0);
  return best;
}

ImplementationErrorReport implementation_error(const Matrix& u_target, const ScramblingInstance& inst,
                                               std::uint64_t seed) {
  require(inst.dim_Ap() == inst.dim_A(), ErrorCode::kDimensionMismatch,
          "implementation_error: A' and A differ in dimension");
  require_square(u_target, inst.dim_A(), "implementation_error target");
  require(is_unitary(u_target), ErrorCode::kNotUnitary, "implementation_error: target is not unitary");
  std::vector<Matrix> g;
  for (const auto& k : kraus_operators(induced_channel(inst))) g.push_back(u_target.adjoint() * k);
  Rng rng(seed);
  const auto worst = worst_case_input(g, rng, 8);
  const auto d = static_cast<double>(inst.dim_A());
  ImplementationErrorReport out;
  out.estimate = purified_distance_from_fidelity(std::sqrt(worst.min_fidelity2));
  out.maximally_entangled = purified_distance_from_fidelity(
      std::sqrt(fw_value(g, identity(inst.dim_A()) / d)));
  out.worst_input = worst.rho;
  return out;
}

CodeErrorReport code_error(const QuantumChannel& code, const QuantumChannel& noise, std::uint64_t seed,
                           int rounds) {
  require(code.environment.total_dim() == 1 && is_isometry(code.isometry), ErrorCode::kNotUnitary,
          "code_error: code is not an isometry");
  const auto t = compose(noise, code);
  const auto dl = static_cast<Eigen::Index>(t.input.total_dim());
  const auto dout = static_cast<Eigen::Index>(t.output.total_dim());
  const auto denv = static_cast<Eigen::Index>(t.environment.total_dim());
  const Matrix basis = identity(dout);
  const Matrix mixed = identity(dl) / static_cast<double>(dl);
  const auto petz = kraus_operators(petz_recovery(t, mixed));
  const Eigen::Index de = std::max(dout * dl, static_cast<Eigen::Index>(petz.size()));

  std::vector<Matrix> targets;
  auto add_input = [&](const Matrix& rho_l) {
    const auto spec = hermitian_spectrum(hermitian_part(rho_l));
    Vector psi = Vector::Zero(dl * dl);
    for (Eigen::Index i = 0; i < dl; ++i) {
      const double w = std::sqrt(std::max(spec.values(i), 0.0));
      for (Eigen::Index a = 0; a < dl; ++a) psi(a * dl + i) = w * spec.vectors(a, i);
    }
    psi /= psi.norm();
    targets.push_back(psi);
  };
  auto problem = [&]() {
    std::vector<Matrix> q;
    for (const auto& psi : targets) {
      const Matrix target = reshape_rows(psi, dl, dl);
      // (V_T (x) 1_R) psi lives on [out, env, R]; reorder to [out, R, env].
      const Matrix evolved = t.isometry * target;
      Vector g(dout * dl * denv);
      for (Eigen::Index o = 0; o < dout; ++o)
        for (Eigen::Index e = 0; e < denv; ++e)
          for (Eigen::Index ra = 0; ra < dl; ++ra) g((o * dl + ra) * denv + e) = evolved(o * denv + e, ra);
      q.push_back(build_q(target, reshape_rows(g, dout, dl * denv), basis, denv));
    }
    return Seesaw(std::move(q), dl, dout, de);
  };

  add_input(mixed);
  Rng rng(seed);
  CodeErrorReport out;
  Matrix w;
  for (int round = 0; round < rounds; ++round) {
    const auto seesaw = problem();
    Seesaw::Run best;
    best.value = -1.0;
    std::vector<Matrix> starts;
    if (round == 0) {
      starts.push_back(seesaw.from_kraus(petz, basis));
      for (int k = 0; k < kSeesawRestarts; ++k) starts.push_back(haar_isometry(dl * de, dout, rng));
    } else {
      starts.push_back(w);
    }
    for (auto& w0 : starts) {
      auto run = seesaw.run(std::move(w0), kSeesawMaxIters);
      if (run.value > best.value) best = std::move(run);
    }
    w = best.w;
    const auto recovery = channel_from_kraus(seesaw.to_kraus(w, basis, Matrix(dout, 0)), t.output, t.input);
    const auto loop = kraus_operators(compose(recovery, t));
    if (round == 0)
      out.maximally_entangled = purified_distance_from_fidelity(std::sqrt(fw_value(loop, mixed)));
    const auto worst = worst_case_input(loop, rng, 8);
    const double err = purified_distance_from_fidelity(std::sqrt(worst.min_fidelity2));
    out.rounds = round + 1;
    if (round == 0 || err < out.estimate) {
      out.estimate = err;
      out.recovery = recovery;
    }
    if (1.0 - worst.min_fidelity2 < 1e-12) break;
    add_input(worst.rho);
  }
  return out;
}

void validate_decomposition(const Decomposition& d, const Matrix& rho_a) {
  require(!d.empty(), ErrorCode::kInvalidArgument, "decomposition: empty");
  double total = 0.0;
  Matrix sum = Matrix::Zero(rho_a.rows(), rho_a.cols());
  for (const auto& [p, rho] : d) {
    require(p > 0.0 && p <= 1.0 + 1e-12, ErrorCode::kInvalidArgument, "decomposition: weight outside (0,1]");
    require_square(rho, static_cast<std::size_t>(rho_a.rows()), "decomposition term");
    total += p;
    sum += p * rho;
  }
  require(std::abs(total - 1.0) <= 1e-10, ErrorCode::kInvalidArgument, "decomposition: weights do not sum to 1");
  require(spectral_norm(sum - rho_a) <= 1e-9, ErrorCode::kInvalidArgument,
          "decomposition: terms do not average to rho_A");
}

DecouplingReport decoupling_residuals(const ScramblingInstance& inst, const Decomposition& decomposition) {
  const Matrix ra = rho_A(inst);
  validate_decomposition(decomposition, ra);
  const auto to_bp = instance_channel(inst, {labels::kBp});
  const Matrix centre = apply_map(to_bp, ra);
  std::vector<Matrix> finals;
  DecouplingReport out;
  for (const auto& [p, rho] : decomposition) {
    finals.push_back(apply_map(to_bp, rho));
    const double d = purified_distance(finals.back(), centre);
    out.per_term.push_back(d * d);
    out.centred_sum += p * d * d;
  }
  // Alternating Uhlmann alignment of purifications and a top-eigenvector update of sigma.
  const auto dbp = centre.rows();
  std::vector<Matrix> roots;
  for (const auto& f : finals) roots.push_back(psd_sqrt(f));
  Matrix s = psd_sqrt(centre);
  s /= s.norm();
  double previous = -1.0;
  for (int it = 0; it < 200; ++it) {
    Matrix gram = Matrix::Zero(dbp * dbp, dbp * dbp);
    double objective = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      const Matrix y = roots[j] * polar_isometry(roots[j].adjoint() * s);
      const Vector vy = flatten_rows(y);
      gram += decomposition[j].first * vy * vy.adjoint();
      objective += decomposition[j].first * std::norm(vy.dot(flatten_rows(s)));
    }
    if (objective - previous < 1e-13) break;
    previous = objective;
    const auto spec = hermitian_spectrum(hermitian_part(gram));
    s = reshape_rows(spec.vectors.col(0), dbp, dbp);
  }
  out.sigma = hermitian_part(s * s.adjoint());
  out.sigma /= out.sigma.trace().real();
  for (std::size_t j = 0; j < finals.size(); ++j) {
    const double d = purified_distance(finals[j], out.sigma);
    out.sigma_sum += decomposition[j].first * d * d;
  }
  if (out.centred_sum < out.sigma_sum) {
    out.sigma_sum = out.centred_sum;
    out.sigma = centre;
  }
  return out;
}

double avg_from_entanglement_fidelity(double f_ent2, int d_q) {
  require(f_ent2 >= -1e-12 && f_ent2 <= 1.0 + 1e-12 && d_q >= 1, ErrorCode::kInvalidArgument,
          "avg_from_entanglement_fidelity: input out of range");
  const double f = std::clamp(f_ent2, 0.0, 1.0);
  return (d_q * f + 1.0) / (d_q + 1.0);
}

}  // namespace symrec
