// dynamics.cpp — dense propagators and protocol runners.
#include "dstirap/dynamics.hpp"

#include "dstirap/detail/factorized_api.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dstirap {

namespace {

// Single-atom jump operator sqrt(rate)|to><from| for a channel.
ComplexMatrix channel_single_op(const CompositeSpace& space, const DecayChannel& c) {
  const int levels = c.atom == space.n_controls ? kTargetLevels : kControlLevels;
  if (c.from < 0 || c.from >= levels || c.to < 0 || c.to >= levels)
    throw std::invalid_argument("decay channel level out of range");
  ComplexMatrix op = ComplexMatrix::Zero(levels, levels);
  op(c.to, c.from) = std::sqrt(c.rate);
  return op;
}

// Index stride of one level step of `atom` in the composite ordering.
int atom_stride(const CompositeSpace& space, int atom) {
  if (atom == space.n_controls) return 1;  // target is least significant
  int stride = kTargetLevels;
  for (int i = space.n_controls - 1; i > atom; --i) stride *= kControlLevels;
  return stride;
}

int atom_level(const CompositeSpace& space, int atom, int idx) {
  return atom == space.n_controls ? space.target_level(idx) : space.control_level(idx, atom);
}

std::vector<double> segment_points(double t0, double t1, const std::vector<double>& breakpoints) {
  std::vector<double> pts{t0};
  for (double b : breakpoints)
    if (b > t0 && b < t1) pts.push_back(b);
  pts.push_back(t1);
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

std::vector<std::pair<std::string, ComplexMatrix>> DecayChannelSet::dense_operators(
    const CompositeSpace& space) const {
  std::vector<std::pair<std::string, ComplexMatrix>> out;
  out.reserve(channels.size());
  for (const auto& c : channels)
    out.emplace_back(c.label, embed_single_atom_op(space, c.atom, channel_single_op(space, c)));
  return out;
}

DecayChannelSet standard_decay_channels(const CompositeSpace& space, const PhysicsParams& phys) {
  DecayChannelSet set;
  auto add = [&set](std::string label, int atom, int from, int to, double rate) {
    if (rate > 0.0) set.channels.push_back({std::move(label), atom, from, to, rate});
  };
  for (int i = 0; i < space.n_controls; ++i) {
    const std::string tag = "c" + std::to_string(i);
    add(tag + ":r->0", i, kCtrlR, kCtrl0, phys.gamma_r / 2.0);
    add(tag + ":r->1", i, kCtrlR, kCtrl1, phys.gamma_r / 2.0);
  }
  const int tgt = space.n_controls;
  add("t:R->e1", tgt, kTgtR, kTgtE1, phys.gamma_big_r);
  add("t:e1->A", tgt, kTgtE1, kTgtA, phys.gamma_e1 / 2.0);
  add("t:e1->B", tgt, kTgtE1, kTgtB, phys.gamma_e1 / 2.0);
  add("t:e1->C", tgt, kTgtE1, kTgtC, phys.gamma_e1 / 2.0);
  add("t:e2->B", tgt, kTgtE2, kTgtB, phys.gamma_e2 / 2.0);
  add("t:e2->C", tgt, kTgtE2, kTgtC, phys.gamma_e2 / 2.0);
  return set;
}

namespace detail {

LindbladApplier LindbladApplier::from_structured(const CompositeSpace& space,
                                                 const DecayChannelSet& set) {
  LindbladApplier out;
  const int d = space.dim();
  out.q_half_ = ComplexVector::Zero(d);
  for (const auto& c : set.channels) {
    Feed f;
    f.rate = c.rate;
    const int stride = atom_stride(space, c.atom);
    for (int idx = 0; idx < d; ++idx) {
      if (atom_level(space, c.atom, idx) != c.from) continue;
      f.from.push_back(idx);
      f.to.push_back(idx + (c.to - c.from) * stride);
      out.q_half_(idx) += 0.5 * c.rate;
    }
    if (!f.from.empty()) out.feeds_.push_back(std::move(f));
  }
  return out;
}

LindbladApplier LindbladApplier::from_dense(const std::vector<ComplexMatrix>& rate_scaled_ops) {
  LindbladApplier out;
  out.dense_ops_ = rate_scaled_ops;
  if (!rate_scaled_ops.empty()) {
    const auto d = rate_scaled_ops.front().rows();
    out.q_dense_ = ComplexMatrix::Zero(d, d);
    for (const auto& op : rate_scaled_ops) {
      if (op.rows() != d || op.cols() != d)
        throw std::invalid_argument("LindbladApplier: inconsistent operator dimensions");
      out.q_dense_ += op.adjoint() * op;
    }
  }
  return out;
}

void LindbladApplier::add_jump(const ComplexMatrix& x, ComplexMatrix& out) const {
  for (const auto& f : feeds_) {
    const int n = static_cast<int>(f.from.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        out(f.to[a], f.to[b]) += f.rate * x(f.from[a], f.from[b]);
  }
  for (const auto& op : dense_ops_) out.noalias() += op * x * op.adjoint();
}

void LindbladApplier::add_dissipator(const ComplexMatrix& x, ComplexMatrix& out) const {
  add_jump(x, out);
  if (q_half_.size() > 0) {
    // −½(Q x + x Q) with diagonal Q: scale rows and columns.
    out.noalias() -= q_half_.asDiagonal() * x;
    out.noalias() -= x * q_half_.asDiagonal();
  }
  if (q_dense_.size() > 0) {
    out.noalias() -= 0.5 * (q_dense_ * x + x * q_dense_);
  }
}

}  // namespace detail

ComplexVector propagate_state(const HamiltonianFn& h_of_t, const ComplexVector& psi0, double t0,
                              double t1, const IntegratorConfig& cfg,
                              const std::vector<double>& breakpoints) {
  const auto d = psi0.size();
  ComplexMatrix h(d, d);
  auto rhs = [&](double t, const ComplexVector& y, ComplexVector& dydt) {
    h_of_t(t, h);
    dydt.noalias() = -kI * (h * y);
  };
  ComplexVector psi = psi0;
  const auto pts = segment_points(t0, t1, breakpoints);
  for (std::size_t s = 0; s + 1 < pts.size(); ++s)
    psi = detail::dopri5(std::move(psi), pts[s], pts[s + 1], rhs, cfg.adaptive());
  return psi;
}

ComplexMatrix propagate_lindblad_two_sided(const HamiltonianFn& h_left,
                                           const HamiltonianFn& h_right,
                                           const detail::LindbladApplier& diss,
                                           const ComplexMatrix& x0, double t0, double t1,
                                           const IntegratorConfig& cfg,
                                           const std::vector<double>& breakpoints) {
  if (x0.rows() != x0.cols()) throw std::invalid_argument("propagate_lindblad: X0 must be square");
  const auto d = x0.rows();
  ComplexMatrix hl(d, d), hr(d, d);
  auto rhs = [&](double t, const ComplexMatrix& y, ComplexMatrix& dydt) {
    h_left(t, hl);
    h_right(t, hr);
    dydt.noalias() = -kI * (hl * y);
    dydt.noalias() += kI * (y * hr);
    diss.add_dissipator(y, dydt);
  };
  ComplexMatrix x = x0;
  const auto pts = segment_points(t0, t1, breakpoints);
  for (std::size_t s = 0; s + 1 < pts.size(); ++s)
    x = detail::dopri5(std::move(x), pts[s], pts[s + 1], rhs, cfg.adaptive());
  return x;
}

ComplexMatrix propagate_lindblad(const HamiltonianFn& h_of_t, const detail::LindbladApplier& diss,
                                 const ComplexMatrix& x0, double t0, double t1,
                                 const IntegratorConfig& cfg,
                                 const std::vector<double>& breakpoints) {
  return propagate_lindblad_two_sided(h_of_t, h_of_t, diss, x0, t0, t1, cfg, breakpoints);
}

std::vector<double> protocol_breakpoints(const PulseSchedule& sched) {
  return {sched.window_start(), sched.window_start() + sched.t_mid, sched.window_end()};
}

namespace {

HamiltonianFn protocol_hamiltonian_fn(const HamiltonianSpec& spec, Manifold manifold) {
  return [&spec, manifold](double t, ComplexMatrix& h) { h = full_hamiltonian(t, spec, manifold); };
}

// Zero out the rows (resp. columns) of x whose target level lies outside the
// given manifold sector; sector membership follows manifold_for_target_level.
ComplexMatrix sector_block(const CompositeSpace& space, const ComplexMatrix& x, Manifold row_m,
                           Manifold col_m) {
  ComplexMatrix out = x;
  const int d = space.dim();
  for (int i = 0; i < d; ++i) {
    const Manifold mi = manifold_for_target_level(space.target_level(i));
    for (int j = 0; j < d; ++j) {
      const Manifold mj = manifold_for_target_level(space.target_level(j));
      if (mi != row_m || mj != col_m) out(i, j) = Complex{0.0, 0.0};
    }
  }
  return out;
}

}  // namespace

ComplexVector run_protocol_state(const HamiltonianSpec& spec, const ComplexVector& psi0,
                                 const IntegratorConfig& cfg, Engine engine) {
  if (psi0.size() != spec.space.dim())
    throw std::invalid_argument("run_protocol_state: state dimension mismatch");
  if (engine == Engine::kFactorized && !detail::factorized_supported(spec))
    throw std::invalid_argument("factorized engine unsupported for this spec");
  if (engine == Engine::kAuto)
    engine = detail::factorized_supported(spec) ? Engine::kFactorized : Engine::kDense;
  if (engine == Engine::kFactorized)
    return detail::run_protocol_state_factorized(spec, psi0, cfg);

  const auto bp = protocol_breakpoints(spec.sched);
  const double t1 = spec.sched.total();
  if (!spec.manifold_isolation)
    return propagate_state(protocol_hamiltonian_fn(spec, Manifold::kBoth), psi0, 0.0, t1, cfg, bp);

  ComplexVector out = ComplexVector::Zero(psi0.size());
  for (Manifold m : {Manifold::kA, Manifold::kB}) {
    ComplexVector part = psi0;
    for (int i = 0; i < spec.space.dim(); ++i)
      if (manifold_for_target_level(spec.space.target_level(i)) != m) part(i) = Complex{0.0, 0.0};
    if (part.norm() == 0.0) continue;
    out += propagate_state(protocol_hamiltonian_fn(spec, m), part, 0.0, t1, cfg, bp);
  }
  return out;
}

ComplexMatrix run_protocol_density(const HamiltonianSpec& spec, const ComplexMatrix& x0,
                                   const IntegratorConfig& cfg, Engine engine) {
  if (x0.rows() != spec.space.dim() || x0.cols() != spec.space.dim())
    throw std::invalid_argument("run_protocol_density: dimension mismatch");
  if (engine == Engine::kFactorized && !detail::factorized_supported(spec))
    throw std::invalid_argument("factorized engine unsupported for this spec");
  if (engine == Engine::kAuto)
    engine = detail::factorized_supported(spec) ? Engine::kFactorized : Engine::kDense;
  if (engine == Engine::kFactorized)
    return detail::run_protocol_density_factorized(spec, x0, cfg);

  const auto diss =
      detail::LindbladApplier::from_structured(spec.space, standard_decay_channels(spec.space, spec.phys));
  const auto bp = protocol_breakpoints(spec.sched);
  const double t1 = spec.sched.total();
  if (!spec.manifold_isolation)
    return propagate_lindblad(protocol_hamiltonian_fn(spec, Manifold::kBoth), diss, x0, 0.0, t1,
                              cfg, bp);

  ComplexMatrix out = ComplexMatrix::Zero(x0.rows(), x0.cols());
  for (Manifold ml : {Manifold::kA, Manifold::kB}) {
    for (Manifold mr : {Manifold::kA, Manifold::kB}) {
      const ComplexMatrix block = sector_block(spec.space, x0, ml, mr);
      if (block.norm() == 0.0) continue;
      out += propagate_lindblad_two_sided(protocol_hamiltonian_fn(spec, ml),
                                          protocol_hamiltonian_fn(spec, mr), diss, block, 0.0, t1,
                                          cfg, bp);
    }
  }
  return out;
}

}  // namespace dstirap
