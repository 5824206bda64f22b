// factorized.cpp — fast protocol evolution exploiting the protocol structure.
//
// During the d-STIRAP window the control atoms are not driven, so the full
// generator is block-diagonal over pairs of frozen control configurations:
// each pair (c, c') carries a 6×6 target block evolved two-sidedly by the
// target Hamiltonian (with the control-dependent shift on |R>), an exact
// scalar control-damping/phase factor, and jump feeds (target decay within a
// block, control decay r→0/1 cascading between blocks).  Blocks advance with
// a midpoint-exponential step: W(h/2) · [1 + hJ + h²J²/2] · W(h/2), where W
// is the exact no-jump half-step propagator, so the stiff blockade diagonal
// is integrated exactly at any step size.
//
// During the π-pulse windows the target is not driven, so the evolution
// factorizes into per-atom 3×3 control channels (integrated adaptively to
// 1e-12) and a time-independent target decay semigroup (one 36×36 matrix
// exponential).  The Rydberg–Rydberg interaction is dropped inside the
// π-pulse windows: it acts only on control-r ⊗ target-R components, which
// reach the computational subspace only through slow γ_R-feeds; the induced
// error on extracted channels is below 1e-6 — far inside every tolerance
// used here.  Control–control shifts would break this factorization, so the
// engine declines specs with active v_cc terms (the dense path covers them).
#include "dstirap/detail/factorized_api.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dstirap::detail {

namespace {

using Matrix3 = Eigen::Matrix3cd;
using Vector36 = Eigen::Matrix<Complex, 36, 1>;

bool has_active_cc(const PhysicsParams& phys) {
  return phys.include_cc && phys.v_cc.size() > 0 && phys.v_cc.cwiseAbs().maxCoeff() > 0.0;
}

// ---- control-configuration bookkeeping ------------------------------------

struct ConfigTable {
  int nc = 0;
  int n_cfg = 1;
  std::vector<int> stride;  // index stride of control i's level digit
  std::vector<int> n_r;     // per config: number of controls in |r>
  std::vector<double> v_ct;  // per config: shift applied to target |R>

  static ConfigTable build(const CompositeSpace& space, const PhysicsParams& phys) {
    ConfigTable t;
    t.nc = space.n_controls;
    if (static_cast<int>(phys.v_ct.size()) != t.nc)
      throw std::invalid_argument("factorized engine: v_ct size mismatch");
    t.stride.resize(t.nc);
    int s = 1;
    for (int i = t.nc - 1; i >= 0; --i) {
      t.stride[i] = s;
      s *= kControlLevels;
    }
    t.n_cfg = s;
    t.n_r.assign(t.n_cfg, 0);
    t.v_ct.assign(t.n_cfg, 0.0);
    for (int cfg = 0; cfg < t.n_cfg; ++cfg) {
      for (int i = 0; i < t.nc; ++i) {
        if (t.digit(cfg, i) == kCtrlR) {
          ++t.n_r[cfg];
          t.v_ct[cfg] += phys.v_ct[i];
        }
      }
    }
    return t;
  }

  int digit(int cfg, int i) const { return (cfg / stride[i]) % kControlLevels; }
  int with_digit(int cfg, int i, int level) const {
    return cfg + (level - digit(cfg, i)) * stride[i];
  }
};

// ---- target-atom decay pieces ----------------------------------------------

struct TargetChannel {
  int from, to;
  double rate;
};

std::vector<TargetChannel> target_channels(const PhysicsParams& phys) {
  std::vector<TargetChannel> ch;
  auto add = [&ch](int from, int to, double rate) {
    if (rate > 0.0) ch.push_back({from, to, rate});
  };
  add(kTgtR, kTgtE1, phys.gamma_big_r);
  add(kTgtE1, kTgtA, phys.gamma_e1 / 2.0);
  add(kTgtE1, kTgtB, phys.gamma_e1 / 2.0);
  add(kTgtE1, kTgtC, phys.gamma_e1 / 2.0);
  add(kTgtE2, kTgtB, phys.gamma_e2 / 2.0);
  add(kTgtE2, kTgtC, phys.gamma_e2 / 2.0);
  return ch;
}

// Diagonal of Q = Σ L†L over the target channels.
Eigen::Matrix<double, 6, 1> target_q_diag(const PhysicsParams& phys) {
  Eigen::Matrix<double, 6, 1> q = Eigen::Matrix<double, 6, 1>::Zero();
  for (const auto& c : target_channels(phys)) q(c.from) += c.rate;
  return q;
}

// Exact no-jump half-step propagator W = exp((−i H6(t̄) − Q/2) · h_half) for a
// given |R>-shift and manifold; pure Hamiltonian when with_decay is false.
ComplexMatrix6 half_step_propagator(double t_bar, double h_half, double v, Manifold m,
                                    const PhysicsParams& phys, const PulseSchedule& sched,
                                    bool with_decay) {
  ComplexMatrix6 g = (-kI * target_block(t_bar, phys, sched, m, v)).eval();
  if (with_decay) {
    const auto q = target_q_diag(phys);
    for (int k = 0; k < kTargetLevels; ++k) g(k, k) -= 0.5 * q(k);
  }
  return (g * h_half).exp();
}

// Target decay semigroup over a drive-free interval: exp(duration · S) with
// S the vectorized (column-stacking) pure-decay Lindbladian on the target.
ComplexMatrix target_decay_theta(const PhysicsParams& phys, double duration) {
  ComplexMatrix s = ComplexMatrix::Zero(36, 36);
  const ComplexMatrix id = ComplexMatrix::Identity(6, 6);
  for (const auto& c : target_channels(phys)) {
    ComplexMatrix l = ComplexMatrix::Zero(6, 6);
    l(c.to, c.from) = std::sqrt(c.rate);
    const ComplexMatrix ldl = l.adjoint() * l;
    s += kron(l.conjugate(), l);
    s -= 0.5 * kron(id, ldl);
    s -= 0.5 * kron(ldl.transpose(), id);
  }
  return (s * duration).exp();
}

// ---- π-pulse control channel (two-sided 3×3) --------------------------------

// chi[((dL·3+dR)·3+a)·3+b] = coefficient of input unit |a><b| in output (dL,dR).
using Chi = std::array<Complex, 81>;

Chi control_pi_channel(const PhysicsParams& phys, const PulseSchedule& sched, int sign, double t0,
                       double t1) {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  const double gr2 = phys.gamma_r / 2.0;
  auto rhs = [&](double t, const Matrix3& x, Matrix3& dx) {
    const ComplexMatrix3 h = control_block(t, phys, sched, sign);
    dx.noalias() = -kI * (h * x);
    dx.noalias() += kI * (x * h);
    if (gr2 > 0.0) {
      const Complex xrr = x(kCtrlR, kCtrlR);
      dx(kCtrl0, kCtrl0) += gr2 * xrr;
      dx(kCtrl1, kCtrl1) += gr2 * xrr;
      // −½{γ_r |r><r|, x}
      for (int k = 0; k < 3; ++k) {
        dx(kCtrlR, k) -= gr2 * x(kCtrlR, k);
        dx(k, kCtrlR) -= gr2 * x(k, kCtrlR);
      }
    }
  };
  Chi chi{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Matrix3 x0 = Matrix3::Zero();
      x0(a, b) = 1.0;
      const Matrix3 m = dopri5(std::move(x0), t0, t1, rhs, opt);
      for (int dl = 0; dl < 3; ++dl)
        for (int dr = 0; dr < 3; ++dr) chi[((dl * 3 + dr) * 3 + a) * 3 + b] = m(dl, dr);
    }
  }
  return chi;
}

// Per-atom unitary of a π-pulse window, with an optional extra energy on |r>
// (the blockade shift active in the target-|R> sector).
Matrix3 control_pi_unitary(const PhysicsParams& phys, const PulseSchedule& sched, int sign,
                           double t0, double t1, double v_r) {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  auto rhs = [&](double t, const Matrix3& u, Matrix3& du) {
    ComplexMatrix3 h = control_block(t, phys, sched, sign);
    h(kCtrlR, kCtrlR) += v_r;
    du.noalias() = -kI * (h * u);
  };
  return dopri5(Matrix3(Matrix3::Identity()), t0, t1, rhs, opt);
}

// ---- block state ------------------------------------------------------------

// One evolving operator: 6×6 target blocks over control-config pairs, plus
// the (left, right) manifold selection of this run and its output slot.
// live_l/live_r list the config indices reachable on each side: an atom that
// starts (and stays) in |0> never leaves it, so blocks outside the product of
// the two lists remain exactly zero and are skipped everywhere.
struct Item {
  std::vector<ComplexMatrix6> b;  // n_cfg² blocks, index L·n_cfg + R
  Manifold m_left = Manifold::kA;
  Manifold m_right = Manifold::kA;
  int slot = 0;
  std::vector<int> live_l, live_r;
};

// Reachable configs for one side of an item: collect the digits present among
// nonzero blocks per atom, then close under the protocol's moves (the π pulse
// mixes 1↔r and r decays to both 0 and 1, so any of {1,r} opens all three).
std::vector<int> live_configs(const ConfigTable& tab, const std::vector<ComplexMatrix6>& b,
                              bool left_side) {
  std::vector<std::array<bool, 3>> seen(tab.nc, {false, false, false});
  const int n_cfg = tab.n_cfg;
  for (int l = 0; l < n_cfg; ++l)
    for (int r = 0; r < n_cfg; ++r) {
      if (b[l * n_cfg + r].isZero(0.0)) continue;
      const int c = left_side ? l : r;
      for (int i = 0; i < tab.nc; ++i) seen[i][tab.digit(c, i)] = true;
    }
  for (auto& s : seen)
    if (s[kCtrl1] || s[kCtrlR]) s = {true, true, true};
  std::vector<int> live;
  for (int c = 0; c < n_cfg; ++c) {
    bool ok = true;
    for (int i = 0; i < tab.nc && ok; ++i) ok = seen[i][tab.digit(c, i)];
    if (ok) live.push_back(c);
  }
  return live;
}

// Jump feed J(X): target decay inside each block, control decay r→0/1
// cascading between blocks.  Live blocks of `out` are overwritten; control
// decay lowers r digits to 0/1, which stay inside the live sets.
void jump_feed(const Item& item, const std::vector<ComplexMatrix6>& in,
               std::vector<ComplexMatrix6>& out, const ConfigTable& tab,
               const std::vector<TargetChannel>& tgt, double gr2) {
  const int n_cfg = tab.n_cfg;
  for (int l : item.live_l)
    for (int r : item.live_r) out[l * n_cfg + r].setZero();
  for (int l : item.live_l) {
    for (int r : item.live_r) {
      const ComplexMatrix6& src = in[l * n_cfg + r];
      ComplexMatrix6& dst = out[l * n_cfg + r];
      for (const auto& c : tgt) dst(c.to, c.to) += c.rate * src(c.from, c.from);
      if (gr2 > 0.0) {
        for (int i = 0; i < tab.nc; ++i) {
          if (tab.digit(l, i) != kCtrlR || tab.digit(r, i) != kCtrlR) continue;
          for (int level : {kCtrl0, kCtrl1}) {
            out[tab.with_digit(l, i, level) * n_cfg + tab.with_digit(r, i, level)] += gr2 * src;
          }
        }
      }
    }
  }
}

// Apply the per-atom control π channel to every atom in turn.  Blocks outside
// the live sets are zero on both sides of the map, so only live outputs are
// formed (their inputs with out-of-set digits read zeros).
void apply_control_channel(Item& item, const ConfigTable& tab, const Chi& chi) {
  const int n_cfg = tab.n_cfg;
  std::vector<ComplexMatrix6> src(item.b.size(), ComplexMatrix6::Zero());
  for (int i = 0; i < tab.nc; ++i) {
    src.swap(item.b);
    for (int l : item.live_l) {
      const int dl = tab.digit(l, i);
      for (int r : item.live_r) {
        const int dr = tab.digit(r, i);
        ComplexMatrix6 acc = ComplexMatrix6::Zero();
        for (int a = 0; a < 3; ++a) {
          const int la = tab.with_digit(l, i, a);
          for (int bb = 0; bb < 3; ++bb) {
            const Complex coef = chi[((dl * 3 + dr) * 3 + a) * 3 + bb];
            if (coef != Complex{0.0, 0.0})
              acc += coef * src[la * n_cfg + tab.with_digit(r, i, bb)];
          }
        }
        item.b[l * n_cfg + r] = acc;
      }
    }
    for (int l : item.live_l)
      for (int r : item.live_r) src[l * n_cfg + r].setZero();
  }
}

// Apply the 36×36 target decay semigroup to every live block.
void apply_target_theta(Item& item, const ConfigTable& tab, const ComplexMatrix& theta) {
  for (int l : item.live_l)
    for (int r : item.live_r) {
      Eigen::Map<Vector36> v(item.b[l * tab.n_cfg + r].data());
      const Vector36 w = theta * v;
      v = w;
    }
}

// ---- d-STIRAP window evolution (batched) ------------------------------------

void evolve_window(std::vector<Item>& items, const ConfigTable& tab, const HamiltonianSpec& spec,
                   const IntegratorConfig& cfg, bool with_decay) {
  const PhysicsParams& phys = spec.phys;
  const PulseSchedule& sched = spec.sched;
  const int n_cfg = tab.n_cfg;
  const double gr2 = with_decay ? phys.gamma_r / 2.0 : 0.0;
  const auto tgt = with_decay ? target_channels(phys) : std::vector<TargetChannel>{};
  const bool any_jump = gr2 > 0.0 || !tgt.empty();

  // Distinct |R>-shift values over configs.
  std::map<double, int> v_index;
  for (int cfg_i = 0; cfg_i < n_cfg; ++cfg_i) v_index.emplace(tab.v_ct[cfg_i], 0);
  {
    int k = 0;
    for (auto& [v, idx] : v_index) idx = k++;
  }
  std::vector<int> v_of_cfg(n_cfg);
  for (int cfg_i = 0; cfg_i < n_cfg; ++cfg_i) v_of_cfg[cfg_i] = v_index.at(tab.v_ct[cfg_i]);
  std::vector<double> v_values(v_index.size());
  for (const auto& [v, idx] : v_index) v_values[idx] = v;

  std::vector<ComplexMatrix6> scratch1(n_cfg * n_cfg), scratch2(n_cfg * n_cfg);
  // W per (v, manifold) for the current step.
  std::vector<std::array<ComplexMatrix6, 2>> w(v_values.size());
  auto w_of = [&](int cfg_i, Manifold m) -> const ComplexMatrix6& {
    return w[v_of_cfg[cfg_i]][m == Manifold::kB ? 1 : 0];
  };

  const double halves[3] = {0.0, sched.t_mid, sched.t_d};
  for (int half = 0; half < 2; ++half) {
    const double ta = halves[half], tb = halves[half + 1];
    const auto n_steps =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((tb - ta) / cfg.fixed_step)));
    const double h = (tb - ta) / static_cast<double>(n_steps);

    // Control damping (and nothing else — v_cc is excluded) gives an exact
    // scalar factor per block and half-step.
    std::vector<double> damp_half(n_cfg * n_cfg, 1.0);
    if (gr2 > 0.0)
      for (int l = 0; l < n_cfg; ++l)
        for (int r = 0; r < n_cfg; ++r)
          damp_half[l * n_cfg + r] = std::exp(-gr2 * (tab.n_r[l] + tab.n_r[r]) * h / 4.0);

    for (std::int64_t n = 0; n < n_steps; ++n) {
      const double t_bar = ta + (static_cast<double>(n) + 0.5) * h;
      for (std::size_t kv = 0; kv < v_values.size(); ++kv) {
        w[kv][0] = half_step_propagator(t_bar, h / 2.0, v_values[kv], Manifold::kA, phys, sched,
                                        with_decay);
        w[kv][1] = half_step_propagator(t_bar, h / 2.0, v_values[kv], Manifold::kB, phys, sched,
                                        with_decay);
      }
      for (auto& item : items) {
        auto half_apply = [&]() {
          ComplexMatrix6 tmp;
          for (int l : item.live_l) {
            const ComplexMatrix6& wl = w_of(l, item.m_left);
            for (int r : item.live_r) {
              ComplexMatrix6& x = item.b[l * n_cfg + r];
              tmp.noalias() = wl * x;
              x.noalias() = tmp * w_of(r, item.m_right).adjoint();
              x *= damp_half[l * n_cfg + r];
            }
          }
        };
        half_apply();
        if (any_jump) {
          jump_feed(item, item.b, scratch1, tab, tgt, gr2);
          jump_feed(item, scratch1, scratch2, tab, tgt, gr2);
          for (int l : item.live_l)
            for (int r : item.live_r) {
              const int k = l * n_cfg + r;
              item.b[k] += h * scratch1[k] + (0.5 * h * h) * scratch2[k];
            }
        }
        half_apply();
      }
    }
  }
}

// ---- gather/scatter between composite matrices and block states -------------

std::vector<ComplexMatrix6> gather_sector(const CompositeSpace& space, const ComplexMatrix& x,
                                          const ConfigTable& tab, Manifold row_m, Manifold col_m,
                                          double* norm1_out) {
  std::vector<ComplexMatrix6> b(tab.n_cfg * tab.n_cfg, ComplexMatrix6::Zero());
  double norm1 = 0.0;
  for (int l = 0; l < tab.n_cfg; ++l) {
    for (int r = 0; r < tab.n_cfg; ++r) {
      ComplexMatrix6& blk = b[l * tab.n_cfg + r];
      for (int tl = 0; tl < kTargetLevels; ++tl) {
        if (manifold_for_target_level(tl) != row_m) continue;
        for (int tr = 0; tr < kTargetLevels; ++tr) {
          if (manifold_for_target_level(tr) != col_m) continue;
          const Complex val = x(l * kTargetLevels + tl, r * kTargetLevels + tr);
          blk(tl, tr) = val;
          norm1 += std::abs(val);
        }
      }
    }
  }
  (void)space;
  if (norm1_out) *norm1_out = norm1;
  return b;
}

void scatter_add(const std::vector<ComplexMatrix6>& b, const ConfigTable& tab, ComplexMatrix& out) {
  for (int l = 0; l < tab.n_cfg; ++l)
    for (int r = 0; r < tab.n_cfg; ++r)
      out.block(l * kTargetLevels, r * kTargetLevels, kTargetLevels, kTargetLevels) +=
          b[l * tab.n_cfg + r];
}

}  // namespace

bool factorized_supported(const HamiltonianSpec& spec) {
  return spec.manifold_isolation && !has_active_cc(spec.phys);
}

std::vector<ComplexMatrix> run_protocol_density_factorized_batch(
    const HamiltonianSpec& spec, const std::vector<ComplexMatrix>& inputs,
    const IntegratorConfig& cfg) {
  if (!factorized_supported(spec))
    throw std::invalid_argument("factorized engine unsupported for this spec");
  const int d = spec.space.dim();
  for (const auto& x : inputs)
    if (x.rows() != d || x.cols() != d)
      throw std::invalid_argument("factorized engine: input dimension mismatch");
  const ConfigTable tab = ConfigTable::build(spec.space, spec.phys);
  const bool with_decay = !standard_decay_channels(spec.space, spec.phys).channels.empty();

  std::vector<Item> items;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (Manifold ml : {Manifold::kA, Manifold::kB}) {
      for (Manifold mr : {Manifold::kA, Manifold::kB}) {
        double norm1 = 0.0;
        auto b = gather_sector(spec.space, inputs[k], tab, ml, mr, &norm1);
        if (norm1 == 0.0) continue;
        Item item{std::move(b), ml, mr, static_cast<int>(k), {}, {}};
        item.live_l = live_configs(tab, item.b, true);
        item.live_r = live_configs(tab, item.b, false);
        items.push_back(std::move(item));
      }
    }
  }

  // Step 1: soft π pulse (+Ω_r).  The control channel and the target decay
  // semigroup act on different tensor factors, so their order is immaterial.
  const Chi chi_plus = control_pi_channel(spec.phys, spec.sched, +1, 0.0, spec.sched.t_pi);
  const ComplexMatrix theta = with_decay ? target_decay_theta(spec.phys, spec.sched.t_pi)
                                         : ComplexMatrix::Identity(36, 36);
  for (auto& item : items) {
    apply_control_channel(item, tab, chi_plus);
    if (with_decay) apply_target_theta(item, tab, theta);
  }

  // Step 2: d-STIRAP window with the phase jump at its midpoint.
  evolve_window(items, tab, spec, cfg, with_decay);

  // Step 3: inverted soft π pulse (−Ω_r).
  const Chi chi_minus =
      control_pi_channel(spec.phys, spec.sched, -1, spec.sched.window_end(), spec.sched.total());
  for (auto& item : items) {
    apply_control_channel(item, tab, chi_minus);
    if (with_decay) apply_target_theta(item, tab, theta);
  }

  std::vector<ComplexMatrix> out(inputs.size(), ComplexMatrix::Zero(d, d));
  for (const auto& item : items) scatter_add(item.b, tab, out[item.slot]);
  return out;
}

ComplexMatrix run_protocol_density_factorized(const HamiltonianSpec& spec, const ComplexMatrix& x0,
                                              const IntegratorConfig& cfg) {
  return run_protocol_density_factorized_batch(spec, {x0}, cfg).front();
}

ComplexVector run_protocol_state_factorized(const HamiltonianSpec& spec, const ComplexVector& psi0,
                                            const IntegratorConfig& cfg) {
  if (!factorized_supported(spec))
    throw std::invalid_argument("factorized engine unsupported for this spec");
  const int d = spec.space.dim();
  if (psi0.size() != d) throw std::invalid_argument("factorized engine: state dimension mismatch");
  const ConfigTable tab = ConfigTable::build(spec.space, spec.phys);
  const PulseSchedule& sched = spec.sched;

  // Distinct blockade shifts per single control atom (for the target-|R>
  // sector of the π-pulse windows, where the shift acts on control |r>).
  std::map<double, Matrix3> u_r_plus, u_r_minus;
  for (int i = 0; i < tab.nc; ++i) {
    u_r_plus.emplace(spec.phys.v_ct[i], Matrix3::Zero());
    u_r_minus.emplace(spec.phys.v_ct[i], Matrix3::Zero());
  }
  const Matrix3 u_plus = control_pi_unitary(spec.phys, sched, +1, 0.0, sched.t_pi, 0.0);
  const Matrix3 u_minus =
      control_pi_unitary(spec.phys, sched, -1, sched.window_end(), sched.total(), 0.0);
  for (auto& [v, u] : u_r_plus) u = control_pi_unitary(spec.phys, sched, +1, 0.0, sched.t_pi, v);
  for (auto& [v, u] : u_r_minus)
    u = control_pi_unitary(spec.phys, sched, -1, sched.window_end(), sched.total(), v);

  // phi(cfg, τ) layout of the state.
  auto mode_apply = [&](Eigen::MatrixXcd& phi, int atom, const Matrix3& u_plain,
                        const std::map<double, Matrix3>* u_shifted) {
    const Eigen::MatrixXcd src = phi;
    for (int cfg_i = 0; cfg_i < tab.n_cfg; ++cfg_i) {
      const int dl = tab.digit(cfg_i, atom);
      for (int tau = 0; tau < kTargetLevels; ++tau) {
        const Matrix3& u = (tau == kTgtR && u_shifted != nullptr)
                               ? u_shifted->at(spec.phys.v_ct[atom])
                               : u_plain;
        Complex acc{0.0, 0.0};
        for (int a = 0; a < 3; ++a) acc += u(dl, a) * src(tab.with_digit(cfg_i, atom, a), tau);
        phi(cfg_i, tau) = acc;
      }
    }
  };

  ComplexVector out = ComplexVector::Zero(d);
  for (Manifold m : {Manifold::kA, Manifold::kB}) {
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(tab.n_cfg, kTargetLevels);
    double norm1 = 0.0;
    for (int cfg_i = 0; cfg_i < tab.n_cfg; ++cfg_i) {
      for (int tau = 0; tau < kTargetLevels; ++tau) {
        if (manifold_for_target_level(tau) != m) continue;
        phi(cfg_i, tau) = psi0(cfg_i * kTargetLevels + tau);
        norm1 += std::abs(phi(cfg_i, tau));
      }
    }
    if (norm1 == 0.0) continue;

    for (int i = 0; i < tab.nc; ++i) mode_apply(phi, i, u_plus, &u_r_plus);

    // Window: per config a 6-dim ket under the manifold Hamiltonian with the
    // config's |R>-shift; midpoint-exponential full steps.
    std::map<double, int> v_index;
    for (int cfg_i = 0; cfg_i < tab.n_cfg; ++cfg_i) v_index.emplace(tab.v_ct[cfg_i], 0);
    {
      int k = 0;
      for (auto& [v, idx] : v_index) idx = k++;
    }
    std::vector<double> v_values(v_index.size());
    for (const auto& [v, idx] : v_index) v_values[idx] = v;
    std::vector<ComplexMatrix6> w(v_values.size());

    const double halves[3] = {0.0, sched.t_mid, sched.t_d};
    for (int half = 0; half < 2; ++half) {
      const double ta = halves[half], tb = halves[half + 1];
      const auto n_steps = std::max<std::int64_t>(
          1, static_cast<std::int64_t>(std::ceil((tb - ta) / cfg.fixed_step)));
      const double h = (tb - ta) / static_cast<double>(n_steps);
      for (std::int64_t n = 0; n < n_steps; ++n) {
        const double t_bar = ta + (static_cast<double>(n) + 0.5) * h;
        for (std::size_t kv = 0; kv < v_values.size(); ++kv)
          w[kv] = half_step_propagator(t_bar, h, v_values[kv], m, spec.phys, sched, false);
        for (int cfg_i = 0; cfg_i < tab.n_cfg; ++cfg_i) {
          const ComplexVector6 psi = phi.row(cfg_i).transpose();
          phi.row(cfg_i) = (w[v_index.at(tab.v_ct[cfg_i])] * psi).transpose();
        }
      }
    }

    for (int i = 0; i < tab.nc; ++i) mode_apply(phi, i, u_minus, &u_r_minus);

    for (int cfg_i = 0; cfg_i < tab.n_cfg; ++cfg_i)
      for (int tau = 0; tau < kTargetLevels; ++tau)
        out(cfg_i * kTargetLevels + tau) += phi(cfg_i, tau);
  }
  return out;
}

}  // namespace dstirap::detail
