// atom_model.cpp — geometry presets, C6 arithmetic, composite-space indexing.
#include "dstirap/atom_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dstirap {

namespace {
// CODATA: Hartree frequency E_h/h in GHz and Bohr radius in μm.
constexpr double kHartreeGHz = 6.579683920502e6;
constexpr double kBohrUm = 5.29177210903e-5;
constexpr double kPi = std::numbers::pi;
}  // namespace

double c6_atomic_units(double n_principal) {
  if (n_principal <= 0.0) throw std::invalid_argument("c6_atomic_units: n must be positive");
  const double n = n_principal;
  return std::pow(n, 11.0) * (10.64 - 0.6294 * n + 2.33e-3 * n * n);
}

double c6_to_freq_units(double c6_au) {
  const double au_to_ghz_um6 = kHartreeGHz * std::pow(kBohrUm, 6.0);
  return c6_au * au_to_ghz_um6;
}

double interaction_strength(double n_principal, double l_um) {
  if (l_um <= 0.0) throw std::invalid_argument("interaction_strength: distance must be positive");
  const double c6_ghz_um6 = std::abs(c6_to_freq_units(c6_atomic_units(n_principal)));
  const double shift_ghz = c6_ghz_um6 / std::pow(l_um, 6.0);
  return 2.0 * kPi * 1.0e3 * shift_ghz;  // GHz (ordinary) -> rad/μs
}

Geometry Geometry::preset(const std::string& kind, double l_um) {
  if (l_um <= 0.0) throw std::invalid_argument("Geometry::preset: l must be positive");
  Geometry g;
  if (kind == "pair") {
    g.control_positions_um = {{l_um, 0.0}};
  } else if (kind == "chain3") {
    g.control_positions_um = {{-l_um, 0.0}, {l_um, 0.0}};
  } else if (kind == "star4") {
    for (int k = 0; k < 3; ++k) {
      const double phi = kPi / 2.0 + 2.0 * kPi * k / 3.0;
      g.control_positions_um.push_back({l_um * std::cos(phi), l_um * std::sin(phi)});
    }
  } else {
    throw std::invalid_argument("Geometry::preset: unknown preset '" + kind + "'");
  }
  return g;
}

double Geometry::control_target_distance(int i) const {
  const auto& p = control_positions_um.at(i);
  return std::hypot(p[0], p[1]);
}

double Geometry::control_control_distance(int i, int j) const {
  const auto& p = control_positions_um.at(i);
  const auto& q = control_positions_um.at(j);
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

void PhysicsParams::set_interactions_from_geometry(const Geometry& g, double n_principal) {
  const int nc = g.n_controls();
  v_ct.resize(nc);
  for (int i = 0; i < nc; ++i) v_ct[i] = interaction_strength(n_principal, g.control_target_distance(i));
  v_cc = Eigen::MatrixXd::Zero(nc, nc);
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j)
      v_cc(i, j) = v_cc(j, i) = interaction_strength(n_principal, g.control_control_distance(i, j));
}

PhysicsParams cesium_defaults(int n_controls) {
  if (n_controls < 1) throw std::invalid_argument("cesium_defaults: need at least one control");
  PhysicsParams p;
  p.omega0 = 2.0 * kPi * 44.0;  // 44 MHz
  p.omega_r = p.omega0;
  p.omega_c = 3.0 * p.omega0;
  p.delta = kDefaultDeltaOverOmega0 * p.omega0;
  p.gamma_r = 1.0 / 540.0;      // 126S lifetime 540 μs
  p.gamma_big_r = 1.0 / 540.0;
  p.gamma_e1 = 1.0 / 0.13754;   // 137.54 ns
  p.gamma_e2 = 1.0 / 0.16521;   // 165.21 ns
  p.gamma_phase = kPi;
  const char* preset = n_controls == 1 ? "pair" : (n_controls == 2 ? "chain3" : "star4");
  if (n_controls > 3) throw std::invalid_argument("cesium_defaults: no preset beyond three controls");
  p.set_interactions_from_geometry(Geometry::preset(preset, kDefaultSpacingUm), kCs126Principal);
  return p;
}

int CompositeSpace::dim() const {
  int d = kTargetLevels;
  for (int i = 0; i < n_controls; ++i) d *= kControlLevels;
  return d;
}

int CompositeSpace::index(const std::vector<int>& controls, int target) const {
  if (static_cast<int>(controls.size()) != n_controls)
    throw std::invalid_argument("CompositeSpace::index: wrong number of control levels");
  if (target < 0 || target >= kTargetLevels)
    throw std::invalid_argument("CompositeSpace::index: target level out of range");
  int idx = 0;
  for (int c : controls) {
    if (c < 0 || c >= kControlLevels)
      throw std::invalid_argument("CompositeSpace::index: control level out of range");
    idx = idx * kControlLevels + c;
  }
  return idx * kTargetLevels + target;
}

int CompositeSpace::control_level(int idx, int i) const {
  if (i < 0 || i >= n_controls) throw std::invalid_argument("control_level: atom out of range");
  int conf = idx / kTargetLevels;
  for (int k = n_controls - 1; k > i; --k) conf /= kControlLevels;
  return conf % kControlLevels;
}

ComplexMatrix embed_single_atom_op(const CompositeSpace& space, int atom, const ComplexMatrix& op) {
  const int nc = space.n_controls;
  if (atom < 0 || atom > nc) throw std::invalid_argument("embed_single_atom_op: atom out of range");
  const int expected = atom == nc ? kTargetLevels : kControlLevels;
  if (op.rows() != expected || op.cols() != expected)
    throw std::invalid_argument("embed_single_atom_op: operator has wrong dimension");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int a = 0; a <= nc; ++a) {
    const int la = a == nc ? kTargetLevels : kControlLevels;
    out = kron(out, a == atom ? op : ComplexMatrix::Identity(la, la));
  }
  return out;
}

std::vector<int> computational_embedding(const CompositeSpace& space) {
  const int n = space.n_qubits();
  std::vector<int> out;
  out.reserve(1 << n);
  for (int q = 0; q < (1 << n); ++q) {
    std::vector<int> controls(space.n_controls);
    for (int i = 0; i < space.n_controls; ++i) controls[i] = (q >> (n - 1 - i)) & 1;
    const int target = q & 1;  // 0 -> |A>, 1 -> |B>
    out.push_back(space.index(controls, target));
  }
  return out;
}

}  // namespace dstirap
