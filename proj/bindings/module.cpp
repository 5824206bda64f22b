// module.cpp — pybind11 bindings for the main simulator operations.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dstirap/analysis.hpp"
#include "dstirap/config.hpp"
#include "dstirap/grover.hpp"

namespace py = pybind11;

namespace {

using namespace dstirap;

ExtractionOptions make_options(const std::string& engine, int threads, double fixed_step) {
  ExtractionOptions opts;
  if (engine == "dense")
    opts.engine = Engine::kDense;
  else if (engine == "factorized")
    opts.engine = Engine::kFactorized;
  else if (engine == "auto")
    opts.engine = Engine::kAuto;
  else
    throw std::invalid_argument("engine must be auto, dense, or factorized");
  opts.threads = threads;
  if (fixed_step > 0.0) opts.integrator.fixed_step = fixed_step;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "double-STIRAP geometric phase-gate simulator";

  py::class_<PhysicsParams>(m, "PhysicsParams")
      .def(py::init<>())
      .def_readwrite("omega0", &PhysicsParams::omega0)
      .def_readwrite("omega_r", &PhysicsParams::omega_r)
      .def_readwrite("omega_c", &PhysicsParams::omega_c)
      .def_readwrite("delta", &PhysicsParams::delta)
      .def_readwrite("gamma_r", &PhysicsParams::gamma_r)
      .def_readwrite("gamma_big_r", &PhysicsParams::gamma_big_r)
      .def_readwrite("gamma_e1", &PhysicsParams::gamma_e1)
      .def_readwrite("gamma_e2", &PhysicsParams::gamma_e2)
      .def_readwrite("gamma_phase", &PhysicsParams::gamma_phase)
      .def_readwrite("xi", &PhysicsParams::xi)
      .def_readwrite("zeta", &PhysicsParams::zeta)
      .def_readwrite("sigma_frac", &PhysicsParams::sigma_frac)
      .def_readwrite("delta_frac", &PhysicsParams::delta_frac)
      .def_readwrite("v_ct", &PhysicsParams::v_ct)
      .def_readwrite("v_cc", &PhysicsParams::v_cc)
      .def_readwrite("include_cc", &PhysicsParams::include_cc);

  m.def("cesium_defaults", &cesium_defaults, py::arg("n_controls"),
        "Cs baseline parameters with the geometry preset for n controls");
  m.def("c6_atomic_units", &c6_atomic_units, py::arg("n_principal"));
  m.def("c6_to_freq_units", &c6_to_freq_units, py::arg("c6_au"));
  m.def("interaction_strength", &interaction_strength, py::arg("n_principal"), py::arg("l_um"),
        "van der Waals shift 2*pi*|C6|/l^6 in rad/us");

  m.def(
      "transfer_amplitude",
      [](const PhysicsParams& phys, double t_total_us, int control_level) {
        const HamiltonianSpec spec = make_protocol_spec(phys, 1, t_total_us);
        const int idx = spec.space.index({control_level}, kTgtA);
        ComplexVector psi0 = ComplexVector::Zero(spec.space.dim());
        psi0(idx) = 1.0;
        return run_protocol_state(spec, psi0, IntegratorConfig{})(idx);
      },
      py::arg("phys"), py::arg("t_total_us"), py::arg("control_level") = 0,
      "final amplitude on the initial |control, A> state under unitary evolution");

  m.def(
      "gate_fidelity",
      [](const PhysicsParams& phys, int n_controls, double t_total_us, const std::string& engine,
         int threads, double fixed_step_us) {
        return protocol_gate_fidelity(phys, n_controls, t_total_us,
                                      make_options(engine, threads, fixed_step_us))
            .average_fidelity;
      },
      py::arg("phys"), py::arg("n_controls"), py::arg("t_total_us"), py::arg("engine") = "auto",
      py::arg("threads") = 1, py::arg("fixed_step_us") = 0.0,
      "average gate fidelity of the protocol against the ideal phase gate");

  m.def(
      "extract_channel_superop",
      [](const PhysicsParams& phys, int n_controls, double t_total_us, const std::string& engine,
         int threads, double fixed_step_us) {
        const HamiltonianSpec spec = make_protocol_spec(phys, n_controls, t_total_us);
        return extract_channel(spec, make_options(engine, threads, fixed_step_us)).superop;
      },
      py::arg("phys"), py::arg("n_controls"), py::arg("t_total_us"), py::arg("engine") = "auto",
      py::arg("threads") = 1, py::arg("fixed_step_us") = 0.0,
      "column-stacking superoperator of the extracted qubit channel");

  m.def("ideal_gate_unitary", &ideal_gate_unitary, py::arg("n_qubits"), py::arg("gamma_phase"));
  m.def("average_gate_fidelity_unitary", &average_gate_fidelity_unitary, py::arg("v_actual"),
        py::arg("u_ideal"));

  m.def("optimal_iterations", &optimal_iterations, py::arg("n_qubits"));
  m.def("ideal_success_probability", &ideal_success_probability, py::arg("n_qubits"),
        py::arg("iterations"));
  m.def("run_grover_ideal", &run_grover_ideal, py::arg("n_qubits"), py::arg("iterations"));
  m.def(
      "grover_success",
      [](const PhysicsParams& phys, int n_qubits, double t_total_us, const std::string& engine,
         int threads, double fixed_step_us) {
        const HamiltonianSpec spec = make_protocol_spec(phys, n_qubits - 1, t_total_us);
        const GateChannel chan = extract_channel(spec, make_options(engine, threads, fixed_step_us));
        return run_grover(chan, optimal_iterations(n_qubits));
      },
      py::arg("phys"), py::arg("n_qubits"), py::arg("t_total_us"), py::arg("engine") = "auto",
      py::arg("threads") = 1, py::arg("fixed_step_us") = 0.0,
      "Grover success probability with the channel extracted at this gate time");

  m.def("version", [] { return std::string(kToolVersion); });
}
