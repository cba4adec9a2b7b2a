#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zer/config.hpp"
#include "zer/gaussian.hpp"
#include "zer/model.hpp"
#include "zer/rg.hpp"

namespace py = pybind11;

namespace {

zer::ModelSpec make_spec(int cells, int orbitals_per_cell,
                         const std::vector<std::tuple<int, int, int,
                                                      std::complex<double>>>& hoppings,
                         double filling) {
  zer::ModelSpec spec;
  spec.cells = cells;
  spec.orbitals_per_cell = orbitals_per_cell;
  spec.filling = filling;
  for (const auto& [d, a, b, t] : hoppings) spec.hoppings.push_back({d, a, b, t});
  zer::validate_model(spec);
  return spec;
}

py::dict trace_summary(const zer::RGTrace& trace) {
  py::dict d;
  d["termination_reason"] = trace.termination_reason;
  d["core_modes"] = trace.core.size();
  d["nontrivial_steps"] = trace.nontrivial_steps;
  d["accepted_steps"] = trace.accepted_steps;
  d["n_filled"] = trace.n_filled;
  d["fermi_tie"] = trace.fermi_tie;
  py::list steps;
  for (const auto& rec : trace.steps) {
    py::dict s;
    s["step"] = rec.step;
    s["cells"] = rec.cells;
    s["orbitals"] = rec.orbitals;
    s["epsilon"] = rec.epsilon;
    s["status"] = zer::to_string(rec.status);
    s["z_f"] = rec.z_f;
    s["n_courier"] = rec.n_courier;
    s["z_e"] = rec.z_e;
    s["gap"] = rec.gap;
    s["residual_frozen"] = rec.residual_frozen;
    s["S_courier"] = rec.S_courier_exact;
    s["bound_total"] = rec.bound.bound_total;
    steps.append(s);
  }
  d["steps"] = steps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "zipper entanglement renormalization for free fermions";

  py::class_<zer::ModelSpec>(m, "ModelSpec")
      .def(py::init(&make_spec), py::arg("cells"), py::arg("orbitals_per_cell"),
           py::arg("hoppings"), py::arg("filling"))
      .def_readonly("cells", &zer::ModelSpec::cells)
      .def_readonly("orbitals_per_cell", &zer::ModelSpec::orbitals_per_cell)
      .def_readonly("filling", &zer::ModelSpec::filling);

  py::class_<zer::RGConfig>(m, "RGConfig")
      .def(py::init([](std::vector<double> epsilon_schedule, int region_width_cells,
                       int blocking_factor, double delta_null, double gap_min,
                       int max_steps, int core_size_threshold,
                       double residual_abort_multiplier) {
             zer::RGConfig c;
             c.epsilon_schedule = std::move(epsilon_schedule);
             c.region_width_cells = region_width_cells;
             c.blocking_factor = blocking_factor;
             c.delta_null = delta_null;
             c.gap_min = gap_min;
             c.max_steps = max_steps;
             c.core_size_threshold = core_size_threshold;
             c.residual_abort_multiplier = residual_abort_multiplier;
             zer::validate_rg_config(c);
             return c;
           }),
           py::arg("epsilon_schedule"), py::arg("region_width_cells") = 2,
           py::arg("blocking_factor") = 2, py::arg("delta_null") = 1e-6,
           py::arg("gap_min") = 0.1, py::arg("max_steps") = 64,
           py::arg("core_size_threshold") = 8,
           py::arg("residual_abort_multiplier") = 10.0);

  m.def("bloch_hamiltonian", &zer::bloch_hamiltonian, py::arg("spec"),
        py::arg("k"), "m x m Bloch block at momentum k");

  m.def(
      "ground_state_correlation",
      [](const zer::ModelSpec& spec) {
        zer::GroundState gs = zer::ground_state_correlation(spec);
        return py::make_tuple(gs.C.data, gs.n_filled, gs.fermi_tie);
      },
      py::arg("spec"),
      "returns (correlation matrix, filled level count, fermi tie flag)");

  m.def("binary_entropy", &zer::binary_entropy, py::arg("x"));
  m.def(
      "entanglement_entropy",
      [](const Eigen::VectorXd& xi) { return zer::entanglement_entropy(xi); },
      py::arg("xi"), "sum of binary entropies of a spectrum (nats)");
  m.def(
      "entanglement_spectrum",
      [](const Eigen::MatrixXcd& C) {
        zer::CorrelationMatrix cm;
        cm.data = C;
        return zer::entanglement_spectrum(cm);
      },
      py::arg("C"), "eigenvalues clipped to [0,1], descending");

  m.def(
      "run",
      [](const zer::ModelSpec& spec, const zer::RGConfig& config,
         bool with_reconstruction) {
        const zer::RGTrace trace = zer::run_zer(spec, config);
        py::dict d = trace_summary(trace);
        if (with_reconstruction) {
          const zer::CorrelationMatrix approx = zer::reconstruct(trace);
          const zer::GroundState gs = zer::ground_state_correlation(spec);
          d["reconstruction_error"] =
              (approx.data - gs.C.data).cwiseAbs().maxCoeff();
        }
        return d;
      },
      py::arg("spec"), py::arg("config"), py::arg("with_reconstruction") = false,
      "run the full renormalization and return a summary dict");

  m.def(
      "run_preset",
      [](const std::string& name, bool with_reconstruction) {
        const zer::RunConfig rc = zer::preset_config(name);
        const zer::RGTrace trace = zer::run_zer(rc.model, rc.rg);
        py::dict d = trace_summary(trace);
        if (with_reconstruction) {
          const zer::CorrelationMatrix approx = zer::reconstruct(trace);
          const zer::GroundState gs = zer::ground_state_correlation(rc.model);
          d["reconstruction_error"] =
              (approx.data - gs.C.data).cwiseAbs().maxCoeff();
        }
        return d;
      },
      py::arg("name"), py::arg("with_reconstruction") = false,
      "run one of the built-in configurations (ssh, nn, extended)");

  m.def("preset_names", &zer::preset_names);
}
