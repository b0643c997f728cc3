// Python bindings for the controlled-teleportation analysis core.
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "ctpower/analysis.hpp"
#include "ctpower/catalog.hpp"
#include "ctpower/channels.hpp"
#include "ctpower/protocol.hpp"
#include "ctpower/qstate.hpp"
#include "ctpower/report.hpp"

namespace py = pybind11;
using namespace ctpower;

namespace {

Method parse_method(const std::string& name) {
  if (name == "mc") return Method::Mc;
  if (name == "analytic") return Method::Analytic;
  if (name == "both") return Method::Both;
  throw std::invalid_argument("method must be one of: mc, analytic, both");
}

InputMode parse_mode(const std::string& name) {
  if (name == "arbitrary") return InputMode::Arbitrary;
  if (name == "product") return InputMode::Product;
  throw std::invalid_argument("input mode must be one of: arbitrary, product");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Perfect controlled teleportation: schemes, fidelities, control power";

  py::register_exception<NoPauliFrame>(m, "NoPauliFrameError", PyExc_ValueError);

  py::class_<PureState>(m, "PureState")
      .def(py::init<int, const Vector&>(), py::arg("num_qubits"),
           py::arg("amplitudes"))
      .def_readonly("num_qubits", &PureState::num_qubits)
      .def_readonly("amplitudes", &PureState::amplitudes)
      .def("norm", &PureState::norm)
      .def_static("basis", &PureState::basis, py::arg("num_qubits"),
                  py::arg("index"));

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("substream", &RngStream::substream, py::arg("index"));

  py::class_<PauliString>(m, "PauliString")
      .def(py::init<const std::string&>(), py::arg("letters"))
      .def("__str__", &PauliString::str)
      .def("__repr__",
           [](const PauliString& p) { return "PauliString('" + p.str() + "')"; })
      .def("num_qubits", &PauliString::num_qubits)
      .def("is_identity", &PauliString::is_identity)
      .def(py::self == py::self);

  py::class_<Pe4Params>(m, "Pe4Params")
      .def_static("from_squares", &Pe4Params::from_squares, py::arg("a2"),
                  py::arg("b2"), py::arg("c2"), py::arg("d2"))
      .def_readonly("a", &Pe4Params::a)
      .def_readonly("b", &Pe4Params::b)
      .def_readonly("c", &Pe4Params::c)
      .def_readonly("d", &Pe4Params::d);

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init([](const std::string& id, int n, int m_, int variant,
                       const Pe4Params& pe4) {
             return SchemeConfig{id, n, m_, variant, pe4};
           }),
           py::arg("id"), py::arg("n") = 1, py::arg("m") = 1,
           py::arg("variant") = 1, py::arg("pe4") = Pe4Params{})
      .def_readwrite("id", &SchemeConfig::id)
      .def_readwrite("n", &SchemeConfig::n)
      .def_readwrite("m", &SchemeConfig::m)
      .def_readwrite("variant", &SchemeConfig::variant)
      .def_readwrite("pe4", &SchemeConfig::pe4);

  py::class_<ProtocolSpec>(m, "ProtocolSpec")
      .def_readonly("scheme_id", &ProtocolSpec::scheme_id)
      .def_readonly("input_qubits", &ProtocolSpec::input_qubits)
      .def_property_readonly("channel_qubits",
                             [](const ProtocolSpec& s) { return s.channel.num_qubits; })
      .def("num_controllers", &ProtocolSpec::num_controllers);

  py::class_<CorrectionTable>(m, "CorrectionTable")
      .def("__len__",
           [](const CorrectionTable& t) { return t.entries.size(); })
      .def("correction", &CorrectionTable::at, py::arg("outcomes"),
           py::return_value_policy::copy)
      .def("probability",
           [](const CorrectionTable& t, const std::vector<int>& outcomes) {
             return t.probabilities.at(outcomes);
           },
           py::arg("outcomes"))
      .def("outcomes", [](const CorrectionTable& t) {
        std::vector<std::vector<int>> keys;
        keys.reserve(t.entries.size());
        for (const auto& [tuple, entry] : t.entries) keys.push_back(tuple);
        return keys;
      });

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("mean", &McEstimate::mean)
      .def_readonly("stderr_of_mean", &McEstimate::stderr_of_mean)
      .def_readonly("samples", &McEstimate::samples)
      .def("__repr__", [](const McEstimate& e) {
        return "McEstimate(mean=" + format_number(e.mean) +
               ", stderr_of_mean=" + format_number(e.stderr_of_mean) +
               ", samples=" + std::to_string(e.samples) + ")";
      });

  py::class_<ControllerRecord>(m, "ControllerRecord")
      .def_readonly("index", &ControllerRecord::index)
      .def_readonly("qubits", &ControllerRecord::qubits)
      .def_readonly("cf", &ControllerRecord::cf)
      .def_readonly("ncf_mean", &ControllerRecord::ncf_mean)
      .def_readonly("ncf_stderr", &ControllerRecord::ncf_stderr)
      .def_readonly("ncf_analytic", &ControllerRecord::ncf_analytic)
      .def_readonly("cp", &ControllerRecord::cp)
      .def_readonly("sufficient", &ControllerRecord::sufficient);

  py::class_<CriteriaReport>(m, "CriteriaReport")
      .def_readonly("all_qubits_controlled", &CriteriaReport::all_qubits_controlled)
      .def_readonly("uncontrolled_qubits", &CriteriaReport::uncontrolled_qubits)
      .def_readonly("equal_power", &CriteriaReport::equal_power)
      .def_readonly("power_sufficient_all", &CriteriaReport::power_sufficient_all);

  py::class_<AnalysisReport>(m, "AnalysisReport")
      .def_readonly("n", &AnalysisReport::n)
      .def_readonly("classical_limit", &AnalysisReport::classical_limit)
      .def_readonly("min_control_power", &AnalysisReport::min_control_power)
      .def_readonly("method", &AnalysisReport::method)
      .def_readonly("seed", &AnalysisReport::seed)
      .def_readonly("samples", &AnalysisReport::samples)
      .def_readonly("controllers", &AnalysisReport::controllers)
      .def_readonly("criteria", &AnalysisReport::criteria)
      .def("passes", &AnalysisReport::pass)
      .def("to_json", [](const AnalysisReport& r) { return render_report_json(r); })
      .def("to_table", [](const AnalysisReport& r) { return render_report_table(r); })
      .def("to_csv", [](const AnalysisReport& r) { return render_report_csv(r); });

  py::class_<Pe4Row>(m, "Pe4Row")
      .def_readonly("a2", &Pe4Row::a2)
      .def_readonly("b2", &Pe4Row::b2)
      .def_readonly("c2", &Pe4Row::c2)
      .def_readonly("d2", &Pe4Row::d2)
      .def_readonly("cf", &Pe4Row::cf)
      .def_readonly("ncf_analytic", &Pe4Row::ncf_analytic)
      .def_readonly("ncf_mc", &Pe4Row::ncf_mc)
      .def_readonly("ncf_stderr", &Pe4Row::ncf_stderr)
      .def_readonly("passes", &Pe4Row::pass);

  // bounds
  m.def("classical_limit", &classical_limit, py::arg("n"),
        "Classical teleportation fidelity limit 2/(1+2^N)");
  m.def("min_control_power", &min_control_power, py::arg("n"),
        "Minimum adequate control power (2^N-1)/(2^N+1)");
  m.def("controller_qubit_bound", &controller_qubit_bound, py::arg("n"),
        "Minimum number of controller qubits needed for adequate control power");
  m.def("pe4_ncf_analytic", &pe4_ncf_analytic, py::arg("params"),
        "Closed-form average NCF of the partially entangled four-qubit channel");

  // schemes and protocol operations
  m.def("make_scheme", &make_scheme, py::arg("config"));
  m.def("derive_corrections", &derive_corrections, py::arg("spec"));
  m.def("conditioned_fidelity", &conditioned_fidelity, py::arg("spec"),
        py::arg("table"), py::arg("input"));
  m.def("ncf", &ncf, py::arg("spec"), py::arg("table"), py::arg("input"),
        py::arg("excluded"),
        "Fidelity of Bob's state with the input when one controller withholds");
  m.def("average_ncf_analytic",
        [](const ProtocolSpec& spec, const CorrectionTable& table, int excluded) {
          return average_ncf_pauli(pauli_mixture(spec, table, excluded));
        },
        py::arg("spec"), py::arg("table"), py::arg("excluded"),
        "Closed-form Haar average of the non-conditioned fidelity");
  m.def("average_ncf_mc",
        [](const ProtocolSpec& spec, const CorrectionTable& table, int excluded,
           int samples, std::uint64_t seed, const std::string& mode) {
          return average_ncf_mc(spec, table, excluded, samples, RngStream(seed),
                                parse_mode(mode));
        },
        py::arg("spec"), py::arg("table"), py::arg("excluded"),
        py::arg("samples") = 10000, py::arg("seed") = 20240817,
        py::arg("mode") = "arbitrary",
        "Monte-Carlo Haar average of the non-conditioned fidelity");
  m.def("haar_random_state",
        [](int num_qubits, std::uint64_t seed) {
          RngStream rng(seed);
          return haar_random_state(num_qubits, rng);
        },
        py::arg("num_qubits"), py::arg("seed"));

  // full evaluation
  m.def("verdict",
        [](const SchemeConfig& config, const std::string& method, int samples,
           std::uint64_t seed, const std::string& mode) {
          return verdict(config, parse_method(method), samples, seed,
                         parse_mode(mode));
        },
        py::arg("config"), py::arg("method") = "both", py::arg("samples") = 10000,
        py::arg("seed") = 20240817, py::arg("mode") = "arbitrary",
        "Evaluate a scheme against the controller-suitability criteria");
  m.def("pe4_sweep", &pe4_sweep, py::arg("resolution"), py::arg("samples"),
        py::arg("seed"),
        "Analytic and Monte-Carlo NCF over the weight simplex grid");
  m.def("sweep_csv", &render_sweep_csv, py::arg("rows"));
}
