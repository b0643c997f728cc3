#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "ctpower/analysis.hpp"
#include "ctpower/report.hpp"

using namespace ctpower;

namespace {

struct Instance {
  ProtocolSpec spec;
  CorrectionTable table;
};

Instance make(const SchemeConfig& config) {
  Instance inst;
  inst.spec = make_scheme(config);
  inst.table = derive_corrections(inst.spec);
  return inst;
}

// Haar-averaged NCF with the withheld outcome keyed at an arbitrary
// reference label instead of 0
double ncf_with_reference(const Instance& inst, int excluded,
                          const std::vector<int>& reference_labels) {
  std::size_t slot = inst.spec.controller_slot(excluded);
  std::map<PauliString, double> acc;
  for (const auto& [tuple, prob] : inst.table.probabilities) {
    if (prob <= 0.0) continue;
    std::vector<int> reference = tuple;
    for (std::size_t k = 0; k < reference_labels.size(); ++k)
      reference[slot + k] = reference_labels[k];
    acc[pauli_product(inst.table.at(reference), inst.table.at(tuple))] += prob;
  }
  PauliMixture mix;
  mix.num_qubits = inst.spec.input_qubits;
  for (auto& [p, w] : acc) mix.components.emplace_back(p, w);
  return average_ncf_pauli(mix);
}

}  // namespace

TEST_CASE("classical limit and minimum control power") {
  CHECK(std::abs(classical_limit(1) - 2.0 / 3.0) < kTol);
  CHECK(std::abs(classical_limit(2) - 2.0 / 5.0) < kTol);
  CHECK(std::abs(classical_limit(3) - 2.0 / 9.0) < kTol);
  CHECK(std::abs(min_control_power(1) - 1.0 / 3.0) < kTol);
  CHECK(std::abs(min_control_power(2) - 3.0 / 5.0) < kTol);
  CHECK(std::abs(min_control_power(3) - 7.0 / 9.0) < kTol);
  for (int n = 1; n <= 10; ++n)
    CHECK(std::abs(classical_limit(n) + min_control_power(n) - 1.0) < kTol);
  CHECK_THROWS_AS(classical_limit(0), std::invalid_argument);

  CHECK(controller_qubit_bound(1) == 1);
  CHECK(controller_qubit_bound(3) == 3);
}

TEST_CASE("closed-form Haar average of a Pauli mixture") {
  PauliMixture identity;
  identity.num_qubits = 1;
  identity.components = {{PauliString("I"), 1.0}};
  CHECK(std::abs(average_ncf_pauli(identity) - 1.0) < kTol);

  PauliMixture dephase;
  dephase.num_qubits = 1;
  dephase.components = {{PauliString("I"), 0.5}, {PauliString("Z"), 0.5}};
  CHECK(std::abs(average_ncf_pauli(dephase) - 2.0 / 3.0) < kTol);

  Instance two = make({"2ghz", 2, 1, 1, {}});
  CHECK(std::abs(average_ncf_pauli(pauli_mixture(two.spec, two.table, 0)) - 0.4) < kTol);

  PauliMixture unnormalized;
  unnormalized.num_qubits = 1;
  unnormalized.components = {{PauliString("I"), 0.5}};
  CHECK_THROWS_AS(average_ncf_pauli(unnormalized), std::invalid_argument);
}

TEST_CASE("Monte Carlo averages match the published values") {
  RngStream root(2024);

  Instance two = make({"2ghz", 2, 1, 1, {}});
  McEstimate est = average_ncf_mc(two.spec, two.table, 0, 4000, root.substream(1));
  CHECK(std::abs(est.mean - 0.4) <= 3.0 * est.stderr_of_mean);

  Instance yang3 = make({"yang", 3, 1, 1, {}});
  est = average_ncf_mc(yang3.spec, yang3.table, 0, 4000, root.substream(2));
  CHECK(std::abs(est.mean - 5.0 / 9.0) <= 3.0 * est.stderr_of_mean);

  Instance nghz2 = make({"nghz", 2, 1, 1, {}});
  est = average_ncf_mc(nghz2.spec, nghz2.table, 0, 4000, root.substream(3));
  CHECK(std::abs(est.mean - 0.4) <= 3.0 * est.stderr_of_mean);

  CHECK_THROWS_AS(average_ncf_mc(two.spec, two.table, 0, 50, root.substream(4)),
                  std::invalid_argument);
}

TEST_CASE("control power closed forms") {
  RngStream root(7);
  Instance one = make({"nghz", 1, 1, 1, {}});
  CHECK(std::abs(control_power(one.spec, one.table, 0, Method::Analytic, 0,
                               root.substream(0)) - 1.0 / 3.0) < kTol);

  Instance two = make({"2ghz", 2, 1, 1, {}});
  CHECK(std::abs(control_power(two.spec, two.table, 0, Method::Analytic, 0,
                               root.substream(0)) - 3.0 / 5.0) < kTol);

  Instance three = make({"nghz", 3, 1, 1, {}});
  CHECK(std::abs(control_power(three.spec, three.table, 0, Method::Analytic, 0,
                               root.substream(0)) - 7.0 / 9.0) < kTol);
}

TEST_CASE("partially entangled channel closed form") {
  CHECK(std::abs(pe4_ncf_analytic(Pe4Params::from_squares(1, 0, 0, 0)) - 1.0) < kTol);
  CHECK(std::abs(pe4_ncf_analytic(Pe4Params::from_squares(0.25, 0.25, 0.25, 0.25)) -
                 0.5) < kTol);
  CHECK(std::abs(pe4_ncf_analytic(Pe4Params::from_squares(0.4, 0.2, 0.2, 0.2)) - 0.6) <
        kTol);
}

TEST_CASE("per-qubit fidelities for product inputs") {
  RngStream root(99);
  const int samples = 2500;

  Instance yang2 = make({"yang", 2, 1, 1, {}});
  for (int q = 0; q < 2; ++q) {
    McEstimate est = per_qubit_ncf(yang2.spec, yang2.table, 0, q, samples,
                                   root.substream(std::uint64_t(q)));
    CHECK(std::abs(est.mean - 2.0 / 3.0) <= 3.0 * est.stderr_of_mean);
  }

  Instance nghz2 = make({"nghz", 2, 1, 1, {}});
  for (int q = 0; q < 2; ++q) {
    McEstimate est = per_qubit_ncf(nghz2.spec, nghz2.table, 0, q, samples,
                                   root.substream(10 + std::uint64_t(q)));
    CHECK(std::abs(est.mean - 2.0 / 3.0) <= 3.0 * est.stderr_of_mean);
  }

  // an EPR-derived qubit of the composite channel is untouched
  Instance man31 = make({"man", 3, 1, 1, {}});
  McEstimate est = per_qubit_ncf(man31.spec, man31.table, 0, 2, samples,
                                 root.substream(20));
  CHECK(std::abs(est.mean - 1.0) <= 3.0 * est.stderr_of_mean + kTol);

  CHECK_THROWS_AS(per_qubit_ncf(man31.spec, man31.table, 0, 3, 100,
                                root.substream(21)),
                  std::invalid_argument);
}

TEST_CASE("verdicts against the suitability criteria") {
  AnalysisReport man = verdict({"man", 3, 1, 1, {}}, Method::Analytic, 100, 1);
  CHECK(!man.pass());
  CHECK(man.criteria.uncontrolled_qubits == 2);
  CHECK(!man.criteria.power_sufficient_all);
  CHECK(std::abs(man.controllers[0].cp - 4.0 / 9.0) < kTol);
  CHECK(std::abs(man.controllers[0].cf - 1.0) < kTol);

  AnalysisReport nghz = verdict({"nghz", 3, 1, 1, {}}, Method::Analytic, 100, 1);
  CHECK(nghz.pass());
  CHECK(nghz.criteria.all_qubits_controlled);
  CHECK(std::abs(nghz.controllers[0].cp - 7.0 / 9.0) < kTol);

  // two symmetric controllers share the power
  AnalysisReport multi = verdict({"nghz", 2, 2, 1, {}}, Method::Analytic, 100, 1);
  CHECK(multi.controllers.size() == 2);
  CHECK(multi.criteria.equal_power);

  // the verdict's control power and bound satisfy the report invariant
  for (const ControllerRecord& rec : multi.controllers)
    CHECK(std::abs(rec.cp - (1.0 - rec.ncf_mean)) < kTol);
  CHECK(std::abs(multi.classical_limit + multi.min_control_power - 1.0) < kTol);
}

TEST_CASE("guessing floor holds for every catalog scheme") {
  for (const SchemeConfig& config : acceptance_catalog()) {
    Instance inst = make(config);
    double floor = std::exp2(-inst.spec.input_qubits);
    for (int m = 0; m < inst.spec.num_controllers(); ++m)
      CHECK(average_ncf_pauli(pauli_mixture(inst.spec, inst.table, m)) >=
            floor - kTol);
  }
}

TEST_CASE("averaged NCF is reference-label independent for uniform-branch schemes") {
  Instance two = make({"2ghz", 2, 1, 1, {}});
  double base = average_ncf_pauli(pauli_mixture(two.spec, two.table, 0));
  CHECK(std::abs(ncf_with_reference(two, 0, {1, 1}) - base) < kTol);
  CHECK(std::abs(ncf_with_reference(two, 0, {1, 0}) - base) < kTol);

  Instance yang = make({"yang", 2, 1, 1, {}});
  base = average_ncf_pauli(pauli_mixture(yang.spec, yang.table, 0));
  CHECK(std::abs(ncf_with_reference(yang, 0, {1}) - base) < kTol);

  Instance man = make({"man", 2, 1, 1, {}});
  base = average_ncf_pauli(pauli_mixture(man.spec, man.table, 0));
  CHECK(std::abs(ncf_with_reference(man, 0, {1}) - base) < kTol);

  Instance pe = make({"pe4", 1, 1, 1, Pe4Params::from_squares(0.25, 0.25, 0.25, 0.25)});
  base = average_ncf_pauli(pauli_mixture(pe.spec, pe.table, 0));
  CHECK(std::abs(ncf_with_reference(pe, 0, {0, 1}) - base) < kTol);
  CHECK(std::abs(ncf_with_reference(pe, 0, {1, 1}) - base) < kTol);
}

TEST_CASE("simplex sweep shape and bounds") {
  std::vector<Pe4Row> rows = pe4_sweep(5, 300, 11);
  CHECK(rows.size() == 35);
  CHECK(std::abs(rows[0].a2 - 1.0) < kTol);
  bool boundary_seen = false;
  for (const Pe4Row& row : rows) {
    CHECK(std::abs(row.a2 + row.b2 + row.c2 + row.d2 - 1.0) < kTol);
    CHECK(std::abs(row.cf - 1.0) < kTol);
    CHECK(row.ncf_analytic >= 1.0 / 3.0 - kTol);
    CHECK(row.ncf_analytic <= 1.0 + kTol);
    // on the a-dominant region the closed form is bounded below by the
    // uniform row's value 1/2
    if (row.a2 >= std::max({row.b2, row.c2, row.d2}) - kTol)
      CHECK(row.ncf_analytic >= 0.5 - kTol);
    CHECK(row.pass == (row.ncf_analytic <= 2.0 / 3.0 + kTol));
    if (std::abs(row.a2 - 0.5) < kTol &&
        std::abs(row.ncf_analytic - 2.0 / 3.0) < kTol)
      boundary_seen = true;
  }
  CHECK(boundary_seen);
  CHECK_THROWS_AS(pe4_sweep(1, 300, 11), std::invalid_argument);
}

TEST_CASE("reports are deterministic and JSON round-trips") {
  AnalysisReport a = verdict({"2ghz", 2, 1, 1, {}}, Method::Mc, 300, 5);
  AnalysisReport b = verdict({"2ghz", 2, 1, 1, {}}, Method::Mc, 300, 5);
  std::string ja = render_report_json(a);
  CHECK(ja == render_report_json(b));

  nlohmann::json parsed = nlohmann::json::parse(ja);
  CHECK(parsed["scheme"] == "2ghz");
  CHECK(parsed.contains("classical_limit"));
  CHECK(parsed.contains("min_control_power"));
  CHECK(parsed["controllers"].size() == 1);
  CHECK(parsed["controllers"][0].contains("ncf_stderr"));
  CHECK(nlohmann::json::parse(parsed.dump(2) + "\n") == parsed);

  std::string csv1 = render_sweep_csv(pe4_sweep(3, 200, 3));
  std::string csv2 = render_sweep_csv(pe4_sweep(3, 200, 3));
  CHECK(csv1 == csv2);
  CHECK(csv1.rfind("a2,b2,c2,d2,cf,ncf_analytic,ncf_mc,ncf_stderr,pass", 0) == 0);

  CHECK(format_number(0.1234567890123456) == "0.123456789012");
  CHECK(format_number(1.0) == "1");
}
