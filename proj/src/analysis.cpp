#include "ctpower/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ctpower {

namespace {

struct Welford {
  int count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }
  double stderr_of_mean() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / (count - 1) / count);
  }
};

PureState draw_input(int n, RngStream& rng, InputMode mode) {
  return mode == InputMode::Arbitrary ? haar_random_state(n, rng)
                                      : haar_random_product_state(n, rng);
}

}  // namespace

double PauliMixture::total_weight() const {
  double w = 0.0;
  for (const auto& [p, q] : components) w += q;
  return w;
}

double classical_limit(int n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  return 2.0 / (1.0 + std::exp2(n));
}

double min_control_power(int n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  return (std::exp2(n) - 1.0) / (std::exp2(n) + 1.0);
}

int controller_qubit_bound(int n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  return n;
}

PauliMixture pauli_mixture(const ProtocolSpec& spec, const CorrectionTable& table,
                           int excluded) {
  if (excluded < 0 || excluded >= spec.num_controllers())
    throw std::invalid_argument("excluded controller index out of range");
  std::size_t slot = spec.controller_slot(excluded);
  std::size_t len = spec.controller_plans[std::size_t(excluded)].size();

  std::map<PauliString, double> acc;
  for (const auto& [tuple, applied] : table.entries) {
    double prob = table.probabilities.at(tuple);
    if (prob <= 0.0) continue;
    std::vector<int> reference = tuple;
    std::fill(reference.begin() + long(slot), reference.begin() + long(slot + len), 0);
    // Bob applies the reference entry; the branch needed the true one
    acc[pauli_product(table.at(reference), applied)] += prob;
  }

  PauliMixture mix;
  mix.num_qubits = spec.input_qubits;
  for (auto& [p, w] : acc) mix.components.emplace_back(p, w);
  return mix;
}

double average_ncf_pauli(const PauliMixture& mixture) {
  if (std::abs(mixture.total_weight() - 1.0) > kTol)
    throw std::invalid_argument("mixture probabilities must sum to 1");
  double d = std::exp2(mixture.num_qubits);
  double f = 0.0;
  for (const auto& [p, w] : mixture.components) {
    double tr = p.trace();
    f += w * (d + tr * tr) / (d * (d + 1.0));
  }
  return f;
}

McEstimate average_ncf_mc(const ProtocolSpec& spec, const CorrectionTable& table,
                          int excluded, int samples, const RngStream& stream,
                          InputMode mode) {
  if (samples < 100) throw std::invalid_argument("need at least 100 samples");
  Welford w;
  for (int i = 0; i < samples; ++i) {
    RngStream sub = stream.substream(std::uint64_t(i));
    PureState input = draw_input(spec.input_qubits, sub, mode);
    w.add(ncf(spec, table, input, excluded));
  }
  return {w.mean, w.stderr_of_mean(), samples};
}

double control_power(const ProtocolSpec& spec, const CorrectionTable& table, int excluded,
                     Method method, int samples, const RngStream& stream) {
  if (method == Method::Mc)
    return 1.0 - average_ncf_mc(spec, table, excluded, samples, stream).mean;
  return 1.0 - average_ncf_pauli(pauli_mixture(spec, table, excluded));
}

double pe4_ncf_analytic(const Pe4Params& p) {
  p.validate();
  return p.a * p.a + (p.b * p.b + p.c * p.c + p.d * p.d) / 3.0;
}

McEstimate per_qubit_ncf(const ProtocolSpec& spec, const CorrectionTable& table,
                         int excluded, int qubit, int samples, const RngStream& stream) {
  int n = spec.input_qubits;
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("Bob qubit index out of range");
  std::vector<int> others;
  for (int q = 0; q < n; ++q)
    if (q != qubit) others.push_back(q);

  Welford w;
  for (int i = 0; i < samples; ++i) {
    RngStream sub = stream.substream(std::uint64_t(i));
    std::vector<PureState> factors;
    for (int q = 0; q < n; ++q) factors.push_back(haar_random_state(1, sub));
    PureState input = factors[0];
    for (int q = 1; q < n; ++q) input = tensor(input, factors[std::size_t(q)]);

    DensityMatrix rho = bob_state_without(spec, table, input, excluded);
    DensityMatrix marginal =
        others.empty() ? rho : partial_trace(rho, others);
    w.add(fidelity(factors[std::size_t(qubit)], marginal));
  }
  return {w.mean, w.stderr_of_mean(), samples};
}

double mean_conditioned_fidelity(const ProtocolSpec& spec, const CorrectionTable& table,
                                 int inputs, const RngStream& stream, InputMode mode) {
  double total = 0.0;
  for (int i = 0; i < inputs; ++i) {
    RngStream sub = stream.substream(std::uint64_t(i));
    total += conditioned_fidelity(spec, table, draw_input(spec.input_qubits, sub, mode));
  }
  return total / inputs;
}

bool AnalysisReport::pass() const {
  return criteria.all_qubits_controlled && criteria.equal_power &&
         criteria.power_sufficient_all;
}

AnalysisReport verdict(const SchemeConfig& config, Method method, int samples,
                       std::uint64_t seed, InputMode mode) {
  ProtocolSpec spec = make_scheme(config);
  CorrectionTable table = derive_corrections(spec);
  RngStream root(seed);

  AnalysisReport report;
  report.config = config;
  report.config.n = spec.input_qubits;
  report.n = spec.input_qubits;
  report.classical_limit = classical_limit(report.n);
  report.min_control_power = ctpower::min_control_power(report.n);
  report.method = method == Method::Mc ? "mc" : (method == Method::Analytic ? "analytic" : "both");
  report.seed = seed;
  report.samples = samples;
  report.mode = mode;

  double cf = mean_conditioned_fidelity(spec, table, 20, root.substream(0xCF));

  int num_ctrl = spec.num_controllers();
  std::vector<PauliMixture> mixtures;
  for (int m = 0; m < num_ctrl; ++m) {
    mixtures.push_back(pauli_mixture(spec, table, m));

    ControllerRecord rec;
    rec.index = m;
    rec.qubits = int(spec.parties.controllers[std::size_t(m)].size());
    rec.cf = cf;
    rec.ncf_analytic = average_ncf_pauli(mixtures.back());
    if (method == Method::Analytic) {
      rec.ncf_mean = rec.ncf_analytic;
      rec.ncf_stderr = 0.0;
    } else {
      McEstimate est = average_ncf_mc(spec, table, m, samples,
                                      root.substream(std::uint64_t(m) + 1), mode);
      rec.ncf_mean = est.mean;
      rec.ncf_stderr = est.stderr_of_mean;
    }
    rec.cp = 1.0 - rec.ncf_mean;
    double tol = method == Method::Analytic ? kTol : 3.0 * rec.ncf_stderr;
    rec.sufficient = rec.cp >= report.min_control_power - tol;
    report.controllers.push_back(rec);
  }

  // a Bob qubit is controlled if some controller's withheld outcome changes it
  int uncontrolled = 0;
  for (int q = 0; q < report.n; ++q) {
    bool controlled = false;
    for (const PauliMixture& mix : mixtures) {
      for (std::size_t k = 1; k < mix.components.size() && !controlled; ++k)
        if (mix.components[k].first.letters[std::size_t(q)] !=
            mix.components[0].first.letters[std::size_t(q)])
          controlled = true;
      if (controlled) break;
    }
    if (!controlled) ++uncontrolled;
  }
  report.criteria.uncontrolled_qubits = uncontrolled;
  report.criteria.all_qubits_controlled = uncontrolled == 0;

  bool equal = true;
  if (spec.symmetric_controllers && num_ctrl > 1) {
    for (int i = 0; i < num_ctrl && equal; ++i)
      for (int j = i + 1; j < num_ctrl && equal; ++j) {
        const auto& a = report.controllers[std::size_t(i)];
        const auto& b = report.controllers[std::size_t(j)];
        double tol = method == Method::Analytic
                         ? kTol
                         : 3.0 * std::hypot(a.ncf_stderr, b.ncf_stderr) + kTol;
        if (std::abs(a.cp - b.cp) > tol) equal = false;
      }
  }
  report.criteria.equal_power = equal;

  report.criteria.power_sufficient_all =
      std::all_of(report.controllers.begin(), report.controllers.end(),
                  [](const ControllerRecord& r) { return r.sufficient; });
  return report;
}

std::vector<Pe4Row> pe4_sweep(int resolution, int samples, std::uint64_t seed) {
  if (resolution < 2) throw std::invalid_argument("sweep resolution must be >= 2");
  int steps = resolution - 1;
  RngStream root(seed);

  std::vector<Pe4Row> rows;
  std::uint64_t row_index = 0;
  for (int k1 = steps; k1 >= 0; --k1)
    for (int k2 = steps - k1; k2 >= 0; --k2)
      for (int k3 = steps - k1 - k2; k3 >= 0; --k3) {
        int k4 = steps - k1 - k2 - k3;
        Pe4Row row{};
        row.a2 = double(k1) / steps;
        row.b2 = double(k2) / steps;
        row.c2 = double(k3) / steps;
        row.d2 = double(k4) / steps;

        SchemeConfig config{"pe4", 1, 1, 1,
                            Pe4Params::from_squares(row.a2, row.b2, row.c2, row.d2)};
        ProtocolSpec spec = make_scheme(config);
        CorrectionTable table = derive_corrections(spec);

        row.cf = mean_conditioned_fidelity(spec, table, 5,
                                           root.substream((row_index << 20) | 1));
        row.ncf_analytic = pe4_ncf_analytic(config.pe4);
        McEstimate est = average_ncf_mc(spec, table, 0, samples,
                                        root.substream((row_index << 20) | 2));
        row.ncf_mc = est.mean;
        row.ncf_stderr = est.stderr_of_mean;
        row.pass = row.ncf_analytic <= 2.0 / 3.0 + kTol;
        rows.push_back(row);
        ++row_index;
      }
  return rows;
}

}  // namespace ctpower
