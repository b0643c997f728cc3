#include "ctpower/regression.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "ctpower/report.hpp"

namespace ctpower {

namespace {

struct SchemeInstance {
  SchemeConfig config;
  ProtocolSpec spec;
  CorrectionTable table;
};

SchemeInstance instantiate(const SchemeConfig& config) {
  SchemeInstance inst;
  inst.config = config;
  inst.spec = make_scheme(config);
  inst.table = derive_corrections(inst.spec);
  return inst;
}

std::string scheme_label(const SchemeConfig& c) {
  std::ostringstream out;
  out << c.id << "(n=" << c.n << ",m=" << c.m;
  if (c.id == "yang") out << ",v" << c.variant;
  if (c.id == "pe4") out << ",a2=" << format_number(c.pe4.a * c.pe4.a);
  out << ")";
  return out.str();
}

void corrupt(CorrectionTable& table) {
  for (auto& [tuple, p] : table.entries) {
    if (table.probabilities.at(tuple) <= 0.0) continue;
    p.letters[0] = p.letters[0] == Pauli::X ? Pauli::Z : Pauli::X;
    return;
  }
}

class Battery {
 public:
  explicit Battery(const RegressionOptions& options) : options_(options) {}

  std::vector<RegressionRow> run() {
    perfect_ct();
    two_ghz_control_power();
    nghz_control_power();
    yang_arbitrary_ncf();
    man_31();
    yang_product_per_qubit();
    pe4_checks();
    bounds_table();
    partial_controller_bound();
    oracle_agreement();
    determinism();
    return rows_;
  }

 private:
  RegressionOptions options_;
  std::vector<RegressionRow> rows_;

  RngStream stream(std::uint64_t tag) const {
    return RngStream(options_.seed).substream(tag);
  }

  void add(std::string id, std::string description, bool pass, std::string detail) {
    rows_.push_back({std::move(id), std::move(description), pass, std::move(detail)});
  }

  void perfect_ct() {
    double worst = 0.0;
    std::string worst_scheme;
    for (const SchemeConfig& config : acceptance_catalog()) {
      SchemeInstance inst = instantiate(config);
      RngStream rng = stream(1);
      for (int k = 0; k < 20; ++k) {
        RngStream sub = rng.substream(std::uint64_t(k));
        PureState input = haar_random_state(inst.spec.input_qubits, sub);
        double dev = std::abs(conditioned_fidelity(inst.spec, inst.table, input) - 1.0);
        if (dev > worst) {
          worst = dev;
          worst_scheme = scheme_label(config);
        }
      }
    }
    add("perfect-ct", "conditioned fidelity = 1 for every catalog scheme", worst <= kTol,
        "max |CF-1| = " + format_number(worst) +
            (worst_scheme.empty() ? "" : " at " + worst_scheme));
  }

  void two_ghz_control_power() {
    SchemeInstance inst = instantiate({"2ghz", 2, 1, 1, {}});
    if (options_.corrupt_table) corrupt(inst.table);
    double cp_exact = 1.0 - average_ncf_pauli(pauli_mixture(inst.spec, inst.table, 0));
    McEstimate mc = average_ncf_mc(inst.spec, inst.table, 0, options_.samples, stream(2));
    bool analytic_ok = std::abs(cp_exact - 0.6) <= kTol;
    bool mc_ok = std::abs((1.0 - mc.mean) - 0.6) <= 3.0 * mc.stderr_of_mean;
    bool cf_ok = true;
    if (options_.corrupt_table) {
      RngStream sub = stream(21);
      cf_ok = std::abs(mean_conditioned_fidelity(inst.spec, inst.table, 5, sub) - 1.0) <= kTol;
    }
    add("2ghz-cp", "2-GHZ control power = 3/5 (analytic and Monte Carlo)",
        analytic_ok && mc_ok && cf_ok,
        "analytic CP = " + format_number(cp_exact) + ", MC NCF = " + format_number(mc.mean) +
            " +/- " + format_number(mc.stderr_of_mean));
  }

  void nghz_control_power() {
    bool ok = true;
    std::ostringstream detail;
    for (int n = 1; n <= 3; ++n) {
      SchemeInstance inst = instantiate({"nghz", n, 1, 1, {}});
      double cp = 1.0 - average_ncf_pauli(pauli_mixture(inst.spec, inst.table, 0));
      double expected = min_control_power(n);
      ok = ok && std::abs(cp - expected) <= kTol;
      detail << "N=" << n << ": " << format_number(cp) << "  ";
      if (n == 3) {
        auto start = std::chrono::steady_clock::now();
        McEstimate mc =
            average_ncf_mc(inst.spec, inst.table, 0, options_.samples, stream(3));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        ok = ok && std::abs((1.0 - mc.mean) - expected) <= 3.0 * mc.stderr_of_mean &&
             secs <= 60.0;
        detail << "(N=3 MC CP = " << format_number(1.0 - mc.mean) << " in "
               << format_number(secs) << " s)";
      }
    }
    add("nghz-cp", "N-GHZ control power = (2^N-1)/(2^N+1) for N = 1,2,3", ok, detail.str());
  }

  void yang_arbitrary_ncf() {
    bool ok = true;
    std::ostringstream detail;
    for (int n = 2; n <= 3; ++n) {
      SchemeInstance inst = instantiate({"yang", n, 1, 1, {}});
      double expected = (std::exp2(n - 1) + 1.0) / (std::exp2(n) + 1.0);
      McEstimate mc = average_ncf_mc(inst.spec, inst.table, 0, options_.samples,
                                     stream(40 + std::uint64_t(n)));
      ok = ok && std::abs(mc.mean - expected) <= 3.0 * mc.stderr_of_mean;
      detail << "N=" << n << ": " << format_number(mc.mean) << " (expect "
             << format_number(expected) << ")  ";
    }
    ok = ok && 5.0 / 9.0 > classical_limit(3);
    add("yang-ncf", "Yang arbitrary-state average NCF = (2^(N-1)+1)/(2^N+1), above the "
        "classical limit", ok, detail.str());
  }

  void man_31() {
    SchemeInstance inst = instantiate({"man", 3, 1, 1, {}});
    McEstimate mc = average_ncf_mc(inst.spec, inst.table, 0, options_.samples, stream(5));
    bool mc_ok = std::abs(mc.mean - 5.0 / 9.0) <= 3.0 * mc.stderr_of_mean;
    AnalysisReport report = verdict({"man", 3, 1, 1, {}}, Method::Analytic, 100, options_.seed);
    bool verdict_ok = report.criteria.uncontrolled_qubits == 2 &&
                      !report.criteria.power_sufficient_all && !report.pass();
    add("man-3-1", "Man(3,1) NCF = 5/9 with 2 uncontrolled qubits and insufficient power",
        mc_ok && verdict_ok,
        "MC NCF = " + format_number(mc.mean) + " +/- " +
            format_number(mc.stderr_of_mean) + ", uncontrolled = " +
            std::to_string(report.criteria.uncontrolled_qubits));
  }

  void yang_product_per_qubit() {
    bool ok = true;
    std::ostringstream detail;
    int samples = std::max(1000, options_.samples / 5);
    for (int n = 2; n <= 3; ++n) {
      SchemeInstance inst = instantiate({"yang", n, 1, 1, {}});
      for (int q = 0; q < n; ++q) {
        McEstimate est = per_qubit_ncf(inst.spec, inst.table, 0, q, samples,
                                       stream(60 + std::uint64_t(10 * n + q)));
        ok = ok && std::abs(est.mean - 2.0 / 3.0) <= 3.0 * est.stderr_of_mean;
        detail << "N=" << n << " q" << q << ": " << format_number(est.mean) << "  ";
      }
    }
    add("yang-per-qubit", "Yang product-state per-qubit NCF = 2/3", ok, detail.str());
  }

  void pe4_checks() {
    bool ok = true;
    std::ostringstream detail;
    // 10-point simplex sample for the analytic-vs-MC consistency check
    const double pts[10][4] = {
        {1.0, 0.0, 0.0, 0.0},   {0.25, 0.25, 0.25, 0.25}, {0.4, 0.2, 0.2, 0.2},
        {0.4, 0.6, 0.0, 0.0},   {0.5, 0.5, 0.0, 0.0},     {0.5, 0.0, 0.25, 0.25},
        {0.7, 0.1, 0.1, 0.1},   {0.8, 0.1, 0.05, 0.05},   {0.1, 0.3, 0.3, 0.3},
        {0.0, 0.5, 0.25, 0.25}};
    int samples = std::max(1000, options_.samples / 5);
    double worst = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
      Pe4Params p = Pe4Params::from_squares(pts[k][0], pts[k][1], pts[k][2], pts[k][3]);
      SchemeInstance inst = instantiate({"pe4", 1, 1, 1, p});
      McEstimate mc = average_ncf_mc(inst.spec, inst.table, 0, samples, stream(80 + k));
      double gap = std::abs(mc.mean - pe4_ncf_analytic(p));
      worst = std::max(worst, gap - 3.0 * mc.stderr_of_mean);
      ok = ok && gap <= 3.0 * mc.stderr_of_mean + kTol;
    }
    detail << "max 3-sigma excess = " << format_number(worst) << "; ";

    AnalysisReport good = verdict({"pe4", 1, 1, 1, Pe4Params::from_squares(0.4, 0.2, 0.2, 0.2)},
                                  Method::Analytic, 100, options_.seed);
    double ncf_good = good.controllers[0].ncf_mean;
    ok = ok && std::abs(ncf_good - 0.6) <= kTol && ncf_good <= 2.0 / 3.0 && good.pass();
    detail << "NCF(a2=0.4) = " << format_number(ncf_good) << " pass; ";

    AnalysisReport bad = verdict({"pe4", 1, 1, 1, Pe4Params::from_squares(0.8, 0.1, 0.05, 0.05)},
                                 Method::Analytic, 100, options_.seed);
    double ncf_bad = bad.controllers[0].ncf_mean;
    ok = ok && std::abs(ncf_bad - (0.8 + 0.2 / 3.0)) <= kTol && !bad.pass();
    detail << "NCF(a2=0.8) = " << format_number(ncf_bad) << " fail";
    add("pe4", "PE4 NCF = a^2 + (1-a^2)/3; verdict flips across the classical limit", ok,
        detail.str());
  }

  void bounds_table() {
    const double limits[4] = {2.0 / 3, 2.0 / 5, 2.0 / 9, 2.0 / 17};
    const double powers[4] = {1.0 / 3, 3.0 / 5, 7.0 / 9, 15.0 / 17};
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
      double cl = classical_limit(n), cp = min_control_power(n);
      ok = ok && std::abs(cl - limits[n - 1]) <= kTol &&
           std::abs(cp - powers[n - 1]) <= kTol && std::abs(cl + cp - 1.0) <= kTol;
    }
    add("bounds", "classical limit and minimum control power for N = 1..4 sum to 1", ok,
        "F_cl(1..4) = 2/3, 2/5, 2/9, 2/17");
  }

  void partial_controller_bound() {
    bool ok = true;
    std::ostringstream detail;
    for (int n = 2; n <= 3; ++n) {
      SchemeInstance inst = instantiate({"partial", n, 1, 1, {}});
      McEstimate mc = average_ncf_mc(inst.spec, inst.table, 0, options_.samples,
                                     stream(90 + std::uint64_t(n)));
      double floor = std::exp2(-(n - 1));
      ok = ok && mc.mean - 3.0 * mc.stderr_of_mean > floor && floor > classical_limit(n);
      detail << "N=" << n << ": " << format_number(mc.mean) << " > "
             << format_number(floor) << " > " << format_number(classical_limit(n)) << "  ";
    }
    add("w-bound", "an (N-1)-qubit controller leaves NCF above 1/2^(N-1), above classical",
        ok, detail.str());
  }

  void oracle_agreement() {
    bool ok = true;
    double worst = 0.0;
    std::string worst_scheme;
    int samples = std::max(1000, options_.samples / 5);
    std::uint64_t tag = 200;
    for (const SchemeConfig& config : acceptance_catalog()) {
      SchemeInstance inst = instantiate(config);
      for (int m = 0; m < inst.spec.num_controllers(); ++m) {
        double exact = average_ncf_pauli(pauli_mixture(inst.spec, inst.table, m));
        McEstimate mc = average_ncf_mc(inst.spec, inst.table, m, samples, stream(tag++));
        double excess = std::abs(mc.mean - exact) - 3.0 * mc.stderr_of_mean;
        if (excess > worst) {
          worst = excess;
          worst_scheme = scheme_label(config);
        }
        ok = ok && excess <= kTol;
      }
    }
    add("oracle", "Pauli-mixture oracle matches Monte Carlo on every catalog mixture", ok,
        "max 3-sigma excess = " + format_number(worst) +
            (worst_scheme.empty() ? "" : " at " + worst_scheme));
  }

  void determinism() {
    AnalysisReport a = verdict({"2ghz", 2, 1, 1, {}}, Method::Mc, 500, options_.seed);
    AnalysisReport b = verdict({"2ghz", 2, 1, 1, {}}, Method::Mc, 500, options_.seed);
    std::string ja = render_report_json(a), jb = render_report_json(b);
    std::vector<Pe4Row> sa = pe4_sweep(3, 200, options_.seed);
    std::vector<Pe4Row> sb = pe4_sweep(3, 200, options_.seed);
    bool ok = ja == jb && render_sweep_csv(sa) == render_sweep_csv(sb);
    add("determinism", "fixed seed gives byte-identical reports", ok,
        ok ? "reports identical" : "reports differ");
  }
};

}  // namespace

std::vector<RegressionRow> run_regression(const RegressionOptions& options) {
  return Battery(options).run();
}

std::string render_regression_table(const std::vector<RegressionRow>& rows) {
  std::ostringstream out;
  for (const RegressionRow& row : rows) {
    char head[160];
    std::snprintf(head, sizeof(head), "[%s] %-14s %s\n", row.pass ? "PASS" : "FAIL",
                  row.id.c_str(), row.description.c_str());
    out << head;
    if (!row.detail.empty()) out << "       " << row.detail << "\n";
  }
  int failed = 0;
  for (const RegressionRow& row : rows)
    if (!row.pass) ++failed;
  out << (failed == 0 ? "all criteria passed\n"
                      : std::to_string(failed) + " criteria FAILED\n");
  return out.str();
}

}  // namespace ctpower
