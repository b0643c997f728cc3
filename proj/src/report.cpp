#include "ctpower/report.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ctpower {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

nlohmann::json report_to_json(const AnalysisReport& report) {
  nlohmann::json params = {{"n", report.config.n}, {"m", report.config.m}};
  if (report.config.id == "yang") params["variant"] = report.config.variant;
  if (report.config.id == "pe4") {
    const Pe4Params& p = report.config.pe4;
    params["a2"] = p.a * p.a;
    params["b2"] = p.b * p.b;
    params["c2"] = p.c * p.c;
    params["d2"] = p.d * p.d;
  }

  nlohmann::json controllers = nlohmann::json::array();
  for (const ControllerRecord& rec : report.controllers)
    controllers.push_back({{"index", rec.index},
                           {"qubits", rec.qubits},
                           {"cf", rec.cf},
                           {"ncf_mean", rec.ncf_mean},
                           {"ncf_stderr", rec.ncf_stderr},
                           {"ncf_analytic", rec.ncf_analytic},
                           {"cp", rec.cp},
                           {"sufficient", rec.sufficient}});

  return {{"scheme", report.config.id},
          {"params", params},
          {"classical_limit", report.classical_limit},
          {"min_control_power", report.min_control_power},
          {"controllers", controllers},
          {"criteria",
           {{"all_qubits_controlled", report.criteria.all_qubits_controlled},
            {"uncontrolled_qubits", report.criteria.uncontrolled_qubits},
            {"equal_power", report.criteria.equal_power},
            {"power_sufficient", report.criteria.power_sufficient_all}}},
          {"method", report.method},
          {"mode", report.mode == InputMode::Arbitrary ? "arbitrary" : "product"},
          {"seed", report.seed},
          {"samples", report.samples},
          {"pass", report.pass()}};
}

std::string render_report_json(const AnalysisReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string render_report_table(const AnalysisReport& report) {
  std::ostringstream out;
  out << "scheme: " << report.config.id << "  N=" << report.n
      << "  method=" << report.method << "  seed=" << report.seed << "\n";
  out << "classical limit: " << format_number(report.classical_limit)
      << "   min control power: " << format_number(report.min_control_power) << "\n";
  out << "controller  qubits  cf          ncf         stderr      cp          sufficient\n";
  for (const ControllerRecord& rec : report.controllers) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-11d %-7d %-11.6f %-11.6f %-11.2e %-11.6f %s\n",
                  rec.index, rec.qubits, rec.cf, rec.ncf_mean, rec.ncf_stderr, rec.cp,
                  rec.sufficient ? "yes" : "NO");
    out << line;
  }
  out << "criteria: all_qubits_controlled="
      << (report.criteria.all_qubits_controlled ? "yes" : "NO")
      << " (uncontrolled=" << report.criteria.uncontrolled_qubits << ")"
      << "  equal_power=" << (report.criteria.equal_power ? "yes" : "NO")
      << "  power_sufficient=" << (report.criteria.power_sufficient_all ? "yes" : "NO")
      << "\n";
  out << "verdict: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string render_report_csv(const AnalysisReport& report) {
  std::ostringstream out;
  out << "scheme,n,m,controller,qubits,cf,ncf_mean,ncf_stderr,cp,sufficient,"
         "classical_limit,min_control_power,pass\n";
  for (const ControllerRecord& rec : report.controllers) {
    out << report.config.id << ',' << report.n << ',' << report.config.m << ','
        << rec.index << ',' << rec.qubits << ',' << format_number(rec.cf) << ','
        << format_number(rec.ncf_mean) << ',' << format_number(rec.ncf_stderr) << ','
        << format_number(rec.cp) << ',' << (rec.sufficient ? 1 : 0) << ','
        << format_number(report.classical_limit) << ','
        << format_number(report.min_control_power) << ',' << (report.pass() ? 1 : 0)
        << "\n";
  }
  return out.str();
}

std::string render_sweep_csv(const std::vector<Pe4Row>& rows) {
  std::ostringstream out;
  out << "a2,b2,c2,d2,cf,ncf_analytic,ncf_mc,ncf_stderr,pass\n";
  for (const Pe4Row& row : rows) {
    out << format_number(row.a2) << ',' << format_number(row.b2) << ','
        << format_number(row.c2) << ',' << format_number(row.d2) << ','
        << format_number(row.cf) << ',' << format_number(row.ncf_analytic) << ','
        << format_number(row.ncf_mc) << ',' << format_number(row.ncf_stderr) << ','
        << (row.pass ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace ctpower
