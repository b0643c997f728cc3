#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ctpower/regression.hpp"
#include "ctpower/report.hpp"

namespace {

using namespace ctpower;

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file " << path << "\n";
    return 1;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled teleportation scheme analyzer"};
  app.require_subcommand(1);

  // analyze
  std::string scheme = "ghz";
  int n = 1, m = 1, variant = 1;
  double a2 = 1.0, b2 = 0.0, c2 = 0.0, d2 = 0.0;
  std::string method = "both", mode = "arbitrary", format = "table", out_path;
  int samples = 10000;
  std::uint64_t seed = 20240817;
  bool strict = false;

  CLI::App* analyze = app.add_subcommand("analyze", "Evaluate one scheme's control power");
  analyze->add_option("--scheme", scheme, "Scheme id")
      ->check(CLI::IsMember({"ghz", "2ghz", "nghz", "yang", "man", "pe4"}));
  analyze->add_option("--n", n, "Number of teleported qubits");
  analyze->add_option("--m", m, "Number of controllers / GHZ factors");
  analyze->add_option("--variant", variant, "Yang channel variant")->check(CLI::IsMember({1, 2}));
  analyze->add_option("--a2", a2, "PE4 squared amplitude a^2");
  analyze->add_option("--b2", b2, "PE4 squared amplitude b^2");
  analyze->add_option("--c2", c2, "PE4 squared amplitude c^2");
  analyze->add_option("--d2", d2, "PE4 squared amplitude d^2");
  analyze->add_option("--method", method, "Averaging method")
      ->check(CLI::IsMember({"mc", "analytic", "both"}));
  analyze->add_option("--samples", samples, "Monte Carlo sample count");
  analyze->add_option("--seed", seed, "Random stream seed");
  analyze->add_option("--mode", mode, "Input-state averaging mode")
      ->check(CLI::IsMember({"arbitrary", "product"}));
  analyze->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  analyze->add_option("--out", out_path, "Write the report to a file");
  analyze->add_flag("--strict", strict, "Exit 2 when the scheme fails a criterion");

  // sweep
  int resolution = 5;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep the PE4 parameter simplex");
  sweep->add_option("--resolution", resolution, "Grid points per axis")->check(CLI::Range(2, 64));
  sweep->add_option("--samples", samples, "Monte Carlo sample count per row");
  sweep->add_option("--seed", seed, "Random stream seed");
  sweep->add_option("--out", out_path, "Write the CSV to a file");

  // reproduce
  bool corrupt_table = false;
  CLI::App* reproduce =
      app.add_subcommand("reproduce", "Run the full regression battery");
  reproduce->add_option("--samples", samples, "Monte Carlo sample count");
  reproduce->add_option("--seed", seed, "Random stream seed");
  reproduce->add_flag("--corrupt-table", corrupt_table,
                      "Debug: corrupt one correction entry (negative control)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      SchemeConfig config;
      config.id = scheme;
      config.n = n;
      config.m = m;
      config.variant = variant;
      if (scheme == "pe4") config.pe4 = Pe4Params::from_squares(a2, b2, c2, d2);

      Method mth = method == "mc" ? Method::Mc
                                  : (method == "analytic" ? Method::Analytic : Method::Both);
      InputMode im = mode == "product" ? InputMode::Product : InputMode::Arbitrary;
      AnalysisReport report = verdict(config, mth, samples, seed, im);

      std::string text = format == "json"  ? render_report_json(report)
                         : format == "csv" ? render_report_csv(report)
                                           : render_report_table(report);
      int rc = write_output(text, out_path);
      if (rc != 0) return rc;
      return strict && !report.pass() ? 2 : 0;
    }

    if (sweep->parsed()) {
      return write_output(render_sweep_csv(pe4_sweep(resolution, samples, seed)), out_path);
    }

    if (reproduce->parsed()) {
      RegressionOptions options;
      options.samples = samples;
      options.seed = seed;
      options.corrupt_table = corrupt_table;
      auto rows = run_regression(options);
      std::cout << render_regression_table(rows);
      for (const RegressionRow& row : rows)
        if (!row.pass) return 2;
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
