#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ctpower/analysis.hpp"

namespace ctpower {

nlohmann::json report_to_json(const AnalysisReport& report);

/// Human-readable summary table.
std::string render_report_table(const AnalysisReport& report);

/// One CSV row per controller; numbers use 12 significant digits.
std::string render_report_csv(const AnalysisReport& report);

/// Canonical JSON text (sorted keys, fixed indentation); byte-identical for
/// identical inputs.
std::string render_report_json(const AnalysisReport& report);

/// Header: a2,b2,c2,d2,cf,ncf_analytic,ncf_mc,ncf_stderr,pass
std::string render_sweep_csv(const std::vector<Pe4Row>& rows);

/// 12-significant-digit decimal rendering used by the CSV outputs.
std::string format_number(double value);

}  // namespace ctpower
