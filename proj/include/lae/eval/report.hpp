#pragma once

#include <string>
#include <vector>

#include "lae/eval/metrics.hpp"

namespace lae::eval {

// Stable numeric formatting for every CSV/summary we emit (%.6g, C locale)
// so byte-identical re-runs hold.
std::string fmt_num(double v);

struct ReportRow {
  std::string label;
  RunMetrics metrics;
};

// Fixed column schemas.
std::string metrics_csv(const std::vector<ReportRow>& rows);
std::string deltas_csv(const PairedReport& report);
std::string paired_summary(const PairedReport& report,
                           const std::string& base_label,
                           const std::string& edited_label);

// Self-contained static plots.
std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& values);
std::string line_chart_svg(const std::string& title,
                           const std::string& x_label,
                           const std::vector<double>& xs,
                           const std::vector<std::string>& series_labels,
                           const std::vector<std::vector<double>>& series);

// Writes report.csv, deltas.csv, summary.txt and the three metric plots.
void emit_paired_report(const PairedReport& report, const std::string& dir,
                        const std::string& base_label,
                        const std::string& edited_label);

// Comparison table (editor kinds, ablation rows): table.csv + plots.
void emit_comparison(const std::vector<ReportRow>& rows,
                     const std::string& dir, const std::string& axis_label,
                     const std::vector<double>& axis_values);

}  // namespace lae::eval
