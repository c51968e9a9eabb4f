#include "lae/eval/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "lae/binio.hpp"

namespace lae::eval {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string metrics_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "label,scenarios,total_collisions,zero_collision_trajectories,"
        "avg_success_rate\n";
  for (const auto& r : rows)
    os << r.label << "," << r.metrics.per_scenario_collisions.size() << ","
       << r.metrics.total_collisions << ","
       << r.metrics.zero_collision_trajectories << ","
       << fmt_num(r.metrics.avg_success_rate) << "\n";
  return os.str();
}

std::string deltas_csv(const PairedReport& report) {
  std::ostringstream os;
  os << "scenario,base_collisions,edited_collisions,delta\n";
  for (std::size_t i = 0; i < report.deltas.size(); ++i)
    os << i << "," << report.base.per_scenario_collisions[i] << ","
       << report.edited.per_scenario_collisions[i] << ","
       << fmt_num(report.deltas[i]) << "\n";
  return os.str();
}

std::string paired_summary(const PairedReport& report,
                           const std::string& base_label,
                           const std::string& edited_label) {
  const auto& t = report.ttest;
  std::ostringstream os;
  os << "paired evaluation over "
     << report.base.per_scenario_collisions.size() << " scenarios\n\n";
  auto line = [&](const std::string& label, const RunMetrics& m) {
    os << label << ":\n"
       << "  total collisions:            " << m.total_collisions << "\n"
       << "  zero-collision trajectories: " << m.zero_collision_trajectories
       << "\n"
       << "  avg success rate:            " << fmt_num(m.avg_success_rate)
       << "\n";
  };
  line(base_label, report.base);
  line(edited_label, report.edited);
  const double base_total = static_cast<double>(report.base.total_collisions);
  if (base_total > 0) {
    const double rel =
        100.0 * (base_total - report.edited.total_collisions) / base_total;
    os << "\ncollision reduction: " << fmt_num(rel) << "%\n";
  }
  os << "gate activity: " << report.flags_raised << " flags, "
     << report.edits_applied << " edits\n";
  os << "\npaired t-test on per-scenario collision deltas (base - edited):\n"
     << "  n:        " << t.n << "\n"
     << "  mean:     " << fmt_num(t.mean) << "\n"
     << "  sd:       " << fmt_num(t.sd) << "\n"
     << "  t:        " << fmt_num(t.t) << "\n"
     << "  p:        " << t.p_string() << "\n"
     << "  95% CI:   [" << fmt_num(t.ci_lo) << ", " << fmt_num(t.ci_hi)
     << "]\n"
     << "  cohens_d: " << fmt_num(t.cohens_d) << "\n";
  return os.str();
}

namespace {

constexpr int kW = 640, kH = 400, kMargin = 60;

std::string svg_header(const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
     << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kW / 2
     << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
        "font-family=\"sans-serif\">"
     << title << "</text>\n";
  return os.str();
}

const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                         "#9467bd", "#8c564b"};

}  // namespace

std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& values) {
  double vmax = 1e-12;
  for (double v : values) vmax = std::max(vmax, v);
  std::ostringstream os;
  os << svg_header(title);
  const int plot_w = kW - 2 * kMargin;
  const int plot_h = kH - 2 * kMargin;
  const int n = static_cast<int>(values.size());
  const double band = static_cast<double>(plot_w) / std::max(n, 1);
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\""
     << kW - kMargin << "\" y2=\"" << kH - kMargin
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i < n; ++i) {
    const double h = plot_h * values[i] / vmax;
    const double x = kMargin + band * i + band * 0.15;
    const double y = kH - kMargin - h;
    os << "<rect x=\"" << fmt_num(x) << "\" y=\"" << fmt_num(y)
       << "\" width=\"" << fmt_num(band * 0.7) << "\" height=\"" << fmt_num(h)
       << "\" fill=\"" << kColors[i % 6] << "\"/>\n";
    os << "<text x=\"" << fmt_num(x + band * 0.35) << "\" y=\""
       << kH - kMargin + 18
       << "\" text-anchor=\"middle\" font-size=\"12\" "
          "font-family=\"sans-serif\">"
       << labels[i] << "</text>\n";
    os << "<text x=\"" << fmt_num(x + band * 0.35) << "\" y=\""
       << fmt_num(y - 6)
       << "\" text-anchor=\"middle\" font-size=\"12\" "
          "font-family=\"sans-serif\">"
       << fmt_num(values[i]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::vector<double>& xs,
                           const std::vector<std::string>& series_labels,
                           const std::vector<std::vector<double>>& series) {
  double vmax = 1e-12, xmin = xs.front(), xmax = xs.back();
  for (const auto& s : series)
    for (double v : s) vmax = std::max(vmax, v);
  const int plot_w = kW - 2 * kMargin;
  const int plot_h = kH - 2 * kMargin;
  auto px = [&](double x) {
    return kMargin + plot_w * (x - xmin) / std::max(xmax - xmin, 1e-12);
  };
  auto py = [&](double v) { return kH - kMargin - plot_h * v / vmax; };

  std::ostringstream os;
  os << svg_header(title);
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\""
     << kW - kMargin << "\" y2=\"" << kH - kMargin
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
     << kMargin << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
     << "\" text-anchor=\"middle\" font-size=\"12\" "
        "font-family=\"sans-serif\">"
     << x_label << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << kColors[s % 6]
       << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
      os << fmt_num(px(xs[i])) << "," << fmt_num(py(series[s][i])) << " ";
    os << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      os << "<circle cx=\"" << fmt_num(px(xs[i])) << "\" cy=\""
         << fmt_num(py(series[s][i])) << "\" r=\"3\" fill=\"" << kColors[s % 6]
         << "\"/>\n";
    os << "<text x=\"" << kW - kMargin << "\" y=\""
       << kMargin + 16 * (s + 1)
       << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << kColors[s % 6]
       << "\" font-family=\"sans-serif\">" << series_labels[s] << "</text>\n";
  }
  for (double x : xs)
    os << "<text x=\"" << fmt_num(px(x)) << "\" y=\"" << kH - kMargin + 18
       << "\" text-anchor=\"middle\" font-size=\"11\" "
          "font-family=\"sans-serif\">"
       << fmt_num(x) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void emit_paired_report(const PairedReport& report, const std::string& dir,
                        const std::string& base_label,
                        const std::string& edited_label) {
  std::filesystem::create_directories(dir);
  std::vector<ReportRow> rows{{base_label, report.base},
                              {edited_label, report.edited}};
  write_file_text(dir + "/report.csv", metrics_csv(rows));
  write_file_text(dir + "/deltas.csv", deltas_csv(report));
  write_file_text(dir + "/summary.txt",
                  paired_summary(report, base_label, edited_label));
  write_file_text(
      dir + "/total_collisions.svg",
      bar_chart_svg("total collisions", {base_label, edited_label},
                    {static_cast<double>(report.base.total_collisions),
                     static_cast<double>(report.edited.total_collisions)}));
  write_file_text(
      dir + "/zero_collision_trajectories.svg",
      bar_chart_svg(
          "zero-collision trajectories", {base_label, edited_label},
          {static_cast<double>(report.base.zero_collision_trajectories),
           static_cast<double>(report.edited.zero_collision_trajectories)}));
  write_file_text(
      dir + "/avg_success_rate.svg",
      bar_chart_svg("average success rate", {base_label, edited_label},
                    {report.base.avg_success_rate,
                     report.edited.avg_success_rate}));
}

void emit_comparison(const std::vector<ReportRow>& rows, const std::string& dir,
                     const std::string& axis_label,
                     const std::vector<double>& axis_values) {
  std::filesystem::create_directories(dir);
  write_file_text(dir + "/table.csv", metrics_csv(rows));
  if (axis_values.size() == rows.size() && rows.size() >= 2) {
    std::vector<double> col_coll, col_zero, col_succ;
    for (const auto& r : rows) {
      col_coll.push_back(static_cast<double>(r.metrics.total_collisions));
      col_zero.push_back(
          static_cast<double>(r.metrics.zero_collision_trajectories));
      col_succ.push_back(r.metrics.avg_success_rate);
    }
    write_file_text(dir + "/total_collisions.svg",
                    line_chart_svg("total collisions", axis_label, axis_values,
                                   {"total collisions"}, {col_coll}));
    write_file_text(
        dir + "/zero_collision_trajectories.svg",
        line_chart_svg("zero-collision trajectories", axis_label, axis_values,
                       {"zero-collision trajectories"}, {col_zero}));
    write_file_text(dir + "/avg_success_rate.svg",
                    line_chart_svg("average success rate", axis_label,
                                   axis_values, {"avg success rate"},
                                   {col_succ}));
  } else {
    std::vector<std::string> labels;
    std::vector<double> coll;
    for (const auto& r : rows) {
      labels.push_back(r.label);
      coll.push_back(static_cast<double>(r.metrics.total_collisions));
    }
    write_file_text(dir + "/total_collisions.svg",
                    bar_chart_svg("total collisions", labels, coll));
  }
}

}  // namespace lae::eval
