#pragma once

// Summary table of the six criteria, one row per labelled run, in the
// column order Delivery, Commonsense micro/macro, Hard micro/macro, Final.

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "imagine/evaluator.hpp"

namespace imagine {

struct ReportRow {
  std::string label;
  Criteria criteria;
};

inline constexpr std::array<std::string_view, 6> kReportColumns = {
    "Delivery Rate",   "Commonsense Micro", "Commonsense Macro",
    "Hard Micro",      "Hard Macro",        "Final Pass Rate",
};

namespace detail {

inline std::array<double, 6> percent_cells(const Criteria& c) {
  return {100 * c.delivery_rate, 100 * c.commonsense_micro, 100 * c.commonsense_macro,
          100 * c.hard_micro,    100 * c.hard_macro,        100 * c.final_pass_rate};
}

inline std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace detail

inline std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "run";
  for (auto c : kReportColumns) out << ',' << c;
  out << '\n';
  for (const auto& r : rows) {
    out << detail::csv_field(r.label);
    for (double v : detail::percent_cells(r.criteria)) out << ',' << detail::fixed1(v);
    out << '\n';
  }
  return out.str();
}

inline std::string report_table(const std::vector<ReportRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"Run"};
  head.insert(head.end(), kReportColumns.begin(), kReportColumns.end());
  cells.push_back(head);
  for (const auto& r : rows) {
    std::vector<std::string> line{r.label};
    for (double v : detail::percent_cells(r.criteria)) line.push_back(detail::fixed1(v));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << "  ";
      const std::size_t pad = width[i] - line[i].size();
      if (i == 0) out << line[i] << std::string(pad, ' ');
      else out << std::string(pad, ' ') << line[i];
    }
    out << '\n';
  };
  emit(cells[0]);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (std::size_t k = 1; k < cells.size(); ++k) emit(cells[k]);
  return out.str();
}

}  // namespace imagine
