#include "loopsim/report.hpp"

#include <map>
#include <sstream>

#include "loopsim/format.hpp"
#include "loopsim/interest.hpp"
#include "loopsim/metrics.hpp"

namespace loopsim {

namespace {

constexpr const char* kHeader =
    "M,l,policy,epsilon,model,w,q,s,metric,step,mean,half_width,trials,"
    "restart_bound,growth_ceiling";
constexpr std::size_t kColumns = 15;

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] void Malformed(std::size_t line_no, const std::string& what) {
  throw ConfigError("results", "line " + std::to_string(line_no) + ": " + what);
}

double Number(const std::string& text, std::size_t line_no, const char* column) {
  const auto value = ParseDouble(text);
  if (!value) Malformed(line_no, std::string("bad number in ") + column);
  return *value;
}

}  // namespace

std::vector<ResultsRow> ParseResultsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    Malformed(1, "expected header '" + std::string(kHeader) + "'");
  }
  std::vector<ResultsRow> rows;
  for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != kColumns) {
      Malformed(line_no, "expected " + std::to_string(kColumns) + " fields, got " +
                             std::to_string(f.size()));
    }
    ResultsRow row;
    row.cell = "M=" + f[0] + " l=" + f[1] + " policy=" + f[2];
    if (!f[3].empty()) row.cell += " epsilon=" + f[3];
    row.cell += " model=" + f[4];
    if (!f[5].empty()) row.cell += " w=" + f[5];
    if (!f[6].empty()) row.cell += " q=" + f[6] + " s=" + f[7];
    row.model = f[4];
    row.metric = f[8];
    row.step = static_cast<std::size_t>(Number(f[9], line_no, "step"));
    row.mean = Number(f[10], line_no, "mean");
    row.half_width = Number(f[11], line_no, "half_width");
    row.trials = static_cast<std::size_t>(Number(f[12], line_no, "trials"));
    if (!f[13].empty()) row.restart_bound = Number(f[13], line_no, "restart_bound");
    row.growth_ceiling = Number(f[14], line_no, "growth_ceiling");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportLine> BuildReport(const std::vector<ResultsRow>& rows) {
  // Last-step max_interest row per cell, in first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, const ResultsRow*> final_rows;
  for (const ResultsRow& row : rows) {
    if (row.metric != "max_interest") continue;
    auto [it, inserted] = final_rows.try_emplace(row.cell, &row);
    if (inserted) order.push_back(row.cell);
    else if (row.step >= it->second->step) it->second = &row;
  }

  std::vector<ReportLine> lines;
  for (const std::string& cell : order) {
    const ResultsRow& row = *final_rows.at(cell);
    std::string text = cell + " t=" + std::to_string(row.step) +
                       " max_interest=" + FormatDouble(row.mean) + " +- " +
                       FormatDouble(row.half_width);
    bool violated = false;
    if (row.restart_bound) {
      const BoundCheck check = CheckRestartBound(
          row.mean, row.half_width, *row.restart_bound, row.growth_ceiling);
      violated = !check.satisfied;
      text += " bound=" + FormatDouble(*row.restart_bound) + " limit=" +
              FormatDouble(check.limit);
      text += !check.applicable ? " [below initial range]"
              : violated        ? " [VIOLATED]"
                                : " [ok]";
    } else {
      text += " bound=n/a";
    }
    lines.push_back({std::move(text), violated});
  }
  return lines;
}

}  // namespace loopsim
