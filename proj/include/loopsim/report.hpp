#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace loopsim {

/// One parsed line of a results CSV.
struct ResultsRow {
  std::string cell;  // "M=.. l=.. policy=.." label built from the cell columns
  std::string model;
  std::string metric;
  std::size_t step = 0;
  double mean = 0.0;
  double half_width = 0.0;
  std::size_t trials = 0;
  std::optional<double> restart_bound;
  double growth_ceiling = 0.0;
};

/// Parses a results CSV. Throws ConfigError (field "results") with the line
/// number on a bad header, a short row or an unparsable number.
std::vector<ResultsRow> ParseResultsCsv(std::istream& in);

struct ReportLine {
  std::string text;
  bool violated = false;
};

/// One line per cell, from the cell's max_interest row at its last step:
/// mean +- half width, the restart bound, and whether the bound holds.
std::vector<ReportLine> BuildReport(const std::vector<ResultsRow>& rows);

}  // namespace loopsim
