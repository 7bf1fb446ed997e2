#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace armac {

// One CSV row of the metrics stream (schema v1, docs/formats.md). Optional
// fields serialize as empty cells; NashConv columns stay empty for games
// that cannot be enumerated exactly.
struct MetricsRow {
  int64_t epoch = 0;
  uint64_t acting_steps = 0;
  std::optional<double> nash_conv_avg;
  std::optional<double> nash_conv_current;
  std::vector<double> candidate_returns;  // empty for non-armac runs
  std::optional<int> primary_candidate;
  std::optional<double> wall_clock_s;
};

class CsvWriter {
 public:
  // `candidate_names` fixes the candidate column set (empty for cfr/mccfr).
  CsvWriter(const std::string& path,
            const std::vector<std::string>& candidate_names);

  void write_row(const MetricsRow& row);
  void flush() { out_.flush(); }

  static std::string header(const std::vector<std::string>& candidate_names);
  static std::string format_row(const MetricsRow& row, size_t num_candidates);

 private:
  std::ofstream out_;
  size_t num_candidates_;
};

}  // namespace armac
