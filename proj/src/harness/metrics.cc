#include "armac/harness/metrics.h"

#include <cstdio>

#include "armac/util/check.h"

namespace armac {

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

std::string CsvWriter::header(
    const std::vector<std::string>& candidate_names) {
  std::string h = "epoch,acting_steps,nash_conv_avg,nash_conv_current";
  for (const auto& name : candidate_names) h += ",cand_" + name;
  h += ",primary_candidate,wall_clock_s";
  return h;
}

std::string CsvWriter::format_row(const MetricsRow& row,
                                  size_t num_candidates) {
  ARMAC_CHECK(row.candidate_returns.size() == num_candidates ||
              row.candidate_returns.empty());
  std::string line = std::to_string(row.epoch);
  line += "," + std::to_string(row.acting_steps);
  line += ",";
  if (row.nash_conv_avg) line += fmt(*row.nash_conv_avg);
  line += ",";
  if (row.nash_conv_current) line += fmt(*row.nash_conv_current);
  for (size_t c = 0; c < num_candidates; ++c) {
    line += ",";
    if (c < row.candidate_returns.size()) {
      line += fmt(row.candidate_returns[c]);
    }
  }
  line += ",";
  if (row.primary_candidate) line += std::to_string(*row.primary_candidate);
  line += ",";
  if (row.wall_clock_s) line += fmt(*row.wall_clock_s);
  return line;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& candidate_names)
    : out_(path), num_candidates_(candidate_names.size()) {
  if (!out_) throw InputError("cannot open CSV for writing: " + path);
  out_ << header(candidate_names) << "\n";
}

void CsvWriter::write_row(const MetricsRow& row) {
  out_ << format_row(row, num_candidates_) << "\n";
}

}  // namespace armac
