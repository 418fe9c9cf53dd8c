#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyva/config.hpp"

namespace polyva {

struct ReportRow {
  int N = 0;
  int n = 0;
  Index M = 0;
  std::optional<Index> M_hat;
  std::optional<double> sup_error;
  std::optional<double> ortho_defect;
  std::optional<double> lebesgue_estimate;
  std::optional<double> qqstar_factor;
  std::optional<double> s_n;
  std::optional<double> q_max;
  std::optional<double> cond_G;
  long runtime_ms = 0;
  std::optional<std::uint64_t> seed;
  std::string error;
};

// Executes the sweep; rows come back ordered by sweep index regardless of
// how many worker threads ran (POLYVA_THREADS, 0 = serial). A failing sweep
// point records its error and the sweep continues.
std::vector<ReportRow> run(const ExperimentConfig& config);

std::string report_csv_header();
std::string rows_to_csv(const std::vector<ReportRow>& rows);

// Writes the CSV and a JSON sidecar (same path + ".meta.json") carrying the
// full config for provenance.
void write_report(const ExperimentConfig& config, const std::vector<ReportRow>& rows,
                  const std::string& csv_path);

int thread_budget();  // POLYVA_THREADS, 0/unset = serial

}  // namespace polyva
