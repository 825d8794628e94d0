#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ladderlab/factorization.hpp"
#include "ladderlab/hybrid.hpp"

namespace ladderlab {

// Deterministic report emission: identical inputs give byte-identical files.
// Wall-clock metadata never enters a report; write_sidecar() keeps it in a
// separate file next to the reports.

// CSV header: f_id,k,L,U,alpha0,residual_exact,deviation_zeta,min_zeta_beta
std::string factorization_csv(const std::vector<FactorizationReport>& reports);

// One row per sweep point: formula,variant,U,levels,L,lhs,rhs,ratio
std::string sweep_csv(const ConvergenceSweep& sweep);

// JSON object with formula, variant, U, levels, points, decade_medians,
// verdict; validates against share/sweep_report.schema.json.
std::string sweep_json(const ConvergenceSweep& sweep);

// Parses a CSV produced by sweep_csv back into (L, lhs, rhs, ratio) rows.
struct SweepCsvRow {
    std::string formula, variant;
    double U;
    std::string levels;
    double L, lhs, rhs, ratio;
};
std::vector<SweepCsvRow> parse_sweep_csv(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& content);

// timestamp + free-form command echo, outside the deterministic surface
void write_sidecar(const std::filesystem::path& dir, const std::string& command_line);

}  // namespace ladderlab
