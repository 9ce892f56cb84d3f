#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "socpart/instance.hpp"
#include "socpart/interval_scan.hpp"
#include "socpart/solver.hpp"
#include "socpart/transition.hpp"

namespace socpart {

enum class OutputFormat { kTable, kCsv };

// Numbers print with 6 significant digits in tables and 17 in CSV.
using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v, OutputFormat fmt);
std::string render(const Table& table, OutputFormat fmt);

// Columns k, value, Optim., Viol., delta, sigma_min(grad F), |value - limit|.
Table trace_table(const DirectionTrace& trace);
// One row per order k, one column per tested quantity.
Table series_table(const DerivativeSeries& series);
Table scan_table(const GridScan& scan);
Table solve_table(const PrimalDualTriple& triple);

struct ValueFunctionSample {
  double eps = 0.0;
  double psi = 0.0;
  bool ok = false;
  std::string error;
};

struct ValueFunction {
  std::vector<ValueFunctionSample> samples;
  // Largest (psi(a) + psi(c)) / 2 - psi(b) - slack over consecutive successful
  // triples a < b < c, weighted for uneven spacing; <= 0 means concave.
  double worst_concavity_gap = 0.0;
  bool concave = true;
};

// psi(eps) = optimal value at each grid point; failing points are marked.
ValueFunction emit_value_function(const ParametricInstance& inst, const std::vector<double>& grid,
                                  const SolverOptions& opts = {}, double concavity_slack = 1e-7);
Table value_table(const ValueFunction& vf);

// 64-bit FNV-1a over the canonical instance text, as 16 hex digits.
std::string instance_digest(const ParametricInstance& inst);

struct RunReport {
  std::string command;
  std::string digest;
  std::string payload;
  double wall_seconds = 0.0;
};

// Header lines prefixed with '#', then the payload.
std::string render(const RunReport& report);

}  // namespace socpart
