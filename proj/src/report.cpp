#include "socpart/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "socpart/errors.hpp"
#include "socpart/io.hpp"

namespace socpart {

namespace {

std::string cell_text(const Cell& c, OutputFormat fmt) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d, fmt);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string set_label(PartitionSet s, int block) { return std::string(to_string(s)) + "[" + std::to_string(block + 1) + "]"; }

}  // namespace

std::string format_number(double v, OutputFormat fmt) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", fmt == OutputFormat::kCsv ? 17 : 6, v);
  return buf;
}

std::string render(const Table& t, OutputFormat fmt) {
  std::ostringstream os;
  if (fmt == OutputFormat::kCsv) {
    for (size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << csv_escape(t.columns[j]);
    os << '\n';
    for (const auto& row : t.rows) {
      for (size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_escape(cell_text(row[j], fmt));
      os << '\n';
    }
    return os.str();
  }
  std::vector<std::vector<std::string>> text;
  std::vector<size_t> width(t.columns.size());
  for (size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
  for (const auto& row : t.rows) {
    auto& r = text.emplace_back();
    for (size_t j = 0; j < row.size(); ++j) {
      r.push_back(cell_text(row[j], fmt));
      if (j < width.size()) width[j] = std::max(width[j], r.back().size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t j = 0; j < cells.size(); ++j) {
      if (j) os << "  ";
      const size_t w = j < width.size() ? width[j] : 0;
      os << std::string(w > cells[j].size() ? w - cells[j].size() : 0, ' ') << cells[j];
    }
    os << '\n';
  };
  line(t.columns);
  for (const auto& r : text) line(r);
  return os.str();
}

Table trace_table(const DirectionTrace& trace) {
  Table t{{"k", "value", "Optim.", "Viol.", "delta", "sigma_min(gradF)", "dist_to_limit"}, {}};
  for (const auto& r : trace.rows) {
    if (r.has_aux)
      t.rows.push_back({static_cast<long long>(r.k), r.value, r.optimality, r.violation, r.delta, r.sigma_min_F,
                        r.distance_to_limit});
    else
      t.rows.push_back({static_cast<long long>(r.k), r.value, std::string("-"), std::string("-"), r.delta,
                        r.sigma_min_F, r.distance_to_limit});
  }
  return t;
}

Table series_table(const DerivativeSeries& s) {
  Table t{{"k"}, {}};
  for (const auto& q : s.quantities) t.columns.push_back(set_label(q.set, q.block));
  t.columns.push_back("residual");
  for (int k = 1; k <= s.order(); ++k) {
    std::vector<Cell> row{static_cast<long long>(k)};
    for (const auto& q : s.quantities) row.push_back(q.values[k - 1]);
    row.push_back(s.residuals[k - 1]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table scan_table(const GridScan& scan) {
  Table t{{"eps", "partition", "objective", "change_after"}, {}};
  for (size_t i = 0; i < scan.grid.size(); ++i) {
    const bool change = std::find(scan.change_cells.begin(), scan.change_cells.end(), static_cast<int>(i)) !=
                        scan.change_cells.end();
    if (scan.partitions[i])
      t.rows.push_back({scan.grid[i], scan.partitions[i]->to_string(), scan.objective[i],
                        std::string(change ? "yes" : "no")});
    else
      t.rows.push_back({scan.grid[i], "FAILED: " + scan.errors[i], std::nan(""), std::string("-")});
  }
  return t;
}

Table solve_table(const PrimalDualTriple& tr) {
  Table t{{"quantity", "index", "value"}, {}};
  auto add_vec = [&](const char* name, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) t.rows.push_back({std::string(name), static_cast<long long>(i + 1), v(i)});
  };
  add_vec("x", tr.x.values());
  add_vec("y", tr.y);
  add_vec("s", tr.s.values());
  t.rows.push_back({std::string("objective"), 0LL, tr.objective});
  t.rows.push_back({std::string("gap"), 0LL, tr.gap});
  t.rows.push_back({std::string("primal_residual"), 0LL, tr.primal_residual});
  t.rows.push_back({std::string("dual_residual"), 0LL, tr.dual_residual});
  return t;
}

ValueFunction emit_value_function(const ParametricInstance& inst, const std::vector<double>& grid,
                                  const SolverOptions& opts, double slack) {
  ValueFunction vf;
  for (double e : grid) {
    ValueFunctionSample smp;
    smp.eps = e;
    try {
      smp.psi = solve(inst, e, opts).triple.objective;
      smp.ok = true;
    } catch (const Error& ex) {
      smp.psi = std::nan("");
      smp.error = ex.what();
    }
    vf.samples.push_back(std::move(smp));
  }
  std::vector<const ValueFunctionSample*> good;
  for (const auto& s : vf.samples)
    if (s.ok) good.push_back(&s);
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i + 1 < good.size(); ++i) {
    const double a = good[i - 1]->eps, b = good[i]->eps, c = good[i + 1]->eps;
    if (!(c > a)) continue;
    const double interp = ((c - b) * good[i - 1]->psi + (b - a) * good[i + 1]->psi) / (c - a);
    worst = std::max(worst, interp - good[i]->psi);
  }
  vf.worst_concavity_gap = std::isfinite(worst) ? worst : 0.0;
  vf.concave = vf.worst_concavity_gap <= slack;
  return vf;
}

Table value_table(const ValueFunction& vf) {
  Table t{{"eps", "psi"}, {}};
  for (const auto& s : vf.samples) {
    if (s.ok)
      t.rows.push_back({s.eps, s.psi});
    else
      t.rows.push_back({s.eps, "FAILED: " + s.error});
  }
  return t;
}

std::string instance_digest(const ParametricInstance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : write_instance(inst)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string render(const RunReport& r) {
  std::ostringstream os;
  os << "# command: " << r.command << '\n';
  os << "# instance: " << r.digest << '\n';
  os << r.payload;
  if (!r.payload.empty() && r.payload.back() != '\n') os << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r.wall_seconds);
  os << "# wall time: " << buf << " s\n";
  return os.str();
}

}  // namespace socpart
