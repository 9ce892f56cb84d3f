#include "socpart/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>

#include "socpart/errors.hpp"
#include "socpart/interval_scan.hpp"
#include "socpart/io.hpp"
#include "socpart/partition.hpp"
#include "socpart/report.hpp"
#include "socpart/transition.hpp"

namespace socpart {

namespace {

struct Common {
  std::string instance_path;
  std::string bundled;
  std::string format = "table";
};

int env_threads() {
  const char* v = std::getenv("SOCO_PART_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw Error(ErrorCode::kInvalidArgument, "SOCO_PART_THREADS must be a positive integer");
  return static_cast<int>(n);
}

ParametricInstance load(const Common& c) {
  if (!c.instance_path.empty()) return load_instance_file(c.instance_path);
  return bundled_instance(c.bundled);
}

OutputFormat output_format(const Common& c) { return c.format == "csv" ? OutputFormat::kCsv : OutputFormat::kTable; }

const char* superscript_order(int k) {
  switch (k) {
    case 1: return "′";
    case 2: return "″";
    case 3: return "‴";
    default: return nullptr;
  }
}

std::string subscript(int n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄",
                                 "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char ch : std::to_string(n)) out += digits[ch - '0'];
  return out;
}

// v₂′, ‖u₃″‖, (uᵀRu)₁^(4) ...
std::string quantity_label(PartitionSet set, int block, int order) {
  const char* sup = superscript_order(order);
  const std::string d = sup ? sup : "^(" + std::to_string(order) + ")";
  const std::string sub = subscript(block + 1);
  switch (set) {
    case PartitionSet::kT1: return "‖u" + sub + d + "‖";
    case PartitionSet::kT2: return "(uᵀRu)" + sub + d;
    default: return "v" + sub + d;
  }
}

std::string partition_payload(const ParametricInstance& inst, double eps, const SolverOptions& sopts, double tol,
                              OutputFormat fmt) {
  const SolveReport sol = solve(inst, eps, sopts);
  const OptimalPartition P = classify(sol.triple, tol);
  Table t{{"field", "value"}, {}};
  t.rows.push_back({std::string("eps"), eps});
  t.rows.push_back({std::string("partition"), P.to_string()});
  std::string low;
  for (int i : P.low_confidence) low += (low.empty() ? "" : " ") + std::to_string(i + 1);
  t.rows.push_back({std::string("low_confidence"), low.empty() ? std::string("none") : low});
  t.rows.push_back({std::string("strictly_complementary"), std::string(is_strictly_complementary(P) ? "yes" : "no")});
  t.rows.push_back({std::string("primal_nondegenerate"),
                    std::string(primal_nondegenerate(inst, sol.triple, P) ? "yes" : "no")});
  t.rows.push_back({std::string("dual_nondegenerate"),
                    std::string(dual_nondegenerate(inst, sol.triple, P) ? "yes" : "no")});
  t.rows.push_back({std::string("sigma_min(gradF)"), sol.sigma_min_F});
  if (is_strictly_complementary(P)) {
    const DeltaRadii d = delta_radius(sol.triple, P);
    t.rows.push_back({std::string("delta"), d.delta});
  }
  return render(t, fmt);
}

std::string interval_payload(const IntervalReport& r, OutputFormat fmt) {
  std::ostringstream os;
  Table t{{"field", "value"}, {}};
  t.rows.push_back({std::string("anchor"), r.anchor});
  t.rows.push_back({std::string("partition"), r.partition.to_string()});
  t.rows.push_back({std::string("alpha_hat"), r.alpha_hat});
  t.rows.push_back({std::string("beta_hat"), r.beta_hat});
  t.rows.push_back({std::string("verdict"), std::string(to_string(r.verdict))});
  t.rows.push_back({std::string("backward_stop"), std::string(to_string(r.backward.stop))});
  t.rows.push_back({std::string("forward_stop"), std::string(to_string(r.forward.stop))});
  os << render(t, fmt);
  for (const auto* dir : {&r.backward, &r.forward}) {
    os << '\n' << "# " << (dir == &r.backward ? "backward (alpha)" : "forward (beta)");
    if (!dir->note.empty()) os << ": " << dir->note;
    os << '\n' << render(trace_table(*dir), fmt);
  }
  return os.str();
}

std::string transition_payload(const TransitionReport& r, OutputFormat fmt) {
  std::ostringstream os;
  switch (r.verdict) {
    case TransitionVerdict::kTransitionPoint: {
      const auto& v = *r.violation;
      os << "TRANSITION POINT (order " << v.order << ", " << quantity_label(v.set, v.block, v.order) << " = "
         << format_number(v.value, OutputFormat::kTable) << ")\n";
      break;
    }
    case TransitionVerdict::kNonlinearityMember:
      os << "NONLINEARITY MEMBER (checked up to order " << r.orders_checked << ")\n";
      break;
    case TransitionVerdict::kInapplicable: os << "INAPPLICABLE\n"; break;
  }
  os << "# partition: " << r.partition.to_string() << '\n';
  os << "# primal nondegenerate: " << (r.primal_nondegenerate ? "yes" : "no")
     << ", dual nondegenerate: " << (r.dual_nondegenerate ? "yes" : "no") << '\n';
  if (r.corrected)
    os << "# corrected point: ||G|| = " << format_number(r.corrected->residual, OutputFormat::kTable)
       << ", sigma_min(gradG) = " << format_number(r.corrected->sigma_min, OutputFormat::kTable) << '\n';
  if (!r.note.empty()) os << "# note: " << r.note << '\n';
  if (r.series) {
    os << "# tolerance at order k: 1e-8 * 10^((k-1)/2)\n";
    os << render(series_table(*r.series), fmt);
  }
  return os.str();
}

int numerical_failure(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << '\n';
  return kExitNumerical;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parametric analysis of second-order conic problems"};
  app.require_subcommand(1);
  Common common;
  std::string names;
  for (const auto& n : bundled_names()) names += (names.empty() ? "" : ", ") + n;

  auto add_common = [&](CLI::App* sub) {
    auto* grp = sub->add_option_group("input");
    grp->add_option("--instance", common.instance_path, "Instance file");
    grp->add_option("--bundled", common.bundled, "Bundled instance: " + names);
    grp->require_option(1);
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"table", "csv"}));
  };

  double at = 0.0, start = 0.0, stop_tol = 1e-7, from = 0.0, to = 1.0;
  int max_iter = 200, order = 10, points = 11;
  double class_tol = kDefaultClassificationTol;

  auto* solve_cmd = app.add_subcommand("solve", "Solve the problem at a parameter value");
  add_common(solve_cmd);
  solve_cmd->add_option("--at", at, "Parameter value")->required();

  auto* part_cmd = app.add_subcommand("partition", "Optimal partition at a parameter value");
  add_common(part_cmd);
  part_cmd->add_option("--at", at, "Parameter value")->required();
  part_cmd->add_option("--tol", class_tol, "Classification tolerance")->check(CLI::PositiveNumber);

  auto* nl_cmd = app.add_subcommand("nonlinearity", "Approximate the nonlinearity interval around a point");
  add_common(nl_cmd);
  nl_cmd->add_option("--start", start, "Anchor parameter value")->required();
  nl_cmd->add_option("--stop-tol", stop_tol, "Stop when successive iterates differ by at most this")
      ->check(CLI::PositiveNumber);
  nl_cmd->add_option("--max-iter", max_iter, "Iteration cap per direction")->check(CLI::PositiveNumber);

  auto* tr_cmd = app.add_subcommand("transition", "Derivative test for transition points");
  add_common(tr_cmd);
  tr_cmd->add_option("--at", at, "Parameter value")->required();
  tr_cmd->add_option("--order", order, "Highest derivative order")->check(CLI::Range(1, 30));

  auto* scan_cmd = app.add_subcommand("scan", "Optimal partitions on an equispaced grid");
  add_common(scan_cmd);
  scan_cmd->add_option("--from", from, "Left end")->required();
  scan_cmd->add_option("--to", to, "Right end")->required();
  scan_cmd->add_option("--points", points, "Number of grid points")->check(CLI::PositiveNumber);

  auto* val_cmd = app.add_subcommand("value", "Optimal value function on an equispaced grid");
  add_common(val_cmd);
  val_cmd->add_option("--from", from, "Left end")->required();
  val_cmd->add_option("--to", to, "Right end")->required();
  val_cmd->add_option("--points", points, "Number of grid points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.command = command;

  ParametricInstance inst;
  int threads = 0;
  try {
    threads = env_threads();
    inst = load(common);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (val_cmd->parsed() && (points < 1 || !(to >= from) || (points == 1 && to != from))) {
    err << "error: need --from <= --to, and --from == --to when --points is 1\n";
    return kExitUsage;
  }
  report.digest = instance_digest(inst);
  const OutputFormat fmt = output_format(common);
  int exit_code = kExitOk;

  try {
    if (solve_cmd->parsed()) {
      const SolveReport sol = solve(inst, at);
      std::ostringstream os;
      os << "# objective " << format_number(sol.triple.objective, fmt)
         << " is psi(eps), the optimal value function at eps = " << format_number(at, fmt) << '\n';
      os << render(solve_table(sol.triple), fmt);
      report.payload = os.str();
    } else if (part_cmd->parsed()) {
      report.payload = partition_payload(inst, at, SolverOptions{}, class_tol, fmt);
    } else if (nl_cmd->parsed()) {
      Algorithm1Options o;
      o.stop_tol = stop_tol;
      o.max_iter = max_iter;
      o.parallel = threads != 1;
      try {
        report.payload = interval_payload(run_algorithm1(inst, start, o), fmt);
      } catch (const IntervalError& e) {
        report.payload = interval_payload(e.partial(), fmt);
        err << "error: " << e.what() << '\n';
        exit_code = kExitNumerical;
      }
    } else if (tr_cmd->parsed()) {
      ClassifyOptions o;
      o.K = order;
      report.payload = transition_payload(classify_point(inst, at, o), fmt);
    } else if (scan_cmd->parsed()) {
      GridScanOptions o;
      o.threads = threads;
      const GridScan scan = grid_scan(inst, from, to, points, o);
      report.payload = render(scan_table(scan), fmt);
      for (const auto& e : scan.errors)
        if (!e.empty()) exit_code = kExitNumerical;
    } else if (val_cmd->parsed()) {
      std::vector<double> grid;
      for (int i = 0; i < points; ++i) grid.push_back(points == 1 ? from : from + (to - from) * i / (points - 1));
      const ValueFunction vf = emit_value_function(inst, grid);
      std::ostringstream os;
      os << "# concavity check: " << (vf.concave ? "passed" : "FAILED") << " (worst gap "
         << format_number(vf.worst_concavity_gap, fmt) << ")\n";
      os << render(value_table(vf), fmt);
      report.payload = os.str();
      for (const auto& s : vf.samples)
        if (!s.ok) exit_code = kExitNumerical;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    return numerical_failure(err, e);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out << render(report);
  return exit_code;
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace socpart
