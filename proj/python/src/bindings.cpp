#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "socpart/cli.hpp"
#include "socpart/errors.hpp"
#include "socpart/instance.hpp"
#include "socpart/interval_scan.hpp"
#include "socpart/io.hpp"
#include "socpart/partition.hpp"
#include "socpart/solver.hpp"
#include "socpart/transition.hpp"

namespace py = pybind11;
using namespace socpart;

namespace {

ParametricInstance make_instance(std::vector<int> dims, Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c,
                                 Eigen::VectorXd cbar, std::optional<std::pair<double, double>> domain,
                                 std::string name) {
  ParametricInstance inst;
  inst.name = std::move(name);
  inst.structure = ConeStructure(std::move(dims));
  inst.A = std::move(A);
  inst.b = std::move(b);
  inst.c = std::move(c);
  inst.cbar = std::move(cbar);
  if (domain) inst.domain = DomainBounds{domain->first, domain->second};
  inst.validate();
  return inst;
}

py::dict trace_dict(const DirectionTrace& t) {
  py::list rows;
  for (const auto& r : t.rows) {
    py::dict d;
    d["k"] = r.k;
    d["value"] = r.value;
    d["delta"] = r.delta;
    d["sigma_min_F"] = r.sigma_min_F;
    d["distance_to_limit"] = r.distance_to_limit;
    if (r.has_aux) {
      d["optimality"] = r.optimality;
      d["violation"] = r.violation;
    }
    rows.append(d);
  }
  py::dict out;
  out["rows"] = rows;
  out["limit"] = t.limit;
  out["stop"] = to_string(t.stop);
  out["note"] = t.note;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal partitions and nonlinearity intervals of parametric second-order cone programs";

  static py::exception<Error> error_type(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object ex = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      ex.attr("code") = to_string(e.code());
      ex.attr("detail") = e.detail();
      PyErr_SetObject(error_type.ptr(), ex.ptr());
    }
  });

  py::class_<ParametricInstance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("dims"), py::arg("A"), py::arg("b"), py::arg("c"), py::arg("cbar"),
           py::arg("domain") = std::nullopt, py::arg("name") = "")
      .def_readonly("name", &ParametricInstance::name)
      .def_property_readonly("dims", [](const ParametricInstance& i) { return i.structure.dims(); })
      .def_readonly("A", &ParametricInstance::A)
      .def_readonly("b", &ParametricInstance::b)
      .def_readonly("c", &ParametricInstance::c)
      .def_readonly("cbar", &ParametricInstance::cbar)
      .def_property_readonly("domain",
                             [](const ParametricInstance& i) -> std::optional<std::pair<double, double>> {
                               if (!i.domain) return std::nullopt;
                               return std::make_pair(i.domain->lo, i.domain->hi);
                             })
      .def("to_text", &write_instance)
      .def("__repr__", [](const ParametricInstance& i) {
        std::ostringstream os;
        os << "<Instance '" << i.name << "' m=" << i.m() << " n=" << i.n() << " blocks=" << i.structure.num_blocks()
           << ">";
        return os.str();
      });

  m.def("parse_instance", [](const std::string& text) { return parse_instance(text); }, py::arg("text"));
  m.def("load_instance", &load_instance_file, py::arg("path"));
  m.def("bundled_names", &bundled_names);
  m.def("bundled_instance", &bundled_instance, py::arg("name"));

  py::class_<PrimalDualTriple>(m, "Triple")
      .def_readonly("eps", &PrimalDualTriple::eps)
      .def_property_readonly("x", [](const PrimalDualTriple& t) { return t.x.values(); })
      .def_readonly("y", &PrimalDualTriple::y)
      .def_property_readonly("s", [](const PrimalDualTriple& t) { return t.s.values(); })
      .def_readonly("gap", &PrimalDualTriple::gap)
      .def_readonly("primal_residual", &PrimalDualTriple::primal_residual)
      .def_readonly("dual_residual", &PrimalDualTriple::dual_residual)
      .def_readonly("objective", &PrimalDualTriple::objective);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("triple", &SolveReport::triple)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("mu", &SolveReport::mu)
      .def_readonly("sigma_min_F", &SolveReport::sigma_min_F);

  m.def(
      "solve", [](const ParametricInstance& inst, double eps, double tol) { return solve(inst, eps, tol); },
      py::arg("instance"), py::arg("eps"), py::arg("tol") = 1e-8);

  py::class_<OptimalPartition>(m, "Partition")
      .def_readonly("B", &OptimalPartition::B)
      .def_readonly("N", &OptimalPartition::N)
      .def_readonly("R", &OptimalPartition::R)
      .def_readonly("T1", &OptimalPartition::T1)
      .def_readonly("T2", &OptimalPartition::T2)
      .def_readonly("T3", &OptimalPartition::T3)
      .def_readonly("low_confidence", &OptimalPartition::low_confidence)
      .def_property_readonly("strictly_complementary", &is_strictly_complementary)
      .def("__eq__", &OptimalPartition::same_sets)
      .def("__str__", &OptimalPartition::to_string)
      .def("__repr__", [](const OptimalPartition& p) { return "<Partition " + p.to_string() + ">"; });

  m.def(
      "partition",
      [](const ParametricInstance& inst, double eps, double tol) {
        return classify(solve(inst, eps).triple, tol);
      },
      py::arg("instance"), py::arg("eps"), py::arg("tol") = kDefaultClassificationTol);

  m.def(
      "nondegeneracy",
      [](const ParametricInstance& inst, double eps, double rank_tol) {
        const auto tr = solve(inst, eps).triple;
        const auto p = classify(tr);
        return std::make_pair(primal_nondegenerate(inst, tr, p, rank_tol), dual_nondegenerate(inst, tr, p, rank_tol));
      },
      py::arg("instance"), py::arg("eps"), py::arg("rank_tol") = kDefaultRankTol,
      "(primal, dual) nondegeneracy of the computed solution at eps.");

  m.def(
      "nonlinearity_interval",
      [](const ParametricInstance& inst, double eps, double stop_tol, int max_iter) {
        const auto r = run_algorithm1(inst, eps, stop_tol, max_iter);
        py::dict d;
        d["anchor"] = r.anchor;
        d["alpha_hat"] = r.alpha_hat;
        d["beta_hat"] = r.beta_hat;
        d["partition"] = r.partition;
        d["verdict"] = to_string(r.verdict);
        d["backward"] = trace_dict(r.backward);
        d["forward"] = trace_dict(r.forward);
        return d;
      },
      py::arg("instance"), py::arg("eps"), py::arg("stop_tol") = 1e-7, py::arg("max_iter") = 200);

  m.def(
      "grid_scan",
      [](const ParametricInstance& inst, double lo, double hi, int points) {
        const auto s = grid_scan(inst, lo, hi, points);
        py::list rows;
        for (size_t i = 0; i < s.grid.size(); ++i) {
          py::dict d;
          d["eps"] = s.grid[i];
          d["partition"] = s.partitions[i] ? py::cast(*s.partitions[i]) : py::none();
          d["objective"] = s.objective[i];
          d["error"] = s.errors[i];
          rows.append(d);
        }
        return py::make_tuple(rows, s.change_cells);
      },
      py::arg("instance"), py::arg("lo"), py::arg("hi"), py::arg("points") = 11,
      "Returns (rows, change_cells); cell i flags a change between rows i and i + 1.");

  m.def(
      "interval_kind",
      [](const ParametricInstance& inst, double lo, double hi, int samples) {
        return std::string(to_string(classify_interval_kind(inst, lo, hi, samples)));
      },
      py::arg("instance"), py::arg("lo"), py::arg("hi"), py::arg("samples") = 5);

  m.def(
      "classify_point",
      [](const ParametricInstance& inst, double eps, int order) {
        ClassifyOptions opts;
        opts.K = order;
        const auto r = classify_point(inst, eps, opts);
        py::dict d;
        d["eps"] = r.eps;
        d["verdict"] = to_string(r.verdict);
        d["partition"] = r.partition;
        d["primal_nondegenerate"] = r.primal_nondegenerate;
        d["dual_nondegenerate"] = r.dual_nondegenerate;
        d["orders_checked"] = r.orders_checked;
        d["note"] = r.note;
        if (r.violation) {
          py::dict v;
          v["set"] = to_string(r.violation->set);
          v["block"] = r.violation->block + 1;
          v["order"] = r.violation->order;
          v["value"] = r.violation->value;
          v["tolerance"] = r.violation->tolerance;
          d["violation"] = v;
        } else {
          d["violation"] = py::none();
        }
        if (r.series) {
          py::list qs;
          for (const auto& q : r.series->quantities) {
            py::dict qd;
            qd["set"] = to_string(q.set);
            qd["block"] = q.block + 1;
            qd["values"] = q.values;
            qs.append(qd);
          }
          d["series"] = qs;
        } else {
          d["series"] = py::none();
        }
        return d;
      },
      py::arg("instance"), py::arg("eps"), py::arg("order") = 10);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        std::vector<std::string> argv{"socpart"};
        argv.insert(argv.end(), args.begin(), args.end());
        const int code = cli_dispatch(argv, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end in-process; returns (exit_code, stdout, stderr).");
}
