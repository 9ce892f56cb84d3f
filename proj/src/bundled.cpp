#include <initializer_list>

#include "socpart/errors.hpp"
#include "socpart/io.hpp"

namespace socpart {

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Eigen::MatrixXd mat(int rows, int cols, std::initializer_list<double> v) {
  Eigen::MatrixXd out(rows, cols);
  auto it = v.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = *it++;
  return out;
}

ParametricInstance make(const char* name, std::vector<int> dims, Eigen::MatrixXd A, Eigen::VectorXd b,
                        Eigen::VectorXd c, Eigen::VectorXd cbar) {
  ParametricInstance inst;
  inst.name = name;
  inst.structure = ConeStructure(std::move(dims));
  inst.A = std::move(A);
  inst.b = std::move(b);
  inst.c = std::move(c);
  inst.cbar = std::move(cbar);
  inst.validate();
  return inst;
}

}  // namespace

std::vector<std::string> bundled_names() {
  return {"intro", "analytic", "counterexample", "transition", "transition_tilted", "degenerate"};
}

ParametricInstance bundled_instance(const std::string& name) {
  // min -eps x1_2 - (1-eps) x1_3, x1_1 = 1, x1_3 = x2_1, x1_2 - x2_2 = 1.
  if (name == "intro")
    return make("intro", {3, 2},
                mat(3, 5, {1, 0, 0, 0, 0,
                           0, 0, 1, -1, 0,
                           0, 1, 0, 0, -1}),
                vec({1, 0, 1}), vec({0, 0, -1, 0, 0}), vec({0, -1, 1, 0, 0}));
  // min (1-2eps) x1_2 - x1_3, x1_1 = 1, x2_1 = 2, x2_2 = x1_2, x2_3 = 2 x1_3.
  if (name == "analytic")
    return make("analytic", {3, 3},
                mat(4, 6, {1, 0, 0, 0, 0, 0,
                           0, 0, 0, 1, 0, 0,
                           0, -1, 0, 0, 1, 0,
                           0, 0, -2, 0, 0, 1}),
                vec({1, 2, 0, 0}), vec({0, 1, -1, 0, 0, 0}), vec({0, -2, 0, 0, 0, 0}));
  // Primal optimal set mapping is discontinuous at 1/2 inside a nonlinearity interval.
  if (name == "counterexample")
    return make("counterexample", {3, 3},
                mat(2, 6, {1, 0, 0, 1, 0, 0,
                           0, 0, 1, 0, 0, 1}),
                vec({4, 0}), vec({0, 0.5, 0, -0.5, 0, -0.5}), vec({0, -0.5, 0, 1, -0.5, 1}));
  // min x1_1 + (1-eps) x1_2, x1_2 + x2_2 = 0, x1_3 + x2_1 = -1. Transition point at 0.
  if (name == "transition")
    return make("transition", {3, 2},
                mat(2, 5, {0, 1, 0, 0, 1,
                           0, 0, 1, 1, 0}),
                vec({0, -1}), vec({1, 1, 0, 0, 0}), vec({0, -1, 0, 0, 0}));
  // Same feasible set with objective x1_1 + (1-eps) x1_2 + eps x1_3; invariant partition on (-inf, 1).
  if (name == "transition_tilted")
    return make("transition_tilted", {3, 2},
                mat(2, 5, {0, 1, 0, 0, 1,
                           0, 0, 1, 1, 0}),
                vec({0, -1}), vec({1, 1, 0, 0, 0}), vec({0, -1, 1, 0, 0}));
  // Nonlinearity intervals (-inf, 0) and (0, inf); nondegeneracy fails on both.
  if (name == "degenerate")
    return make("degenerate", {3, 1, 3},
                mat(4, 7, {1, 0, 0, 0, 0, 0, 0,
                           0, 0, 0, 1, 1, 0, 0,
                           0, 1, 0, 0, 0, -1, 0,
                           0, 0, 1, 0, 0, 0, -1}),
                vec({1, 2, 0, -1}), vec({0, 0, -1, 0, 0, 0, 0}), vec({0, -1, 1, 0, 0, 0, 0}));
  throw Error(ErrorCode::kInvalidArgument, "unknown bundled instance '" + name + "'");
}

}  // namespace socpart
