#pragma once

#include <string>
#include <vector>

#include "socpart/instance.hpp"
#include "socpart/solver.hpp"

namespace socpart {

enum class PartitionSet { kB, kN, kR, kT1, kT2, kT3 };

const char* to_string(PartitionSet s);

// Block indices are 0-based and sorted; to_string prints them 1-based.
struct OptimalPartition {
  std::vector<int> B, N, R, T1, T2, T3;
  double tol = 1e-6;
  // Blocks whose classifying quantities sit within a factor 10 of a threshold.
  std::vector<int> low_confidence;

  int num_blocks() const;
  PartitionSet set_of(int block) const;
  const std::vector<int>& members(PartitionSet s) const;
  bool same_sets(const OptimalPartition& other) const;
  bool operator==(const OptimalPartition& other) const { return same_sets(other); }
  bool operator!=(const OptimalPartition& other) const { return !same_sets(other); }
  // e.g. "({2},{},{1},({},{},{}))"
  std::string to_string() const;
};

constexpr double kDefaultClassificationTol = 1e-6;
constexpr double kDefaultRankTol = 1e-8;

// Raises INCONSISTENT_BLOCK when a block fits none of the six sets.
OptimalPartition classify(const PrimalDualTriple& triple, double tol = kDefaultClassificationTol);

bool is_strictly_complementary(const OptimalPartition& partition);

// Full row rank of ((A^i Pbar^i)_{R u T2}, (A^i)_B).
bool primal_nondegenerate(const ParametricInstance& inst, const PrimalDualTriple& triple,
                          const OptimalPartition& partition, double rank_tol = kDefaultRankTol);
// Full column rank of ((A^i R^i s^i)_{R u T3}, (A^i)_{B u T1 u T2}).
bool dual_nondegenerate(const ParametricInstance& inst, const PrimalDualTriple& triple,
                        const OptimalPartition& partition, double rank_tol = kDefaultRankTol);

// The matrices tested above, exposed for diagnostics.
Eigen::MatrixXd primal_nondegeneracy_matrix(const ParametricInstance& inst, const PrimalDualTriple& triple,
                                            const OptimalPartition& partition);
Eigen::MatrixXd dual_nondegeneracy_matrix(const ParametricInstance& inst, const PrimalDualTriple& triple,
                                          const OptimalPartition& partition);

struct DeltaRadii {
  double delta_B = 0.0;
  double delta_N = 0.0;
  double delta_R = 0.0;
  double delta = 0.0;
};

// Empty index sets contribute +infinity. Raises NOT_STRICTLY_COMPLEMENTARY.
DeltaRadii delta_radius(const PrimalDualTriple& triple, const OptimalPartition& partition);

// Snaps blocks that should vanish to zero and projects blocks that should lie
// on the cone boundary onto it. Residuals are recomputed.
PrimalDualTriple round_to_partition(const ParametricInstance& inst, const PrimalDualTriple& triple,
                                    const OptimalPartition& partition);

}  // namespace socpart
