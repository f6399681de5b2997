#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace laurent {

/// Square cost matrix; cost(r, c) is the price of assigning row r to column c.
using CostMatrix = Eigen::MatrixXd;

/// Permutations up to this size are enumerated exhaustively.
inline constexpr int kExhaustiveAssignmentLimit = 6;

struct RankedAssignment {
  double cost = 0.0;
  std::vector<int> perm;  // perm[r] = column assigned to row r
};

double assignment_cost(const CostMatrix& cost, const std::vector<int>& perm);

/// Minimum-cost perfect matching by the Hungarian method with potentials, O(n^3).
std::vector<int> hungarian_assignment(const CostMatrix& cost);

/// Every permutation with its cost, cheapest first. Equal costs keep
/// lexicographic permutation order, so the identity wins exact ties.
std::vector<RankedAssignment> ranked_assignments(const CostMatrix& cost);

/// Cycle notation with 1-based labels and fixed points omitted, e.g. "(1 2)";
/// the identity renders as "()".
std::string cycle_notation(const std::vector<int>& perm);

bool is_identity(const std::vector<int>& perm);

}  // namespace laurent
