#include "laurent/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "laurent/types.hpp"

namespace laurent {

double assignment_cost(const CostMatrix& cost, const std::vector<int>& perm) {
  double total = 0.0;
  for (size_t r = 0; r < perm.size(); ++r) total += cost(static_cast<Eigen::Index>(r), perm[r]);
  return total;
}

std::vector<int> hungarian_assignment(const CostMatrix& cost) {
  if (cost.rows() != cost.cols()) throw Error(ErrorCode::InvalidArgument, "assignment needs a square cost matrix");
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const int row0 = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cur = cost(row0 - 1, col - 1) - u[row0] - v[col];
        if (cur < minv[col]) {
          minv[col] = cur;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> perm(static_cast<size_t>(n));
  for (int col = 1; col <= n; ++col) perm[static_cast<size_t>(match[col] - 1)] = col - 1;
  return perm;
}

std::vector<RankedAssignment> ranked_assignments(const CostMatrix& cost) {
  if (cost.rows() != cost.cols()) throw Error(ErrorCode::InvalidArgument, "assignment needs a square cost matrix");
  const int n = static_cast<int>(cost.rows());
  if (n > kExhaustiveAssignmentLimit)
    throw Error(ErrorCode::InvalidArgument, "exhaustive assignment limited to size " +
                                                std::to_string(kExhaustiveAssignmentLimit));
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<RankedAssignment> all;
  do {
    all.push_back({assignment_cost(cost, perm), perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::stable_sort(all.begin(), all.end(),
                   [](const RankedAssignment& a, const RankedAssignment& b) { return a.cost < b.cost; });
  return all;
}

std::string cycle_notation(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::string out;
  for (size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == static_cast<int>(start)) continue;
    out += '(';
    size_t cur = start;
    bool first = true;
    while (!seen[cur]) {
      seen[cur] = 1;
      if (!first) out += ' ';
      out += std::to_string(cur + 1);
      first = false;
      cur = static_cast<size_t>(perm[cur]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

bool is_identity(const std::vector<int>& perm) {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace laurent
