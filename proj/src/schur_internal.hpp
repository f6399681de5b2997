#pragma once

#include <vector>

#include "laurent/schur_chain.hpp"

namespace laurent::detail {

/// Reorders eig so that eig[perm[k]] sits next to hint[k] at minimum total distance.
std::vector<cd> order_by_hint(const std::vector<cd>& eig, const std::vector<cd>& hint);

/// Eigenvalues of M with clusters merged, default (descending Re, Im) order.
std::vector<cd> merged_eigenvalues(const CMatrix& M, const SchurTolerances& tol);

}  // namespace laurent::detail
