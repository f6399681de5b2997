#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "laurent/assignment.hpp"
#include "laurent/kernels.hpp"
#include "schur_internal.hpp"

namespace laurent {

namespace detail {

std::vector<cd> order_by_hint(const std::vector<cd>& eig, const std::vector<cd>& hint) {
  if (hint.size() != eig.size())
    throw Error(ErrorCode::DimensionMismatch, "order hint has " + std::to_string(hint.size()) + " values for " +
                                                  std::to_string(eig.size()) + " eigenvalues");
  const auto n = static_cast<Eigen::Index>(eig.size());
  CostMatrix cost(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) cost(r, c) = std::abs(hint[static_cast<size_t>(r)] - eig[static_cast<size_t>(c)]);
  const std::vector<int> perm =
      n <= kExhaustiveAssignmentLimit ? ranked_assignments(cost).front().perm : hungarian_assignment(cost);
  std::vector<cd> out(eig.size());
  for (size_t r = 0; r < eig.size(); ++r) out[r] = eig[static_cast<size_t>(perm[r])];
  return out;
}

std::vector<cd> merged_eigenvalues(const CMatrix& M, const SchurTolerances& tol) {
  if (!M.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  bool ok = true;
  auto eig = kernels::detail::clustered_eigenvalues(M, tol.cluster, ok);
  if (!ok) throw Error(ErrorCode::NoConvergence, "QR iteration did not converge");
  return eig;
}

}  // namespace detail

namespace {

// Unit vector in the (numerical) kernel of S. A kernel of dimension > 1 is
// resolved toward ref when one is supplied.
CVector kernel_vector(const CMatrix& S, double threshold, const CVector* ref) {
  Eigen::JacobiSVD<CMatrix> svd(S, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Eigen::Index m = S.cols();
  Eigen::Index nullity = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) <= threshold) ++nullity;
  nullity = std::max<Eigen::Index>(nullity, 1);
  const CMatrix& V = svd.matrixV();
  if (nullity > 1 && ref != nullptr) {
    const CMatrix basis = V.rightCols(nullity);
    const CVector proj = basis * (basis.adjoint() * *ref);
    if (proj.norm() > 1e-3 * ref->norm()) return proj.normalized();
  }
  return V.col(m - 1);
}

// Orthonormal basis of the orthogonal complement of the unit vector y.
CMatrix complement_basis(const CVector& y) {
  const Eigen::Index m = y.size();
  Eigen::HouseholderQR<CMatrix> qr{CMatrix(y)};
  CMatrix Q = qr.householderQ() * CMatrix::Identity(m, m);
  return Q.rightCols(m - 1);
}

void fix_phase(Eigen::Ref<CVector> col, const CVector* ref) {
  if (ref != nullptr) {
    const cd overlap = ref->dot(col);  // ref^* col
    if (std::abs(overlap) > 1e-14) {
      col *= std::conj(overlap) / std::abs(overlap);
      return;
    }
  }
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < col.size(); ++i)
    if (std::abs(col(i)) > std::abs(col(best)) + 1e-12) best = i;
  const cd pivot = col(best);
  if (std::abs(pivot) > 0.0) col *= std::conj(pivot) / std::abs(pivot);
}

}  // namespace

SchurForm schur_with_order(const CMatrix& M, const std::vector<cd>& ordered, const CMatrix* reference,
                           const SchurTolerances& tol) {
  const Eigen::Index d = M.rows();
  if (M.cols() != d || static_cast<Eigen::Index>(ordered.size()) != d)
    throw Error(ErrorCode::DimensionMismatch, "Schur order does not match the matrix size");
  if (reference != nullptr && (reference->rows() != d || reference->cols() != d))
    throw Error(ErrorCode::DimensionMismatch, "reference basis has the wrong shape");

  const double threshold = tol.null_space * std::max(1.0, M.norm());
  CMatrix U(d, d);
  CMatrix Q = CMatrix::Identity(d, d);  // orthonormal basis of the not-yet-deflated part
  CMatrix B = M;                        // M compressed onto span(Q)
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index m = d - k;
    CVector y;
    if (m == 1) {
      y = CVector::Ones(1);
    } else {
      CMatrix shifted = B - ordered[static_cast<size_t>(k)] * CMatrix::Identity(m, m);
      if (reference != nullptr) {
        const CVector local_ref = Q.adjoint() * reference->col(k);
        y = kernel_vector(shifted, threshold, &local_ref);
      } else {
        y = kernel_vector(shifted, threshold, nullptr);
      }
    }
    U.col(k) = Q * y;
    if (m > 1) {
      const CMatrix H = complement_basis(y);
      Q = Q * H;
      B = H.adjoint() * B * H;
    }
  }

  for (Eigen::Index k = 0; k < d; ++k) {
    if (reference != nullptr) {
      const CVector r = reference->col(k);
      fix_phase(U.col(k), &r);
    } else {
      fix_phase(U.col(k), nullptr);
    }
  }

  CMatrix T = U.adjoint() * M * U;
  T.triangularView<Eigen::StrictlyLower>().setZero();
  return {std::move(U), std::move(T)};
}

SchurForm schur_factor(const CMatrix& M, const std::optional<std::vector<cd>>& order_hint, const SchurTolerances& tol) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "Schur factorization needs a square matrix");
  std::vector<cd> eig = detail::merged_eigenvalues(M, tol);
  if (order_hint) eig = detail::order_by_hint(eig, *order_hint);
  return schur_with_order(M, eig, nullptr, tol);
}

}  // namespace laurent
