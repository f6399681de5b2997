#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "laurent/symbol.hpp"

namespace laurent {

struct SchurTolerances {
  /// Eigenvalues closer than cluster * max(1, |M|_F) are treated as one
  /// (possibly defective) eigenvalue and replaced by the cluster mean.
  double cluster = 1e-6;
  /// Singular values below null_space * max(1, |M|_F) span the kernel used
  /// to pick a Schur vector.
  double null_space = 1e-8;
  /// Relative tolerance under which two tracked values count as equal.
  double equal_value = 1e-10;
  /// Tracking is ambiguous when the runner-up assignment is within this
  /// factor of the per-step motion.
  double ambiguity_factor = 10.0;
};

/// M = U T U^* with U unitary and T upper triangular (strictly lower part is
/// stored as exact zeros).
struct SchurForm {
  CMatrix U;
  CMatrix T;
};

/// Schur factorization with a prescribed diagonal order.
///
/// Without a hint the diagonal is ordered by descending (Re, Im); with a hint
/// the order minimizes the total distance |lambda_k - hint_k|. Throws
/// NoConvergence if the QR sweep fails.
SchurForm schur_factor(const CMatrix& M, const std::optional<std::vector<cd>>& order_hint = std::nullopt,
                       const SchurTolerances& tol = {});

/// Builds the Schur basis one column at a time: column k is a unit kernel
/// vector of the deflated matrix shifted by ordered[k]. When a reference basis
/// is given, multi-dimensional kernels are resolved toward its columns and each
/// column's phase makes <phi_new, phi_ref> real and nonnegative; otherwise the
/// largest-modulus entry of each column is made real positive.
SchurForm schur_with_order(const CMatrix& M, const std::vector<cd>& ordered, const CMatrix* reference,
                           const SchurTolerances& tol = {});

struct TrackingDiagnostics {
  double max_step = 0.0;            // largest per-label eigenvalue move between neighbours
  double min_gap_ratio = std::numeric_limits<double>::infinity();  // runner-up gap / motion
  double min_separation = std::numeric_limits<double>::infinity();  // closest distinct labels
  int tie_steps = 0;                // steps with several equally good labelings
  int resolved_by_vectors = 0;      // ties settled by Schur-vector overlap
};

/// Per-grid-point Schur data with continuous labels. Labels k are 0-based
/// here; ChainPoint uses the 1-based curve numbers.
struct SchurFrames {
  int d = 0;
  SymbolSamples samples;
  std::vector<std::vector<cd>> eigenvalues;  // eigenvalues[j][k] == T[j](k, k)
  std::vector<CMatrix> U;
  std::vector<CMatrix> T;
  TrackingDiagnostics diagnostics;

  int size() const { return static_cast<int>(U.size()); }
  /// t_j = 2 pi j / N.
  double parameter(int j) const;
  /// Delta P_k(z_j) = phi_k phi_k^*.
  CMatrix jump_projection(int j, int k) const;
};

SchurFrames track_frames(const SymbolSamples& samples, const std::optional<std::vector<cd>>& base_order = std::nullopt,
                         const SchurTolerances& tol = {});

struct Monodromy {
  std::vector<int> perm;  // label k at the end of the loop continues as label perm[k] at z = 1
  std::string cycles;
  double gap_ratio = std::numeric_limits<double>::infinity();

  bool identity() const;
};

Monodromy monodromy(const SchurFrames& frames, const SchurTolerances& tol = {});

/// Throws NontrivialMonodromy unless the labels close up.
void require_single_valued(const SchurFrames& frames);

struct CurveSet {
  std::vector<double> params;            // t_j, shared by every curve
  std::vector<std::vector<cd>> curves;   // curves[k][j] = lambda_k(z_j)
  std::vector<cd> alpha;                 // lambda_k(1)
  std::vector<cd> beta;                  // end markers; equal to alpha for closed curves
};

CurveSet spectral_curves(const SchurFrames& frames);

/// A point of the ordered curve family: curve k (1-based) at parameter t in
/// [0, 2 pi), or one of the two ends of the chain.
struct ChainPoint {
  enum class Kind { Bottom, Interior, Top };
  Kind kind = Kind::Bottom;
  int k = 1;
  double t = 0.0;

  static ChainPoint bottom() { return {Kind::Bottom, 1, 0.0}; }
  static ChainPoint top() { return {Kind::Top, 1, 0.0}; }
  /// Throws InvalidArgument unless k >= 1 and 0 <= t < 2 pi.
  static ChainPoint on_curve(int k, double t);

  friend bool operator==(const ChainPoint& a, const ChainPoint& b);
};

/// Curve number first, then parameter; BOTTOM precedes and TOP follows everything.
bool precede(const ChainPoint& nu, const ChainPoint& mu);

/// Samples of P_nu(z_j) = sum_{l<k} Delta P_l(z_j) + [t_j < nu.t] Delta P_k(z_j).
SymbolSamples chain_projection_samples(const SchurFrames& frames, const ChainPoint& nu);

}  // namespace laurent
