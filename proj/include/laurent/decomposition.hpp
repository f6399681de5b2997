#pragma once

#include <optional>
#include <vector>

#include "laurent/schur_chain.hpp"

namespace laurent {

/// A = A0 + A+ at coefficient level, with A0 the diagonal of A with respect
/// to the Schur chain and A+ its nilpotent strictly upper part.
struct TriangularDecomposition {
  BlockLaurentCoefficients a0;
  BlockLaurentCoefficients aplus;
  int nilpotency_index = 1;
  int range_lo = 0;
  int range_hi = 0;
  int grid = 0;
  /// max_j |A(z_j) - A0(z_j) - A+(z_j)|_F using the truncated coefficients.
  double residual = 0.0;
  /// Largest norm among the two outermost computed coefficients of A0 and A+;
  /// small when the truncation range captures the bands.
  double tail = 0.0;
  /// max_j |(A - A0) - sum mu_ls phi_s phi_l^*|_F, the two routes to A+.
  double route_discrepancy = 0.0;
};

struct DecompositionOptions {
  int grid = 256;
  int range_lo = -8;
  int range_hi = 8;
  /// Coefficient blocks at or below this Frobenius norm are dropped.
  double prune_tol = 1e-12;
  double nilpotency_tol = 1e-9;
  std::optional<std::vector<cd>> base_order;
  SchurTolerances schur;
};

/// A0(z_j) = sum_l lambda_l(z_j) Delta P_l(z_j).
SymbolSamples diagonal_symbol(const SchurFrames& frames);

/// A+(z_j) = sum_{s<l} mu_ls(z_j) phi_s phi_l^*.
SymbolSamples upper_symbol(const SchurFrames& frames);

/// max_j |A(z_j) - a0[j] - aplus[j]|_F.
double route_discrepancy(const SchurFrames& frames, const SymbolSamples& a0, const SymbolSamples& aplus);

/// Smallest l with max_j |A+(z_j)^l|_F < tol; 1 when A+ vanishes.
int nilpotency_index(const SchurFrames& frames, double tol = 1e-9);

/// Sample, track, split and transform back to coefficients.
TriangularDecomposition decompose_operator(const BlockLaurentCoefficients& coeffs, const DecompositionOptions& options = {});

/// Fourier coefficients n in [lo, hi] of the chain projection P_nu.
///
/// P_nu = P_{k-1} + chi_[0, t) Delta P_k. The smooth part P_{k-1} is
/// transformed on the frame grid. The indicator part is integrated over the
/// arc [0, t] only, with its own equispaced panel of ceil(quad * t / 2pi) + 1
/// nodes (at least six) anchored at both jump points and end-corrected
/// trapezoid weights; Delta P_k between grid points comes from its
/// trigonometric interpolant.
BlockLaurentCoefficients projection_coefficients(const SchurFrames& frames, const ChainPoint& nu, int lo, int hi,
                                                 int quad_points = 1024);

struct SpectrumPoint {
  int curve = 0;  // 1-based curve label; 0 when unlabeled
  int grid_index = 0;
  double t = 0.0;
  cd value;
};

/// Union of the tracked eigenvalue samples, curve-major.
std::vector<SpectrumPoint> spectrum(const SchurFrames& frames);

/// Label-free point cloud of eig(A(z_j)); usable when tracking is impossible.
std::vector<SpectrumPoint> unlabeled_spectrum(const SymbolSamples& samples, double cluster_tol = 1e-6);

struct SpectrumSplit {
  std::vector<SpectrumPoint> predecessors;
  std::vector<SpectrumPoint> successors;
};

/// Splits the labeled cloud into the points preceding nu and the rest.
SpectrumSplit spectrum_split(const SchurFrames& frames, const ChainPoint& nu);

}  // namespace laurent
