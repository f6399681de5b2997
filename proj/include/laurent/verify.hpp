#pragma once

#include <string>
#include <vector>

#include "laurent/decomposition.hpp"
#include "laurent/jacobi.hpp"

namespace laurent {

/// One row of an invariant table: the measured residual against its bound.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

CheckResult make_check(std::string name, double value, double tolerance, std::string note = {});

/// Pointwise residuals of the chain at one point, maxima over the grid.
struct ChainResiduals {
  double idempotence = 0.0;       // |P^2 - P|
  double hermiticity = 0.0;       // |P - P^*|
  double invariance = 0.0;        // |P A P - A P|
  double commutation = 0.0;       // |A0 P - P A0|
  double upper_invariance = 0.0;  // |P A+ P - A+ P|
};

ChainResiduals chain_residuals(const SchurFrames& frames, const SymbolSamples& a0, const SymbolSamples& aplus,
                               const ChainPoint& nu);

/// max_j |P_nu P_mu - P_nu|.
double monotonicity_residual(const SchurFrames& frames, const ChainPoint& nu, const ChainPoint& mu);

/// count points spread evenly along the ordered curve family, BOTTOM and TOP excluded.
std::vector<ChainPoint> sample_chain_points(int d, int count);

/// Distance between multisets: the smallest, over matchings, of the largest matched gap.
double multiset_distance(const std::vector<cd>& a, const std::vector<cd>& b);

/// Symmetric Hausdorff distance between two finite point clouds.
double hausdorff_distance(const std::vector<cd>& a, const std::vector<cd>& b);

struct VerifyOptions {
  int grid = 256;
  int quad = 1024;
  int range_lo = -8;
  int range_hi = 8;
  int chain_points = 8;
};

/// Reruns the frame, chain and decomposition invariants on a coefficient input.
/// Analysis errors become failing rows rather than exceptions.
std::vector<CheckResult> verify_symbol(const BlockLaurentCoefficients& coeffs, const VerifyOptions& options = {});

/// Reduction fidelity, determinant identity, spectrum consistency and shape of E.
std::vector<CheckResult> verify_jacobi(const PeriodicJacobiSpec& spec, const VerifyOptions& options = {});

}  // namespace laurent
