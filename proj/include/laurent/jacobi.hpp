#pragma once

#include <map>
#include <utility>
#include <vector>

#include "laurent/symbol.hpp"

namespace laurent {

/// A d-periodic banded Jacobi matrix of order k, stored as one period strip:
/// entries (r, s) with 0 <= r < d and |r - s| <= k. Every other entry follows
/// from a_{r+d, s+d} = a_{rs}.
class PeriodicJacobiSpec {
 public:
  /// Throws BandViolation for entries outside the strip or band.
  PeriodicJacobiSpec(int d, int k, std::map<std::pair<int, int>, cd> entries);

  int period() const { return d_; }
  int order() const { return k_; }
  const std::map<std::pair<int, int>, cd>& entries() const { return entries_; }

  /// a_{rs} for arbitrary integer indices.
  cd entry(long long r, long long s) const;
  /// True when every entry with |r - s| = k is zero (the band is not sharp).
  bool outer_band_vanishes() const;

  /// m = ceil(k / d), the band of the reduced block operator.
  int block_band() const { return (k_ + d_ - 1) / d_; }

 private:
  int d_;
  int k_;
  std::map<std::pair<int, int>, cd> entries_;
};

/// Convenience constructor for order 1: row r of the period carries
/// b_{r+1} (left of the diagonal), a_{r+1} (diagonal) and c_{r+1} (right).
PeriodicJacobiSpec tridiagonal_spec(const std::vector<cd>& a, const std::vector<cd>& b, const std::vector<cd>& c);

/// (A_l)_{rc} = a_{r, c - d l} for |l| <= m.
BlockLaurentCoefficients block_reduce(const PeriodicJacobiSpec& spec);

struct TridiagonalBlocks {
  CMatrix minus1;  // J_{-1}
  CMatrix zero;    // J_0
  CMatrix plus1;   // J_1

  /// {-1: J_{-1}, 0: J_0, 1: J_1} as an md-block operator.
  BlockLaurentCoefficients as_coefficients() const;
};

/// Groups m consecutive blocks: J_delta has block (p, q) = A_{m delta + p - q}.
/// Throws BandViolation when the support is not inside [-m, m].
TridiagonalBlocks tridiagonal_regroup(const BlockLaurentCoefficients& coeffs, int m);

struct CharacteristicData {
  std::vector<cd> q;  // ascending coefficients, monic, degree d
  cd b;               // b_1 ... b_d
  cd c;               // c_1 ... c_d

  int degree() const { return static_cast<int>(q.size()) - 1; }
  cd eval(cd lambda) const;
};

/// det(A(z) - lambda I) = (-1)^d (Q(lambda) - b z - c / z) for the order-1
/// period (a_i, b_i, c_i); Q comes from two tridiagonal determinants built
/// by the three-term recurrence.
CharacteristicData char_data(const std::vector<cd>& a, const std::vector<cd>& b, const std::vector<cd>& c);

/// Extracts (a_i, b_i, c_i) from an order-1 spec; throws InvalidArgument otherwise.
CharacteristicData char_data(const PeriodicJacobiSpec& spec);

/// b z_j + c z_j^{-1} on the N-point grid.
std::vector<cd> ellipse_set(cd b, cd c, int N);

struct JacobiSpectrumPoint {
  int grid_index = 0;
  int root_index = 0;
  cd w;       // the point of the set E being inverted
  cd lambda;  // a root of Q(lambda) = w
};

struct JacobiSpectrum {
  std::vector<JacobiSpectrumPoint> points;  // ordered by grid index, then root
  std::vector<int> failed_grid_indices;     // companion solves that did not converge
};

/// Q^{-1}[E] sampled on N points of E.
JacobiSpectrum jacobi_spectrum(const CharacteristicData& cd_, int N);

enum class SpectrumClass { Ellipse, Circle, Segment, FiniteSet };

const char* to_string(SpectrumClass cls);

/// Shape of E = {b z + c / z}: ellipse, circle, segment or a single point.
SpectrumClass classify_spectrum(cd b, cd c, double rel_tol = 1e-12);

/// Pairs of roots of Q(lambda) = w_j closer than tol, counted over the grid.
/// A diagnostic for where spectral curves meet.
int count_near_coincidences(const JacobiSpectrum& spectrum, double tol);

}  // namespace laurent
