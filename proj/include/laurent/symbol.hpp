#pragma once

#include <map>
#include <utility>
#include <vector>

#include "laurent/types.hpp"

namespace laurent {

/// Finitely supported block coefficients n -> A_n of a block Laurent operator.
/// Indices outside the stored support read as the zero block.
class BlockLaurentCoefficients {
 public:
  explicit BlockLaurentCoefficients(int d = 1);
  BlockLaurentCoefficients(int d, std::map<int, CMatrix> blocks);

  int dim() const { return d_; }
  bool empty() const { return blocks_.empty(); }
  const std::map<int, CMatrix>& blocks() const { return blocks_; }

  /// Stores (or overwrites) block n; throws DimensionMismatch unless d x d.
  void set(int n, CMatrix block);
  /// Block n, or zero outside the support.
  CMatrix at(int n) const;
  bool contains(int n) const { return blocks_.count(n) != 0; }

  int min_index() const;
  int max_index() const;
  /// max(|n_min|, |n_max|); zero for an empty map.
  int band() const;

  /// Drops blocks whose Frobenius norm is at most tol.
  BlockLaurentCoefficients pruned(double tol) const;

 private:
  int d_;
  std::map<int, CMatrix> blocks_;
};

/// Values of a d x d matrix function on the uniform grid z_j = exp(2 pi i j / N).
struct SymbolSamples {
  int d = 0;
  std::vector<CMatrix> values;

  int size() const { return static_cast<int>(values.size()); }
};

/// Finitely supported sequence n -> u_n in C^d.
class BlockSequence {
 public:
  explicit BlockSequence(int d = 1) : d_(d) {}

  int dim() const { return d_; }
  const std::map<int, CVector>& entries() const { return entries_; }
  void set(int n, CVector v);
  CVector at(int n) const;
  bool empty() const { return entries_.empty(); }
  int min_index() const { return entries_.begin()->first; }
  int max_index() const { return entries_.rbegin()->first; }

 private:
  int d_;
  std::map<int, CVector> entries_;
};

struct CoefficientNorms {
  double l1 = 0.0;
  double l2 = 0.0;
};

/// Grid point z_j = exp(2 pi i j / N), computed by reduced-angle lookup so that
/// z_0 = 1 and quarter points are exact.
cd grid_point(int j, int N);

/// Smallest grid admitted for exact quadrature of coefficients with this band.
int min_grid_size(const BlockLaurentCoefficients& coeffs);

CMatrix eval_symbol(const BlockLaurentCoefficients& coeffs, cd z);

/// Throws GridTooCoarse when N < 2 * band + 1.
SymbolSamples sample_symbol(const BlockLaurentCoefficients& coeffs, int N);

/// Discrete quadrature (1/N) sum_j values[j] z_j^{-n} for lo <= n <= hi.
BlockLaurentCoefficients fourier_coefficients(const SymbolSamples& samples, int lo, int hi);

/// (Au)_n = sum_k A_{n-k} u_k over the full output support.
BlockSequence apply_convolution(const BlockLaurentCoefficients& coeffs, const BlockSequence& u);

CoefficientNorms coefficient_norms(const BlockLaurentCoefficients& coeffs);

/// Coefficients of the operator product, i.e. the Cauchy product of the two sequences.
BlockLaurentCoefficients compose(const BlockLaurentCoefficients& lhs, const BlockLaurentCoefficients& rhs);

BlockLaurentCoefficients operator+(const BlockLaurentCoefficients& lhs, const BlockLaurentCoefficients& rhs);

/// Largest Frobenius norm among the stored blocks.
double max_block_norm(const BlockLaurentCoefficients& coeffs);

}  // namespace laurent
