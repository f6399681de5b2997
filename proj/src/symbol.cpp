#include "laurent/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "laurent/kernels.hpp"

namespace laurent {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AmbiguousTracking: return "AmbiguousTracking";
    case ErrorCode::NontrivialMonodromy: return "NontrivialMonodromy";
    case ErrorCode::BandViolation: return "BandViolation";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
  }
  return "Unknown";
}

BlockLaurentCoefficients::BlockLaurentCoefficients(int d) : d_(d) {
  if (d <= 0) throw Error(ErrorCode::InvalidArgument, "block dimension must be positive");
}

BlockLaurentCoefficients::BlockLaurentCoefficients(int d, std::map<int, CMatrix> blocks)
    : BlockLaurentCoefficients(d) {
  for (auto& [n, block] : blocks) set(n, std::move(block));
}

void BlockLaurentCoefficients::set(int n, CMatrix block) {
  if (block.rows() != d_ || block.cols() != d_)
    throw Error(ErrorCode::DimensionMismatch, "coefficient " + std::to_string(n) + " is not " +
                                                  std::to_string(d_) + "x" + std::to_string(d_));
  blocks_[n] = std::move(block);
}

CMatrix BlockLaurentCoefficients::at(int n) const {
  auto it = blocks_.find(n);
  return it == blocks_.end() ? CMatrix::Zero(d_, d_) : it->second;
}

int BlockLaurentCoefficients::min_index() const { return blocks_.empty() ? 0 : blocks_.begin()->first; }
int BlockLaurentCoefficients::max_index() const { return blocks_.empty() ? 0 : blocks_.rbegin()->first; }

int BlockLaurentCoefficients::band() const {
  if (blocks_.empty()) return 0;
  return std::max(std::abs(min_index()), std::abs(max_index()));
}

BlockLaurentCoefficients BlockLaurentCoefficients::pruned(double tol) const {
  BlockLaurentCoefficients out(d_);
  for (const auto& [n, block] : blocks_)
    if (block.norm() > tol) out.set(n, block);
  return out;
}

void BlockSequence::set(int n, CVector v) {
  if (v.size() != d_) throw Error(ErrorCode::DimensionMismatch, "sequence entry has wrong length");
  entries_[n] = std::move(v);
}

CVector BlockSequence::at(int n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? CVector::Zero(d_) : it->second;
}

cd grid_point(int j, int N) {
  const int r = ((j % N) + N) % N;
  if ((4LL * r) % N == 0) {
    switch ((4LL * r) / N) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(N));
}

int min_grid_size(const BlockLaurentCoefficients& coeffs) { return 2 * coeffs.band() + 1; }

namespace {
cd int_power(cd z, int n) {
  if (n < 0) return int_power(1.0 / z, -n);
  cd result = 1.0;
  cd base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}
}  // namespace

CMatrix eval_symbol(const BlockLaurentCoefficients& coeffs, cd z) {
  CMatrix out = CMatrix::Zero(coeffs.dim(), coeffs.dim());
  for (const auto& [n, block] : coeffs.blocks()) out += block * int_power(z, n);
  return out;
}

SymbolSamples sample_symbol(const BlockLaurentCoefficients& coeffs, int N) {
  if (N < min_grid_size(coeffs) || N < 1)
    throw Error(ErrorCode::GridTooCoarse, "grid of " + std::to_string(N) + " points is below the bound " +
                                              std::to_string(min_grid_size(coeffs)) + " for band " +
                                              std::to_string(coeffs.band()));
  return SymbolSamples{coeffs.dim(), kernels::sample_grid(coeffs, N)};
}

BlockLaurentCoefficients fourier_coefficients(const SymbolSamples& samples, int lo, int hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty coefficient range");
  if (samples.values.empty()) throw Error(ErrorCode::InvalidArgument, "no samples");
  auto blocks = kernels::fourier_sum(samples.values, lo, hi);
  BlockLaurentCoefficients out(samples.d);
  for (int n = lo; n <= hi; ++n) out.set(n, std::move(blocks[static_cast<size_t>(n - lo)]));
  return out;
}

BlockSequence apply_convolution(const BlockLaurentCoefficients& coeffs, const BlockSequence& u) {
  if (coeffs.dim() != u.dim())
    throw Error(ErrorCode::DimensionMismatch, "operator block size " + std::to_string(coeffs.dim()) +
                                                  " does not match sequence block size " + std::to_string(u.dim()));
  BlockSequence out(u.dim());
  if (u.empty() || coeffs.empty()) return out;
  const int lo = u.min_index() + coeffs.min_index();
  const int hi = u.max_index() + coeffs.max_index();
  for (int n = lo; n <= hi; ++n) {
    CVector acc = CVector::Zero(u.dim());
    for (const auto& [k, v] : u.entries()) {
      auto it = coeffs.blocks().find(n - k);
      if (it != coeffs.blocks().end()) acc += it->second * v;
    }
    out.set(n, std::move(acc));
  }
  return out;
}

CoefficientNorms coefficient_norms(const BlockLaurentCoefficients& coeffs) {
  CoefficientNorms norms;
  double sq = 0.0;
  for (const auto& [n, block] : coeffs.blocks()) {
    const double f = block.norm();
    norms.l1 += f;
    sq += f * f;
  }
  norms.l2 = std::sqrt(sq);
  return norms;
}

BlockLaurentCoefficients compose(const BlockLaurentCoefficients& lhs, const BlockLaurentCoefficients& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error(ErrorCode::DimensionMismatch, "cannot compose different block sizes");
  BlockLaurentCoefficients out(lhs.dim());
  if (lhs.empty() || rhs.empty()) return out;
  for (int n = lhs.min_index() + rhs.min_index(); n <= lhs.max_index() + rhs.max_index(); ++n) {
    CMatrix acc = CMatrix::Zero(lhs.dim(), lhs.dim());
    for (const auto& [k, block] : lhs.blocks())
      if (rhs.contains(n - k)) acc += block * rhs.blocks().at(n - k);
    out.set(n, std::move(acc));
  }
  return out;
}

BlockLaurentCoefficients operator+(const BlockLaurentCoefficients& lhs, const BlockLaurentCoefficients& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error(ErrorCode::DimensionMismatch, "cannot add different block sizes");
  BlockLaurentCoefficients out = lhs;
  for (const auto& [n, block] : rhs.blocks()) out.set(n, out.at(n) + block);
  return out;
}

double max_block_norm(const BlockLaurentCoefficients& coeffs) {
  double m = 0.0;
  for (const auto& [n, block] : coeffs.blocks()) m = std::max(m, block.norm());
  return m;
}

}  // namespace laurent
