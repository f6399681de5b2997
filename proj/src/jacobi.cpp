#include "laurent/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "laurent/kernels.hpp"

namespace laurent {

namespace {

using Poly = std::vector<cd>;  // ascending coefficients

Poly times_shifted_linear(const Poly& p, cd a) {
  // p(lambda) * (a - lambda)
  Poly out(p.size() + 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i) {
    out[i] += a * p[i];
    out[i + 1] -= p[i];
  }
  return out;
}

Poly axpy(const Poly& x, cd alpha, const Poly& y) {
  // x + alpha * y
  Poly out(std::max(x.size(), y.size()), 0.0);
  for (size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (size_t i = 0; i < y.size(); ++i) out[i] += alpha * y[i];
  return out;
}

// det of the tridiagonal matrix with diagonal a_i - lambda, superdiagonal c_i
// and subdiagonal b_{i+1}, for i in [first, last] (0-based, inclusive).
Poly tridiagonal_det(const std::vector<cd>& a, const std::vector<cd>& b, const std::vector<cd>& c, int first, int last) {
  Poly prev2{1.0};
  if (last < first) return prev2;
  Poly prev1 = times_shifted_linear(prev2, a[static_cast<size_t>(first)]);
  for (int i = first + 1; i <= last; ++i) {
    const auto ii = static_cast<size_t>(i);
    Poly next = axpy(times_shifted_linear(prev1, a[ii]), -c[ii - 1] * b[ii], prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

long long floor_mod(long long x, long long m) { return ((x % m) + m) % m; }

}  // namespace

PeriodicJacobiSpec::PeriodicJacobiSpec(int d, int k, std::map<std::pair<int, int>, cd> entries)
    : d_(d), k_(k), entries_(std::move(entries)) {
  if (d_ <= 0) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  if (k_ <= 0) throw Error(ErrorCode::InvalidArgument, "band order must be positive");
  for (const auto& [rs, value] : entries_) {
    const auto [r, s] = rs;
    if (r < 0 || r >= d_)
      throw Error(ErrorCode::BandViolation, "row " + std::to_string(r) + " lies outside the period strip 0.." +
                                                std::to_string(d_ - 1));
    if (std::abs(r - s) > k_)
      throw Error(ErrorCode::BandViolation, "entry (" + std::to_string(r) + ", " + std::to_string(s) +
                                                ") lies outside the band of order " + std::to_string(k_));
  }
}

cd PeriodicJacobiSpec::entry(long long r, long long s) const {
  const long long r0 = floor_mod(r, d_);
  const long long s0 = s - (r - r0);
  if (std::llabs(r0 - s0) > k_) return 0.0;
  auto it = entries_.find({static_cast<int>(r0), static_cast<int>(s0)});
  return it == entries_.end() ? cd(0.0) : it->second;
}

bool PeriodicJacobiSpec::outer_band_vanishes() const {
  for (const auto& [rs, value] : entries_)
    if (std::abs(rs.first - rs.second) == k_ && value != cd(0.0)) return false;
  return true;
}

PeriodicJacobiSpec tridiagonal_spec(const std::vector<cd>& a, const std::vector<cd>& b, const std::vector<cd>& c) {
  const int d = static_cast<int>(a.size());
  if (d == 0 || b.size() != a.size() || c.size() != a.size())
    throw Error(ErrorCode::InvalidArgument, "tridiagonal period needs equally long a, b, c");
  std::map<std::pair<int, int>, cd> entries;
  for (int r = 0; r < d; ++r) {
    const auto rr = static_cast<size_t>(r);
    entries[{r, r}] = a[rr];
    entries[{r, r - 1}] = b[rr];
    entries[{r, r + 1}] = c[rr];
  }
  return PeriodicJacobiSpec(d, 1, std::move(entries));
}

BlockLaurentCoefficients block_reduce(const PeriodicJacobiSpec& spec) {
  const int d = spec.period();
  const int m = spec.block_band();
  BlockLaurentCoefficients out(d);
  for (int l = -m; l <= m; ++l) {
    CMatrix block(d, d);
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col) block(r, col) = spec.entry(r, static_cast<long long>(col) - static_cast<long long>(d) * l);
    out.set(l, std::move(block));
  }
  return out;
}

BlockLaurentCoefficients TridiagonalBlocks::as_coefficients() const {
  BlockLaurentCoefficients out(static_cast<int>(zero.rows()));
  out.set(-1, minus1);
  out.set(0, zero);
  out.set(1, plus1);
  return out;
}

TridiagonalBlocks tridiagonal_regroup(const BlockLaurentCoefficients& coeffs, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "regrouping factor must be positive");
  if (!coeffs.empty() && (coeffs.min_index() < -m || coeffs.max_index() > m))
    throw Error(ErrorCode::BandViolation, "coefficient support exceeds the band " + std::to_string(m));
  const int d = coeffs.dim();
  auto build = [&](int delta) {
    CMatrix J = CMatrix::Zero(m * d, m * d);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) J.block(p * d, q * d, d, d) = coeffs.at(m * delta + p - q);
    return J;
  };
  return {build(-1), build(0), build(1)};
}

cd CharacteristicData::eval(cd lambda) const {
  cd acc = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

CharacteristicData char_data(const std::vector<cd>& a, const std::vector<cd>& b, const std::vector<cd>& c) {
  const int d = static_cast<int>(a.size());
  if (d == 0 || b.size() != a.size() || c.size() != a.size())
    throw Error(ErrorCode::InvalidArgument, "characteristic data needs equally long a, b, c");
  CharacteristicData out;
  out.b = 1.0;
  out.c = 1.0;
  for (int i = 0; i < d; ++i) {
    out.b *= b[static_cast<size_t>(i)];
    out.c *= c[static_cast<size_t>(i)];
  }
  if (d == 1) {
    out.q = {-a[0], 1.0};
    return out;
  }
  const double sign = d % 2 == 0 ? 1.0 : -1.0;
  const Poly full = tridiagonal_det(a, b, c, 0, d - 1);
  const Poly inner = tridiagonal_det(a, b, c, 1, d - 2);
  Poly q(full.size(), 0.0);
  for (size_t i = 0; i < full.size(); ++i) q[i] = sign * full[i];
  q = axpy(q, -sign * b[0] * c[static_cast<size_t>(d - 1)], inner);
  out.q = std::move(q);
  return out;
}

CharacteristicData char_data(const PeriodicJacobiSpec& spec) {
  if (spec.order() != 1) throw Error(ErrorCode::InvalidArgument, "characteristic data is defined for order-1 specs");
  const int d = spec.period();
  std::vector<cd> a(static_cast<size_t>(d)), b(a.size()), c(a.size());
  for (int r = 0; r < d; ++r) {
    a[static_cast<size_t>(r)] = spec.entry(r, r);
    b[static_cast<size_t>(r)] = spec.entry(r, r - 1);
    c[static_cast<size_t>(r)] = spec.entry(r, r + 1);
  }
  return char_data(a, b, c);
}

std::vector<cd> ellipse_set(cd b, cd c, int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "ellipse sampling needs N >= 1");
  std::vector<cd> out(static_cast<size_t>(N));
  for (int j = 0; j < N; ++j) {
    const cd z = grid_point(j, N);
    out[static_cast<size_t>(j)] = b * z + c * std::conj(z);
  }
  return out;
}

JacobiSpectrum jacobi_spectrum(const CharacteristicData& data, int N) {
  if (data.degree() < 1) throw Error(ErrorCode::InvalidArgument, "Q must have positive degree");
  const std::vector<cd> shifts = ellipse_set(data.b, data.c, N);
  const kernels::RootSweep sweep = kernels::companion_root_sweep(data.q, shifts);
  JacobiSpectrum out;
  for (int j = 0; j < N; ++j) {
    const auto jj = static_cast<size_t>(j);
    if (sweep.failed[jj]) {
      out.failed_grid_indices.push_back(j);
      continue;
    }
    for (size_t r = 0; r < sweep.roots[jj].size(); ++r)
      out.points.push_back({j, static_cast<int>(r), shifts[jj], sweep.roots[jj][r]});
  }
  return out;
}

const char* to_string(SpectrumClass cls) {
  switch (cls) {
    case SpectrumClass::Ellipse: return "Ellipse";
    case SpectrumClass::Circle: return "Circle";
    case SpectrumClass::Segment: return "Segment";
    case SpectrumClass::FiniteSet: return "FiniteSet";
  }
  return "Unknown";
}

SpectrumClass classify_spectrum(cd b, cd c, double rel_tol) {
  const double scale = std::max(std::abs(b), std::abs(c));
  if (scale == 0.0) return SpectrumClass::FiniteSet;
  const bool b_zero = std::abs(b) <= rel_tol * scale;
  const bool c_zero = std::abs(c) <= rel_tol * scale;
  if (b_zero || c_zero) return SpectrumClass::Circle;
  if (std::abs(std::abs(b) - std::abs(c)) <= rel_tol * scale) return SpectrumClass::Segment;
  return SpectrumClass::Ellipse;
}

int count_near_coincidences(const JacobiSpectrum& spectrum, double tol) {
  int count = 0;
  const auto& pts = spectrum.points;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t k = i + 1; k < pts.size() && pts[k].grid_index == pts[i].grid_index; ++k)
      if (std::abs(pts[i].lambda - pts[k].lambda) <= tol) ++count;
  return count;
}

}  // namespace laurent
