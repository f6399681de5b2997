#pragma once

// Reference computations used only by the tests. They deliberately avoid the
// library's code paths: Horner evaluation, dense finite sections, polynomial
// roots by Durand-Kerner iteration and brute-force geometry.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "laurent/jacobi.hpp"
#include "laurent/symbol.hpp"

namespace oracle {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline const double kPi = 3.14159265358979323846;

inline std::string fixture(const std::string& name) { return std::string(LAURENT_FIXTURE_DIR) + "/" + name; }

inline CMatrix m2(cd a, cd b, cd c, cd d) {
  CMatrix M(2, 2);
  M << a, b, c, d;
  return M;
}

/// A(z) = z^lo * (A_lo + z (A_lo+1 + z (...))) by Horner's scheme.
inline CMatrix horner(const laurent::BlockLaurentCoefficients& coeffs, cd z) {
  const int d = coeffs.dim();
  if (coeffs.empty()) return CMatrix::Zero(d, d);
  const int lo = coeffs.min_index(), hi = coeffs.max_index();
  CMatrix acc = CMatrix::Zero(d, d);
  for (int n = hi; n >= lo; --n) acc = acc * z + coeffs.at(n);
  cd scale = 1.0;
  for (int p = 0; p < std::abs(lo); ++p) scale *= lo < 0 ? 1.0 / z : z;
  return acc * scale;
}

/// Dense window of the bi-infinite block matrix: rows and columns cover block
/// indices [first, first + count).
inline CMatrix finite_section(const laurent::BlockLaurentCoefficients& coeffs, int first, int count) {
  const int d = coeffs.dim();
  CMatrix M = CMatrix::Zero(d * count, d * count);
  for (int r = 0; r < count; ++r)
    for (int c = 0; c < count; ++c) M.block(d * r, d * c, d, d) = coeffs.at((first + r) - (first + c));
  return M;
}

/// Characteristic polynomial det(lambda I - M) by Faddeev-LeVerrier; ascending, monic.
inline std::vector<cd> char_poly(const CMatrix& M) {
  const auto n = M.rows();
  std::vector<cd> c(static_cast<size_t>(n + 1));
  c[static_cast<size_t>(n)] = 1.0;
  CMatrix Mk = CMatrix::Zero(n, n);
  const CMatrix I = CMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Mk = M * (Mk + c[static_cast<size_t>(n - k + 1)] * I);
    c[static_cast<size_t>(n - k)] = -Mk.trace() / static_cast<double>(k);
  }
  return c;
}

inline cd poly_eval(const std::vector<cd>& p, cd x) {
  cd acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Roots of a monic ascending polynomial by Durand-Kerner (Weierstrass) iteration.
inline std::vector<cd> roots(const std::vector<cd>& p) {
  const int n = static_cast<int>(p.size()) - 1;
  std::vector<cd> z(static_cast<size_t>(n));
  double radius = 1.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::pow(std::abs(p[static_cast<size_t>(k)]), 1.0 / (n - k)));
  for (int k = 0; k < n; ++k) z[static_cast<size_t>(k)] = radius * std::pow(cd(0.4, 0.9), k);
  for (int iter = 0; iter < 2000; ++iter) {
    double move = 0.0;
    for (int k = 0; k < n; ++k) {
      cd denom = 1.0;
      for (int m = 0; m < n; ++m)
        if (m != k) denom *= z[static_cast<size_t>(k)] - z[static_cast<size_t>(m)];
      const cd step = poly_eval(p, z[static_cast<size_t>(k)]) / denom;
      z[static_cast<size_t>(k)] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-15 * radius) break;
  }
  return z;
}

/// Largest gap of the best matching between two small multisets, by brute force.
inline double multiset_gap(std::vector<cd> a, const std::vector<cd>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<int> perm(a.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[static_cast<size_t>(perm[i])]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double hausdorff(const std::vector<cd>& a, const std::vector<cd>& b) {
  auto directed = [](const std::vector<cd>& from, const std::vector<cd>& to) {
    double worst = 0.0;
    for (cd p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (cd q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

inline cd det2(const CMatrix& M) { return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0); }

inline cd det3(const CMatrix& M) {
  return M(0, 0) * (M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1)) - M(0, 1) * (M(1, 0) * M(2, 2) - M(1, 2) * M(2, 0)) +
         M(0, 2) * (M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0));
}

inline double max_entry_gap(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Largest entrywise gap over the union of both supports.
inline double coeff_gap(const laurent::BlockLaurentCoefficients& a, const laurent::BlockLaurentCoefficients& b) {
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto* c : {&a, &b})
    if (!c->empty()) {
      lo = any ? std::min(lo, c->min_index()) : c->min_index();
      hi = any ? std::max(hi, c->max_index()) : c->max_index();
      any = true;
    }
  double worst = 0.0;
  for (int n = lo; any && n <= hi; ++n) worst = std::max(worst, max_entry_gap(a.at(n), b.at(n)));
  return worst;
}

inline CMatrix random_matrix(std::mt19937_64& rng, int d, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix M(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) M(r, c) = cd(g(rng), g(rng));
  return M;
}

inline laurent::BlockLaurentCoefficients random_symbol(std::mt19937_64& rng, int d, int band, double scale = 1.0) {
  laurent::BlockLaurentCoefficients c(d);
  for (int n = -band; n <= band; ++n) c.set(n, random_matrix(rng, d, scale));
  return c;
}

/// d-periodic order-1 tridiagonal data with random complex entries.
struct Tridiagonal {
  std::vector<cd> a, b, c;
};

inline Tridiagonal random_tridiagonal(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Tridiagonal t;
  for (int i = 0; i < d; ++i) {
    t.a.emplace_back(g(rng), g(rng));
    t.b.emplace_back(g(rng), g(rng));
    t.c.emplace_back(g(rng), g(rng));
  }
  return t;
}

/// Random PeriodicJacobiSpec with every in-band strip entry populated.
inline laurent::PeriodicJacobiSpec random_jacobi(std::mt19937_64& rng, int d, int k) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::map<std::pair<int, int>, cd> entries;
  for (int r = 0; r < d; ++r)
    for (int s = r - k; s <= r + k; ++s) entries[{r, s}] = cd(g(rng), g(rng));
  return laurent::PeriodicJacobiSpec(d, k, entries);
}

/// Entry a_{rs} of the scalar banded matrix, straight from the strip.
inline cd jacobi_entry(const laurent::PeriodicJacobiSpec& spec, long long r, long long s) {
  const long long d = spec.period();
  const long long shift = (r >= 0 ? r / d : -((-r + d - 1) / d)) * d;
  const auto& e = spec.entries();
  auto it = e.find({static_cast<int>(r - shift), static_cast<int>(s - shift)});
  return it == e.end() ? cd(0.0) : it->second;
}

}  // namespace oracle
