#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "laurent/kernels.hpp"

namespace laurent::kernels {

namespace detail {

CMatrix sample_point(const BlockLaurentCoefficients& coeffs, int j, int N) {
  CMatrix out = CMatrix::Zero(coeffs.dim(), coeffs.dim());
  for (const auto& [n, block] : coeffs.blocks()) {
    const long long idx = static_cast<long long>(n) * j;
    out += block * grid_point(static_cast<int>(((idx % N) + N) % N), N);
  }
  return out;
}

CMatrix fourier_point(const std::vector<CMatrix>& values, int n) {
  const int N = static_cast<int>(values.size());
  CMatrix acc = CMatrix::Zero(values.front().rows(), values.front().cols());
  for (int j = 0; j < N; ++j) {
    const long long idx = -static_cast<long long>(n) * j;
    acc += values[j] * grid_point(static_cast<int>(((idx % N) + N) % N), N);
  }
  return acc / static_cast<double>(N);
}

std::vector<cd> clustered_eigenvalues(const CMatrix& M, double cluster_tol, bool& ok) {
  const Eigen::Index d = M.rows();
  Eigen::ComplexSchur<CMatrix> qr(M, /*computeU=*/false);
  ok = qr.info() == Eigen::Success;
  std::vector<cd> eig(static_cast<size_t>(d));
  if (!ok) return eig;
  for (Eigen::Index k = 0; k < d; ++k) eig[static_cast<size_t>(k)] = qr.matrixT()(k, k);

  // Single-linkage clusters. The mean of a cluster is well conditioned even
  // when its members individually carry O(sqrt(eps)) splitting from a
  // defective eigenvalue.
  const double tol = cluster_tol * std::max(1.0, M.norm());
  std::vector<int> label(eig.size());
  std::iota(label.begin(), label.end(), 0);
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t a = 0; a < eig.size(); ++a)
      for (size_t b = a + 1; b < eig.size(); ++b)
        if (label[a] != label[b] && std::abs(eig[a] - eig[b]) <= tol) {
          const int from = std::max(label[a], label[b]);
          const int to = std::min(label[a], label[b]);
          for (auto& l : label)
            if (l == from) l = to;
          merged = true;
        }
  }
  std::vector<cd> out(eig.size());
  for (size_t a = 0; a < eig.size(); ++a) {
    cd sum = 0.0;
    int count = 0;
    for (size_t b = 0; b < eig.size(); ++b)
      if (label[b] == label[a]) {
        sum += eig[b];
        ++count;
      }
    out[a] = sum / static_cast<double>(count);
  }
  std::sort(out.begin(), out.end(), [](cd x, cd y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return out;
}

CMatrix projector_sum_point(const CMatrix& basis, const std::vector<cd>& weights) {
  const Eigen::Index d = basis.rows();
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    const cd w = weights[static_cast<size_t>(k)];
    if (w == cd(0.0)) continue;
    out += w * (basis.col(k) * basis.col(k).adjoint());
  }
  return out;
}

CMatrix strict_upper_point(const CMatrix& basis, const CMatrix& triangular) {
  CMatrix upper = triangular.triangularView<Eigen::StrictlyUpper>();
  return basis * upper * basis.adjoint();
}

CMatrix trig_point(const std::vector<CMatrix>& coeffs, int lo, double t) {
  CMatrix acc = CMatrix::Zero(coeffs.front().rows(), coeffs.front().cols());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const double m = static_cast<double>(lo + static_cast<int>(i));
    acc += coeffs[i] * std::polar(1.0, m * t);
  }
  return acc;
}

std::vector<cd> companion_roots(const std::vector<cd>& poly, cd shift, bool& ok) {
  const Eigen::Index deg = static_cast<Eigen::Index>(poly.size()) - 1;
  ok = true;
  if (deg == 1) return {-(poly[0] - shift)};
  CMatrix C = CMatrix::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) {
    const cd c = i == 0 ? poly[0] - shift : poly[static_cast<size_t>(i)];
    C(i, deg - 1) = -c;
  }
  Eigen::ComplexEigenSolver<CMatrix> solver(C, /*computeEigenvectors=*/false);
  std::vector<cd> roots(static_cast<size_t>(deg));
  if (solver.info() != Eigen::Success) {
    ok = false;
    return roots;
  }
  for (Eigen::Index i = 0; i < deg; ++i) roots[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

}  // namespace detail

namespace serial {

std::vector<CMatrix> sample_grid(const BlockLaurentCoefficients& coeffs, int N) {
  std::vector<CMatrix> out(static_cast<size_t>(N));
  for (int j = 0; j < N; ++j) out[static_cast<size_t>(j)] = detail::sample_point(coeffs, j, N);
  return out;
}

std::vector<CMatrix> fourier_sum(const std::vector<CMatrix>& values, int lo, int hi) {
  std::vector<CMatrix> out(static_cast<size_t>(hi - lo + 1));
  for (int n = lo; n <= hi; ++n) out[static_cast<size_t>(n - lo)] = detail::fourier_point(values, n);
  return out;
}

std::vector<std::vector<cd>> grid_eigenvalues(const std::vector<CMatrix>& values, double cluster_tol) {
  std::vector<std::vector<cd>> out(values.size());
  for (size_t j = 0; j < values.size(); ++j) {
    bool ok = true;
    out[j] = detail::clustered_eigenvalues(values[j], cluster_tol, ok);
    if (!ok)
      throw Error(ErrorCode::NoConvergence, "QR iteration failed at grid index " + std::to_string(j));
  }
  return out;
}

std::vector<CMatrix> weighted_projector_sum(const std::vector<CMatrix>& bases,
                                            const std::vector<std::vector<cd>>& weights) {
  std::vector<CMatrix> out(bases.size());
  for (size_t j = 0; j < bases.size(); ++j) out[j] = detail::projector_sum_point(bases[j], weights[j]);
  return out;
}

std::vector<CMatrix> conjugate_strict_upper(const std::vector<CMatrix>& bases,
                                            const std::vector<CMatrix>& triangular) {
  std::vector<CMatrix> out(bases.size());
  for (size_t j = 0; j < bases.size(); ++j) out[j] = detail::strict_upper_point(bases[j], triangular[j]);
  return out;
}

std::vector<CMatrix> trig_eval(const std::vector<CMatrix>& coeffs, int lo, const std::vector<double>& params) {
  std::vector<CMatrix> out(params.size());
  for (size_t i = 0; i < params.size(); ++i) out[i] = detail::trig_point(coeffs, lo, params[i]);
  return out;
}

RootSweep companion_root_sweep(const std::vector<cd>& poly, const std::vector<cd>& shifts) {
  RootSweep sweep;
  sweep.roots.resize(shifts.size());
  sweep.failed.assign(shifts.size(), 0);
  for (size_t j = 0; j < shifts.size(); ++j) {
    bool ok = true;
    sweep.roots[j] = detail::companion_roots(poly, shifts[j], ok);
    sweep.failed[j] = ok ? 0 : 1;
  }
  return sweep;
}

}  // namespace serial

}  // namespace laurent::kernels
