#include <cstdlib>
#include <string>

#include <omp.h>

#include "laurent/kernels.hpp"

namespace laurent::kernels {

namespace {
int default_threads() {
  static const int n = omp_get_max_threads();
  return n;
}
}  // namespace

void set_thread_limit(int n) { omp_set_num_threads(n > 0 ? n : default_threads()); }

int apply_thread_limit_from_env() {
  const char* raw = std::getenv("LAURENT_SPECTRA_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  const long n = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || n <= 0) return 0;
  set_thread_limit(static_cast<int>(n));
  return static_cast<int>(n);
}

int max_threads() { return omp_get_max_threads(); }

std::vector<CMatrix> sample_grid(const BlockLaurentCoefficients& coeffs, int N) {
  std::vector<CMatrix> out(static_cast<size_t>(N));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < N; ++j) out[static_cast<size_t>(j)] = detail::sample_point(coeffs, j, N);
  return out;
}

std::vector<CMatrix> fourier_sum(const std::vector<CMatrix>& values, int lo, int hi) {
  const int count = hi - lo + 1;
  std::vector<CMatrix> out(static_cast<size_t>(count));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = detail::fourier_point(values, lo + i);
  return out;
}

std::vector<std::vector<cd>> grid_eigenvalues(const std::vector<CMatrix>& values, double cluster_tol) {
  const int N = static_cast<int>(values.size());
  std::vector<std::vector<cd>> out(values.size());
  std::vector<char> ok(values.size(), 1);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < N; ++j) {
    bool good = true;
    out[static_cast<size_t>(j)] = detail::clustered_eigenvalues(values[static_cast<size_t>(j)], cluster_tol, good);
    ok[static_cast<size_t>(j)] = good ? 1 : 0;
  }
  for (int j = 0; j < N; ++j)
    if (!ok[static_cast<size_t>(j)])
      throw Error(ErrorCode::NoConvergence, "QR iteration failed at grid index " + std::to_string(j));
  return out;
}

std::vector<CMatrix> weighted_projector_sum(const std::vector<CMatrix>& bases,
                                            const std::vector<std::vector<cd>>& weights) {
  const int N = static_cast<int>(bases.size());
  std::vector<CMatrix> out(bases.size());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < N; ++j)
    out[static_cast<size_t>(j)] =
        detail::projector_sum_point(bases[static_cast<size_t>(j)], weights[static_cast<size_t>(j)]);
  return out;
}

std::vector<CMatrix> conjugate_strict_upper(const std::vector<CMatrix>& bases,
                                            const std::vector<CMatrix>& triangular) {
  const int N = static_cast<int>(bases.size());
  std::vector<CMatrix> out(bases.size());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < N; ++j)
    out[static_cast<size_t>(j)] =
        detail::strict_upper_point(bases[static_cast<size_t>(j)], triangular[static_cast<size_t>(j)]);
  return out;
}

std::vector<CMatrix> trig_eval(const std::vector<CMatrix>& coeffs, int lo, const std::vector<double>& params) {
  const int count = static_cast<int>(params.size());
  std::vector<CMatrix> out(params.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i)
    out[static_cast<size_t>(i)] = detail::trig_point(coeffs, lo, params[static_cast<size_t>(i)]);
  return out;
}

RootSweep companion_root_sweep(const std::vector<cd>& poly, const std::vector<cd>& shifts) {
  const int count = static_cast<int>(shifts.size());
  RootSweep sweep;
  sweep.roots.resize(shifts.size());
  sweep.failed.assign(shifts.size(), 0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < count; ++j) {
    bool ok = true;
    sweep.roots[static_cast<size_t>(j)] = detail::companion_roots(poly, shifts[static_cast<size_t>(j)], ok);
    sweep.failed[static_cast<size_t>(j)] = ok ? 0 : 1;
  }
  return sweep;
}

}  // namespace laurent::kernels
