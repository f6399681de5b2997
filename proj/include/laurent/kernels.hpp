#pragma once

// Data-parallel inner loops of the library. Each kernel exists twice: the
// OpenMP version in laurent::kernels (used by the library) and a plain serial
// reference in laurent::kernels::serial, kept for equivalence tests and the
// benchmark. Both versions perform the same floating-point operations in the
// same order per output element, so their results are bitwise identical for
// any thread count.

#include <vector>

#include "laurent/symbol.hpp"

namespace laurent::kernels {

/// Caps the OpenMP team size; n <= 0 restores the runtime default.
void set_thread_limit(int n);
/// Applies LAURENT_SPECTRA_THREADS when set to a positive integer. Returns the
/// limit applied, or 0 when the variable is absent or invalid.
int apply_thread_limit_from_env();
int max_threads();

/// values[j] = sum_n A_n z_j^n on the N-point grid.
std::vector<CMatrix> sample_grid(const BlockLaurentCoefficients& coeffs, int N);

/// out[n - lo] = (1/N) sum_j values[j] z_j^{-n}.
std::vector<CMatrix> fourier_sum(const std::vector<CMatrix>& values, int lo, int hi);

/// Per-point eigenvalues with tight clusters replaced by their mean. Throws
/// NoConvergence naming the first failing grid index.
std::vector<std::vector<cd>> grid_eigenvalues(const std::vector<CMatrix>& values, double cluster_tol);

/// out[j] = sum_k weights[j][k] * u_k u_k^* with u_k the k-th column of bases[j].
std::vector<CMatrix> weighted_projector_sum(const std::vector<CMatrix>& bases,
                                            const std::vector<std::vector<cd>>& weights);

/// out[j] = U_j * strict_upper(T_j) * U_j^*.
std::vector<CMatrix> conjugate_strict_upper(const std::vector<CMatrix>& bases,
                                            const std::vector<CMatrix>& triangular);

/// Evaluates sum_{m=lo}^{hi} c_m e^{i m t} at each parameter t.
std::vector<CMatrix> trig_eval(const std::vector<CMatrix>& coeffs, int lo, const std::vector<double>& params);

/// Roots of poly(lambda) - shifts[j] for every shift; poly is in ascending
/// order and monic. failed[j] is set when the companion eigensolve fails.
struct RootSweep {
  std::vector<std::vector<cd>> roots;
  std::vector<char> failed;
};
RootSweep companion_root_sweep(const std::vector<cd>& poly, const std::vector<cd>& shifts);

namespace serial {

std::vector<CMatrix> sample_grid(const BlockLaurentCoefficients& coeffs, int N);
std::vector<CMatrix> fourier_sum(const std::vector<CMatrix>& values, int lo, int hi);
std::vector<std::vector<cd>> grid_eigenvalues(const std::vector<CMatrix>& values, double cluster_tol);
std::vector<CMatrix> weighted_projector_sum(const std::vector<CMatrix>& bases,
                                            const std::vector<std::vector<cd>>& weights);
std::vector<CMatrix> conjugate_strict_upper(const std::vector<CMatrix>& bases,
                                            const std::vector<CMatrix>& triangular);
std::vector<CMatrix> trig_eval(const std::vector<CMatrix>& coeffs, int lo, const std::vector<double>& params);
RootSweep companion_root_sweep(const std::vector<cd>& poly, const std::vector<cd>& shifts);

}  // namespace serial

// Single-point bodies shared by both versions.
namespace detail {
CMatrix sample_point(const BlockLaurentCoefficients& coeffs, int j, int N);
CMatrix fourier_point(const std::vector<CMatrix>& values, int n);
std::vector<cd> clustered_eigenvalues(const CMatrix& M, double cluster_tol, bool& ok);
CMatrix projector_sum_point(const CMatrix& basis, const std::vector<cd>& weights);
CMatrix strict_upper_point(const CMatrix& basis, const CMatrix& triangular);
CMatrix trig_point(const std::vector<CMatrix>& coeffs, int lo, double t);
std::vector<cd> companion_roots(const std::vector<cd>& poly, cd shift, bool& ok);
}  // namespace detail

}  // namespace laurent::kernels
