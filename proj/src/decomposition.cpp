#include "laurent/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "laurent/kernels.hpp"

namespace laurent {

namespace {

// Equispaced weights for n >= 6 nodes with spacing h: trapezoid with the
// classic end corrections (3/8, 7/6, 23/24), fourth-order on smooth integrands.
std::vector<double> end_corrected_weights(int n, double h) {
  std::vector<double> w(static_cast<size_t>(n), h);
  const double ends[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
  for (int i = 0; i < 3; ++i) {
    w[static_cast<size_t>(i)] = ends[i] * h;
    w[static_cast<size_t>(n - 1 - i)] = ends[i] * h;
  }
  return w;
}

std::vector<std::vector<cd>> frame_weights(const SchurFrames& frames, auto&& weight_of) {
  std::vector<std::vector<cd>> w(static_cast<size_t>(frames.size()), std::vector<cd>(static_cast<size_t>(frames.d)));
  for (int j = 0; j < frames.size(); ++j)
    for (int k = 0; k < frames.d; ++k) w[static_cast<size_t>(j)][static_cast<size_t>(k)] = weight_of(j, k);
  return w;
}

}  // namespace

SymbolSamples diagonal_symbol(const SchurFrames& frames) {
  auto w = frame_weights(frames, [&](int j, int k) {
    return frames.eigenvalues[static_cast<size_t>(j)][static_cast<size_t>(k)];
  });
  return {frames.d, kernels::weighted_projector_sum(frames.U, w)};
}

SymbolSamples upper_symbol(const SchurFrames& frames) {
  return {frames.d, kernels::conjugate_strict_upper(frames.U, frames.T)};
}

double route_discrepancy(const SchurFrames& frames, const SymbolSamples& a0, const SymbolSamples& aplus) {
  double worst = 0.0;
  for (int j = 0; j < frames.size(); ++j) {
    const auto jj = static_cast<size_t>(j);
    worst = std::max(worst, (frames.samples.values[jj] - a0.values[jj] - aplus.values[jj]).norm());
  }
  return worst;
}

int nilpotency_index(const SchurFrames& frames, double tol) {
  const SymbolSamples upper = upper_symbol(frames);
  for (int l = 1; l < frames.d; ++l) {
    double worst = 0.0;
    for (const auto& M : upper.values) {
      CMatrix power = M;
      for (int p = 1; p < l; ++p) power = power * M;
      worst = std::max(worst, power.norm());
    }
    if (worst < tol) return l;
  }
  return frames.d;
}

TriangularDecomposition decompose_operator(const BlockLaurentCoefficients& coeffs, const DecompositionOptions& options) {
  if (options.range_hi < options.range_lo) throw Error(ErrorCode::InvalidArgument, "empty truncation range");
  const SymbolSamples samples = sample_symbol(coeffs, options.grid);
  const SchurFrames frames = track_frames(samples, options.base_order, options.schur);
  require_single_valued(frames);

  const SymbolSamples a0_samples = diagonal_symbol(frames);
  const SymbolSamples aplus_samples = upper_symbol(frames);

  TriangularDecomposition out;
  out.grid = options.grid;
  out.range_lo = options.range_lo;
  out.range_hi = options.range_hi;
  out.route_discrepancy = route_discrepancy(frames, a0_samples, aplus_samples);
  out.nilpotency_index = nilpotency_index(frames, options.nilpotency_tol);

  const auto a0_full = fourier_coefficients(a0_samples, options.range_lo, options.range_hi);
  const auto aplus_full = fourier_coefficients(aplus_samples, options.range_lo, options.range_hi);
  for (int n : {options.range_lo, options.range_hi}) {
    out.tail = std::max({out.tail, a0_full.at(n).norm(), aplus_full.at(n).norm()});
  }
  out.a0 = a0_full.pruned(options.prune_tol);
  out.aplus = aplus_full.pruned(options.prune_tol);

  const int N = samples.size();
  for (int j = 0; j < N; ++j) {
    const cd z = grid_point(j, N);
    const CMatrix rebuilt = eval_symbol(out.a0, z) + eval_symbol(out.aplus, z);
    out.residual = std::max(out.residual, (samples.values[static_cast<size_t>(j)] - rebuilt).norm());
  }
  return out;
}

BlockLaurentCoefficients projection_coefficients(const SchurFrames& frames, const ChainPoint& nu, int lo, int hi,
                                                 int quad_points) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty coefficient range");
  require_single_valued(frames);
  const int d = frames.d;
  BlockLaurentCoefficients out(d);
  for (int n = lo; n <= hi; ++n) out.set(n, CMatrix::Zero(d, d));
  if (nu.kind == ChainPoint::Kind::Bottom) return out;
  if (nu.kind == ChainPoint::Kind::Top) {
    if (lo <= 0 && 0 <= hi) out.set(0, CMatrix::Identity(d, d));
    return out;
  }
  if (nu.k > d)
    throw Error(ErrorCode::InvalidArgument, "curve " + std::to_string(nu.k) + " does not exist for d = " + std::to_string(d));

  const int curve = nu.k - 1;
  if (curve > 0) {
    auto w = frame_weights(frames, [&](int, int k) { return cd(k < curve ? 1.0 : 0.0); });
    const SymbolSamples smooth{d, kernels::weighted_projector_sum(frames.U, w)};
    out = fourier_coefficients(smooth, lo, hi);
  }
  if (nu.t <= 0.0) return out;

  // Trigonometric interpolant of Delta P_k from the frame grid (Nyquist mode dropped).
  const int N = frames.size();
  const int half = (N - 1) / 2;
  auto wk = frame_weights(frames, [&](int, int k) { return cd(k == curve ? 1.0 : 0.0); });
  const auto jump_samples = kernels::weighted_projector_sum(frames.U, wk);
  const auto interp = kernels::fourier_sum(jump_samples, -half, half);

  const double arc = nu.t;
  const int nodes = std::max(static_cast<int>(std::ceil(quad_points * arc / kTwoPi)) + 1, 6);
  const double h = arc / static_cast<double>(nodes - 1);
  std::vector<double> params(static_cast<size_t>(nodes));
  for (int i = 0; i < nodes; ++i) params[static_cast<size_t>(i)] = h * static_cast<double>(i);
  params.back() = arc;
  const auto values = kernels::trig_eval(interp, -half, params);
  const auto weights = end_corrected_weights(nodes, h);

  for (int n = lo; n <= hi; ++n) {
    CMatrix acc = CMatrix::Zero(d, d);
    for (int i = 0; i < nodes; ++i) {
      const auto ii = static_cast<size_t>(i);
      acc += values[ii] * (weights[ii] * std::polar(1.0, -static_cast<double>(n) * params[ii]));
    }
    out.set(n, out.at(n) + acc / kTwoPi);
  }
  return out;
}

std::vector<SpectrumPoint> spectrum(const SchurFrames& frames) {
  std::vector<SpectrumPoint> out;
  out.reserve(static_cast<size_t>(frames.size() * frames.d));
  for (int k = 0; k < frames.d; ++k)
    for (int j = 0; j < frames.size(); ++j)
      out.push_back({k + 1, j, frames.parameter(j), frames.eigenvalues[static_cast<size_t>(j)][static_cast<size_t>(k)]});
  return out;
}

std::vector<SpectrumPoint> unlabeled_spectrum(const SymbolSamples& samples, double cluster_tol) {
  const auto eig = kernels::grid_eigenvalues(samples.values, cluster_tol);
  const int N = samples.size();
  std::vector<SpectrumPoint> out;
  for (int j = 0; j < N; ++j)
    for (cd v : eig[static_cast<size_t>(j)])
      out.push_back({0, j, kTwoPi * static_cast<double>(j) / static_cast<double>(N), v});
  return out;
}

SpectrumSplit spectrum_split(const SchurFrames& frames, const ChainPoint& nu) {
  require_single_valued(frames);
  SpectrumSplit split;
  for (const auto& p : spectrum(frames)) {
    if (precede(ChainPoint::on_curve(p.curve, p.t), nu))
      split.predecessors.push_back(p);
    else
      split.successors.push_back(p);
  }
  return split;
}

}  // namespace laurent
