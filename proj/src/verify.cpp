#include "laurent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "laurent/assignment.hpp"

namespace laurent {

namespace {

// Eigenvalues by the nonsymmetric eigensolver (not the Schur path used for
// tracking), with tight clusters averaged so defective blocks compare stably.
std::vector<cd> reference_eigenvalues(const CMatrix& M, double cluster_tol) {
  Eigen::ComplexEigenSolver<CMatrix> solver(M, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "reference eigensolver failed");
  std::vector<cd> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  const double tol = cluster_tol * std::max(1.0, M.norm());
  const size_t n = ev.size();
  std::vector<size_t> group(n);
  for (size_t i = 0; i < n; ++i) group[i] = i;
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        if (group[i] != group[k] && std::abs(ev[i] - ev[k]) <= tol) {
          const size_t from = std::max(group[i], group[k]), to = std::min(group[i], group[k]);
          for (auto& g : group)
            if (g == from) g = to;
          merged = true;
        }
  }
  std::vector<cd> out(n);
  for (size_t i = 0; i < n; ++i) {
    cd sum = 0.0;
    int count = 0;
    for (size_t k = 0; k < n; ++k)
      if (group[k] == group[i]) {
        sum += ev[k];
        ++count;
      }
    out[i] = sum / static_cast<double>(count);
  }
  return out;
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double max_over_grid(int N, auto&& residual_at) {
  double worst = 0.0;
  for (int j = 0; j < N; ++j) worst = std::max(worst, residual_at(j));
  return worst;
}

}  // namespace

CheckResult make_check(std::string name, double value, double tolerance, std::string note) {
  return {std::move(name), value, tolerance, value <= tolerance, std::move(note)};
}

ChainResiduals chain_residuals(const SchurFrames& frames, const SymbolSamples& a0, const SymbolSamples& aplus,
                               const ChainPoint& nu) {
  const SymbolSamples P = chain_projection_samples(frames, nu);
  ChainResiduals r;
  for (int j = 0; j < frames.size(); ++j) {
    const auto jj = static_cast<size_t>(j);
    const CMatrix& p = P.values[jj];
    const CMatrix& A = frames.samples.values[jj];
    r.idempotence = std::max(r.idempotence, (p * p - p).norm());
    r.hermiticity = std::max(r.hermiticity, (p - p.adjoint()).norm());
    r.invariance = std::max(r.invariance, (p * A * p - A * p).norm());
    r.commutation = std::max(r.commutation, (a0.values[jj] * p - p * a0.values[jj]).norm());
    r.upper_invariance = std::max(r.upper_invariance, (p * aplus.values[jj] * p - aplus.values[jj] * p).norm());
  }
  return r;
}

double monotonicity_residual(const SchurFrames& frames, const ChainPoint& nu, const ChainPoint& mu) {
  const SymbolSamples Pn = chain_projection_samples(frames, nu);
  const SymbolSamples Pm = chain_projection_samples(frames, mu);
  return max_over_grid(frames.size(), [&](int j) {
    const auto jj = static_cast<size_t>(j);
    return (Pn.values[jj] * Pm.values[jj] - Pn.values[jj]).norm();
  });
}

std::vector<ChainPoint> sample_chain_points(int d, int count) {
  std::vector<ChainPoint> out;
  for (int q = 0; q < count; ++q) {
    const double s = static_cast<double>(q) * d / static_cast<double>(count);
    const int k = static_cast<int>(std::floor(s));
    out.push_back(ChainPoint::on_curve(k + 1, kTwoPi * (s - k)));
  }
  return out;
}

double multiset_distance(const std::vector<cd>& a, const std::vector<cd>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const auto n = static_cast<Eigen::Index>(a.size());
  if (n == 0) return 0.0;
  // Bottleneck matching: a squared-cost assignment keeps the largest gap small
  // for the nearly coincident multisets compared here.
  CostMatrix cost(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) cost(r, c) = std::norm(a[static_cast<size_t>(r)] - b[static_cast<size_t>(c)]);
  const auto perm = hungarian_assignment(cost);
  double worst = 0.0;
  for (size_t r = 0; r < a.size(); ++r) worst = std::max(worst, std::abs(a[r] - b[static_cast<size_t>(perm[r])]));
  return worst;
}

double hausdorff_distance(const std::vector<cd>& a, const std::vector<cd>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
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

std::vector<CheckResult> verify_symbol(const BlockLaurentCoefficients& coeffs, const VerifyOptions& options) {
  std::vector<CheckResult> rows;
  auto fail = [&](const std::string& name, const Error& e) {
    rows.push_back({name, std::numeric_limits<double>::infinity(), 0.0, false,
                    std::string(to_string(e.code())) + ": " + e.what()});
  };

  SymbolSamples samples;
  try {
    samples = sample_symbol(coeffs, options.grid);
  } catch (const Error& e) {
    fail("sampling", e);
    return rows;
  }
  const int N = samples.size();
  const int d = coeffs.dim();
  const double scale = std::max(1.0, max_block_norm(coeffs));

  const int band = coeffs.band();
  const auto round_trip = fourier_coefficients(samples, -band, band);
  double rt = 0.0;
  for (int n = -band; n <= band; ++n) rt = std::max(rt, (round_trip.at(n) - coeffs.at(n)).cwiseAbs().maxCoeff());
  rows.push_back(make_check("fourier round trip", rt, 1e-13 * scale));

  SchurFrames frames;
  try {
    frames = track_frames(samples);
  } catch (const Error& e) {
    fail("tracking", e);
    return rows;
  }
  const CMatrix I = CMatrix::Identity(d, d);

  rows.push_back(make_check("unitarity |U*U - I|", max_over_grid(N, [&](int j) {
                              const CMatrix& U = frames.U[static_cast<size_t>(j)];
                              return (U.adjoint() * U - I).norm();
                            }), 1e-10));
  rows.push_back(make_check("schur residual |A - U T U*|", max_over_grid(N, [&](int j) {
                              const auto jj = static_cast<size_t>(j);
                              const CMatrix& U = frames.U[jj];
                              return (samples.values[jj] - U * frames.T[jj] * U.adjoint()).norm();
                            }), 1e-9));
  rows.push_back(make_check("T strictly lower part", max_over_grid(N, [&](int j) {
                              const CMatrix& T = frames.T[static_cast<size_t>(j)];
                              double worst = 0.0;
                              for (int r = 1; r < d; ++r)
                                for (int c = 0; c < r; ++c) worst = std::max(worst, std::abs(T(r, c)));
                              return worst;
                            }), 0.0));
  rows.push_back(make_check("jump projections idempotent and Hermitian", max_over_grid(N, [&](int j) {
                              double worst = 0.0;
                              for (int k = 0; k < d; ++k) {
                                const CMatrix P = frames.jump_projection(j, k);
                                worst = std::max({worst, (P * P - P).norm(), (P - P.adjoint()).norm()});
                              }
                              return worst;
                            }), 1e-10));
  rows.push_back(make_check("resolution of identity |sum dP - I|", max_over_grid(N, [&](int j) {
                              CMatrix S = CMatrix::Zero(d, d);
                              for (int k = 0; k < d; ++k) S += frames.jump_projection(j, k);
                              return (S - I).norm();
                            }), 1e-10));
  rows.push_back(make_check("eigenvalues vs reference solver", max_over_grid(N, [&](int j) {
                              const auto jj = static_cast<size_t>(j);
                              return multiset_distance(frames.eigenvalues[jj],
                                                       reference_eigenvalues(samples.values[jj], 1e-6));
                            }), 1e-8));
  rows.push_back(make_check("max eigenvalue step", frames.diagnostics.max_step,
                            std::numeric_limits<double>::infinity(),
                            "tie steps " + std::to_string(frames.diagnostics.tie_steps)));

  const SymbolSamples a0 = diagonal_symbol(frames);
  const SymbolSamples aplus = upper_symbol(frames);
  rows.push_back(make_check("A0 spectrum vs eig(A)", max_over_grid(N, [&](int j) {
                              const auto jj = static_cast<size_t>(j);
                              return multiset_distance(reference_eigenvalues(a0.values[jj], 1e-6),
                                                       reference_eigenvalues(samples.values[jj], 1e-6));
                            }), 1e-8));
  rows.push_back(make_check("route discrepancy |A - A0 - A+|", route_discrepancy(frames, a0, aplus), 1e-9 * scale));
  rows.push_back(make_check("pointwise nilpotency |A+^d|", max_over_grid(N, [&](int j) {
                              const CMatrix& M = aplus.values[static_cast<size_t>(j)];
                              CMatrix power = M;
                              for (int p = 1; p < d; ++p) power = power * M;
                              return power.norm();
                            }), 1e-9));

  const Monodromy mono = monodromy(frames);
  rows.push_back({"monodromy", mono.identity() ? 0.0 : 1.0, 0.0, mono.identity(), "permutation " + mono.cycles});
  if (!mono.identity()) {
    rows.push_back({"chain invariants", std::numeric_limits<double>::infinity(), 0.0, false,
                    "skipped: labels do not close up"});
    return rows;
  }

  std::vector<ChainPoint> nus{ChainPoint::bottom()};
  for (const auto& nu : sample_chain_points(d, options.chain_points)) nus.push_back(nu);
  nus.push_back(ChainPoint::top());
  ChainResiduals worst;
  for (const auto& nu : nus) {
    const ChainResiduals r = chain_residuals(frames, a0, aplus, nu);
    worst.idempotence = std::max(worst.idempotence, r.idempotence);
    worst.hermiticity = std::max(worst.hermiticity, r.hermiticity);
    worst.invariance = std::max(worst.invariance, r.invariance);
    worst.commutation = std::max(worst.commutation, r.commutation);
    worst.upper_invariance = std::max(worst.upper_invariance, r.upper_invariance);
  }
  double mono_res = 0.0;
  for (size_t a = 0; a < nus.size(); ++a)
    for (size_t b = a + 1; b < nus.size(); ++b) mono_res = std::max(mono_res, monotonicity_residual(frames, nus[a], nus[b]));
  const std::string where = std::to_string(nus.size()) + " chain points";
  rows.push_back(make_check("chain idempotence |P^2 - P|", worst.idempotence, 1e-10, where));
  rows.push_back(make_check("chain hermiticity |P - P*|", worst.hermiticity, 1e-10, where));
  rows.push_back(make_check("chain monotonicity |P_nu P_mu - P_nu|", mono_res, 1e-10, where));
  rows.push_back(make_check("chain invariance |PAP - AP|", worst.invariance, 1e-9 * scale, where));
  rows.push_back(make_check("A0 commutes with P", worst.commutation, 1e-9 * scale, where));
  rows.push_back(make_check("A+ invariance |P A+ P - A+ P|", worst.upper_invariance, 1e-9 * scale, where));

  try {
    DecompositionOptions dopt;
    dopt.grid = options.grid;
    dopt.range_lo = options.range_lo;
    dopt.range_hi = options.range_hi;
    const TriangularDecomposition dec = decompose_operator(coeffs, dopt);
    rows.push_back(make_check("reconstruction residual", dec.residual, 1e-10 * scale,
                              "tail " + short_number(dec.tail)));
  } catch (const Error& e) {
    fail("decomposition", e);
  }
  return rows;
}

std::vector<CheckResult> verify_jacobi(const PeriodicJacobiSpec& spec, const VerifyOptions& options) {
  std::vector<CheckResult> rows;
  const int d = spec.period();
  const int k = spec.order();
  const BlockLaurentCoefficients reduced = block_reduce(spec);

  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double fidelity = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const int blocks = 4;
    BlockSequence u(d);
    std::vector<cd> flat(static_cast<size_t>(blocks * d));
    for (auto& x : flat) x = cd(unit(rng), unit(rng));
    for (int n = 0; n < blocks; ++n) {
      CVector v(d);
      for (int r = 0; r < d; ++r) v(r) = flat[static_cast<size_t>(n * d + r)];
      u.set(n, v);
    }
    const BlockSequence Au = apply_convolution(reduced, u);
    for (const auto& [n, block] : Au.entries())
      for (int r = 0; r < d; ++r) {
        const long long row = static_cast<long long>(n) * d + r;
        cd direct = 0.0;
        for (long long s = 0; s < static_cast<long long>(flat.size()); ++s) direct += spec.entry(row, s) * flat[static_cast<size_t>(s)];
        fidelity = std::max(fidelity, std::abs(direct - block(r)));
      }
  }
  rows.push_back(make_check("reduction fidelity", fidelity, 1e-14 * std::max(1.0, max_block_norm(reduced))));

  double outer = 0.0;
  for (const auto& [rs, value] : spec.entries())
    if (std::abs(rs.first - rs.second) == k) outer = std::max(outer, std::abs(value));
  rows.push_back({"band sharpness max|a_rs|, |r-s| = k", outer, 0.0, true,
                  outer == 0.0 ? "warning: outermost band vanishes" : ""});

  if (k != 1) {
    rows.push_back({"characteristic data", 0.0, 0.0, true, "skipped: defined for order 1 only"});
    return rows;
  }

  const CharacteristicData data = char_data(spec);
  const double sign = d % 2 == 0 ? 1.0 : -1.0;
  double det_res = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const cd z = std::polar(1.0, kTwoPi * (0.5 + 0.5 * unit(rng)));
    const cd lambda(2.0 * unit(rng), 2.0 * unit(rng));
    const CMatrix M = eval_symbol(reduced, z) - lambda * CMatrix::Identity(d, d);
    const cd expected = sign * (data.eval(lambda) - data.b * z - data.c / z);
    det_res = std::max(det_res, std::abs(M.determinant() - expected));
  }
  rows.push_back(make_check("determinant identity", det_res, 1e-9));

  const JacobiSpectrum js = jacobi_spectrum(data, options.grid);
  rows.push_back({"companion root solves", static_cast<double>(js.failed_grid_indices.size()), 0.0,
                  js.failed_grid_indices.empty(), "failed grid points"});
  std::vector<cd> roots, direct;
  for (const auto& p : js.points) roots.push_back(p.lambda);
  for (const auto& p : unlabeled_spectrum(sample_symbol(reduced, options.grid))) direct.push_back(p.value);
  rows.push_back(make_check("spectrum consistency (Hausdorff)", hausdorff_distance(roots, direct), 1e-6));

  const SpectrumClass cls = classify_spectrum(data.b, data.c);
  const std::vector<cd> E = ellipse_set(data.b, data.c, options.grid);
  const double radius = std::max(std::abs(data.b), std::abs(data.c));
  // Smaller singular value of the points as 2-vectors: zero iff E lies on a line through 0.
  Eigen::MatrixXd pts(2, static_cast<Eigen::Index>(E.size()));
  for (size_t j = 0; j < E.size(); ++j) pts.col(static_cast<Eigen::Index>(j)) << E[j].real(), E[j].imag();
  const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::MatrixXd>(pts).singularValues();
  const double collinearity = sv(1) / std::sqrt(static_cast<double>(E.size())) / std::max(radius, 1e-300);
  double radial = 0.0;
  for (cd w : E) radial = std::max(radial, std::abs(std::abs(w) - radius));
  const std::string name = std::string("shape of E matches ") + to_string(cls);
  switch (cls) {
    case SpectrumClass::FiniteSet:
      rows.push_back(make_check(name, radius, 0.0, "max |w|"));
      break;
    case SpectrumClass::Circle:
      rows.push_back(make_check(name, radial / radius, 1e-10, "relative radial spread"));
      break;
    case SpectrumClass::Segment:
      rows.push_back(make_check(name, collinearity, 1e-10, "collinearity residual"));
      break;
    case SpectrumClass::Ellipse: {
      const double off = std::min(collinearity, radial / radius);
      rows.push_back({name, off, 1e-10, off > 1e-10, "neither collinear nor round"});
      break;
    }
  }
  rows.push_back({"near coincidences of roots", static_cast<double>(count_near_coincidences(js, 1e-8)), 0.0, true,
                  "diagnostic"});
  return rows;
}

}  // namespace laurent
