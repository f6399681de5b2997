#include <algorithm>
#include <cmath>
#include <sstream>

#include "laurent/assignment.hpp"
#include "laurent/kernels.hpp"
#include "schur_internal.hpp"

namespace laurent {

namespace {

struct LabelMatch {
  // Optimal permutations that differ only by swapping coincident values.
  std::vector<std::vector<int>> optimal;
  double best_cost = 0.0;
  // Cost gap to the best genuinely different labeling; infinite if none was assessed.
  double gap = std::numeric_limits<double>::infinity();
};

bool close(cd a, cd b, double tol) { return std::abs(a - b) <= tol; }

// Same multiset of (prediction, candidate) pairs, i.e. the two labelings only
// differ where the values involved coincide.
bool equivalent_pairs(const std::vector<cd>& pred, const std::vector<cd>& cand, const std::vector<int>& p,
                      const std::vector<int>& q, double tol) {
  std::vector<char> used(p.size(), 0);
  for (size_t r = 0; r < p.size(); ++r) {
    bool found = false;
    for (size_t s = 0; s < q.size() && !found; ++s) {
      if (used[s]) continue;
      if (close(pred[r], pred[s], tol) && close(cand[static_cast<size_t>(p[r])], cand[static_cast<size_t>(q[s])], tol)) {
        used[s] = 1;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

LabelMatch match_labels(const std::vector<cd>& pred, const std::vector<cd>& cand, double eq_tol) {
  const auto n = static_cast<Eigen::Index>(pred.size());
  CostMatrix cost(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) cost(r, c) = std::abs(pred[static_cast<size_t>(r)] - cand[static_cast<size_t>(c)]);

  LabelMatch out;
  if (n > kExhaustiveAssignmentLimit) {
    auto perm = hungarian_assignment(cost);
    out.best_cost = assignment_cost(cost, perm);
    out.optimal.push_back(std::move(perm));
    return out;
  }
  const auto ranked = ranked_assignments(cost);
  out.best_cost = ranked.front().cost;
  for (const auto& candidate : ranked) {
    if (equivalent_pairs(pred, cand, ranked.front().perm, candidate.perm, eq_tol)) {
      out.optimal.push_back(candidate.perm);
    } else if (!std::isfinite(out.gap)) {
      out.gap = candidate.cost - out.best_cost;
    }
  }
  return out;
}

double value_scale(const std::vector<cd>& a, const std::vector<cd>& b) {
  double s = 1.0;
  for (cd v : a) s = std::max(s, std::abs(v));
  for (cd v : b) s = std::max(s, std::abs(v));
  return s;
}

std::vector<cd> diagonal(const CMatrix& T) {
  std::vector<cd> out(static_cast<size_t>(T.rows()));
  for (Eigen::Index k = 0; k < T.rows(); ++k) out[static_cast<size_t>(k)] = T(k, k);
  return out;
}

// Linear extrapolation along each label. The first step extrapolates through
// the backward neighbour z_{N-1} when it is available.
std::vector<cd> predict(const SchurFrames& frames, int j, const std::vector<cd>& behind) {
  const auto& last = frames.eigenvalues[static_cast<size_t>(j - 1)];
  if (j < 2 && behind.empty()) return last;
  const auto& before = j < 2 ? behind : frames.eigenvalues[static_cast<size_t>(j - 2)];
  std::vector<cd> out(last.size());
  for (size_t k = 0; k < last.size(); ++k) out[k] = 2.0 * last[k] - before[k];
  return out;
}

}  // namespace

double SchurFrames::parameter(int j) const { return kTwoPi * static_cast<double>(j) / static_cast<double>(size()); }

CMatrix SchurFrames::jump_projection(int j, int k) const {
  const auto& basis = U[static_cast<size_t>(j)];
  return basis.col(k) * basis.col(k).adjoint();
}

SchurFrames track_frames(const SymbolSamples& samples, const std::optional<std::vector<cd>>& base_order,
                         const SchurTolerances& tol) {
  const int N = samples.size();
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "cannot track an empty grid");
  for (const auto& M : samples.values)
    if (!M.allFinite()) throw Error(ErrorCode::InvalidArgument, "symbol samples contain non-finite entries");

  SchurFrames frames;
  frames.d = samples.d;
  frames.samples = samples;
  frames.eigenvalues.resize(static_cast<size_t>(N));
  frames.U.resize(static_cast<size_t>(N));
  frames.T.resize(static_cast<size_t>(N));

  // Eigenvalues of every frame are independent; only the labeling is sequential.
  const auto raw = kernels::grid_eigenvalues(samples.values, tol.cluster);

  std::vector<cd> first = raw.front();
  if (base_order) first = detail::order_by_hint(first, *base_order);
  {
    SchurForm form = schur_with_order(samples.values.front(), first, nullptr, tol);
    frames.eigenvalues[0] = diagonal(form.T);
    frames.U[0] = std::move(form.U);
    frames.T[0] = std::move(form.T);
  }

  // Labels at z_{N-1} by nearness to z_0, used only to predict the first step.
  std::vector<cd> behind;
  if (N >= 3) {
    const auto& start = frames.eigenvalues[0];
    const auto& back = raw[static_cast<size_t>(N - 1)];
    const auto perm = match_labels(start, back, tol.equal_value * value_scale(start, back)).optimal.front();
    for (int p : perm) behind.push_back(back[static_cast<size_t>(p)]);
  }

  auto& diag = frames.diagnostics;
  for (int j = 1; j < N; ++j) {
    const auto& cand = raw[static_cast<size_t>(j)];
    const auto pred = predict(frames, j, behind);
    const double eq_tol = tol.equal_value * value_scale(pred, cand);
    const LabelMatch match = match_labels(pred, cand, eq_tol);

    if (std::isfinite(match.gap)) {
      const double ratio = match.gap / std::max(match.best_cost, 1e-300);
      diag.min_gap_ratio = std::min(diag.min_gap_ratio, ratio);
      if (match.gap < tol.ambiguity_factor * match.best_cost) {
        std::ostringstream msg;
        msg << "eigenvalue labeling is ambiguous at grid index " << j << " of " << N << ": runner-up assignment is "
            << match.gap << " worse against a step of " << match.best_cost << "; increase the grid size";
        throw Error(ErrorCode::AmbiguousTracking, msg.str());
      }
    }

    // Distinct value orders among the equally good labelings.
    std::vector<std::vector<cd>> orders;
    for (const auto& perm : match.optimal) {
      std::vector<cd> order(perm.size());
      for (size_t r = 0; r < perm.size(); ++r) order[r] = cand[static_cast<size_t>(perm[r])];
      const bool seen = std::any_of(orders.begin(), orders.end(), [&](const std::vector<cd>& o) {
        for (size_t r = 0; r < o.size(); ++r)
          if (!close(o[r], order[r], eq_tol)) return false;
        return true;
      });
      if (!seen) orders.push_back(std::move(order));
    }

    const CMatrix& prev_basis = frames.U[static_cast<size_t>(j - 1)];
    const CMatrix& M = samples.values[static_cast<size_t>(j)];
    SchurForm chosen = schur_with_order(M, orders.front(), &prev_basis, tol);
    if (orders.size() > 1) {
      ++diag.tie_steps;
      // Prefer the labeling whose Schur vectors continue the previous ones.
      auto overlap = [&](const CMatrix& basis) { return (prev_basis.adjoint() * basis).diagonal().cwiseAbs2().sum(); };
      double best = overlap(chosen.U);
      for (size_t o = 1; o < orders.size(); ++o) {
        SchurForm alt = schur_with_order(M, orders[o], &prev_basis, tol);
        const double score = overlap(alt.U);
        if (score > best + 1e-9) {
          best = score;
          chosen = std::move(alt);
          ++diag.resolved_by_vectors;
        }
      }
    }

    frames.eigenvalues[static_cast<size_t>(j)] = diagonal(chosen.T);
    frames.U[static_cast<size_t>(j)] = std::move(chosen.U);
    frames.T[static_cast<size_t>(j)] = std::move(chosen.T);

    const auto& now = frames.eigenvalues[static_cast<size_t>(j)];
    const auto& before = frames.eigenvalues[static_cast<size_t>(j - 1)];
    for (size_t k = 0; k < now.size(); ++k) diag.max_step = std::max(diag.max_step, std::abs(now[k] - before[k]));
  }

  for (const auto& values : frames.eigenvalues)
    for (size_t a = 0; a < values.size(); ++a)
      for (size_t b = a + 1; b < values.size(); ++b)
        diag.min_separation = std::min(diag.min_separation, std::abs(values[a] - values[b]));
  return frames;
}

bool Monodromy::identity() const { return is_identity(perm); }

Monodromy monodromy(const SchurFrames& frames, const SchurTolerances& tol) {
  const int N = frames.size();
  Monodromy out;
  out.perm.resize(static_cast<size_t>(frames.d));
  for (int k = 0; k < frames.d; ++k) out.perm[static_cast<size_t>(k)] = k;
  if (N < 2) {
    out.cycles = cycle_notation(out.perm);
    return out;
  }
  // Continue the labels one step past z_{N-1}, landing back on z_0.
  const auto& last = frames.eigenvalues[static_cast<size_t>(N - 1)];
  std::vector<cd> pred = last;
  if (N >= 3) {
    const auto& before = frames.eigenvalues[static_cast<size_t>(N - 2)];
    for (size_t k = 0; k < pred.size(); ++k) pred[k] = 2.0 * last[k] - before[k];
  }
  const auto& start = frames.eigenvalues.front();
  const double eq_tol = tol.equal_value * value_scale(pred, start);
  const LabelMatch match = match_labels(pred, start, eq_tol);

  auto chosen = std::find_if(match.optimal.begin(), match.optimal.end(), [](const auto& p) { return is_identity(p); });
  out.perm = chosen != match.optimal.end() ? *chosen : match.optimal.front();
  if (std::isfinite(match.gap)) out.gap_ratio = match.gap / std::max(match.best_cost, 1e-300);
  out.cycles = cycle_notation(out.perm);
  return out;
}

void require_single_valued(const SchurFrames& frames) {
  const Monodromy m = monodromy(frames);
  if (!m.identity())
    throw Error(ErrorCode::NontrivialMonodromy,
                "eigenvalue labels do not close up around the circle: monodromy " + m.cycles);
}

CurveSet spectral_curves(const SchurFrames& frames) {
  require_single_valued(frames);
  CurveSet set;
  const int N = frames.size();
  set.params.resize(static_cast<size_t>(N));
  for (int j = 0; j < N; ++j) set.params[static_cast<size_t>(j)] = frames.parameter(j);
  set.curves.assign(static_cast<size_t>(frames.d), std::vector<cd>(static_cast<size_t>(N)));
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < frames.d; ++k)
      set.curves[static_cast<size_t>(k)][static_cast<size_t>(j)] =
          frames.eigenvalues[static_cast<size_t>(j)][static_cast<size_t>(k)];
  for (int k = 0; k < frames.d; ++k) {
    set.alpha.push_back(set.curves[static_cast<size_t>(k)].front());
    set.beta.push_back(set.curves[static_cast<size_t>(k)].front());
  }
  return set;
}

ChainPoint ChainPoint::on_curve(int k, double t) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "curve index must be at least 1");
  if (!(t >= 0.0 && t < kTwoPi)) throw Error(ErrorCode::InvalidArgument, "chain parameter must lie in [0, 2pi)");
  return {Kind::Interior, k, t};
}

bool operator==(const ChainPoint& a, const ChainPoint& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != ChainPoint::Kind::Interior) return true;
  return a.k == b.k && a.t == b.t;
}

bool precede(const ChainPoint& nu, const ChainPoint& mu) {
  using Kind = ChainPoint::Kind;
  if (nu == mu) return false;
  if (nu.kind == Kind::Bottom || mu.kind == Kind::Top) return true;
  if (nu.kind == Kind::Top || mu.kind == Kind::Bottom) return false;
  if (nu.k != mu.k) return nu.k < mu.k;
  return nu.t < mu.t;
}

SymbolSamples chain_projection_samples(const SchurFrames& frames, const ChainPoint& nu) {
  require_single_valued(frames);
  const int N = frames.size();
  const int d = frames.d;
  SymbolSamples out{d, {}};
  if (nu.kind == ChainPoint::Kind::Bottom) {
    out.values.assign(static_cast<size_t>(N), CMatrix::Zero(d, d));
    return out;
  }
  if (nu.kind == ChainPoint::Kind::Top) {
    out.values.assign(static_cast<size_t>(N), CMatrix::Identity(d, d));
    return out;
  }
  if (nu.k > d)
    throw Error(ErrorCode::InvalidArgument, "curve " + std::to_string(nu.k) + " does not exist for d = " + std::to_string(d));
  std::vector<std::vector<cd>> weights(static_cast<size_t>(N), std::vector<cd>(static_cast<size_t>(d), 0.0));
  for (int j = 0; j < N; ++j) {
    auto& w = weights[static_cast<size_t>(j)];
    for (int l = 0; l < nu.k - 1; ++l) w[static_cast<size_t>(l)] = 1.0;
    if (frames.parameter(j) < nu.t) w[static_cast<size_t>(nu.k - 1)] = 1.0;
  }
  out.values = kernels::weighted_projector_sum(frames.U, weights);
  return out;
}

}  // namespace laurent
