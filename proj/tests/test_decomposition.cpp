#include <random>

#include <gtest/gtest.h>

#include "laurent/decomposition.hpp"
#include "oracles.hpp"

using namespace laurent;
using oracle::kPi;
using oracle::m2;

namespace {

const cd I1(0.0, 1.0);

BlockLaurentCoefficients example(int which) {
  switch (which) {
    case 1: return {2, {{0, m2(0, 0, 1, 0)}, {1, m2(1, 0, 0, 0)}}};
    case 2: return {2, {{1, m2(0, 1, 1, 0)}}};
    case 3: return {2, {{-1, m2(0, 0, 4, 0)}, {0, m2(2.0 + 2.0 * I1, 0, 0, 2.0 - 2.0 * I1)}, {1, m2(0, 1, 0, 0)}}};
    default: return {2, {{0, m2(-0.5, 0.5 * I1, -0.5 * I1, -0.5)}, {1, m2(1, 0, I1, 2)}}};
  }
}

DecompositionOptions range(int lo, int hi, int grid = 256) {
  DecompositionOptions o;
  o.range_lo = lo;
  o.range_hi = hi;
  o.grid = grid;
  return o;
}

SchurFrames frames_of(int which, int N = 256) { return track_frames(sample_symbol(example(which), N)); }

}  // namespace

TEST(DiagonalSymbol, Example1) {
  const auto a0 = fourier_coefficients(diagonal_symbol(frames_of(1)), -3, 3);
  const BlockLaurentCoefficients expected(2, {{0, 0.5 * m2(0, 0, 1, 0)}, {1, 0.5 * CMatrix::Identity(2, 2)},
                                              {2, 0.5 * m2(0, 1, 0, 0)}});
  EXPECT_LT(oracle::coeff_gap(a0, expected), 1e-14);
}

TEST(DiagonalSymbol, Example3IsConstant) {
  for (const auto& v : diagonal_symbol(frames_of(3, 64)).values)
    EXPECT_LT(oracle::max_entry_gap(v, 2.0 * CMatrix::Identity(2, 2)), 1e-13);
}

TEST(DiagonalSymbol, NormalSymbolIsItsOwnDiagonal) {
  const SchurFrames fr = frames_of(2, 64);
  const auto a0 = diagonal_symbol(fr);
  const auto ap = upper_symbol(fr);
  for (int j = 0; j < 64; ++j) {
    EXPECT_LT(oracle::max_entry_gap(a0.values[static_cast<size_t>(j)], fr.samples.values[static_cast<size_t>(j)]), 1e-14);
    EXPECT_LT(ap.values[static_cast<size_t>(j)].norm(), 1e-14);
  }
}

TEST(UpperSymbol, Example1And4) {
  const auto ap1 = fourier_coefficients(upper_symbol(frames_of(1)), -3, 3);
  const BlockLaurentCoefficients e1(2, {{0, 0.5 * m2(0, 0, 1, 0)}, {1, 0.5 * m2(1, 0, 0, -1)}, {2, 0.5 * m2(0, -1, 0, 0)}});
  EXPECT_LT(oracle::coeff_gap(ap1, e1), 1e-14);
  const auto ap4 = fourier_coefficients(upper_symbol(frames_of(4)), -3, 3);
  const BlockLaurentCoefficients e4(2, {{1, 0.5 * m2(-1, I1, I1, 1)}});
  EXPECT_LT(oracle::coeff_gap(ap4, e4), 1e-13);
}

TEST(UpperSymbol, HermitianSymbolHasNoUpperPart) {
  std::mt19937_64 rng(31);
  const CMatrix B = oracle::random_matrix(rng, 3);
  const BlockLaurentCoefficients h(3, {{-1, B.adjoint()}, {0, B + B.adjoint()}, {1, B}});
  for (const auto& v : upper_symbol(track_frames(sample_symbol(h, 64))).values) EXPECT_LT(v.norm(), 1e-12);
}

TEST(DecomposeOperator, Example1) {
  const auto dec = decompose_operator(example(1), range(-4, 4));
  EXPECT_LT(oracle::coeff_gap(dec.a0, BlockLaurentCoefficients(2, {{0, 0.5 * m2(0, 0, 1, 0)},
                                                                    {1, 0.5 * CMatrix::Identity(2, 2)},
                                                                    {2, 0.5 * m2(0, 1, 0, 0)}})),
            1e-10);
  EXPECT_LT(dec.residual, 1e-12);
  EXPECT_EQ(dec.nilpotency_index, 2);
  EXPECT_EQ(dec.a0.min_index(), 0);
  EXPECT_EQ(dec.a0.max_index(), 2);
}

TEST(DecomposeOperator, Example3) {
  const auto dec = decompose_operator(example(3), range(-4, 4, 64));
  EXPECT_LT(oracle::coeff_gap(dec.a0, BlockLaurentCoefficients(2, {{0, 2.0 * CMatrix::Identity(2, 2)}})), 1e-10);
  const BlockLaurentCoefficients aplus(2, {{-1, m2(0, 0, 4, 0)}, {0, m2(2.0 * I1, 0, 0, -2.0 * I1)}, {1, m2(0, 1, 0, 0)}});
  EXPECT_LT(oracle::coeff_gap(dec.aplus, aplus), 1e-10);
  EXPECT_EQ(dec.nilpotency_index, 2);
}

TEST(DecomposeOperator, ConstantDiagonal) {
  CMatrix D = CMatrix::Zero(2, 2);
  D.diagonal() << 1.0, 2.0;
  const BlockLaurentCoefficients c(2, {{0, D}});
  const auto dec = decompose_operator(c, range(-2, 2, 16));
  EXPECT_LT(oracle::coeff_gap(dec.a0, c), 1e-14);
  EXPECT_TRUE(dec.aplus.empty());
  EXPECT_EQ(dec.nilpotency_index, 1);
}

TEST(DecomposeOperator, RejectsEmptyRangeAndMonodromy) {
  EXPECT_THROW(decompose_operator(example(1), range(3, 2)), Error);
  const BlockLaurentCoefficients sq(2, {{0, m2(0, 0, 1, 0)}, {1, m2(0, 1, 0, 0)}});
  try {
    decompose_operator(sq, range(-2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NontrivialMonodromy);
  }
}

TEST(NilpotencyIndex, GenericThreeByThree) {
  // A strictly upper Schur part with both superdiagonals nonzero has index 3.
  std::mt19937_64 rng(32);
  const CMatrix Q = Eigen::HouseholderQR<CMatrix>(oracle::random_matrix(rng, 3)).householderQ();
  CMatrix T = CMatrix::Zero(3, 3);
  T.diagonal() << 1.0, 0.0, -1.0;
  T(0, 1) = 1.0;
  T(1, 2) = 1.0;
  T(0, 2) = 0.5;
  const BlockLaurentCoefficients c(3, {{0, Q * T * Q.adjoint()}, {1, 0.1 * CMatrix::Identity(3, 3)}});
  const SchurFrames fr = track_frames(sample_symbol(c, 32));
  EXPECT_EQ(nilpotency_index(fr), 3);
  // Direct powers at each grid point.
  const auto ap = upper_symbol(fr);
  double sq = 0.0, cube = 0.0;
  for (const auto& M : ap.values) {
    sq = std::max(sq, (M * M).norm());
    cube = std::max(cube, (M * M * M).norm());
  }
  EXPECT_GT(sq, 1e-3);
  EXPECT_LT(cube, 1e-12);
  EXPECT_EQ(nilpotency_index(frames_of(1)), 2);
  EXPECT_EQ(nilpotency_index(frames_of(2, 64)), 1);
}

TEST(ProjectionCoefficients, Example1ClosedForm) {
  const SchurFrames fr = frames_of(1);
  for (double theta : {kPi / 4, kPi / 2, kPi}) {
    const cd nu = std::polar(1.0, theta);
    const auto P = projection_coefficients(fr, ChainPoint::on_curve(1, theta), -3, 3);
    // Entries of (1/2pi) int_0^theta 1/2 [[1, z], [1/z, 1]] z^{-n} dt.
    auto arc = [&](int m) -> cd { return m == 0 ? cd(theta) : (std::pow(nu, m) - 1.0) / (I1 * double(m)); };
    for (int n = -3; n <= 3; ++n) {
      const CMatrix expected = m2(arc(-n), arc(1 - n), arc(-1 - n), arc(-n)) / (4 * kPi);
      EXPECT_LT(oracle::max_entry_gap(P.at(n), expected), 1e-6) << "theta " << theta << " n " << n;
    }
  }
}

TEST(ProjectionCoefficients, Example2ClosedForm) {
  const SchurFrames fr = frames_of(2);
  const double theta = 1.2;
  const cd nu = std::polar(1.0, theta);
  const auto P = projection_coefficients(fr, ChainPoint::on_curve(1, theta), -4, 4);
  const CMatrix J = CMatrix::Ones(2, 2);
  EXPECT_LT(oracle::max_entry_gap(P.at(0), theta / (4 * kPi) * J), 1e-6);
  for (int n : {-4, -3, -2, -1, 1, 2, 3, 4})
    EXPECT_LT(oracle::max_entry_gap(P.at(n), I1 / (4.0 * n * kPi) * (std::pow(nu, -n) - 1.0) * J), 1e-6) << n;
}

TEST(ProjectionCoefficients, Example3IsExact) {
  const auto P = projection_coefficients(frames_of(3, 64), ChainPoint::on_curve(2, 0.0), -2, 2);
  const BlockLaurentCoefficients expected(2, {{-1, m2(0, 0, -2.0 * I1, 0) / 5.0},
                                              {0, m2(1, 0, 0, 4) / 5.0},
                                              {1, m2(0, 2.0 * I1, 0, 0) / 5.0}});
  EXPECT_LT(oracle::coeff_gap(P, expected), 1e-13);
}

TEST(ProjectionCoefficients, Example4BothCurves) {
  const SchurFrames fr = frames_of(4);
  const CMatrix dP1 = 0.5 * m2(1, I1, -I1, 1), dP2 = 0.5 * m2(1, -I1, I1, 1);
  const double theta = 2.5;
  const auto Pnu = projection_coefficients(fr, ChainPoint::on_curve(1, theta), -2, 2);
  EXPECT_LT(oracle::max_entry_gap(Pnu.at(0), theta / (2 * kPi) * dP1), 1e-6);
  EXPECT_LT(oracle::max_entry_gap(Pnu.at(1), I1 / (2 * kPi) * (std::polar(1.0, -theta) - 1.0) * dP1), 1e-6);
  const auto Pmu = projection_coefficients(fr, ChainPoint::on_curve(2, theta), -2, 2);
  EXPECT_LT(oracle::max_entry_gap(Pmu.at(0), dP1 + theta / (2 * kPi) * dP2), 1e-6);
}

TEST(ProjectionCoefficients, Ends) {
  const SchurFrames fr = frames_of(1, 64);
  const auto bottom = projection_coefficients(fr, ChainPoint::bottom(), -3, 3);
  for (int n = -3; n <= 3; ++n) EXPECT_EQ(bottom.at(n), CMatrix::Zero(2, 2));
  const auto top = projection_coefficients(fr, ChainPoint::top(), -3, 3);
  EXPECT_EQ(top.at(0), CMatrix::Identity(2, 2));
  EXPECT_EQ(top.at(1), CMatrix::Zero(2, 2));
}

TEST(Spectrum, Examples) {
  const auto s1 = spectrum(frames_of(1, 64));
  ASSERT_EQ(s1.size(), 128u);
  for (const auto& p : s1) {
    if (p.curve == 1)
      EXPECT_NEAR(std::abs(p.value), 1.0, 1e-12);
    else
      EXPECT_NEAR(std::abs(p.value), 0.0, 1e-12);
  }
  for (const auto& p : spectrum(frames_of(3, 64))) EXPECT_NEAR(std::abs(p.value - 2.0), 0.0, 1e-10);
  for (const auto& p : spectrum(frames_of(4))) {
    const cd z = std::polar(1.0, p.t);
    EXPECT_NEAR(std::abs(p.value - (p.curve == 1 ? z : 2.0 * z - 1.0)), 0.0, 1e-10);
  }
}

TEST(Spectrum, UnlabeledMatchesLabeled) {
  const auto lab = spectrum(frames_of(4));
  const auto unl = unlabeled_spectrum(sample_symbol(example(4), 256));
  std::vector<cd> a, b;
  for (const auto& p : lab) a.push_back(p.value);
  for (const auto& p : unl) b.push_back(p.value);
  EXPECT_LT(oracle::hausdorff(a, b), 1e-10);
}

TEST(SpectrumSplit, Example1HalfCircle) {
  const SchurFrames fr = frames_of(1, 64);
  const auto split = spectrum_split(fr, ChainPoint::on_curve(1, kPi));
  ASSERT_EQ(split.predecessors.size(), 32u);
  for (const auto& p : split.predecessors) {
    EXPECT_EQ(p.curve, 1);
    EXPECT_GE(p.value.imag(), -1e-15);
  }
  int zeros = 0;
  for (const auto& p : split.successors) zeros += std::abs(p.value) < 1e-12;
  EXPECT_EQ(zeros, 64);
  EXPECT_EQ(split.successors.size(), 96u);

  EXPECT_TRUE(spectrum_split(fr, ChainPoint::bottom()).predecessors.empty());
  EXPECT_TRUE(spectrum_split(fr, ChainPoint::top()).successors.empty());
}
