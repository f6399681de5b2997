#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "laurent/io.hpp"
#include "oracles.hpp"

using namespace laurent;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("laurent_io_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(FormatDouble, Fixed) {
  EXPECT_EQ(io::format_double(1.0), "1.0000000000000000e+00");
  EXPECT_EQ(io::format_double(-0.25), "-2.5000000000000000e-01");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(io::format_double(x)), x);
}

TEST(Dump, Layout) {
  io::Json j = io::Json::object();
  j["b"] = 1;
  j["a"] = io::Json::array({0.5, 2});
  j["nan"] = std::nan("");
  j["nested"] = io::Json::array({io::Json::array({1.0, 0.0})});
  EXPECT_EQ(io::dump(j),
            "{\n"
            "  \"b\": 1,\n"
            "  \"a\": [5.0000000000000000e-01, 2],\n"
            "  \"nan\": null,\n"
            "  \"nested\": [\n"
            "    [1.0000000000000000e+00, 0.0000000000000000e+00]\n"
            "  ]\n"
            "}\n");
}

TEST(ParseCoefficients, RoundTrip) {
  std::mt19937_64 rng(61);
  const auto c = oracle::random_symbol(rng, 3, 2);
  const auto back = io::parse_coefficients(io::dump(io::coefficients_json(c)));
  EXPECT_EQ(back.dim(), 3);
  EXPECT_EQ(oracle::coeff_gap(back, c), 0.0);
}

TEST(ParseCoefficients, Fixture) {
  const auto c = io::parse_coefficients(io::read_text_file(oracle::fixture("example1.json")));
  EXPECT_EQ(c.dim(), 2);
  EXPECT_EQ(c.at(0), oracle::m2(0, 0, 1, 0));
  EXPECT_EQ(c.at(1), oracle::m2(1, 0, 0, 0));
}

TEST(ParseCoefficients, Errors) {
  const auto parse = [](const std::string& s) { return [s] { io::parse_coefficients(s); }; };
  EXPECT_EQ(code_of([] { io::parse_coefficients(io::read_text_file(oracle::fixture("malformed.json"))); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::read_text_file("/nonexistent/file.json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse("[1, 2]")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse(R"({"coeffs": {}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse(R"({"d": 0, "coeffs": {}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse(R"({"d": 1.5, "coeffs": {}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse(R"({"d": 1, "coeffs": {"x": [[[1, 0]]]}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse(R"({"d": 1, "coeffs": {"1": [[[1, 0]]], "+1": [[[2, 0]]]}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse(R"({"d": 2, "coeffs": {"0": [[[1, 0]]]}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse(R"({"d": 1, "coeffs": {"0": [[[1]]]}})")), ErrorCode::ParseError);
  EXPECT_EQ(code_of(parse(R"({"d": 1, "coeffs": {"0": [[["1", 0]]]}})")), ErrorCode::ParseError);
  EXPECT_NO_THROW(io::parse_coefficients(R"({"d": 1, "coeffs": {"-2": [[[1, 0]]]}})"));
}

TEST(ParseJacobi, FixtureAndRoundTrip) {
  const auto spec = io::parse_jacobi(io::read_text_file(oracle::fixture("jacobi_finite.json")));
  EXPECT_EQ(spec.period(), 3);
  EXPECT_EQ(spec.order(), 1);
  EXPECT_EQ(spec.entry(1, 0), cd(0.25));
  const auto back = io::parse_jacobi(io::dump(io::jacobi_json(spec)));
  EXPECT_EQ(back.entries(), spec.entries());
}

TEST(ParseJacobi, Errors) {
  EXPECT_EQ(code_of([] { io::parse_jacobi(R"({"d": 2, "entries": []})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::parse_jacobi(R"({"d": 2, "k": 1, "entries": [{"r": 0, "s": 0}]})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              io::parse_jacobi(R"({"d": 2, "k": 1, "entries": [{"r": 0, "s": 0, "re": 1}, {"r": 0, "s": 0, "re": 2}]})");
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { io::parse_jacobi(R"({"d": 2, "k": 1, "entries": [{"r": 0, "s": 3, "re": 1}]})"); }),
            ErrorCode::BandViolation);
  EXPECT_EQ(code_of([] { io::parse_jacobi(R"({"d": 2, "k": 1, "entries": [{"r": 5, "s": 5, "re": 1}]})"); }),
            ErrorCode::BandViolation);
}

TEST(Csv, Headers) {
  std::vector<SpectrumPoint> pts{{1, 0, 0.0, cd(1.0, -1.0)}};
  EXPECT_EQ(io::spectrum_csv(pts), "curve,t,re,im\n1,0.0000000000000000e+00,1.0000000000000000e+00,-1.0000000000000000e+00\n");
  EXPECT_EQ(io::ellipse_csv({2.0}), "grid_index,t,re,im\n0,0.0000000000000000e+00,2.0000000000000000e+00,0.0000000000000000e+00\n");
  JacobiSpectrum js;
  js.points.push_back({3, 1, 2.0, cd(0.0, 1.0)});
  EXPECT_EQ(io::jacobi_spectrum_csv(js).substr(0, 38), "grid_index,root_index,w_re,w_im,re,im\n");
  const auto sj = io::spectrum_json(pts);
  EXPECT_EQ(sj[0]["curve"], 1);
  EXPECT_EQ(sj[0]["im"].get<double>(), -1.0);
}

TEST(ArtifactSet, CommitWritesAllFiles) {
  const fs::path dir = scratch("commit") / "nested";
  io::ArtifactSet set;
  set.add("a.txt", "alpha\n");
  set.add_json("b.json", io::Json{{"x", 1}});
  EXPECT_FALSE(fs::exists(dir));
  set.commit(dir);
  EXPECT_EQ(io::read_text_file(dir / "a.txt"), "alpha\n");
  EXPECT_EQ(io::read_text_file(dir / "b.json"), "{\n  \"x\": 1\n}\n");
  size_t count = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++count;
  EXPECT_EQ(count, 2u);  // no temporaries left behind
  fs::remove_all(dir.parent_path());
}

TEST(ArtifactSet, FailedCommitLeavesNothing) {
  const fs::path dir = scratch("fail");
  fs::create_directories(dir / "b.json");  // a directory blocks the rename of b.json
  fs::create_directories(dir / "b.json" / "keep");
  io::ArtifactSet set;
  set.add("a.txt", "alpha\n");
  set.add("b.json", "{}\n");
  EXPECT_EQ(code_of([&] { set.commit(dir); }), ErrorCode::InvalidArgument);
  for (const auto& e : fs::directory_iterator(dir)) EXPECT_EQ(e.path().filename(), "b.json");
  fs::remove_all(dir);
}

TEST(ArtifactSet, ByteDeterministic) {
  std::mt19937_64 rng(62);
  const auto c = oracle::random_symbol(rng, 2, 1);
  EXPECT_EQ(io::dump(io::coefficients_json(c)), io::dump(io::coefficients_json(io::parse_coefficients(io::dump(io::coefficients_json(c))))));
}
