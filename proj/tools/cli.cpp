#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "CLI11.hpp"
#include "laurent/io.hpp"
#include "laurent/kernels.hpp"
#include "laurent/verify.hpp"

namespace laurent::cli {

namespace {

using io::Json;

// An error carrying extra machine-readable context for the error object.
struct DetailedError : Error {
  DetailedError(ErrorCode code, const std::string& what, Json details)
      : Error(code, what), details(std::move(details)) {}
  Json details;
};

[[noreturn]] void bad_argument(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

int parse_int(std::string_view text, const std::string& what) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) bad_argument(what + ": '" + std::string(text) + "' is not an integer");
  return value;
}

double parse_real(std::string_view text, const std::string& what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    bad_argument(what + ": '" + std::string(text) + "' is not a number");
  return value;
}

ChainPoint parse_nu(const std::string& text) {
  if (text == "bottom") return ChainPoint::bottom();
  if (text == "top") return ChainPoint::top();
  const auto comma = text.find(',');
  if (comma == std::string::npos) bad_argument("--nu expects K,T, bottom or top");
  const int k = parse_int(std::string_view(text).substr(0, comma), "--nu curve");
  const double t = parse_real(std::string_view(text).substr(comma + 1), "--nu parameter");
  return ChainPoint::on_curve(k, t);
}

Json nu_json(const ChainPoint& nu) {
  switch (nu.kind) {
    case ChainPoint::Kind::Bottom: return {{"kind", "bottom"}};
    case ChainPoint::Kind::Top: return {{"kind", "top"}};
    case ChainPoint::Kind::Interior: break;
  }
  return {{"kind", "interior"}, {"k", nu.k}, {"t", nu.t}};
}

Json complex_list(const std::vector<cd>& values) {
  Json out = Json::array();
  for (cd v : values) out.push_back(io::complex_json(v));
  return out;
}

Json monodromy_json(const Monodromy& m) {
  Json perm = Json::array();
  for (int p : m.perm) perm.push_back(p + 1);
  return {{"permutation", perm}, {"cycles", m.cycles}, {"identity", m.identity()}, {"gap_ratio", m.gap_ratio}};
}

SchurFrames analyzed_frames(const BlockLaurentCoefficients& coeffs, int grid) {
  SchurFrames frames = track_frames(sample_symbol(coeffs, grid));
  const Monodromy m = monodromy(frames);
  if (!m.identity())
    throw DetailedError(ErrorCode::NontrivialMonodromy,
                        "eigenvalue labels do not close up around the circle: monodromy " + m.cycles,
                        {{"monodromy", monodromy_json(m)}});
  return frames;
}

Json summary(const std::string& command, const RunConfig& config, const io::ArtifactSet& artifacts) {
  Json names = Json::array();
  for (const auto& [name, content] : artifacts.files()) names.push_back(name);
  return {{"status", "ok"}, {"command", command}, {"out", config.out.string()}, {"artifacts", names}};
}

Json cmd_analyze(const std::string& input, const RunConfig& config, io::ArtifactSet& artifacts) {
  const BlockLaurentCoefficients coeffs = io::parse_coefficients(io::read_text_file(input));
  const SchurFrames frames = analyzed_frames(coeffs, config.grid);
  const CurveSet curves = spectral_curves(frames);
  const CoefficientNorms norms = coefficient_norms(coeffs);
  const TrackingDiagnostics& diag = frames.diagnostics;

  Json analysis = Json::object();
  analysis["d"] = frames.d;
  analysis["grid"] = frames.size();
  analysis["alpha"] = complex_list(curves.alpha);
  analysis["beta"] = complex_list(curves.beta);
  analysis["monodromy"] = monodromy_json(monodromy(frames));
  analysis["diagnostics"] = {{"max_step", diag.max_step},
                             {"min_gap_ratio", diag.min_gap_ratio},
                             {"min_separation", diag.min_separation},
                             {"tie_steps", diag.tie_steps},
                             {"resolved_by_vectors", diag.resolved_by_vectors}};
  analysis["norms"] = {{"l1", norms.l1}, {"l2", norms.l2}};
  artifacts.add_json("analysis.json", analysis);

  const auto points = spectrum(frames);
  if (config.format == "csv")
    artifacts.add("spectrum.csv", io::spectrum_csv(points));
  else
    artifacts.add_json("spectrum.json", io::spectrum_json(points));

  Json out = summary("analyze", config, artifacts);
  out["monodromy"] = analysis["monodromy"]["cycles"];
  return out;
}

Json cmd_decompose(const std::string& input, const RunConfig& config, io::ArtifactSet& artifacts) {
  const BlockLaurentCoefficients coeffs = io::parse_coefficients(io::read_text_file(input));
  DecompositionOptions options;
  options.grid = config.grid;
  options.range_lo = config.range_lo;
  options.range_hi = config.range_hi;
  const TriangularDecomposition dec = decompose_operator(coeffs, options);

  // Operator-level check: the Cauchy power A+^l of the truncated coefficients.
  BlockLaurentCoefficients power = dec.aplus;
  for (int p = 1; p < dec.nilpotency_index; ++p) power = compose(power, dec.aplus);
  const double operator_power = dec.aplus.empty() ? 0.0 : max_block_norm(power);

  artifacts.add_json("a0.json", io::coefficients_json(dec.a0));
  artifacts.add_json("aplus.json", io::coefficients_json(dec.aplus));
  Json report = Json::object();
  report["grid"] = dec.grid;
  report["range"] = Json::array({dec.range_lo, dec.range_hi});
  report["residual"] = dec.residual;
  report["tail"] = dec.tail;
  report["route_discrepancy"] = dec.route_discrepancy;
  report["nilpotency_index"] = dec.nilpotency_index;
  report["aplus_power_norm"] = operator_power;
  artifacts.add_json("decomposition.json", report);

  Json out = summary("decompose", config, artifacts);
  out["residual"] = dec.residual;
  out["nilpotency_index"] = dec.nilpotency_index;
  return out;
}

Json cmd_chain(const std::string& input, const RunConfig& config, io::ArtifactSet& artifacts) {
  if (config.nu.empty()) bad_argument("chain needs --nu K,T, bottom or top");
  const ChainPoint nu = parse_nu(config.nu);
  const BlockLaurentCoefficients coeffs = io::parse_coefficients(io::read_text_file(input));
  const SchurFrames frames = analyzed_frames(coeffs, config.grid);
  if (nu.kind == ChainPoint::Kind::Interior && nu.k > frames.d)
    bad_argument("--nu curve " + std::to_string(nu.k) + " exceeds d = " + std::to_string(frames.d));

  const auto P = projection_coefficients(frames, nu, config.range_lo, config.range_hi, config.quad);
  const ChainResiduals r = chain_residuals(frames, diagonal_symbol(frames), upper_symbol(frames), nu);
  artifacts.add_json("p_nu.json", io::coefficients_json(P));

  Json report = Json::object();
  report["nu"] = nu_json(nu);
  report["grid"] = frames.size();
  report["quad"] = config.quad;
  report["range"] = Json::array({config.range_lo, config.range_hi});
  report["residuals"] = {{"idempotence", r.idempotence},
                         {"hermiticity", r.hermiticity},
                         {"invariance", r.invariance},
                         {"commutation", r.commutation},
                         {"upper_invariance", r.upper_invariance}};
  artifacts.add_json("chain.json", report);

  const SpectrumSplit split = spectrum_split(frames, nu);
  if (config.format == "csv") {
    artifacts.add("predecessors.csv", io::spectrum_csv(split.predecessors));
    artifacts.add("successors.csv", io::spectrum_csv(split.successors));
  } else {
    Json s = Json::object();
    s["predecessors"] = io::spectrum_json(split.predecessors);
    s["successors"] = io::spectrum_json(split.successors);
    artifacts.add_json("split.json", s);
  }

  Json out = summary("chain", config, artifacts);
  out["invariance"] = r.invariance;
  return out;
}

Json cmd_jacobi(const std::string& input, const RunConfig& config, io::ArtifactSet& artifacts) {
  const PeriodicJacobiSpec spec = io::parse_jacobi(io::read_text_file(input));
  const BlockLaurentCoefficients reduced = block_reduce(spec);
  artifacts.add_json("reduced.json", io::coefficients_json(reduced));
  artifacts.add_json("regrouped.json", io::coefficients_json(
                                           tridiagonal_regroup(reduced, spec.block_band()).as_coefficients()));

  Json warnings = Json::array();
  if (spec.outer_band_vanishes())
    warnings.push_back("every entry with |r - s| = " + std::to_string(spec.order()) + " is zero; the band is not sharp");

  if (spec.order() != 1) {
    warnings.push_back("characteristic data and E are defined for order 1; run analyze on reduced.json");
    Json out = summary("jacobi", config, artifacts);
    out["warnings"] = warnings;
    return out;
  }

  const CharacteristicData data = char_data(spec);
  const JacobiSpectrum js = jacobi_spectrum(data, config.grid);
  if (!js.failed_grid_indices.empty()) {
    Json failed = Json::array();
    for (int j : js.failed_grid_indices) failed.push_back(j);
    throw DetailedError(ErrorCode::RootFindingFailure,
                        std::to_string(js.failed_grid_indices.size()) + " companion root solves failed",
                        {{"failed_grid_indices", failed}});
  }
  const SpectrumClass cls = classify_spectrum(data.b, data.c);

  Json charpoly = Json::object();
  charpoly["d"] = spec.period();
  charpoly["q"] = complex_list(data.q);
  charpoly["b"] = io::complex_json(data.b);
  charpoly["c"] = io::complex_json(data.c);
  charpoly["classification"] = to_string(cls);
  charpoly["grid"] = config.grid;
  charpoly["near_coincidences"] = count_near_coincidences(js, 1e-8);
  charpoly["warnings"] = warnings;
  artifacts.add_json("charpoly.json", charpoly);
  artifacts.add("E.csv", io::ellipse_csv(ellipse_set(data.b, data.c, config.grid)));
  artifacts.add("spectrum.csv", io::jacobi_spectrum_csv(js));

  Json out = summary("jacobi", config, artifacts);
  out["classification"] = to_string(cls);
  out["warnings"] = warnings;
  return out;
}

bool looks_like_jacobi(const std::string& text) {
  try {
    const Json root = Json::parse(text);
    return root.is_object() && root.contains("entries") && root.contains("k");
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

int cmd_verify(const std::string& input, const RunConfig& config, std::ostream& out) {
  const std::string text = io::read_text_file(input);
  VerifyOptions options;
  options.grid = config.grid;
  options.quad = config.quad;
  options.range_lo = config.range_lo;
  options.range_hi = config.range_hi;
  const auto rows = looks_like_jacobi(text) ? verify_jacobi(io::parse_jacobi(text), options)
                                            : verify_symbol(io::parse_coefficients(text), options);
  bool all = true;
  Json table = Json::array();
  for (const auto& row : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-46s %12.3e  (tol %.1e)", row.pass ? "PASS" : "FAIL", row.name.c_str(),
                  row.value, row.tolerance);
    out << line << (row.note.empty() ? "" : "  " + row.note) << '\n';
    all = all && row.pass;
    table.push_back({{"name", row.name}, {"value", row.value}, {"tolerance", row.tolerance}, {"pass", row.pass},
                     {"note", row.note}});
  }
  io::ArtifactSet artifacts;
  artifacts.add_json("verify.json", {{"all_pass", all}, {"checks", table}});
  artifacts.commit(config.out);
  return all ? 0 : 2;
}

void write_error(std::ostream& err, ErrorCode code, const std::string& message, const Json& details) {
  Json e = Json::object();
  e["code"] = std::string(to_string(code));
  e["message"] = message;
  e["exit_code"] = exit_code(code);
  if (!details.is_null()) e["details"] = details;
  err << io::dump({{"status", "error"}, {"error", e}});
}

}  // namespace

void RunConfig::validate() const {
  if (grid < 8) bad_argument("--grid must be at least 8");
  if (quad < 8) bad_argument("--quad must be at least 8");
  if (range_hi < range_lo) bad_argument("--range must satisfy LO <= HI");
  if (format != "json" && format != "csv") bad_argument("--format must be json or csv");
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) bad_argument("--range expects LO:HI");
  return {parse_int(std::string_view(text).substr(0, colon), "--range LO"),
          parse_int(std::string_view(text).substr(colon + 1), "--range HI")};
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::GridTooCoarse:
    case ErrorCode::BandViolation:
      return 1;
    case ErrorCode::NoConvergence:
    case ErrorCode::AmbiguousTracking:
    case ErrorCode::NontrivialMonodromy:
    case ErrorCode::RootFindingFailure:
      return 2;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  kernels::apply_thread_limit_from_env();

  CLI::App app{"Schur-chain spectral analysis of block Laurent operators", "laurent-spectra"};
  app.require_subcommand(1);
  RunConfig config;
  std::string input;
  std::string range;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", input, "Input JSON file")->required();
    sub->add_option("--grid", config.grid, "Grid size N on the unit circle")->capture_default_str();
    sub->add_option("--quad", config.quad, "Quadrature points per full turn for P_nu")->capture_default_str();
    sub->add_option("--range", range, "Coefficient range LO:HI (default -8:8)");
    sub->add_option("--out", config.out, "Output directory")->capture_default_str();
    sub->add_option("--format", config.format, "Spectrum format: json or csv")->capture_default_str();
  };
  auto* analyze = app.add_subcommand("analyze", "Track eigenvalue curves and write the spectrum");
  auto* decompose = app.add_subcommand("decompose", "Triangular decomposition A = A0 + A+");
  auto* chain = app.add_subcommand("chain", "Fourier coefficients of a chain projection P_nu");
  auto* jacobi = app.add_subcommand("jacobi", "Reduce and analyze a periodic Jacobi matrix");
  auto* verify = app.add_subcommand("verify", "Rerun invariant checks and print a pass/fail table");
  for (auto* sub : {analyze, decompose, chain, jacobi, verify}) add_common(sub);
  chain->add_option("--nu", config.nu, "Chain point K,T (curve, parameter), bottom or top");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, ErrorCode::InvalidArgument, e.what(), Json());
    return 1;
  }

  try {
    if (!range.empty()) std::tie(config.range_lo, config.range_hi) = parse_range(range);
    config.validate();
    if (verify->parsed()) return cmd_verify(input, config, out);

    io::ArtifactSet artifacts;
    Json result;
    if (analyze->parsed()) result = cmd_analyze(input, config, artifacts);
    if (decompose->parsed()) result = cmd_decompose(input, config, artifacts);
    if (chain->parsed()) result = cmd_chain(input, config, artifacts);
    if (jacobi->parsed()) result = cmd_jacobi(input, config, artifacts);
    artifacts.commit(config.out);
    out << io::dump(result);
    return 0;
  } catch (const DetailedError& e) {
    write_error(err, e.code(), e.what(), e.details);
    return exit_code(e.code());
  } catch (const Error& e) {
    write_error(err, e.code(), e.what(), Json());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    write_error(err, ErrorCode::InvalidArgument, e.what(), Json());
    return 1;
  }
}

}  // namespace laurent::cli
