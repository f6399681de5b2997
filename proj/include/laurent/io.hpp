#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "laurent/decomposition.hpp"
#include "laurent/jacobi.hpp"

namespace laurent::io {

using Json = nlohmann::ordered_json;

/// "%.16e": 17 significant digits, lowercase scientific, lossless for doubles.
std::string format_double(double x);

/// Serializes with fixed float formatting and insertion-ordered keys, so equal
/// inputs give byte-identical text. Non-finite numbers become null.
std::string dump(const Json& value, int indent = 2);

/// Throws ParseError on unreadable files.
std::string read_text_file(const std::filesystem::path& path);

/// {"d": 2, "coeffs": {"-1": [[[re, im], ...], ...], ...}}; throws ParseError.
BlockLaurentCoefficients parse_coefficients(const std::string& text);
Json coefficients_json(const BlockLaurentCoefficients& coeffs);

/// {"d": 3, "k": 1, "entries": [{"r": 0, "s": 1, "re": ..., "im": ...}, ...]}.
/// Throws ParseError for malformed text and BandViolation for entries off the band.
PeriodicJacobiSpec parse_jacobi(const std::string& text);
Json jacobi_json(const PeriodicJacobiSpec& spec);

Json complex_json(cd value);
Json matrix_json(const CMatrix& M);

/// Array of {"curve": k, "t": ..., "re": ..., "im": ...}.
Json spectrum_json(const std::vector<SpectrumPoint>& points);
std::string spectrum_csv(const std::vector<SpectrumPoint>& points);

/// Rows "grid_index,root_index,w_re,w_im,re,im".
std::string jacobi_spectrum_csv(const JacobiSpectrum& spectrum);
/// Rows "grid_index,t,re,im".
std::string ellipse_csv(const std::vector<cd>& points);

/// Files staged in memory and committed together: each is written to a
/// temporary sibling and renamed into place. Nothing is written before commit().
class ArtifactSet {
 public:
  void add(const std::string& name, std::string content);
  void add_json(const std::string& name, const Json& value);
  const std::map<std::string, std::string>& files() const { return files_; }

  /// Creates dir if needed. On failure removes its temporaries and any files
  /// already renamed into place, then throws InvalidArgument.
  void commit(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> files_;
};

}  // namespace laurent::io
