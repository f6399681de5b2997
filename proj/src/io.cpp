#include "laurent/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace laurent::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

int parse_index(const std::string& key) {
  int value = 0;
  const char* first = key.data();
  const char* last = key.data() + key.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) parse_fail("coefficient key '" + key + "' is not an integer");
  return value;
}

int require_int(const Json& obj, const char* name) {
  if (!obj.contains(name)) parse_fail(std::string("missing field '") + name + "'");
  const Json& v = obj.at(name);
  if (!v.is_number_integer()) parse_fail(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

double require_number(const Json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where + " must be a number");
  return v.get<double>();
}

CMatrix parse_matrix(const Json& rows, int d, const std::string& where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != d)
    parse_fail(where + " must be an array of " + std::to_string(d) + " rows");
  CMatrix M(d, d);
  for (int r = 0; r < d; ++r) {
    const Json& row = rows[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      parse_fail(where + " row " + std::to_string(r) + " must hold " + std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) {
      const Json& e = row[static_cast<size_t>(c)];
      const std::string at = where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2) parse_fail(at + " must be a [re, im] pair");
      M(r, c) = cd(require_number(e[0], at), require_number(e[1], at));
    }
  }
  return M;
}

Json parse_root(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) parse_fail("top-level JSON value must be an object");
  return root;
}

void dump_into(std::string& out, const Json& v, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<size_t>(indent * level), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_into(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat && pretty ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_into(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += std::isfinite(v.get<double>()) ? format_double(v.get<double>()) : "null";
      return;
    default:
      out += v.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string dump(const Json& value, int indent) {
  std::string out;
  dump_into(out, value, indent, 0);
  out += '\n';
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BlockLaurentCoefficients parse_coefficients(const std::string& text) {
  const Json root = parse_root(text);
  const int d = require_int(root, "d");
  if (d <= 0) parse_fail("block dimension d must be positive");
  if (!root.contains("coeffs") || !root.at("coeffs").is_object()) parse_fail("field 'coeffs' must be an object");
  BlockLaurentCoefficients out(d);
  for (const auto& [key, rows] : root.at("coeffs").items()) {
    const int n = parse_index(key);
    if (out.contains(n)) parse_fail("duplicate coefficient index " + std::to_string(n));
    out.set(n, parse_matrix(rows, d, "coeffs[\"" + key + "\"]"));
  }
  return out;
}

Json complex_json(cd value) { return Json::array({value.real(), value.imag()}); }

Json matrix_json(const CMatrix& M) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(complex_json(M(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json coefficients_json(const BlockLaurentCoefficients& coeffs) {
  Json blocks = Json::object();
  for (const auto& [n, block] : coeffs.blocks()) blocks[std::to_string(n)] = matrix_json(block);
  Json out = Json::object();
  out["d"] = coeffs.dim();
  out["coeffs"] = std::move(blocks);
  return out;
}

PeriodicJacobiSpec parse_jacobi(const std::string& text) {
  const Json root = parse_root(text);
  const int d = require_int(root, "d");
  const int k = require_int(root, "k");
  if (d <= 0 || k <= 0) parse_fail("period d and order k must be positive");
  if (!root.contains("entries") || !root.at("entries").is_array()) parse_fail("field 'entries' must be an array");
  std::map<std::pair<int, int>, cd> entries;
  size_t index = 0;
  for (const auto& e : root.at("entries")) {
    const std::string where = "entries[" + std::to_string(index++) + "]";
    if (!e.is_object()) parse_fail(where + " must be an object");
    const int r = require_int(e, "r");
    const int s = require_int(e, "s");
    if (!e.contains("re")) parse_fail(where + " is missing 're'");
    const double re = require_number(e.at("re"), where + ".re");
    const double im = e.contains("im") ? require_number(e.at("im"), where + ".im") : 0.0;
    if (!entries.emplace(std::make_pair(r, s), cd(re, im)).second)
      parse_fail(where + " repeats entry (" + std::to_string(r) + ", " + std::to_string(s) + ")");
  }
  return PeriodicJacobiSpec(d, k, std::move(entries));
}

Json jacobi_json(const PeriodicJacobiSpec& spec) {
  Json entries = Json::array();
  for (const auto& [rs, value] : spec.entries())
    entries.push_back({{"r", rs.first}, {"s", rs.second}, {"re", value.real()}, {"im", value.imag()}});
  Json out = Json::object();
  out["d"] = spec.period();
  out["k"] = spec.order();
  out["entries"] = std::move(entries);
  return out;
}

Json spectrum_json(const std::vector<SpectrumPoint>& points) {
  Json out = Json::array();
  for (const auto& p : points)
    out.push_back({{"curve", p.curve}, {"t", p.t}, {"re", p.value.real()}, {"im", p.value.imag()}});
  return out;
}

std::string spectrum_csv(const std::vector<SpectrumPoint>& points) {
  std::string out = "curve,t,re,im\n";
  for (const auto& p : points)
    out += std::to_string(p.curve) + "," + format_double(p.t) + "," + format_double(p.value.real()) + "," +
           format_double(p.value.imag()) + "\n";
  return out;
}

std::string jacobi_spectrum_csv(const JacobiSpectrum& spectrum) {
  std::string out = "grid_index,root_index,w_re,w_im,re,im\n";
  for (const auto& p : spectrum.points)
    out += std::to_string(p.grid_index) + "," + std::to_string(p.root_index) + "," + format_double(p.w.real()) + "," +
           format_double(p.w.imag()) + "," + format_double(p.lambda.real()) + "," + format_double(p.lambda.imag()) +
           "\n";
  return out;
}

std::string ellipse_csv(const std::vector<cd>& points) {
  std::string out = "grid_index,t,re,im\n";
  const int N = static_cast<int>(points.size());
  for (int j = 0; j < N; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(N);
    const cd w = points[static_cast<size_t>(j)];
    out += std::to_string(j) + "," + format_double(t) + "," + format_double(w.real()) + "," + format_double(w.imag()) +
           "\n";
  }
  return out;
}

void ArtifactSet::add(const std::string& name, std::string content) { files_[name] = std::move(content); }

void ArtifactSet::add_json(const std::string& name, const Json& value) { add(name, dump(value)); }

void ArtifactSet::commit(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::InvalidArgument, "cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string suffix = ".tmp." + std::to_string(::getpid());
  std::vector<fs::path> staged;
  auto discard = [&] {
    for (const auto& p : staged) fs::remove(p, ec);
  };
  for (const auto& [name, content] : files_) {
    const fs::path tmp = dir / ("." + name + suffix);
    staged.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      discard();
      throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    }
  }
  // Destinations that cannot take a file would fail halfway through the renames.
  for (const auto& [name, content] : files_)
    if (fs::exists(dir / name) && !fs::is_regular_file(dir / name)) {
      discard();
      throw Error(ErrorCode::InvalidArgument, "cannot replace " + (dir / name).string() + ": not a regular file");
    }
  size_t i = 0;
  std::vector<fs::path> placed;
  for (const auto& [name, content] : files_) {
    fs::rename(staged[i], dir / name, ec);
    if (ec) {
      std::error_code ignore;
      for (size_t k = i; k < staged.size(); ++k) fs::remove(staged[k], ignore);
      for (const auto& p : placed) fs::remove(p, ignore);
      throw Error(ErrorCode::InvalidArgument, "cannot rename into " + (dir / name).string() + ": " + ec.message());
    }
    placed.push_back(dir / name);
    ++i;
  }
}

}  // namespace laurent::io
