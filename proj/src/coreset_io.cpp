#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "gcoreset/coreset.hpp"

namespace gcoreset {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError(what + " at line " + std::to_string(line_no));
}

template <class T>
T parse_number(std::string_view tok, std::size_t line_no, const char* what) {
  tok = trim(tok);
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    fail(line_no, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

void write_point_csv(std::ostream& out, const WeightedPointSet& points) {
  out << "vertex_id,weight\n";
  for (std::size_t i = 0; i < points.size(); ++i) out << points.id(i) << ',' << format_double(points.weight(i)) << '\n';
}

WeightedPointSet read_point_csv(std::istream& in) {
  std::vector<VertexId> ids;
  std::vector<double> weights;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (ids.empty() && s.rfind("vertex_id", 0) == 0) continue;
    const std::size_t comma = s.find(',');
    const auto id = parse_number<std::uint64_t>(s.substr(0, comma), line_no, "vertex id");
    if (id >= kNoVertex) fail(line_no, "vertex id out of range");
    double w = 1.0;
    if (comma != std::string_view::npos) {
      w = parse_number<double>(s.substr(comma + 1), line_no, "weight");
      if (!(w > 0.0) || !std::isfinite(w)) fail(line_no, "weight must be positive");
    }
    ids.push_back(static_cast<VertexId>(id));
    weights.push_back(w);
  }
  try {
    return {std::move(ids), std::move(weights)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

WeightedPointSet load_point_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open point file '" + path.string() + "'");
  try {
    return read_point_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_metadata(std::ostream& out, const CoresetMetadata& meta) {
  out << "seed=" << meta.seed << '\n'
      << "N=" << meta.samples << '\n'
      << "k=" << meta.k << '\n'
      << "rho=" << format_double(meta.rho) << '\n'
      << "sigma_X=" << format_double(meta.sigma_total) << '\n';
}

CoresetMetadata read_metadata(std::istream& in) {
  CoresetMetadata meta;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key=value");
    const std::string_view key = trim(s.substr(0, eq));
    const std::string_view value = s.substr(eq + 1);
    if (key == "seed") {
      meta.seed = parse_number<std::uint64_t>(value, line_no, "seed");
    } else if (key == "N") {
      meta.samples = parse_number<std::size_t>(value, line_no, "N");
    } else if (key == "k") {
      meta.k = parse_number<std::size_t>(value, line_no, "k");
    } else if (key == "rho") {
      meta.rho = parse_number<double>(value, line_no, "rho");
    } else if (key == "sigma_X") {
      meta.sigma_total = parse_number<double>(value, line_no, "sigma_X");
    } else {
      fail(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  return meta;
}

}  // namespace gcoreset
