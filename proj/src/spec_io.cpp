#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "srt/coefficients.hpp"
#include "srt/errors.hpp"

namespace srt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    fail(ErrorKind::invalid_argument, "cannot parse " + what + " from '" + t + "'");
  }
  return v;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) fail(ErrorKind::invalid_argument, "spec is missing key '" + key + "'");
  return it->second;
}

double get_or(const std::map<std::string, std::string>& kv, const std::string& key, double dflt) {
  const auto it = kv.find(key);
  return it == kv.end() ? dflt : to_double(it->second, key);
}

}  // namespace

CoefficientSpec parse_spec_text(const std::string& text, const std::string& base_dir) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::invalid_argument, "line " + std::to_string(lineno) + ": expected key=value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  const std::string& kind = require(kv, "kind");
  if (kind == "constant") {
    return CoefficientSpec::constant(get_or(kv, "r0", 1.0), get_or(kv, "q0", 1.0));
  }
  if (kind == "exponential") {
    return CoefficientSpec::exponential(to_double(require(kv, "alpha"), "alpha"),
                                        to_double(require(kv, "beta"), "beta"));
  }
  if (kind == "polynomial-q" || kind == "polynomial") {
    const double k = get_or(kv, "k", 1.0);
    if (k != static_cast<int>(k)) fail(ErrorKind::invalid_argument, "k must be an integer");
    return CoefficientSpec::polynomial_q(static_cast<int>(k));
  }
  if (kind == "tabulated") {
    std::filesystem::path p(require(kv, "path"));
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return load_table_csv(p.string());
  }
  fail(ErrorKind::invalid_argument, "unknown kind '" + kind + "'");
}

CoefficientSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_spec_text(buf.str(), dir.empty() ? "." : dir.string());
}

CoefficientSpec load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open table '" + path + "'");
  std::vector<double> x, r, q;
  std::string line;
  bool header = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream cells(line);
    std::string a, b, c;
    if (!std::getline(cells, a, ',') || !std::getline(cells, b, ',') || !std::getline(cells, c, ',')) {
      fail(ErrorKind::malformed_table, path + ":" + std::to_string(lineno) + ": expected x,r,q");
    }
    const std::string where = path + ":" + std::to_string(lineno);
    x.push_back(to_double(a, "x at " + where));
    r.push_back(to_double(b, "r at " + where));
    q.push_back(to_double(c, "q at " + where));
  }
  return CoefficientSpec::tabulated(std::move(x), std::move(r), std::move(q), path);
}

}  // namespace srt
