#include "srt/errors.hpp"
#include "srt/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace srt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_coefficient: return "invalid-coefficient";
    case ErrorKind::malformed_table: return "malformed-table";
    case ErrorKind::no_finite_root: return "no-finite-root";
    case ErrorKind::window_exhausted: return "window-exhausted";
    case ErrorKind::fss_construction: return "fss-construction";
    case ErrorKind::unsupported_preset: return "unsupported-preset";
    case ErrorKind::r_not_one: return "r-not-identically-one";
    case ErrorKind::covering_failure: return "covering-failure";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

namespace log {

Level level() {
  static const Level cached = [] {
    const char* env = std::getenv("SRT_LOG");
    if (env == nullptr) return Level::warn;
    std::string v(env);
    if (v == "quiet" || v == "0") return Level::quiet;
    if (v == "info" || v == "2") return Level::info;
    if (v == "debug" || v == "3") return Level::debug;
    return Level::warn;
  }();
  return cached;
}

void emit(Level lvl, const std::string& msg) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const char* tag = lvl == Level::warn ? "warn" : lvl == Level::info ? "info" : "debug";
  std::cerr << "[srt:" << tag << "] " << msg << '\n';
}

}  // namespace log
}  // namespace srt
