#pragma once

#include <sstream>
#include <string>

namespace srt::log {

enum class Level { quiet = 0, warn = 1, info = 2, debug = 3 };

// Verbosity from the SRT_LOG environment variable (quiet|warn|info|debug or 0-3).
Level level();
void emit(Level lvl, const std::string& msg);

template <typename... Args>
void warn(const Args&... args) {
  if (level() < Level::warn) return;
  std::ostringstream os;
  (os << ... << args);
  emit(Level::warn, os.str());
}

template <typename... Args>
void info(const Args&... args) {
  if (level() < Level::info) return;
  std::ostringstream os;
  (os << ... << args);
  emit(Level::info, os.str());
}

template <typename... Args>
void debug(const Args&... args) {
  if (level() < Level::debug) return;
  std::ostringstream os;
  (os << ... << args);
  emit(Level::debug, os.str());
}

}  // namespace srt::log
