#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srt/pipeline.hpp"

namespace srt {

struct Check {
  std::string module, name;
  bool passed = true;
  bool asserted = true;  // false: reported only (hypothesis not met or resource limit)
  double worst = 0.0;    // worst observed value of the checked quantity
  double limit = 0.0;
  int samples = 0;
  std::string note;
};

struct InvariantReport {
  std::string label;
  std::vector<Check> checks;
  Analysis analysis;
  bool ok() const;
  int failures() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20251014;
  int random_pairs = 50;
  int hardy_n = 512;
  double p = 2.0;
  AnalysisOptions analysis;
};

InvariantReport run_invariants(const CoefficientSpec& spec, const Window& window, const VerifyOptions& opt = {});

}  // namespace srt
