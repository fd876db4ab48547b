#pragma once

// Self-check suite behind `kdessin verify`.

#include "kd/corpus.hpp"
#include "kd/invariants.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kd {

struct PropertyResult {
  std::string name;
  bool passed = true;
  long checks = 0;
  std::string detail;  // first failure
};

struct VerifyOptions {
  EngineOptions engine;
  int random_count = 40;
  int max_crossings = 10;
  std::uint64_t seed = 20240601;
};

std::vector<PropertyResult> run_verify(const KnotTable& table, const VerifyOptions& opts = {});

}  // namespace kd
