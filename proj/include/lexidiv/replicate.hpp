#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexidiv/rng.hpp"

namespace lexidiv::replicate {

struct Criterion {
  std::string id;      // e.g. "3a"
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against the threshold
};

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::size_t seed_sweep = 10;  // seeds seed, seed+1, ... for the Monte-Carlo checks
  std::size_t n_per_group = 30;
};

struct Summary {
  std::uint64_t seed = 0;
  std::vector<Criterion> criteria;

  bool all_passed() const;
};

// Simulate -> stats -> classify over the published moments and check the
// formula anchors, separability, chance-level controls and the twelve-group
// design against their thresholds. Pure given the options.
Summary run(const Options& options);

std::string to_text(const Summary& s);
std::string to_json(const Summary& s);

}  // namespace lexidiv::replicate
