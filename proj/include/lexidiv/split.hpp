#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace lexidiv::classify {

struct SplitSpec {
  double train_fraction = 0.64;
  double validation_fraction = 0.16;
  double test_fraction = 0.20;
  std::uint64_t seed = 0;
  bool stratified = true;
};

// Throws ValidationError unless fractions are >= 0 and sum to 1 (1e-9).
void validate(const SplitSpec& spec);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

// Partition sizes for n items by the largest-remainder method; ties go to
// the earlier partition.
std::array<std::size_t, 3> partition_sizes(std::size_t n, const SplitSpec& spec);

// Disjoint, exhaustive partition of record indices 0..n-1 (index vectors are
// ascending). `class_of[i]` < num_classes. Stratified mode gives every class
// the floor or ceiling of its share of each partition (largest remainders
// first) while keeping the overall partition sizes; it throws SplitError when
// a class has no records.
Split split(std::span<const std::size_t> class_of, std::size_t num_classes, const SplitSpec& spec);

}  // namespace lexidiv::classify
