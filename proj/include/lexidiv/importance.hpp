#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lexidiv/matrix.hpp"
#include "lexidiv/svm.hpp"

namespace lexidiv::classify {

inline constexpr std::size_t kImportanceRepeats = 50;

// Mean dropout loss per feature: average increase of the 0-1 loss when that
// column of the raw data is shuffled, over `repeats` shuffles. Each
// (feature, repeat) shuffle has its own seed, so the OpenMP and serial
// versions agree exactly.
std::vector<double> permutation_importance(const SvmModel& model, const Matrix& raw, std::span<const std::size_t> y,
                                           std::size_t repeats, std::uint64_t seed);
std::vector<double> permutation_importance_serial(const SvmModel& model, const Matrix& raw,
                                                  std::span<const std::size_t> y, std::size_t repeats,
                                                  std::uint64_t seed);

}  // namespace lexidiv::classify
