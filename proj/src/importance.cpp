#include "lexidiv/importance.hpp"

#include <algorithm>
#include <numeric>

#include "lexidiv/error.hpp"
#include "lexidiv/rng.hpp"

namespace lexidiv::classify {

namespace {

double zero_one_loss(const SvmModel& model, const Matrix& raw, std::span<const std::size_t> y) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < raw.rows(); ++i) wrong += svm_predict(model, raw.row(i)) != y[i];
  return static_cast<double>(wrong) / static_cast<double>(raw.rows());
}

double shuffled_loss(const SvmModel& model, const Matrix& raw, std::span<const std::size_t> y, std::size_t feature,
                     std::size_t repeat, std::uint64_t seed) {
  Engine rng(derive_seed(seed, feature, repeat));
  std::vector<std::size_t> perm(raw.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix shuffled = raw;
  for (std::size_t i = 0; i < raw.rows(); ++i) shuffled(i, feature) = raw(perm[i], feature);
  return zero_one_loss(model, shuffled, y);
}

void check(const Matrix& raw, std::span<const std::size_t> y, std::size_t repeats) {
  if (raw.rows() == 0) throw ValidationError("permutation importance needs data");
  if (raw.rows() != y.size()) throw DimensionError("feature rows and labels differ in length");
  if (repeats == 0) throw ValidationError("permutation importance needs at least one repeat");
}

}  // namespace

std::vector<double> permutation_importance_serial(const SvmModel& model, const Matrix& raw,
                                                  std::span<const std::size_t> y, std::size_t repeats,
                                                  std::uint64_t seed) {
  check(raw, y, repeats);
  const double baseline = zero_one_loss(model, raw, y);
  std::vector<double> out(raw.cols(), 0.0);
  for (std::size_t f = 0; f < raw.cols(); ++f) {
    double sum = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) sum += shuffled_loss(model, raw, y, f, r, seed) - baseline;
    out[f] = sum / static_cast<double>(repeats);
  }
  return out;
}

std::vector<double> permutation_importance(const SvmModel& model, const Matrix& raw, std::span<const std::size_t> y,
                                           std::size_t repeats, std::uint64_t seed) {
  check(raw, y, repeats);
  const double baseline = zero_one_loss(model, raw, y);
  const std::size_t p = raw.cols();
  std::vector<double> increase(p * repeats, 0.0);
  const auto jobs = static_cast<std::ptrdiff_t>(p * repeats);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < jobs; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    increase[idx] = shuffled_loss(model, raw, y, idx / repeats, idx % repeats, seed) - baseline;
  }
  // Summed in the serial order so both versions round identically.
  std::vector<double> out(p, 0.0);
  for (std::size_t f = 0; f < p; ++f) {
    double sum = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) sum += increase[f * repeats + r];
    out[f] = sum / static_cast<double>(repeats);
  }
  return out;
}

}  // namespace lexidiv::classify
