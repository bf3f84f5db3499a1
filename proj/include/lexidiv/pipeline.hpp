#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexidiv/corpus.hpp"
#include "lexidiv/evaluate.hpp"
#include "lexidiv/importance.hpp"
#include "lexidiv/matrix.hpp"
#include "lexidiv/measures.hpp"
#include "lexidiv/rng.hpp"
#include "lexidiv/split.hpp"
#include "lexidiv/svm.hpp"

namespace lexidiv::classify {

// Feature matrix and class indices for the rows that carry the dependent
// variable. Classes appear in canonical order.
struct LabeledData {
  std::vector<std::string> ids;
  std::vector<std::string> feature_names;
  std::vector<std::string> classes;
  Matrix x;
  std::vector<std::size_t> y;
};

// Throws ValidationError when no row carries the variable or fewer than two
// classes remain.
LabeledData select(std::span<const measures::ProfiledText> rows, corpus::DependentVariable dv,
                   std::span<const measures::Measure> features);

struct PipelineOptions {
  SplitSpec split;  // seed field ignored, derived from `seed`
  std::uint64_t seed = kDefaultSeed;
  std::size_t importance_repeats = kImportanceRepeats;
  SvmOptions svm;
};

struct ClassificationResult {
  corpus::DependentVariable dv = corpus::DependentVariable::writer_type;
  std::vector<std::string> feature_names;
  std::array<std::size_t, 3> partition_sizes{};
  std::vector<CostTrial> trials;
  SvmModel model;
  double train_accuracy = 0.0;
  EvalReport test;
  std::vector<double> importance;  // mean dropout loss on the test set
  std::vector<std::string> test_ids;
  std::vector<std::size_t> test_predictions;
};

// split -> scale (train moments) -> cost-grid training -> test evaluation ->
// permutation importance.
ClassificationResult run_classification(std::span<const measures::ProfiledText> rows, corpus::DependentVariable dv,
                                        std::span<const measures::Measure> features, const PipelineOptions& options);

}  // namespace lexidiv::classify
