#pragma once

#include <span>
#include <string>
#include <vector>

namespace lexidiv::classify {

struct ClassMetrics {
  std::string label;
  std::size_t support = 0;  // observed count
  double accuracy = 0.0;    // share of the class's observed rows predicted correctly
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<std::string> classes;
  std::vector<std::vector<std::size_t>> confusion;  // [observed][predicted]
  std::vector<ClassMetrics> per_class;
  // Support-weighted precision, recall and F1; accuracy is trace / total.
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t total = 0;
};

// Throws DimensionError on length mismatch or empty input.
EvalReport evaluate(std::span<const std::size_t> predicted, std::span<const std::size_t> truth,
                    std::vector<std::string> classes);

// Metrics from an existing confusion matrix (rows observed, columns predicted).
EvalReport evaluate_confusion(std::vector<std::vector<std::size_t>> confusion, std::vector<std::string> classes);

}  // namespace lexidiv::classify
