#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexidiv/matrix.hpp"

namespace lexidiv::classify {

// z-score parameters estimated on the training partition only.
struct FeatureScaler {
  std::vector<std::string> features;
  std::vector<double> mean;
  std::vector<double> sd;  // sample sd, n - 1 denominator; always > 0
};

// Throws ScalingError naming the feature when a column is constant (or the
// data has fewer than two rows).
FeatureScaler fit_scaler(const Matrix& train, std::vector<std::string> feature_names);
Matrix apply_scaler(const FeatureScaler& scaler, const Matrix& x);
std::vector<double> apply_scaler(const FeatureScaler& scaler, std::span<const double> x);

// Linear soft-margin SVM trained on one class pair. The positive side is the
// pair's earlier class.
struct BinaryMachine {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::vector<double> weights;
  double bias = 0.0;

  double decision(std::span<const double> scaled) const;
};

struct BinarySolution {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> alpha;  // dual coefficients, each in [0, C]
  double kkt_violation = 0.0;  // max violating-pair gap on exit
  std::size_t iterations = 0;
  bool converged = false;
};

// SMO on the dual with a linear kernel: maximal-violating-pair working-set
// selection with second-order gain, stopping once the violation < tol.
// `y` holds +1/-1.
BinarySolution solve_binary(const Matrix& x, std::span<const int> y, double cost, double tol);

struct SvmOptions {
  std::vector<double> cost_grid = {0.5, 1.0, 2.0, 3.0, 4.0, 5.0};
  double tolerance = 0.001;
  // Epsilon-insensitive loss width; only meaningful for regression and kept
  // in the model for the record.
  double epsilon = 0.01;
};

struct SvmModel {
  std::vector<std::string> classes;
  FeatureScaler scaler;
  std::vector<BinaryMachine> machines;  // pairs (a, b), a < b, row-major order
  double cost = 0.0;
  double tolerance = 0.001;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
};

// All k(k-1)/2 class-pair machines on scaled data; y[i] < num_classes. The
// OpenMP variant trains pairs concurrently and returns exactly what the
// serial reference returns. Throws TrainingError when a class has no rows.
std::vector<BinaryMachine> fit_one_vs_one(const Matrix& x, std::span<const std::size_t> y, std::size_t num_classes,
                                          double cost, double tol);
std::vector<BinaryMachine> fit_one_vs_one_serial(const Matrix& x, std::span<const std::size_t> y,
                                                 std::size_t num_classes, double cost, double tol);

// Majority vote over scaled features; ties go to the earliest class.
std::size_t vote(std::span<const BinaryMachine> machines, std::size_t num_classes, std::span<const double> scaled);

struct CostTrial {
  double cost = 0.0;
  double validation_accuracy = 0.0;
};

struct TrainResult {
  SvmModel model;
  std::vector<CostTrial> trials;
};

// Tries every grid cost on the scaled training rows and keeps the one with
// the best validation accuracy (ties to the larger cost). With an empty
// validation set the largest grid cost is used.
TrainResult svm_train(const FeatureScaler& scaler, const Matrix& train_scaled, std::span<const std::size_t> train_y,
                      const Matrix& validation_scaled, std::span<const std::size_t> validation_y,
                      std::vector<std::string> classes, const SvmOptions& options = {});

// Class index for one raw (unscaled) feature row. Throws DimensionError.
std::size_t svm_predict(const SvmModel& model, std::span<const double> raw);
std::vector<std::size_t> svm_predict(const SvmModel& model, const Matrix& raw);

std::string to_json(const SvmModel& model);
SvmModel model_from_json(std::string_view text);

}  // namespace lexidiv::classify
