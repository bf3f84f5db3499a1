#include "lexidiv/svm.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <json.hpp>

#include "lexidiv/error.hpp"

namespace lexidiv::classify {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double correct_fraction(std::span<const std::size_t> predicted, std::span<const std::size_t> truth) {
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

struct PairJob {
  std::size_t a = 0;
  std::size_t b = 0;
};

std::vector<PairJob> pair_jobs(std::size_t k) {
  std::vector<PairJob> jobs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) jobs.push_back({a, b});
  return jobs;
}

void check_classes_present(std::span<const std::size_t> y, std::size_t k) {
  if (k < 2) throw TrainingError("training needs at least 2 classes");
  std::vector<std::size_t> count(k, 0);
  for (auto c : y) {
    if (c >= k) throw TrainingError("class index out of range");
    ++count[c];
  }
  for (std::size_t c = 0; c < k; ++c)
    if (count[c] == 0) throw TrainingError("class " + std::to_string(c) + " has no training rows");
}

BinaryMachine fit_pair(const Matrix& x, std::span<const std::size_t> y, PairJob job, double cost, double tol) {
  Matrix rows;
  std::vector<int> sign;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (y[i] == job.a || y[i] == job.b) {
      rows.append_row(x.row(i));
      sign.push_back(y[i] == job.a ? +1 : -1);
    }
  }
  auto sol = solve_binary(rows, sign, cost, tol);
  return {job.a, job.b, std::move(sol.weights), sol.bias};
}

}  // namespace

FeatureScaler fit_scaler(const Matrix& train, std::vector<std::string> feature_names) {
  const std::size_t p = train.cols();
  if (feature_names.size() != p) throw DimensionError("feature name count does not match column count");
  if (train.rows() < 2) throw ScalingError("scaling needs at least 2 training rows");
  FeatureScaler s;
  s.features = std::move(feature_names);
  s.mean.assign(p, 0.0);
  s.sd.assign(p, 0.0);
  const double n = static_cast<double>(train.rows());
  for (std::size_t j = 0; j < p; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < train.rows(); ++i) m += train(i, j);
    m /= n;
    double ss = 0.0;
    for (std::size_t i = 0; i < train.rows(); ++i) ss += (train(i, j) - m) * (train(i, j) - m);
    const double sd = std::sqrt(ss / (n - 1.0));
    if (!(sd > 0.0) || sd <= 1e-12 * std::max(1.0, std::fabs(m)))
      throw ScalingError("feature '" + s.features[j] + "' is constant on the training set");
    s.mean[j] = m;
    s.sd[j] = sd;
  }
  return s;
}

std::vector<double> apply_scaler(const FeatureScaler& scaler, std::span<const double> x) {
  if (x.size() != scaler.mean.size())
    throw DimensionError("expected " + std::to_string(scaler.mean.size()) + " features, got " +
                         std::to_string(x.size()));
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - scaler.mean[j]) / scaler.sd[j];
  return out;
}

Matrix apply_scaler(const FeatureScaler& scaler, const Matrix& x) {
  if (!x.empty() && x.cols() != scaler.mean.size())
    throw DimensionError("expected " + std::to_string(scaler.mean.size()) + " features, got " +
                         std::to_string(x.cols()));
  Matrix out(x.rows(), scaler.mean.size());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = (x(i, j) - scaler.mean[j]) / scaler.sd[j];
  return out;
}

double BinaryMachine::decision(std::span<const double> scaled) const {
  double s = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * scaled[j];
  return s;
}

BinarySolution solve_binary(const Matrix& x, std::span<const int> y, double cost, double tol) {
  const std::size_t l = x.rows();
  const std::size_t p = x.cols();
  if (l == 0 || y.size() != l) throw TrainingError("binary training set is empty or mislabeled");
  if (std::none_of(y.begin(), y.end(), [](int v) { return v > 0; }) ||
      std::none_of(y.begin(), y.end(), [](int v) { return v < 0; }))
    throw TrainingError("binary training set needs examples on both sides");

  // Q_ij = y_i y_j <x_i, x_j>
  Matrix q(l, l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i; j < l; ++j) {
      double k = 0.0;
      for (std::size_t c = 0; c < p; ++c) k += x(i, c) * x(j, c);
      q(i, j) = q(j, i) = y[i] * y[j] * k;
    }
  }

  BinarySolution sol;
  auto& alpha = sol.alpha;
  alpha.assign(l, 0.0);
  std::vector<double> grad(l, -1.0);
  const std::size_t max_iter = std::max<std::size_t>(10'000'000, 100 * l);
  auto upper = [&](std::size_t t) { return alpha[t] >= cost; };
  auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  while (sol.iterations < max_iter) {
    // i: maximal violator in I_up.
    double gmax = -kInf;
    std::size_t i = l;
    for (std::size_t t = 0; t < l; ++t) {
      const double v = y[t] > 0 ? (!upper(t) ? -grad[t] : -kInf) : (!lower(t) ? grad[t] : -kInf);
      if (v >= gmax && v > -kInf) {
        gmax = v;
        i = t;
      }
    }
    // j: second-order choice in I_low.
    double gmax2 = -kInf, best = kInf;
    std::size_t j = l;
    for (std::size_t t = 0; t < l; ++t) {
      if (y[t] > 0 ? lower(t) : upper(t)) continue;
      const double yg = y[t] > 0 ? grad[t] : -grad[t];
      gmax2 = std::max(gmax2, yg);
      if (i == l) continue;
      const double diff = gmax + yg;
      if (diff > 0.0) {
        const double quad = q(i, i) + q(t, t) - 2.0 * y[i] * y[t] * q(i, t);
        const double gain = -(diff * diff) / (quad > 0.0 ? quad : kTau);
        if (gain <= best) {
          best = gain;
          j = t;
        }
      }
    }
    sol.kkt_violation = (i == l || gmax2 == -kInf) ? 0.0 : gmax + gmax2;
    if (i == l || j == l || sol.kkt_violation < tol) {
      sol.converged = true;
      break;
    }
    ++sol.iterations;

    const double old_i = alpha[i], old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > cost) {
          alpha[i] = cost;
          alpha[j] = cost - diff;
        }
      } else if (alpha[j] > cost) {
        alpha[j] = cost;
        alpha[i] = cost + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > cost) {
        if (alpha[i] > cost) {
          alpha[i] = cost;
          alpha[j] = sum - cost;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > cost) {
        if (alpha[j] > cost) {
          alpha[j] = cost;
          alpha[i] = sum - cost;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i, dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < l; ++t) grad[t] += q(i, t) * di + q(j, t) * dj;
  }

  // Bias from free vectors, or the midpoint of the feasible interval.
  double ub = kInf, lb = -kInf, sum_free = 0.0;
  std::size_t free = 0;
  for (std::size_t t = 0; t < l; ++t) {
    const double yg = y[t] * grad[t];
    if (upper(t)) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++free;
      sum_free += yg;
    }
  }
  const double rho = free > 0 ? sum_free / static_cast<double>(free) : (ub + lb) / 2.0;
  sol.bias = -rho;
  sol.weights.assign(p, 0.0);
  for (std::size_t t = 0; t < l; ++t)
    for (std::size_t c = 0; c < p; ++c) sol.weights[c] += alpha[t] * y[t] * x(t, c);
  return sol;
}

std::vector<BinaryMachine> fit_one_vs_one_serial(const Matrix& x, std::span<const std::size_t> y,
                                                 std::size_t num_classes, double cost, double tol) {
  check_classes_present(y, num_classes);
  std::vector<BinaryMachine> machines;
  for (const auto& job : pair_jobs(num_classes)) machines.push_back(fit_pair(x, y, job, cost, tol));
  return machines;
}

std::vector<BinaryMachine> fit_one_vs_one(const Matrix& x, std::span<const std::size_t> y, std::size_t num_classes,
                                          double cost, double tol) {
  check_classes_present(y, num_classes);
  const auto jobs = pair_jobs(num_classes);
  std::vector<BinaryMachine> machines(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      machines[idx] = fit_pair(x, y, jobs[idx], cost, tol);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return machines;
}

std::size_t vote(std::span<const BinaryMachine> machines, std::size_t num_classes, std::span<const double> scaled) {
  std::vector<std::size_t> votes(num_classes, 0);
  for (const auto& m : machines) ++votes[m.decision(scaled) >= 0.0 ? m.positive : m.negative];
  return static_cast<std::size_t>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

TrainResult svm_train(const FeatureScaler& scaler, const Matrix& train_scaled, std::span<const std::size_t> train_y,
                      const Matrix& validation_scaled, std::span<const std::size_t> validation_y,
                      std::vector<std::string> classes, const SvmOptions& options) {
  if (options.cost_grid.empty()) throw TrainingError("cost grid is empty");
  const std::size_t k = classes.size();
  TrainResult result;
  std::vector<BinaryMachine> best;
  double best_cost = 0.0, best_acc = -1.0;
  for (double c : options.cost_grid) {
    auto machines = fit_one_vs_one(train_scaled, train_y, k, c, options.tolerance);
    std::vector<std::size_t> pred(validation_y.size());
    for (std::size_t i = 0; i < validation_y.size(); ++i) pred[i] = vote(machines, k, validation_scaled.row(i));
    const double acc = validation_y.empty() ? 0.0 : correct_fraction(pred, validation_y);
    result.trials.push_back({c, acc});
    if (acc > best_acc || (acc == best_acc && c > best_cost)) {
      best_acc = acc;
      best_cost = c;
      best = std::move(machines);
    }
  }
  auto& m = result.model;
  m.classes = std::move(classes);
  m.scaler = scaler;
  m.machines = std::move(best);
  m.cost = best_cost;
  m.tolerance = options.tolerance;
  m.epsilon = options.epsilon;
  return result;
}

std::size_t svm_predict(const SvmModel& model, std::span<const double> raw) {
  const auto scaled = apply_scaler(model.scaler, raw);
  return vote(model.machines, model.classes.size(), scaled);
}

std::vector<std::size_t> svm_predict(const SvmModel& model, const Matrix& raw) {
  std::vector<std::size_t> out;
  out.reserve(raw.rows());
  for (std::size_t i = 0; i < raw.rows(); ++i) out.push_back(svm_predict(model, raw.row(i)));
  return out;
}

std::string to_json(const SvmModel& model) {
  nlohmann::ordered_json doc;
  doc["kernel"] = "linear";
  doc["classes"] = model.classes;
  doc["features"] = model.scaler.features;
  doc["scaler"] = {{"mean", model.scaler.mean}, {"sd", model.scaler.sd}};
  doc["cost"] = model.cost;
  doc["tolerance"] = model.tolerance;
  doc["epsilon"] = model.epsilon;
  doc["seed"] = model.seed;
  auto machines = nlohmann::ordered_json::array();
  for (const auto& m : model.machines) {
    machines.push_back(nlohmann::ordered_json{{"positive", model.classes[m.positive]},
                                              {"negative", model.classes[m.negative]},
                                              {"weights", m.weights},
                                              {"bias", m.bias}});
  }
  doc["machines"] = std::move(machines);
  return doc.dump(2) + "\n";
}

SvmModel model_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    SvmModel m;
    m.classes = doc.at("classes").get<std::vector<std::string>>();
    m.scaler.features = doc.at("features").get<std::vector<std::string>>();
    m.scaler.mean = doc.at("scaler").at("mean").get<std::vector<double>>();
    m.scaler.sd = doc.at("scaler").at("sd").get<std::vector<double>>();
    m.cost = doc.at("cost").get<double>();
    m.tolerance = doc.at("tolerance").get<double>();
    m.epsilon = doc.at("epsilon").get<double>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    auto index_of = [&](const std::string& label) {
      auto it = std::find(m.classes.begin(), m.classes.end(), label);
      if (it == m.classes.end()) throw ParseError("model machine refers to unknown class '" + label + "'");
      return static_cast<std::size_t>(it - m.classes.begin());
    };
    for (const auto& jm : doc.at("machines")) {
      BinaryMachine bm;
      bm.positive = index_of(jm.at("positive").get<std::string>());
      bm.negative = index_of(jm.at("negative").get<std::string>());
      bm.weights = jm.at("weights").get<std::vector<double>>();
      bm.bias = jm.at("bias").get<double>();
      if (bm.weights.size() != m.scaler.features.size()) throw ParseError("model weight vector has wrong length");
      m.machines.push_back(std::move(bm));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid model JSON: ") + e.what());
  }
}

}  // namespace lexidiv::classify
