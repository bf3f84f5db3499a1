#include "lexidiv/pipeline.hpp"

#include <algorithm>
#include <map>

#include "lexidiv/error.hpp"
#include "lexidiv/rng.hpp"

namespace lexidiv::classify {

namespace {

Matrix take_rows(const Matrix& x, std::span<const std::size_t> idx) {
  Matrix out;
  for (auto i : idx) out.append_row(x.row(i));
  if (idx.empty()) out = Matrix(0, x.cols());
  return out;
}

std::vector<std::size_t> take(std::span<const std::size_t> v, std::span<const std::size_t> idx) {
  std::vector<std::size_t> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

}  // namespace

LabeledData select(std::span<const measures::ProfiledText> rows, corpus::DependentVariable dv,
                   std::span<const measures::Measure> features) {
  if (features.empty()) throw ValidationError("no features selected");
  LabeledData d;
  for (auto f : features) d.feature_names.emplace_back(measures::to_string(f));
  std::vector<std::string> labels;
  std::vector<const measures::ProfiledText*> kept;
  for (const auto& r : rows) {
    if (auto label = corpus::class_label(r.group, dv)) {
      labels.push_back(*label);
      kept.push_back(&r);
    }
  }
  const std::string name(corpus::to_string(dv));
  if (kept.empty()) throw ValidationError("no row carries the dependent variable '" + name + "'");
  d.classes = corpus::canonical_order(labels, dv);
  if (d.classes.size() < 2)
    throw ValidationError("dependent variable '" + name + "' has fewer than 2 classes in the data");
  std::map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < d.classes.size(); ++c) index[d.classes[c]] = c;
  std::vector<double> row(features.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < features.size(); ++j) row[j] = kept[i]->profile.value(features[j]);
    d.x.append_row(row);
    d.y.push_back(index.at(labels[i]));
    d.ids.push_back(kept[i]->id);
  }
  return d;
}

ClassificationResult run_classification(std::span<const measures::ProfiledText> rows, corpus::DependentVariable dv,
                                        std::span<const measures::Measure> features, const PipelineOptions& options) {
  const auto data = select(rows, dv, features);
  SplitSpec spec = options.split;
  spec.seed = derive_seed(options.seed, "split");
  const auto parts = split(data.y, data.classes.size(), spec);
  if (parts.test.empty()) throw ValidationError("test partition is empty");

  const Matrix train_raw = take_rows(data.x, parts.train);
  const Matrix val_raw = take_rows(data.x, parts.validation);
  const Matrix test_raw = take_rows(data.x, parts.test);
  const auto train_y = take(data.y, parts.train);
  const auto val_y = take(data.y, parts.validation);
  const auto test_y = take(data.y, parts.test);

  const auto scaler = fit_scaler(train_raw, data.feature_names);
  const Matrix train_scaled = apply_scaler(scaler, train_raw);
  const Matrix val_scaled = apply_scaler(scaler, val_raw);

  auto trained = svm_train(scaler, train_scaled, train_y, val_scaled, val_y, data.classes, options.svm);
  trained.model.seed = options.seed;

  ClassificationResult r;
  r.dv = dv;
  r.feature_names = data.feature_names;
  r.partition_sizes = {parts.train.size(), parts.validation.size(), parts.test.size()};
  r.trials = std::move(trained.trials);
  r.model = std::move(trained.model);

  const auto train_pred = svm_predict(r.model, train_raw);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < train_y.size(); ++i) hits += train_pred[i] == train_y[i];
  r.train_accuracy = static_cast<double>(hits) / static_cast<double>(train_y.size());

  r.test_predictions = svm_predict(r.model, test_raw);
  r.test = evaluate(r.test_predictions, test_y, data.classes);
  for (auto i : parts.test) r.test_ids.push_back(data.ids[i]);
  r.importance = permutation_importance(r.model, test_raw, test_y, options.importance_repeats,
                                        derive_seed(options.seed, "importance"));
  return r;
}

}  // namespace lexidiv::classify
