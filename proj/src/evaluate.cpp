#include "lexidiv/evaluate.hpp"

#include "lexidiv/error.hpp"

namespace lexidiv::classify {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EvalReport evaluate_confusion(std::vector<std::vector<std::size_t>> confusion, std::vector<std::string> classes) {
  const std::size_t k = classes.size();
  if (confusion.size() != k) throw DimensionError("confusion matrix size does not match class count");
  for (const auto& row : confusion)
    if (row.size() != k) throw DimensionError("confusion matrix must be square");

  EvalReport r;
  r.classes = std::move(classes);
  std::size_t trace = 0;
  std::vector<std::size_t> predicted_count(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      r.total += confusion[a][b];
      predicted_count[b] += confusion[a][b];
      if (a == b) trace += confusion[a][b];
    }
  if (r.total == 0) throw DimensionError("cannot evaluate an empty prediction set");

  for (std::size_t c = 0; c < k; ++c) {
    ClassMetrics m;
    m.label = r.classes[c];
    for (auto v : confusion[c]) m.support += v;
    const std::size_t tp = confusion[c][c];
    m.precision = ratio(tp, predicted_count[c]);
    m.recall = ratio(tp, m.support);
    m.accuracy = m.recall;
    m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    const double w = static_cast<double>(m.support) / static_cast<double>(r.total);
    r.precision += w * m.precision;
    r.recall += w * m.recall;
    r.f1 += w * m.f1;
    r.per_class.push_back(std::move(m));
  }
  r.accuracy = ratio(trace, r.total);
  r.confusion = std::move(confusion);
  return r;
}

EvalReport evaluate(std::span<const std::size_t> predicted, std::span<const std::size_t> truth,
                    std::vector<std::string> classes) {
  if (predicted.size() != truth.size()) throw DimensionError("predictions and truth differ in length");
  if (truth.empty()) throw DimensionError("cannot evaluate an empty prediction set");
  const std::size_t k = classes.size();
  std::vector<std::vector<std::size_t>> confusion(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= k || predicted[i] >= k) throw DimensionError("class index out of range");
    ++confusion[truth[i]][predicted[i]];
  }
  return evaluate_confusion(std::move(confusion), std::move(classes));
}

}  // namespace lexidiv::classify
