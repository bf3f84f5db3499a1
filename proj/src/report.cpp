#include "lexidiv/report.hpp"

#include <cmath>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "lexidiv/error.hpp"

namespace lexidiv::report {

namespace {

using json = nlohmann::ordered_json;

// JSON has no infinities; an unbounded statistic is written as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.{}f}", v, digits);
}

}  // namespace

std::string format_p(double p) {
  if (p < 1e-15) return "<1e-15";
  return fmt::format("{:.4g}", p);
}

StatsReport run_stats(std::span<const measures::ProfiledText> rows, corpus::DependentVariable dv,
                      std::span<const measures::Measure> measures) {
  if (measures.empty()) throw ValidationError("no measures selected");
  StatsReport r;
  r.dv = dv;
  r.measures.assign(measures.begin(), measures.end());

  std::vector<std::string> labels;
  std::vector<const measures::ProfiledText*> kept;
  for (const auto& row : rows)
    if (auto label = corpus::class_label(row.group, dv)) {
      labels.push_back(*label);
      kept.push_back(&row);
    }
  r.groups = corpus::canonical_order(labels, dv);
  if (r.groups.size() < 2)
    throw ValidationError(fmt::format("statistics need at least 2 groups under '{}', found {}",
                                      corpus::to_string(dv), r.groups.size()));
  std::map<std::string, std::size_t> index;
  for (std::size_t g = 0; g < r.groups.size(); ++g) index[r.groups[g]] = g;

  const std::size_t g_count = r.groups.size(), m_count = measures.size();
  // values[measure][group]
  std::vector<std::vector<std::vector<double>>> values(m_count, std::vector<std::vector<double>>(g_count));
  std::vector<Matrix> obs(g_count, Matrix(0, m_count));
  std::vector<double> row(m_count);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto g = index.at(labels[i]);
    for (std::size_t m = 0; m < m_count; ++m) {
      row[m] = kept[i]->profile.value(measures[m]);
      values[m][g].push_back(row[m]);
    }
    obs[g].append_row(row);
  }
  for (std::size_t g = 0; g < g_count; ++g)
    if (obs[g].rows() < 2)
      throw InsufficientDataError(fmt::format("group '{}' has {} row(s); at least 2 are needed", r.groups[g],
                                              obs[g].rows()));

  r.descriptives.assign(g_count, {});
  for (std::size_t g = 0; g < g_count; ++g)
    for (std::size_t m = 0; m < m_count; ++m) r.descriptives[g].push_back(stats::describe(values[m][g]));

  for (std::size_t m = 0; m < m_count; ++m) {
    r.anova.push_back(stats::anova_oneway(values[m]));
    std::vector<stats::LabeledGroup> lg;
    for (std::size_t g = 0; g < g_count; ++g) lg.push_back({r.groups[g], values[m][g]});
    auto pw = stats::pairwise_bonferroni(lg, std::string(measures::to_string(measures[m])));
    r.pairwise.insert(r.pairwise.end(), pw.begin(), pw.end());
  }

  try {
    r.manova = stats::manova_wilks(obs, m_count);
  } catch (const DegenerateDataError& e) {
    r.manova_note = e.what();
  } catch (const InsufficientDataError& e) {
    r.manova_note = e.what();
  }
  return r;
}

std::string to_json(const StatsReport& r) {
  json doc;
  doc["dependent_variable"] = corpus::to_string(r.dv);
  doc["groups"] = r.groups;
  auto& ms = doc["measures"] = json::array();
  for (auto m : r.measures) ms.push_back(measures::to_string(m));

  auto& desc = doc["descriptives"] = json::array();
  for (std::size_t g = 0; g < r.groups.size(); ++g)
    for (std::size_t m = 0; m < r.measures.size(); ++m) {
      const auto& d = r.descriptives[g][m];
      desc.push_back({{"group", r.groups[g]},
                      {"measure", measures::to_string(r.measures[m])},
                      {"n", d.n},
                      {"mean", d.mean},
                      {"ci95_low", d.ci95_low},
                      {"ci95_high", d.ci95_high},
                      {"sd", d.sd},
                      {"min", d.min},
                      {"max", d.max}});
    }

  auto& an = doc["anova"] = json::array();
  for (std::size_t m = 0; m < r.measures.size(); ++m) {
    const auto& a = r.anova[m];
    an.push_back({{"measure", measures::to_string(r.measures[m])},
                  {"df1", a.df1},
                  {"df2", a.df2},
                  {"F", num(a.f)},
                  {"p", a.p},
                  {"partial_eta2", a.partial_eta2}});
  }

  if (r.manova) {
    const auto& mv = *r.manova;
    doc["manova"] = {{"wilks_lambda", mv.wilks_lambda}, {"rao_F", num(mv.rao_f)},       {"df1", mv.df1},
                     {"df2", mv.df2},                   {"p", mv.p},                    {"partial_eta2", mv.partial_eta2}};
  } else {
    doc["manova"] = {{"error", r.manova_note}};
  }

  doc["pairwise_test"] = "Welch t, Satterthwaite df, Bonferroni within each measure";
  auto& pw = doc["pairwise"] = json::array();
  for (const auto& p : r.pairwise)
    pw.push_back({{"measure", p.measure},
                  {"group_a", p.group_a},
                  {"group_b", p.group_b},
                  {"t", num(p.t)},
                  {"df", num(p.df)},
                  {"p_raw", p.p_raw},
                  {"p_bonferroni", p.p_bonferroni}});
  return doc.dump(2) + "\n";
}

std::string to_text(const StatsReport& r) {
  std::string out = fmt::format("Dependent variable: {}\n\nDescriptives\n", corpus::to_string(r.dv));
  out += fmt::format("{:<14} {:<11} {:>5} {:>11} {:>23} {:>10} {:>11} {:>11}\n", "group", "measure", "n", "mean",
                     "ci95", "sd", "min", "max");
  for (std::size_t g = 0; g < r.groups.size(); ++g)
    for (std::size_t m = 0; m < r.measures.size(); ++m) {
      const auto& d = r.descriptives[g][m];
      out += fmt::format("{:<14} {:<11} {:>5} {:>11.4f} {:>23} {:>10.4f} {:>11.4f} {:>11.4f}\n", r.groups[g],
                         measures::to_string(r.measures[m]), d.n, d.mean,
                         fmt::format("[{:.4f}, {:.4f}]", d.ci95_low, d.ci95_high), d.sd, d.min, d.max);
    }

  out += "\nOne-way ANOVA\n";
  out += fmt::format("{:<11} {:>5} {:>7} {:>12} {:>10} {:>13}\n", "measure", "df1", "df2", "F", "p", "partial_eta2");
  for (std::size_t m = 0; m < r.measures.size(); ++m) {
    const auto& a = r.anova[m];
    out += fmt::format("{:<11} {:>5} {:>7} {:>12} {:>10} {:>13.4f}\n", measures::to_string(r.measures[m]), a.df1,
                       a.df2, fixed(a.f, 3), format_p(a.p), a.partial_eta2);
  }

  out += "\nMANOVA (Wilks' lambda, Rao's F)\n";
  if (r.manova) {
    const auto& mv = *r.manova;
    out += fmt::format("lambda = {:.4f}, F({:g}, {:g}) = {}, p = {}, partial_eta2 = {:.4f}\n", mv.wilks_lambda,
                       mv.df1, mv.df2, fixed(mv.rao_f, 3), format_p(mv.p), mv.partial_eta2);
  } else {
    out += "not computed: " + r.manova_note + "\n";
  }

  out += "\nPairwise comparisons (Welch t, Bonferroni-corrected per measure)\n";
  out += fmt::format("{:<11} {:<14} {:<14} {:>10} {:>9} {:>10} {:>10}\n", "measure", "group_a", "group_b", "t", "df",
                     "p_raw", "p_bonf");
  for (const auto& p : r.pairwise)
    out += fmt::format("{:<11} {:<14} {:<14} {:>10} {:>9} {:>10} {:>10}\n", p.measure, p.group_a, p.group_b,
                       fixed(p.t, 3), fixed(p.df, 2), format_p(p.p_raw), format_p(p.p_bonferroni));
  return out;
}

std::string to_json(const classify::ClassificationResult& r) {
  json doc;
  doc["dependent_variable"] = corpus::to_string(r.dv);
  doc["features"] = r.feature_names;
  doc["partition_sizes"] = {
      {"train", r.partition_sizes[0]}, {"validation", r.partition_sizes[1]}, {"test", r.partition_sizes[2]}};
  auto& trials = doc["cost_trials"] = json::array();
  for (const auto& t : r.trials) trials.push_back({{"cost", t.cost}, {"validation_accuracy", t.validation_accuracy}});
  doc["selected_cost"] = r.model.cost;
  doc["train_accuracy"] = r.train_accuracy;

  const auto& e = r.test;
  json test;
  test["classes"] = e.classes;
  test["confusion"] = e.confusion;
  auto& pc = test["per_class"] = json::array();
  for (const auto& c : e.per_class)
    pc.push_back({{"label", c.label},
                  {"support", c.support},
                  {"accuracy", c.accuracy},
                  {"precision", c.precision},
                  {"recall", c.recall},
                  {"f1", c.f1}});
  test["overall"] = {{"n", e.total}, {"accuracy", e.accuracy}, {"precision", e.precision},
                     {"recall", e.recall}, {"f1", e.f1}};
  doc["test"] = std::move(test);

  auto& imp = doc["importance"] = json::array();
  for (std::size_t f = 0; f < r.feature_names.size(); ++f)
    imp.push_back({{"feature", r.feature_names[f]}, {"mean_dropout_loss", r.importance[f]}});

  auto& pred = doc["predictions"] = json::array();
  for (std::size_t i = 0; i < r.test_ids.size(); ++i)
    pred.push_back({{"id", r.test_ids[i]}, {"predicted", r.model.classes[r.test_predictions[i]]}});
  return doc.dump(2) + "\n";
}

std::string to_text(const classify::ClassificationResult& r) {
  const auto& e = r.test;
  std::string out = fmt::format("Dependent variable: {}\nFeatures: {}\n", corpus::to_string(r.dv),
                                fmt::join(r.feature_names, ", "));
  out += fmt::format("Partitions: train {}, validation {}, test {}\n", r.partition_sizes[0], r.partition_sizes[1],
                     r.partition_sizes[2]);
  out += "Cost search (validation accuracy):";
  for (const auto& t : r.trials) out += fmt::format(" C={:g}:{:.3f}", t.cost, t.validation_accuracy);
  out += fmt::format("\nSelected cost: {:g}\nTraining accuracy: {:.3f}\n", r.model.cost, r.train_accuracy);

  std::size_t width = 9;
  for (const auto& c : e.classes) width = std::max(width, c.size() + 1);
  out += "\nConfusion matrix (rows observed, columns predicted)\n";
  out += fmt::format("{:<{}}", "", width);
  for (const auto& c : e.classes) out += fmt::format(" {:>{}}", c, width);
  out += fmt::format(" {:>{}}\n", "% correct", width);
  for (std::size_t i = 0; i < e.classes.size(); ++i) {
    out += fmt::format("{:<{}}", e.classes[i], width);
    for (auto v : e.confusion[i]) out += fmt::format(" {:>{}}", v, width);
    out += fmt::format(" {:>{}.1f}\n", 100.0 * e.per_class[i].accuracy, width);
  }

  out += "\nEvaluation metrics\n";
  out += fmt::format("{:<{}} {:>8} {:>9} {:>10} {:>7} {:>7}\n", "class", width, "support", "accuracy", "precision",
                     "recall", "f1");
  for (const auto& c : e.per_class)
    out += fmt::format("{:<{}} {:>8} {:>9.3f} {:>10.3f} {:>7.3f} {:>7.3f}\n", c.label, width, c.support, c.accuracy,
                       c.precision, c.recall, c.f1);
  out += fmt::format("{:<{}} {:>8} {:>9.3f} {:>10.3f} {:>7.3f} {:>7.3f}\n", "overall", width, e.total, e.accuracy,
                     e.precision, e.recall, e.f1);

  out += "\nFeature importance (mean dropout loss)\n";
  for (std::size_t f = 0; f < r.feature_names.size(); ++f)
    out += fmt::format("{:<11} {:>8.3f}\n", r.feature_names[f], r.importance[f]);
  return out;
}

}  // namespace lexidiv::report
