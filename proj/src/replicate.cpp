#include "lexidiv/replicate.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "lexidiv/corpus.hpp"
#include "lexidiv/evaluate.hpp"
#include "lexidiv/pipeline.hpp"
#include "lexidiv/report.hpp"
#include "lexidiv/simulate.hpp"
#include "lexidiv/stats.hpp"

namespace lexidiv::replicate {

namespace {

using corpus::DependentVariable;
using measures::Measure;

const std::vector<Measure> kLd4 = {Measure::mattr, Measure::evenness, Measure::disparity, Measure::dispersion};

std::vector<simulate::GroupMoments> human_rows() {
  auto all = simulate::twelve_group_moments();
  std::erase_if(all, [](const auto& g) { return g.group.rfind("human", 0) != 0; });
  return all;
}

std::vector<measures::ProfiledText> pooled_sample(std::uint64_t seed) {
  const auto moments = simulate::pooled_moments();
  std::vector<std::size_t> counts;
  for (const auto& g : moments) counts.push_back(*g.n);
  return simulate::sample_profiles(moments, counts, seed);
}


Criterion manova_anchor() {
  const auto m = stats::wilks_to_rao(0.181, 6, 2, 360);
  const bool ok = std::abs(m.rao_f - 266.2) <= 2.7 && m.df1 == 6 && m.df2 == 353 && m.partial_eta2 == 1 - 0.181;
  return {"1", "MANOVA formula anchor", ok,
          fmt::format("F({:g}, {:g}) = {:.3f} (target 266.2 +/- 2.7), partial eta2 = {:.6f} (target .819)", m.df1,
                      m.df2, m.rao_f, m.partial_eta2)};
}

Criterion metric_anchor() {
  const auto e = classify::evaluate_confusion({{25, 1}, {1, 45}}, {"llm", "human"});
  auto r3 = [](double v) { return std::round(v * 1000) / 1000; };
  const auto& l = e.per_class[0];
  const auto& h = e.per_class[1];
  const bool ok = r3(e.accuracy) == 0.972 && r3(l.precision) == 0.962 && r3(l.recall) == 0.962 &&
                  r3(l.f1) == 0.962 && r3(h.precision) == 0.978 && r3(h.recall) == 0.978 && r3(h.f1) == 0.978;
  return {"2", "Metric anchor [[25,1],[1,45]]", ok,
          fmt::format("accuracy {:.3f}; llm P/R/F1 {:.3f}/{:.3f}/{:.3f}; human P/R/F1 {:.3f}/{:.3f}/{:.3f}",
                      e.accuracy, l.precision, l.recall, l.f1, h.precision, h.recall, h.f1)};
}

}  // namespace

bool Summary::all_passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.passed; });
}

Summary run(const Options& options) {
  Summary s;
  s.seed = options.seed;
  s.criteria.push_back(manova_anchor());
  s.criteria.push_back(metric_anchor());

  const std::size_t sweep = std::max<std::size_t>(options.seed_sweep, 1);
  const auto dispersion_col =
      static_cast<std::size_t>(std::find(kLd4.begin(), kLd4.end(), Measure::dispersion) - kLd4.begin());

  // Separability on pooled writer-type moments.
  double acc_sum = 0.0;
  std::size_t top_two = 0;
  for (std::size_t k = 0; k < sweep; ++k) {
    const std::uint64_t seed = options.seed + k;
    const auto rows = pooled_sample(seed);
    classify::PipelineOptions po;
    po.seed = seed;
    const auto r = classify::run_classification(rows, DependentVariable::writer_type, kLd4, po);
    acc_sum += r.test.accuracy;
    const double d = r.importance[dispersion_col];
    const auto above = std::count_if(r.importance.begin(), r.importance.end(), [&](double v) { return v > d; });
    if (above < 2) ++top_two;
  }
  const double sep = acc_sum / static_cast<double>(sweep);
  const std::size_t need_top = (8 * sweep + 9) / 10;
  s.criteria.push_back({"3a", "Synthetic separability (writer type)", sep >= 0.90,
                        fmt::format("mean test accuracy {:.4f} over {} seeds (threshold 0.90)", sep, sweep)});
  s.criteria.push_back({"3b", "Dispersion among top-two importances", top_two >= need_top,
                        fmt::format("{}/{} seeds (threshold {})", top_two, sweep, need_top)});

  // Chance-level controls on human-only moments.
  const auto humans = human_rows();
  double status_sum = 0.0, edu_sum = 0.0;
  for (std::size_t k = 0; k < sweep; ++k) {
    const std::uint64_t seed = options.seed + k;
    const auto rows = simulate::sample_profiles(humans, options.n_per_group, seed);
    classify::PipelineOptions po;
    po.seed = seed;
    status_sum += classify::run_classification(rows, DependentVariable::language_status, kLd4, po).test.accuracy;
    edu_sum += classify::run_classification(rows, DependentVariable::education, kLd4, po).test.accuracy;
  }
  const double status_acc = status_sum / static_cast<double>(sweep);
  const double edu_acc = edu_sum / static_cast<double>(sweep);
  s.criteria.push_back({"4a", "Chance control: L1/L2", status_acc >= 0.35 && status_acc <= 0.65,
                        fmt::format("mean accuracy {:.4f} (range [0.35, 0.65])", status_acc)});
  s.criteria.push_back({"4b", "Chance control: education", edu_acc >= 0.10 && edu_acc <= 0.45,
                        fmt::format("mean accuracy {:.4f} (range [0.10, 0.45])", edu_acc)});

  // Multivariate effect on a pooled sample.
  {
    const auto rows = pooled_sample(options.seed);
    const auto st = report::run_stats(rows, DependentVariable::writer_type, measures::kAllMeasures);
    const bool ok = st.manova && st.manova->partial_eta2 >= 0.6;
    s.criteria.push_back({"S1", "Writer-type MANOVA effect size", ok,
                          st.manova ? fmt::format("partial eta2 {:.4f} (threshold 0.6)", st.manova->partial_eta2)
                                    : "MANOVA not computed: " + st.manova_note});
  }

  // Twelve-group design at the reference cell size.
  {
    const auto rows = simulate::sample_profiles(simulate::twelve_group_moments(), options.n_per_group, options.seed);
    classify::PipelineOptions po;
    po.seed = options.seed;
    const auto r = classify::run_classification(rows, DependentVariable::group12, kLd4, po);
    std::size_t llm_n = 0, llm_ok = 0, human_n = 0, human_ok = 0;
    const auto& e = r.test;
    for (std::size_t i = 0; i < e.classes.size(); ++i) {
      const bool llm = e.classes[i].rfind("llm", 0) == 0;
      (llm ? llm_n : human_n) += e.per_class[i].support;
      (llm ? llm_ok : human_ok) += e.confusion[i][i];
    }
    const double llm_rate = llm_n ? static_cast<double>(llm_ok) / static_cast<double>(llm_n) : 0.0;
    const double human_rate = human_n ? static_cast<double>(human_ok) / static_cast<double>(human_n) : 0.0;
    s.criteria.push_back({"S2", "Twelve-group design: LLM rows beat human rows", llm_rate > human_rate,
                          fmt::format("LLM {}/{} ({:.1f}%) vs human {}/{} ({:.1f}%) correct", llm_ok, llm_n,
                                      100 * llm_rate, human_ok, human_n, 100 * human_rate)});
  }
  return s;
}

std::string to_text(const Summary& s) {
  std::string out = fmt::format("Replication summary (seed {})\n", s.seed);
  for (const auto& c : s.criteria)
    out += fmt::format("{} [{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.id, c.name, c.detail);
  const auto passed = std::count_if(s.criteria.begin(), s.criteria.end(), [](const auto& c) { return c.passed; });
  out += fmt::format("{}/{} criteria passed\n", passed, s.criteria.size());
  return out;
}

std::string to_json(const Summary& s) {
  nlohmann::ordered_json doc;
  doc["seed"] = s.seed;
  auto& cs = doc["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : s.criteria)
    cs.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  doc["all_passed"] = s.all_passed();
  return doc.dump(2) + "\n";
}

}  // namespace lexidiv::replicate
