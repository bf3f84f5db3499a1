#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexidiv/corpus.hpp"
#include "lexidiv/measures.hpp"
#include "lexidiv/pipeline.hpp"
#include "lexidiv/stats.hpp"

namespace lexidiv::report {

// The full statistical battery over the groups a dependent variable induces.
struct StatsReport {
  corpus::DependentVariable dv = corpus::DependentVariable::writer_type;
  std::vector<std::string> groups;              // canonical order
  std::vector<measures::Measure> measures;
  std::vector<std::vector<stats::Descriptives>> descriptives;  // [group][measure]
  std::vector<stats::AnovaResult> anova;                       // per measure
  std::optional<stats::ManovaResult> manova;
  std::string manova_note;  // why the MANOVA block is missing, if it is
  std::vector<stats::PairwiseResult> pairwise;  // measure-major
};

// Throws ValidationError for fewer than two groups and InsufficientDataError
// for a group with fewer than two rows. A singular MANOVA is recorded in
// manova_note rather than thrown.
StatsReport run_stats(std::span<const measures::ProfiledText> rows, corpus::DependentVariable dv,
                      std::span<const measures::Measure> measures);

std::string to_json(const StatsReport& r);
std::string to_text(const StatsReport& r);

std::string to_json(const classify::ClassificationResult& r);
std::string to_text(const classify::ClassificationResult& r);

// "<1e-15" below that bound, otherwise 4 significant digits.
std::string format_p(double p);

}  // namespace lexidiv::report
