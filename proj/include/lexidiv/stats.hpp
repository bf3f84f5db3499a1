#pragma once

#include <span>
#include <string>
#include <vector>

#include "lexidiv/distributions.hpp"
#include "lexidiv/matrix.hpp"

namespace lexidiv::stats {

struct Descriptives {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Throws InsufficientDataError for fewer than two values.
Descriptives describe(std::span<const double> values);

struct AnovaResult {
  double f = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
  double p = 1.0;
  double partial_eta2 = 0.0;
  double ss_between = 0.0;
  double ss_within = 0.0;
};

// One-way ANOVA. Needs >= 2 groups of >= 2 values each.
AnovaResult anova_oneway(std::span<const std::vector<double>> groups);

struct ManovaResult {
  double wilks_lambda = 1.0;
  double rao_f = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
  double p = 1.0;
  double partial_eta2 = 0.0;
};

// Rao's F approximation to Wilks' lambda for `p_vars` dependent variables,
// `groups` groups and `total_n` observations.
ManovaResult wilks_to_rao(double lambda, std::size_t p_vars, std::size_t groups, std::size_t total_n);

// One-way MANOVA; each matrix holds one group's observations as rows with
// p_vars columns. Throws DegenerateDataError when the total scatter matrix
// is singular and InsufficientDataError when N - g < p_vars.
ManovaResult manova_wilks(std::span<const Matrix> groups, std::size_t p_vars);

// Determinant by LU with partial pivoting; `a` must be square.
double determinant(Matrix a);

struct PairwiseResult {
  std::string group_a;
  std::string group_b;
  std::string measure;
  double t = 0.0;
  double df = 0.0;
  double p_raw = 1.0;
  double p_bonferroni = 1.0;
};

struct LabeledGroup {
  std::string label;
  std::vector<double> values;
};

// Welch t tests over all unordered pairs, Bonferroni-corrected within the
// family of g(g-1)/2 comparisons. Pairs follow input order (a before b).
std::vector<PairwiseResult> pairwise_bonferroni(std::span<const LabeledGroup> groups, const std::string& measure);

}  // namespace lexidiv::stats
