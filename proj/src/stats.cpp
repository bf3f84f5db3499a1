#include "lexidiv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lexidiv/error.hpp"

namespace lexidiv::stats {

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

Descriptives describe(std::span<const double> values) {
  if (values.size() < 2) throw InsufficientDataError("describe needs at least 2 values");
  Descriptives d;
  d.n = values.size();
  d.mean = mean_of(values);
  d.sd = std::sqrt(sample_variance(values, d.mean));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  d.min = *lo;
  d.max = *hi;
  const double half = t_quantile(0.975, static_cast<double>(d.n - 1)) * d.sd / std::sqrt(static_cast<double>(d.n));
  d.ci95_low = d.mean - half;
  d.ci95_high = d.mean + half;
  return d;
}

AnovaResult anova_oneway(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw InsufficientDataError("ANOVA needs at least 2 groups");
  std::size_t total_n = 0;
  double grand = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].size() < 2)
      throw InsufficientDataError("ANOVA group " + std::to_string(g + 1) + " has fewer than 2 observations");
    total_n += groups[g].size();
    grand += std::accumulate(groups[g].begin(), groups[g].end(), 0.0);
  }
  grand /= static_cast<double>(total_n);

  AnovaResult r;
  for (const auto& g : groups) {
    const double m = mean_of(g);
    r.ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double x : g) r.ss_within += (x - m) * (x - m);
  }
  r.df1 = static_cast<double>(groups.size() - 1);
  r.df2 = static_cast<double>(total_n - groups.size());
  const double total = r.ss_between + r.ss_within;
  r.partial_eta2 = total > 0.0 ? r.ss_between / total : 0.0;
  if (r.ss_within > 0.0) {
    r.f = (r.ss_between / r.df1) / (r.ss_within / r.df2);
  } else {
    r.f = r.ss_between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.p = f_tail_prob(r.f, r.df1, r.df2);
  return r;
}

ManovaResult wilks_to_rao(double lambda, std::size_t p_vars, std::size_t groups, std::size_t total_n) {
  const double p = static_cast<double>(p_vars);
  const double q = static_cast<double>(groups - 1);
  ManovaResult r;
  r.wilks_lambda = lambda;
  const double denom = p * p + q * q - 5.0;
  const double t = denom > 0.0 ? std::sqrt((p * p * q * q - 4.0) / denom) : 1.0;
  r.df1 = p * q;
  const double m = static_cast<double>(total_n) - 1.0 - (p + static_cast<double>(groups)) / 2.0;
  r.df2 = m * t - r.df1 / 2.0 + 1.0;
  const double root = std::pow(lambda, 1.0 / t);
  r.rao_f = root > 0.0 ? (1.0 - root) / root * (r.df2 / r.df1) : std::numeric_limits<double>::infinity();
  r.p = f_tail_prob(r.rao_f, r.df1, r.df2);
  const double s = std::min(p, q);
  r.partial_eta2 = 1.0 - std::pow(lambda, 1.0 / s);
  return r;
}

double determinant(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
    if (a(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

ManovaResult manova_wilks(std::span<const Matrix> groups, std::size_t p_vars) {
  if (groups.size() < 2) throw InsufficientDataError("MANOVA needs at least 2 groups");
  if (p_vars == 0) throw InsufficientDataError("MANOVA needs at least 1 dependent variable");
  std::size_t total_n = 0;
  std::vector<double> grand(p_vars, 0.0);
  std::vector<std::vector<double>> means;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& m = groups[g];
    if (m.rows() == 0) throw InsufficientDataError("MANOVA group " + std::to_string(g + 1) + " is empty");
    if (m.cols() != p_vars)
      throw DimensionError("MANOVA group " + std::to_string(g + 1) + " has " + std::to_string(m.cols()) +
                           " columns, expected " + std::to_string(p_vars));
    std::vector<double> mu(p_vars, 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < p_vars; ++j) mu[j] += m(i, j);
    for (std::size_t j = 0; j < p_vars; ++j) {
      grand[j] += mu[j];
      mu[j] /= static_cast<double>(m.rows());
    }
    total_n += m.rows();
    means.push_back(std::move(mu));
  }
  if (total_n < groups.size() + p_vars)
    throw InsufficientDataError("MANOVA needs N - g >= number of dependent variables");
  for (auto& v : grand) v /= static_cast<double>(total_n);

  Matrix within(p_vars, p_vars), between(p_vars, p_vars);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& m = groups[g];
    const auto& mu = means[g];
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t a = 0; a < p_vars; ++a)
        for (std::size_t b = 0; b < p_vars; ++b) within(a, b) += (m(i, a) - mu[a]) * (m(i, b) - mu[b]);
    const double n = static_cast<double>(m.rows());
    for (std::size_t a = 0; a < p_vars; ++a)
      for (std::size_t b = 0; b < p_vars; ++b) between(a, b) += n * (mu[a] - grand[a]) * (mu[b] - grand[b]);
  }

  Matrix total(p_vars, p_vars);
  double scale = 1.0;
  for (std::size_t a = 0; a < p_vars; ++a) {
    for (std::size_t b = 0; b < p_vars; ++b) total(a, b) = within(a, b) + between(a, b);
    scale *= total(a, a);
  }
  const double det_total = determinant(total);
  // Hadamard: det(T) <= prod diag(T) for a PSD matrix, so the ratio is a
  // scale-free conditioning measure.
  if (!(scale > 0.0) || std::fabs(det_total) < 1e-12 * scale)
    throw DegenerateDataError("MANOVA total scatter matrix is singular");
  double lambda = determinant(within) / det_total;
  lambda = std::clamp(lambda, 0.0, 1.0);
  return wilks_to_rao(lambda, p_vars, groups.size(), total_n);
}

std::vector<PairwiseResult> pairwise_bonferroni(std::span<const LabeledGroup> groups, const std::string& measure) {
  if (groups.size() < 2) throw InsufficientDataError("pairwise comparisons need at least 2 groups");
  for (const auto& g : groups)
    if (g.values.size() < 2) throw InsufficientDataError("group '" + g.label + "' has fewer than 2 observations");
  const double family = static_cast<double>(groups.size() * (groups.size() - 1) / 2);
  std::vector<PairwiseResult> out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const auto& a = groups[i].values;
      const auto& b = groups[j].values;
      const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
      const double ma = mean_of(a), mb = mean_of(b);
      const double va = sample_variance(a, ma) / na, vb = sample_variance(b, mb) / nb;
      PairwiseResult r{groups[i].label, groups[j].label, measure};
      const double se2 = va + vb;
      if (se2 > 0.0) {
        r.t = (ma - mb) / std::sqrt(se2);
        r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
      } else {
        r.t = ma == mb ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), ma - mb);
        r.df = na + nb - 2.0;
      }
      r.p_raw = t_two_sided_p(r.t, r.df);
      r.p_bonferroni = std::min(1.0, family * r.p_raw);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace lexidiv::stats
