// End-to-end acceptance checks; prints one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "lexidiv/cli.hpp"
#include "lexidiv/evaluate.hpp"
#include "lexidiv/measures.hpp"
#include "lexidiv/pipeline.hpp"
#include "lexidiv/simulate.hpp"
#include "lexidiv/split.hpp"
#include "lexidiv/stats.hpp"
#include "lexidiv/svm.hpp"

using namespace lexidiv;
using measures::Measure;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "MISS ") + what;
  }
};

const std::vector<Measure> kLd4 = {Measure::mattr, Measure::evenness, Measure::disparity, Measure::dispersion};

text::LemmaSequence seq(std::vector<std::string> v) { return {std::move(v), ""}; }

// Quadrature oracle for the F upper tail (composite Simpson on a mapped
// interval, refined until stable).
double f_tail_oracle(double f, double d1, double d2) {
  const double lb = std::lgamma(d1 / 2) + std::lgamma(d2 / 2) - std::lgamma((d1 + d2) / 2);
  auto g = [&](double u) {
    if (u >= 1) return 0.0;
    const double x = f + u / (1 - u);
    const double dens =
        std::exp(0.5 * (d1 * std::log(d1 * x) + d2 * std::log(d2) - (d1 + d2) * std::log(d1 * x + d2)) -
                 std::log(x) - lb);
    return dens / ((1 - u) * (1 - u));
  };
  double prev = 0;
  for (int n = 64;; n *= 2) {
    double s = g(0) + g(1);
    for (int i = 1; i < n; ++i) s += g(static_cast<double>(i) / n) * (i % 2 ? 4 : 2);
    s /= 3.0 * n;
    if (n > 64 && std::abs(s - prev) < 1e-12) return s;
    if (n > (1 << 20)) return s;
    prev = s;
  }
}

Outcome criterion1() {
  Outcome o;
  const auto m = stats::wilks_to_rao(0.181, 6, 2, 360);
  o.check(std::abs(m.rao_f - 266.2) <= 2.7, fmt::format("F = {:.4f} (266.2 +/- 2.7)", m.rao_f));
  o.check(m.df1 == 6 && m.df2 == 353, fmt::format("df = ({:g}, {:g})", m.df1, m.df2));
  o.check(m.partial_eta2 == 1 - 0.181, fmt::format("partial eta2 = {:.6f}", m.partial_eta2));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto e = classify::evaluate_confusion({{25, 1}, {1, 45}}, {"llm", "human"});
  auto r3 = [](double v) { return std::round(v * 1000) / 1000; };
  o.check(r3(e.accuracy) == 0.972, fmt::format("accuracy {:.4f}", e.accuracy));
  const auto& l = e.per_class[0];
  const auto& h = e.per_class[1];
  o.check(r3(l.precision) == 0.962 && r3(l.recall) == 0.962 && r3(l.f1) == 0.962,
          fmt::format("llm {:.3f}/{:.3f}/{:.3f}", l.precision, l.recall, l.f1));
  o.check(r3(h.precision) == 0.978 && r3(h.recall) == 0.978 && r3(h.f1) == 0.978,
          fmt::format("human {:.3f}/{:.3f}/{:.3f}", h.precision, h.recall, h.f1));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto moments = simulate::pooled_moments();
  const std::vector<std::size_t> counts = {120, 240};
  double acc = 0;
  int top_two = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::uint64_t seed = kDefaultSeed + s;
    const auto rows = simulate::sample_profiles(moments, counts, seed);
    classify::PipelineOptions po;
    po.seed = seed;
    const auto r = classify::run_classification(rows, corpus::DependentVariable::writer_type, kLd4, po);
    acc += r.test.accuracy;
    const double d = r.importance[3];
    if (std::count_if(r.importance.begin(), r.importance.end(), [&](double v) { return v > d; }) < 2) ++top_two;
  }
  acc /= 10;
  o.check(acc >= 0.90, fmt::format("mean accuracy {:.4f} >= 0.90", acc));
  o.check(top_two >= 8, fmt::format("dispersion top-two in {}/10 >= 8", top_two));
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto humans = simulate::twelve_group_moments();
  humans.resize(8);
  double status = 0, edu = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::uint64_t seed = kDefaultSeed + s;
    const auto rows = simulate::sample_profiles(humans, 30, seed);
    classify::PipelineOptions po;
    po.seed = seed;
    status += classify::run_classification(rows, corpus::DependentVariable::language_status, kLd4, po).test.accuracy;
    edu += classify::run_classification(rows, corpus::DependentVariable::education, kLd4, po).test.accuracy;
  }
  status /= 10;
  edu /= 10;
  o.check(status >= 0.35 && status <= 0.65, fmt::format("L1/L2 {:.4f} in [0.35, 0.65]", status));
  o.check(edu >= 0.10 && edu <= 0.45, fmt::format("education {:.4f} in [0.10, 0.45]", edu));
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> len(1, 300), alpha(1, 50);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = len(rng), a = alpha(rng);
    std::vector<std::string> t;
    for (std::size_t k = 0; k < n; ++k) t.push_back(std::to_string(rng() % a));
    double naive;
    if (n < 50) {
      naive = 100.0 * static_cast<double>(std::set<std::string>(t.begin(), t.end()).size()) / n;
    } else {
      double sum = 0;
      for (std::size_t s = 0; s + 50 <= n; ++s) sum += std::set<std::string>(t.begin() + s, t.begin() + s + 50).size() / 50.0;
      naive = 100.0 * sum / static_cast<double>(n - 49);
    }
    worst = std::max(worst, std::abs(measures::mattr(seq(t)) - naive));
  }
  o.check(worst <= 1e-9, fmt::format("MATTR max deviation {:.2e}", worst));
  const double e = measures::evenness(seq({"a", "a", "b", "c"}));
  o.check(std::abs(e - 0.9464) <= 1e-4, fmt::format("evenness {:.6f}", e));
  const double d1 = measures::dispersion(seq({"a", "b", "a"}));
  o.check(d1 == 100.0 / 3.0, fmt::format("dispersion [a,b,a] {:.4f}", d1));
  std::vector<std::string> gap = {"a"};
  for (int i = 1; i <= 20; ++i) gap.push_back("x" + std::to_string(i));
  gap.push_back("a");
  const double d2 = measures::dispersion(seq(gap));
  o.check(d2 == 0.0, fmt::format("gap-21 dispersion {:g}", d2));
  wordnet::SenseIndex idx;
  const std::uint32_t xy[] = {1, 2}, x[] = {1}, z[] = {3};
  idx.add("car", wordnet::Pos::noun, xy);
  idx.add("automobile", wordnet::Pos::noun, x);
  idx.add("dog", wordnet::Pos::noun, z);
  const double disp = measures::disparity(seq({"car", "automobile", "dog"}), idx);
  o.check(disp == 4.0 / 3.0, fmt::format("disparity {:.6f}", disp));
  return o;
}

Outcome criterion6() {
  Outcome o;
  const std::vector<std::vector<double>> g = {{1, 2, 3}, {4, 5, 6}};
  const auto a = stats::anova_oneway(g);
  o.check(std::abs(a.f - 13.5) <= 1e-9, fmt::format("F {:.10f}", a.f));
  o.check(std::abs(a.partial_eta2 - 13.5 / 17.5) <= 1e-9 && std::abs(a.partial_eta2 - 0.7714) < 5e-5,
          fmt::format("partial eta2 {:.10f}", a.partial_eta2));
  const double oracle = f_tail_oracle(13.5, 1, 4);
  o.check(std::abs(a.p - 0.02132) <= 1e-4 && std::abs(a.p - oracle) <= 1e-4,
          fmt::format("p {:.6f} (quadrature {:.6f})", a.p, oracle));
  Matrix m1, m2;
  for (double v : g[0]) m1.append_row(std::vector<double>{v});
  for (double v : g[1]) m2.append_row(std::vector<double>{v});
  const std::vector<Matrix> mats = {m1, m2};
  const auto mv = stats::manova_wilks(mats, 1);
  o.check(std::abs(mv.rao_f - a.f) <= 1e-9 && std::abs(mv.df1 - a.df1) <= 1e-9 && std::abs(mv.df2 - a.df2) <= 1e-9,
          fmt::format("MANOVA p=1 F {:.10f}", mv.rao_f));
  o.check(stats::f_tail_prob(0, 1, 4) == 1.0 && stats::f_tail_prob(0, 6, 353) == 1.0, "f_tail_prob(0) = 1");
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto replicate_once = [] {
    std::ostringstream out, err;
    const int code = cli::run({"replicate", "--format", "json"}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = replicate_once(), b = replicate_once();
  o.check(!a.second.empty() && a.second == b.second,
          fmt::format("replicate reports byte-identical ({} bytes, exit {})", a.second.size(), a.first));
  std::vector<std::size_t> y;
  for (std::size_t c = 0; c < 12; ++c)
    for (int i = 0; i < 30; ++i) y.push_back(c);
  classify::SplitSpec spec;
  spec.seed = kDefaultSeed;
  const auto s = classify::split(y, 12, spec);
  o.check(s.train.size() == 230 && s.validation.size() == 58 && s.test.size() == 72,
          fmt::format("split ({}, {}, {})", s.train.size(), s.validation.size(), s.test.size()));
  return o;
}

Outcome criterion8() {
  Outcome o;
  Matrix x;
  for (auto v : {std::vector<double>{0, 0}, {2, 2}, {0, 1}, {2, 3}}) x.append_row(v);
  const std::vector<int> y = {1, -1, 1, -1};
  bool separable = true, feasible = true;
  for (double c : {0.5, 1.0, 2.0, 5.0}) {
    const auto sol = classify::solve_binary(x, y, c, 1e-3);
    for (std::size_t i = 0; i < 4; ++i) {
      double f = sol.bias;
      for (std::size_t j = 0; j < 2; ++j) f += sol.weights[j] * x(i, j);
      separable &= (f >= 0 ? 1 : -1) == y[i];
    }
    for (double a : sol.alpha) feasible &= a >= 0 && a <= c;
  }
  // Multiclass separable set through the public trainer.
  Matrix mx;
  std::vector<std::size_t> my;
  for (std::size_t c = 0; c < 3; ++c)
    for (int i = 0; i < 10; ++i) {
      mx.append_row(std::vector<double>{4.0 * c + 0.1 * i, (c == 1 ? 5.0 : 0.0) - 0.05 * i});
      my.push_back(c);
    }
  const auto sc = classify::fit_scaler(mx, {"a", "b"});
  const auto xs = classify::apply_scaler(sc, mx);
  const auto tr = classify::svm_train(sc, xs, my, Matrix(0, 2), {}, {"A", "B", "C"});
  separable &= classify::svm_predict(tr.model, mx) == my;
  o.check(separable, "separable toy sets reach training accuracy 1.0");
  o.check(feasible, "dual coefficients within [0, C]");
  double worst_mean = 0, worst_sd = 0;
  for (std::size_t j = 0; j < 2; ++j) {
    double m = 0, v = 0;
    for (std::size_t i = 0; i < xs.rows(); ++i) m += xs(i, j);
    m /= xs.rows();
    for (std::size_t i = 0; i < xs.rows(); ++i) v += (xs(i, j) - m) * (xs(i, j) - m);
    worst_mean = std::max(worst_mean, std::abs(m));
    worst_sd = std::max(worst_sd, std::abs(std::sqrt(v / (xs.rows() - 1)) - 1));
  }
  o.check(worst_mean <= 1e-9 && worst_sd <= 1e-9,
          fmt::format("z-scored |mean| {:.1e}, |sd-1| {:.1e}", worst_mean, worst_sd));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 MANOVA formula anchor", criterion1},  {"2 Metric anchor", criterion2},
      {"3 Synthetic separability", criterion3}, {"4 Chance-level controls", criterion4},
      {"5 Measure oracles", criterion5},        {"6 Statistics oracles", criterion6},
      {"7 Determinism", criterion7},            {"8 SVM correctness", criterion8}};
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << fmt::format("{} of {} criteria passed in {:.1f} s", criteria.size() - failed, criteria.size(), secs)
            << std::endl;
  return failed == 0 ? 0 : 1;
}
