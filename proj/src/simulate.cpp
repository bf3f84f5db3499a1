#include "lexidiv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "lexidiv/corpus.hpp"
#include "lexidiv/error.hpp"
#include "lexidiv/rng.hpp"

namespace lexidiv::simulate {

using measures::Measure;

namespace {

GroupMoments row(std::string group, std::optional<std::size_t> n, Moment volume, Moment abundance, Moment mattr,
                 Moment evenness, Moment disparity, Moment dispersion) {
  return {std::move(group), n, {volume, abundance, mattr, evenness, disparity, dispersion}};
}

double clamp_to_domain(Measure m, double v, double volume) {
  switch (m) {
    case Measure::volume: return std::max(1.0, std::round(v));
    case Measure::abundance: return std::clamp(std::round(v), 1.0, volume);
    case Measure::mattr: return std::clamp(v, 1e-6, 100.0);
    case Measure::evenness: return std::clamp(v, 0.0, 1.0);
    case Measure::disparity: return std::max(1.0, v);
    case Measure::dispersion: return std::clamp(v, 0.0, 100.0);
  }
  return v;
}

}  // namespace

std::vector<GroupMoments> twelve_group_moments() {
  constexpr std::size_t n = 30;
  return {
      row("human:L1:HS", n, {274.43, 33.73}, {129.00, 21.49}, {38.38, 2.08}, {0.97, 0.01}, {1.03, 0.01}, {16.82, 5.04}),
      row("human:L2:HS", n, {269.83, 28.48}, {126.77, 20.82}, {38.31, 2.09}, {0.97, 0.01}, {1.03, 0.01}, {16.37, 4.66}),
      row("human:L1:BA", n, {279.57, 49.24}, {128.07, 19.15}, {38.43, 1.69}, {0.97, 0.00}, {1.03, 0.01}, {16.58, 3.17}),
      row("human:L2:BA", n, {267.83, 16.41}, {128.33, 14.19}, {38.72, 1.57}, {0.97, 0.01}, {1.03, 0.01}, {16.07, 4.35}),
      row("human:L1:MA", n, {269.27, 25.84}, {132.97, 18.84}, {38.57, 2.06}, {0.97, 0.01}, {1.03, 0.01}, {16.20, 4.35}),
      row("human:L2:MA", n, {265.77, 22.31}, {132.13, 17.42}, {38.45, 2.08}, {0.97, 0.01}, {1.03, 0.01}, {16.41, 4.35}),
      row("human:L1:PhD", n, {287.07, 51.59}, {138.23, 29.55}, {38.33, 1.99}, {0.97, 0.01}, {1.03, 0.01}, {16.41, 3.68}),
      row("human:L2:PhD", n, {270.30, 16.78}, {132.27, 14.55}, {38.73, 1.63}, {0.97, 0.01}, {1.03, 0.01}, {16.25, 3.65}),
      row("llm:gpt35", n, {468.30, 35.24}, {213.30, 15.39}, {41.28, 0.57}, {0.98, 0.00}, {1.04, 0.01}, {8.65, 1.16}),
      row("llm:gpt40", n, {542.60, 37.84}, {263.33, 19.06}, {41.52, 0.64}, {0.98, 0.00}, {1.04, 0.01}, {8.23, 1.21}),
      row("llm:gpt45", n, {349.93, 34.48}, {207.17, 13.36}, {44.18, 0.81}, {0.99, 0.00}, {1.04, 0.01}, {5.81, 1.15}),
      row("llm:o4mini", n, {501.30, 83.58}, {313.47, 39.71}, {44.97, 0.63}, {0.99, 0.00}, {1.04, 0.01}, {4.81, 1.11}),
  };
}

std::vector<GroupMoments> pooled_moments() {
  return {
      row("llm", 120, {465.53, 88.51}, {249.32, 49.35}, {42.99, 1.75}, {0.98, 0.01}, {1.04, 0.01}, {6.87, 1.98}),
      row("human", 240, {273.01, 33.26}, {130.97, 20.03}, {38.49, 1.89}, {0.97, 0.01}, {1.03, 0.01}, {16.39, 4.14}),
  };
}

std::vector<GroupMoments> moments_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("moments file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("groups") || !doc["groups"].is_array() || doc["groups"].empty())
    throw ValidationError("moments file needs a non-empty 'groups' array");
  std::vector<GroupMoments> out;
  for (std::size_t g = 0; g < doc["groups"].size(); ++g) {
    const auto& jg = doc["groups"][g];
    const std::string where = "moments group " + std::to_string(g + 1);
    try {
      GroupMoments gm;
      gm.group = jg.at("group").get<std::string>();
      if (!corpus::parse_group_key(gm.group)) throw ValidationError(where + ": unknown group key '" + gm.group + "'");
      if (jg.contains("n")) {
        const auto n = jg.at("n").get<long>();
        if (n < 1) throw ValidationError(where + ": 'n' must be >= 1");
        gm.n = static_cast<std::size_t>(n);
      }
      for (auto m : measures::kAllMeasures) {
        const std::string name(measures::to_string(m));
        if (!jg.contains(name)) throw ValidationError(where + ": missing measure '" + name + "'");
        gm[m].mean = jg.at(name).at("mean").get<double>();
        gm[m].sd = jg.at(name).at("sd").get<double>();
        if (!std::isfinite(gm[m].mean) || !(gm[m].sd >= 0.0) || !std::isfinite(gm[m].sd))
          throw ValidationError(where + ": measure '" + name + "' needs a finite mean and sd >= 0");
      }
      out.push_back(std::move(gm));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return out;
}

std::string moments_to_json(std::span<const GroupMoments> moments) {
  auto groups = nlohmann::ordered_json::array();
  for (const auto& gm : moments) {
    nlohmann::ordered_json jg;
    jg["group"] = gm.group;
    if (gm.n) jg["n"] = *gm.n;
    for (auto m : measures::kAllMeasures)
      jg[std::string(measures::to_string(m))] = {{"mean", gm[m].mean}, {"sd", gm[m].sd}};
    groups.push_back(std::move(jg));
  }
  nlohmann::ordered_json doc;
  doc["groups"] = std::move(groups);
  return doc.dump(2) + "\n";
}

std::vector<measures::ProfiledText> sample_profiles(std::span<const GroupMoments> moments,
                                                    std::span<const std::size_t> counts, std::uint64_t seed) {
  if (counts.size() != moments.size()) throw ValidationError("one sample size per group is required");
  std::vector<measures::ProfiledText> out;
  std::size_t serial = 0;
  for (std::size_t g = 0; g < moments.size(); ++g) {
    const auto& gm = moments[g];
    if (counts[g] < 1) throw ValidationError("group '" + gm.group + "': sample size must be >= 1");
    Engine rng(derive_seed(seed, gm.group));
    std::normal_distribution<double> z(0.0, 1.0);
    for (std::size_t k = 0; k < counts[g]; ++k) {
      measures::DiversityProfile p;
      double volume = 1.0;
      for (auto m : measures::kAllMeasures) {
        const double v = clamp_to_domain(m, gm[m].mean + gm[m].sd * z(rng), volume);
        if (m == Measure::volume) volume = v;
        p.set(m, v);
      }
      char id[32];
      std::snprintf(id, sizeof id, "s%04zu", ++serial);
      out.push_back({id, gm.group, p});
    }
  }
  return out;
}

std::vector<measures::ProfiledText> sample_profiles(std::span<const GroupMoments> moments, std::size_t n_per_group,
                                                    std::uint64_t seed) {
  const std::vector<std::size_t> counts(moments.size(), n_per_group);
  return sample_profiles(moments, counts, seed);
}

text::LemmaSequence zipf_text(const ZipfSpec& spec) {
  if (spec.vocabulary < 1 || spec.length < 1 || !(spec.exponent >= 0.0))
    throw ValidationError("Zipf spec needs V >= 1, N >= 1 and s >= 0");
  std::vector<double> weights(spec.vocabulary);
  for (std::size_t r = 0; r < spec.vocabulary; ++r)
    weights[r] = std::pow(static_cast<double>(r + 1), -spec.exponent);
  std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
  Engine rng(spec.seed);
  text::LemmaSequence seq;
  seq.source_id = "zipf";
  seq.lemmas.reserve(spec.length);
  for (std::size_t i = 0; i < spec.length; ++i) seq.lemmas.push_back("w" + std::to_string(draw(rng) + 1));
  return seq;
}

}  // namespace lexidiv::simulate
