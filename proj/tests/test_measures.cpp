#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <map>
#include <set>

#include "lexidiv/error.hpp"
#include "lexidiv/measures.hpp"
#include "lexidiv/simulate.hpp"
#include "test_util.hpp"

using namespace lexidiv;
using namespace lexidiv::measures;

namespace {

text::LemmaSequence seq(std::vector<std::string> v) { return {std::move(v), ""}; }

// Oracle: recount every window from scratch.
double naive_mattr(const std::vector<std::string>& t, std::size_t w) {
  if (t.empty()) return 0.0;
  if (t.size() < w) return 100.0 * static_cast<double>(std::set<std::string>(t.begin(), t.end()).size()) / t.size();
  double sum = 0.0;
  const std::size_t windows = t.size() - w + 1;
  for (std::size_t s = 0; s < windows; ++s) {
    std::set<std::string> types(t.begin() + s, t.begin() + s + w);
    sum += static_cast<double>(types.size()) / static_cast<double>(w);
  }
  return 100.0 * sum / static_cast<double>(windows);
}

// Oracle: a token is proximate when any earlier equal token lies within the window.
double naive_dispersion(const std::vector<std::string>& t, std::size_t w) {
  if (t.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (t[j] == t[i] && i - j <= w) {
        ++hits;
        break;
      }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(t.size());
}

std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t len, std::size_t alphabet) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back("t" + std::to_string(pick(rng)));
  return out;
}

std::vector<std::string> repeat(const std::string& s, std::size_t n) { return std::vector<std::string>(n, s); }

}  // namespace

TEST(Volume, Examples) {
  EXPECT_EQ(volume(seq({"the", "cat", "sat", "on", "the", "mat"})), 6);
  EXPECT_EQ(volume(seq({})), 0);
  EXPECT_EQ(abundance(seq({"the", "cat", "sit", "on", "the", "mat"})), 5);
  EXPECT_EQ(abundance(seq({"a", "a", "a"})), 1);
}

TEST(Mattr, Examples) {
  EXPECT_DOUBLE_EQ(mattr(seq(repeat("a", 50))), 2.0);
  std::vector<std::string> alt;
  for (int i = 0; i < 52; ++i) alt.push_back(i % 2 ? "b" : "a");
  EXPECT_DOUBLE_EQ(mattr(seq(alt)), 4.0);
  std::vector<std::string> distinct;
  for (int i = 0; i < 50; ++i) distinct.push_back("w" + std::to_string(i));
  EXPECT_DOUBLE_EQ(mattr(seq(distinct)), 100.0);
  // Shorter than the window: whole-text TTR.
  EXPECT_DOUBLE_EQ(mattr(seq({"a", "b", "a", "c"})), 75.0);
}

TEST(Mattr, MatchesNaiveOracleOn1000RandomSequences) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 300), alpha(1, 50);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto t = random_tokens(rng, len(rng), alpha(rng));
    worst = std::max(worst, std::abs(mattr(seq(t)) - naive_mattr(t, kMattrWindow)));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Mattr, InvariantUnderRelabeling) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto t = random_tokens(rng, 120, 15);
    auto relabeled = t;
    for (auto& s : relabeled) s = "zz" + s + "q";
    EXPECT_DOUBLE_EQ(mattr(seq(t)), mattr(seq(relabeled)));
  }
}

TEST(Evenness, Examples) {
  EXPECT_DOUBLE_EQ(evenness(seq({"a", "b", "c", "d"})), 1.0);
  EXPECT_NEAR(evenness(seq({"a", "a", "b", "c"})), 0.9464, 1e-4);
  const double h = -(0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25));
  EXPECT_NEAR(evenness(seq({"a", "a", "b", "c"})), h / std::log(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(evenness(seq({"a", "a", "a"})), 1.0);
}

TEST(Evenness, BoundsAndEqualityCase) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto t = random_tokens(rng, 1 + rng() % 200, 1 + rng() % 30);
    const double e = evenness(seq(t));
    EXPECT_GE(e, 0.0);
    EXPECT_LE(e, 1.0);
    std::map<std::string, int> counts;
    for (const auto& s : t) ++counts[s];
    const bool equal = std::all_of(counts.begin(), counts.end(),
                                   [&](const auto& kv) { return kv.second == counts.begin()->second; });
    EXPECT_EQ(e == 1.0, equal);
  }
}

TEST(Disparity, Examples) {
  wordnet::SenseIndex idx;
  const std::uint32_t x_y[] = {100, 200};
  const std::uint32_t x[] = {100};
  const std::uint32_t z[] = {300};
  idx.add("car", wordnet::Pos::noun, x_y);
  idx.add("automobile", wordnet::Pos::noun, x);
  idx.add("dog", wordnet::Pos::noun, z);
  EXPECT_DOUBLE_EQ(disparity(seq({"car", "automobile", "dog"}), idx), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(disparity(seq({"car", "dog", "car"}), idx), 1.0);
  // Unattested types are excluded; nothing attested gives 1.
  EXPECT_DOUBLE_EQ(disparity(seq({"car", "automobile", "dog", "qq"}), idx), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(disparity(seq({"qq", "rr"}), idx), 1.0);
}

TEST(Disparity, RealFormatFixture) {
  const auto& db = testutil::mini_db();
  // car and automobile share 02958343; car has four more synsets, dog seven.
  EXPECT_DOUBLE_EQ(disparity(seq({"car", "automobile", "dog"}), db.index), 13.0 / 12.0);
}

TEST(Dispersion, Examples) {
  EXPECT_NEAR(dispersion(seq({"a", "b", "a"})), 100.0 / 3.0, 1e-12);
  EXPECT_NEAR(dispersion(seq({"a", "b", "a"})), 33.33, 5e-3);
  EXPECT_DOUBLE_EQ(dispersion(seq({"a", "b", "c"})), 0.0);
  std::vector<std::string> gap21 = {"a"};
  for (int i = 1; i <= 20; ++i) gap21.push_back("x" + std::to_string(i));
  gap21.push_back("a");
  EXPECT_DOUBLE_EQ(dispersion(seq(gap21)), 0.0);
  gap21.erase(gap21.begin() + 1);  // gap 20: inside the window
  EXPECT_NEAR(dispersion(seq(gap21)), 100.0 / 21.0, 1e-12);
}

TEST(Dispersion, MatchesBruteForce) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    auto t = random_tokens(rng, 1 + rng() % 250, 1 + rng() % 60);
    EXPECT_NEAR(dispersion(seq(t)), naive_dispersion(t, kDispersionWindow), 1e-9);
  }
}

TEST(Dispersion, AdjacentDuplicatesBeatFarApart) {
  // k duplicated types: adjacent pairs vs pairs separated by > window.
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<std::string> adjacent, apart;
    for (std::size_t d = 0; d < k; ++d) adjacent.insert(adjacent.end(), {"d" + std::to_string(d), "d" + std::to_string(d)});
    for (std::size_t d = 0; d < k; ++d) apart.push_back("d" + std::to_string(d));
    for (std::size_t f = 0; f < 25; ++f) apart.push_back("f" + std::to_string(f));
    for (std::size_t d = 0; d < k; ++d) apart.push_back("d" + std::to_string(d));
    for (std::size_t f = 0; f < 25; ++f) adjacent.push_back("f" + std::to_string(f));
    EXPECT_DOUBLE_EQ(dispersion(seq(apart)), 0.0);
    EXPECT_GT(dispersion(seq(adjacent)), dispersion(seq(apart)));
  }
}

TEST(Shuffle, OrderFreeMeasuresUnchangedPositionalOnesMayMove) {
  std::mt19937_64 rng(9);
  const auto& idx = testutil::mini_db().index;
  bool mattr_moved = false, dispersion_moved = false;
  for (int i = 0; i < 50; ++i) {
    auto t = random_tokens(rng, 150, 40);
    for (std::size_t j = 0; j < t.size(); j += 7) t[j] = (j % 2) ? "car" : "dog";
    auto s = t;
    std::shuffle(s.begin(), s.end(), rng);
    EXPECT_EQ(volume(seq(t)), volume(seq(s)));
    EXPECT_EQ(abundance(seq(t)), abundance(seq(s)));
    EXPECT_DOUBLE_EQ(evenness(seq(t)), evenness(seq(s)));
    EXPECT_DOUBLE_EQ(disparity(seq(t), idx), disparity(seq(s), idx));
    mattr_moved |= mattr(seq(t)) != mattr(seq(s));
    dispersion_moved |= dispersion(seq(t)) != dispersion(seq(s));
  }
  EXPECT_TRUE(mattr_moved);
  EXPECT_TRUE(dispersion_moved);
}

TEST(Profile, FiftyIdenticalTokens) {
  const auto& db = testutil::mini_db();
  std::string text;
  for (int i = 0; i < 50; ++i) text += "a ";
  const auto p = profile({"r1", text, {}}, db);
  EXPECT_EQ(p.volume, 50);
  EXPECT_EQ(p.abundance, 1);
  EXPECT_DOUBLE_EQ(p.mattr, 2.0);
  EXPECT_DOUBLE_EQ(p.evenness, 1.0);
  EXPECT_DOUBLE_EQ(p.disparity, 1.0);
  EXPECT_DOUBLE_EQ(p.dispersion, 98.0);
}

TEST(Profile, FourDistinctUnattestedWords) {
  const auto p = profile({"r2", "zorp quax blif mnemt", {}}, testutil::mini_db());
  EXPECT_EQ(p.volume, 4);
  EXPECT_EQ(p.abundance, 4);
  EXPECT_DOUBLE_EQ(p.mattr, 100.0);
  EXPECT_DOUBLE_EQ(p.evenness, 1.0);
  EXPECT_DOUBLE_EQ(p.disparity, 1.0);
  EXPECT_DOUBLE_EQ(p.dispersion, 0.0);
}

TEST(Profile, NoTokensNamesRecord) {
  try {
    profile({"empty42", "123 456 ...", {}}, testutil::mini_db());
    FAIL();
  } catch (const MeasurementError& e) {
    EXPECT_NE(std::string(e.what()).find("empty42"), std::string::npos);
  }
}

TEST(Profile, InvariantsHoldOnZipfStreams) {
  const auto& idx = testutil::mini_db().index;
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto z = simulate::zipf_text({200, 0.5 + 0.05 * static_cast<double>(s), 1 + 20 * s, s});
    EXPECT_EQ(invariant_violation(profile_sequence(z, idx)), "");
  }
}

TEST(FeatureSet, Parsing) {
  EXPECT_EQ(parse_feature_set("ld4"),
            (std::vector<Measure>{Measure::mattr, Measure::evenness, Measure::disparity, Measure::dispersion}));
  EXPECT_EQ(parse_feature_set("ld6").size(), 6u);
  EXPECT_EQ(parse_feature_set("dispersion,mattr"), (std::vector<Measure>{Measure::dispersion, Measure::mattr}));
  EXPECT_THROW(parse_feature_set("mattr,bogus"), ValidationError);
  EXPECT_THROW(parse_feature_set("mattr,mattr"), ValidationError);
  EXPECT_THROW(parse_feature_set(""), ValidationError);
}
