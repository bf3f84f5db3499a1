#include <gtest/gtest.h>

#include <sstream>

#include "lexidiv/error.hpp"
#include "lexidiv/wordnet.hpp"
#include "test_util.hpp"

using namespace lexidiv;
using namespace lexidiv::wordnet;

namespace {

std::vector<std::uint32_t> offsets(const std::vector<SynsetId>& ids) {
  std::vector<std::uint32_t> out;
  for (const auto& s : ids) out.push_back(s.offset);
  return out;
}

}  // namespace

TEST(WordnetIndex, ParsesRealFormatDogLine) {
  SenseIndex idx;
  parse_index("dog n 7 5 @ ~ #m #p %p 7 1 02084071 10114209 10023039 09886220 07676602 03901548 02710044  \r\n",
              Pos::noun, "index.noun", idx);
  const auto& s = idx.lookup("dog", Pos::noun);
  ASSERT_EQ(s.size(), 7u);
  auto o = offsets(s);
  EXPECT_NE(std::find(o.begin(), o.end(), 2084071u), o.end());
  EXPECT_TRUE(idx.lookup("dog", Pos::verb).empty());
}

TEST(WordnetIndex, SkipsLicenseHeaderAndDetectsVersion) {
  const auto& db = testutil::mini_db();
  EXPECT_EQ(db.index.version(), "3.0");
  EXPECT_TRUE(db.index.contains("dog", Pos::noun));
  EXPECT_TRUE(db.index.lookup("qwzx", Pos::noun).empty());
}

TEST(WordnetIndex, SpacesNormalizedToUnderscores) {
  const auto& db = testutil::mini_db();
  EXPECT_TRUE(db.index.contains("state_of_the_art", Pos::noun));
  EXPECT_TRUE(db.index.contains("state of the art", Pos::noun));
}

TEST(WordnetIndex, MalformedLinesReportFileAndLine) {
  SenseIndex idx;
  try {
    parse_index("dog n 7 5 @ ~ #m #p %p 7 1 02084071 10114209 10023039 09886220 07676602 03901548 02710044\n"
                "cat n 2 0 2 0 123\n",
                Pos::noun, "index.noun", idx);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("index.noun:2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_index("dog v 1 0 1 0 123\n", Pos::noun, "x", idx), ParseError);
  EXPECT_THROW(parse_index("dog n 1 0 1 0 12a\n", Pos::noun, "x", idx), ParseError);
  EXPECT_THROW(parse_index("dog n\n", Pos::noun, "x", idx), ParseError);
}

TEST(WordnetIndex, SatelliteAdjectivesAccepted) {
  SenseIndex idx;
  parse_index("fast s 1 0 1 0 00976508\n", Pos::adj, "index.adj", idx);
  EXPECT_TRUE(idx.contains("fast", Pos::adj));
}

TEST(WordnetIndex, MissingFileIsIoError) {
  auto dir = testutil::scratch_dir("wn_missing");
  testutil::write(dir / "index.noun", "");
  EXPECT_THROW(load_wordnet(dir), IoError);
}

TEST(WordnetIndex, SerializeIsIdempotentAcrossLoads) {
  auto a = load_wordnet(testutil::mini_wordnet_dir());
  auto b = load_wordnet(testutil::mini_wordnet_dir());
  EXPECT_EQ(a.index.serialize(), b.index.serialize());
  SenseIndex again;
  for (auto pos : kAllPos) {
    // Reparse serialized triples through the public add() path.
    std::istringstream in(a.index.serialize());
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string lemma, p;
      ls >> lemma >> p;
      if (p != to_string(pos)) continue;
      std::vector<std::uint32_t> offs;
      for (std::uint32_t o; ls >> o;) offs.push_back(o);
      again.add(lemma, pos, offs);
    }
  }
  EXPECT_EQ(again.serialize(), a.index.serialize());
}

TEST(WordnetMorph, ExceptionFileMapping) {
  const auto& db = testutil::mini_db();
  EXPECT_EQ(db.morph.exceptions("sat", Pos::verb), (std::vector<std::string>{"sit"}));
  EXPECT_EQ(db.morph.exceptions("better", Pos::adj), (std::vector<std::string>{"good", "well"}));
  EXPECT_TRUE(db.morph.exceptions("sat", Pos::noun).empty());
}

TEST(WordnetMorph, MorphyExamples) {
  const auto& db = testutil::mini_db();
  EXPECT_EQ(morphy("sat", Pos::verb, db.morph, db.index), (std::vector<std::string>{"sit"}));
  EXPECT_EQ(morphy("dogs", Pos::noun, db.morph, db.index), (std::vector<std::string>{"dog"}));
  EXPECT_EQ(morphy("dog", Pos::noun, db.morph, db.index), (std::vector<std::string>{"dog"}));
  EXPECT_EQ(morphy("churches", Pos::noun, db.morph, db.index), (std::vector<std::string>{"church"}));
  EXPECT_EQ(morphy("boxes", Pos::noun, db.morph, db.index), (std::vector<std::string>{"box"}));
  EXPECT_EQ(morphy("walking", Pos::verb, db.morph, db.index), (std::vector<std::string>{"walk"}));
  EXPECT_EQ(morphy("stated", Pos::verb, db.morph, db.index), (std::vector<std::string>{"state"}));
  EXPECT_EQ(morphy("bigger", Pos::adj, db.morph, db.index), (std::vector<std::string>{"big"}));
  EXPECT_TRUE(morphy("qwzx", Pos::noun, db.morph, db.index).empty());
}

TEST(WordnetMorph, OutputsAreAttestedUnlessFromExceptions) {
  const auto& db = testutil::mini_db();
  for (const char* form : {"dogs", "cats", "boxes", "glasses", "walks", "walked", "books", "states", "men",
                           "sat", "was", "ran", "better", "faster", "quizzes"}) {
    for (auto pos : kAllPos) {
      const auto& exc = db.morph.exceptions(form, pos);
      for (const auto& base : morphy(form, pos, db.morph, db.index)) {
        const bool from_exc = std::find(exc.begin(), exc.end(), base) != exc.end();
        EXPECT_TRUE(from_exc || db.index.contains(base, pos)) << form << " -> " << base;
      }
    }
  }
}

TEST(WordnetSenses, UnionAcrossPos) {
  SenseIndex idx;
  const std::uint32_t ab[] = {10, 20};
  const std::uint32_t c[] = {30};
  idx.add("x", Pos::noun, ab);
  EXPECT_EQ(offsets(senses("x", idx)), (std::vector<std::uint32_t>{10, 20}));
  idx.add("y", Pos::noun, std::span<const std::uint32_t>(ab, 1));
  idx.add("y", Pos::verb, c);
  auto s = senses("y", idx);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (SynsetId{10, Pos::noun}));
  EXPECT_EQ(s[1], (SynsetId{30, Pos::verb}));
  EXPECT_TRUE(senses("zzz", idx).empty());
}

TEST(WordnetReal, LoadsFullDatabaseWhenAvailable) {
  const auto dir = testutil::real_wordnet_dir();
  if (dir.empty()) GTEST_SKIP() << "no full WordNet configured (LEXIDIV_WORDNET_DIR)";
  const auto db = load_wordnet(dir);
  EXPECT_EQ(db.index.version(), "3.0");
  EXPECT_GT(db.index.lemma_count(), 140000u);
  auto dog = offsets(db.index.lookup("dog", Pos::noun));
  EXPECT_NE(std::find(dog.begin(), dog.end(), 2084071u), dog.end());
  EXPECT_EQ(db.morph.exceptions("sat", Pos::verb), (std::vector<std::string>{"sit"}));
  EXPECT_EQ(morphy("sat", Pos::verb, db.morph, db.index), (std::vector<std::string>{"sit"}));
  EXPECT_EQ(morphy("dogs", Pos::noun, db.morph, db.index), (std::vector<std::string>{"dog"}));
  // car and automobile share synset 02958343.
  auto car = offsets(db.index.lookup("car", Pos::noun));
  auto automobile = offsets(db.index.lookup("automobile", Pos::noun));
  EXPECT_NE(std::find(car.begin(), car.end(), 2958343u), car.end());
  EXPECT_EQ(automobile, (std::vector<std::uint32_t>{2958343u}));
}
