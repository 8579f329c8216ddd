#include "sightsee/intent.hpp"

#include <iterator>
#include <limits>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "sightsee/resources.hpp"
#include "support/fixtures.hpp"
#include "support/wrd_oracle.hpp"

namespace sightsee {
namespace {

using C = IntentCategory;

const Resources& bundled() {
  static auto res = Resources::load(
      ResourcePaths::in_directory(testing_support::data_file("")));
  return *res;
}

TEST(Categories, KeysRoundTrip) {
  for (C c : kAllCategories) EXPECT_EQ(parse_category(to_key(c)), c);
  EXPECT_FALSE(parse_category("Price").has_value());
  for (Stage s : {Stage::kKeyword, Stage::kWrd, Stage::kFallback}) {
    EXPECT_EQ(parse_stage(to_string(s)), s);
  }
}

TEST(ClassifyKeyword, Examples) {
  std::vector<KeywordRule> rules = {
      {"特にありません", C::kNoQuestion}, {"料金", C::kPrice}, {"電車", C::kStation}};
  auto price = classify_keyword("料金はいくらですか", rules);
  ASSERT_TRUE(price.has_value());
  EXPECT_EQ(price->category, C::kPrice);
  EXPECT_EQ(price->stage, Stage::kKeyword);
  EXPECT_EQ(price->matched, "料金");
  EXPECT_FALSE(price->distance.has_value());

  EXPECT_EQ(classify_keyword("電車で行けますか", rules)->category, C::kStation);
  EXPECT_EQ(classify_keyword("特にありません", rules)->category, C::kNoQuestion);
  EXPECT_FALSE(classify_keyword("こんにちは", rules).has_value());
  EXPECT_FALSE(classify_keyword("", rules).has_value());
}

TEST(ClassifyKeyword, FirstRuleWins) {
  std::vector<KeywordRule> rules = {{"駅", C::kStation}, {"駐車場", C::kParking}};
  EXPECT_EQ(classify_keyword("駅の駐車場", rules)->category, C::kStation);
  std::vector<KeywordRule> flipped = {{"駐車場", C::kParking}, {"駅", C::kStation}};
  EXPECT_EQ(classify_keyword("駅の駐車場", flipped)->category, C::kParking);
}

TEST(LoadRules, Errors) {
  std::istringstream ok("# c\n料金\tprice\n\n駅\tstation\n");
  EXPECT_EQ(load_rules(ok).size(), 2u);
  std::istringstream bad_cat("料金\tcost\n");
  EXPECT_THROW(load_rules(bad_cat), std::invalid_argument);
  std::istringstream no_tab("料金 price\n");
  EXPECT_THROW(load_rules(no_tab), std::invalid_argument);
}

TEST(BundledClassifier, ShippedKeywordExamples) {
  const auto& clf = *bundled().classifier;
  EXPECT_EQ(clf.classify("料金はいくらですか").category, C::kPrice);
  EXPECT_EQ(clf.classify("電車で行けますか").category, C::kStation);
  auto none = clf.classify("特にありません");
  EXPECT_EQ(none.category, C::kNoQuestion);
  EXPECT_EQ(none.stage, Stage::kKeyword);
}

TEST(BundledClassifier, KeywordPrecedence) {
  const auto& clf = *bundled().classifier;
  auto r = clf.classify("料金を教えて");
  EXPECT_EQ(r.category, C::kPrice);
  EXPECT_EQ(r.stage, Stage::kKeyword);
  for (const auto& text : {"料金を教えて", "駐車場はありますか", "何時ですか"}) {
    auto kw = classify_keyword(text, clf.rules());
    ASSERT_TRUE(kw.has_value());
    EXPECT_EQ(clf.classify(text), *kw);
  }
}

TEST(BundledClassifier, ReferencesClassifyToThemselves) {
  const auto& clf = *bundled().classifier;
  ASSERT_EQ(clf.references().sentences().size(), 28u);
  for (const auto& ref : clf.references().sentences()) {
    auto r = clf.classify_wrd(ref.text);
    EXPECT_EQ(r.category, ref.category) << ref.text;
    EXPECT_EQ(r.stage, Stage::kWrd);
    ASSERT_TRUE(r.distance.has_value());
    EXPECT_NEAR(*r.distance, 0.0, 1e-9) << ref.text;
    EXPECT_TRUE(r.matched.has_value());
  }
}

TEST(BundledClassifier, AllOutOfVocabularyFallsBack) {
  const auto& clf = *bundled().classifier;
  for (const auto& text : {"zzz qqq", "", "   "}) {
    auto r = clf.classify(text);
    EXPECT_EQ(r.category, C::kNoQuestion);
    EXPECT_EQ(r.stage, Stage::kFallback);
    EXPECT_FALSE(r.distance.has_value());
  }
}

TEST(BundledClassifier, ArgminMatchesRecomputation) {
  const auto& res = bundled();
  const auto& clf = *res.classifier;
  const auto& vocab = res.table.tokens();
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> len(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    for (int k = len(rng); k > 0; --k) text += vocab[pick(rng)] + " ";
    auto r = clf.classify_wrd(text);
    ASSERT_EQ(r.stage, Stage::kWrd) << text;

    auto utt = sentence_to_distribution(clf.segmenter()(text), res.table);
    double best = std::numeric_limits<double>::infinity();
    C best_cat = C::kNoQuestion;
    for (const auto& ref : clf.references().sentences()) {
      auto ref_dist = sentence_to_distribution(clf.segmenter()(ref.text), res.table);
      double d = wrd_distance(utt, ref_dist);
      if (d < best) {
        best = d;
        best_cat = ref.category;
      }
    }
    EXPECT_NEAR(*r.distance, best, 1e-12) << text;
    EXPECT_EQ(r.category, best_cat) << text;
    EXPECT_EQ(clf.classify_wrd(text), r);
  }
}

// Orthogonal toy embedding, one direction per category plus two shared words.
class ToyClassifier : public ::testing::Test {
 protected:
  EmbeddingTable table = testing_support::make_table(
      7, {{"price", {1, 0, 0, 0, 0, 0, 0}},
          {"hours", {0, 1, 0, 0, 0, 0, 0}},
          {"days", {0, 0, 1, 0, 0, 0, 0}},
          {"station", {0, 0, 0, 1, 0, 0, 0}},
          {"highway", {0, 0, 0, 0, 1, 0, 0}},
          {"parking", {0, 0, 0, 0, 0, 1, 0}},
          {"nothing", {0, 0, 0, 0, 0, 0, 1}},
          {"lot", {0, 0, 0, 0, 0.2, 1, 0}},
          {"nearby", {0.3, 0, 0, 0.3, 0.3, 0.3, 0.3}}});
  Segmenter segmenter{Gazetteer{}, table};

  std::vector<std::pair<C, std::string>> entries() const {
    const std::vector<std::pair<C, std::string>> base = {
        {C::kPrice, "price"},         {C::kOpeningHours, "hours"},
        {C::kOpeningDays, "days"},    {C::kStation, "station nearby"},
        {C::kHighway, "highway"},     {C::kParking, "parking lot"},
        {C::kNoQuestion, "nothing"}};
    std::vector<std::pair<C, std::string>> out;
    for (const auto& e : base)
      for (std::size_t k = 0; k < ReferenceSet::kPerCategory; ++k) out.push_back(e);
    return out;
  }
};

TEST_F(ToyClassifier, ParkingLotNearby) {
  auto refs = ReferenceSet::build(entries(), segmenter, table);
  std::vector<std::string> utterance = {"parking", "lot", "nearby"};

  // Oracle argmin over the seven distinct references.
  double best = std::numeric_limits<double>::infinity();
  C expected = C::kNoQuestion;
  for (const auto& [cat, text] : entries()) {
    std::istringstream words(text);
    std::vector<std::string> tokens{std::istream_iterator<std::string>(words), {}};
    double d = oracle::oracle_wrd(utterance, tokens, table);
    if (d < best - 1e-12) {
      best = d;
      expected = cat;
    }
  }
  ASSERT_EQ(expected, C::kParking);

  auto r = classify_wrd("parking lot nearby", refs, table, segmenter);
  EXPECT_EQ(r.category, C::kParking);
  EXPECT_EQ(r.matched, "parking lot");
  EXPECT_NEAR(*r.distance, best, 1e-9);
}

TEST_F(ToyClassifier, TiesGoToEarlierCategory) {
  auto refs = ReferenceSet::build(entries(), segmenter, table);
  // Equidistant from price and hours.
  auto r = classify_wrd("price hours", refs, table, segmenter);
  EXPECT_EQ(r.category, C::kPrice);
}

TEST_F(ToyClassifier, ReferenceSetShape) {
  auto three = entries();
  three.pop_back();
  EXPECT_THROW(ReferenceSet::build(three, segmenter, table), std::invalid_argument);
  auto five = entries();
  five.push_back({C::kPrice, "price"});
  EXPECT_THROW(ReferenceSet::build(five, segmenter, table), std::invalid_argument);
  auto oov = entries();
  oov.front().second = "zzz";
  EXPECT_THROW(ReferenceSet::build(oov, segmenter, table), std::invalid_argument);
}

}  // namespace
}  // namespace sightsee
