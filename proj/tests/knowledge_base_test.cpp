#include "sightsee/knowledge_base.hpp"

#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "support/fixtures.hpp"

namespace sightsee {
namespace {

using C = IntentCategory;

AttractionRecord record(const std::string& id) {
  return {id, "Name " + id, {"a highlight"}, {{C::kPrice, "大人500円"}}};
}

std::vector<AttractionRecord> six() {
  std::vector<AttractionRecord> out;
  for (const char* id : {"a", "b", "c", "d", "e", "f"}) out.push_back(record(id));
  return out;
}

AnswerTemplates templates() {
  std::ifstream in(testing_support::data_file("templates.json"));
  return load_answer_templates(in);
}

TEST(Catalog, Shape) {
  EXPECT_NO_THROW(Catalog{six()});
  auto five = six();
  five.pop_back();
  EXPECT_THROW(Catalog{five}, std::invalid_argument);
  auto dup_id = six();
  dup_id[1].id = "a";
  EXPECT_THROW(Catalog{dup_id}, std::invalid_argument);
  auto dup_name = six();
  dup_name[1].name = dup_name[0].name;
  EXPECT_THROW(Catalog{dup_name}, std::invalid_argument);
  auto empty_name = six();
  empty_name[2].name.clear();
  EXPECT_THROW(Catalog{empty_name}, std::invalid_argument);
  auto no_highlights = six();
  no_highlights[3].highlights.clear();
  EXPECT_THROW(Catalog{no_highlights}, std::invalid_argument);
  auto no_question = six();
  no_question[0].info[C::kNoQuestion] = "x";
  EXPECT_THROW(Catalog{no_question}, std::invalid_argument);
}

TEST(Catalog, Find) {
  Catalog c(six());
  ASSERT_NE(c.find("c"), nullptr);
  EXPECT_EQ(c.find("c")->name, "Name c");
  EXPECT_EQ(c.find("zz"), nullptr);
}

TEST(Answer, Examples) {
  auto t = templates();
  auto r = record("castle");
  EXPECT_NE(answer(r, C::kPrice, t).find("大人500円"), std::string::npos);
  std::string apology = answer(r, C::kParking, t);
  EXPECT_NE(apology.find(r.name), std::string::npos);
  EXPECT_THROW(answer(r, C::kNoQuestion, t), std::invalid_argument);
}

TEST(Answer, AlwaysContainsValueOrName) {
  auto t = templates();
  Catalog catalog = load_catalog_file(testing_support::data_file("catalog.json"));
  for (const auto& rec : catalog.attractions()) {
    for (C c : kAllCategories) {
      if (c == C::kNoQuestion) continue;
      std::string text = answer(rec, c, t);
      auto it = rec.info.find(c);
      if (it != rec.info.end()) {
        EXPECT_NE(text.find(it->second), std::string::npos) << rec.id;
      } else {
        EXPECT_NE(text.find(rec.name), std::string::npos) << rec.id;
      }
    }
  }
}

TEST(RenderTemplate, KeepsUnknownPlaceholders) {
  EXPECT_EQ(render_template("{a} and {b} {", {{"a", "x"}}), "x and {b} {");
  EXPECT_EQ(render_template("{a}{a}", {{"a", "{a}"}}), "{a}{a}");
}

TEST(LoadCatalog, Errors) {
  std::istringstream not_json("not json");
  EXPECT_THROW(load_catalog(not_json), std::invalid_argument);
  std::istringstream bad_key(
      R"([{"id":"a","name":"A","highlights":["h"],"info":{"cost":"1"}}])");
  EXPECT_THROW(load_catalog(bad_key), std::invalid_argument);
}

TEST(LoadCatalog, RoundTripIsByteIdentical) {
  Catalog first = load_catalog_file(testing_support::data_file("catalog.json"));
  std::string once = serialize_catalog(first);
  std::istringstream in(once);
  std::string twice = serialize_catalog(load_catalog(in));
  EXPECT_EQ(once, twice);

  std::ifstream file(testing_support::data_file("catalog.json"));
  std::stringstream raw;
  raw << file.rdbuf();
  EXPECT_EQ(raw.str(), once);
}

}  // namespace
}  // namespace sightsee
