#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sightsee/intent.hpp"

namespace sightsee {

struct AttractionRecord {
  std::string id;
  std::string name;
  std::vector<std::string> highlights;
  // Any subset of the six info categories; NoQuestion never appears.
  std::map<IntentCategory, std::string> info;
};

class Catalog {
 public:
  static constexpr std::size_t kSize = 6;

  // Throws std::invalid_argument unless there are exactly six records with
  // unique ids and names, non-empty names and highlights.
  explicit Catalog(std::vector<AttractionRecord> attractions);

  const std::vector<AttractionRecord>& attractions() const { return attractions_; }
  const AttractionRecord* find(std::string_view id) const;

 private:
  std::vector<AttractionRecord> attractions_;
};

// JSON list of {id, name, highlights: [..], info: {price, opening_hours,
// opening_days, station, highway, parking}}.
Catalog load_catalog(std::istream& in);
Catalog load_catalog_file(const std::string& path);
std::string serialize_catalog(const Catalog& catalog);

struct AnswerTemplates {
  std::map<IntentCategory, std::string> by_category;
  std::string missing;
};

// Reads the "answers" object of the templates file: one entry per info
// category plus "missing".
AnswerTemplates load_answer_templates(std::istream& in);

// Fills {name} and {value}; an absent field uses the apology template.
// Throws std::invalid_argument for NoQuestion.
std::string answer(const AttractionRecord& record, IntentCategory category,
                   const AnswerTemplates& templates);

// Replaces each "{key}" with its value; unknown placeholders stay verbatim.
std::string render_template(std::string_view text,
                            const std::map<std::string, std::string>& values);

}  // namespace sightsee
