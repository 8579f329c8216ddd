#include "sightsee/knowledge_base.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace sightsee {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Catalog::Catalog(std::vector<AttractionRecord> attractions)
    : attractions_(std::move(attractions)) {
  if (attractions_.size() != kSize) {
    throw std::invalid_argument("catalog must hold exactly 6 attractions, got " +
                                std::to_string(attractions_.size()));
  }
  std::set<std::string> ids, names;
  for (const auto& a : attractions_) {
    if (a.id.empty()) throw std::invalid_argument("attraction with empty id");
    if (a.name.empty()) {
      throw std::invalid_argument("attraction '" + a.id + "' has no name");
    }
    if (a.highlights.empty()) {
      throw std::invalid_argument("attraction '" + a.id + "' has no highlights");
    }
    if (a.info.count(IntentCategory::kNoQuestion) != 0) {
      throw std::invalid_argument("attraction '" + a.id +
                                  "' carries a no_question info field");
    }
    if (!ids.insert(a.id).second) {
      throw std::invalid_argument("duplicate attraction id '" + a.id + "'");
    }
    if (!names.insert(a.name).second) {
      throw std::invalid_argument("duplicate attraction name '" + a.name + "'");
    }
  }
}

const AttractionRecord* Catalog::find(std::string_view id) const {
  for (const auto& a : attractions_) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

Catalog load_catalog(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("catalog is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("catalog must be a JSON list");

  std::vector<AttractionRecord> records;
  for (const auto& item : doc) {
    if (!item.is_object()) {
      throw std::invalid_argument("catalog entries must be objects");
    }
    AttractionRecord r;
    r.id = item.value("id", "");
    r.name = item.value("name", "");
    if (item.contains("highlights")) {
      for (const auto& h : item.at("highlights")) {
        r.highlights.push_back(h.get<std::string>());
      }
    }
    if (item.contains("info")) {
      for (const auto& [key, value] : item.at("info").items()) {
        auto c = parse_category(key);
        if (!c || *c == IntentCategory::kNoQuestion) {
          throw std::invalid_argument("unknown info field '" + key + "'");
        }
        r.info[*c] = value.get<std::string>();
      }
    }
    records.push_back(std::move(r));
  }
  return Catalog(std::move(records));
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file: " + path);
  return load_catalog(in);
}

std::string serialize_catalog(const Catalog& catalog) {
  ordered_json doc = ordered_json::array();
  for (const auto& a : catalog.attractions()) {
    ordered_json item;
    item["id"] = a.id;
    item["name"] = a.name;
    item["highlights"] = a.highlights;
    ordered_json info = ordered_json::object();
    for (const auto& [category, value] : a.info) {
      info[std::string(to_key(category))] = value;
    }
    item["info"] = std::move(info);
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

AnswerTemplates load_answer_templates(std::istream& in) {
  json doc = json::parse(in);
  if (!doc.contains("answers")) {
    throw std::invalid_argument("templates file has no \"answers\" section");
  }
  const json& answers = doc.at("answers");
  AnswerTemplates t;
  for (IntentCategory c : kAllCategories) {
    if (c == IntentCategory::kNoQuestion) continue;
    std::string key(to_key(c));
    if (!answers.contains(key)) {
      throw std::invalid_argument("missing answer template '" + key + "'");
    }
    t.by_category[c] = answers.at(key).get<std::string>();
  }
  if (!answers.contains("missing")) {
    throw std::invalid_argument("missing answer template 'missing'");
  }
  t.missing = answers.at("missing").get<std::string>();
  return t;
}

std::string answer(const AttractionRecord& record, IntentCategory category,
                   const AnswerTemplates& templates) {
  if (category == IntentCategory::kNoQuestion) {
    throw std::invalid_argument("answer() called with no_question");
  }
  auto it = record.info.find(category);
  if (it == record.info.end()) {
    return render_template(templates.missing, {{"name", record.name}});
  }
  return render_template(templates.by_category.at(category),
                         {{"name", record.name}, {"value", it->second}});
}

std::string render_template(std::string_view text,
                            const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find('{', pos);
    if (open == std::string_view::npos) break;
    std::size_t close = text.find('}', open + 1);
    if (close == std::string_view::npos) break;
    out.append(text.substr(pos, open - pos));
    auto it = values.find(std::string(text.substr(open + 1, close - open - 1)));
    if (it != values.end()) {
      out.append(it->second);
    } else {
      out.append(text.substr(open, close - open + 1));
    }
    pos = close + 1;
  }
  out.append(text.substr(pos));
  return out;
}

}  // namespace sightsee
