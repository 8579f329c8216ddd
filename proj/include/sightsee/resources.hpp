#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sightsee/embedding_store.hpp"
#include "sightsee/intent.hpp"
#include "sightsee/knowledge_base.hpp"
#include "sightsee/scenario.hpp"
#include "sightsee/tokenizer.hpp"

namespace sightsee {

struct ResourcePaths {
  std::string embeddings;
  std::string gazetteer;
  std::string catalog;
  std::string rules;
  std::string refs;
  std::string templates;
  std::string impression_items;

  // The bundled demo files under `data_dir`.
  static ResourcePaths in_directory(const std::string& data_dir);
};

// Directory holding the bundled data files, fixed at build time.
std::string default_data_dir();

// Everything one engine needs, loaded once and then shared read-only. Not
// movable: the classifier and engines hold references into it.
class Resources {
 public:
  static std::unique_ptr<const Resources> load(const ResourcePaths& paths);

  Resources(const Resources&) = delete;
  Resources& operator=(const Resources&) = delete;

  EmbeddingTable table;
  Gazetteer gazetteer;
  Catalog catalog;
  ScenarioTemplates scenario_templates;
  AnswerTemplates answer_templates;
  std::vector<std::string> impression_items;
  std::unique_ptr<IntentClassifier> classifier;

 private:
  Resources(EmbeddingTable t, Gazetteer g, Catalog c)
      : table(std::move(t)), gazetteer(std::move(g)), catalog(std::move(c)) {}
};

}  // namespace sightsee
