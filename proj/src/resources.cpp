#include "sightsee/resources.hpp"

#include <fstream>

#include "sightsee/metrics.hpp"

#ifndef SIGHTSEE_DATA_DIR
#define SIGHTSEE_DATA_DIR "data"
#endif

namespace sightsee {

namespace {

std::ifstream open_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open ") + what + ": " + path);
  return in;
}

}  // namespace

std::string default_data_dir() { return SIGHTSEE_DATA_DIR; }

ResourcePaths ResourcePaths::in_directory(const std::string& data_dir) {
  const std::string d = data_dir.empty() || data_dir.back() == '/' ? data_dir
                                                                   : data_dir + "/";
  return ResourcePaths{
      d + "embeddings.txt", d + "gazetteer.txt", d + "catalog.json",
      d + "rules.tsv",      d + "references.tsv", d + "templates.json",
      d + "impression_items.txt",
  };
}

std::unique_ptr<const Resources> Resources::load(const ResourcePaths& paths) {
  std::unique_ptr<Resources> r(new Resources(load_embeddings_file(paths.embeddings),
                                             load_gazetteer_file(paths.gazetteer),
                                             load_catalog_file(paths.catalog)));
  {
    auto in = open_or_throw(paths.templates, "templates file");
    r->scenario_templates = load_scenario_templates(in);
  }
  {
    auto in = open_or_throw(paths.templates, "templates file");
    r->answer_templates = load_answer_templates(in);
  }
  r->impression_items = load_impression_items_file(paths.impression_items);

  Segmenter segmenter(r->gazetteer, r->table);
  auto refs = ReferenceSet::build(load_references_file(paths.refs), segmenter, r->table);
  r->classifier = std::make_unique<IntentClassifier>(
      load_rules_file(paths.rules), std::move(refs), r->table, std::move(segmenter));
  return r;
}

}  // namespace sightsee
