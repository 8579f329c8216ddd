// Command line front end: serve | repl | classify | wrd | eval.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "sightsee/embedding_store.hpp"
#include "sightsee/intent.hpp"
#include "sightsee/metrics.hpp"
#include "sightsee/resources.hpp"
#include "sightsee/scenario.hpp"
#include "sightsee/service.hpp"
#include "sightsee/tokenizer.hpp"
#include "sightsee/wrd.hpp"

using namespace sightsee;

namespace {

void add_resource_flags(CLI::App* cmd, ResourcePaths& paths) {
  cmd->add_option("--embeddings", paths.embeddings, "word2vec text embedding file")
      ->capture_default_str();
  cmd->add_option("--gazetteer", paths.gazetteer, "proper-noun list, one per line")
      ->capture_default_str();
  cmd->add_option("--catalog", paths.catalog, "attraction catalog (JSON)")
      ->capture_default_str();
  cmd->add_option("--rules", paths.rules, "keyword rules (keyword<TAB>category)")
      ->capture_default_str();
  cmd->add_option("--refs", paths.refs, "reference sentences (category<TAB>sentence)")
      ->capture_default_str();
  cmd->add_option("--templates", paths.templates, "robot phrasing (JSON)")
      ->capture_default_str();
  cmd->add_option("--items", paths.impression_items, "questionnaire items, one per line")
      ->capture_default_str();
}

std::string describe_motions(const std::vector<MotionEvent>& motions) {
  std::string out;
  for (const auto& m : motions) {
    if (!out.empty()) out += ", ";
    out += std::string(to_string(m.kind)) + "/" + std::string(to_string(m.phase));
  }
  return out;
}

void print_robot(const TurnRecord& turn) {
  std::cout << "[robot:" << to_string(turn.state) << "] " << turn.text << "\n"
            << "    motions: " << describe_motions(turn.motions) << "\n";
}

std::string format_classification(const ClassificationResult& r) {
  std::string out = "category=" + std::string(to_key(r.category)) +
                    " stage=" + std::string(to_string(r.stage)) + " distance=";
  if (r.distance) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", *r.distance);
    out += buf;
  } else {
    out += "-";
  }
  if (r.matched) out += " matched=" + *r.matched;
  return out;
}

int run_wrd(const ResourcePaths& paths, const std::string& a, const std::string& b) {
  EmbeddingTable table = load_embeddings_file(paths.embeddings);
  Gazetteer gazetteer;
  if (!paths.gazetteer.empty()) gazetteer = load_gazetteer_file(paths.gazetteer);
  Segmenter segment(std::move(gazetteer), table);
  try {
    double d = wrd_distance(sentence_to_distribution(segment(a), table),
                            sentence_to_distribution(segment(b), table));
    std::printf("%.6f\n", d);
  } catch (const AllOutOfVocabulary&) {
    std::cerr << "error: a sentence has no in-vocabulary token\n";
    return 1;
  }
  return 0;
}

int run_classify(const ResourcePaths& paths, const std::string& utterance,
                 bool no_keywords) {
  auto res = Resources::load(paths);
  ClassificationResult r = no_keywords ? res->classifier->classify_wrd(utterance)
                                       : res->classifier->classify(utterance);
  std::cout << format_classification(r) << "\n";
  return 0;
}

struct SessionSpec {
  std::string choice_a;
  std::string choice_b;
  std::uint64_t seed = 0;
  std::string venue;
};

int run_repl(const ResourcePaths& paths, const SessionSpec& spec,
             const ScenarioConfig& config) {
  auto res = Resources::load(paths);
  ScenarioEngine engine(res->catalog, res->scenario_templates, res->answer_templates,
                        *res->classifier, res->gazetteer, config);
  auto [ctx, greeting] =
      engine.start_session("repl", spec.choice_a, spec.choice_b, spec.seed, spec.venue);
  print_robot(greeting);
  std::string line;
  while (ctx.state != DialogueState::kDone) {
    std::cout << "you> " << std::flush;
    if (!std::getline(std::cin, line)) {
      std::cout << "\n";
      break;
    }
    TurnRecord robot =
        engine.step(ctx, line.empty() ? std::nullopt : std::optional<std::string>(line));
    const TurnRecord& customer = ctx.transcript[ctx.transcript.size() - 2];
    if (customer.classification) {
      std::cout << "    (" << format_classification(*customer.classification) << ")\n";
    }
    print_robot(robot);
  }
  if (ctx.state == DialogueState::kDone) {
    std::cout << "-- session done; recommended: "
              << res->catalog.find(ctx.recommended)->name << "\n";
  }
  return 0;
}

struct ScriptedSession {
  SessionSpec spec;
  std::vector<std::string> lines;
  std::optional<SessionRatings> ratings;
};

// Script format: one customer utterance per line, a blank line is silence.
// Directive lines start with '@':
//   @session <choice_a> <choice_b> [seed] [venue]   begins a session
//   @ratings <pre> <post> <i1> ... <i9>              rates the current session
std::vector<ScriptedSession> parse_script(std::istream& in, const SessionSpec& fallback) {
  std::vector<ScriptedSession> sessions;
  std::string line;
  std::size_t line_no = 0;
  auto current = [&]() -> ScriptedSession& {
    if (sessions.empty()) sessions.push_back({fallback, {}, std::nullopt});
    return sessions.back();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("@session", 0) == 0) {
      std::istringstream ss(line.substr(8));
      SessionSpec spec = fallback;
      ss >> spec.choice_a >> spec.choice_b;
      if (spec.choice_b.empty()) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": @session needs two attraction ids");
      }
      if (!(ss >> spec.seed)) spec.seed = fallback.seed;
      std::string venue;
      std::getline(ss >> std::ws, venue);
      if (!venue.empty()) spec.venue = venue;
      sessions.push_back({spec, {}, std::nullopt});
    } else if (line.rfind("@ratings", 0) == 0) {
      std::istringstream ss(line.substr(8));
      SessionRatings r;
      ss >> r.desire.pre >> r.desire.post;
      for (auto& v : r.impressions.ratings) ss >> v;
      if (!ss) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": @ratings needs pre, post and 9 item ratings");
      }
      current().ratings = r;
    } else {
      current().lines.push_back(line);
    }
  }
  return sessions;
}

int run_eval(const ResourcePaths& paths, const std::vector<std::string>& scripts,
             const SessionSpec& fallback, const ScenarioConfig& config,
             bool print_transcripts) {
  auto res = Resources::load(paths);
  ScenarioEngine engine(res->catalog, res->scenario_templates, res->answer_templates,
                        *res->classifier, res->gazetteer, config);

  std::vector<SessionRatings> rated;
  std::size_t index = 0;
  for (const auto& path : scripts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open script: " + path);
    for (auto& scripted : parse_script(in, fallback)) {
      ++index;
      const auto& spec = scripted.spec;
      auto [ctx, greeting] = engine.start_session(
          "eval-" + std::to_string(index), spec.choice_a, spec.choice_b, spec.seed,
          spec.venue);
      std::size_t used = 0;
      while (ctx.state != DialogueState::kDone) {
        std::optional<std::string> said;
        if (used < scripted.lines.size()) {
          const std::string& l = scripted.lines[used];
          if (!l.empty()) said = l;
        }
        ++used;
        engine.step(ctx, said);
      }
      if (used > scripted.lines.size()) {
        std::cerr << "warning: session " << index << " ran out of script after "
                  << scripted.lines.size() << " lines; padded with silence\n";
      } else if (used < scripted.lines.size()) {
        std::cerr << "warning: session " << index << " ignored "
                  << scripted.lines.size() - used << " trailing lines\n";
      }

      std::cout << "session " << index << ": " << spec.choice_a << " vs "
                << spec.choice_b << ", recommended " << ctx.recommended
                << ", memorable " << ctx.memorable << ", "
                << ctx.transcript.size() << " turns";
      if (scripted.ratings) {
        std::cout << ", effect "
                  << format_mean(recommendation_effect(scripted.ratings->desire));
        rated.push_back(*scripted.ratings);
      }
      std::cout << "\n";
      if (print_transcripts) {
        for (const auto& t : ctx.transcript) {
          std::cout << to_json_line(normalize_timestamp(t)) << "\n";
        }
      }
    }
  }
  if (rated.empty()) {
    std::cout << "no rated sessions; nothing to aggregate\n";
    return 0;
  }
  std::cout << format_report(aggregate(rated), res->impression_items);
  return 0;
}

int run_serve(const ResourcePaths& paths, const std::string& host, int port,
              const std::string& data_dir, const ScenarioConfig& config) {
  auto res = Resources::load(paths);
  DialogueService service(*res, data_dir, config);
  httplib::Server server;
  bind_routes(server, service);
  std::cerr << "sightsee: " << service.session_count() << " session(s) restored from "
            << data_dir << "; listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counter-sales dialogue engine for choosing between two attractions"};
  app.require_subcommand(1);

  ResourcePaths paths = ResourcePaths::in_directory(default_data_dir());
  ScenarioConfig config;
  SessionSpec spec{"aquarium", "castle", 1, ""};

  auto add_session_flags = [&](CLI::App* cmd) {
    cmd->add_option("--choice-a", spec.choice_a, "first attraction id")
        ->capture_default_str();
    cmd->add_option("--choice-b", spec.choice_b, "second attraction id")
        ->capture_default_str();
    cmd->add_option("--seed", spec.seed, "seed for the recommendation draw")
        ->capture_default_str();
    cmd->add_option("--venue", spec.venue, "venue named in the icebreaker");
    cmd->add_option("--max-questions", config.max_questions,
                    "questions answered per attraction")
        ->capture_default_str();
    cmd->add_option("--default-spot", config.default_spot,
                    "slot value when no memorable spot is recognised")
        ->capture_default_str();
  };

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "sightsee-data";
  add_resource_flags(serve, paths);
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--data-dir", data_dir, "where session logs are kept")
      ->capture_default_str();
  serve->add_option("--max-questions", config.max_questions)->capture_default_str();

  auto* repl = app.add_subcommand("repl", "chat with one session in the terminal");
  add_resource_flags(repl, paths);
  add_session_flags(repl);

  auto* classify_cmd = app.add_subcommand("classify", "classify one question");
  std::string utterance;
  bool no_keywords = false;
  add_resource_flags(classify_cmd, paths);
  classify_cmd->add_option("utterance", utterance)->required();
  classify_cmd->add_flag("--no-keywords", no_keywords, "skip the keyword stage");

  auto* wrd_cmd = app.add_subcommand("wrd", "Word Rotator's Distance of two sentences");
  std::string sentence_a, sentence_b;
  wrd_cmd->add_option("--embeddings", paths.embeddings)->capture_default_str();
  wrd_cmd->add_option("--gazetteer", paths.gazetteer)->capture_default_str();
  wrd_cmd->add_option("sentence1", sentence_a)->required();
  wrd_cmd->add_option("sentence2", sentence_b)->required();

  auto* eval = app.add_subcommand("eval", "replay scripted sessions and report metrics");
  std::vector<std::string> scripts;
  bool print_transcripts = false;
  add_resource_flags(eval, paths);
  add_session_flags(eval);
  eval->add_option("--script", scripts, "script file (repeatable)")->required();
  eval->add_flag("--transcript", print_transcripts,
                 "print each transcript with timestamps normalized");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return run_serve(paths, host, port, data_dir, config);
    if (*repl) return run_repl(paths, spec, config);
    if (*classify_cmd) return run_classify(paths, utterance, no_keywords);
    if (*wrd_cmd) return run_wrd(paths, sentence_a, sentence_b);
    if (*eval) return run_eval(paths, scripts, spec, config, print_transcripts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
