#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sightsee/intent.hpp"
#include "sightsee/knowledge_base.hpp"
#include "sightsee/motion.hpp"
#include "sightsee/tokenizer.hpp"

namespace sightsee {

enum class Speaker { kCustomer, kRobot };
std::string_view to_string(Speaker s);

struct TurnRecord {
  Speaker speaker = Speaker::kRobot;
  std::string text;
  DialogueState state = DialogueState::kGreeting;
  std::optional<ClassificationResult> classification;
  std::vector<MotionEvent> motions;
  std::string timestamp;

  bool operator==(const TurnRecord&) const = default;
};

// One JSON object per line; the on-disk transcript format.
std::string to_json_line(const TurnRecord& turn);
TurnRecord turn_from_json_line(std::string_view line);

inline constexpr std::string_view kNormalizedTimestamp = "<timestamp>";
// Replaces the timestamp so transcripts from different runs compare equal.
TurnRecord normalize_timestamp(TurnRecord turn);

struct SessionContext {
  std::string session_id;
  std::string choice_a;
  std::string choice_b;
  std::string recommended;
  std::uint64_t rng_seed = 0;
  std::string venue;
  DialogueState state = DialogueState::kGreeting;
  std::string memorable;
  // The follow-up answer is kept verbatim and never analyzed.
  std::string follow_up_answer;
  std::map<DialogueState, std::size_t> question_counts;
  std::vector<TurnRecord> transcript;
  bool master_quirk_used = false;
};

const std::vector<TurnRecord>& transcript(const SessionContext& ctx);

// Robot lines keyed by state name, plus two free phrases: "memory_updated"
// (uses {memorable}) and "more_questions" (uses {name}).
struct ScenarioTemplates {
  std::map<DialogueState, std::vector<std::string>> lines;
  std::string memory_updated;
  std::string more_questions;
};

// Reads the "states" and "phrases" sections of the templates file.
ScenarioTemplates load_scenario_templates(std::istream& in);

struct ScenarioConfig {
  std::size_t max_questions = 3;
  std::string default_spot{kDefaultSpot};
  std::string default_venue = "Miraikan";
};

class InvalidChoice : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SessionFinished : public std::logic_error {
 public:
  SessionFinished() : std::logic_error("session is already done") {}
};

using Clock = std::function<std::string()>;
// Current UTC time as ISO-8601 with milliseconds.
std::string utc_now_iso8601();

// Seeded uniform pick between the two choices.
std::string draw_recommended(const std::string& choice_a,
                             const std::string& choice_b, std::uint64_t seed);

// The counter-sales dialogue: greeting with a venue icebreaker, the
// memorable-spot question and its follow-up, explanation and question loop for
// each attraction, then the recommendation and a closing that calls the
// customer "master" once. Holds references only; every argument must outlive
// the engine.
class ScenarioEngine {
 public:
  ScenarioEngine(const Catalog& catalog, const ScenarioTemplates& scenario,
                 const AnswerTemplates& answers,
                 const IntentClassifier& classifier, const Gazetteer& gazetteer,
                 ScenarioConfig config = {}, Clock clock = utc_now_iso8601);

  // Throws InvalidChoice for equal or unknown ids. An empty venue uses the
  // configured default.
  std::pair<SessionContext, TurnRecord> start_session(
      std::string session_id, const std::string& choice_a,
      const std::string& choice_b, std::uint64_t seed,
      std::string venue = {}) const;

  // Consumes one customer reply (nullopt or empty means silence) and returns
  // the robot's answer. Both turns are appended to ctx.transcript. Throws
  // SessionFinished once ctx.state is Done.
  TurnRecord step(SessionContext& ctx,
                  const std::optional<std::string>& utterance) const;

  const ScenarioConfig& config() const { return config_; }
  const Catalog& catalog() const { return catalog_; }

 private:
  TurnRecord robot_turn(DialogueState state, const std::vector<std::string>& lines) const;
  std::vector<std::string> lines_for(DialogueState state,
                                     const std::map<std::string, std::string>& values) const;
  std::vector<std::string> explain(const AttractionRecord& attraction,
                                   DialogueState state) const;
  const AttractionRecord& attraction(const std::string& id) const;

  const Catalog& catalog_;
  const ScenarioTemplates& scenario_;
  const AnswerTemplates& answers_;
  const IntentClassifier& classifier_;
  const Gazetteer& gazetteer_;
  ScenarioConfig config_;
  Clock clock_;
};

}  // namespace sightsee
