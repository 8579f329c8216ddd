#include "sightsee/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <random>

#include "json.hpp"

namespace sightsee {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Speaker s) {
  return s == Speaker::kCustomer ? "Customer" : "Robot";
}

namespace {

Speaker parse_speaker(std::string_view s) {
  if (s == "Customer") return Speaker::kCustomer;
  if (s == "Robot") return Speaker::kRobot;
  throw std::invalid_argument("unknown speaker '" + std::string(s) + "'");
}

template <typename T>
T require(std::optional<T> v, std::string_view what, const std::string& raw) {
  if (!v) throw std::invalid_argument("unknown " + std::string(what) + " '" + raw + "'");
  return *v;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (l.empty()) continue;
    if (!out.empty()) out += ' ';
    out += l;
  }
  return out;
}

}  // namespace

std::string to_json_line(const TurnRecord& turn) {
  ordered_json j;
  j["speaker"] = to_string(turn.speaker);
  j["state"] = to_string(turn.state);
  j["text"] = turn.text;
  if (turn.classification) {
    const auto& c = *turn.classification;
    ordered_json cj;
    cj["category"] = to_key(c.category);
    cj["stage"] = to_string(c.stage);
    cj["distance"] = c.distance ? ordered_json(*c.distance) : ordered_json(nullptr);
    cj["matched"] = c.matched ? ordered_json(*c.matched) : ordered_json(nullptr);
    j["classification"] = std::move(cj);
  } else {
    j["classification"] = nullptr;
  }
  ordered_json motions = ordered_json::array();
  for (const auto& m : turn.motions) {
    motions.push_back({{"kind", to_string(m.kind)}, {"phase", to_string(m.phase)}});
  }
  j["motions"] = std::move(motions);
  j["timestamp"] = turn.timestamp;
  return j.dump();
}

TurnRecord turn_from_json_line(std::string_view line) {
  auto j = nlohmann::json::parse(line);
  TurnRecord t;
  t.speaker = parse_speaker(j.at("speaker").get<std::string>());
  auto state = j.at("state").get<std::string>();
  t.state = require(parse_state(state), "state", state);
  t.text = j.at("text").get<std::string>();
  if (!j.at("classification").is_null()) {
    const auto& cj = j.at("classification");
    ClassificationResult c;
    auto cat = cj.at("category").get<std::string>();
    c.category = require(parse_category(cat), "category", cat);
    auto stage = cj.at("stage").get<std::string>();
    c.stage = require(parse_stage(stage), "stage", stage);
    if (!cj.at("distance").is_null()) c.distance = cj.at("distance").get<double>();
    if (!cj.at("matched").is_null()) c.matched = cj.at("matched").get<std::string>();
    t.classification = std::move(c);
  }
  for (const auto& mj : j.at("motions")) {
    auto kind = mj.at("kind").get<std::string>();
    auto phase = mj.at("phase").get<std::string>();
    t.motions.push_back({require(parse_motion_kind(kind), "motion", kind),
                         require(parse_phase(phase), "phase", phase)});
  }
  t.timestamp = j.at("timestamp").get<std::string>();
  return t;
}

TurnRecord normalize_timestamp(TurnRecord turn) {
  turn.timestamp = kNormalizedTimestamp;
  return turn;
}

const std::vector<TurnRecord>& transcript(const SessionContext& ctx) {
  return ctx.transcript;
}

ScenarioTemplates load_scenario_templates(std::istream& in) {
  auto doc = nlohmann::json::parse(in);
  ScenarioTemplates t;
  const auto& states = doc.at("states");
  for (DialogueState s : kAllStates) {
    if (s == DialogueState::kDone) continue;
    std::string key(to_string(s));
    if (!states.contains(key)) {
      throw std::invalid_argument("templates file lacks state '" + key + "'");
    }
    t.lines[s] = states.at(key).get<std::vector<std::string>>();
  }
  const auto& phrases = doc.at("phrases");
  t.memory_updated = phrases.at("memory_updated").get<std::string>();
  t.more_questions = phrases.at("more_questions").get<std::string>();
  return t;
}

std::string utc_now_iso8601() {
  using namespace std::chrono;
  auto now = system_clock::now();
  auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::time_t secs = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof(out), "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::string draw_recommended(const std::string& choice_a,
                             const std::string& choice_b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return (rng() >> 63) == 0 ? choice_a : choice_b;
}

ScenarioEngine::ScenarioEngine(const Catalog& catalog,
                               const ScenarioTemplates& scenario,
                               const AnswerTemplates& answers,
                               const IntentClassifier& classifier,
                               const Gazetteer& gazetteer, ScenarioConfig config,
                               Clock clock)
    : catalog_(catalog),
      scenario_(scenario),
      answers_(answers),
      classifier_(classifier),
      gazetteer_(gazetteer),
      config_(std::move(config)),
      clock_(std::move(clock)) {
  if (config_.max_questions == 0) {
    throw std::invalid_argument("max_questions must be positive");
  }
  if (config_.default_spot.empty()) config_.default_spot = kDefaultSpot;
}

const AttractionRecord& ScenarioEngine::attraction(const std::string& id) const {
  const AttractionRecord* a = catalog_.find(id);
  if (a == nullptr) throw InvalidChoice("unknown attraction id '" + id + "'");
  return *a;
}

std::vector<std::string> ScenarioEngine::lines_for(
    DialogueState state, const std::map<std::string, std::string>& values) const {
  std::vector<std::string> out;
  auto it = scenario_.lines.find(state);
  if (it == scenario_.lines.end()) return out;
  for (const auto& line : it->second) out.push_back(render_template(line, values));
  return out;
}

std::vector<std::string> ScenarioEngine::explain(const AttractionRecord& a,
                                                 DialogueState state) const {
  auto lines = lines_for(state, {{"name", a.name}});
  lines.insert(lines.end(), a.highlights.begin(), a.highlights.end());
  return lines;
}

TurnRecord ScenarioEngine::robot_turn(DialogueState state,
                                      const std::vector<std::string>& lines) const {
  TurnRecord turn;
  turn.speaker = Speaker::kRobot;
  turn.state = state;
  turn.text = join_lines(lines);
  turn.motions = motions_for(state, TurnPhase::kSpeaking);
  if (is_question_asking(state)) {
    auto waiting = motions_for(state, TurnPhase::kAwaitingAnswer);
    turn.motions.insert(turn.motions.end(), waiting.begin(), waiting.end());
  }
  turn.timestamp = clock_();
  return turn;
}

std::pair<SessionContext, TurnRecord> ScenarioEngine::start_session(
    std::string session_id, const std::string& choice_a,
    const std::string& choice_b, std::uint64_t seed, std::string venue) const {
  if (choice_a == choice_b) {
    throw InvalidChoice("the two attractions must differ");
  }
  attraction(choice_a);
  attraction(choice_b);

  SessionContext ctx;
  ctx.session_id = std::move(session_id);
  ctx.choice_a = choice_a;
  ctx.choice_b = choice_b;
  ctx.rng_seed = seed;
  ctx.recommended = draw_recommended(choice_a, choice_b, seed);
  ctx.venue = venue.empty() ? config_.default_venue : std::move(venue);
  ctx.state = DialogueState::kGreeting;

  TurnRecord turn =
      robot_turn(DialogueState::kGreeting,
                 lines_for(DialogueState::kGreeting, {{"venue", ctx.venue}}));
  ctx.transcript.push_back(turn);
  return {std::move(ctx), std::move(turn)};
}

TurnRecord ScenarioEngine::step(SessionContext& ctx,
                                const std::optional<std::string>& utterance) const {
  if (ctx.state == DialogueState::kDone) throw SessionFinished();

  const std::string said = utterance.value_or("");
  TurnRecord customer;
  customer.speaker = Speaker::kCustomer;
  customer.text = said;
  customer.state = ctx.state;

  const AttractionRecord& a = attraction(ctx.choice_a);
  const AttractionRecord& b = attraction(ctx.choice_b);

  DialogueState next = ctx.state;
  std::vector<std::string> lines;

  switch (ctx.state) {
    case DialogueState::kGreeting:
      next = DialogueState::kIceBreaker;
      lines = lines_for(next, {{"venue", ctx.venue}});
      break;
    case DialogueState::kIceBreaker:
      next = DialogueState::kMemorableSpot;
      lines = lines_for(next, {{"venue", ctx.venue}});
      break;
    case DialogueState::kMemorableSpot:
      ctx.memorable = memorable_spot(said.empty() ? std::nullopt : utterance,
                                     gazetteer_, config_.default_spot);
      next = DialogueState::kMemorableSpotFollowUp;
      lines = lines_for(next, {{"memorable", ctx.memorable}});
      break;
    case DialogueState::kMemorableSpotFollowUp:
      ctx.follow_up_answer = said;
      next = DialogueState::kExplainA;
      lines.push_back(
          render_template(scenario_.memory_updated, {{"memorable", ctx.memorable}}));
      for (auto& l : explain(a, next)) lines.push_back(std::move(l));
      break;
    case DialogueState::kExplainA:
      next = DialogueState::kQnAA;
      lines = lines_for(next, {{"name", a.name}});
      break;
    case DialogueState::kExplainB:
      next = DialogueState::kQnAB;
      lines = lines_for(next, {{"name", b.name}});
      break;
    case DialogueState::kQnAA:
    case DialogueState::kQnAB: {
      const bool first = ctx.state == DialogueState::kQnAA;
      const AttractionRecord& subject = first ? a : b;
      ClassificationResult result = classifier_.classify(said);
      customer.classification = result;

      bool advance = result.category == IntentCategory::kNoQuestion;
      if (!advance) {
        lines.push_back(answer(subject, result.category, answers_));
        std::size_t& asked = ctx.question_counts[ctx.state];
        ++asked;
        advance = asked >= config_.max_questions;
        if (!advance) {
          lines.push_back(render_template(scenario_.more_questions,
                                          {{"name", subject.name}}));
        }
      }
      if (advance) {
        if (first) {
          next = DialogueState::kExplainB;
          for (auto& l : explain(b, next)) lines.push_back(std::move(l));
        } else {
          next = DialogueState::kRecommendation;
          const AttractionRecord& rec = attraction(ctx.recommended);
          for (auto& l : lines_for(next, {{"name", rec.name},
                                          {"highlight", rec.highlights.front()}})) {
            lines.push_back(std::move(l));
          }
        }
      }
      break;
    }
    case DialogueState::kRecommendation:
      next = DialogueState::kClosing;
      lines = lines_for(next, {{"name", attraction(ctx.recommended).name},
                               {"venue", ctx.venue}});
      ctx.master_quirk_used = true;
      break;
    case DialogueState::kClosing:
    case DialogueState::kDone:
      throw SessionFinished();
  }

  customer.timestamp = clock_();
  ctx.transcript.push_back(std::move(customer));
  TurnRecord robot = robot_turn(next, lines);
  ctx.transcript.push_back(robot);
  // Closing expects no reply, so the session ends with it.
  ctx.state = next == DialogueState::kClosing ? DialogueState::kDone : next;
  return robot;
}

}  // namespace sightsee
