#include "sightsee/service.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "httplib.h"

namespace sightsee {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct DialogueService::Slot {
  std::mutex mutex;
  SessionContext ctx;
};

namespace {

ApiResponse error(int status, const std::string& message) {
  return ApiResponse{status, ordered_json{{"error", message}}};
}

ordered_json session_reply(const SessionContext& ctx) {
  ordered_json body;
  body["session_id"] = ctx.session_id;
  body["state"] = to_string(ctx.state);
  return body;
}

std::string format_session_id(std::uint64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "s%06llu", static_cast<unsigned long long>(n));
  return buf;
}

std::optional<std::uint64_t> parse_session_number(const std::string& id) {
  if (id.size() < 2 || id[0] != 's') return std::nullopt;
  std::uint64_t n = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return std::nullopt;
    n = n * 10 + static_cast<std::uint64_t>(id[i] - '0');
  }
  return n;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::vector<std::string> lines;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

}  // namespace

ordered_json turn_to_json(const TurnRecord& turn) {
  return ordered_json::parse(to_json_line(turn));
}

DialogueService::DialogueService(const Resources& resources, fs::path data_dir,
                                 ScenarioConfig config, Clock clock)
    : resources_(resources),
      sessions_dir_(std::move(data_dir) / "sessions"),
      engine_(resources.catalog, resources.scenario_templates,
              resources.answer_templates, *resources.classifier,
              resources.gazetteer, std::move(config), std::move(clock)) {
  fs::create_directories(sessions_dir_);
  restore_sessions();
}

DialogueService::~DialogueService() = default;

fs::path DialogueService::session_path(const std::string& id,
                                       const char* suffix) const {
  return sessions_dir_ / (id + suffix);
}

void DialogueService::append_turns(const std::string& id, const TurnRecord* first,
                                   std::size_t count) const {
  std::string chunk;
  for (std::size_t k = 0; k < count; ++k) chunk += to_json_line(first[k]) + "\n";
  std::ofstream out(session_path(id, ".log"), std::ios::app);
  if (!out) throw std::runtime_error("cannot append to transcript of " + id);
  out << chunk;
  out.flush();
}

void DialogueService::restore_sessions() {
  std::vector<fs::path> metas;
  for (const auto& entry : fs::directory_iterator(sessions_dir_)) {
    const std::string name = entry.path().filename().string();
    const std::string suffix = ".meta.json";
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      metas.push_back(entry.path());
    }
  }
  std::sort(metas.begin(), metas.end());

  for (const auto& meta_path : metas) {
    std::ifstream in(meta_path);
    json meta = json::parse(in);
    const std::string id = meta.at("session_id").get<std::string>();

    auto [ctx, greeting] = engine_.start_session(
        id, meta.at("choice_a").get<std::string>(),
        meta.at("choice_b").get<std::string>(), meta.at("seed").get<std::uint64_t>(),
        meta.at("venue").get<std::string>());

    std::vector<TurnRecord> persisted;
    for (const auto& line : read_lines(session_path(id, ".log"))) {
      persisted.push_back(turn_from_json_line(line));
    }
    for (const auto& turn : persisted) {
      if (turn.speaker != Speaker::kCustomer) continue;
      engine_.step(ctx, turn.text.empty() ? std::nullopt
                                          : std::optional<std::string>(turn.text));
    }
    if (ctx.transcript.size() != persisted.size()) {
      throw std::runtime_error("transcript of session " + id +
                               " does not replay consistently");
    }
    ctx.transcript = std::move(persisted);

    auto slot = std::make_shared<Slot>();
    slot->ctx = std::move(ctx);
    sessions_.emplace(id, std::move(slot));
    if (auto n = parse_session_number(id)) next_id_ = std::max(next_id_, *n + 1);

    fs::path ratings_path = session_path(id, ".ratings.json");
    if (fs::exists(ratings_path)) {
      std::ifstream rin(ratings_path);
      json r = json::parse(rin);
      SessionRatings ratings;
      ratings.desire = {r.at("pre").get<double>(), r.at("post").get<double>()};
      auto items = r.at("impressions").get<std::vector<int>>();
      if (items.size() != kImpressionItems) {
        throw std::runtime_error("corrupt ratings for session " + id);
      }
      std::copy(items.begin(), items.end(), ratings.impressions.ratings.begin());
      ratings_.emplace(id, ratings);
    }
  }
}

std::shared_ptr<DialogueService::Slot> DialogueService::find(
    const std::string& id) const {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t DialogueService::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

ApiResponse DialogueService::create_session(const json& request) {
  if (!request.is_object()) return error(400, "request body must be an object");
  auto string_field = [&](const char* key) -> std::optional<std::string> {
    if (!request.contains(key) || !request.at(key).is_string()) return std::nullopt;
    return request.at(key).get<std::string>();
  };
  auto choice_a = string_field("choice_a");
  auto choice_b = string_field("choice_b");
  if (!choice_a || !choice_b) {
    return error(400, "choice_a and choice_b must be attraction ids");
  }
  std::uint64_t seed = 0;
  if (request.contains("seed") && !request.at("seed").is_null()) {
    const json& raw = request.at("seed");
    if (!raw.is_number_integer() || (!raw.is_number_unsigned() && raw.get<std::int64_t>() < 0)) {
      return error(400, "seed must be a nonnegative integer");
    }
    seed = request.at("seed").get<std::uint64_t>();
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  }
  std::string venue;
  if (request.contains("venue") && !request.at("venue").is_null()) {
    if (!request.at("venue").is_string()) return error(400, "venue must be a string");
    venue = request.at("venue").get<std::string>();
  }

  std::lock_guard lock(sessions_mutex_);
  const std::string id = format_session_id(next_id_);
  SessionContext ctx;
  TurnRecord greeting;
  try {
    std::tie(ctx, greeting) =
        engine_.start_session(id, *choice_a, *choice_b, seed, venue);
  } catch (const InvalidChoice& e) {
    return error(400, e.what());
  }
  ++next_id_;

  ordered_json meta;
  meta["session_id"] = id;
  meta["choice_a"] = ctx.choice_a;
  meta["choice_b"] = ctx.choice_b;
  meta["seed"] = ctx.rng_seed;
  meta["venue"] = ctx.venue;
  write_file(session_path(id, ".meta.json"), meta.dump() + "\n");
  append_turns(id, ctx.transcript.data(), ctx.transcript.size());

  ordered_json body = session_reply(ctx);
  body["robot_turn"] = turn_to_json(greeting);
  auto slot = std::make_shared<Slot>();
  slot->ctx = std::move(ctx);
  sessions_.emplace(id, std::move(slot));
  return ApiResponse{201, std::move(body)};
}

ApiResponse DialogueService::post_utterance(const std::string& id,
                                            const json& request) {
  auto slot = find(id);
  if (!slot) return error(404, "unknown session '" + id + "'");

  std::optional<std::string> text;
  if (request.is_object() && request.contains("text") &&
      !request.at("text").is_null()) {
    if (!request.at("text").is_string()) return error(400, "text must be a string");
    text = request.at("text").get<std::string>();
  } else if (!request.is_object() && !request.is_null()) {
    return error(400, "request body must be an object");
  }

  std::lock_guard lock(slot->mutex);
  SessionContext& ctx = slot->ctx;
  if (ctx.state == DialogueState::kDone) {
    ApiResponse r = error(409, "session is already done");
    r.body["session_id"] = ctx.session_id;
    r.body["state"] = to_string(ctx.state);
    return r;
  }
  const std::size_t before = ctx.transcript.size();
  TurnRecord robot = engine_.step(ctx, text);
  append_turns(id, ctx.transcript.data() + before, ctx.transcript.size() - before);

  ordered_json body = session_reply(ctx);
  body["robot_turn"] = turn_to_json(robot);
  return ApiResponse{200, std::move(body)};
}

ApiResponse DialogueService::post_ratings(const std::string& id, const json& request) {
  auto slot = find(id);
  if (!slot) return error(404, "unknown session '" + id + "'");

  std::lock_guard lock(slot->mutex);
  const SessionContext& ctx = slot->ctx;
  if (ctx.state != DialogueState::kDone) {
    return error(409, "ratings are accepted once the dialogue is done");
  }
  if (!request.is_object() || !request.contains("pre") || !request.contains("post") ||
      !request.at("pre").is_number() || !request.at("post").is_number() ||
      !request.contains("impressions") || !request.at("impressions").is_array()) {
    return error(400, "expected {pre, post, impressions[9]}");
  }
  SessionRatings ratings;
  ratings.desire = {request.at("pre").get<double>(), request.at("post").get<double>()};
  const json& items = request.at("impressions");
  if (items.size() != kImpressionItems) {
    return error(400, "impressions must hold exactly 9 ratings");
  }
  for (std::size_t k = 0; k < kImpressionItems; ++k) {
    if (!items[k].is_number_integer()) {
      return error(400, "impression ratings must be integers");
    }
    ratings.impressions.ratings[k] = items[k].get<int>();
  }
  double effect = 0.0;
  try {
    validate(ratings.impressions);
    effect = recommendation_effect(ratings.desire);
  } catch (const RatingOutOfRange& e) {
    return error(400, e.what());
  }

  {
    std::lock_guard rlock(ratings_mutex_);
    if (ratings_.count(id) != 0) return error(409, "ratings already submitted");
    ordered_json stored;
    stored["pre"] = ratings.desire.pre;
    stored["post"] = ratings.desire.post;
    stored["impressions"] = ratings.impressions.ratings;
    write_file(session_path(id, ".ratings.json"), stored.dump() + "\n");
    ratings_.emplace(id, ratings);
  }

  ordered_json body = session_reply(ctx);
  body["recommendation_effect"] = effect;
  return ApiResponse{200, std::move(body)};
}

ApiResponse DialogueService::get_transcript(const std::string& id) const {
  auto slot = find(id);
  if (!slot) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(slot->mutex);
  ordered_json body = session_reply(slot->ctx);
  ordered_json turns = ordered_json::array();
  for (const auto& t : slot->ctx.transcript) turns.push_back(turn_to_json(t));
  body["turns"] = std::move(turns);
  return ApiResponse{200, std::move(body)};
}

ApiResponse DialogueService::get_metrics() const {
  std::vector<SessionRatings> snapshot;
  {
    std::lock_guard lock(ratings_mutex_);
    for (const auto& [id, r] : ratings_) snapshot.push_back(r);
  }
  ordered_json body;
  body["sessions"] = snapshot.size();
  ordered_json items = ordered_json::array();
  if (snapshot.empty()) {
    body["recommendation_effect"] = nullptr;
    for (const auto& text : resources_.impression_items) {
      items.push_back({{"item", text}, {"mean", nullptr}});
    }
  } else {
    MetricsReport report = aggregate(snapshot);
    body["recommendation_effect"] = format_mean(report.recommendation_effect_mean);
    for (std::size_t k = 0; k < kImpressionItems; ++k) {
      items.push_back({{"item", resources_.impression_items.at(k)},
                       {"mean", format_mean(report.item_means[k])}});
    }
  }
  body["impressions"] = std::move(items);
  return ApiResponse{200, std::move(body)};
}

ApiResponse DialogueService::get_catalog() const {
  ordered_json list = ordered_json::array();
  for (const auto& a : resources_.catalog.attractions()) {
    list.push_back({{"id", a.id}, {"name", a.name}, {"highlights", a.highlights}});
  }
  return ApiResponse{200, ordered_json{{"attractions", std::move(list)}}};
}

ApiResponse DialogueService::get_questionnaire() const {
  return ApiResponse{200, ordered_json{{"items", resources_.impression_items}}};
}

void bind_routes(httplib::Server& server, DialogueService& service) {
  auto send = [](httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json");
  };
  auto parse_body = [](const httplib::Request& req) -> std::optional<json> {
    if (req.body.empty()) return json::object();
    try {
      return json::parse(req.body);
    } catch (const json::parse_error&) {
      return std::nullopt;
    }
  };

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server.Post("/sessions", [&service, send, parse_body](const httplib::Request& req,
                                                         httplib::Response& res) {
    auto body = parse_body(req);
    send(res, body ? service.create_session(*body) : error(400, "malformed JSON"));
  });
  server.Post(R"(/sessions/([^/]+)/utterance)",
              [&service, send, parse_body](const httplib::Request& req,
                                           httplib::Response& res) {
                auto body = parse_body(req);
                send(res, body ? service.post_utterance(req.matches[1], *body)
                               : error(400, "malformed JSON"));
              });
  server.Post(R"(/sessions/([^/]+)/ratings)",
              [&service, send, parse_body](const httplib::Request& req,
                                           httplib::Response& res) {
                auto body = parse_body(req);
                send(res, body ? service.post_ratings(req.matches[1], *body)
                               : error(400, "malformed JSON"));
              });
  server.Get(R"(/sessions/([^/]+)/transcript)",
             [&service, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.get_transcript(req.matches[1]));
             });
  server.Get("/metrics", [&service, send](const httplib::Request&,
                                          httplib::Response& res) {
    send(res, service.get_metrics());
  });
  server.Get("/catalog", [&service, send](const httplib::Request&,
                                          httplib::Response& res) {
    send(res, service.get_catalog());
  });
  server.Get("/questionnaire", [&service, send](const httplib::Request&,
                                                httplib::Response& res) {
    send(res, service.get_questionnaire());
  });
}

}  // namespace sightsee
