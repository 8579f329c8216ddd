#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"
#include "sightsee/metrics.hpp"
#include "sightsee/resources.hpp"
#include "sightsee/scenario.hpp"

namespace httplib {
class Server;
}

namespace sightsee {

struct ApiResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

nlohmann::ordered_json turn_to_json(const TurnRecord& turn);

// Session-oriented front end over ScenarioEngine. Steps on one session are
// strictly serialized; distinct sessions run concurrently. Every session is
// persisted under <data_dir>/sessions as:
//   <id>.meta.json     choices, seed and venue
//   <id>.log           one TurnRecord JSON object per line, append-only
//   <id>.ratings.json  the submitted ratings, once Done
// and reloaded on construction by replaying the logged customer turns.
class DialogueService {
 public:
  DialogueService(const Resources& resources, std::filesystem::path data_dir,
                  ScenarioConfig config = {}, Clock clock = utc_now_iso8601);
  ~DialogueService();

  DialogueService(const DialogueService&) = delete;
  DialogueService& operator=(const DialogueService&) = delete;

  // POST /sessions {choice_a, choice_b, seed?, venue?}
  ApiResponse create_session(const nlohmann::json& request);
  // POST /sessions/{id}/utterance {text?}
  ApiResponse post_utterance(const std::string& id, const nlohmann::json& request);
  // POST /sessions/{id}/ratings {pre, post, impressions[9]}
  ApiResponse post_ratings(const std::string& id, const nlohmann::json& request);
  // GET /sessions/{id}/transcript
  ApiResponse get_transcript(const std::string& id) const;
  // GET /metrics
  ApiResponse get_metrics() const;
  // GET /catalog
  ApiResponse get_catalog() const;
  // GET /questionnaire
  ApiResponse get_questionnaire() const;

  std::size_t session_count() const;
  const ScenarioEngine& engine() const { return engine_; }

 private:
  struct Slot;

  std::shared_ptr<Slot> find(const std::string& id) const;
  void restore_sessions();
  std::filesystem::path session_path(const std::string& id,
                                     const char* suffix) const;
  void append_turns(const std::string& id, const TurnRecord* first,
                    std::size_t count) const;

  const Resources& resources_;
  std::filesystem::path sessions_dir_;
  ScenarioEngine engine_;

  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t next_id_ = 1;

  mutable std::mutex ratings_mutex_;
  std::map<std::string, SessionRatings> ratings_;
};

// Registers every endpoint on `server`, with permissive CORS headers for the
// browser client.
void bind_routes(httplib::Server& server, DialogueService& service);

}  // namespace sightsee
