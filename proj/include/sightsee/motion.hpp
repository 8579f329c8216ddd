#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace sightsee {

enum class DialogueState {
  kGreeting,
  kIceBreaker,
  kMemorableSpot,
  kMemorableSpotFollowUp,
  kExplainA,
  kQnAA,
  kExplainB,
  kQnAB,
  kRecommendation,
  kClosing,
  kDone,
};

inline constexpr DialogueState kAllStates[] = {
    DialogueState::kGreeting,       DialogueState::kIceBreaker,
    DialogueState::kMemorableSpot,  DialogueState::kMemorableSpotFollowUp,
    DialogueState::kExplainA,       DialogueState::kQnAA,
    DialogueState::kExplainB,       DialogueState::kQnAB,
    DialogueState::kRecommendation, DialogueState::kClosing,
    DialogueState::kDone,
};

std::string_view to_string(DialogueState s);
std::optional<DialogueState> parse_state(std::string_view s);

// States in which the robot waits for the customer to answer it.
bool is_question_asking(DialogueState s);

enum class MotionKind { kNod, kGazeMonitorA, kGazeMonitorB, kGazeCustomer };
enum class TurnPhase { kSpeaking, kAwaitingAnswer };

std::string_view to_string(MotionKind k);
std::string_view to_string(TurnPhase p);
std::optional<MotionKind> parse_motion_kind(std::string_view s);
std::optional<TurnPhase> parse_phase(std::string_view s);

struct MotionEvent {
  MotionKind kind;
  TurnPhase phase;

  bool operator==(const MotionEvent&) const = default;
};

// While speaking the robot only directs its gaze: at the monitor showing the
// attraction being explained, otherwise at the customer. Nodding is reserved
// for the moment it waits on an answer, so it never talks over the customer.
std::vector<MotionEvent> motions_for(DialogueState state, TurnPhase phase);

}  // namespace sightsee
