#include "sightsee/motion.hpp"

#include <array>

namespace sightsee {

namespace {

constexpr std::array<std::string_view, 11> kStateNames = {
    "Greeting", "IceBreaker", "MemorableSpot", "MemorableSpotFollowUp",
    "ExplainA", "QnA_A",      "ExplainB",      "QnA_B",
    "Recommendation", "Closing", "Done",
};

constexpr std::array<std::string_view, 4> kKindNames = {
    "Nod", "GazeMonitorA", "GazeMonitorB", "GazeCustomer"};

constexpr std::array<std::string_view, 2> kPhaseNames = {"Speaking",
                                                          "AwaitingAnswer"};

template <typename Enum, std::size_t N>
std::optional<Enum> parse_name(const std::array<std::string_view, N>& names,
                               std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(DialogueState s) {
  return kStateNames[static_cast<std::size_t>(s)];
}

std::optional<DialogueState> parse_state(std::string_view s) {
  return parse_name<DialogueState>(kStateNames, s);
}

std::string_view to_string(MotionKind k) {
  return kKindNames[static_cast<std::size_t>(k)];
}

std::string_view to_string(TurnPhase p) {
  return kPhaseNames[static_cast<std::size_t>(p)];
}

std::optional<MotionKind> parse_motion_kind(std::string_view s) {
  return parse_name<MotionKind>(kKindNames, s);
}

std::optional<TurnPhase> parse_phase(std::string_view s) {
  return parse_name<TurnPhase>(kPhaseNames, s);
}

bool is_question_asking(DialogueState s) {
  switch (s) {
    case DialogueState::kIceBreaker:
    case DialogueState::kMemorableSpot:
    case DialogueState::kMemorableSpotFollowUp:
    case DialogueState::kQnAA:
    case DialogueState::kQnAB:
      return true;
    default:
      return false;
  }
}

std::vector<MotionEvent> motions_for(DialogueState state, TurnPhase phase) {
  if (phase == TurnPhase::kAwaitingAnswer) {
    std::vector<MotionEvent> out{{MotionKind::kGazeCustomer, phase}};
    if (is_question_asking(state)) out.push_back({MotionKind::kNod, phase});
    return out;
  }
  switch (state) {
    case DialogueState::kExplainA:
    case DialogueState::kQnAA:
      return {{MotionKind::kGazeMonitorA, phase}};
    case DialogueState::kExplainB:
    case DialogueState::kQnAB:
      return {{MotionKind::kGazeMonitorB, phase}};
    default:
      return {{MotionKind::kGazeCustomer, phase}};
  }
}

}  // namespace sightsee
