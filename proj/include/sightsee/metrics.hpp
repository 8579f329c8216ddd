#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sightsee {

class RatingOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Desire to visit the recommended attraction, before and after the dialogue,
// each on a 0..100 scale.
struct DesireRating {
  double pre = 0.0;
  double post = 0.0;
};

inline constexpr std::size_t kImpressionItems = 9;

struct ImpressionResponse {
  std::array<int, kImpressionItems> ratings{};
};

void validate(const DesireRating& r);
void validate(const ImpressionResponse& r);

// post - pre, in [-100, 100]. Throws RatingOutOfRange.
double recommendation_effect(const DesireRating& r);

struct SessionRatings {
  DesireRating desire;
  ImpressionResponse impressions;
};

struct MetricsReport {
  std::size_t sessions = 0;
  double recommendation_effect_mean = 0.0;
  std::array<double, kImpressionItems> item_means{};
};

// Arithmetic means over sessions. Throws std::invalid_argument when empty.
MetricsReport aggregate(const std::vector<SessionRatings>& sessions);

// Six decimals, as in "9.888889".
std::string format_mean(double value);

// Plain-text report. `item_texts`, when it has nine entries, labels the items.
std::string format_report(const MetricsReport& report,
                          const std::vector<std::string>& item_texts = {});

// One questionnaire item per line; exactly nine required.
std::vector<std::string> load_impression_items(std::istream& in);
std::vector<std::string> load_impression_items_file(const std::string& path);

}  // namespace sightsee
