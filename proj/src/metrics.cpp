#include "sightsee/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>

namespace sightsee {

void validate(const DesireRating& r) {
  auto in_range = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 100.0; };
  if (!in_range(r.pre) || !in_range(r.post)) {
    throw RatingOutOfRange("desire ratings must lie in [0, 100]");
  }
}

void validate(const ImpressionResponse& r) {
  for (int v : r.ratings) {
    if (v < 1 || v > 7) {
      throw RatingOutOfRange("impression ratings must be integers in 1..7");
    }
  }
}

double recommendation_effect(const DesireRating& r) {
  validate(r);
  return r.post - r.pre;
}

MetricsReport aggregate(const std::vector<SessionRatings>& sessions) {
  if (sessions.empty()) {
    throw std::invalid_argument("cannot aggregate an empty list of sessions");
  }
  MetricsReport report;
  report.sessions = sessions.size();
  double effect_sum = 0.0;
  std::array<double, kImpressionItems> item_sums{};
  for (const auto& s : sessions) {
    validate(s.impressions);
    effect_sum += recommendation_effect(s.desire);
    for (std::size_t k = 0; k < kImpressionItems; ++k) {
      item_sums[k] += s.impressions.ratings[k];
    }
  }
  const double n = static_cast<double>(sessions.size());
  report.recommendation_effect_mean = effect_sum / n;
  for (std::size_t k = 0; k < kImpressionItems; ++k) {
    report.item_means[k] = item_sums[k] / n;
  }
  return report;
}

std::string format_mean(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string format_report(const MetricsReport& report,
                          const std::vector<std::string>& item_texts) {
  std::string out;
  out += "sessions: " + std::to_string(report.sessions) + "\n";
  out += "recommendation_effect: " + format_mean(report.recommendation_effect_mean) +
         "\n";
  for (std::size_t k = 0; k < kImpressionItems; ++k) {
    out += "item " + std::to_string(k + 1) + ": " + format_mean(report.item_means[k]);
    if (item_texts.size() == kImpressionItems) out += "  " + item_texts[k];
    out += "\n";
  }
  return out;
}

std::vector<std::string> load_impression_items(std::istream& in) {
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    items.push_back(line);
  }
  if (items.size() != kImpressionItems) {
    throw std::invalid_argument("expected 9 impression items, got " +
                                std::to_string(items.size()));
  }
  return items;
}

std::vector<std::string> load_impression_items_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open impression items file: " + path);
  return load_impression_items(in);
}

}  // namespace sightsee
