#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaosgamma/chaos2.hpp"
#include "chaosgamma/numerics.hpp"

namespace chaosgamma {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct FamilyChoice {
  Family family = Family::concrete;
  double delta = 0.0;
};

struct OutputChoice {
  std::string path;
  std::vector<std::string> formats;  // csv, json, svg
};

struct ExperimentConfig {
  FamilyChoice family;
  std::vector<long> n_grid;
  double nu = 0.0;
  std::vector<std::string> metrics;
  std::size_t mc_samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> b;
  OutputChoice output;
};

struct MetricPoint {
  long n = 0;
  double value = 0.0;
  std::map<std::string, double> extra;  // per-point constants / error fields
};

struct RateSeries {
  std::string metric;
  std::vector<MetricPoint> points;
  std::optional<LogLogFit> fit;
};

struct Report {
  ExperimentConfig config;
  std::string version;
  std::vector<RateSeries> series;
};

/// Metric names accepted in ExperimentConfig::metrics.
const std::vector<std::string>& known_metrics();

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Validates the config and evaluates every metric over the n-grid.
/// The grid may be processed by several workers (CHAOS_GAMMA_THREADS caps
/// the count, 0 = auto); results do not depend on the schedule.
Report run(const ExperimentConfig& config);

enum class EmitFormat { csv, json, svg };

EmitFormat emit_format_from_name(const std::string& name);

void emit(const Report& report, EmitFormat format, const std::string& path);

/// Rendered forms, exposed for round-trip checks.
std::string render_csv(const Report& report);
nlohmann::json render_json(const Report& report);
std::string render_svg(const Report& report);

}  // namespace chaosgamma
