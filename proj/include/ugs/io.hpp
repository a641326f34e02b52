#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "ugs/information.hpp"
#include "ugs/network.hpp"
#include "ugs/simulator.hpp"
#include "ugs/solver.hpp"

namespace ugs::io {

using Json = nlohmann::json;

/// Reads a file and parses it; parse errors carry "path:line:col".
Json read_json(const std::filesystem::path& path);
/// Parses text; `origin` names the source in error messages.
Json parse_json(const std::string& text, const std::string& origin);

NetworkDescription network_from_json(const Json& j, const std::string& origin = "network");
Json network_to_json(const NetworkDescription& description);
RoadNetwork load_network(const std::filesystem::path& path);

struct EuclideanSpec {
  double speed = 0.0;
};

using MetricSpec = std::variant<EuclideanSpec, PursuerMetric>;

MetricSpec metric_from_json(const Json& j, const std::string& origin = "metric");
MetricSpec load_metric(const std::filesystem::path& path);
Json metric_to_json(const PursuerMetric& metric);
PursuerMetric realize(const MetricSpec& spec, const RoadNetwork& network);

Json paths_to_json(const Scenario& scenario);
Json family_to_json(const RealizableFamily& family);
Json set_to_json(const PathSet& set);

Json result_to_json(const SolveResult& result);
SolveResult result_from_json(const Json& j, const std::string& origin = "result");
SolveResult load_result(const std::filesystem::path& path);

Json transcript_row_to_json(const TranscriptRow& row);
/// One JSON object per line.
std::string transcript_to_jsonl(const SimOutcome& outcome);

}  // namespace ugs::io
