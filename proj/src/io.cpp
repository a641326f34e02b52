#include "ugs/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ugs/error.hpp"

namespace ugs::io {

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& pointer, const std::string& msg) {
  throw Error(ErrorCode::InvalidInput, origin + (pointer.empty() ? "" : " at " + pointer) + ": " + msg);
}

const Json& field(const Json& j, const std::string& key, const std::string& origin,
                  const std::string& pointer) {
  if (!j.is_object()) fail(origin, pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(origin, pointer, "missing \"" + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& origin, const std::string& pointer) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == static_cast<double>(static_cast<int>(v))) return static_cast<int>(v);
  }
  fail(origin, pointer, "expected an integer");
}

double as_number(const Json& j, const std::string& origin, const std::string& pointer) {
  if (!j.is_number()) fail(origin, pointer, "expected a number");
  return j.get<double>();
}

const Json& as_array(const Json& j, const std::string& origin, const std::string& pointer) {
  if (!j.is_array()) fail(origin, pointer, "expected an array");
  return j;
}

PathSet set_from_json(const Json& j, std::size_t n, const std::string& origin, const std::string& pointer) {
  PathSet s(n);
  const Json& a = as_array(j, origin, pointer);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int k = as_int(a[i], origin, pointer + "/" + std::to_string(i));
    if (k < 1 || static_cast<std::size_t>(k) > n) fail(origin, pointer, "path " + std::to_string(k) + " out of range");
    s.insert(static_cast<PathIndex>(k - 1));
  }
  return s;
}

Json time_json(Time t) {
  if (std::isinf(t)) return nullptr;
  return t;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::InvalidInput,
                origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_json(os.str(), path.string());
}

NetworkDescription network_from_json(const Json& j, const std::string& origin) {
  NetworkDescription d;
  const Json& nodes = as_array(field(j, "nodes", origin, ""), origin, "/nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string ptr = "/nodes/" + std::to_string(i);
    NetworkDescription::Node n;
    n.id = as_int(field(nodes[i], "id", origin, ptr), origin, ptr + "/id");
    if (nodes[i].contains("x")) n.x = as_number(nodes[i]["x"], origin, ptr + "/x");
    if (nodes[i].contains("y")) n.y = as_number(nodes[i]["y"], origin, ptr + "/y");
    d.nodes.push_back(n);
  }
  const Json& edges = as_array(field(j, "edges", origin, ""), origin, "/edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ptr = "/edges/" + std::to_string(i);
    NetworkDescription::Edge e;
    e.from = as_int(field(edges[i], "from", origin, ptr), origin, ptr + "/from");
    e.to = as_int(field(edges[i], "to", origin, ptr), origin, ptr + "/to");
    e.time = as_number(field(edges[i], "time", origin, ptr), origin, ptr + "/time");
    d.edges.push_back(e);
  }
  d.entry = as_int(field(j, "entry", origin, ""), origin, "/entry");
  if (j.contains("goals") && !j["goals"].is_null()) {
    std::vector<int> goals;
    const Json& g = as_array(j["goals"], origin, "/goals");
    for (std::size_t i = 0; i < g.size(); ++i) goals.push_back(as_int(g[i], origin, "/goals/" + std::to_string(i)));
    d.goals = goals;
  }
  return d;
}

Json network_to_json(const NetworkDescription& d) {
  Json j;
  j["nodes"] = Json::array();
  for (const auto& n : d.nodes) {
    Json node{{"id", n.id}};
    if (n.x) node["x"] = *n.x;
    if (n.y) node["y"] = *n.y;
    j["nodes"].push_back(node);
  }
  j["edges"] = Json::array();
  for (const auto& e : d.edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"time", e.time}});
  j["entry"] = d.entry;
  if (d.goals) j["goals"] = *d.goals;
  return j;
}

RoadNetwork load_network(const std::filesystem::path& path) {
  const Json j = read_json(path);
  return validate_network(network_from_json(j, path.string()));
}

MetricSpec metric_from_json(const Json& j, const std::string& origin) {
  const Json& kind = field(j, "kind", origin, "");
  if (!kind.is_string()) fail(origin, "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "euclidean") {
    const double v = as_number(field(j, "speed", origin, ""), origin, "/speed");
    if (!(v > 0.0)) fail(origin, "/speed", "speed must be positive");
    return EuclideanSpec{v};
  }
  if (k == "table") {
    const Json& rows = as_array(field(j, "d", origin, ""), origin, "/d");
    std::vector<std::vector<Time>> table;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string ptr = "/d/" + std::to_string(i);
      const Json& row = as_array(rows[i], origin, ptr);
      std::vector<Time> r;
      for (std::size_t c = 0; c < row.size(); ++c) r.push_back(as_number(row[c], origin, ptr + "/" + std::to_string(c)));
      table.push_back(std::move(r));
    }
    return PursuerMetric(std::move(table));
  }
  fail(origin, "/kind", "unknown metric kind \"" + k + "\"");
}

MetricSpec load_metric(const std::filesystem::path& path) {
  return metric_from_json(read_json(path), path.string());
}

Json metric_to_json(const PursuerMetric& metric) {
  return {{"kind", "table"}, {"d", metric.table()}};
}

PursuerMetric realize(const MetricSpec& spec, const RoadNetwork& network) {
  if (const auto* e = std::get_if<EuclideanSpec>(&spec)) return euclidean_metric(network, e->speed);
  const auto& table = std::get<PursuerMetric>(spec);
  validate_metric(table, network).throw_if_invalid();
  return table;
}

Json set_to_json(const PathSet& set) {
  Json a = Json::array();
  set.for_each([&](PathIndex k) { a.push_back(k + 1); });
  return a;
}

Json paths_to_json(const Scenario& s) {
  Json j;
  j["paths"] = Json::array();
  for (const auto& p : s.paths) {
    Json nodes = Json::array();
    for (NodeIndex v : p.nodes) nodes.push_back(v + 1);
    j["paths"].push_back({{"k", p.index + 1}, {"nodes", nodes}, {"arrival", p.arrival}, {"length", p.length()}});
  }
  Json L = Json::array();
  Json P = Json::array();
  for (NodeIndex v = 0; v < s.node_count(); ++v) {
    Json row = Json::array();
    for (Time t : s.schedule.row(v)) row.push_back(time_json(t));
    L.push_back(row);
    P.push_back(set_to_json(s.schedule.through(v)));
  }
  j["schedule"] = {{"L", L}, {"P", P}};
  return j;
}

Json family_to_json(const RealizableFamily& family) {
  Json j;
  j["sets"] = Json::array();
  for (const auto& s : family.sets) j["sets"].push_back(set_to_json(s));
  j["log"] = Json::array();
  for (const auto& row : family.log) {
    Json sets = Json::array();
    for (const auto& s : row.sets) sets.push_back(set_to_json(s));
    j["log"].push_back({{"node", row.node + 1}, {"time", row.time}, {"sets", sets}});
  }
  return j;
}

Json result_to_json(const SolveResult& r) {
  const auto& m = r.metadata();
  Json j;
  j["mode"] = std::string(to_string(m.resolution));
  j["pruned"] = m.pruned;
  j["n"] = m.n;
  j["m"] = m.m;
  j["entry"] = m.entry + 1;
  j["metric"] = m.metric_digest;
  j["D"] = time_json(r.root_value());
  j["delay"] = r.tolerable_delay();
  j["mu"] = r.root().mu ? Json(*r.root().mu + 1) : Json(nullptr);
  j["missing"] = Json::array();
  for (const auto& s : m.missing) j["missing"].push_back(set_to_json(s));
  j["entries"] = Json::array();
  for (const auto& s : r.sets()) {
    const Json set = set_to_json(s);
    for (NodeIndex v = 0; v < m.m; ++v) {
      const PolicyEntry& e = r.at(v, s);
      j["entries"].push_back({{"node", v + 1},
                              {"set", set},
                              {"D", time_json(e.D)},
                              {"mu", e.mu ? Json(*e.mu + 1) : Json(nullptr)},
                              {"capture", e.capture}});
    }
  }
  return j;
}

SolveResult result_from_json(const Json& j, const std::string& origin) {
  SolveMetadata meta;
  const Json& mode = field(j, "mode", origin, "");
  if (mode == "paper") {
    meta.resolution = Resolution::Paper;
  } else if (mode == "strict") {
    meta.resolution = Resolution::Strict;
  } else {
    fail(origin, "/mode", "expected \"paper\" or \"strict\"");
  }
  meta.pruned = j.value("pruned", true);
  const int n = as_int(field(j, "n", origin, ""), origin, "/n");
  const int m = as_int(field(j, "m", origin, ""), origin, "/m");
  if (n < 1 || m < 1) fail(origin, "", "n and m must be positive");
  meta.n = static_cast<std::size_t>(n);
  meta.m = static_cast<std::size_t>(m);
  const int entry = as_int(field(j, "entry", origin, ""), origin, "/entry");
  if (entry < 1 || entry > m) fail(origin, "/entry", "entry out of range");
  meta.entry = static_cast<NodeIndex>(entry - 1);
  meta.metric_digest = j.value("metric", std::string());
  if (j.contains("missing")) {
    const Json& miss = as_array(j["missing"], origin, "/missing");
    for (std::size_t i = 0; i < miss.size(); ++i) {
      meta.missing.push_back(set_from_json(miss[i], meta.n, origin, "/missing/" + std::to_string(i)));
    }
  }

  std::map<std::vector<PathIndex>, std::pair<PathSet, std::vector<std::optional<PolicyEntry>>>> rows;
  std::vector<std::vector<PathIndex>> order;
  const Json& entries = as_array(field(j, "entries", origin, ""), origin, "/entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ptr = "/entries/" + std::to_string(i);
    const Json& e = entries[i];
    const int node = as_int(field(e, "node", origin, ptr), origin, ptr + "/node");
    if (node < 1 || node > m) fail(origin, ptr + "/node", "node out of range");
    const PathSet s = set_from_json(field(e, "set", origin, ptr), meta.n, origin, ptr + "/set");
    if (s.empty()) fail(origin, ptr + "/set", "empty set");
    PolicyEntry pe;
    const Json& D = field(e, "D", origin, ptr);
    pe.D = D.is_null() ? kNoGuarantee : as_number(D, origin, ptr + "/D");
    const Json& mu = field(e, "mu", origin, ptr);
    if (!mu.is_null()) {
      const int u = as_int(mu, origin, ptr + "/mu");
      if (u < 1 || u > m) fail(origin, ptr + "/mu", "node out of range");
      pe.mu = static_cast<NodeIndex>(u - 1);
    }
    pe.capture = e.value("capture", false);
    const auto key = s.members();
    auto [it, fresh] = rows.try_emplace(key, s, std::vector<std::optional<PolicyEntry>>(meta.m));
    if (fresh) order.push_back(key);
    auto& slot = it->second.second[static_cast<std::size_t>(node - 1)];
    if (slot) fail(origin, ptr, "duplicate entry for node " + std::to_string(node) + " and set " + s.to_string());
    slot = pe;
  }

  SolveResult r(meta);
  for (const auto& key : order) {
    auto& [set, slots] = rows.at(key);
    std::vector<PolicyEntry> row;
    for (std::size_t v = 0; v < slots.size(); ++v) {
      if (!slots[v]) {
        fail(origin, "/entries", "set " + set.to_string() + " lacks node " + std::to_string(v + 1));
      }
      row.push_back(*slots[v]);
    }
    r.insert(set, std::move(row));
  }
  if (!r.contains(r.root_set())) fail(origin, "/entries", "no entries for the full path set");
  return r;
}

SolveResult load_result(const std::filesystem::path& path) {
  return result_from_json(read_json(path), path.string());
}

Json transcript_row_to_json(const TranscriptRow& row) {
  Json obs = row.obs.red ? Json{{"red", row.obs.delay}} : Json("green");
  return {{"t", row.t}, {"node", row.node + 1}, {"obs", obs}, {"set", set_to_json(row.set)}};
}

std::string transcript_to_jsonl(const SimOutcome& outcome) {
  std::ostringstream os;
  for (const auto& row : outcome.transcript) os << transcript_row_to_json(row).dump() << '\n';
  return os.str();
}

}  // namespace ugs::io
