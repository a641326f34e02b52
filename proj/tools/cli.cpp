#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "ugs/analysis.hpp"
#include "ugs/error.hpp"
#include "ugs/generator.hpp"
#include "ugs/information.hpp"
#include "ugs/io.hpp"
#include "ugs/simulator.hpp"
#include "ugs/solver.hpp"
#include "ugs/tree.hpp"

namespace ugs::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string network;
  std::optional<double> speed;
  std::string metric;
  bool no_prune = false;
  bool strict = false;
  std::string format;
  std::optional<std::uint64_t> seed;
};

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string time_text(Time t) {
  if (t == kNoGuarantee) return "none";
  if (t == kNever) return "-";
  return fixed(t);
}

std::string node_text(std::optional<NodeIndex> j) { return j ? std::to_string(*j + 1) : "-"; }

class Session {
 public:
  explicit Session(const Config& c) : c_(c) {}

  const RoadNetwork& network() {
    if (!network_) {
      if (!c_.network.empty()) {
        if (!std::filesystem::exists(c_.network)) throw UsageError("cannot read " + c_.network);
        network_ = io::load_network(c_.network);
      } else if (c_.seed) {
        GeneratedInstance g = generate_network(*c_.seed);
        generated_speed_ = g.speed;
        network_ = std::move(g.network);
      } else {
        throw UsageError("--network FILE or --seed N is required");
      }
    }
    return *network_;
  }

  PursuerMetric metric() {
    const RoadNetwork& net = network();
    if (!c_.metric.empty()) {
      if (!std::filesystem::exists(c_.metric)) throw UsageError("cannot read " + c_.metric);
      return io::realize(io::load_metric(c_.metric), net);
    }
    if (c_.speed) return euclidean_metric(net, *c_.speed);
    if (generated_speed_) return euclidean_metric(net, *generated_speed_);
    throw UsageError("--speed V or --metric FILE is required");
  }

  Scenario scenario(bool need_metric) {
    const RoadNetwork& net = network();
    return make_scenario(net, need_metric ? metric() : PursuerMetric::zero(net.node_count()));
  }

  SolveOptions options() const {
    SolveOptions o;
    o.resolution = c_.strict ? Resolution::Strict : Resolution::Paper;
    o.prune = !c_.no_prune;
    return o;
  }

  std::string format(const std::string& fallback, std::initializer_list<const char*> allowed) const {
    const std::string f = c_.format.empty() ? fallback : c_.format;
    for (const char* a : allowed) {
      if (f == a) return f;
    }
    throw UsageError("format " + f + " is not available for this command");
  }

 private:
  const Config& c_;
  std::optional<RoadNetwork> network_;
  std::optional<double> generated_speed_;
};

void print_paths(Session& s, std::ostream& out) {
  const Scenario sc = s.scenario(false);
  if (s.format("text", {"text", "json"}) == "json") {
    out << io::paths_to_json(sc).dump(2) << '\n';
    return;
  }
  for (const auto& p : sc.paths) {
    out << "path " << p.index + 1 << ":";
    for (std::size_t i = 0; i < p.nodes.size(); ++i) out << (i ? " -> " : " ") << p.nodes[i] + 1;
    out << "  length " << fixed(p.length()) << '\n';
  }
  out << "visit times (rows = UGS, columns = paths):\n";
  for (NodeIndex j = 0; j < sc.node_count(); ++j) {
    out << "UGS " << std::setw(2) << j + 1 << ":";
    for (Time t : sc.schedule.row(j)) out << ' ' << std::setw(9) << time_text(t);
    out << '\n';
  }
}

void print_realizable(Session& s, std::ostream& out) {
  const Scenario sc = s.scenario(false);
  const RealizableFamily f = realizable_sets(sc.schedule, sc.paths);
  if (s.format("text", {"text", "json"}) == "json") {
    out << io::family_to_json(f).dump(2) << '\n';
    return;
  }
  out << "UGS  time      sets\n";
  for (const auto& row : f.log) {
    out << std::left << std::setw(5) << row.node + 1 << std::setw(10) << fixed(row.time, 2) << std::right;
    for (std::size_t i = 0; i < row.sets.size(); ++i) out << (i ? ", " : "") << row.sets[i].to_string();
    out << '\n';
  }
  out << f.sets.size() << " realizable sets:";
  for (const auto& set : f.sets) out << ' ' << set.to_string();
  out << '\n';
}

int print_solve(Session& s, std::ostream& out, bool require_positive) {
  const Scenario sc = s.scenario(true);
  const SolveResult r = solve(sc, s.options());
  const std::string f = s.format("text", {"text", "json", "csv"});
  if (f == "json") {
    out << io::result_to_json(r).dump(2) << '\n';
  } else if (f == "csv") {
    out << "node,set,D,mu,capture\n";
    for (const auto& set : r.sets()) {
      for (NodeIndex j = 0; j < sc.node_count(); ++j) {
        const PolicyEntry& e = r.at(j, set);
        out << j + 1 << ",\"" << set.to_string() << "\"," << (e.D == kNoGuarantee ? "" : fixed(e.D, 9)) << ','
            << (e.mu ? std::to_string(*e.mu + 1) : "") << ',' << (e.capture ? "true" : "false") << '\n';
      }
    }
  } else {
    const auto& m = r.metadata();
    const std::string root = "(" + std::to_string(m.entry + 1) + "|" + r.root_set().to_string() + ")";
    out << "mode: " << to_string(m.resolution) << ", pruning: " << (m.pruned ? "on" : "off") << ", n=" << m.n
        << ", m=" << m.m << ", sets solved: " << r.sets().size() << '\n';
    out << "D" << root << " = " << time_text(r.root_value()) << '\n';
    out << "mu" << root << " = " << node_text(r.root().mu) << (r.root().capture ? " (capture)" : "") << '\n';
    out << "tolerable delay: " << fixed(r.tolerable_delay()) << '\n';
  }
  if (require_positive && !(r.root_value() > kTimeEps)) return kNoGuarantee;
  return kOk;
}

void print_tree(Session& s, std::ostream& out) {
  const Scenario sc = s.scenario(true);
  const DecisionTree t = build_tree(sc, solve(sc, s.options()));
  if (s.format("dot", {"dot", "json"}) == "json") {
    out << t.to_json() << '\n';
  } else {
    out << t.to_dot();
  }
}

SolveResult policy_for(Session& s, const Scenario& sc, const std::string& policy_file) {
  if (policy_file.empty()) return solve(sc, s.options());
  if (!std::filesystem::exists(policy_file)) throw UsageError("cannot read " + policy_file);
  SolveResult r = io::load_result(policy_file);
  if (r.metadata().n != sc.path_count() || r.metadata().m != sc.node_count()) {
    throw Error(ErrorCode::InvalidInput, policy_file + ": policy dimensions do not match the network");
  }
  return r;
}

void outcome_text(const SimOutcome& o, std::ostream& out) {
  out << "path " << o.path + 1 << ": " << (o.captured() ? "captured" : "escaped") << " at UGS " << o.node + 1
      << ", t=" << fixed(o.time) << '\n';
}

io::Json outcome_json(const SimOutcome& o) {
  return {{"path", o.path + 1},
          {"outcome", o.captured() ? "captured" : "escaped"},
          {"node", o.node + 1},
          {"time", o.time}};
}

int print_simulate(Session& s, std::ostream& out, std::size_t k, double t0, const std::string& policy_file) {
  const Scenario sc = s.scenario(true);
  if (k < 1 || k > sc.path_count()) throw UsageError("--path must lie in 1.." + std::to_string(sc.path_count()));
  const SolveResult r = policy_for(s, sc, policy_file);
  const SimOutcome o = simulate(sc, r, k - 1, t0);
  if (s.format("text", {"text", "json"}) == "json") {
    out << io::transcript_to_jsonl(o) << outcome_json(o).dump() << '\n';
    return kOk;
  }
  for (const auto& row : o.transcript) {
    out << "t=" << std::setw(9) << fixed(row.t) << "  UGS " << std::setw(2) << row.node + 1 << "  "
        << std::left << std::setw(14) << (row.obs.red ? "red+" + fixed(row.obs.delay) : std::string("green"))
        << std::right << row.set.to_string() << '\n';
  }
  outcome_text(o, out);
  return kOk;
}

int print_verify(Session& s, std::ostream& out, double t0, const std::string& policy_file) {
  const Scenario sc = s.scenario(true);
  const SolveResult r = policy_for(s, sc, policy_file);
  const VerifyReport rep = verify_guarantee(sc, r, t0);
  if (s.format("text", {"text", "json"}) == "json") {
    io::Json j{{"t0", t0}, {"all_captured", rep.all_captured}, {"outcomes", io::Json::array()}};
    for (const auto& o : rep.outcomes) j["outcomes"].push_back(outcome_json(o));
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "t0 = " << fixed(t0) << '\n';
  for (const auto& o : rep.outcomes) outcome_text(o, out);
  out << "all captured: " << (rep.all_captured ? "yes" : "no") << '\n';
  return kOk;
}

void print_critical(Session& s, std::ostream& out, double lo, double hi, double tol) {
  const CriticalSpeed c = critical_speed(s.network(), lo, hi, tol, s.options());
  if (s.format("text", {"text", "json"}) == "json") {
    out << io::Json{{"speed", c.speed}, {"lo", c.lo}, {"hi", c.hi}, {"solves", c.solves}}.dump(2) << '\n';
    return;
  }
  out << "critical speed: " << fixed(c.speed, 6) << " (bracket [" << fixed(c.lo, 6) << ", " << fixed(c.hi, 6)
      << "], " << c.solves << " solves)\n";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad number in --grid: \"" + s + "\"");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--grid lo:hi:count needs three fields");
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    const double count = number(parts[2]);
    if (count < 2 || count != static_cast<int>(count) || !(hi > lo)) {
      throw UsageError("--grid lo:hi:count needs lo < hi and an integer count >= 2");
    }
    const int cnt = static_cast<int>(count);
    for (int i = 0; i < cnt; ++i) grid.push_back(lo + (hi - lo) * i / (cnt - 1));
    return grid;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) grid.push_back(number(p));
  if (grid.empty()) throw UsageError("--grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw UsageError("--grid must be ascending");
  }
  return grid;
}

void print_sweep(Session& s, std::ostream& out, const std::string& grid_text) {
  const std::vector<double> grid = parse_grid(grid_text);
  const SpeedSweep rows = sweep(s.network(), grid, s.options());
  const std::string f = s.format("csv", {"csv", "json", "text"});
  if (f == "csv") {
    out << sweep_csv(rows);
  } else if (f == "json") {
    io::Json j = io::Json::array();
    for (const auto& r : rows) {
      j.push_back({{"V", r.speed},
                   {"valid", r.valid},
                   {"D", r.valid && r.D != kNoGuarantee ? io::Json(r.D) : io::Json(nullptr)},
                   {"delay", r.valid ? io::Json(r.delay) : io::Json(nullptr)},
                   {"mu", r.mu ? io::Json(*r.mu + 1) : io::Json(nullptr)}});
    }
    out << j.dump(2) << '\n';
  } else {
    out << "       V          D      delay  mu\n";
    for (const auto& r : rows) {
      out << std::setw(8) << fixed(r.speed) << ' ';
      if (r.valid) {
        out << std::setw(10) << time_text(r.D) << ' ' << std::setw(10) << fixed(r.delay) << "  " << node_text(r.mu);
      } else {
        out << "   (speed advantage violated)";
      }
      out << '\n';
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pursuit of an evader on a road network instrumented with ground sensors"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--network", c.network, "network JSON file");
  auto* speed = app.add_option("--speed", c.speed, "pursuer speed (Euclidean metric)")->check(CLI::PositiveNumber);
  auto* metric = app.add_option("--metric", c.metric, "metric JSON file");
  speed->excludes(metric);
  app.add_flag("--no-prune", c.no_prune, "solve over every subset of paths");
  app.add_flag("--strict-resolution", c.strict, "resolve observations as the sensors report them");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "dot", "text"}));
  app.add_option("--seed", c.seed, "generate a random network instead of reading one");

  auto* paths = app.add_subcommand("paths", "evader paths and visit schedule");
  auto* realizable = app.add_subcommand("realizable", "realizable uncertainty sets and event log");
  auto* solve_cmd = app.add_subcommand("solve", "latest exit times and policy");
  bool require_positive = false;
  solve_cmd->add_flag("--require-positive", require_positive, "exit 3 unless a positive delay is tolerable");
  auto* tree = app.add_subcommand("tree", "decision tree (dot or json)");
  auto* simulate_cmd = app.add_subcommand("simulate", "play the policy against one evader path");
  std::size_t path_k = 1;
  double t0 = 0.0;
  std::string policy_file;
  simulate_cmd->add_option("--path", path_k, "evader path (1-based)")->required();
  simulate_cmd->add_option("--t0", t0, "initial delay")->required()->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--policy", policy_file, "policy from solve --format json");
  auto* verify = app.add_subcommand("verify", "play the policy against every evader path");
  verify->add_option("--t0", t0, "initial delay")->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--policy", policy_file, "policy from solve --format json");
  auto* critical = app.add_subcommand("critical-speed", "smallest speed with a positive tolerable delay");
  double lo = 0.0;
  double hi = 0.0;
  double tol = 1e-4;
  critical->add_option("--lo", lo, "lower speed")->required();
  critical->add_option("--hi", hi, "upper speed")->required();
  critical->add_option("--tol", tol, "bracket width");
  auto* sweep_cmd = app.add_subcommand("sweep", "delay against pursuer speed");
  std::string grid;
  sweep_cmd->add_option("--grid", grid, "ascending speeds: v1,v2,... or lo:hi:count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Session s(c);
  try {
    if (app.got_subcommand(paths)) print_paths(s, out);
    if (app.got_subcommand(realizable)) print_realizable(s, out);
    if (app.got_subcommand(solve_cmd)) return print_solve(s, out, require_positive);
    if (app.got_subcommand(tree)) print_tree(s, out);
    if (app.got_subcommand(simulate_cmd)) return print_simulate(s, out, path_k, t0, policy_file);
    if (app.got_subcommand(verify)) return print_verify(s, out, t0, policy_file);
    if (app.got_subcommand(critical)) print_critical(s, out, lo, hi, tol);
    if (app.got_subcommand(sweep_cmd)) print_sweep(s, out, grid);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_validation() ? kInvalid : kUsage;
  }
  return kOk;
}

}  // namespace ugs::cli
