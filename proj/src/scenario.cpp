#include "ebs/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

namespace ebs {

Topology build_topology(const TopologySpec& spec, std::uint64_t run_seed) {
  switch (spec.kind) {
    case TopologySpec::Kind::Grid: return make_regular_grid(spec.rows, spec.cols, false);
    case TopologySpec::Kind::Torus: return make_regular_grid(spec.rows, spec.cols, true);
    case TopologySpec::Kind::Complete: return make_complete(spec.n);
    case TopologySpec::Kind::RandomGeometric: {
      const std::uint64_t seed = spec.seed.value_or(run_seed);
      double radius = 0.0;
      if (spec.radius) {
        radius = *spec.radius;
      } else if (spec.target_degree) {
        radius = tune_radius_for_degree(spec.n, *spec.target_degree, seed);
      } else {
        throw std::invalid_argument("topology: rgg needs topology.radius or topology.target_degree");
      }
      return make_random_geometric(spec.n, radius, seed);
    }
    case TopologySpec::Kind::File: return load_topology(spec.path, spec.directed);
  }
  throw std::invalid_argument("topology: unknown kind");
}

protocol::MrfConfig ScenarioConfig::mrf_config() const {
  auto cfg = protocol::MrfConfig::half_period(protocol.period,
                                              CouplingParams{protocol.epsilon, protocol.sigma});
  if (mrf && mrf->refractory > 0) cfg.refractory = mrf->refractory;
  return cfg;
}

void ScenarioConfig::validate() const {
  protocol.validate();
  delay.validate();
  fault.validate();
  mac.validate();
  if (horizon_periods < 1) throw std::invalid_argument("run.horizon must be >= 1");
  if (steady_window < 1) throw std::invalid_argument("run.steady_window must be >= 1");
  if (!(payload_rate >= 0.0 && payload_rate <= 1.0)) {
    throw std::invalid_argument("payload.rate must lie in [0, 1]");
  }
  if (drift.spread_ppm < 0.0) throw std::invalid_argument("drift.spread_ppm must be >= 0");
  for (double p : initial_phases) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("run.initial_phases must lie in [0, 1]");
  }
  for (const auto& c : churn) {
    if (c.at < 0) throw std::invalid_argument("churn times must be >= 0");
  }
  if (topology.kind == TopologySpec::Kind::File && topology.path.empty()) {
    throw std::invalid_argument("topology.path is required for kind = file");
  }
  if (topology.kind == TopologySpec::Kind::RandomGeometric && !topology.radius &&
      !topology.target_degree) {
    throw std::invalid_argument("topology: rgg needs topology.radius or topology.target_degree");
  }
  if (mrf) mrf_config().validate();
}

namespace cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Reason-only failure from a value parser; the caller adds source, line and key.
struct BadValue {
  std::string reason;
};

std::string fmt(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

template <typename Int>
Int parse_int(const std::string& text, Int lo, Int hi) {
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw BadValue{"expected an integer, got '" + text + "'"};
  }
  if (v < lo || v > hi) {
    throw BadValue{"value " + text + " out of range [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]"};
  }
  return v;
}

struct Range {
  double lo;
  double hi;
  bool lo_open = false;
  bool hi_open = false;
};

double parse_double(const std::string& text, Range r) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw BadValue{"expected a number, got '" + text + "'"};
  }
  const bool below = r.lo_open ? v <= r.lo : v < r.lo;
  const bool above = r.hi_open ? v >= r.hi : v > r.hi;
  if (below || above) {
    throw BadValue{"value " + text + " out of range " + (r.lo_open ? "(" : "[") + fmt(r.lo) + ", " +
                   fmt(r.hi) + (r.hi_open ? ")" : "]")};
  }
  return v;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
  if (text == "false" || text == "no" || text == "off" || text == "0") return false;
  throw BadValue{"expected true or false, got '" + text + "'"};
}

template <typename E, std::size_t N>
E parse_enum(const std::string& text, const std::array<std::pair<std::string_view, E>, N>& names) {
  for (const auto& [name, value] : names) {
    if (text == name) return value;
  }
  std::string options;
  for (const auto& [name, value] : names) options += (options.empty() ? "" : "|") + std::string(name);
  throw BadValue{"expected one of " + options + ", got '" + text + "'"};
}

template <typename E, std::size_t N>
std::string enum_name(E value, const std::array<std::pair<std::string_view, E>, N>& names) {
  for (const auto& [name, v] : names) {
    if (v == value) return std::string(name);
  }
  return "?";
}

constexpr std::array<std::pair<std::string_view, TopologySpec::Kind>, 5> kTopologyKinds{{
    {"torus", TopologySpec::Kind::Torus},
    {"grid", TopologySpec::Kind::Grid},
    {"complete", TopologySpec::Kind::Complete},
    {"rgg", TopologySpec::Kind::RandomGeometric},
    {"file", TopologySpec::Kind::File},
}};

constexpr std::array<std::pair<std::string_view, protocol::Variant>, 2> kVariants{{
    {"no_reachback", protocol::Variant::NoReachback},
    {"partial_reachback", protocol::Variant::PartialReachback},
}};

constexpr std::array<std::pair<std::string_view, sim::DelayModel::Kind>, 3> kDelayKinds{{
    {"none", sim::DelayModel::Kind::None},
    {"deterministic", sim::DelayModel::Kind::Deterministic},
    {"uniform", sim::DelayModel::Kind::UniformRandom},
}};

constexpr Ticks kMaxTicks = Ticks{1} << 50;

template <typename T>
std::string optional_text(const std::optional<T>& v) {
  if (!v) return "auto";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

struct KeyDef {
  std::string_view name;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

std::string render_overrides(const sim::DelayModel& d) {
  std::string out;
  for (const auto& [link, ticks] : d.overrides) {
    if (!out.empty()) out += ", ";
    out += std::to_string(link.first) + ">" + std::to_string(link.second) + ":" + std::to_string(ticks);
  }
  return out;
}

std::map<std::pair<NodeId, NodeId>, Ticks> parse_overrides(const std::string& text) {
  std::map<std::pair<NodeId, NodeId>, Ticks> out;
  if (text.empty()) return out;
  for (const std::string& item : split(text, ',')) {
    const auto gt = item.find('>');
    const auto colon = item.find(':');
    if (gt == std::string::npos || colon == std::string::npos || colon < gt) {
      throw BadValue{"expected from>to:ticks, got '" + item + "'"};
    }
    const auto from = parse_int<NodeId>(trim(item.substr(0, gt)), 0, std::numeric_limits<NodeId>::max());
    const auto to = parse_int<NodeId>(trim(item.substr(gt + 1, colon - gt - 1)), 0,
                                      std::numeric_limits<NodeId>::max());
    out[{from, to}] = parse_int<Ticks>(trim(item.substr(colon + 1)), 0, kMaxTicks);
  }
  return out;
}

std::map<NodeId, double> parse_skews(const std::string& text) {
  std::map<NodeId, double> out;
  if (text.empty()) return out;
  for (const std::string& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw BadValue{"expected node:ppm, got '" + item + "'"};
    const auto id = parse_int<NodeId>(trim(item.substr(0, colon)), 0, std::numeric_limits<NodeId>::max());
    out[id] = parse_double(trim(item.substr(colon + 1)), {-1e5, 1e5});
  }
  return out;
}

std::vector<double> parse_phases(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const std::string& item : split(text, ',')) out.push_back(parse_double(item, {0.0, 1.0}));
  return out;
}

const std::vector<KeyDef>& key_table() {
  using C = ScenarioConfig;
  using S = const std::string&;
  static const std::vector<KeyDef> table = {
      {"topology.kind", [](C& c, S v) { c.topology.kind = parse_enum(v, kTopologyKinds); },
       [](const C& c) { return enum_name(c.topology.kind, kTopologyKinds); }},
      {"topology.rows", [](C& c, S v) { c.topology.rows = parse_int(v, 1, 100'000); },
       [](const C& c) { return std::to_string(c.topology.rows); }},
      {"topology.cols", [](C& c, S v) { c.topology.cols = parse_int(v, 1, 100'000); },
       [](const C& c) { return std::to_string(c.topology.cols); }},
      {"topology.n", [](C& c, S v) { c.topology.n = parse_int(v, 1, 1'000'000); },
       [](const C& c) { return std::to_string(c.topology.n); }},
      {"topology.radius",
       [](C& c, S v) {
         c.topology.radius = v == "auto" ? std::nullopt
                                         : std::optional(parse_double(v, {0.0, 2.0, true, false}));
       },
       [](const C& c) { return optional_text(c.topology.radius); }},
      {"topology.target_degree",
       [](C& c, S v) {
         c.topology.target_degree =
             v == "auto" ? std::nullopt : std::optional(parse_double(v, {0.0, 1e6, true, false}));
       },
       [](const C& c) { return optional_text(c.topology.target_degree); }},
      {"topology.seed",
       [](C& c, S v) {
         c.topology.seed = v == "auto" ? std::nullopt
                                       : std::optional(parse_int<std::uint64_t>(
                                             v, 0, std::numeric_limits<std::uint64_t>::max()));
       },
       [](const C& c) { return optional_text(c.topology.seed); }},
      {"topology.path", [](C& c, S v) { c.topology.path = v; },
       [](const C& c) { return c.topology.path; }},
      {"topology.directed", [](C& c, S v) { c.topology.directed = parse_bool(v); },
       [](const C& c) { return std::string(c.topology.directed ? "true" : "false"); }},

      {"protocol.variant", [](C& c, S v) { c.protocol.variant = parse_enum(v, kVariants); },
       [](const C& c) { return enum_name(c.protocol.variant, kVariants); }},
      {"protocol.period", [](C& c, S v) { c.protocol.period = parse_int<Ticks>(v, 1, kMaxTicks); },
       [](const C& c) { return std::to_string(c.protocol.period); }},
      {"protocol.epsilon",
       [](C& c, S v) { c.protocol.epsilon = parse_double(v, {0.0, 0.5, true, false}); },
       [](const C& c) { return fmt(c.protocol.epsilon); }},
      {"protocol.sigma", [](C& c, S v) { c.protocol.sigma = parse_double(v, {0.0, 1.0, true, true}); },
       [](const C& c) { return fmt(c.protocol.sigma); }},
      {"protocol.s_th", [](C& c, S v) { c.protocol.s_th = parse_double(v, {0.0, 100.0}); },
       [](const C& c) { return fmt(c.protocol.s_th); }},
      {"protocol.c0", [](C& c, S v) { c.protocol.c0 = parse_int<Ticks>(v, 1, kMaxTicks); },
       [](const C& c) { return std::to_string(c.protocol.c0); }},
      {"protocol.adaptive_c", [](C& c, S v) { c.protocol.adaptive_c = parse_bool(v); },
       [](const C& c) { return std::string(c.protocol.adaptive_c ? "true" : "false"); }},
      {"protocol.init_listen_periods",
       [](C& c, S v) { c.protocol.init_listen_periods = parse_int(v, 1, 10'000); },
       [](const C& c) { return std::to_string(c.protocol.init_listen_periods); }},
      {"protocol.duty_cycling", [](C& c, S v) { c.protocol.duty_cycling = parse_bool(v); },
       [](const C& c) { return std::string(c.protocol.duty_cycling ? "true" : "false"); }},

      {"payload.rate", [](C& c, S v) { c.payload_rate = parse_double(v, {0.0, 1.0}); },
       [](const C& c) { return fmt(c.payload_rate); }},

      {"mrf.enabled",
       [](C& c, S v) {
         if (parse_bool(v)) {
           if (!c.mrf) c.mrf = MrfSpec{};
         } else {
           c.mrf.reset();
         }
       },
       [](const C& c) { return std::string(c.mrf ? "true" : "false"); }},
      {"mrf.refractory",
       [](C& c, S v) {
         const Ticks r = parse_int<Ticks>(v, 0, kMaxTicks);
         if (c.mrf) {
           c.mrf->refractory = r;
         } else if (r != 0) {
           c.mrf = MrfSpec{r};
         }
       },
       [](const C& c) { return std::to_string(c.mrf ? c.mrf->refractory : 0); }},

      {"delay.kind", [](C& c, S v) { c.delay.kind = parse_enum(v, kDelayKinds); },
       [](const C& c) { return enum_name(c.delay.kind, kDelayKinds); }},
      {"delay.nu", [](C& c, S v) { c.delay.nu = parse_int<Ticks>(v, 0, kMaxTicks); },
       [](const C& c) { return std::to_string(c.delay.nu); }},
      {"delay.lo", [](C& c, S v) { c.delay.lo = parse_int<Ticks>(v, 0, kMaxTicks); },
       [](const C& c) { return std::to_string(c.delay.lo); }},
      {"delay.hi", [](C& c, S v) { c.delay.hi = parse_int<Ticks>(v, 0, kMaxTicks); },
       [](const C& c) { return std::to_string(c.delay.hi); }},
      {"delay.override", [](C& c, S v) { c.delay.overrides = parse_overrides(v); },
       [](const C& c) { return render_overrides(c.delay); }},

      {"fault.loss", [](C& c, S v) { c.fault.loss_probability = parse_double(v, {0.0, 1.0}); },
       [](const C& c) { return fmt(c.fault.loss_probability); }},
      {"fault.collisions", [](C& c, S v) { c.fault.collisions_enabled = parse_bool(v); },
       [](const C& c) { return std::string(c.fault.collisions_enabled ? "true" : "false"); }},
      {"fault.airtime", [](C& c, S v) { c.fault.airtime_beta = parse_int<Ticks>(v, 0, kMaxTicks); },
       [](const C& c) { return std::to_string(c.fault.airtime_beta); }},

      {"mac.backoff", [](C& c, S v) { c.mac.backoff_max = parse_int<Ticks>(v, 0, kMaxTicks); },
       [](const C& c) { return std::to_string(c.mac.backoff_max); }},

      {"drift.spread_ppm", [](C& c, S v) { c.drift.spread_ppm = parse_double(v, {0.0, 1e5}); },
       [](const C& c) { return fmt(c.drift.spread_ppm); }},
      {"drift.skew", [](C& c, S v) { c.drift.skew_ppm = parse_skews(v); },
       [](const C& c) {
         std::string out;
         for (const auto& [id, ppm] : c.drift.skew_ppm) {
           out += (out.empty() ? "" : ", ") + std::to_string(id) + ":" + fmt(ppm);
         }
         return out;
       }},

      {"run.horizon", [](C& c, S v) { c.horizon_periods = parse_int(v, 1, 10'000'000); },
       [](const C& c) { return std::to_string(c.horizon_periods); }},
      {"run.seed",
       [](C& c, S v) { c.seed = parse_int<std::uint64_t>(v, 0, std::numeric_limits<std::uint64_t>::max()); },
       [](const C& c) { return std::to_string(c.seed); }},
      {"run.steady_window", [](C& c, S v) { c.steady_window = parse_int(v, 1, 10'000'000); },
       [](const C& c) { return std::to_string(c.steady_window); }},
      {"run.initial_phases", [](C& c, S v) { c.initial_phases = parse_phases(v); },
       [](const C& c) {
         std::string out;
         for (double p : c.initial_phases) out += (out.empty() ? "" : ", ") + fmt(p);
         return out;
       }},
      {"run.trace", [](C& c, S v) { c.trace = parse_bool(v); },
       [](const C& c) { return std::string(c.trace ? "true" : "false"); }},
  };
  return table;
}

// Keys resolved after the table because they depend on the period.
constexpr std::string_view kDelta = "delay.delta";
constexpr std::string_view kChurnPrefix = "churn.";
constexpr std::string_view kSweepPrefix = "sweep.";

const KeyDef* find_key(std::string_view name) {
  for (const KeyDef& k : key_table()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

bool is_churn_key(std::string_view key) {
  if (!key.starts_with(kChurnPrefix)) return false;
  const auto idx = key.substr(kChurnPrefix.size());
  return !idx.empty() && std::all_of(idx.begin(), idx.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

// Exact key, or a leaf name shared by no other key.
std::string canonical_sweep_key(const std::string& name) {
  if (find_key(name) || name == kDelta) return name;
  std::vector<std::string> hits;
  auto consider = [&](std::string_view full) {
    const auto dot = full.rfind('.');
    if (full.substr(dot + 1) == name) hits.emplace_back(full);
  };
  for (const KeyDef& k : key_table()) consider(k.name);
  consider(kDelta);
  if (hits.size() == 1) return hits.front();
  if (hits.empty()) throw BadValue{"sweep axis '" + name + "' is not a known parameter"};
  std::string options;
  for (const auto& h : hits) options += (options.empty() ? "" : ", ") + h;
  throw BadValue{"sweep axis '" + name + "' is ambiguous (" + options + ")"};
}

std::vector<std::string> parse_list(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw BadValue{"expected a list [v1, v2, ...], got '" + text + "'"};
  }
  auto items = split(std::string_view(text).substr(1, text.size() - 2), ',');
  if (items.size() == 1 && items.front().empty()) throw BadValue{"sweep list is empty"};
  for (const auto& item : items) {
    if (item.empty()) throw BadValue{"empty entry in sweep list"};
  }
  return items;
}

// "leave 12 at 30" or "join 25 at 60 links 7,11 [phase 0.25]"; times in periods.
sim::ChurnEvent parse_churn(const std::string& text, Ticks period) {
  std::istringstream in(text);
  std::string action, at_word, node_text, time_text;
  in >> action >> node_text >> at_word >> time_text;
  if ((action != "leave" && action != "join") || at_word != "at" || time_text.empty()) {
    throw BadValue{"expected 'leave ID at P' or 'join ID at P links A,B,...', got '" + text + "'"};
  }
  sim::ChurnEvent ev;
  ev.action = action == "join" ? sim::ChurnEvent::Action::Join : sim::ChurnEvent::Action::Leave;
  ev.node = parse_int<NodeId>(node_text, 0, std::numeric_limits<NodeId>::max());
  const double periods = parse_double(time_text, {0.0, 1e9});
  ev.at = std::llround(periods * static_cast<double>(period));
  std::string word;
  while (in >> word) {
    std::string arg;
    if (!(in >> arg)) throw BadValue{"'" + word + "' needs a value"};
    if (word == "links" && ev.action == sim::ChurnEvent::Action::Join) {
      for (const std::string& id : split(arg, ',')) {
        ev.links.push_back(parse_int<NodeId>(id, 0, std::numeric_limits<NodeId>::max()));
      }
    } else if (word == "phase" && ev.action == sim::ChurnEvent::Action::Join) {
      ev.initial_phase = parse_double(arg, {0.0, 1.0});
    } else {
      throw BadValue{"unexpected '" + word + "' in churn entry"};
    }
  }
  return ev;
}

std::string render_churn(const sim::ChurnEvent& ev, Ticks period) {
  std::string out = ev.action == sim::ChurnEvent::Action::Join ? "join " : "leave ";
  out += std::to_string(ev.node) + " at " +
         fmt(static_cast<double>(ev.at) / static_cast<double>(period));
  if (ev.action == sim::ChurnEvent::Action::Join) {
    std::string links;
    for (NodeId id : ev.links) links += (links.empty() ? "" : ",") + std::to_string(id);
    if (!links.empty()) out += " links " + links;
    if (ev.initial_phase) out += " phase " + fmt(*ev.initial_phase);
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, const Setting& s, const std::string& reason) {
  throw ConfigError(source + ":" + std::to_string(s.line) + ": " + s.key + ": " + reason);
}

ScenarioConfig resolve(const std::string& source, const std::vector<Setting>& settings,
                       const std::optional<Setting>& sweep) {
  ScenarioConfig cfg;
  std::vector<const Setting*> deferred;
  for (const Setting& s : settings) {
    if (s.key == kDelta || is_churn_key(s.key)) {
      deferred.push_back(&s);
      continue;
    }
    const KeyDef* def = find_key(s.key);
    if (!def) fail(source, s, "unknown key");
    try {
      def->set(cfg, s.value);
    } catch (const BadValue& e) {
      fail(source, s, e.reason);
    }
  }

  std::map<int, sim::ChurnEvent> churn;
  for (const Setting* s : deferred) {
    try {
      if (s->key == kDelta) {
        const double delta = parse_double(s->value, {0.0, 1.0, false, true});
        cfg.delay.kind = sim::DelayModel::Kind::Deterministic;
        cfg.delay.nu = std::llround(delta * static_cast<double>(cfg.protocol.period));
      } else {
        const int idx = parse_int(s->key.substr(kChurnPrefix.size()), 0, 1'000'000);
        churn[idx] = parse_churn(s->value, cfg.protocol.period);
      }
    } catch (const BadValue& e) {
      fail(source, *s, e.reason);
    }
  }
  for (auto& [idx, ev] : churn) cfg.churn.push_back(std::move(ev));

  if (sweep) {
    try {
      SweepAxis axis{canonical_sweep_key(sweep->key.substr(kSweepPrefix.size())),
                     parse_list(sweep->value)};
      // Each value must resolve on its own.
      for (const std::string& v : axis.values) {
        ScenarioConfig probe = cfg;
        if (axis.key == kDelta) {
          parse_double(v, {0.0, 1.0, false, true});
        } else {
          find_key(axis.key)->set(probe, v);
        }
      }
      cfg.sweep = std::move(axis);
    } catch (const BadValue& e) {
      fail(source, *sweep, e.reason);
    }
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

struct Split {
  std::vector<Setting> settings;
  std::optional<Setting> sweep;
};

Split split_sweep(const std::string& source, const std::vector<Setting>& all) {
  Split out;
  for (const Setting& s : all) {
    if (s.key.starts_with(kSweepPrefix)) {
      if (out.sweep) fail(source, s, "only one sweep axis is supported");
      out.sweep = s;
    } else {
      out.settings.push_back(s);
    }
  }
  return out;
}

}  // namespace

ParsedScenario parse_scenario(std::istream& in, const std::string& source) {
  std::vector<Setting> all;
  std::map<std::string, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    Setting s{trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1)),
              lineno};
    if (s.key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": missing key");
    if (auto [it, fresh] = seen.emplace(s.key, lineno); !fresh) {
      fail(source, s, "duplicate key (first set on line " + std::to_string(it->second) + ")");
    }
    all.push_back(std::move(s));
  }
  if (in.bad()) throw ConfigError(source + ": read error");

  Split parts = split_sweep(source, all);
  ParsedScenario out;
  out.source = source;
  out.config = resolve(source, parts.settings, parts.sweep);
  out.settings = std::move(parts.settings);
  if (parts.sweep) {
    // Keep the sweep entry with a canonical key so overrides can re-resolve it.
    Setting axis = *parts.sweep;
    axis.key = std::string(kSweepPrefix) + out.config.sweep->key;
    out.settings.push_back(std::move(axis));
  }
  return out;
}

ParsedScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  return parse_scenario(in, path.string());
}

ParsedScenario with_override(const ParsedScenario& scenario, const std::string& key,
                             const std::string& value) {
  std::vector<Setting> all;
  bool replaced = false;
  for (const Setting& s : scenario.settings) {
    if (s.key == key) {
      all.push_back({key, value, s.line});
      replaced = true;
    } else {
      all.push_back(s);
    }
  }
  if (!replaced) all.push_back({key, value, 0});
  Split parts = split_sweep(scenario.source, all);
  ParsedScenario out;
  out.source = scenario.source;
  out.config = resolve(scenario.source, parts.settings, parts.sweep);
  out.settings = std::move(all);
  return out;
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const KeyDef& k : key_table()) keys.emplace_back(k.name);
  keys.emplace_back(kDelta);
  keys.emplace_back("churn.<index>");
  keys.emplace_back("sweep.<key>");
  return keys;
}

std::string render_config(const ScenarioConfig& config) {
  std::ostringstream out;
  std::string_view section;
  for (const KeyDef& k : key_table()) {
    const auto dot = k.name.find('.');
    if (k.name.substr(0, dot) != section) {
      if (!section.empty()) out << '\n';
      section = k.name.substr(0, dot);
    }
    out << k.name << " = " << k.get(config) << '\n';
  }
  for (std::size_t i = 0; i < config.churn.size(); ++i) {
    if (i == 0) out << '\n';
    out << "churn." << i << " = " << render_churn(config.churn[i], config.protocol.period) << '\n';
  }
  if (config.sweep) {
    out << "\nsweep." << config.sweep->key << " = [";
    for (std::size_t i = 0; i < config.sweep->values.size(); ++i) {
      out << (i ? ", " : "") << config.sweep->values[i];
    }
    out << "]\n";
  }
  return out.str();
}

std::vector<SweepPoint> plan_sweep(const ParsedScenario& scenario) {
  if (!scenario.config.sweep) return {SweepPoint{"", scenario.config}};
  const SweepAxis& axis = *scenario.config.sweep;
  std::vector<SweepPoint> points;
  for (const std::string& v : axis.values) {
    std::vector<Setting> settings;
    bool replaced = false;
    for (const Setting& s : scenario.settings) {
      if (s.key.starts_with(kSweepPrefix)) continue;
      if (s.key == axis.key) {
        settings.push_back({s.key, v, s.line});
        replaced = true;
      } else {
        settings.push_back(s);
      }
    }
    if (!replaced) settings.push_back({axis.key, v, 0});
    ScenarioConfig cfg = resolve(scenario.source, settings, std::nullopt);
    points.push_back({v, std::move(cfg)});
  }
  return points;
}

}  // namespace cli
}  // namespace ebs
