#include "uavsim/config.hpp"

#include "uavsim/fmt.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uavsim {
namespace {

enum class Kind { F64, I32, U64, Algo, Fade };

struct KeyDef {
  const char* section;
  const char* name;
  Kind kind;
  void* (*field)(SimConfig&);
};

#define UAVSIM_FIELD(expr) +[](SimConfig& c) -> void* { return &(c.expr); }

const KeyDef kKeys[] = {
    {"region", "width", Kind::F64, UAVSIM_FIELD(region_width)},
    {"region", "height", Kind::F64, UAVSIM_FIELD(region_height)},

    {"uav", "altitude", Kind::F64, UAVSIM_FIELD(uav_altitude)},
    {"uav", "vmax", Kind::F64, UAVSIM_FIELD(uav_vmax)},
    {"uav", "coverage_radius", Kind::F64, UAVSIM_FIELD(coverage_radius)},
    {"uav", "capacity", Kind::I32, UAVSIM_FIELD(uav_capacity)},

    {"users", "count", Kind::I32, UAVSIM_FIELD(users_total)},
    {"users", "urllc_fraction", Kind::F64, UAVSIM_FIELD(urllc_fraction)},
    {"users", "vmax", Kind::F64, UAVSIM_FIELD(user_vmax)},
    {"users", "urllc_threshold_bps", Kind::F64, UAVSIM_FIELD(urllc_threshold_bps)},
    {"users", "baseline_rreq_bps", Kind::F64, UAVSIM_FIELD(baseline_rreq_bps)},

    {"obstacles", "count", Kind::I32, UAVSIM_FIELD(obstacle_count)},
    {"obstacles", "side_min", Kind::F64, UAVSIM_FIELD(obstacle_side_min)},
    {"obstacles", "side_max", Kind::F64, UAVSIM_FIELD(obstacle_side_max)},
    {"obstacles", "height_min", Kind::F64, UAVSIM_FIELD(obstacle_height_min)},
    {"obstacles", "height_max", Kind::F64, UAVSIM_FIELD(obstacle_height_max)},

    {"radio", "tx_power_dbm", Kind::F64, UAVSIM_FIELD(radio.tx_power_dbm)},
    {"radio", "tx_gain_dbi", Kind::F64, UAVSIM_FIELD(radio.tx_gain_dbi)},
    {"radio", "rx_gain_dbi", Kind::F64, UAVSIM_FIELD(radio.rx_gain_dbi)},
    {"radio", "bandwidth_hz", Kind::F64, UAVSIM_FIELD(radio.bandwidth_hz)},
    {"radio", "noise_dbm", Kind::F64, UAVSIM_FIELD(radio.noise_dbm)},
    {"radio", "los_alpha_db", Kind::F64, UAVSIM_FIELD(radio.los.alpha_db)},
    {"radio", "los_beta", Kind::F64, UAVSIM_FIELD(radio.los.beta)},
    {"radio", "los_sigma_db", Kind::F64, UAVSIM_FIELD(radio.los.sigma_db)},
    {"radio", "los_rician_k", Kind::F64, UAVSIM_FIELD(radio.los.rician_k)},
    {"radio", "nlos_alpha_db", Kind::F64, UAVSIM_FIELD(radio.nlos.alpha_db)},
    {"radio", "nlos_beta", Kind::F64, UAVSIM_FIELD(radio.nlos.beta)},
    {"radio", "nlos_sigma_db", Kind::F64, UAVSIM_FIELD(radio.nlos.sigma_db)},

    {"sim", "slots", Kind::I32, UAVSIM_FIELD(slots)},
    {"sim", "dt", Kind::F64, UAVSIM_FIELD(dt)},
    {"sim", "seed", Kind::U64, UAVSIM_FIELD(seed)},
    {"sim", "cell_size", Kind::F64, UAVSIM_FIELD(cell_size)},
    {"sim", "algorithm", Kind::Algo, UAVSIM_FIELD(algorithm)},
    {"sim", "fading", Kind::Fade, UAVSIM_FIELD(fading)},
};

#undef UAVSIM_FIELD

const char* kSectionOrder[] = {"region", "uav", "users", "obstacles", "radio", "sim"};

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("config: " + msg); }

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

void write_value(std::string& out, const KeyDef& k, const SimConfig& cfg) {
  void* p = k.field(const_cast<SimConfig&>(cfg));
  char buf[40];
  switch (k.kind) {
    case Kind::F64:
      out += fmt_full(*static_cast<double*>(p));
      break;
    case Kind::I32:
      std::snprintf(buf, sizeof buf, "%d", *static_cast<int*>(p));
      out += buf;
      break;
    case Kind::U64:
      std::snprintf(buf, sizeof buf, "%llu",
                    static_cast<unsigned long long>(*static_cast<std::uint64_t*>(p)));
      out += buf;
      break;
    case Kind::Algo:
      out += (*static_cast<Algorithm*>(p) == Algorithm::Proposed) ? "proposed" : "baseline";
      break;
    case Kind::Fade:
      out += (*static_cast<FadingMode*>(p) == FadingMode::Stochastic) ? "stochastic"
                                                                      : "deterministic";
      break;
  }
}

void apply_value(const KeyDef& k, SimConfig& cfg, const std::string& raw,
                 const std::string& where) {
  const std::string v = trim(raw);
  void* p = k.field(cfg);
  const char* s = v.c_str();
  char* end = nullptr;
  auto bad = [&] { fail("bad value for " + where + ": '" + v + "'"); };
  switch (k.kind) {
    case Kind::F64: {
      const double d = std::strtod(s, &end);
      if (end == s || *end != '\0' || !std::isfinite(d)) bad();
      *static_cast<double*>(p) = d;
      break;
    }
    case Kind::I32: {
      const long long ll = std::strtoll(s, &end, 10);
      if (end == s || *end != '\0' || ll < INT_MIN || ll > INT_MAX) bad();
      *static_cast<int*>(p) = static_cast<int>(ll);
      break;
    }
    case Kind::U64: {
      if (!v.empty() && v[0] == '-') bad();
      const unsigned long long ull = std::strtoull(s, &end, 10);
      if (end == s || *end != '\0') bad();
      *static_cast<std::uint64_t*>(p) = ull;
      break;
    }
    case Kind::Algo: {
      if (v == "proposed") *static_cast<Algorithm*>(p) = Algorithm::Proposed;
      else if (v == "baseline") *static_cast<Algorithm*>(p) = Algorithm::Baseline;
      else bad();
      break;
    }
    case Kind::Fade: {
      if (v == "stochastic") *static_cast<FadingMode*>(p) = FadingMode::Stochastic;
      else if (v == "deterministic") *static_cast<FadingMode*>(p) = FadingMode::Deterministic;
      else bad();
      break;
    }
  }
}

const KeyDef* find_key(const std::string& section, const std::string& name) {
  for (const KeyDef& k : kKeys)
    if (section == k.section && name == k.name) return &k;
  return nullptr;
}

bool known_section(const std::string& s) {
  return std::any_of(std::begin(kSectionOrder), std::end(kSectionOrder),
                     [&](const char* n) { return s == n; });
}

} // namespace

std::string emit_config(const SimConfig& cfg) {
  std::string out;
  for (const char* section : kSectionOrder) {
    out += '[';
    out += section;
    out += "]\n";
    for (const KeyDef& k : kKeys) {
      if (std::strcmp(k.section, section) != 0) continue;
      out += k.name;
      out += " = ";
      write_value(out, k, cfg);
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

SimConfig parse_config(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const std::string at = " (line " + std::to_string(lineno) + ")";
    if (t.front() == '[') {
      if (t.back() != ']') fail("malformed section header" + at);
      section = trim(t.substr(1, t.size() - 2));
      if (!known_section(section)) fail("unknown section '" + section + "'" + at);
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail("expected key = value" + at);
    const std::string key = trim(t.substr(0, eq));
    if (section.empty()) fail("key '" + key + "' before any section" + at);
    const KeyDef* k = find_key(section, key);
    if (!k) fail("unknown key '" + section + "." + key + "'" + at);
    apply_value(*k, cfg, t.substr(eq + 1), section + "." + key + at);
  }
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

void set_config_key(SimConfig& cfg, const std::string& dotted_key, const std::string& value) {
  const std::size_t dot = dotted_key.find('.');
  if (dot == std::string::npos) fail("expected section.key, got '" + dotted_key + "'");
  const std::string section = dotted_key.substr(0, dot);
  const std::string name = dotted_key.substr(dot + 1);
  const KeyDef* k = find_key(section, name);
  if (!k) fail("unknown key '" + dotted_key + "'");
  apply_value(*k, cfg, value, dotted_key);
}

void validate_config(const SimConfig& cfg) {
  auto need = [](bool ok, const char* msg) {
    if (!ok) fail(msg);
  };
  need(cfg.region_width > 0 && cfg.region_height > 0, "region dimensions must be positive");
  need(cfg.uav_altitude > 0, "uav.altitude must be positive");
  need(cfg.uav_vmax >= 0, "uav.vmax must be non-negative");
  need(cfg.coverage_radius > 0, "uav.coverage_radius must be positive");
  need(cfg.uav_capacity >= 1, "uav.capacity must be at least 1");
  need(cfg.users_total >= 0, "users.count must be non-negative");
  need(cfg.urllc_fraction >= 0 && cfg.urllc_fraction <= 1,
       "users.urllc_fraction must lie in [0, 1]");
  need(cfg.user_vmax > 0, "users.vmax must be positive");
  need(cfg.urllc_threshold_bps >= 0, "users.urllc_threshold_bps must be non-negative");
  need(cfg.baseline_rreq_bps >= 0, "users.baseline_rreq_bps must be non-negative");
  need(cfg.obstacle_count >= 0, "obstacles.count must be non-negative");
  need(cfg.obstacle_side_min > 0 && cfg.obstacle_side_max >= cfg.obstacle_side_min,
       "obstacle side range must be positive and ordered");
  need(cfg.obstacle_height_min > 0 && cfg.obstacle_height_max >= cfg.obstacle_height_min,
       "obstacle height range must be positive and ordered");
  need(cfg.obstacle_count == 0 ||
           (cfg.obstacle_side_max <= cfg.region_width &&
            cfg.obstacle_side_max <= cfg.region_height),
       "obstacles.side_max exceeds the region");
  need(cfg.radio.bandwidth_hz > 0, "radio.bandwidth_hz must be positive");
  need(cfg.radio.los.sigma_db >= 0 && cfg.radio.nlos.sigma_db >= 0,
       "shadowing sigma must be non-negative");
  need(cfg.radio.los.rician_k >= 0, "radio.los_rician_k must be non-negative");
  need(cfg.slots >= 1, "sim.slots must be at least 1");
  need(cfg.dt > 0, "sim.dt must be positive");
  need(cfg.cell_size > 0, "sim.cell_size must be positive");
}

} // namespace uavsim
