#include "uavsim/scenario_io.hpp"

#include "uavsim/config.hpp"
#include "uavsim/fmt.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uavsim {
namespace {

constexpr const char* kZeroSum = "0000000000000000";

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("scenario: " + msg); }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_f64(const std::string& v, const std::string& where) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') fail("bad value for " + where + ": '" + v + "'");
  return d;
}

int parse_i32(const std::string& v, const std::string& where) {
  char* end = nullptr;
  const long ll = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') fail("bad value for " + where + ": '" + v + "'");
  return static_cast<int>(ll);
}

void kv(std::string& out, const char* key, double v) {
  out += key;
  out += " = ";
  out += fmt_full(v);
  out += '\n';
}

void kv(std::string& out, const char* key, int v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%d", v);
  out += key;
  out += " = ";
  out += buf;
  out += '\n';
}

bool is_config_section(const std::string& s) {
  return s == "region" || s == "uav" || s == "users" || s == "obstacles" || s == "radio" ||
         s == "sim";
}

} // namespace

std::string emit_scenario(const SimConfig& cfg, const SimState& st) {
  std::string out = "[scenario]\n";
  kv(out, "version", kScenarioVersion);
  out += "checksum = ";
  out += kZeroSum;
  out += '\n';
  kv(out, "excluded_users", st.excluded_users);
  out += '\n';

  out += emit_config(cfg);

  out += "[uav_state]\n";
  kv(out, "x", st.uav.position.x);
  kv(out, "y", st.uav.position.y);
  out += '\n';

  for (std::size_t i = 0; i < st.env.obstacles.size(); ++i) {
    const ObstacleBox& b = st.env.obstacles[i];
    char head[32];
    std::snprintf(head, sizeof head, "[obstacle.%zu]\n", i);
    out += head;
    kv(out, "x_min", b.min_corner.x);
    kv(out, "y_min", b.min_corner.y);
    kv(out, "x_max", b.max_corner.x);
    kv(out, "y_max", b.max_corner.y);
    kv(out, "height", b.max_corner.z);
    out += '\n';
  }

  for (std::size_t i = 0; i < st.users.size(); ++i) {
    const UserState& u = st.users[i];
    char head[32];
    std::snprintf(head, sizeof head, "[user.%zu]\n", i);
    out += head;
    kv(out, "id", u.id);
    kv(out, "x", u.position.x);
    kv(out, "y", u.position.y);
    kv(out, "velocity", u.velocity);
    kv(out, "heading", u.heading);
    out += "class = ";
    out += (u.traffic_class == TrafficClass::Urllc) ? "urllc" : "embb";
    out += '\n';
    kv(out, "rate_threshold", u.rate_threshold);
    kv(out, "waypoint_x", u.waypoint.x);
    kv(out, "waypoint_y", u.waypoint.y);
    out += '\n';
  }

  char sum[24];
  std::snprintf(sum, sizeof sum, "%016llx",
                static_cast<unsigned long long>(fnv1a64(out)));
  const std::size_t pos = out.find(kZeroSum);
  out.replace(pos, 16, sum);
  return out;
}

ScenarioFile parse_scenario(const std::string& text) {
  // Verify bytes first: zero the checksum value, rehash, compare.
  const std::size_t mark = text.find("checksum = ");
  if (mark == std::string::npos) fail("missing checksum");
  const std::size_t vpos = mark + 11;
  if (vpos + 16 > text.size()) fail("truncated checksum");
  const std::string stored = text.substr(vpos, 16);
  std::string zeroed = text;
  zeroed.replace(vpos, 16, kZeroSum);
  char expect[24];
  std::snprintf(expect, sizeof expect, "%016llx",
                static_cast<unsigned long long>(fnv1a64(zeroed)));
  if (stored != expect) fail("checksum mismatch (file edited or truncated)");

  ScenarioFile sf;
  int version = -1;
  bool have_uav = false;
  std::istringstream in(text);
  std::string line, section;
  int obstacle_idx = -1, user_idx = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail("malformed section header '" + t + "'");
      section = trim(t.substr(1, t.size() - 2));
      if (section.rfind("obstacle.", 0) == 0) {
        const int idx = parse_i32(section.substr(9), section);
        if (idx != ++obstacle_idx) fail("obstacle sections must run 0,1,2,...");
        sf.state.env.obstacles.push_back(ObstacleBox{});
      } else if (section.rfind("user.", 0) == 0) {
        const int idx = parse_i32(section.substr(5), section);
        if (idx != ++user_idx) fail("user sections must run 0,1,2,...");
        sf.state.users.push_back(UserState{});
      } else if (section != "scenario" && section != "uav_state" &&
                 !is_config_section(section)) {
        fail("unknown section '" + section + "'");
      }
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail("expected key = value: '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    const std::string where = section + "." + key;

    if (is_config_section(section)) {
      set_config_key(sf.config, where, val);
    } else if (section == "scenario") {
      if (key == "version") version = parse_i32(val, where);
      else if (key == "checksum") continue; // verified above
      else if (key == "excluded_users") sf.state.excluded_users = parse_i32(val, where);
      else fail("unknown key '" + where + "'");
    } else if (section == "uav_state") {
      if (key == "x") sf.state.uav.position.x = parse_f64(val, where);
      else if (key == "y") sf.state.uav.position.y = parse_f64(val, where);
      else fail("unknown key '" + where + "'");
      have_uav = true;
    } else if (section.rfind("obstacle.", 0) == 0) {
      ObstacleBox& b = sf.state.env.obstacles.back();
      if (key == "x_min") b.min_corner.x = parse_f64(val, where);
      else if (key == "y_min") b.min_corner.y = parse_f64(val, where);
      else if (key == "x_max") b.max_corner.x = parse_f64(val, where);
      else if (key == "y_max") b.max_corner.y = parse_f64(val, where);
      else if (key == "height") b.max_corner.z = parse_f64(val, where);
      else fail("unknown key '" + where + "'");
    } else if (section.rfind("user.", 0) == 0) {
      UserState& u = sf.state.users.back();
      if (key == "id") u.id = parse_i32(val, where);
      else if (key == "x") u.position.x = parse_f64(val, where);
      else if (key == "y") u.position.y = parse_f64(val, where);
      else if (key == "velocity") u.velocity = parse_f64(val, where);
      else if (key == "heading") u.heading = parse_f64(val, where);
      else if (key == "rate_threshold") u.rate_threshold = parse_f64(val, where);
      else if (key == "waypoint_x") u.waypoint.x = parse_f64(val, where);
      else if (key == "waypoint_y") u.waypoint.y = parse_f64(val, where);
      else if (key == "class") {
        if (val == "urllc") u.traffic_class = TrafficClass::Urllc;
        else if (val == "embb") u.traffic_class = TrafficClass::Embb;
        else fail("bad value for " + where + ": '" + val + "'");
      } else {
        fail("unknown key '" + where + "'");
      }
    } else {
      fail("key '" + key + "' before any section");
    }
  }

  if (version != kScenarioVersion)
    fail("unsupported version " + std::to_string(version) + " (expected " +
         std::to_string(kScenarioVersion) + ")");
  if (!have_uav) fail("missing [uav_state]");
  validate_config(sf.config);

  const SimConfig& cfg = sf.config;
  sf.state.env.region = Rect{{0, 0}, {cfg.region_width, cfg.region_height}};
  sf.state.env.grid = GridSpec{cfg.cell_size, {0, 0}};
  sf.state.uav.altitude = cfg.uav_altitude;
  sf.state.uav.velocity_max = cfg.uav_vmax;
  sf.state.uav.coverage_radius = cfg.coverage_radius;
  sf.state.uav.capacity = cfg.uav_capacity;
  sf.state.slot = 0;
  return sf;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

} // namespace uavsim
