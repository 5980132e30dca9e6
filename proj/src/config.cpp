#include "orlicz/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/text.hpp"

namespace orlicz {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + fmt_int(line) + ": " + msg);
}

double num_at(int line, const std::string& v) {
  try {
    return parse_num(v);
  } catch (const std::exception& e) {
    fail(line, e.what());
  }
}

int int_at(int line, const std::string& v) {
  double d = num_at(line, v);
  if (!std::isfinite(d) || d != std::floor(d) || std::fabs(d) > 1e15)
    fail(line, "expected an integer, got '" + v + "'");
  return static_cast<int>(d);
}

std::uint64_t u64_at(int line, const std::string& v) {
  char* end = nullptr;
  unsigned long long u = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size())
    fail(line, "expected an unsigned integer, got '" + v + "'");
  return static_cast<std::uint64_t>(u);
}

bool bool_at(int line, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

Vec vec_at(int line, const std::string& v) {
  Vec out;
  for (const std::string& tok : split_ws(v)) out.push_back(num_at(line, tok));
  if (out.empty()) fail(line, "expected at least one number");
  return out;
}

// a phi section under construction, with the source line of every key for
// family-consistency diagnostics
struct PhiParse {
  PhiSpec spec;
  std::map<std::string, int> keys;
  int start_line = 0;
};

void phi_key(PhiParse& p, const std::string& section, const std::string& key,
             const std::string& val, int line) {
  PhiSpec& s = p.spec;
  if (key == "family") s.family = val;
  else if (key == "p") s.p = num_at(line, val);
  else if (key == "q") s.q = num_at(line, val);
  else if (key == "a") s.a = num_at(line, val);
  else if (key == "r") s.r = num_at(line, val);
  else if (key == "weights") s.weights = vec_at(line, val);
  else if (key == "q_hi") s.q_hi = num_at(line, val);
  else if (key == "q_slope") s.q_slope = num_at(line, val);
  else if (key == "a0") s.a0 = num_at(line, val);
  else if (key == "A") s.A = num_at(line, val);
  else if (key == "alpha") s.alpha = num_at(line, val);
  else if (key == "x0") s.x0 = vec_at(line, val);
  else if (key == "directional") s.directional = bool_at(line, val);
  else if (key == "p0") s.p0 = num_at(line, val);
  else if (key == "p_grad") s.p_grad = vec_at(line, val);
  else fail(line, "unknown key '" + key + "' in [" + section + "]");
  p.keys[key] = line;
}

const std::map<std::string, std::set<std::string>>& family_keys() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"power", {"p"}},
      {"double-phase", {"p", "q", "a"}},
      {"directional-double-phase", {"p", "q", "a"}},
      {"indicator", {"r"}},
      {"diag-quadratic", {"weights"}},
      {"min-of", {}},
      {"var-double-phase",
       {"p", "q_hi", "q_slope", "a0", "A", "alpha", "x0", "directional"}},
      {"variable-power", {"p0", "p_grad"}},
  };
  return table;
}

PhiSpec assemble_phi(PhiParse& p, std::map<int, PhiParse>& parts, const std::string& section,
                     int n, int m, bool allow_spatial) {
  PhiSpec& s = p.spec;
  if (s.family.empty())
    throw ConfigError("[" + section + "] is missing the family key");
  auto it = family_keys().find(s.family);
  if (it == family_keys().end())
    fail(p.keys.count("family") ? p.keys["family"] : p.start_line,
         "unknown family '" + s.family + "'");
  for (const auto& [key, line] : p.keys) {
    if (key == "family") continue;
    if (!it->second.count(key))
      fail(line, "key '" + key + "' does not apply to family '" + s.family + "'");
  }
  if (s.family == "min-of") {
    if (parts.empty())
      throw ConfigError("[" + section + "] family min-of requires [" + section +
                        ".1], ... parts");
    int expect = 1;
    for (auto& [idx, child] : parts) {
      if (idx != expect)
        fail(child.start_line, "[" + section + "] parts must be numbered consecutively "
                               "from 1");
      std::map<int, PhiParse> none;
      PhiSpec part = assemble_phi(child, none, section + "." + fmt_int(idx), n, m, false);
      s.parts.push_back(std::move(part));
      ++expect;
    }
  } else if (!parts.empty()) {
    throw ConfigError("[" + section + "." + fmt_int(parts.begin()->first) +
                      "] parts are only allowed for family min-of");
  }
  if (s.spatial() && !allow_spatial)
    throw ConfigError("[" + section + "] parts must be x-independent");
  // dimension checks, reported at the offending key's line
  auto key_line = [&](const char* key) {
    auto at = p.keys.find(key);
    return at != p.keys.end() ? at->second : p.start_line;
  };
  if (s.family == "diag-quadratic" && static_cast<int>(s.weights.size()) != m)
    fail(key_line("weights"), "[" + section + "] weights needs " + fmt_int(m) + " entries");
  if (!s.x0.empty() && static_cast<int>(s.x0.size()) != n)
    fail(key_line("x0"), "[" + section + "] x0 needs " + fmt_int(n) + " entries");
  if (!s.p_grad.empty() && static_cast<int>(s.p_grad.size()) != n)
    fail(key_line("p_grad"), "[" + section + "] p_grad needs " + fmt_int(n) + " entries");
  return std::move(s);
}

Ball ball_at(int line, const Vec& nums, int n) {
  if (static_cast<int>(nums.size()) != n + 1)
    fail(line, "a ball needs " + fmt_int(n) + " center coordinates plus a radius");
  Ball b;
  b.center.assign(nums.begin(), nums.end() - 1);
  b.radius = nums.back();
  if (!(b.radius > 0) || !std::isfinite(b.radius)) fail(line, "ball radius must be positive");
  return b;
}

bool is_known_section(const std::string& s) {
  static const std::set<std::string> named = {"space", "phi",  "psi",    "conditions",
                                             "balls", "probe", "grid",   "field",
                                             "jensen", "norm", "run"};
  return named.count(s) > 0;
}

// number written so it parses back to the same double: report precision when
// exact, full precision otherwise
std::string ser_num(double v) {
  std::string s = fmt_num(v);
  try {
    if (parse_num(s) == v) return s;
  } catch (...) {
  }
  return fmt_full(v);
}

std::string ser_vec(const Vec& v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(ser_num(x));
  return join(parts, " ");
}

std::string ser_bool(bool b) { return b ? "true" : "false"; }

void ser_phi(std::string& out, const PhiSpec& s, const std::string& section, int m) {
  out += "[" + section + "]\n";
  if (section == "phi") out += "m = " + fmt_int(m) + "\n";
  out += "family = " + s.family + "\n";
  if (s.family == "power") out += "p = " + ser_num(s.p) + "\n";
  if (s.family == "double-phase" || s.family == "directional-double-phase") {
    out += "p = " + ser_num(s.p) + "\n";
    out += "q = " + ser_num(s.q) + "\n";
    out += "a = " + ser_num(s.a) + "\n";
  }
  if (s.family == "indicator") out += "r = " + ser_num(s.r) + "\n";
  if (s.family == "diag-quadratic") out += "weights = " + ser_vec(s.weights) + "\n";
  if (s.family == "var-double-phase") {
    out += "p = " + ser_num(s.p) + "\n";
    out += "q_hi = " + ser_num(s.q_hi) + "\n";
    out += "q_slope = " + ser_num(s.q_slope) + "\n";
    out += "a0 = " + ser_num(s.a0) + "\n";
    out += "A = " + ser_num(s.A) + "\n";
    out += "alpha = " + ser_num(s.alpha) + "\n";
    if (!s.x0.empty()) out += "x0 = " + ser_vec(s.x0) + "\n";
    out += "directional = " + ser_bool(s.directional) + "\n";
  }
  if (s.family == "variable-power") {
    out += "p0 = " + ser_num(s.p0) + "\n";
    if (!s.p_grad.empty()) out += "p_grad = " + ser_vec(s.p_grad) + "\n";
  }
  out += "\n";
  for (size_t k = 0; k < s.parts.size(); ++k)
    ser_phi(out, s.parts[k], section + "." + fmt_int(static_cast<long long>(k) + 1), m);
}

Box resolved_box(const AnalysisConfig& cfg) {
  if (!cfg.box.lo.empty()) return cfg.box;
  Box b;
  b.lo.assign(cfg.n, -1.0);
  b.hi.assign(cfg.n, 1.0);
  return b;
}

PhiFunction build_plain_spec(const PhiSpec& s, int m) {
  if (s.family == "power") return PhiFunction::power(m, s.p);
  if (s.family == "double-phase") return PhiFunction::double_phase(m, s.p, s.q, s.a);
  if (s.family == "directional-double-phase")
    return PhiFunction::directional_double_phase(m, s.p, s.q, s.a);
  if (s.family == "indicator") return PhiFunction::linf_indicator(m, s.r);
  if (s.family == "diag-quadratic") return PhiFunction::diag_quadratic(s.weights);
  if (s.family == "min-of") {
    std::vector<PhiFunction> parts;
    for (const PhiSpec& p : s.parts) parts.push_back(build_plain_spec(p, m));
    return PhiFunction::min_of(std::move(parts));
  }
  throw ConfigError("family '" + s.family + "' is not x-independent");
}

SpatialPhiFunction build_spatial_spec(const AnalysisConfig& cfg, const PhiSpec& s) {
  Box box = resolved_box(cfg);
  if (s.family == "var-double-phase") {
    SpatialPhiFunction::DoublePhaseSpec d;
    d.p = s.p;
    d.q_hi = s.q_hi;
    d.q_slope = s.q_slope;
    d.a0 = s.a0;
    d.holder_const = s.A;
    d.holder_alpha = s.alpha;
    d.x0 = s.x0.empty() ? box.center() : s.x0;
    d.directional = s.directional;
    return SpatialPhiFunction::double_phase(std::move(box), cfg.m, std::move(d), cfg.weight);
  }
  if (s.family == "variable-power") {
    Vec grad = s.p_grad.empty() ? zero_vec(cfg.n) : s.p_grad;
    return SpatialPhiFunction::variable_power(std::move(box), cfg.m, s.p0, std::move(grad),
                                              cfg.weight);
  }
  return SpatialPhiFunction::constant(std::move(box), build_plain_spec(s, cfg.m), cfg.weight);
}

}  // namespace

AnalysisConfig parse_config_text(const std::string& text) {
  AnalysisConfig cfg;
  PhiParse phi_p, psi_p;
  std::map<int, PhiParse> phi_parts, psi_parts;
  bool psi_seen = false, box_seen = false;
  std::map<int, std::pair<Vec, int>> ball_entries;  // index -> (numbers, line)
  std::map<int, std::pair<Vec, int>> dir_entries;
  std::optional<std::pair<Vec, int>> field_ball_entry;
  std::string section;
  int line = 0;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string s = trim(raw);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) fail(line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (is_known_section(section)) {
        if (section == "phi" && phi_p.start_line == 0) phi_p.start_line = line;
        if (section == "psi") {
          psi_seen = true;
          if (psi_p.start_line == 0) psi_p.start_line = line;
        }
        continue;
      }
      auto child = [&](const std::string& prefix,
                       std::map<int, PhiParse>& parts) -> bool {
        if (section.rfind(prefix, 0) != 0) return false;
        std::string idx = section.substr(prefix.size());
        for (char c : idx)
          if (!std::isdigit(static_cast<unsigned char>(c))) fail(line, "unknown section [" + section + "]");
        if (idx.empty()) fail(line, "unknown section [" + section + "]");
        int k = int_at(line, idx);
        if (k < 1) fail(line, "part indices start at 1");
        if (!parts.count(k)) parts[k].start_line = line;
        return true;
      };
      if (child("phi.", phi_parts)) continue;
      if (child("psi.", psi_parts)) {
        psi_seen = true;
        continue;
      }
      fail(line, "unknown section [" + section + "]");
    }

    if (section.empty()) fail(line, "key before any [section] header");
    size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (val.empty()) fail(line, "empty value for '" + key + "'");

    if (section == "space") {
      if (key == "n") cfg.n = int_at(line, val);
      else if (key == "box") {
        Vec nums = vec_at(line, val);
        if (nums.size() % 2 != 0) fail(line, "box needs lo hi pairs");
        cfg.box.lo.clear();
        cfg.box.hi.clear();
        for (size_t i = 0; i < nums.size(); i += 2) {
          cfg.box.lo.push_back(nums[i]);
          cfg.box.hi.push_back(nums[i + 1]);
        }
        box_seen = true;
      } else if (key == "weight") cfg.weight = num_at(line, val);
      else fail(line, "unknown key '" + key + "' in [space]");
    } else if (section == "phi") {
      if (key == "m") cfg.m = int_at(line, val);
      else phi_key(phi_p, section, key, val, line);
    } else if (section.rfind("phi.", 0) == 0) {
      phi_key(phi_parts[int_at(line, section.substr(4))], section, key, val, line);
    } else if (section == "psi") {
      phi_key(psi_p, section, key, val, line);
    } else if (section.rfind("psi.", 0) == 0) {
      phi_key(psi_parts[int_at(line, section.substr(4))], section, key, val, line);
    } else if (section == "conditions") {
      if (key == "K") cfg.K = num_at(line, val);
      else if (key == "tol") cfg.tol = num_at(line, val);
      else if (key == "beta_count") cfg.beta_count = int_at(line, val);
      else if (key == "beta_start") cfg.beta_start = num_at(line, val);
      else if (key == "beta_ratio") cfg.beta_ratio = num_at(line, val);
      else if (key == "inc1_beta") cfg.inc1_beta = num_at(line, val);
      else if (key == "env_axis_points") cfg.env_axis_points = int_at(line, val);
      else if (key == "env_radius") cfg.env_radius = num_at(line, val);
      else if (key == "sampler_count") cfg.sampler_count = int_at(line, val);
      else if (key == "record_instances") cfg.record_instances = bool_at(line, val);
      else fail(line, "unknown key '" + key + "' in [conditions]");
    } else if (section == "balls") {
      if (key == "mode") cfg.balls.mode = val;
      else if (key == "j_min") cfg.balls.j_min = int_at(line, val);
      else if (key == "j_max") cfg.balls.j_max = int_at(line, val);
      else if (key == "count") cfg.balls.count = int_at(line, val);
      else if (key == "radius_min") cfg.balls.radius_min = num_at(line, val);
      else if (key == "radius_max") cfg.balls.radius_max = num_at(line, val);
      else if (key.rfind("ball", 0) == 0 && key.size() > 4) {
        int k = int_at(line, key.substr(4));
        ball_entries[k] = {vec_at(line, val), line};
      } else fail(line, "unknown key '" + key + "' in [balls]");
    } else if (section == "probe") {
      if (key == "directions") cfg.probe.directions = int_at(line, val);
      else if (key == "levels") cfg.probe.levels = vec_at(line, val);
      else if (key == "pair_levels") cfg.probe.pair_levels = vec_at(line, val);
      else if (key == "alphas") cfg.probe.alphas = vec_at(line, val);
      else if (key.rfind("dir", 0) == 0 && key.size() > 3) {
        int k = int_at(line, key.substr(3));
        dir_entries[k] = {vec_at(line, val), line};
      } else fail(line, "unknown key '" + key + "' in [probe]");
    } else if (section == "grid") {
      if (key == "axis_points") cfg.grid.axis_points = int_at(line, val);
      else if (key == "radius") cfg.grid.radius = num_at(line, val);
      else fail(line, "unknown key '" + key + "' in [grid]");
    } else if (section == "field") {
      if (key == "kind") cfg.field.kind = val;
      else if (key == "value") cfg.field.value = vec_at(line, val);
      else if (key == "count") cfg.field.count = int_at(line, val);
      else if (key == "scale") cfg.field.scale = num_at(line, val);
      else if (key == "normalize") cfg.field.normalize = bool_at(line, val);
      else if (key == "ball") field_ball_entry = {vec_at(line, val), line};
      else fail(line, "unknown key '" + key + "' in [field]");
    } else if (section == "jensen") {
      if (key == "beta") cfg.jensen_beta = num_at(line, val);
      else if (key == "plus_one") cfg.jensen_plus_one = bool_at(line, val);
      else fail(line, "unknown key '" + key + "' in [jensen]");
    } else if (section == "norm") {
      if (key == "scan") cfg.norm_scan = bool_at(line, val);
      else if (key == "lambda_max") cfg.lambda_max = num_at(line, val);
      else if (key == "lambda_count") cfg.lambda_count = int_at(line, val);
      else fail(line, "unknown key '" + key + "' in [norm]");
    } else if (section == "run") {
      if (key == "seed") cfg.seed = u64_at(line, val);
      else fail(line, "unknown key '" + key + "' in [run]");
    } else {
      fail(line, "unknown section [" + section + "]");
    }
  }

  // ---- global validation -------------------------------------------------
  if (cfg.n < 1 || cfg.n > 4) throw ConfigError("n must lie in [1, 4]");
  if (cfg.m < 1 || cfg.m > 4) throw ConfigError("m must lie in [1, 4]");
  if (box_seen) {
    if (static_cast<int>(cfg.box.lo.size()) != cfg.n)
      throw ConfigError("box needs " + fmt_int(cfg.n) + " lo hi pairs");
    cfg.box.validate();
  }
  if (!(cfg.weight > 0) || !std::isfinite(cfg.weight))
    throw ConfigError("weight must be positive");
  cfg.phi = assemble_phi(phi_p, phi_parts, "phi", cfg.n, cfg.m, true);
  if (psi_seen) cfg.psi = assemble_phi(psi_p, psi_parts, "psi", cfg.n, cfg.m, true);
  if (!(cfg.K > 0) || !std::isfinite(cfg.K)) throw ConfigError("K must be positive");
  if (!(cfg.tol >= 0)) throw ConfigError("tol must be nonnegative");
  if (cfg.beta_count < 1 || cfg.beta_count > 64)
    throw ConfigError("beta_count must lie in [1, 64]");
  if (!(cfg.beta_start > 0) || cfg.beta_start > 1)
    throw ConfigError("beta_start must lie in (0, 1]");
  if (!(cfg.beta_ratio > 0) || !(cfg.beta_ratio < 1))
    throw ConfigError("beta_ratio must lie in (0, 1)");
  if (!(cfg.inc1_beta > 0) || cfg.inc1_beta > 1)
    throw ConfigError("inc1_beta must lie in (0, 1]");
  if (cfg.env_axis_points < 5) throw ConfigError("env_axis_points must be at least 5");
  if (!(cfg.env_radius >= 0)) throw ConfigError("env_radius must be nonnegative");
  if (cfg.sampler_count < 0) throw ConfigError("sampler_count must be nonnegative");

  if (cfg.balls.mode != "dyadic" && cfg.balls.mode != "list" && cfg.balls.mode != "random")
    throw ConfigError("balls mode must be dyadic, list or random");
  if (!ball_entries.empty() && cfg.balls.mode != "list")
    fail(ball_entries.begin()->second.second, "ballN entries require mode = list");
  if (cfg.balls.mode == "list") {
    if (ball_entries.empty()) throw ConfigError("mode = list requires ball1 = ... entries");
    int expect = 1;
    for (const auto& [idx, entry] : ball_entries) {
      if (idx != expect)
        fail(entry.second, "ball entries must be numbered consecutively from 1");
      cfg.balls.list.push_back(ball_at(entry.second, entry.first, cfg.n));
      ++expect;
    }
  }
  if (cfg.balls.mode == "dyadic" &&
      (cfg.balls.j_min < 0 || cfg.balls.j_max < cfg.balls.j_min))
    throw ConfigError("dyadic ball range needs 0 <= j_min <= j_max");
  if (cfg.balls.mode == "random") {
    if (cfg.balls.count < 1) throw ConfigError("random balls need count >= 1");
    if (!(cfg.balls.radius_min > 0) || !(cfg.balls.radius_max >= cfg.balls.radius_min))
      throw ConfigError("random balls need 0 < radius_min <= radius_max");
  }

  if (cfg.probe.directions < 0) throw ConfigError("probe directions must be nonnegative");
  if (cfg.probe.directions > 0 && cfg.m != 2 && dir_entries.empty())
    throw ConfigError("equal-angle direction counts are only defined for m = 2; "
                      "use dir1 = ... entries");
  {
    int expect = 1;
    for (const auto& [idx, entry] : dir_entries) {
      if (idx != expect)
        fail(entry.second, "dir entries must be numbered consecutively from 1");
      if (static_cast<int>(entry.first.size()) != cfg.m)
        fail(entry.second, "direction needs " + fmt_int(cfg.m) + " entries");
      if (!(norm2(entry.first) > 0)) fail(entry.second, "direction must be nonzero");
      cfg.probe.explicit_dirs.push_back(entry.first);
      ++expect;
    }
  }
  for (double l : cfg.probe.levels)
    if (!(l > 0) || !std::isfinite(l)) throw ConfigError("probe levels must be positive");
  for (double l : cfg.probe.pair_levels)
    if (!(l > 0) || !std::isfinite(l))
      throw ConfigError("probe pair_levels must be positive");
  for (double a : cfg.probe.alphas)
    if (!(a > 0) || !(a < 1)) throw ConfigError("probe alphas must lie in (0, 1)");

  if (cfg.grid.axis_points < 3) throw ConfigError("grid axis_points must be at least 3");
  if (!(cfg.grid.radius > 0)) throw ConfigError("grid radius must be positive");

  if (cfg.field.kind != "constant" && cfg.field.kind != "random")
    throw ConfigError("field kind must be constant or random");
  if (!cfg.field.value.empty() && static_cast<int>(cfg.field.value.size()) != cfg.m)
    throw ConfigError("field value needs " + fmt_int(cfg.m) + " entries");
  if (cfg.field.count < 0) throw ConfigError("field count must be nonnegative");
  if (!(cfg.field.scale > 0) || !std::isfinite(cfg.field.scale))
    throw ConfigError("field scale must be positive");
  if (field_ball_entry)
    cfg.field.ball = ball_at(field_ball_entry->second, field_ball_entry->first, cfg.n);

  if (!(cfg.jensen_beta > 0) || cfg.jensen_beta > 1)
    throw ConfigError("jensen beta must lie in (0, 1]");
  if (!(cfg.lambda_max > 0)) throw ConfigError("lambda_max must be positive");
  if (cfg.lambda_count < 2) throw ConfigError("lambda_count must be at least 2");
  return cfg;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const AnalysisConfig& cfg) {
  std::string out;
  out += "[space]\n";
  out += "n = " + fmt_int(cfg.n) + "\n";
  Box box = resolved_box(cfg);
  std::vector<std::string> pairs;
  for (int i = 0; i < cfg.n; ++i)
    pairs.push_back(ser_num(box.lo[i]) + " " + ser_num(box.hi[i]));
  out += "box = " + join(pairs, " ") + "\n";
  out += "weight = " + ser_num(cfg.weight) + "\n\n";

  ser_phi(out, cfg.phi, "phi", cfg.m);
  if (cfg.psi) ser_phi(out, *cfg.psi, "psi", cfg.m);

  out += "[conditions]\n";
  out += "K = " + ser_num(cfg.K) + "\n";
  out += "tol = " + ser_num(cfg.tol) + "\n";
  out += "beta_count = " + fmt_int(cfg.beta_count) + "\n";
  out += "beta_start = " + ser_num(cfg.beta_start) + "\n";
  out += "beta_ratio = " + ser_num(cfg.beta_ratio) + "\n";
  out += "inc1_beta = " + ser_num(cfg.inc1_beta) + "\n";
  out += "env_axis_points = " + fmt_int(cfg.env_axis_points) + "\n";
  out += "env_radius = " + ser_num(cfg.env_radius) + "\n";
  out += "sampler_count = " + fmt_int(cfg.sampler_count) + "\n";
  out += "record_instances = " + ser_bool(cfg.record_instances) + "\n\n";

  out += "[balls]\n";
  out += "mode = " + cfg.balls.mode + "\n";
  if (cfg.balls.mode == "dyadic") {
    out += "j_min = " + fmt_int(cfg.balls.j_min) + "\n";
    out += "j_max = " + fmt_int(cfg.balls.j_max) + "\n";
  }
  if (cfg.balls.mode == "random") {
    out += "count = " + fmt_int(cfg.balls.count) + "\n";
    out += "radius_min = " + ser_num(cfg.balls.radius_min) + "\n";
    out += "radius_max = " + ser_num(cfg.balls.radius_max) + "\n";
  }
  for (size_t k = 0; k < cfg.balls.list.size(); ++k)
    out += "ball" + fmt_int(static_cast<long long>(k) + 1) + " = " +
           ser_vec(cfg.balls.list[k].center) + " " + ser_num(cfg.balls.list[k].radius) + "\n";
  out += "\n";

  out += "[probe]\n";
  out += "directions = " + fmt_int(cfg.probe.directions) + "\n";
  for (size_t k = 0; k < cfg.probe.explicit_dirs.size(); ++k)
    out += "dir" + fmt_int(static_cast<long long>(k) + 1) + " = " +
           ser_vec(cfg.probe.explicit_dirs[k]) + "\n";
  if (!cfg.probe.levels.empty()) out += "levels = " + ser_vec(cfg.probe.levels) + "\n";
  if (!cfg.probe.pair_levels.empty())
    out += "pair_levels = " + ser_vec(cfg.probe.pair_levels) + "\n";
  if (!cfg.probe.alphas.empty()) out += "alphas = " + ser_vec(cfg.probe.alphas) + "\n";
  out += "\n";

  out += "[grid]\n";
  out += "axis_points = " + fmt_int(cfg.grid.axis_points) + "\n";
  out += "radius = " + ser_num(cfg.grid.radius) + "\n\n";

  out += "[field]\n";
  out += "kind = " + cfg.field.kind + "\n";
  if (!cfg.field.value.empty()) out += "value = " + ser_vec(cfg.field.value) + "\n";
  out += "count = " + fmt_int(cfg.field.count) + "\n";
  out += "scale = " + ser_num(cfg.field.scale) + "\n";
  out += "normalize = " + ser_bool(cfg.field.normalize) + "\n";
  if (cfg.field.ball)
    out += "ball = " + ser_vec(cfg.field.ball->center) + " " +
           ser_num(cfg.field.ball->radius) + "\n";
  out += "\n";

  out += "[jensen]\n";
  out += "beta = " + ser_num(cfg.jensen_beta) + "\n";
  out += "plus_one = " + ser_bool(cfg.jensen_plus_one) + "\n\n";

  out += "[norm]\n";
  out += "scan = " + ser_bool(cfg.norm_scan) + "\n";
  out += "lambda_max = " + ser_num(cfg.lambda_max) + "\n";
  out += "lambda_count = " + fmt_int(cfg.lambda_count) + "\n\n";

  out += "[run]\n";
  out += "seed = " + fmt_int(static_cast<long long>(cfg.seed)) + "\n";
  return out;
}

SpatialPhiFunction build_phi(const AnalysisConfig& cfg) {
  return build_spatial_spec(cfg, cfg.phi);
}

SpatialPhiFunction build_psi(const AnalysisConfig& cfg) {
  if (!cfg.psi) return SpatialPhiFunction();
  return build_spatial_spec(cfg, *cfg.psi);
}

PhiFunction build_plain_phi(const AnalysisConfig& cfg) {
  if (cfg.phi.spatial()) {
    SpatialPhiFunction sp = build_phi(cfg);
    return sp.freeze(sp.domain().center());
  }
  return build_plain_spec(cfg.phi, cfg.m);
}

ConditionConfig build_condition_config(const AnalysisConfig& cfg,
                                       const SpatialPhiFunction& phi) {
  ConditionConfig out;
  out.K = cfg.K;
  out.tol = cfg.tol;
  double b = cfg.beta_start;
  for (int k = 0; k < cfg.beta_count; ++k) {
    out.beta_grid.push_back(b);
    b *= cfg.beta_ratio;
  }
  if (!cfg.probe.explicit_dirs.empty()) {
    out.probe.directions = cfg.probe.explicit_dirs;
  } else if (cfg.probe.directions > 0) {
    // equal-angle fan, m = 2 (validated at parse time)
    for (int k = 0; k < cfg.probe.directions; ++k) {
      double t = 2.0 * std::numbers::pi * k / cfg.probe.directions;
      out.probe.directions.push_back({std::cos(t), std::sin(t)});
    }
  }
  out.probe.levels = cfg.probe.levels;
  out.probe.pair_levels = cfg.probe.pair_levels;
  out.probe.alphas = cfg.probe.alphas;
  out.sampler.count = cfg.sampler_count;
  out.env_axis_points = cfg.env_axis_points;
  out.env_radius = cfg.env_radius;
  out.record_instances = cfg.record_instances;
  out.psi = build_psi(cfg);

  if (cfg.balls.mode == "list") {
    out.balls = cfg.balls.list;
  } else if (cfg.balls.mode == "dyadic") {
    out.balls = ConditionConfig::dyadic_balls(phi, cfg.balls.j_min, cfg.balls.j_max);
  } else {
    Rng rng(cfg.seed + 1);
    const Box& box = phi.domain();
    int attempts = 0, cap = 200 * cfg.balls.count;
    while (static_cast<int>(out.balls.size()) < cfg.balls.count && attempts < cap) {
      ++attempts;
      Ball bb;
      for (int i = 0; i < box.dim(); ++i)
        bb.center.push_back(rng.uniform(box.lo[i], box.hi[i]));
      bb.radius = rng.uniform(cfg.balls.radius_min, cfg.balls.radius_max);
      double mu = phi.measure(bb);
      if (mu > 0 && mu <= 1.0) out.balls.push_back(std::move(bb));
    }
    if (static_cast<int>(out.balls.size()) < cfg.balls.count)
      throw ConfigError("could not draw " + fmt_int(cfg.balls.count) +
                        " random balls of measure <= 1; shrink radius_max");
  }
  return out;
}

Ball resolve_field_ball(const AnalysisConfig& cfg, const SpatialPhiFunction& phi,
                        const ConditionConfig& ccfg) {
  if (cfg.field.ball) return *cfg.field.ball;
  if (!ccfg.balls.empty()) return ccfg.balls.front();
  return ConditionConfig::dyadic_balls(phi).front();
}

VectorField build_field(const AnalysisConfig& cfg, const SpatialPhiFunction& phi,
                        const Ball& ball) {
  SamplerSpec spec;
  spec.count = cfg.field.count;
  if (cfg.field.kind == "constant") {
    Vec value = cfg.field.value.empty() ? zero_vec(cfg.m) : cfg.field.value;
    return VectorField::constant_on_ball(phi, ball, value, spec);
  }
  Rng rng(cfg.seed + 2);
  auto draw = [&rng, &cfg](const Vec&) {
    Vec v;
    for (int i = 0; i < cfg.m; ++i) v.push_back(cfg.field.scale * rng.uniform(-1.0, 1.0));
    return v;
  };
  VectorField fld = VectorField::on_ball(phi, ball, draw, spec);
  if (cfg.field.normalize) {
    int it = 0;
    while (modular(phi, fld).value() > 0.9 && it < 200) {
      fld = fld.scaled_by(0.5);
      ++it;
    }
    if (modular(phi, fld).value() > 0.9)
      throw ConfigError("random field could not be normalized below modular 0.9");
  }
  return fld;
}

}  // namespace orlicz
