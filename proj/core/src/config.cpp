#include "kinetic/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "kinetic/errors.hpp"

namespace kinetic {

namespace {

[[noreturn]] void bad_key(const std::string& msg) { fail(errc::validation_error, msg); }

struct Value {
  enum class Kind { number, string, array } kind = Kind::number;
  double num = 0.0;
  std::string str;
  std::vector<Value> items;
  int line = 0;
  int col = 0;
};

struct LineScanner {
  const std::string& text;
  int line;
  int base_col;  // 1-based column of text[0] in the source line
  std::size_t i = 0;

  int col() const { return base_col + static_cast<int>(i); }
  bool done() const { return i >= text.size(); }
  char peek() const { return text[i]; }

  [[noreturn]] void err(const std::string& msg) const {
    throw config_parse_error(line, col(), msg);
  }

  void skip_ws() {
    while (!done() && (text[i] == ' ' || text[i] == '\t')) ++i;
  }

  Value parse_scalar() {
    Value v;
    v.line = line;
    v.col = col();
    if (peek() == '"') {
      ++i;
      const std::size_t start = i;
      while (!done() && text[i] != '"') ++i;
      if (done()) err("unterminated string");
      v.kind = Value::Kind::string;
      v.str = text.substr(start, i - start);
      ++i;
      return v;
    }
    const std::size_t start = i;
    while (!done() && text[i] != ',' && text[i] != ']' && text[i] != ' ' && text[i] != '\t') ++i;
    const std::string tok = text.substr(start, i - start);
    if (tok.empty()) err("expected a value");
    char* end = nullptr;
    v.num = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v.num)) {
      i = start;
      err("malformed number '" + tok + "'");
    }
    v.kind = Value::Kind::number;
    return v;
  }

  Value parse_value() {
    skip_ws();
    if (done()) err("missing value");
    if (peek() != '[') {
      Value v = parse_scalar();
      skip_ws();
      if (!done()) err("unexpected trailing characters");
      return v;
    }
    Value v;
    v.kind = Value::Kind::array;
    v.line = line;
    v.col = col();
    ++i;
    skip_ws();
    if (!done() && peek() == ']') {
      ++i;
    } else {
      while (true) {
        if (done()) err("unterminated array");
        v.items.push_back(parse_scalar());
        skip_ws();
        if (done()) err("unterminated array");
        if (peek() == ',') {
          ++i;
          skip_ws();
          continue;
        }
        if (peek() == ']') {
          ++i;
          break;
        }
        err("expected ',' or ']'");
      }
    }
    skip_ws();
    if (!done()) err("unexpected trailing characters");
    return v;
  }
};

// Strips a trailing comment, honoring quoted strings.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

bool key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

double want_number(const std::string& key, const Value& v) {
  if (v.kind != Value::Kind::number) bad_key(key + " must be a number");
  return v.num;
}

std::string want_string(const std::string& key, const Value& v) {
  if (v.kind != Value::Kind::string) bad_key(key + " must be a quoted string");
  return v.str;
}

int want_int(const std::string& key, const Value& v) {
  const double d = want_number(key, v);
  if (d != std::floor(d) || std::abs(d) > 1e9) bad_key(key + " must be an integer");
  return static_cast<int>(d);
}

// Scalar broadcasts to all axes; arrays must have exactly three entries.
template <typename T, typename Elem>
std::array<T, 3> want_triple(const std::string& key, const Value& v, Elem elem) {
  if (v.kind != Value::Kind::array) {
    const T s = elem(key, v);
    return {s, s, s};
  }
  if (v.items.size() != 3) bad_key(key + " must be a scalar or an array of 3");
  return {elem(key, v.items[0]), elem(key, v.items[1]), elem(key, v.items[2])};
}

WallKind want_kind(const std::string& key, const Value& v) {
  const std::string s = want_string(key, v);
  if (s == "maxwell") return WallKind::maxwell;
  if (s == "specular") return WallKind::specular;
  if (s == "diffuse") return WallKind::diffuse;
  if (s == "inflow") return WallKind::inflow;
  if (s == "absorbing") return WallKind::absorbing;
  bad_key(key + " must be one of maxwell|specular|diffuse|inflow|absorbing");
}

struct WallPatch {
  std::optional<WallKind> kind;
  std::optional<double> alpha;
  std::optional<double> Tw;
};

std::string fmt(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.find('"') != std::string::npos || s.find('\n') != std::string::npos)
    fail(errc::validation_error, "cannot serialize a string containing quotes or newlines");
  return "\"" + s + "\"";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig rc;
  std::set<std::string> seen;
  std::map<std::string, WallPatch> walls;
  bool have_scenario = false, have_outputs = false;

  auto once = [&seen](const std::string& key) {
    if (!seen.insert(key).second) bad_key("duplicate key '" + key + "'");
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string body = strip_comment(raw);
    std::size_t k0 = body.find_first_not_of(" \t\r");
    if (k0 == std::string::npos) continue;

    std::size_t k1 = k0;
    while (k1 < body.size() && key_char(body[k1])) ++k1;
    if (k1 == k0)
      throw config_parse_error(lineno, static_cast<int>(k0) + 1, "expected a key");
    const std::string key = body.substr(k0, k1 - k0);

    std::size_t eq = k1;
    while (eq < body.size() && (body[eq] == ' ' || body[eq] == '\t')) ++eq;
    if (eq >= body.size() || body[eq] != '=')
      throw config_parse_error(lineno, static_cast<int>(eq) + 1, "expected '=' after key");

    const std::string vtext = body.substr(eq + 1);
    LineScanner sc{vtext, lineno, static_cast<int>(eq) + 2};
    const Value v = sc.parse_value();

    once(key);
    auto& ov = rc.overrides;
    if (key == "scenario") {
      rc.scenario = want_string(key, v);
      have_scenario = true;
    } else if (key == "epsilon" || key == "knudsen") {
      if (!seen.insert("epsilon|knudsen").second)
        bad_key("epsilon and knudsen are aliases; specify only one");
      const double e = want_number(key, v);
      if (!(e > 0.0)) bad_key("epsilon must be > 0");
      ov.eps = e;
    } else if (key == "nu") {
      const double nu = want_number(key, v);
      if (!(nu >= -0.5 && nu < 1.0)) bad_key("nu must be in [-0.5, 1)");
      ov.nu = nu;
    } else if (key == "tau_prefactor") {
      const double c = want_number(key, v);
      if (!(c > 0.0)) bad_key("tau_prefactor must be > 0");
      ov.c_tau = c;
    } else if (key == "tau_omega") {
      ov.omega = want_number(key, v);
    } else if (key == "nx" || key == "ny") {
      const int n = want_int(key, v);
      if (n < 4) bad_key(key + " must be at least 4");
      (key == "nx" ? ov.nx : ov.ny) = n;
    } else if (key == "nv") {
      const auto t = want_triple<int>(key, v, want_int);
      for (int n : t)
        if (n < 1) bad_key("nv entries must be >= 1");
      ov.nv = t;
    } else if (key == "vmax") {
      const auto t = want_triple<double>(key, v, want_number);
      for (double x : t)
        if (!(x > 0.0)) bad_key("vmax entries must be > 0");
      ov.vmax = t;
    } else if (key == "dt") {
      const double d = want_number(key, v);
      if (!(d > 0.0)) bad_key("dt must be > 0");
      ov.dt = d;
    } else if (key == "cfl") {
      const double c = want_number(key, v);
      if (!(c > 0.0)) bad_key("cfl must be > 0");
      ov.cfl = c;
    } else if (key == "t_end") {
      const double t = want_number(key, v);
      if (!(t > 0.0)) bad_key("t_end must be > 0");
      ov.t_end = t;
    } else if (key == "outputs") {
      if (v.kind != Value::Kind::array) bad_key("outputs must be an array of strings");
      rc.outputs.clear();
      for (const Value& e : v.items) {
        const std::string s = want_string(key, e);
        if (s != "moments-csv" && s != "field-vtk")
          bad_key("outputs entries must be moments-csv or field-vtk");
        if (std::find(rc.outputs.begin(), rc.outputs.end(), s) != rc.outputs.end())
          bad_key("outputs lists '" + s + "' twice");
        rc.outputs.push_back(s);
      }
      have_outputs = true;
    } else if (key.rfind("wall.", 0) == 0) {
      const std::size_t dot = key.rfind('.');
      const std::string label = key.substr(5, dot - 5);
      const std::string field = key.substr(dot + 1);
      if (label.empty() || dot == 4) bad_key("wall keys must look like wall.<label>.<field>");
      WallPatch& wp = walls[label];
      if (field == "kind") {
        wp.kind = want_kind(key, v);
      } else if (field == "alpha") {
        const double a = want_number(key, v);
        if (!(a >= 0.0 && a <= 1.0)) bad_key(key + " must be in [0, 1]");
        wp.alpha = a;
      } else if (field == "Tw") {
        const double t = want_number(key, v);
        if (!(t > 0.0)) bad_key(key + " must be > 0");
        wp.Tw = t;
      } else {
        bad_key("unknown key '" + key + "'");
      }
    } else {
      bad_key("unknown key '" + key + "'");
    }
  }

  if (!have_scenario) bad_key("scenario is required");
  const auto names = scenario_names();
  if (std::find(names.begin(), names.end(), rc.scenario) == names.end())
    fail(errc::unknown_scenario, "unknown scenario '" + rc.scenario + "'");
  if (rc.overrides.dt && rc.overrides.cfl) bad_key("specify dt or cfl, not both");
  (void)have_outputs;

  for (const auto& [label, wp] : walls) {
    if (!wp.kind) bad_key("wall." + label + ".kind is required when overriding wall '" + label + "'");
    WallSpec spec;
    spec.kind = *wp.kind;
    if (wp.alpha) spec.alpha = *wp.alpha;
    if (wp.Tw) spec.Tw = *wp.Tw;
    rc.overrides.walls[label] = spec;
  }
  return rc;
}

std::string serialize_config(const RunConfig& rc) {
  std::ostringstream out;
  out << "scenario = " << quoted(rc.scenario) << "\n";
  const auto& ov = rc.overrides;
  if (ov.eps) out << "epsilon = " << fmt(*ov.eps) << "\n";
  if (ov.nu) out << "nu = " << fmt(*ov.nu) << "\n";
  if (ov.c_tau) out << "tau_prefactor = " << fmt(*ov.c_tau) << "\n";
  if (ov.omega) out << "tau_omega = " << fmt(*ov.omega) << "\n";
  if (ov.nx) out << "nx = " << *ov.nx << "\n";
  if (ov.ny) out << "ny = " << *ov.ny << "\n";
  if (ov.nv)
    out << "nv = [" << (*ov.nv)[0] << ", " << (*ov.nv)[1] << ", " << (*ov.nv)[2] << "]\n";
  if (ov.vmax)
    out << "vmax = [" << fmt((*ov.vmax)[0]) << ", " << fmt((*ov.vmax)[1]) << ", "
        << fmt((*ov.vmax)[2]) << "]\n";
  if (ov.dt) out << "dt = " << fmt(*ov.dt) << "\n";
  if (ov.cfl) out << "cfl = " << fmt(*ov.cfl) << "\n";
  if (ov.t_end) out << "t_end = " << fmt(*ov.t_end) << "\n";
  for (const auto& [label, spec] : ov.walls) {
    const char* kind = nullptr;
    switch (spec.kind) {
      case WallKind::maxwell: kind = "maxwell"; break;
      case WallKind::specular: kind = "specular"; break;
      case WallKind::diffuse: kind = "diffuse"; break;
      case WallKind::inflow: kind = "inflow"; break;
      case WallKind::absorbing: kind = "absorbing"; break;
    }
    out << "wall." << label << ".kind = " << quoted(kind) << "\n";
    out << "wall." << label << ".alpha = " << fmt(spec.alpha) << "\n";
    out << "wall." << label << ".Tw = " << fmt(spec.Tw) << "\n";
  }
  out << "outputs = [";
  for (std::size_t i = 0; i < rc.outputs.size(); ++i)
    out << (i ? ", " : "") << quoted(rc.outputs[i]);
  out << "]\n";
  return out.str();
}

namespace {
bool eq(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
bool eq(const WallSpec& a, const WallSpec& b) {
  return a.kind == b.kind && a.alpha == b.alpha && a.Tw == b.Tw && a.rho_in == b.rho_in &&
         eq(a.u_in, b.u_in) && a.T_in == b.T_in;
}
}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  const auto& x = a.overrides;
  const auto& y = b.overrides;
  if (x.walls.size() != y.walls.size()) return false;
  for (auto ia = x.walls.begin(), ib = y.walls.begin(); ia != x.walls.end(); ++ia, ++ib)
    if (ia->first != ib->first || !eq(ia->second, ib->second)) return false;
  return a.scenario == b.scenario && a.output_dir == b.output_dir && a.cadence == b.cadence &&
         a.outputs == b.outputs && x.nx == y.nx && x.ny == y.ny && x.nv == y.nv &&
         x.vmax == y.vmax && x.eps == y.eps && x.nu == y.nu && x.c_tau == y.c_tau &&
         x.omega == y.omega && x.t_end == y.t_end && x.dt == y.dt && x.cfl == y.cfl &&
         x.mach_in == y.mach_in && x.ghost_mode == y.ghost_mode &&
         x.profile_path == y.profile_path;
}

}  // namespace kinetic
