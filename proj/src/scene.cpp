#include "isocurve/scene.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "isocurve/util.hpp"

namespace isocurve {

namespace {

const char* kCommands[] = {"surface-report", "curve-sweep",    "classify",
                           "isometry-check", "theorem-verify", "plot-data"};

bool known_command(const std::string& cmd) {
  return std::find_if(std::begin(kCommands), std::end(kCommands),
                      [&](const char* c) { return cmd == c; }) != std::end(kCommands);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// numeric scene fields are constant expressions (so "2*pi" works)
double constant_value(const std::string& text, int line) {
  try {
    return eval_scalar(parse(text, {}), {});
  } catch (const Error& e) {
    throw ParseError("bad numeric value '" + text + "': " + e.what(), line);
  }
}

bool bool_value(const std::string& text, int line) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("expected a boolean, got '" + text + "'", line);
}

struct RawSection {
  std::string kind, name;
  int line = 0;
  std::vector<std::pair<std::string, std::string>> entries;  // ordered
  std::map<std::string, int> entry_lines;

  bool has(const std::string& key) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const auto& kv) { return kv.first == key; });
  }
  std::string get(const std::string& key) const {
    for (const auto& kv : entries)
      if (kv.first == key) return kv.second;
    throw ParseError("section [" + kind + " " + name + "] is missing key '" + key + "'", line);
  }
  std::string get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
  }
  int line_of(const std::string& key) const {
    auto it = entry_lines.find(key);
    return it == entry_lines.end() ? line : it->second;
  }
};

ExpressionAst parse_component(const RawSection& sec, const std::string& key,
                              const std::vector<std::string>& variables) {
  try {
    return parse(sec.get(key), variables);
  } catch (const Error& e) {
    throw ParseError("in [" + sec.kind + " " + sec.name + "] " + key + ": " + e.what(),
                     sec.line_of(key));
  }
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

}  // namespace

SurfaceChartPtr SceneFile::surface(const std::string& name) const {
  auto it = surfaces_.find(name);
  if (it == surfaces_.end()) throw UnresolvedReference(name);
  return it->second;
}

std::shared_ptr<const CurveOnSurface> SceneFile::curve(const std::string& name) const {
  auto it = curves_.find(name);
  if (it == curves_.end()) throw UnresolvedReference(name);
  return it->second;
}

std::shared_ptr<const SurfacePair> SceneFile::pair(const std::string& name) const {
  auto it = pairs_.find(name);
  if (it == pairs_.end()) throw UnresolvedReference(name);
  return it->second;
}

SceneFile parse_scene(const std::string& text, const std::string& label) {
  std::vector<RawSection> sections;
  {
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    RawSection* current = nullptr;
    while (std::getline(is, raw)) {
      ++line_no;
      std::string line = raw;
      if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw ParseError("unterminated section header", line_no);
        const auto inner = trim(line.substr(1, line.size() - 2));
        const auto parts = split_ws(inner);
        if (parts.size() != 2)
          throw ParseError("section header must be '[kind name]'", line_no);
        sections.push_back(RawSection{parts[0], parts[1], line_no, {}, {}});
        current = &sections.back();
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
      if (!current) throw ParseError("entry outside of any section", line_no);
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty()) throw ParseError("expected 'key = value'", line_no);
      if (current->has(key))
        throw ParseError("duplicate key '" + key + "' in section [" + current->kind + " " +
                             current->name + "]",
                         line_no);
      current->entries.emplace_back(key, value);
      current->entry_lines[key] = line_no;
    }
  }

  SceneFile scene;
  scene.label_ = label;
  scene.hash_ = fnv1a_hex(text);

  // surfaces first, then curves and pairs (which reference them), then tasks
  for (const auto& sec : sections) {
    if (sec.kind != "surface") continue;
    if (!valid_name(sec.name)) throw ParseError("invalid surface name '" + sec.name + "'", sec.line);
    if (scene.surfaces_.count(sec.name)) throw DuplicateName(sec.name);
    const auto dom = split_ws(sec.get("domain"));
    if (dom.size() != 4)
      throw ParseError("domain must be 'u_min u_max v_min v_max'", sec.line_of("domain"));
    Domain domain{constant_value(dom[0], sec.line), constant_value(dom[1], sec.line),
                  constant_value(dom[2], sec.line), constant_value(dom[3], sec.line)};
    if (domain.empty()) throw ParseError("domain is empty", sec.line_of("domain"));
    auto chart = std::make_shared<const SurfaceChart>(
        sec.name, parse_component(sec, "x", {"u", "v"}), parse_component(sec, "y", {"u", "v"}),
        parse_component(sec, "z", {"u", "v"}), domain);
    scene.surfaces_.emplace(sec.name, std::move(chart));
    scene.surface_names_.push_back(sec.name);
  }

  for (const auto& sec : sections) {
    if (sec.kind != "curve") continue;
    if (!valid_name(sec.name)) throw ParseError("invalid curve name '" + sec.name + "'", sec.line);
    if (scene.curves_.count(sec.name)) throw DuplicateName(sec.name);
    const std::string host_name = sec.get("host");
    auto host_it = scene.surfaces_.find(host_name);
    if (host_it == scene.surfaces_.end()) throw UnresolvedReference(host_name);

    const std::string param = sec.get_or("param", "s");
    const auto iv = split_ws(sec.get("interval"));
    if (iv.size() != 2) throw ParseError("interval must be 's0 s1'", sec.line_of("interval"));
    Interval interval{constant_value(iv[0], sec.line), constant_value(iv[1], sec.line)};
    if (!(interval.s0 < interval.s1))
      throw ParseError("interval is empty", sec.line_of("interval"));

    Vec3 origin = Vec3::Zero();
    if (sec.has("origin")) {
      const auto ov = split_ws(sec.get("origin"));
      if (ov.size() != 3) throw ParseError("origin must be 'x y z'", sec.line_of("origin"));
      origin = Vec3(constant_value(ov[0], sec.line), constant_value(ov[1], sec.line),
                    constant_value(ov[2], sec.line));
    }
    const bool unit_speed = sec.has("unit_speed") && bool_value(sec.get("unit_speed"), sec.line);
    const bool by_arc_length =
        sec.has("arc_length") && bool_value(sec.get("arc_length"), sec.line);

    try {
      CurveOnSurface built(host_it->second, parse_component(sec, "u", {param}),
                           parse_component(sec, "v", {param}), param, interval,
                           unit_speed && !by_arc_length, origin);
      if (by_arc_length) built = reparameterize_by_arc_length(built);
      scene.curves_.emplace(sec.name, std::make_shared<const CurveOnSurface>(std::move(built)));
      scene.curve_names_.push_back(sec.name);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("in [curve " + sec.name + "]: " + e.what(), sec.line);
    }
  }

  for (const auto& sec : sections) {
    if (sec.kind != "pair") continue;
    if (!valid_name(sec.name)) throw ParseError("invalid pair name '" + sec.name + "'", sec.line);
    if (scene.pairs_.count(sec.name)) throw DuplicateName(sec.name);
    const std::string source = sec.get("source"), target = sec.get("target");
    auto s_it = scene.surfaces_.find(source);
    if (s_it == scene.surfaces_.end()) throw UnresolvedReference(source);
    auto t_it = scene.surfaces_.find(target);
    if (t_it == scene.surfaces_.end()) throw UnresolvedReference(target);
    try {
      scene.pairs_.emplace(sec.name,
                           std::make_shared<const SurfacePair>(s_it->second, t_it->second));
    } catch (const Error& e) {
      throw ParseError("in [pair " + sec.name + "]: " + e.what(), sec.line);
    }
    scene.pair_names_.push_back(sec.name);
  }

  for (const auto& sec : sections) {
    if (sec.kind == "surface" || sec.kind == "curve" || sec.kind == "pair") continue;
    if (sec.kind != "task")
      throw ParseError("unknown section kind '" + sec.kind + "'", sec.line);
    if (std::any_of(scene.tasks_.begin(), scene.tasks_.end(),
                    [&](const SceneTask& t) { return t.name == sec.name; }))
      throw DuplicateName(sec.name);

    SceneTask task;
    task.name = sec.name;
    task.line = sec.line;
    task.command = sec.get("command");
    if (!known_command(task.command))
      throw ParseError("unknown command '" + task.command + "'", sec.line_of("command"));
    for (const auto& [key, value] : sec.entries) {
      if (key == "command") continue;
      task.params[key] = value;
    }
    // resolve references now so a loaded scene cannot dangle
    if (auto it = task.params.find("surface"); it != task.params.end()) scene.surface(it->second);
    if (auto it = task.params.find("curve"); it != task.params.end()) scene.curve(it->second);
    if (auto it = task.params.find("pair"); it != task.params.end()) scene.pair(it->second);
    scene.tasks_.push_back(std::move(task));
  }

  return scene;
}

SceneFile load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read scene file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string base = path;
  if (auto slash = base.find_last_of("/\\"); slash != std::string::npos)
    base = base.substr(slash + 1);
  return parse_scene(buf.str(), base);
}

}  // namespace isocurve
