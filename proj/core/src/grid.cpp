#include <map>
#include <sstream>

#include "ff/bench.hpp"

namespace ff {

namespace {

// Grid files use a small TOML subset: comments, one [defaults] table, any
// number of [[cell]] tables, and key = value lines where a value is an
// integer, a quoted string, a boolean, or a flat array of those.

struct TomlValue {
  enum class Kind { Int, Str, Bool } kind = Kind::Int;
  long long i = 0;
  std::string s;
  bool b = false;
};

using TomlTable = std::map<std::string, std::vector<TomlValue>>;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

TomlValue parse_scalar(const std::string& text, int lineno) {
  TomlValue v;
  if (text.empty()) throw Error("grid: empty value on line " + std::to_string(lineno));
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"')
      throw Error("grid: unterminated string on line " + std::to_string(lineno));
    v.kind = TomlValue::Kind::Str;
    v.s = text.substr(1, text.size() - 2);
    return v;
  }
  if (text == "true" || text == "false") {
    v.kind = TomlValue::Kind::Bool;
    v.b = text == "true";
    return v;
  }
  try {
    std::size_t used = 0;
    v.i = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw Error("grid: bad value '" + text + "' on line " + std::to_string(lineno));
  }
  return v;
}

std::vector<TomlValue> parse_value(const std::string& text, int lineno) {
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']')
      throw Error("grid: unterminated array on line " + std::to_string(lineno));
    std::vector<TomlValue> out;
    std::string inner = text.substr(1, text.size() - 2);
    std::string item;
    bool in_str = false;
    for (char c : inner) {
      if (c == '"') in_str = !in_str;
      if (c == ',' && !in_str) {
        std::string t = trim(item);
        if (!t.empty()) out.push_back(parse_scalar(t, lineno));
        item.clear();
      } else {
        item.push_back(c);
      }
    }
    std::string t = trim(item);
    if (!t.empty()) out.push_back(parse_scalar(t, lineno));
    if (out.empty()) throw Error("grid: empty array on line " + std::to_string(lineno));
    return out;
  }
  return {parse_scalar(text, lineno)};
}

long long want_int(const TomlTable& t, const std::string& key, long long fallback) {
  auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (it->second.size() != 1 || it->second[0].kind != TomlValue::Kind::Int)
    throw Error("grid: '" + key + "' must be a single integer");
  return it->second[0].i;
}

std::string want_str(const TomlTable& t, const std::string& key,
                     const std::string& fallback) {
  auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (it->second.size() != 1 || it->second[0].kind != TomlValue::Kind::Str)
    throw Error("grid: '" + key + "' must be a single string");
  return it->second[0].s;
}

}  // namespace

std::vector<GridCell> load_grid(const std::string& toml_text) {
  TomlTable defaults;
  std::vector<TomlTable> cells;
  TomlTable* current = nullptr;

  std::istringstream is(toml_text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line == "[defaults]") {
      current = &defaults;
      continue;
    }
    if (line == "[[cell]]") {
      cells.emplace_back();
      current = &cells.back();
      continue;
    }
    if (line.front() == '[')
      throw Error("grid: unknown table '" + line + "' on line " + std::to_string(lineno));
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("grid: expected 'key = value' on line " + std::to_string(lineno));
    if (!current)
      throw Error("grid: entry outside a table on line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    (*current)[key] = parse_value(trim(line.substr(eq + 1)), lineno);
  }

  std::vector<GridCell> out;
  for (const TomlTable& cell : cells) {
    auto merged = defaults;
    for (const auto& [k, v] : cell) merged[k] = v;

    if (!merged.count("core")) throw Error("grid: cell is missing 'core'");
    Core core = parse_core(want_str(merged, "core", ""));
    Arch arch = parse_arch(want_str(merged, "arch", "tso"));
    int unwind = static_cast<int>(want_int(merged, "unwind", 2));

    std::vector<int> ns;
    if (auto it = merged.find("n"); it != merged.end())
      for (const TomlValue& v : it->second) {
        if (v.kind != TomlValue::Kind::Int) throw Error("grid: 'n' entries must be integers");
        ns.push_back(static_cast<int>(v.i));
      }
    else
      ns.push_back(0);

    std::vector<Algo> algos;
    if (auto it = merged.find("algo"); it != merged.end())
      for (const TomlValue& v : it->second) {
        if (v.kind != TomlValue::Kind::Str) throw Error("grid: 'algo' entries must be strings");
        algos.push_back(parse_algo(v.s));
      }
    else
      algos.push_back(Algo::FI);

    std::vector<std::uint32_t> k1s;
    if (auto it = merged.find("k1"); it != merged.end())
      for (const TomlValue& v : it->second) {
        if (v.kind != TomlValue::Kind::Int || v.i < 1)
          throw Error("grid: 'k1' entries must be positive integers");
        k1s.push_back(static_cast<std::uint32_t>(v.i));
      }
    else
      k1s.push_back(1);

    std::optional<std::uint32_t> k2;
    if (auto it = merged.find("k2"); it != merged.end()) {
      if (it->second.size() == 1 && it->second[0].kind == TomlValue::Kind::Str &&
          it->second[0].s == "auto")
        k2 = std::nullopt;
      else if (it->second.size() == 1 && it->second[0].kind == TomlValue::Kind::Int)
        k2 = static_cast<std::uint32_t>(it->second[0].i);
      else
        throw Error("grid: 'k2' must be an integer or \"auto\"");
    }

    std::optional<MhsMode> mhs;
    if (merged.count("mhs")) {
      std::string m = want_str(merged, "mhs", "");
      if (m == "minimum")
        mhs = MhsMode::Minimum;
      else if (m == "minimal")
        mhs = MhsMode::Minimal;
      else
        throw Error("grid: 'mhs' must be \"minimum\" or \"minimal\"");
    }

    for (int n : ns)
      for (Algo algo : algos)
        for (std::uint32_t k1 : k1s) {
          GridCell gc;
          gc.spec = {core, n, arch};
          gc.benchmark = std::string(to_string(core)) + "-n" + std::to_string(n);
          gc.cfg.algo = algo;
          gc.cfg.arch = arch;
          gc.cfg.k1 = k1;
          gc.cfg.k2 = k2;
          gc.cfg.mhs = mhs;
          gc.unwind = unwind;
          out.push_back(std::move(gc));
        }
  }
  return out;
}

}  // namespace ff
