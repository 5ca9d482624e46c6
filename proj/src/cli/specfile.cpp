#include "warpsgk/cli/specfile.hpp"

#include "warpsgk/symexpr/parse.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace warpsgk::cli {

using geometry::Array;
using geometry::Expr;

SpecError::SpecError(const std::string& path, std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error(path + (line ? ":" + std::to_string(line) : "") +
                         (line && column ? ":" + std::to_string(column) : "") + ": " + msg),
      line_(line),
      column_(column) {}

const MetricField& SpecFile::metric_field() const {
  if (!metric) throw std::logic_error(path + ": no metric");
  return *metric;
}

namespace {

struct Entry {
  std::string key, value;
  std::size_t line = 0, key_col = 0, value_col = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::vector<Entry> entries;
  std::vector<std::tuple<std::string, std::size_t, std::size_t>> words;  // [chart]: name, line, column
};

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(path, 0, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, Section> split_sections(std::string_view text, const std::string& path) {
  static const std::vector<std::string> known = {"chart", "metric", "warped", "forms", "eta"};
  std::map<std::string, Section> out;
  Section* cur = nullptr;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line = raw.substr(0, raw.find('#'));
    std::size_t lead = 0;
    const std::string t = trim(line, &lead);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw SpecError(path, lineno, lead + 1, "unterminated section header");
      const std::string name = trim(t.substr(1, t.size() - 2));
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw SpecError(path, lineno, lead + 2, "unknown section [" + name + "]");
      if (out.count(name)) throw SpecError(path, lineno, lead + 1, "section [" + name + "] appears twice");
      cur = &out[name];
      cur->name = name;
      cur->line = lineno;
      continue;
    }
    if (!cur) throw SpecError(path, lineno, lead + 1, "text before the first section");
    if (cur->name == "chart") {
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',')) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',') ++i;
        if (i > start) cur->words.emplace_back(line.substr(start, i - start), lineno, start + 1);
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw SpecError(path, lineno, lead + 1, "expected 'name = value'");
    Entry e;
    std::size_t klead = 0, vlead = 0;
    e.key = trim(line.substr(0, eq), &klead);
    e.value = trim(line.substr(eq + 1), &vlead);
    e.line = lineno;
    e.key_col = klead + 1;
    e.value_col = eq + 1 + vlead + 1;
    if (e.key.empty()) throw SpecError(path, lineno, lead + 1, "missing name before '='");
    if (e.value.empty()) throw SpecError(path, lineno, eq + 1, "missing value after '='");
    cur->entries.push_back(std::move(e));
  }
  return out;
}

Expr parse_value(const Entry& e, const Chart& chart, const std::string& path) {
  try {
    return symexpr::parse_expr(e.value, chart);
  } catch (const symexpr::ParseError& err) {
    std::string msg = err.what();
    msg = msg.substr(0, msg.rfind(" at column"));
    throw SpecError(path, e.line, e.value_col + err.column() - 1, msg);
  } catch (const symexpr::UnknownSymbol& err) {
    throw SpecError(path, e.line, e.value_col, err.what());
  } catch (const std::domain_error& err) {
    throw SpecError(path, e.line, e.value_col, err.what());
  }
}

/// Resolves one index token: a 1-based number or a coordinate name.
std::optional<std::size_t> index_token(const std::string& tok, const Chart& chart) {
  if (tok.empty()) return std::nullopt;
  if (std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const std::size_t k = std::stoul(tok);
    if (k == 0 || k > chart.dim()) return std::nullopt;
    return k - 1;
  }
  return chart.index_of(tok);
}

/// Parses the subscript part of names like g12, g_1_2, g_x1_x2, Pi_3.
std::vector<std::size_t> subscripts(const Entry& e, std::size_t prefix, std::size_t count, const Chart& chart,
                                    const std::string& path) {
  const std::string rest = e.key.substr(prefix);
  std::vector<std::string> toks;
  if (!rest.empty() && rest.front() == '_') {
    std::string cur;
    for (std::size_t i = 1; i <= rest.size(); ++i) {
      if (i == rest.size() || rest[i] == '_') {
        toks.push_back(cur);
        cur.clear();
      } else {
        cur += rest[i];
      }
    }
  } else if (rest.size() == count && std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(c); })) {
    for (char c : rest) toks.emplace_back(1, c);
  } else if (count == 1 && !rest.empty()) {
    toks.push_back(rest);
  }
  if (toks.size() != count) throw SpecError(path, e.line, e.key_col, "cannot read the indices of '" + e.key + "'");
  std::vector<std::size_t> out;
  for (const auto& t : toks) {
    const auto k = index_token(t, chart);
    if (!k) throw SpecError(path, e.line, e.key_col, "index '" + t + "' is not a coordinate of the chart");
    out.push_back(*k);
  }
  return out;
}

Chart read_chart(const Section& s, const std::string& path) {
  if (s.words.empty()) throw SpecError(path, s.line, 0, "no coordinates in [chart]");
  std::vector<std::string> names;
  for (const auto& [w, line, col] : s.words) {
    if (!std::isalpha(static_cast<unsigned char>(w[0])) ||
        !std::all_of(w.begin(), w.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
      throw SpecError(path, line, col, "invalid coordinate name '" + w + "'");
    if (std::find(names.begin(), names.end(), w) != names.end())
      throw SpecError(path, line, col, "coordinate '" + w + "' listed twice");
    names.push_back(w);
  }
  return Chart(names);
}

MetricField read_metric(const Section& s, const Chart& chart, const std::string& path) {
  if (s.entries.empty()) throw SpecError(path, s.line, 0, "no components in [metric]");
  const std::size_t n = chart.dim();
  Array<Expr> g(n, 2, Expr(0));
  std::vector<const Entry*> src(n * n, nullptr);
  for (const Entry& e : s.entries) {
    if (e.key.empty() || e.key[0] != 'g')
      throw SpecError(path, e.line, e.key_col, "metric components are named g_i_j, got '" + e.key + "'");
    const auto ij = subscripts(e, 1, 2, chart, path);
    const std::size_t i = ij[0], j = ij[1];
    if (src[i * n + j]) throw SpecError(path, e.line, e.key_col, "component '" + e.key + "' assigned twice");
    const Expr v = parse_value(e, chart, path);
    if (const Entry* other = src[j * n + i]; other && i != j) {
      if (!(symexpr::canonicalize(g(j, i) - v).is_zero_constant()))
        throw SpecError(path, e.line, e.key_col,
                        "symmetry conflict: '" + e.key + "' differs from '" + other->key + "' on line " +
                            std::to_string(other->line));
    }
    src[i * n + j] = &e;
    g(i, j) = v;
    g(j, i) = v;
  }
  try {
    return MetricField(chart, g);
  } catch (const std::exception& err) {
    throw SpecError(path, s.line, 0, err.what());
  }
}

theorems::FormSet read_forms(const Section& s, const Chart& chart, const std::string& path) {
  theorems::FormSet f{OneFormField(chart), OneFormField(chart), OneFormField(chart), OneFormField(chart)};
  const std::vector<std::pair<std::string, OneFormField*>> named = {
      {"Theta", &f.Theta}, {"Phi", &f.Phi}, {"Psi", &f.Psi}, {"Pi", &f.Pi}};
  std::map<std::string, std::size_t> seen;
  for (const Entry& e : s.entries) {
    OneFormField* target = nullptr;
    std::size_t prefix = 0;
    for (const auto& [name, w] : named)
      if (e.key.rfind(name + "_", 0) == 0) {
        target = w;
        prefix = name.size();
        break;
      }
    if (!target)
      throw SpecError(path, e.line, e.key_col, "form components are Pi_i, Phi_i, Psi_i or Theta_i, got '" + e.key + "'");
    const std::size_t m = subscripts(e, prefix, 1, chart, path)[0];
    const std::string id = e.key.substr(0, prefix) + "#" + std::to_string(m);
    if (seen.count(id)) throw SpecError(path, e.line, e.key_col, "component '" + e.key + "' assigned twice");
    seen[id] = e.line;
    (*target)[m] = parse_value(e, chart, path);
  }
  return f;
}

OneFormField read_eta(const Section& s, const Chart& chart, const std::string& path) {
  OneFormField eta(chart);
  for (const Entry& e : s.entries) {
    if (e.key.rfind("eta_", 0) != 0)
      throw SpecError(path, e.line, e.key_col, "eta components are eta_i, got '" + e.key + "'");
    eta[subscripts(e, 3, 1, chart, path)[0]] = parse_value(e, chart, path);
  }
  return eta;
}

std::string resolve(const std::string& directory, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? file : (std::filesystem::path(directory) / p).string();
}

}  // namespace

SpecFile parse_spec_text(std::string_view text, const std::string& path, const std::string& directory) {
  const auto sections = split_sections(text, path);
  SpecFile out;
  out.path = path;
  const bool has_chart = sections.count("chart"), has_metric = sections.count("metric"),
             has_warped = sections.count("warped");
  if (has_warped && (has_chart || has_metric))
    throw SpecError(path, sections.at("warped").line, 0, "[warped] cannot be combined with [chart] or [metric]");
  if (has_warped) {
    const Section& w = sections.at("warped");
    std::map<std::string, const Entry*> kv;
    for (const Entry& e : w.entries) {
      if (e.key != "base" && e.key != "fiber" && e.key != "f" && e.key != "convention")
        throw SpecError(path, e.line, e.key_col, "unknown key '" + e.key + "' in [warped]");
      if (kv.count(e.key)) throw SpecError(path, e.line, e.key_col, "key '" + e.key + "' given twice");
      kv[e.key] = &e;
    }
    for (const char* need : {"base", "fiber", "f"})
      if (!kv.count(need)) throw SpecError(path, w.line, 0, std::string("[warped] needs '") + need + "'");
    if (kv.count("convention") && kv["convention"]->value != "unsquared") {
      const Entry& e = *kv["convention"];
      throw SpecError(path, e.line, e.value_col,
                      "only the unsquared convention g = ḡ ⊕ f g̃ is supported; for g = ḡ ⊕ h² g̃ write f = h^2");
    }
    const SpecFile base = parse_spec(resolve(directory, kv["base"]->value));
    const SpecFile fiber = parse_spec(resolve(directory, kv["fiber"]->value));
    if (!base.metric || base.warped) throw SpecError(path, kv["base"]->line, kv["base"]->value_col, "base must be a plain metric");
    if (!fiber.metric || fiber.warped)
      throw SpecError(path, kv["fiber"]->line, kv["fiber"]->value_col, "fiber must be a plain metric");
    const Expr f = parse_value(*kv["f"], base.metric->chart(), path);
    warped::WarpedSpec spec{*base.metric, *fiber.metric, f};
    try {
      warped::validate(spec);
    } catch (const std::exception& err) {
      throw SpecError(path, w.line, 0, err.what());
    }
    out.warped = spec;
    out.metric = warped::build_warped(spec);
  } else {
    if (!has_chart) throw SpecError(path, 1, 0, "missing [chart] section");
    if (!has_metric) throw SpecError(path, 1, 0, "no components: missing [metric] section");
    const Chart chart = read_chart(sections.at("chart"), path);
    out.metric = read_metric(sections.at("metric"), chart, path);
  }
  const Chart& chart = out.metric->chart();
  if (sections.count("forms")) out.forms = read_forms(sections.at("forms"), chart, path);
  if (sections.count("eta")) out.eta = read_eta(sections.at("eta"), chart, path);
  return out;
}

SpecFile parse_spec(const std::string& path) {
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_spec_text(read_file(path), path, dir.empty() ? "." : dir);
}

theorems::FormSet parse_forms(const std::string& path, const Chart& chart) {
  const auto sections = split_sections(read_file(path), path);
  if (!sections.count("forms")) throw SpecError(path, 1, 0, "missing [forms] section");
  for (const auto& [name, s] : sections)
    if (name != "forms" && name != "eta") throw SpecError(path, s.line, 0, "unexpected section [" + name + "]");
  return read_forms(sections.at("forms"), chart, path);
}

OneFormField parse_eta(const std::string& path, const Chart& chart) {
  const auto sections = split_sections(read_file(path), path);
  if (!sections.count("eta")) throw SpecError(path, 1, 0, "missing [eta] section");
  return read_eta(sections.at("eta"), chart, path);
}

}  // namespace warpsgk::cli
