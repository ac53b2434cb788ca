#include "entqa/kv_config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "entqa/error.hpp"

namespace entqa {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Drops a trailing "# comment" that is not inside a quoted string.
std::string_view strip_comment(std::string_view s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == '\\' && quote == '"') ++i;
      else if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

bool bare_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> KvConfig::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KvConfig::get_number(std::string_view key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  double out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) return std::nullopt;
  return out;
}

std::map<std::string, std::map<std::string, std::string>> KvConfig::sections() const {
  std::map<std::string, std::map<std::string, std::string>> out;
  for (const auto& [k, v] : values_) {
    auto dot = k.rfind('.');
    if (dot == std::string::npos) out[""][k] = v;
    else out[k.substr(0, dot)][k.substr(dot + 1)] = v;
  }
  return out;
}

KvConfig parse_kv_config(std::string_view text, std::string_view source_name) {
  KvConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw DataError("ConfigSyntax", std::string(source_name) + ":" + std::to_string(line_no) + ": " + why);
  };
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      std::string_view name = trim(line.substr(1, line.size() - 2));
      if (name.size() >= 2 && name.front() == '"' && name.back() == '"') name = name.substr(1, name.size() - 2);
      if (name.empty()) fail("empty section name");
      section = std::string(name);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (!bare_key(key)) fail("invalid key '" + std::string(key) + "'");

    std::string parsed;
    if (!value.empty() && (value.front() == '"' || value.front() == '\'')) {
      const char q = value.front();
      if (value.size() < 2 || value.back() != q) fail("unterminated string");
      std::string_view body = value.substr(1, value.size() - 2);
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (q == '"' && body[i] == '\\' && i + 1 < body.size()) {
          const char e = body[++i];
          parsed.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
        } else {
          parsed.push_back(body[i]);
        }
      }
    } else {
      if (value.empty()) fail("missing value for '" + std::string(key) + "'");
      parsed = std::string(value);
    }
    cfg.set(section.empty() ? std::string(key) : section + "." + std::string(key), std::move(parsed));
  }
  return cfg;
}

KvConfig load_kv_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("IoError", "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_kv_config(ss.str(), path.string());
}

}  // namespace entqa
