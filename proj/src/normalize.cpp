#include "entqa/normalize.hpp"

#include <cctype>

namespace entqa {
namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// Bytes >= 0x80 belong to UTF-8 sequences and are treated as letters.
bool is_word_char(unsigned char c) { return c >= 0x80 || std::isalnum(c) != 0; }

bool is_article(std::string_view w) { return w == "a" || w == "an" || w == "the"; }

}  // namespace

std::string normalize(std::string_view text, NormalizationMode mode) {
  std::string lowered;
  lowered.reserve(text.size());
  for (unsigned char c : text) {
    if (mode == NormalizationMode::squad && c < 0x80 && std::ispunct(c)) continue;
    lowered.push_back(static_cast<char>(c < 0x80 ? std::tolower(c) : c));
  }

  std::string out;
  out.reserve(lowered.size());
  std::size_t i = 0;
  while (i < lowered.size()) {
    while (i < lowered.size() && is_space(static_cast<unsigned char>(lowered[i]))) ++i;
    std::size_t start = i;
    while (i < lowered.size() && !is_space(static_cast<unsigned char>(lowered[i]))) ++i;
    if (start == i) break;
    std::string_view word(lowered.data() + start, i - start);
    if (mode == NormalizationMode::squad && is_article(word)) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(word);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text, NormalizationMode mode) {
  std::vector<std::string> tokens;
  std::string norm = normalize(text, mode);
  std::size_t start = 0;
  while (start < norm.size()) {
    std::size_t end = norm.find(' ', start);
    if (end == std::string::npos) end = norm.size();
    if (end > start) tokens.emplace_back(norm.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

bool contains_normalized(std::string_view haystack, std::string_view needle, Containment containment) {
  if (needle.empty()) return false;
  if (containment == Containment::substring) return haystack.find(needle) != std::string_view::npos;

  const bool word_start = is_word_char(static_cast<unsigned char>(needle.front()));
  const bool word_end = is_word_char(static_cast<unsigned char>(needle.back()));
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    std::size_t end = pos + needle.size();
    bool left_ok = pos == 0 || !word_start || !is_word_char(static_cast<unsigned char>(haystack[pos - 1]));
    bool right_ok = end == haystack.size() || !word_end || !is_word_char(static_cast<unsigned char>(haystack[end]));
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::string_view to_string(NormalizationMode m) noexcept {
  return m == NormalizationMode::light ? "light" : "squad";
}

std::string_view to_string(Containment c) noexcept {
  return c == Containment::token_boundary ? "token" : "substring";
}

std::optional<NormalizationMode> parse_normalization_mode(std::string_view s) noexcept {
  if (s == "light") return NormalizationMode::light;
  if (s == "squad") return NormalizationMode::squad;
  return std::nullopt;
}

std::optional<Containment> parse_containment(std::string_view s) noexcept {
  if (s == "token" || s == "token_boundary") return Containment::token_boundary;
  if (s == "substring") return Containment::substring;
  return std::nullopt;
}

}  // namespace entqa
