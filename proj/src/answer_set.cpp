#include "entqa/answer_set.hpp"

#include <algorithm>

#include "entqa/normalize.hpp"

namespace entqa {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::original: return "original";
    case Provenance::llm_expanded: return "llm-expanded";
    case Provenance::rule_expanded: return "rule-expanded";
  }
  return "original";
}

std::optional<Provenance> parse_provenance(std::string_view s) noexcept {
  if (s == "original") return Provenance::original;
  if (s == "llm-expanded") return Provenance::llm_expanded;
  if (s == "rule-expanded") return Provenance::rule_expanded;
  return std::nullopt;
}

AnswerSet::AnswerSet(const std::vector<std::string>& texts, Provenance provenance) {
  for (const auto& t : texts) add(t, provenance);
}

bool AnswerSet::add(std::string_view text, Provenance provenance) {
  std::string key = normalize(text, NormalizationMode::light);
  if (key.empty()) return false;
  if (std::find(keys_.begin(), keys_.end(), key) != keys_.end()) return false;
  keys_.push_back(std::move(key));
  entries_.push_back({std::string(text), provenance});
  return true;
}

bool AnswerSet::contains(std::string_view text) const {
  std::string key = normalize(text, NormalizationMode::light);
  return std::find(keys_.begin(), keys_.end(), key) != keys_.end();
}

void AnswerSet::merge(const AnswerSet& other) {
  for (const auto& e : other.entries_) add(e.text, e.provenance);
}

std::vector<std::string> AnswerSet::texts() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.text);
  return out;
}

}  // namespace entqa
