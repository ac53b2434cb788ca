#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entqa {

enum class Provenance { original, llm_expanded, rule_expanded };

std::string_view to_string(Provenance p) noexcept;
std::optional<Provenance> parse_provenance(std::string_view s) noexcept;

struct AnswerEntry {
  std::string text;
  Provenance provenance = Provenance::original;

  friend bool operator==(const AnswerEntry&, const AnswerEntry&) = default;
};

/// Ordered gold answers, deduplicated under light normalization. Entries whose
/// light-normalized form is empty are rejected; the first spelling wins.
class AnswerSet {
 public:
  AnswerSet() = default;
  explicit AnswerSet(const std::vector<std::string>& texts, Provenance provenance = Provenance::original);

  /// Returns true when the entry was new.
  bool add(std::string_view text, Provenance provenance);
  bool contains(std::string_view text) const;

  /// Appends every entry of `other` that is not yet present.
  void merge(const AnswerSet& other);

  const std::vector<AnswerEntry>& entries() const noexcept { return entries_; }
  std::vector<std::string> texts() const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const AnswerEntry& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;

 private:
  std::vector<AnswerEntry> entries_;
  std::vector<std::string> keys_;
};

}  // namespace entqa
