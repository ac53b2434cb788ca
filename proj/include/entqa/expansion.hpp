#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entqa/answer_set.hpp"
#include "entqa/entity_type.hpp"
#include "entqa/few_shot_banks.hpp"
#include "entqa/llm_client.hpp"
#include "entqa/surface_forms.hpp"
#include "entqa/typing.hpp"

namespace entqa {

enum class MethodKind { inst_zero, inst_random, inst_entity, rules };

struct ExpansionMethod {
  MethodKind kind = MethodKind::inst_entity;
  std::uint64_t seed = 0;  ///< only meaningful for inst_random

  /// "inst_zero", "inst_random:7", "inst_entity", "rules".
  std::string to_string() const;
  bool uses_llm() const noexcept { return kind != MethodKind::rules; }
  friend bool operator==(const ExpansionMethod&, const ExpansionMethod&) = default;
};

/// Accepts the to_string forms plus dashes ("inst-entity"); an inst_random
/// without ":seed" takes `default_seed`. Throws UsageError UnknownMethod.
ExpansionMethod parse_method(std::string_view text, std::uint64_t default_seed = 0);

inline constexpr std::string_view kExpansionInstruction =
    "You are a given a question and a set of gold-standard reference answers (split with /) written by experts. "
    "Your task is to provide other forms of gold reference answers that can also be correct for the given "
    "question. Split your answers with /.";

inline constexpr std::string_view kDefaultExpansionModel = "gpt-3.5-turbo-instruct";

/// Entries longer than this many bytes are discarded as runaway output.
inline constexpr std::size_t kMaxExpandedEntryLength = 120;

/// Exemplars a prompt embeds: none, 8 seeded draws over the whole bank, or
/// the 8 of bank[t] in bank order. Throws UsageError UnsupportedMethod for
/// rules and DataError MissingBank when the group is empty.
std::vector<const Exemplar*> select_exemplars(const ExpansionMethod& method, EntityType t, const FewShotBank& bank);

/// Joins with "/" after escaping any literal "/" as "\/".
std::string join_answers(std::span<const std::string> answers);

std::string build_prompt(const ExpansionMethod& method, EntityType t, std::string_view question,
                         const AnswerSet& original, const FewShotBank& bank);

struct ParsedExpansion {
  std::vector<std::string> answers;
  bool salvaged = false;      ///< no "/" anywhere; lines were used instead
  std::size_t dropped_long = 0;
};

/// Splits a completion on "/", trims, drops empties and duplicates, and
/// removes entries that merely echo `original`.
ParsedExpansion parse_expansion_detailed(std::string_view response, std::span<const std::string> original = {});
std::vector<std::string> parse_expansion(std::string_view response, std::span<const std::string> original = {});

struct ExpandedAnswerSet {
  std::string question_id;
  AnswerSet original;
  AnswerSet expanded;  ///< original first, then additions
  ExpansionMethod method;
  EntityType entity_type = EntityType::NA;
  std::string prompt_hash;  ///< empty for rules
  std::string created_at;
  std::vector<std::string> flags;
};

std::string to_jsonl_line(const ExpandedAnswerSet& s);
/// Throws DataError MalformedLine.
ExpandedAnswerSet expanded_from_jsonl_line(std::string_view line);
void write_expanded_sets(const std::filesystem::path& path, std::span<const ExpandedAnswerSet> sets);
std::vector<ExpandedAnswerSet> load_expanded_sets(const std::filesystem::path& path);

struct ExpansionOptions {
  DatasetId bank = DatasetId::nq;
  std::string model_name = std::string(kDefaultExpansionModel);
  std::size_t rule_cap = kDefaultExpansionCap;
  /// Worker threads for LLM methods; 0 uses the client's in-flight limit.
  std::size_t workers = 0;
};

struct ExpansionFailure {
  std::string question_id;
  std::string kind;
  std::string message;
  ErrorCategory category = ErrorCategory::network;
};

struct ExpansionResult {
  std::vector<ExpandedAnswerSet> sets;  ///< input order
  std::vector<ExpansionFailure> failures;
};

/// One ExpandedAnswerSet per question. LLM methods need `client` and issue one
/// expansion-phase completion per distinct prompt; failures keep
/// expanded == original and are flagged.
ExpansionResult expand_dataset(std::span<const TypedQuestion> questions, const ExpansionMethod& method,
                               LlmClient* client, const ExpansionOptions& options = {});

/// SOURCE_DATE_EPOCH when set, otherwise the current time (ISO-8601 UTC).
std::string build_timestamp();

}  // namespace entqa
