#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entqa/answer_set.hpp"
#include "entqa/entity_type.hpp"

namespace entqa {

enum class TypeSource { rule, external, override_file };

std::string_view to_string(TypeSource s) noexcept;

/// A question whose gold answers have not been typed yet.
struct UntypedQuestion {
  std::string question_id;
  std::string question;
  std::vector<std::string> gold_answers;
};

struct TypedQuestion {
  std::string question_id;
  std::string question;
  AnswerSet gold_answers;
  EntityType entity_type = EntityType::NA;
  TypeSource type_source = TypeSource::rule;
};

/// Surface-pattern typer for a single answer. Only ever yields numeric
/// classes or NA; precedence PERCENT > MONEY > TIME > DATE > ORDINAL >
/// QUANTITY > CARDINAL.
EntityType rule_type(std::string_view answer);

/// Majority vote over per-answer tags; ties go to the tied tag that occurs
/// first in answer order. Empty input yields NA.
EntityType aggregate_tags(std::span<const EntityType> per_answer);

/// Question-level tagger. `tag` returns nullopt for questions it cannot type.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual TypeSource source() const noexcept = 0;
  virtual std::vector<std::optional<EntityType>> tag(std::span<const UntypedQuestion> questions) = 0;
};

class RuleTagger final : public Tagger {
 public:
  TypeSource source() const noexcept override { return TypeSource::rule; }
  std::vector<std::optional<EntityType>> tag(std::span<const UntypedQuestion> questions) override;
};

struct ExternalTypes {
  std::map<std::string, EntityType> types;
  std::size_t unknown_tags = 0;  ///< tag strings outside the 19 names, mapped to NA
};

/// JSON-lines {question_id, tag}. Throws DataError MalformedLine /
/// DuplicateQuestionId, or DataError TaggerUnavailable when the file is absent.
ExternalTypes load_external_types(const std::filesystem::path& path);

/// Serves pre-computed tags; questions missing from the map are untyped.
class ExternalTagger final : public Tagger {
 public:
  explicit ExternalTagger(ExternalTypes types) : types_(std::move(types)) {}
  TypeSource source() const noexcept override { return TypeSource::external; }
  std::vector<std::optional<EntityType>> tag(std::span<const UntypedQuestion> questions) override;

 private:
  ExternalTypes types_;
};

/// Runs an external NER process speaking the JSON-lines protocol
/// {question_id, answers:[...]} -> {question_id, tag} over stdin/stdout.
class SidecarTagger final : public Tagger {
 public:
  explicit SidecarTagger(std::string command) : command_(std::move(command)) {}
  TypeSource source() const noexcept override { return TypeSource::external; }
  /// Throws DataError TaggerUnavailable if the process cannot run or its
  /// output does not line up with the input.
  std::vector<std::optional<EntityType>> tag(std::span<const UntypedQuestion> questions) override;

 private:
  std::string command_;
};

/// Types one question. Throws DataError EmptyAnswerSet or TaggerUnavailable.
EntityType classify(const UntypedQuestion& question, Tagger& tagger);

struct TypingOptions {
  /// Per-question pins that win over any tagger.
  const ExternalTypes* overrides = nullptr;
  /// Rule typer for questions the tagger leaves untyped.
  bool fallback_to_rule = true;
};

/// Batch typing with overrides and optional rule fallback.
std::vector<TypedQuestion> classify_all(std::span<const UntypedQuestion> questions, Tagger& tagger,
                                        const TypingOptions& options = {});

}  // namespace entqa
