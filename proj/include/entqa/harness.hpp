#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entqa/answer_set.hpp"
#include "entqa/entity_type.hpp"
#include "entqa/expansion.hpp"
#include "entqa/llm_client.hpp"
#include "entqa/scoring.hpp"
#include "entqa/typing.hpp"

namespace entqa {

struct ModelPrediction {
  std::string model_name;
  std::string text;
  bool human_label = false;
};

struct EvalRecord {
  std::string question_id;
  std::string question;
  AnswerSet gold;
  EntityType entity_type = EntityType::NA;
  std::optional<std::int64_t> rarity_docs;
  std::vector<ModelPrediction> predictions;
};

/// EVOUNA field suffix -> model name. Each model X contributes answer_X and
/// judge_X; golden_answer is a "/"-separated string or a list.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kEvounaModels = {{
    {"fid", "FiD"},
    {"gpt35", "GPT3.5"},
    {"chatgpt", "ChatGPT3.5"},
    {"gpt4", "ChatGPT4"},
    {"newbing", "BingChat"},
}};

/// Reads EVOUNA JSON (array or JSON-lines). Ids are "<prefix>-<index>" unless
/// the item carries question_id. Throws DataError SchemaError /
/// MissingHumanLabel.
std::vector<EvalRecord> import_evouna(const std::filesystem::path& path, std::string_view id_prefix = "q");

std::string to_jsonl_line(const EvalRecord& r);
EvalRecord record_from_json_line(std::string_view line);
void write_records(const std::filesystem::path& path, std::span<const EvalRecord> records);
/// Canonical JSON-lines records.
std::vector<EvalRecord> load_records(const std::filesystem::path& path);
/// Canonical records, or EVOUNA when the first item has golden_answer.
std::vector<EvalRecord> load_dataset(const std::filesystem::path& path);

std::vector<UntypedQuestion> to_untyped(std::span<const EvalRecord> records);
/// Uses each record's stored entity type.
std::vector<TypedQuestion> to_typed(std::span<const EvalRecord> records);

/// Model names ordered as in kEvounaModels, others alphabetically after.
std::vector<std::string> ordered_models(std::span<const EvalRecord> records);

using ExpandedIndex = std::unordered_map<std::string, AnswerSet>;
ExpandedIndex index_expanded(std::span<const ExpandedAnswerSet> sets);

struct EvalOptions {
  Metric metric = Metric::soft_em;
  std::optional<NormalizationProfile> profile;  ///< metric default when absent
  double f1_threshold = 1.0;
  LlmClient* judge_client = nullptr;
  std::string judge_model = std::string(kDefaultJudgeModel);
  std::size_t workers = 0;  ///< judge threads; 0 uses the client's limit
};

struct VerdictRow {
  std::string question_id;
  std::string model_name;
  bool human_label = false;
  Verdict verdict;
};

struct VerdictTable {
  Metric metric = Metric::soft_em;
  std::vector<VerdictRow> rows;  ///< record order, then prediction order
};

/// One verdict per (question, model). `expanded` replaces each record's gold
/// set when given; every question must resolve (DataError UnresolvedQuestionId).
VerdictTable evaluate(std::span<const EvalRecord> records, const ExpandedIndex* expanded, const EvalOptions& options);

std::string to_jsonl_line(const VerdictRow& row);
/// Rows as JSON-lines; the metric is repeated per row.
void write_verdicts(const std::filesystem::path& path, const VerdictTable& table);
/// Throws DataError MalformedLine, or MixedMetrics when rows disagree.
VerdictTable load_verdicts(const std::filesystem::path& path);

struct Agreement {
  std::int64_t agree = 0;
  std::int64_t total = 0;      ///< non-abstained pairs
  std::int64_t abstained = 0;

  std::optional<double> value() const noexcept;
};

struct RarityBucket {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;  ///< inclusive; open-ended when absent
  std::string label() const;
  bool contains(std::int64_t n) const noexcept { return n >= lo && (!hi || n <= *hi); }
};

/// {0}, [1,10], [11,100], [101,1000], >1000.
std::vector<RarityBucket> default_rarity_buckets();

struct SurfaceAccuracy {
  std::vector<std::string> models;
  std::map<std::string, double> metric_accuracy;
  std::map<std::string, double> human_accuracy;
  std::vector<std::string> metric_order;  ///< descending, ties by name
  std::vector<std::string> human_order;
  bool ranking_order_matches_human = false;
};

SurfaceAccuracy surface_accuracy(const VerdictTable& verdicts);

struct RarityRow {
  RarityBucket bucket;
  std::int64_t records = 0;
  Agreement agreement;
};

struct ReliabilityReport {
  std::string label;  ///< e.g. "soft-em (rules)"
  Metric metric = Metric::soft_em;
  std::vector<std::string> models;
  std::map<std::string, Agreement> per_model;
  std::optional<double> average;  ///< mean of per-model values
  std::array<Agreement, 3> per_group{};  ///< indexed by EntityGroup
  std::vector<RarityRow> rarity;
  SurfaceAccuracy surface;
  std::int64_t abstained = 0;
};

ReliabilityReport reliability(const VerdictTable& verdicts, std::span<const EvalRecord> records,
                              std::string label = {},
                              const std::vector<RarityBucket>& buckets = default_rarity_buckets());

}  // namespace entqa
