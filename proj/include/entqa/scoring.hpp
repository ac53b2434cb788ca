#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "entqa/answer_set.hpp"
#include "entqa/llm_client.hpp"
#include "entqa/normalize.hpp"

namespace entqa {

enum class Metric { soft_em, hard_em, f1_threshold, llm_judge };

std::string_view to_string(Metric m) noexcept;
/// Accepts "soft-em", "soft_em", "hard-em", "f1", "judge", ...
std::optional<Metric> parse_metric(std::string_view s) noexcept;

struct Verdict {
  bool correct = false;
  std::optional<std::string> matched_answer;  ///< gold entry that fired
  Metric metric = Metric::soft_em;
  std::optional<std::string> detail;
  /// Judge output could not be read; excluded from reliability.
  bool abstain = false;
};

/// Default profile per metric: light + token_boundary for soft EM, squad for
/// hard EM and F1.
NormalizationProfile default_profile(Metric m) noexcept;

/// Correct iff some normalized gold is contained in the normalized prediction;
/// matched_answer is the first such gold in set order. Throws DataError
/// EmptyAnswerSet.
Verdict soft_em(std::string_view prediction, const AnswerSet& answers,
                const NormalizationProfile& profile = default_profile(Metric::soft_em));

Verdict hard_em(std::string_view prediction, const AnswerSet& answers,
                const NormalizationProfile& profile = default_profile(Metric::hard_em));

/// Token-multiset F1 against one gold string.
double f1_pair(std::string_view prediction, std::string_view gold, NormalizationMode mode);

/// Max F1 over the gold set.
double f1(std::string_view prediction, const AnswerSet& answers,
          const NormalizationProfile& profile = default_profile(Metric::f1_threshold));

/// F1 turned into a verdict: correct iff max F1 >= threshold. detail holds the score.
Verdict f1_verdict(std::string_view prediction, const AnswerSet& answers,
                   const NormalizationProfile& profile = default_profile(Metric::f1_threshold),
                   double threshold = 1.0);

inline constexpr std::string_view kDefaultJudgeModel = "gpt-3.5-turbo-instruct";

/// Compiled-in judge template; placeholders {question}, {answers}, {prediction}.
std::string_view judge_template();
/// SHA-256 of judge_template(); pins results to the template version.
std::string judge_template_hash();

std::string build_judge_prompt(std::string_view question, const AnswerSet& answers, std::string_view prediction);

/// First word yes/correct/true -> true, no/incorrect/wrong/false -> false.
/// Throws DataError UnparseableJudgeResponse otherwise.
bool parse_judge_response(std::string_view response);

/// One evaluation-phase completion. Throws DataError UnparseableJudgeResponse
/// and client errors.
Verdict llm_judge(std::string_view question, const AnswerSet& answers, std::string_view prediction, LlmClient& client,
                  std::string_view model_name = kDefaultJudgeModel);

}  // namespace entqa
