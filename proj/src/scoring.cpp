#include "entqa/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <fmt/format.h>

#include "entqa/digest.hpp"
#include "entqa/error.hpp"
#include "entqa/judge_template.hpp"

namespace entqa {
namespace {

void require_answers(const AnswerSet& answers) {
  if (answers.empty()) throw DataError("EmptyAnswerSet", "gold answer set is empty");
}

std::string trim_copy(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

}  // namespace

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::soft_em: return "soft-em";
    case Metric::hard_em: return "hard-em";
    case Metric::f1_threshold: return "f1";
    case Metric::llm_judge: return "judge";
  }
  return "soft-em";
}

std::optional<Metric> parse_metric(std::string_view s) noexcept {
  if (s == "soft-em" || s == "soft_em" || s == "soft") return Metric::soft_em;
  if (s == "hard-em" || s == "hard_em" || s == "hard" || s == "em") return Metric::hard_em;
  if (s == "f1" || s == "f1-threshold" || s == "f1_threshold") return Metric::f1_threshold;
  if (s == "judge" || s == "llm-judge" || s == "llm_judge") return Metric::llm_judge;
  return std::nullopt;
}

NormalizationProfile default_profile(Metric m) noexcept {
  return m == Metric::soft_em ? NormalizationProfile::light() : NormalizationProfile::squad();
}

Verdict soft_em(std::string_view prediction, const AnswerSet& answers, const NormalizationProfile& profile) {
  require_answers(answers);
  Verdict v;
  v.metric = Metric::soft_em;
  const std::string pred = normalize(prediction, profile);
  for (const auto& a : answers) {
    if (contains_normalized(pred, normalize(a.text, profile), profile.containment)) {
      v.correct = true;
      v.matched_answer = a.text;
      break;
    }
  }
  return v;
}

Verdict hard_em(std::string_view prediction, const AnswerSet& answers, const NormalizationProfile& profile) {
  require_answers(answers);
  Verdict v;
  v.metric = Metric::hard_em;
  const std::string pred = normalize(prediction, profile);
  if (pred.empty()) return v;
  for (const auto& a : answers) {
    if (normalize(a.text, profile) == pred) {
      v.correct = true;
      v.matched_answer = a.text;
      break;
    }
  }
  return v;
}

double f1_pair(std::string_view prediction, std::string_view gold, NormalizationMode mode) {
  const auto p = tokenize(prediction, mode);
  const auto g = tokenize(gold, mode);
  if (p.empty() || g.empty()) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& t : g) ++counts[t];
  int overlap = 0;
  for (const auto& t : p) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / static_cast<double>(p.size());
  const double recall = static_cast<double>(overlap) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

double f1(std::string_view prediction, const AnswerSet& answers, const NormalizationProfile& profile) {
  require_answers(answers);
  double best = 0.0;
  for (const auto& a : answers) best = std::max(best, f1_pair(prediction, a.text, profile.mode));
  return best;
}

Verdict f1_verdict(std::string_view prediction, const AnswerSet& answers, const NormalizationProfile& profile,
                   double threshold) {
  require_answers(answers);
  Verdict v;
  v.metric = Metric::f1_threshold;
  double best = 0.0;
  for (const auto& a : answers) {
    const double score = f1_pair(prediction, a.text, profile.mode);
    if (score > best) {
      best = score;
      v.matched_answer = a.text;
    }
  }
  v.correct = best >= threshold;
  if (!v.correct) v.matched_answer.reset();
  v.detail = fmt::format("f1={:.4f}", best);
  return v;
}

std::string_view judge_template() { return kJudgeTemplateV1; }

std::string judge_template_hash() { return sha256_hex(kJudgeTemplateV1); }

std::string build_judge_prompt(std::string_view question, const AnswerSet& answers, std::string_view prediction) {
  std::string joined;
  for (const auto& a : answers) {
    if (!joined.empty()) joined += " / ";
    joined += a.text;
  }
  // Substitute the prediction last so text inside it is never re-expanded.
  std::string prompt = trim_copy(kJudgeTemplateV1);
  const auto q_pos = prompt.find("{question}");
  const auto a_pos = prompt.find("{answers}");
  const auto p_pos = prompt.find("{prediction}");
  if (q_pos == std::string::npos || a_pos == std::string::npos || p_pos == std::string::npos) {
    throw DataError("TemplateError", "judge template lacks a placeholder");
  }
  struct Slot {
    std::size_t pos;
    std::string_view key;
    std::string_view value;
  };
  std::vector<Slot> slots{{q_pos, "{question}", question}, {a_pos, "{answers}", joined}, {p_pos, "{prediction}", prediction}};
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.pos > b.pos; });
  for (const auto& s : slots) prompt.replace(s.pos, s.key.size(), s.value);
  return prompt;
}

bool parse_judge_response(std::string_view response) {
  std::string word;
  std::size_t i = 0;
  while (i < response.size() && !std::isalpha(static_cast<unsigned char>(response[i]))) ++i;
  while (i < response.size() && std::isalpha(static_cast<unsigned char>(response[i]))) {
    word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(response[i]))));
    ++i;
  }
  if (word == "yes" || word == "correct" || word == "true") return true;
  if (word == "no" || word == "incorrect" || word == "wrong" || word == "false") return false;
  std::string shown(response.substr(0, 80));
  replace_all(shown, "\n", " ");
  throw DataError("UnparseableJudgeResponse", "cannot read a yes/no verdict from: " + shown);
}

Verdict llm_judge(std::string_view question, const AnswerSet& answers, std::string_view prediction, LlmClient& client,
                  std::string_view model_name) {
  require_answers(answers);
  CompletionRequest req;
  req.model_name = std::string(model_name);
  req.prompt = build_judge_prompt(question, answers, prediction);
  const CompletionOutcome outcome = client.complete(req, Phase::evaluation);
  Verdict v;
  v.metric = Metric::llm_judge;
  v.detail = trim_copy(outcome.text);
  v.correct = parse_judge_response(outcome.text);
  return v;
}

}  // namespace entqa
