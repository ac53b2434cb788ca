#include "entqa/expansion.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <cctype>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "entqa/error.hpp"
#include "entqa/normalize.hpp"
#include "entqa/surface_forms.hpp"
#include "json.hpp"

namespace entqa {
namespace {

using ojson = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Uniform draw in [0, n) by rejection, so results do not depend on the
// standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

// Splits on "/" not preceded by a backslash; "\/" is unescaped in the pieces.
std::vector<std::string> split_unescaped(std::string_view s) {
  std::vector<std::string> out(1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == '/') {
      out.back().push_back('/');
      ++i;
    } else if (s[i] == '/') {
      out.emplace_back();
    } else {
      out.back().push_back(s[i]);
    }
  }
  return out;
}

bool has_unescaped_slash(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '/' && (i == 0 || s[i - 1] != '\\')) return true;
  }
  return false;
}

std::string strip_list_marker(std::string_view s) {
  if (s.size() > 2 && (s[0] == '-' || s[0] == '*') && s[1] == ' ') return std::string(trim(s.substr(2)));
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i > 0 && i + 1 < s.size() && (s[i] == '.' || s[i] == ')') && s[i + 1] == ' ') {
    return std::string(trim(s.substr(i + 2)));
  }
  return std::string(s);
}

ojson set_json(const AnswerSet& s) { return ojson(s.texts()); }

}  // namespace

std::string ExpansionMethod::to_string() const {
  switch (kind) {
    case MethodKind::inst_zero: return "inst_zero";
    case MethodKind::inst_random: return "inst_random:" + std::to_string(seed);
    case MethodKind::inst_entity: return "inst_entity";
    case MethodKind::rules: return "rules";
  }
  return "rules";
}

ExpansionMethod parse_method(std::string_view text, std::uint64_t default_seed) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '-', '_');
  std::string name = s;
  std::optional<std::uint64_t> seed;
  if (auto colon = s.find(':'); colon != std::string::npos) {
    name = s.substr(0, colon);
    try {
      std::size_t used = 0;
      seed = std::stoull(s.substr(colon + 1), &used);
      if (used != s.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("UnknownMethod", "bad seed in method '" + std::string(text) + "'");
    }
  }
  if (name == "inst_zero" && !seed) return {MethodKind::inst_zero, 0};
  if (name == "inst_entity" && !seed) return {MethodKind::inst_entity, 0};
  if (name == "rules" && !seed) return {MethodKind::rules, 0};
  if (name == "inst_random") return {MethodKind::inst_random, seed.value_or(default_seed)};
  throw UsageError("UnknownMethod",
                   "unknown expansion method '" + std::string(text) + "' (inst_zero, inst_random[:seed], inst_entity, rules)");
}

std::vector<const Exemplar*> select_exemplars(const ExpansionMethod& method, EntityType t, const FewShotBank& bank) {
  switch (method.kind) {
    case MethodKind::rules:
      throw UsageError("UnsupportedMethod", "rules expansion does not build prompts");
    case MethodKind::inst_zero:
      return {};
    case MethodKind::inst_entity: {
      const auto& group = bank.group(bank_key_for(t));
      if (group.empty()) {
        throw DataError("MissingBank", "no exemplars for " + std::string(entqa::to_string(t)) + " in the " +
                                           std::string(entqa::to_string(bank.dataset)) + " bank");
      }
      std::vector<const Exemplar*> out;
      for (const auto& e : group) out.push_back(&e);
      return out;
    }
    case MethodKind::inst_random: {
      std::vector<const Exemplar*> pool = bank.all();
      if (pool.empty()) throw DataError("MissingBank", "few-shot bank is empty");
      std::mt19937_64 rng(method.seed);
      const std::size_t k = std::min(kExemplarsPerBank, pool.size());
      for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + uniform_below(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
      }
      pool.resize(k);
      return pool;
    }
  }
  return {};
}

std::string join_answers(std::span<const std::string> answers) {
  std::string out;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (i) out.push_back('/');
    for (char c : answers[i]) {
      if (c == '/') out.push_back('\\');
      out.push_back(c);
    }
  }
  return out;
}

std::string build_prompt(const ExpansionMethod& method, EntityType t, std::string_view question,
                         const AnswerSet& original, const FewShotBank& bank) {
  if (original.empty()) throw DataError("EmptyAnswerSet", "cannot expand an empty answer set");
  const auto exemplars = select_exemplars(method, t, bank);
  std::string prompt(kExpansionInstruction);
  prompt += "\n\n";
  for (const Exemplar* e : exemplars) {
    prompt += "Question: " + e->question + "\n";
    prompt += "Gold Answers: ";
    for (std::size_t i = 0; i < e->expanded_answers.size(); ++i) {
      if (i) prompt.push_back('/');
      prompt += e->expanded_answers[i];
    }
    prompt += "\n\n";
  }
  const auto texts = original.texts();
  prompt += "Question: " + std::string(question) + "\n";
  prompt += "Gold Answers: " + join_answers(texts);
  return prompt;
}

ParsedExpansion parse_expansion_detailed(std::string_view response, std::span<const std::string> original) {
  ParsedExpansion out;

  // Keep only the first answer block: models sometimes continue with a new
  // "Question:" of their own.
  std::string body;
  {
    std::istringstream in{std::string(response)};
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (trim(line).rfind("Question:", 0) == 0 && !first) break;
      if (trim(line).rfind("Question:", 0) == 0) continue;
      if (!first || !trim(line).empty()) first = false;
      body += line;
      body.push_back('\n');
    }
  }
  std::string_view view = trim(body);
  constexpr std::string_view kLabel = "Gold Answers:";
  if (view.rfind(kLabel, 0) == 0) view = trim(view.substr(kLabel.size()));

  std::vector<std::string> pieces;
  if (has_unescaped_slash(view)) {
    std::string flat(view);
    std::replace(flat.begin(), flat.end(), '\n', '/');
    pieces = split_unescaped(flat);
  } else {
    std::istringstream in{std::string(view)};
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      ++lines;
      pieces.push_back(strip_list_marker(trim(line)));
    }
    out.salvaged = lines > 1;
    for (auto& p : pieces) p = split_unescaped(p).front();
  }

  std::unordered_set<std::string> seen;
  for (const auto& o : original) seen.insert(normalize(o, NormalizationMode::light));
  std::unordered_set<std::string> kept;
  for (const auto& raw : pieces) {
    std::string piece(trim(raw));
    if (piece.empty()) continue;
    if (piece.size() > kMaxExpandedEntryLength) {
      ++out.dropped_long;
      continue;
    }
    const std::string key = normalize(piece, NormalizationMode::light);
    if (key.empty() || seen.count(key) || !kept.insert(key).second) continue;
    out.answers.push_back(std::move(piece));
  }
  return out;
}

std::vector<std::string> parse_expansion(std::string_view response, std::span<const std::string> original) {
  return parse_expansion_detailed(response, original).answers;
}

// --- persistence --------------------------------------------------------------

std::string to_jsonl_line(const ExpandedAnswerSet& s) {
  ojson provenance = ojson::array();
  for (const auto& e : s.expanded) provenance.push_back(std::string(to_string(e.provenance)));
  ojson j{{"question_id", s.question_id},
          {"original", set_json(s.original)},
          {"expanded", set_json(s.expanded)},
          {"method", s.method.to_string()},
          {"entity_type", std::string(to_string(s.entity_type))},
          {"prompt_hash", s.prompt_hash},
          {"created_at", s.created_at},
          {"provenance", provenance},
          {"flags", s.flags}};
  return j.dump();
}

ExpandedAnswerSet expanded_from_jsonl_line(std::string_view line) {
  try {
    const ojson j = ojson::parse(line);
    ExpandedAnswerSet s;
    s.question_id = j.at("question_id").get<std::string>();
    s.original = AnswerSet(j.at("original").get<std::vector<std::string>>());
    const auto expanded = j.at("expanded").get<std::vector<std::string>>();
    std::vector<std::string> prov;
    if (j.contains("provenance")) prov = j["provenance"].get<std::vector<std::string>>();
    for (std::size_t i = 0; i < expanded.size(); ++i) {
      Provenance p = s.original.contains(expanded[i]) ? Provenance::original : Provenance::llm_expanded;
      if (i < prov.size()) {
        if (auto parsed = parse_provenance(prov[i])) p = *parsed;
      }
      s.expanded.add(expanded[i], p);
    }
    s.method = parse_method(j.at("method").get<std::string>());
    auto t = parse_entity_type(j.value("entity_type", std::string("N/A")));
    if (!t) throw DataError("MalformedLine", "unknown entity_type");
    s.entity_type = *t;
    s.prompt_hash = j.value("prompt_hash", std::string());
    s.created_at = j.value("created_at", std::string());
    if (j.contains("flags")) s.flags = j["flags"].get<std::vector<std::string>>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("MalformedLine", std::string("expanded-set line: ") + e.what());
  } catch (const UsageError& e) {
    throw DataError("MalformedLine", std::string("expanded-set line: ") + e.what());
  }
}

void write_expanded_sets(const std::filesystem::path& path, std::span<const ExpandedAnswerSet> sets) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("IoError", "cannot write " + path.string());
  for (const auto& s : sets) out << to_jsonl_line(s) << '\n';
  if (!out) throw DataError("IoError", "write failed for " + path.string());
}

std::vector<ExpandedAnswerSet> load_expanded_sets(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("IoError", "cannot read " + path.string());
  std::vector<ExpandedAnswerSet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(expanded_from_jsonl_line(line));
    } catch (const DataError& e) {
      throw DataError("MalformedLine", path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// --- dataset expansion ----------------------------------------------------------

std::string build_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0' && end != epoch) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ExpansionResult expand_dataset(std::span<const TypedQuestion> questions, const ExpansionMethod& method,
                               LlmClient* client, const ExpansionOptions& options) {
  ExpansionResult result;
  result.sets.resize(questions.size());

  if (!method.uses_llm()) {
    const std::string stamp = build_timestamp();
    for (std::size_t i = 0; i < questions.size(); ++i) {
      const auto& q = questions[i];
      auto& s = result.sets[i];
      s = {q.question_id, q.gold_answers, q.gold_answers, method, q.entity_type, "", stamp, {}};
      for (const auto& entry : q.gold_answers) {
        const VariantSet variants = rule_expand(entry.text, q.entity_type, options.rule_cap);
        for (const auto& v : variants.entries()) s.expanded.add(v, Provenance::rule_expanded);
      }
    }
    return result;
  }

  if (!client) throw UsageError("MissingClient", "LLM expansion methods need a configured client");
  const FewShotBank& bank = builtin_bank(options.bank);

  std::vector<std::optional<ExpansionFailure>> failures(questions.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < questions.size(); i = next++) {
      const auto& q = questions[i];
      auto& s = result.sets[i];
      s = {q.question_id, q.gold_answers, q.gold_answers, method, q.entity_type, "", "", {}};
      try {
        CompletionRequest req;
        req.model_name = options.model_name;
        req.prompt = build_prompt(method, q.entity_type, q.question, q.gold_answers, bank);
        s.prompt_hash = req.hash();
        const CompletionOutcome outcome = client->complete(req, Phase::expansion);
        s.created_at = outcome.timestamp;
        const auto texts = q.gold_answers.texts();
        const ParsedExpansion parsed = parse_expansion_detailed(outcome.text, texts);
        for (const auto& a : parsed.answers) s.expanded.add(a, Provenance::llm_expanded);
        if (parsed.salvaged) s.flags.push_back("salvaged_lines");
        if (parsed.dropped_long) s.flags.push_back("dropped_long:" + std::to_string(parsed.dropped_long));
        if (parsed.answers.empty()) s.flags.push_back("empty_expansion");
      } catch (const Error& e) {
        s.flags.push_back("failed:" + e.kind());
        failures[i] = ExpansionFailure{q.question_id, e.kind(), e.what(), e.category()};
      }
    }
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min(options.workers ? options.workers : client->max_in_flight(), questions.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& f : failures)
    if (f) result.failures.push_back(std::move(*f));
  return result;
}

}  // namespace entqa
