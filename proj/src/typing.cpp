#include "entqa/typing.hpp"

#include <unistd.h>

#include <array>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "entqa/error.hpp"
#include "entqa/number_words.hpp"
#include "json.hpp"

namespace entqa {
namespace {

using json = nlohmann::json;

std::string prepare(std::string_view text) {
  std::string out;
  bool space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

const std::string kNumWord =
    "(?:zero|one|two|three|four|five|six|seven|eight|nine|ten|eleven|twelve|thirteen|fourteen|fifteen|"
    "sixteen|seventeen|eighteen|nineteen|twenty|thirty|forty|fourty|fifty|sixty|seventy|eighty|ninety|"
    "hundred|thousand|million|billion)";
const std::string kNum = "(?:\\d[\\d,]*(?:\\.\\d+)?|\\.\\d+|\\b" + kNumWord + "(?:[ -]" + kNumWord + ")*\\b)";
const std::string kMagnitude = "(?:(?:thousand|million|billion|trillion)\\s*)?";
const std::string kMonth =
    "(?:january|february|march|april|may|june|july|august|september|october|november|december|"
    "jan|feb|mar|apr|jun|jul|aug|sept|sep|oct|nov|dec)";
const std::string kUnit =
    "(?:square miles?|sq\\.? mi|square kilomet(?:er|re)s?|sq km|km2|miles per hour|mph|km/h|kph|miles?|mi|"
    "feet|foot|ft|inch(?:es)?|in|yards?|yds?|kilomet(?:er|re)s?|km|centimet(?:er|re)s?|cm|"
    "millimet(?:er|re)s?|mm|met(?:er|re)s?|m|kilogram(?:me)?s?|kgs?|grams?|g|lbs?|pounds?|ounces?|oz|"
    "tons?|tonnes?|acres?|hectares?|ha|lit(?:er|re)s?|l|gallons?|gal|mhz|ghz|megahertz|gigahertz|"
    "degrees?(?: celsius| celcius| fahrenheit)?|leagues?|mega-hz)";

struct Patterns {
  std::regex percent{kNum + "\\s*(?:%|percents?\\b|per cent\\b)"};
  std::regex money{"(?:[$]|\xC2\xA3|\xE2\x82\xAC|\xC2\xA5)\\s*\\d|" + kNum + "\\s*" + kMagnitude +
                   "(?:dollars?|pounds?|euros?|yen|bucks?|usd|gbp|eur)\\b"};
  std::regex time{kNum + "\\s*(?:seconds?|secs?|minutes?|mins?|hours?|hrs?)\\b|"
                  "\\b\\d{1,2}(?::\\d{2})?\\s*(?:am|pm|a\\.m\\.|p\\.m\\.)(?=\\W|$)|\\b\\d{1,2}:\\d{2}\\b|"
                  "o'clock|\\b(?:noon|midnight)\\b"};
  std::regex date{"\\b" + kMonth + "\\.?,?\\s+\\d{1,4}\\b|\\b\\d{1,2}(?:st|nd|rd|th)?,?\\s+(?:of\\s+)?" + kMonth +
                  "\\b|\\b\\d{3}0s\\b|\\b(?:early|mid|late)[ -]\\d{2,4}s?\\b|\\b\\d{4}-\\d{2}-\\d{2}\\b|"
                  "^\\d{4}\\s*[-\xE2\x80\x93]\\s*\\d{1,4}$|\\bfrom \\d{4} to \\d{4}\\b"};
  std::regex bare_year{"^\\d{4}$"};
  std::regex digit_ordinal{"^\\d+(?:st|nd|rd|th)$"};
  std::regex quantity{kNum + "\\s*" + kMagnitude + kUnit + "(?=[^a-z0-9]|$)"};
  std::regex cardinal{
      "^(?:(?:about|approximately|approx\\.|around|over|almost|nearly|more than|less than|up to)\\s+)?" + kNum +
      "(?:\\s*(?:thousand|million|billion|trillion))?$"};
};

const Patterns& patterns() {
  static const Patterns p;
  return p;
}

bool is_ordinal(std::string s) {
  if (s.rfind("the ", 0) == 0) s = s.substr(4);
  constexpr std::string_view kPlace = " place";
  if (s.size() > kPlace.size() && s.compare(s.size() - kPlace.size(), kPlace.size(), kPlace) == 0)
    s = s.substr(0, s.size() - kPlace.size());
  if (std::regex_match(s, patterns().digit_ordinal)) return true;
  return try_ordinal_words_to_number(s).has_value();
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out.push_back(c);
  }
  return out + "'";
}

}  // namespace

std::string_view to_string(TypeSource s) noexcept {
  switch (s) {
    case TypeSource::rule: return "rule";
    case TypeSource::external: return "external";
    case TypeSource::override_file: return "override";
  }
  return "rule";
}

EntityType rule_type(std::string_view answer) {
  const std::string s = prepare(answer);
  if (s.empty()) return EntityType::NA;
  const Patterns& p = patterns();
  if (std::regex_search(s, p.percent)) return EntityType::PERCENT;
  if (std::regex_search(s, p.money)) return EntityType::MONEY;
  if (std::regex_search(s, p.time)) return EntityType::TIME;
  if (std::regex_search(s, p.date)) return EntityType::DATE;
  if (std::regex_match(s, p.bare_year)) {
    int y = std::stoi(s);
    if (y >= 1000 && y <= 2999) return EntityType::DATE;
  }
  if (is_ordinal(s)) return EntityType::ORDINAL;
  if (std::regex_search(s, p.quantity)) return EntityType::QUANTITY;
  if (std::regex_match(s, p.cardinal)) return EntityType::CARDINAL;
  return EntityType::NA;
}

EntityType aggregate_tags(std::span<const EntityType> per_answer) {
  if (per_answer.empty()) return EntityType::NA;
  std::array<int, kEntityTypeCount> counts{};
  for (EntityType t : per_answer) ++counts[static_cast<std::size_t>(t)];
  int best = 0;
  for (int c : counts) best = std::max(best, c);
  for (EntityType t : per_answer)
    if (counts[static_cast<std::size_t>(t)] == best) return t;
  return EntityType::NA;
}

std::vector<std::optional<EntityType>> RuleTagger::tag(std::span<const UntypedQuestion> questions) {
  std::vector<std::optional<EntityType>> out;
  out.reserve(questions.size());
  for (const auto& q : questions) {
    std::vector<EntityType> tags;
    tags.reserve(q.gold_answers.size());
    for (const auto& a : q.gold_answers) tags.push_back(rule_type(a));
    out.emplace_back(aggregate_tags(tags));
  }
  return out;
}

ExternalTypes load_external_types(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("TaggerUnavailable", "external type file not found: " + path.string());
  ExternalTypes out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object() || !obj.contains("question_id") || !obj.contains("tag") ||
        !obj["question_id"].is_string() || !obj["tag"].is_string()) {
      throw DataError("MalformedLine", path.string() + ":" + std::to_string(line_no) + ": malformed type line");
    }
    std::string id = obj["question_id"].get<std::string>();
    auto parsed = parse_entity_type(obj["tag"].get<std::string>());
    if (!parsed) ++out.unknown_tags;
    if (!out.types.emplace(id, parsed.value_or(EntityType::NA)).second) {
      throw DataError("DuplicateQuestionId",
                      path.string() + ":" + std::to_string(line_no) + ": duplicate question_id " + id);
    }
  }
  return out;
}

std::vector<std::optional<EntityType>> ExternalTagger::tag(std::span<const UntypedQuestion> questions) {
  std::vector<std::optional<EntityType>> out;
  out.reserve(questions.size());
  for (const auto& q : questions) {
    auto it = types_.types.find(q.question_id);
    out.push_back(it == types_.types.end() ? std::nullopt : std::optional<EntityType>(it->second));
  }
  return out;
}

std::vector<std::optional<EntityType>> SidecarTagger::tag(std::span<const UntypedQuestion> questions) {
  static std::atomic<unsigned> counter{0};
  auto tmp = std::filesystem::temp_directory_path() /
             ("entqa-sidecar-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".jsonl");
  {
    std::ofstream req(tmp);
    if (!req) throw DataError("TaggerUnavailable", "cannot stage sidecar input at " + tmp.string());
    for (const auto& q : questions) {
      req << json{{"question_id", q.question_id}, {"answers", q.gold_answers}}.dump() << '\n';
    }
  }

  std::string command = command_ + " < " + shell_quote(tmp.string());
  std::string output;
  int status = -1;
  if (FILE* pipe = ::popen(command.c_str(), "r")) {
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
    status = ::pclose(pipe);
  }
  std::error_code ec;
  std::filesystem::remove(tmp, ec);
  if (status != 0) {
    throw DataError("TaggerUnavailable", "sidecar command failed (status " + std::to_string(status) + "): " + command_);
  }

  std::vector<std::optional<EntityType>> out;
  out.reserve(questions.size());
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object() || !obj.contains("tag") || !obj["tag"].is_string()) {
      throw DataError("TaggerUnavailable", "sidecar produced a malformed line: " + line);
    }
    std::size_t i = out.size();
    if (i >= questions.size() || obj.value("question_id", std::string()) != questions[i].question_id) {
      throw DataError("TaggerUnavailable", "sidecar output does not line up with its input");
    }
    out.emplace_back(parse_entity_type(obj["tag"].get<std::string>()).value_or(EntityType::NA));
  }
  if (out.size() != questions.size()) {
    throw DataError("TaggerUnavailable", "sidecar returned " + std::to_string(out.size()) + " tags for " +
                                             std::to_string(questions.size()) + " questions");
  }
  return out;
}

EntityType classify(const UntypedQuestion& question, Tagger& tagger) {
  if (question.gold_answers.empty())
    throw DataError("EmptyAnswerSet", "question " + question.question_id + " has no gold answers");
  auto tags = tagger.tag(std::span<const UntypedQuestion>(&question, 1));
  if (tags.size() != 1 || !tags.front())
    throw DataError("TaggerUnavailable", "no tag available for question " + question.question_id);
  return *tags.front();
}

std::vector<TypedQuestion> classify_all(std::span<const UntypedQuestion> questions, Tagger& tagger,
                                        const TypingOptions& options) {
  for (const auto& q : questions) {
    if (q.gold_answers.empty())
      throw DataError("EmptyAnswerSet", "question " + q.question_id + " has no gold answers");
  }
  std::vector<std::optional<EntityType>> tags;
  if (tagger.source() == TypeSource::rule) {
    tags = tagger.tag(questions);
  } else {
    try {
      tags = tagger.tag(questions);
    } catch (const DataError& e) {
      if (e.kind() != "TaggerUnavailable" || !options.fallback_to_rule) throw;
      tags.assign(questions.size(), std::nullopt);
    }
  }

  RuleTagger rules;
  std::vector<TypedQuestion> out;
  out.reserve(questions.size());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const auto& q = questions[i];
    TypedQuestion typed{q.question_id, q.question, AnswerSet(q.gold_answers), EntityType::NA, tagger.source()};
    if (options.overrides) {
      if (auto it = options.overrides->types.find(q.question_id); it != options.overrides->types.end()) {
        typed.entity_type = it->second;
        typed.type_source = TypeSource::override_file;
        out.push_back(std::move(typed));
        continue;
      }
    }
    if (tags[i]) {
      typed.entity_type = *tags[i];
    } else if (options.fallback_to_rule) {
      typed.entity_type = *rules.tag(std::span<const UntypedQuestion>(&q, 1)).front();
      typed.type_source = TypeSource::rule;
    } else {
      throw DataError("TaggerUnavailable", "no tag available for question " + q.question_id);
    }
    out.push_back(std::move(typed));
  }
  return out;
}

}  // namespace entqa
