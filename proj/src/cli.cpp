#include "entqa/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "entqa/error.hpp"
#include "entqa/expansion.hpp"
#include "entqa/harness.hpp"
#include "entqa/kv_config.hpp"
#include "entqa/llm_client.hpp"
#include "entqa/report.hpp"
#include "entqa/scoring.hpp"
#include "entqa/typing.hpp"
#include "json.hpp"

namespace entqa::cli {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Resolution order for every setting: config file, then command-line flag,
// then ENTQA_<KEY> from the environment.
class Settings {
 public:
  Settings(std::string command, const KvConfig* file) : command_(std::move(command)), file_(file) {}

  std::string& bind(const std::string& key) {
    keys_.insert(key);
    return flags_[key];
  }
  void mark_given(const std::string& key) { given_.insert(key); }
  void set_default(const std::string& key, std::string value) { defaults_[key] = std::move(value); }

  std::optional<std::string> get(const std::string& key) const {
    std::optional<std::string> v;
    if (auto it = defaults_.find(key); it != defaults_.end()) v = it->second;
    if (file_) {
      if (auto top = file_->get(key)) v = top;
      if (auto scoped = file_->get(command_ + "." + key)) v = scoped;
    }
    if (given_.count(key)) v = flags_.at(key);
    std::string env = "ENTQA_" + key;
    std::transform(env.begin(), env.end(), env.begin(), [](unsigned char c) { return std::toupper(c); });
    if (const char* e = std::getenv(env.c_str())) v = std::string(e);
    return v;
  }

  std::string get_or(const std::string& key, const std::string& fallback) const { return get(key).value_or(fallback); }

  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v || v->empty()) throw UsageError("MissingOption", "--" + dashed(key) + " is required");
    return *v;
  }

  bool flag(const std::string& key) const {
    auto v = get(key);
    return v && (*v == "true" || *v == "1" || *v == "yes");
  }

  std::map<std::string, std::string> resolved() const {
    std::map<std::string, std::string> out;
    for (const auto& k : keys_)
      if (auto v = get(k)) out[k] = *v;
    return out;
  }

  const std::string& command() const noexcept { return command_; }

  static std::string dashed(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
  }

 private:
  std::string command_;
  const KvConfig* file_;
  std::set<std::string> keys_;
  std::set<std::string> given_;
  std::map<std::string, std::string> flags_;
  std::map<std::string, std::string> defaults_;
};

struct Command {
  CLI::App* app = nullptr;
  std::unique_ptr<Settings> settings;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, bool> bool_flags;
};

void add_value(Command& c, const std::string& key, const std::string& help) {
  c.options[key] = c.app->add_option("--" + Settings::dashed(key), c.settings->bind(key), help);
}

void add_flag(Command& c, const std::string& key, const std::string& help) {
  c.settings->bind(key);
  c.bool_flags[key] = false;
  c.options[key] = c.app->add_flag("--" + Settings::dashed(key), c.bool_flags[key], help);
}

void finalize(Command& c) {
  for (auto& [key, opt] : c.options) {
    if (opt->count() == 0) continue;
    c.settings->mark_given(key);
    if (auto it = c.bool_flags.find(key); it != c.bool_flags.end()) c.settings->bind(key) = it->second ? "true" : "false";
  }
}

std::string toml_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

void write_run_config(const fs::path& path, const Settings& s) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("IoError", "cannot write " + path.string());
  out << "command = " << toml_quote(s.command()) << "\n";
  for (const auto& [k, v] : s.resolved()) out << k << " = " << toml_quote(v) << "\n";
}

fs::path sidecar_config_path(const fs::path& output) { return fs::path(output.string() + ".run.toml"); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long n = std::stoll(v, &used);
    if (used != v.size() || n < 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw UsageError("InvalidOption", "--" + Settings::dashed(key) + " expects a non-negative integer, got '" + v + "'");
  }
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw UsageError("InvalidOption", "--" + Settings::dashed(key) + " expects a number, got '" + v + "'");
  }
}

Metric metric_of(const Settings& s, const std::string& fallback = "soft-em") {
  const auto name = s.get_or("metric", fallback);
  auto m = parse_metric(name);
  if (!m) throw UsageError("InvalidOption", "unknown metric '" + name + "' (soft-em, hard-em, f1, judge)");
  return *m;
}

NormalizationProfile profile_of(const Settings& s, Metric metric) {
  NormalizationProfile p = default_profile(metric);
  if (auto v = s.get("profile")) {
    auto mode = parse_normalization_mode(*v);
    if (!mode) throw UsageError("InvalidOption", "unknown profile '" + *v + "' (light, squad)");
    p.mode = *mode;
  }
  if (auto v = s.get("containment")) {
    auto c = parse_containment(*v);
    if (!c) throw UsageError("InvalidOption", "unknown containment '" + *v + "' (token, substring)");
    p.containment = *c;
  }
  return p;
}

DatasetId bank_of(const Settings& s) {
  const auto v = s.get_or("bank", "nq");
  auto d = parse_dataset_id(v);
  if (!d) throw UsageError("InvalidOption", "unknown bank '" + v + "' (nq, tq)");
  return *d;
}

std::uint64_t seed_of(const Settings& s) {
  return static_cast<std::uint64_t>(parse_count("seed", s.get_or("seed", "0")));
}

struct ClientBundle {
  std::shared_ptr<UsageLedger> ledger = std::make_shared<UsageLedger>();
  std::unique_ptr<LlmClient> client;
};

ClientBundle make_client(const Settings& s, const std::string& default_mode = "replay") {
  ClientBundle b;
  const std::string mode_name = s.get_or("mode", default_mode);
  auto mode = parse_client_mode(mode_name);
  if (!mode) throw UsageError("InvalidOption", "unknown mode '" + mode_name + "' (live, record, replay)");
  auto transcript = s.get("transcript");
  if (*mode == ClientMode::record && (!transcript || transcript->empty())) {
    throw UsageError("MissingOption", "record mode needs --transcript");
  }
  auto store = transcript && !transcript->empty() ? std::make_shared<TranscriptStore>(fs::path(*transcript))
                                                  : std::make_shared<TranscriptStore>();
  std::shared_ptr<Transport> transport;
  if (*mode != ClientMode::replay) transport = std::make_shared<HttpTransport>(http_options_from_env());

  ClientOptions opts;
  opts.mode = *mode;
  opts.max_in_flight = parse_count("max_in_flight", s.get_or("max_in_flight", "4"));
  opts.retry.max_attempts = static_cast<int>(parse_count("max_attempts", s.get_or("max_attempts", "5")));
  opts.requests_per_second = parse_real("requests_per_second", s.get_or("requests_per_second", "0"));
  b.client = std::make_unique<LlmClient>(opts, transport, store, b.ledger);
  return b;
}

ojson ledger_json(const UsageLedger::Snapshot& snap, const Settings& s) {
  ojson j{{"expansion_calls", snap.expansion_calls},
          {"evaluation_calls", snap.evaluation_calls},
          {"prompt_tokens", snap.prompt_tokens},
          {"completion_tokens", snap.completion_tokens}};
  if (auto pricing = s.get("pricing")) j["estimated_cost"] = estimate_cost(snap, load_pricing(*pricing));
  return j;
}

// --- subcommands -------------------------------------------------------------------

int do_type(const Settings& s, std::ostream& out) {
  auto records = load_dataset(s.require("dataset"));
  const fs::path out_path = s.require("out");
  const auto untyped = to_untyped(records);

  std::unique_ptr<Tagger> tagger;
  if (auto cmd = s.get("sidecar"); cmd && !cmd->empty()) {
    tagger = std::make_unique<SidecarTagger>(*cmd);
  } else if (auto types = s.get("types"); types && !types->empty()) {
    tagger = std::make_unique<ExternalTagger>(load_external_types(*types));
  } else {
    tagger = std::make_unique<RuleTagger>();
  }
  std::optional<ExternalTypes> overrides;
  if (auto path = s.get("overrides"); path && !path->empty()) overrides = load_external_types(*path);

  TypingOptions opts;
  opts.overrides = overrides ? &*overrides : nullptr;
  opts.fallback_to_rule = s.get_or("fallback", "true") != "false";
  const auto typed = classify_all(untyped, *tagger, opts);

  std::map<std::string, std::size_t> by_type, by_source;
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].entity_type = typed[i].entity_type;
    ++by_type[std::string(to_string(typed[i].entity_type))];
    ++by_source[std::string(to_string(typed[i].type_source))];
  }
  write_records(out_path, records);
  write_run_config(sidecar_config_path(out_path), s);
  out << ojson{{"questions", records.size()}, {"types", by_type}, {"sources", by_source}}.dump() << "\n";
  return 0;
}

int do_expand(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto records = load_dataset(s.require("dataset"));
  const auto method = parse_method(s.get_or("method", "inst_entity"), seed_of(s));
  const auto questions = to_typed(records);
  ExpansionOptions opts;
  opts.bank = bank_of(s);
  opts.model_name = s.get_or("model", std::string(kDefaultExpansionModel));
  opts.rule_cap = parse_count("cap", s.get_or("cap", std::to_string(kDefaultExpansionCap)));

  if (s.flag("dry_run")) {
    std::size_t prompts = 0;
    std::unique_ptr<std::ofstream> prompt_file;
    if (auto p = s.get("prompts_out"); p && !p->empty()) {
      prompt_file = std::make_unique<std::ofstream>(*p, std::ios::binary | std::ios::trunc);
      if (!*prompt_file) throw DataError("IoError", "cannot write " + *p);
    }
    if (method.uses_llm()) {
      const FewShotBank& bank = builtin_bank(opts.bank);
      for (const auto& q : questions) {
        CompletionRequest req;
        req.model_name = opts.model_name;
        req.prompt = build_prompt(method, q.entity_type, q.question, q.gold_answers, bank);
        out << "### " << q.question_id << " " << req.hash() << "\n" << req.prompt << "\n\n";
        if (prompt_file) {
          *prompt_file << ojson{{"question_id", q.question_id}, {"model", req.model_name}, {"prompt", req.prompt}}.dump()
                       << "\n";
        }
        ++prompts;
      }
    } else {
      for (const auto& set : expand_dataset(questions, method, nullptr, opts).sets) out << to_jsonl_line(set) << "\n";
    }
    out << ojson{{"dry_run", true}, {"method", method.to_string()}, {"questions", questions.size()},
                 {"prompts", prompts}, {"expansion_calls", 0}}.dump()
        << "\n";
    return 0;
  }

  const fs::path out_path = s.require("out");
  ClientBundle bundle;
  if (method.uses_llm()) bundle = make_client(s);
  const auto result = expand_dataset(questions, method, bundle.client.get(), opts);
  write_expanded_sets(out_path, result.sets);
  write_run_config(sidecar_config_path(out_path), s);

  std::size_t added = 0;
  for (const auto& set : result.sets) added += set.expanded.size() - set.original.size();
  out << ojson{{"questions", result.sets.size()},
               {"method", method.to_string()},
               {"answers_added", added},
               {"failures", result.failures.size()},
               {"ledger", ledger_json(bundle.ledger->snapshot(), s)}}.dump()
      << "\n";
  if (result.failures.empty()) return 0;
  for (const auto& f : result.failures) {
    err << ojson{{"question_id", f.question_id}, {"error", f.kind}, {"message", f.message}}.dump() << "\n";
  }
  const auto cat = result.failures.front().category;
  return cat == ErrorCategory::usage ? 2 : cat == ErrorCategory::data ? 3 : 4;
}

struct AnswerInfo {
  AnswerSet answers;
  std::string question;
};

std::map<std::string, AnswerInfo> load_answer_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("IoError", "cannot read " + path.string());
  std::map<std::string, AnswerInfo> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (j.is_discarded() || !j.is_object() || !j.contains("question_id")) {
      throw DataError("MalformedLine", where + ": expected an object with question_id");
    }
    AnswerInfo info;
    info.question = j.value("question", std::string());
    for (const char* field : {"expanded", "gold", "answers"}) {
      if (j.contains(field) && j[field].is_array()) {
        info.answers = AnswerSet(j[field].get<std::vector<std::string>>());
        break;
      }
    }
    if (info.answers.empty()) throw DataError("SchemaError", where + ": no expanded, gold or answers list");
    out[j["question_id"].get<std::string>()] = std::move(info);
  }
  return out;
}

int do_score(const Settings& s, std::ostream& out) {
  const auto answers = load_answer_file(s.require("answers"));
  const fs::path pred_path = s.require("predictions");
  const Metric metric = metric_of(s);
  const NormalizationProfile profile = profile_of(s, metric);
  const double threshold = parse_real("f1_threshold", s.get_or("f1_threshold", "1.0"));

  ClientBundle bundle;
  if (metric == Metric::llm_judge) bundle = make_client(s);

  std::ifstream in(pred_path, std::ios::binary);
  if (!in) throw DataError("IoError", "cannot read " + pred_path.string());
  std::unique_ptr<std::ofstream> file;
  if (auto o = s.get("out"); o && !o->empty()) {
    if (fs::path(*o).has_parent_path()) fs::create_directories(fs::path(*o).parent_path());
    file = std::make_unique<std::ofstream>(*o, std::ios::binary | std::ios::trunc);
    if (!*file) throw DataError("IoError", "cannot write " + *o);
  }
  std::ostream& sink = file ? static_cast<std::ostream&>(*file) : out;

  std::size_t scored = 0, correct = 0, abstained = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    const std::string where = pred_path.string() + ":" + std::to_string(line_no);
    if (j.is_discarded() || !j.is_object() || !j.contains("question_id")) {
      throw DataError("MalformedLine", where + ": expected an object with question_id");
    }
    const std::string id = j["question_id"].get<std::string>();
    auto it = answers.find(id);
    if (it == answers.end()) throw DataError("UnresolvedQuestionId", where + ": no answers for " + id);
    std::string text;
    for (const char* field : {"prediction", "text", "answer"}) {
      if (j.contains(field) && j[field].is_string()) {
        text = j[field].get<std::string>();
        break;
      }
    }
    Verdict v;
    switch (metric) {
      case Metric::soft_em: v = soft_em(text, it->second.answers, profile); break;
      case Metric::hard_em: v = hard_em(text, it->second.answers, profile); break;
      case Metric::f1_threshold: v = f1_verdict(text, it->second.answers, profile, threshold); break;
      case Metric::llm_judge: {
        const std::string question = j.value("question", it->second.question);
        try {
          v = llm_judge(question, it->second.answers, text, *bundle.client,
                        s.get_or("judge_model", std::string(kDefaultJudgeModel)));
        } catch (const DataError& e) {
          if (e.kind() != "UnparseableJudgeResponse") throw;
          v.metric = Metric::llm_judge;
          v.abstain = true;
          v.detail = e.what();
        }
        break;
      }
    }
    ojson row{{"question_id", id}};
    if (j.contains("model_name")) row["model_name"] = j["model_name"];
    row["metric"] = std::string(to_string(v.metric));
    row["correct"] = v.correct;
    row["matched_answer"] = v.matched_answer ? ojson(*v.matched_answer) : ojson(nullptr);
    row["detail"] = v.detail ? ojson(*v.detail) : ojson(nullptr);
    row["abstain"] = v.abstain;
    sink << row.dump() << "\n";
    ++scored;
    if (v.abstain) ++abstained;
    else if (v.correct) ++correct;
  }
  if (file) {
    const double acc = scored - abstained ? static_cast<double>(correct) / static_cast<double>(scored - abstained) : 0.0;
    out << ojson{{"scored", scored}, {"correct", correct}, {"abstained", abstained}, {"accuracy", acc},
                 {"ledger", ledger_json(bundle.ledger->snapshot(), s)}}.dump()
        << "\n";
  }
  return 0;
}

int do_evaluate(const Settings& s, std::ostream& out) {
  const auto records = load_dataset(s.require("dataset"));
  const fs::path out_path = s.require("out");
  EvalOptions opts;
  opts.metric = metric_of(s);
  opts.profile = profile_of(s, opts.metric);
  opts.f1_threshold = parse_real("f1_threshold", s.get_or("f1_threshold", "1.0"));
  opts.judge_model = s.get_or("judge_model", std::string(kDefaultJudgeModel));

  std::optional<ExpandedIndex> expanded;
  if (auto p = s.get("expanded"); p && !p->empty()) expanded = index_expanded(load_expanded_sets(*p));
  ClientBundle bundle;
  if (opts.metric == Metric::llm_judge) {
    bundle = make_client(s);
    opts.judge_client = bundle.client.get();
  }
  const auto table = evaluate(records, expanded ? &*expanded : nullptr, opts);
  write_verdicts(out_path, table);
  write_run_config(sidecar_config_path(out_path), s);

  std::size_t correct = 0, abstained = 0;
  for (const auto& r : table.rows) {
    if (r.verdict.abstain) ++abstained;
    else if (r.verdict.correct) ++correct;
  }
  out << ojson{{"verdicts", table.rows.size()}, {"correct", correct}, {"abstained", abstained},
               {"metric", std::string(to_string(opts.metric))}, {"ledger", ledger_json(bundle.ledger->snapshot(), s)}}
             .dump()
      << "\n";
  return 0;
}

int do_reliability(const Settings& s, std::ostream& out) {
  const auto records = load_dataset(s.require("dataset"));
  const auto table = load_verdicts(s.require("verdicts"));
  Report report;
  report.questions = records.size();
  report.models = ordered_models(records);
  report.metrics.push_back(reliability(table, records, s.get_or("label", std::string(to_string(table.metric)))));
  const std::string text = render_report(report, ReportFormat::json);
  if (auto o = s.get("out"); o && !o->empty()) {
    std::ofstream f(*o, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("IoError", "cannot write " + *o);
    f << text;
    write_run_config(sidecar_config_path(*o), s);
    const auto& m = report.metrics.front();
    out << ojson{{"average", m.average ? ojson(*m.average) : ojson(nullptr)},
                 {"ranking_order_matches_human", m.surface.ranking_order_matches_human}}
               .dump()
        << "\n";
  } else {
    out << text;
  }
  return 0;
}

int do_report(const Settings& s, std::ostream& out) {
  const auto records = load_dataset(s.require("dataset"));
  const fs::path dir = s.require("out");

  std::vector<ReportFormat> formats;
  for (const auto& f : split_list(s.get_or("formats", "md,csv,json"))) {
    auto parsed = parse_report_format(f);
    if (!parsed) throw UsageError("InvalidOption", "unknown report format '" + f + "' (md, csv, json)");
    formats.push_back(*parsed);
  }
  std::vector<Metric> metrics;
  for (const auto& m : split_list(s.get_or("metrics", "soft-em,hard-em,f1"))) {
    auto parsed = parse_metric(m);
    if (!parsed) throw UsageError("InvalidOption", "unknown metric '" + m + "'");
    metrics.push_back(*parsed);
  }
  std::vector<ExpansionMethod> methods;
  for (const auto& m : split_list(s.get_or("expand_method", ""))) methods.push_back(parse_method(m, seed_of(s)));

  const bool needs_client = std::find(metrics.begin(), metrics.end(), Metric::llm_judge) != metrics.end() ||
                            std::any_of(methods.begin(), methods.end(), [](const auto& m) { return m.uses_llm(); });
  ClientBundle bundle;
  if (needs_client) bundle = make_client(s);

  Report report;
  report.questions = records.size();
  report.models = ordered_models(records);
  const double threshold = parse_real("f1_threshold", s.get_or("f1_threshold", "1.0"));

  for (Metric m : metrics) {
    EvalOptions opts;
    opts.metric = m;
    opts.profile = default_profile(m);
    if (m == Metric::soft_em) opts.profile = profile_of(s, m);
    opts.f1_threshold = threshold;
    opts.judge_client = bundle.client.get();
    opts.judge_model = s.get_or("judge_model", std::string(kDefaultJudgeModel));
    report.metrics.push_back(reliability(evaluate(records, nullptr, opts), records, std::string(to_string(m))));
  }

  EvalOptions soft;
  soft.metric = Metric::soft_em;
  soft.profile = profile_of(s, Metric::soft_em);
  for (const auto& path : split_list(s.get_or("expanded", ""))) {
    const auto sets = load_expanded_sets(path);
    const auto idx = index_expanded(sets);
    const std::string method = sets.empty() ? fs::path(path).stem().string() : sets.front().method.to_string();
    report.metrics.push_back(reliability(evaluate(records, &idx, soft), records, "soft-em + " + method));
  }
  if (!methods.empty()) {
    const auto questions = to_typed(records);
    ExpansionOptions eopts;
    eopts.bank = bank_of(s);
    eopts.model_name = s.get_or("model", std::string(kDefaultExpansionModel));
    for (const auto& method : methods) {
      const auto result = expand_dataset(questions, method, bundle.client.get(), eopts);
      if (!result.failures.empty()) {
        const auto& f = result.failures.front();
        throw Error(f.category, f.kind, fmt::format("{} of {} expansions failed; first: {}: {}", result.failures.size(),
                                                    questions.size(), f.question_id, f.message));
      }
      const auto idx = index_expanded(result.sets);
      report.metrics.push_back(reliability(evaluate(records, &idx, soft), records, "soft-em + " + method.to_string()));
    }
  }
  report.ledger = bundle.ledger->snapshot();

  const auto written = write_report(dir, report, formats);
  write_run_config(dir / "run_config.toml", s);
  ojson files = ojson::array();
  for (const auto& p : written) files.push_back(p.filename().string());
  out << ojson{{"report", files}, {"rows", report.metrics.size()}, {"ledger", ledger_json(*report.ledger, s)}}.dump()
      << "\n";
  return 0;
}

std::vector<json> read_prompt_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("IoError", "cannot read " + path.string());
  std::vector<json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("prompt") || !j["prompt"].is_string()) {
      throw DataError("MalformedLine", path.string() + ":" + std::to_string(line_no) + ": expected {\"prompt\": ...}");
    }
    out.push_back(std::move(j));
  }
  return out;
}

CompletionRequest request_from(const json& j, const Settings& s) {
  CompletionRequest req;
  req.prompt = j["prompt"].get<std::string>();
  req.model_name = j.value("model", s.get_or("model", std::string(kDefaultExpansionModel)));
  req.max_tokens = j.value("max_tokens", 200);
  req.temperature = j.value("temperature", 0.0);
  req.top_p = j.value("top_p", 1.0);
  return req;
}

int do_record(const Settings& s, std::ostream& out) {
  const auto prompts = read_prompt_lines(s.require("prompts"));
  const fs::path transcript = s.require("transcript");
  auto store = std::make_shared<TranscriptStore>(transcript);
  std::size_t added = 0, existing = 0, fetched = 0;
  std::unique_ptr<LlmClient> client;
  std::shared_ptr<UsageLedger> ledger = std::make_shared<UsageLedger>();
  const std::string stamp = build_timestamp();
  for (const auto& j : prompts) {
    const CompletionRequest req = request_from(j, s);
    const std::string hash = req.hash();
    if (store->find(hash)) {
      ++existing;
      continue;
    }
    if (j.contains("response") && j["response"].is_string()) {
      store->append({hash, req, j["response"].get<std::string>(), stamp, ClientMode::record, 0, 0}, true);
      ++added;
      continue;
    }
    if (!client) {
      ClientOptions opts;
      opts.mode = ClientMode::record;
      opts.max_in_flight = parse_count("max_in_flight", s.get_or("max_in_flight", "4"));
      opts.retry.max_attempts = static_cast<int>(parse_count("max_attempts", s.get_or("max_attempts", "5")));
      client = std::make_unique<LlmClient>(opts, std::make_shared<HttpTransport>(http_options_from_env()), store, ledger);
    }
    const Phase phase = j.value("phase", std::string("expansion")) == "evaluation" ? Phase::evaluation : Phase::expansion;
    client->complete(req, phase);
    ++fetched;
  }
  out << ojson{{"recorded", added}, {"fetched", fetched}, {"already_present", existing},
               {"transcript_entries", store->size()}, {"ledger", ledger_json(ledger->snapshot(), s)}}
             .dump()
      << "\n";
  return 0;
}

int do_replay(const Settings& s, std::ostream& out) {
  const auto prompts = read_prompt_lines(s.require("prompts"));
  ClientOptions opts;
  opts.mode = ClientMode::replay;
  auto store = std::make_shared<TranscriptStore>(fs::path(s.require("transcript")));
  LlmClient client(opts, nullptr, store, nullptr);
  std::unique_ptr<std::ofstream> file;
  if (auto o = s.get("out"); o && !o->empty()) {
    file = std::make_unique<std::ofstream>(*o, std::ios::binary | std::ios::trunc);
    if (!*file) throw DataError("IoError", "cannot write " + *o);
  }
  std::ostream& sink = file ? static_cast<std::ostream&>(*file) : out;
  for (const auto& j : prompts) {
    const auto outcome = client.complete(request_from(j, s), Phase::expansion);
    ojson row;
    if (j.contains("question_id")) row["question_id"] = j["question_id"];
    row["hash"] = outcome.hash;
    row["response"] = outcome.text;
    sink << row.dump() << "\n";
  }
  if (file) out << ojson{{"replayed", prompts.size()}}.dump() << "\n";
  return 0;
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage: return 2;
    case ErrorCategory::data: return 3;
    case ErrorCategory::network: return 4;
  }
  return 3;
}

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::data: return "data";
    case ErrorCategory::network: return "network";
  }
  return "data";
}

void report_error(std::ostream& err, std::string_view category, std::string_view kind, std::string_view message) {
  err << ojson{{"error", std::string(kind)}, {"category", std::string(category)}, {"message", std::string(message)}}.dump()
      << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entity-aware answer set expansion and QA evaluation", "entqa"};
  app.require_subcommand(1);
  app.fallthrough(false);
  std::string config_path;
  app.add_option("--config", config_path, "TOML-style key/value file with default settings");

  KvConfig config;
  std::map<std::string, Command> commands;
  auto add_command = [&](const std::string& name, const std::string& help) -> Command& {
    Command& c = commands[name];
    c.app = app.add_subcommand(name, help);
    c.settings = std::make_unique<Settings>(name, &config);
    return c;
  };
  auto add_client = [](Command& c) {
    add_value(c, "mode", "live, record or replay (default replay)");
    add_value(c, "transcript", "JSON-lines transcript used as cache and fixture store");
    add_value(c, "max_in_flight", "concurrent requests (default 4)");
    add_value(c, "max_attempts", "attempts per request before giving up (default 5)");
    add_value(c, "requests_per_second", "token-bucket rate limit, 0 for none");
    add_value(c, "pricing", "per-model pricing file for cost estimates");
  };

  {
    Command& c = add_command("type", "Assign an entity type to every question");
    add_value(c, "dataset", "canonical records or EVOUNA JSON");
    add_value(c, "out", "typed records (JSON-lines)");
    add_value(c, "types", "pre-computed {question_id, tag} lines used as the tagger");
    add_value(c, "overrides", "{question_id, tag} lines that win over any tagger");
    add_value(c, "sidecar", "command speaking the JSON-lines tagging protocol");
    add_value(c, "fallback", "use the rule typer for untagged questions (true/false)");
  }
  {
    Command& c = add_command("expand", "Expand gold answer sets");
    add_value(c, "dataset", "typed records");
    add_value(c, "method", "inst_zero, inst_random[:seed], inst_entity or rules");
    add_value(c, "seed", "seed for inst_random");
    add_value(c, "bank", "few-shot bank: nq or tq");
    add_value(c, "out", "expanded-set file (JSON-lines)");
    add_value(c, "model", "completion model name");
    add_value(c, "cap", "maximum rule variants per answer");
    add_value(c, "prompts_out", "with --dry-run, also write prompts as JSON-lines");
    add_flag(c, "dry_run", "print prompts and counts without calling a model");
    add_client(c);
  }
  {
    Command& c = add_command("score", "Score predictions against answer sets");
    add_value(c, "predictions", "{question_id, prediction} lines");
    add_value(c, "answers", "expanded sets, records or {question_id, answers} lines");
    add_value(c, "metric", "soft-em, hard-em, f1 or judge");
    add_value(c, "profile", "light or squad");
    add_value(c, "containment", "token or substring");
    add_value(c, "f1_threshold", "F1 needed to count as correct (default 1.0)");
    add_value(c, "judge_model", "model used by the judge metric");
    add_value(c, "out", "verdict lines; stdout when absent");
    add_client(c);
  }
  {
    Command& c = add_command("evaluate", "Score every (question, model) pair of a dataset");
    add_value(c, "dataset", "canonical records or EVOUNA JSON");
    add_value(c, "expanded", "expanded-set file replacing the original gold sets");
    add_value(c, "metric", "soft-em, hard-em, f1 or judge");
    add_value(c, "profile", "light or squad");
    add_value(c, "containment", "token or substring");
    add_value(c, "f1_threshold", "F1 needed to count as correct (default 1.0)");
    add_value(c, "judge_model", "model used by the judge metric");
    add_value(c, "out", "verdict table (JSON-lines)");
    add_client(c);
  }
  {
    Command& c = add_command("reliability", "Agreement of a verdict table with human labels");
    add_value(c, "dataset", "records the verdicts were computed on");
    add_value(c, "verdicts", "verdict table from evaluate");
    add_value(c, "label", "row label");
    add_value(c, "out", "JSON output; stdout when absent");
  }
  {
    Command& c = add_command("report", "Full comparison report in markdown, CSV and JSON");
    add_value(c, "dataset", "canonical records or EVOUNA JSON");
    add_value(c, "out", "output directory");
    add_value(c, "metrics", "comma list of baseline metrics (default soft-em,hard-em,f1)");
    add_value(c, "expanded", "comma list of expanded-set files scored with soft EM");
    add_value(c, "expand_method", "comma list of methods expanded in-process and scored with soft EM");
    add_value(c, "formats", "comma list of md, csv, json");
    add_value(c, "bank", "few-shot bank: nq or tq");
    add_value(c, "seed", "seed for inst_random");
    add_value(c, "model", "expansion model name");
    add_value(c, "judge_model", "model used by the judge metric");
    add_value(c, "profile", "soft EM normalization: light or squad");
    add_value(c, "containment", "soft EM containment: token or substring");
    add_value(c, "f1_threshold", "F1 needed to count as correct (default 1.0)");
    add_client(c);
  }
  {
    Command& c = add_command("record", "Add prompt/response pairs to a transcript");
    add_value(c, "prompts", "{prompt, response?, model?} lines; missing responses are fetched live");
    add_value(c, "transcript", "transcript file to append to");
    add_value(c, "model", "default model name");
    add_value(c, "max_in_flight", "concurrent requests (default 4)");
    add_value(c, "max_attempts", "attempts per request (default 5)");
    add_value(c, "pricing", "per-model pricing file for cost estimates");
  }
  {
    Command& c = add_command("replay", "Answer prompts from a transcript without network access");
    add_value(c, "prompts", "{prompt, model?} lines");
    add_value(c, "transcript", "transcript file");
    add_value(c, "model", "default model name");
    add_value(c, "out", "response lines; stdout when absent");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", "UsageError", e.what());
    return 2;
  }

  try {
    if (!config_path.empty()) config = load_kv_config(config_path);
    else if (const char* env = std::getenv("ENTQA_CONFIG")) config = load_kv_config(env);

    for (auto& [name, c] : commands) {
      if (!c.app->parsed()) continue;
      finalize(c);
      const Settings& s = *c.settings;
      if (name == "type") return do_type(s, out);
      if (name == "expand") return do_expand(s, out, err);
      if (name == "score") return do_score(s, out);
      if (name == "evaluate") return do_evaluate(s, out);
      if (name == "reliability") return do_reliability(s, out);
      if (name == "report") return do_report(s, out);
      if (name == "record") return do_record(s, out);
      if (name == "replay") return do_replay(s, out);
    }
    report_error(err, "usage", "UsageError", "no subcommand given");
    return 2;
  } catch (const Error& e) {
    report_error(err, category_name(e.category()), e.kind(), e.what());
    return exit_code(e.category());
  } catch (const fs::filesystem_error& e) {
    report_error(err, "data", "IoError", e.what());
    return 3;
  } catch (const std::exception& e) {
    report_error(err, "data", "InternalError", e.what());
    return 3;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace entqa::cli
