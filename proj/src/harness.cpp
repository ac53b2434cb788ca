#include "entqa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "entqa/error.hpp"
#include "json.hpp"

namespace entqa {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("IoError", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim_copy(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Items of a JSON array file or of a JSON-lines file.
std::vector<json> read_items(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<json> items;
  if (first == std::string::npos) return items;
  if (text[first] == '[') {
    json all = json::parse(text, nullptr, false);
    if (all.is_discarded() || !all.is_array()) throw DataError("SchemaError", path.string() + ": invalid JSON array");
    for (auto& item : all) items.push_back(std::move(item));
    return items;
  }
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_copy(line).empty()) continue;
    json item = json::parse(line, nullptr, false);
    if (item.is_discarded()) {
      throw DataError("MalformedLine", path.string() + ":" + std::to_string(line_no) + ": not valid JSON");
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::optional<bool> judgement(const json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) {
    const auto n = v.get<std::int64_t>();
    if (n == 0 || n == 1) return n == 1;
  }
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "correct" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "incorrect" || s == "0" || s == "no") return false;
  }
  return std::nullopt;
}

std::optional<std::int64_t> rarity_of(const json& item, const std::string& where) {
  if (!item.contains("rarity_docs") || item["rarity_docs"].is_null()) return std::nullopt;
  const auto& v = item["rarity_docs"];
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw DataError("SchemaError", where + ": rarity_docs must be a non-negative integer");
  }
  return v.get<std::int64_t>();
}

EntityType entity_of(const json& item, const std::string& where) {
  if (!item.contains("entity_type") || item["entity_type"].is_null()) return EntityType::NA;
  if (!item["entity_type"].is_string()) throw DataError("SchemaError", where + ": entity_type must be a string");
  auto t = parse_entity_type(item["entity_type"].get<std::string>());
  if (!t) throw DataError("SchemaError", where + ": unknown entity_type " + item["entity_type"].get<std::string>());
  return *t;
}

std::size_t model_rank(const std::string& name) {
  for (std::size_t i = 0; i < kEvounaModels.size(); ++i) {
    if (kEvounaModels[i].second == name) return i;
  }
  return kEvounaModels.size();
}

bool model_less(const std::string& a, const std::string& b) {
  const auto ra = model_rank(a), rb = model_rank(b);
  return ra != rb ? ra < rb : a < b;
}

// Descending by count/total, compared exactly; ties by name.
std::vector<std::string> rank_models(const std::vector<std::string>& models,
                                     const std::map<std::string, std::pair<std::int64_t, std::int64_t>>& frac) {
  std::vector<std::string> out = models;
  std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    const auto [ca, ta] = frac.at(a);
    const auto [cb, tb] = frac.at(b);
    const __int128 lhs = static_cast<__int128>(ca) * (tb ? tb : 1);
    const __int128 rhs = static_cast<__int128>(cb) * (ta ? ta : 1);
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });
  return out;
}

}  // namespace

// --- import -------------------------------------------------------------------

std::vector<EvalRecord> import_evouna(const std::filesystem::path& path, std::string_view id_prefix) {
  const auto items = read_items(path);
  std::vector<EvalRecord> records;
  records.reserve(items.size());
  for (std::size_t idx = 0; idx < items.size(); ++idx) {
    const json& item = items[idx];
    const std::string where = path.string() + " item " + std::to_string(idx);
    if (!item.is_object()) throw DataError("SchemaError", where + ": expected an object");

    EvalRecord r;
    if (item.contains("question_id") && item["question_id"].is_string()) {
      r.question_id = item["question_id"].get<std::string>();
    } else {
      r.question_id = fmt::format("{}-{}", id_prefix, idx);
    }
    if (!item.contains("question") || !item["question"].is_string()) {
      throw DataError("SchemaError", where + ": missing string field 'question'");
    }
    r.question = item["question"].get<std::string>();

    if (!item.contains("golden_answer")) throw DataError("SchemaError", where + ": missing field 'golden_answer'");
    const json& gold = item["golden_answer"];
    std::vector<std::string> golds;
    if (gold.is_string()) {
      std::string s = gold.get<std::string>();
      std::size_t start = 0;
      for (;;) {
        const auto pos = s.find('/', start);
        golds.push_back(trim_copy(std::string_view(s).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
    } else if (gold.is_array()) {
      for (const auto& g : gold) {
        if (!g.is_string()) throw DataError("SchemaError", where + ": golden_answer entries must be strings");
        golds.push_back(g.get<std::string>());
      }
    } else {
      throw DataError("SchemaError", where + ": golden_answer must be a string or a list");
    }
    r.gold = AnswerSet(golds);
    if (r.gold.empty()) throw DataError("SchemaError", where + ": no usable gold answers");

    for (const auto& [suffix, model] : kEvounaModels) {
      const std::string answer_key = "answer_" + std::string(suffix);
      const std::string judge_key = "judge_" + std::string(suffix);
      if (!item.contains(answer_key)) continue;
      const json& answer = item[answer_key];
      if (!answer.is_string() && !answer.is_null()) {
        throw DataError("SchemaError", where + ": " + answer_key + " must be a string");
      }
      if (!item.contains(judge_key) || item[judge_key].is_null()) {
        throw DataError("MissingHumanLabel", "question " + r.question_id + ", model " + std::string(model));
      }
      auto label = judgement(item[judge_key]);
      if (!label) throw DataError("SchemaError", where + ": unreadable " + judge_key);
      r.predictions.push_back({std::string(model), answer.is_string() ? answer.get<std::string>() : "", *label});
    }
    if (r.predictions.empty()) throw DataError("SchemaError", where + ": no answer_<model> fields");
    r.rarity_docs = rarity_of(item, where);
    r.entity_type = entity_of(item, where);
    records.push_back(std::move(r));
  }
  return records;
}

// --- canonical records ------------------------------------------------------------

std::string to_jsonl_line(const EvalRecord& r) {
  ojson preds = ojson::array();
  for (const auto& p : r.predictions) {
    preds.push_back(ojson{{"model_name", p.model_name}, {"text", p.text}, {"human_label", p.human_label}});
  }
  ojson j{{"question_id", r.question_id},
          {"question", r.question},
          {"gold", r.gold.texts()},
          {"entity_type", std::string(to_string(r.entity_type))}};
  if (r.rarity_docs) j["rarity_docs"] = *r.rarity_docs;
  j["predictions"] = std::move(preds);
  return j.dump();
}

EvalRecord record_from_json_line(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw DataError("MalformedLine", "record is not a JSON object");
  const std::string where = "record " + j.value("question_id", std::string("?"));
  try {
    EvalRecord r;
    r.question_id = j.at("question_id").get<std::string>();
    r.question = j.value("question", std::string());
    r.gold = AnswerSet(j.at("gold").get<std::vector<std::string>>());
    r.entity_type = entity_of(j, where);
    r.rarity_docs = rarity_of(j, where);
    for (const auto& p : j.at("predictions")) {
      if (!p.contains("human_label") || p["human_label"].is_null()) {
        throw DataError("MissingHumanLabel",
                        "question " + r.question_id + ", model " + p.value("model_name", std::string("?")));
      }
      auto label = judgement(p["human_label"]);
      if (!label) throw DataError("SchemaError", where + ": unreadable human_label");
      r.predictions.push_back({p.at("model_name").get<std::string>(), p.value("text", std::string()), *label});
    }
    if (r.gold.empty()) throw DataError("SchemaError", where + ": empty gold set");
    if (r.predictions.empty()) throw DataError("SchemaError", where + ": no predictions");
    return r;
  } catch (const json::exception& e) {
    throw DataError("SchemaError", where + ": " + e.what());
  }
}

void write_records(const std::filesystem::path& path, std::span<const EvalRecord> records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("IoError", "cannot write " + path.string());
  for (const auto& r : records) out << to_jsonl_line(r) << '\n';
}

std::vector<EvalRecord> load_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("IoError", "cannot read " + path.string());
  std::vector<EvalRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_copy(line).empty()) continue;
    try {
      out.push_back(record_from_json_line(line));
    } catch (const DataError& e) {
      throw DataError(e.kind(), path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<EvalRecord> load_dataset(const std::filesystem::path& path) {
  const auto items = read_items(path);
  if (!items.empty() && items.front().is_object() && items.front().contains("golden_answer")) {
    return import_evouna(path);
  }
  return load_records(path);
}

std::vector<UntypedQuestion> to_untyped(std::span<const EvalRecord> records) {
  std::vector<UntypedQuestion> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.question_id, r.question, r.gold.texts()});
  return out;
}

std::vector<TypedQuestion> to_typed(std::span<const EvalRecord> records) {
  std::vector<TypedQuestion> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.question_id, r.question, r.gold, r.entity_type, TypeSource::external});
  return out;
}

std::vector<std::string> ordered_models(std::span<const EvalRecord> records) {
  std::vector<std::string> out;
  for (const auto& r : records)
    for (const auto& p : r.predictions)
      if (std::find(out.begin(), out.end(), p.model_name) == out.end()) out.push_back(p.model_name);
  std::sort(out.begin(), out.end(), model_less);
  return out;
}

ExpandedIndex index_expanded(std::span<const ExpandedAnswerSet> sets) {
  ExpandedIndex idx;
  for (const auto& s : sets) idx.insert_or_assign(s.question_id, s.expanded);
  return idx;
}

// --- evaluation -------------------------------------------------------------------

VerdictTable evaluate(std::span<const EvalRecord> records, const ExpandedIndex* expanded, const EvalOptions& options) {
  VerdictTable table;
  table.metric = options.metric;
  const NormalizationProfile profile = options.profile.value_or(default_profile(options.metric));

  std::vector<const AnswerSet*> gold(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    gold[i] = &records[i].gold;
    if (expanded) {
      auto it = expanded->find(records[i].question_id);
      if (it == expanded->end()) {
        throw DataError("UnresolvedQuestionId", "no expanded set for question " + records[i].question_id);
      }
      gold[i] = &it->second;
    }
  }

  struct Task {
    std::size_t record;
    std::size_t prediction;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < records.size(); ++i)
    for (std::size_t j = 0; j < records[i].predictions.size(); ++j) tasks.push_back({i, j});
  table.rows.resize(tasks.size());

  auto score = [&](const Task& t) {
    const EvalRecord& r = records[t.record];
    const ModelPrediction& p = r.predictions[t.prediction];
    VerdictRow row{r.question_id, p.model_name, p.human_label, {}};
    switch (options.metric) {
      case Metric::soft_em: row.verdict = soft_em(p.text, *gold[t.record], profile); break;
      case Metric::hard_em: row.verdict = hard_em(p.text, *gold[t.record], profile); break;
      case Metric::f1_threshold:
        row.verdict = f1_verdict(p.text, *gold[t.record], profile, options.f1_threshold);
        break;
      case Metric::llm_judge:
        try {
          row.verdict = llm_judge(r.question, *gold[t.record], p.text, *options.judge_client, options.judge_model);
        } catch (const DataError& e) {
          if (e.kind() != "UnparseableJudgeResponse") throw;
          row.verdict.metric = Metric::llm_judge;
          row.verdict.abstain = true;
          row.verdict.detail = e.what();
        }
        break;
    }
    return row;
  };

  if (options.metric != Metric::llm_judge) {
    for (std::size_t k = 0; k < tasks.size(); ++k) table.rows[k] = score(tasks[k]);
    return table;
  }

  if (!options.judge_client) throw UsageError("MissingClient", "judge metric needs a configured client");
  const std::size_t workers = std::max<std::size_t>(
      1, std::min(options.workers ? options.workers : options.judge_client->max_in_flight(), tasks.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        table.rows[k] = score(tasks[k]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next = tasks.size();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return table;
}

std::string to_jsonl_line(const VerdictRow& row) {
  const Verdict& v = row.verdict;
  ojson j{{"question_id", row.question_id},
          {"model_name", row.model_name},
          {"human_label", row.human_label},
          {"metric", std::string(to_string(v.metric))},
          {"correct", v.correct},
          {"matched_answer", v.matched_answer ? ojson(*v.matched_answer) : ojson(nullptr)},
          {"detail", v.detail ? ojson(*v.detail) : ojson(nullptr)},
          {"abstain", v.abstain}};
  return j.dump();
}

void write_verdicts(const std::filesystem::path& path, const VerdictTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("IoError", "cannot write " + path.string());
  for (const auto& row : table.rows) out << to_jsonl_line(row) << '\n';
}

VerdictTable load_verdicts(const std::filesystem::path& path) {
  VerdictTable table;
  bool first = true;
  std::size_t line_no = 0;
  for (const auto& j : read_items(path)) {
    ++line_no;
    try {
      VerdictRow row;
      row.question_id = j.at("question_id").get<std::string>();
      row.model_name = j.at("model_name").get<std::string>();
      row.human_label = j.at("human_label").get<bool>();
      auto metric = parse_metric(j.at("metric").get<std::string>());
      if (!metric) throw DataError("MalformedLine", "unknown metric");
      row.verdict.metric = *metric;
      row.verdict.correct = j.at("correct").get<bool>();
      if (j.contains("matched_answer") && j["matched_answer"].is_string())
        row.verdict.matched_answer = j["matched_answer"].get<std::string>();
      if (j.contains("detail") && j["detail"].is_string()) row.verdict.detail = j["detail"].get<std::string>();
      row.verdict.abstain = j.value("abstain", false);
      if (first) table.metric = *metric;
      else if (table.metric != *metric) throw DataError("MixedMetrics", path.string() + ": rows use different metrics");
      first = false;
      table.rows.push_back(std::move(row));
    } catch (const json::exception& e) {
      throw DataError("MalformedLine", path.string() + " row " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

// --- reliability --------------------------------------------------------------------

std::optional<double> Agreement::value() const noexcept {
  if (total == 0) return std::nullopt;
  return static_cast<double>(agree) / static_cast<double>(total);
}

std::string RarityBucket::label() const {
  if (!hi) return fmt::format(">{}", lo - 1);
  if (*hi == lo) return std::to_string(lo);
  return fmt::format("{}-{}", lo, *hi);
}

std::vector<RarityBucket> default_rarity_buckets() {
  return {{0, 0}, {1, 10}, {11, 100}, {101, 1000}, {1001, std::nullopt}};
}

SurfaceAccuracy surface_accuracy(const VerdictTable& verdicts) {
  SurfaceAccuracy out;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> metric, human;
  for (const auto& row : verdicts.rows) {
    if (std::find(out.models.begin(), out.models.end(), row.model_name) == out.models.end()) {
      out.models.push_back(row.model_name);
    }
    auto& h = human[row.model_name];
    h.first += row.human_label ? 1 : 0;
    ++h.second;
    auto& m = metric[row.model_name];
    if (!row.verdict.abstain) {
      m.first += row.verdict.correct ? 1 : 0;
      ++m.second;
    }
  }
  std::sort(out.models.begin(), out.models.end(), model_less);
  for (const auto& name : out.models) {
    const auto [mc, mt] = metric[name];
    const auto [hc, ht] = human[name];
    out.metric_accuracy[name] = mt ? static_cast<double>(mc) / static_cast<double>(mt) : 0.0;
    out.human_accuracy[name] = ht ? static_cast<double>(hc) / static_cast<double>(ht) : 0.0;
  }
  out.metric_order = rank_models(out.models, metric);
  out.human_order = rank_models(out.models, human);
  out.ranking_order_matches_human = out.metric_order == out.human_order;
  return out;
}

ReliabilityReport reliability(const VerdictTable& verdicts, std::span<const EvalRecord> records, std::string label,
                              const std::vector<RarityBucket>& buckets) {
  ReliabilityReport rep;
  rep.label = label.empty() ? std::string(to_string(verdicts.metric)) : std::move(label);
  rep.metric = verdicts.metric;

  std::unordered_map<std::string, const EvalRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.question_id, &r);

  std::unordered_map<std::string, Agreement> per_record;
  for (const auto& row : verdicts.rows) {
    auto it = by_id.find(row.question_id);
    if (it == by_id.end()) throw DataError("UnresolvedQuestionId", "verdict for unknown question " + row.question_id);
    const EvalRecord& r = *it->second;

    Agreement& model = rep.per_model[row.model_name];
    Agreement& group = rep.per_group[static_cast<std::size_t>(group_of(r.entity_type))];
    Agreement& rec = per_record[row.question_id];
    if (row.verdict.abstain) {
      ++model.abstained;
      ++group.abstained;
      ++rec.abstained;
      ++rep.abstained;
      continue;
    }
    const int agree = row.verdict.correct == row.human_label ? 1 : 0;
    for (Agreement* a : {&model, &group, &rec}) {
      a->agree += agree;
      ++a->total;
    }
  }

  for (const auto& [name, _] : rep.per_model) rep.models.push_back(name);
  std::sort(rep.models.begin(), rep.models.end(), model_less);

  double sum = 0.0;
  int counted = 0;
  for (const auto& name : rep.models) {
    if (auto v = rep.per_model[name].value()) {
      sum += *v;
      ++counted;
    }
  }
  if (counted) rep.average = sum / counted;

  for (const auto& b : buckets) rep.rarity.push_back({b, 0, {}});
  for (const auto& r : records) {
    if (!r.rarity_docs) continue;
    for (auto& row : rep.rarity) {
      if (!row.bucket.contains(*r.rarity_docs)) continue;
      ++row.records;
      if (auto it = per_record.find(r.question_id); it != per_record.end()) {
        row.agreement.agree += it->second.agree;
        row.agreement.total += it->second.total;
        row.agreement.abstained += it->second.abstained;
      }
      break;
    }
  }

  rep.surface = surface_accuracy(verdicts);
  return rep;
}

}  // namespace entqa
