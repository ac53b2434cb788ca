#include "entqa/report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "entqa/error.hpp"
#include "json.hpp"

namespace entqa {
namespace {

using ojson = nlohmann::ordered_json;

constexpr std::array<EntityGroup, 3> kGroups = {EntityGroup::numeric, EntityGroup::non_numeric, EntityGroup::na};

std::string pct(std::optional<double> v) { return v ? fmt::format("{:.1f}", *v * 100.0) : "-"; }

std::string row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + c + " |";
  return out + "\n";
}

std::string rule(std::size_t label_cols, std::size_t value_cols) {
  std::string out = "|";
  for (std::size_t i = 0; i < label_cols; ++i) out += " --- |";
  for (std::size_t i = 0; i < value_cols; ++i) out += " ---: |";
  return out + "\n";
}

std::vector<RarityBucket> buckets_of(const Report& r) {
  std::vector<RarityBucket> out;
  if (!r.metrics.empty())
    for (const auto& row : r.metrics.front().rarity) out.push_back(row.bucket);
  if (out.empty()) out = default_rarity_buckets();
  return out;
}

std::string markdown(const Report& r) {
  std::string md = "# Evaluation report\n\n";
  md += fmt::format("Questions: {}. Models: {}.\n\n", r.questions, r.models.size());

  md += "## Reliability (% agreement with human verdicts)\n\n";
  {
    std::vector<std::string> head{"Metric"};
    head.insert(head.end(), r.models.begin(), r.models.end());
    head.push_back("Avg");
    md += row(head) + rule(1, r.models.size() + 1);
    for (const auto& m : r.metrics) {
      std::vector<std::string> cells{m.label};
      for (const auto& name : r.models) {
        auto it = m.per_model.find(name);
        cells.push_back(it == m.per_model.end() ? "-" : pct(it->second.value()));
      }
      cells.push_back(pct(m.average));
      md += row(cells);
    }
  }

  md += "\n## Reliability by entity group\n\n";
  md += row({"Metric", "Numeric", "Non-numeric", "N/A"}) + rule(1, 3);
  for (const auto& m : r.metrics) {
    std::vector<std::string> cells{m.label};
    for (auto g : kGroups) cells.push_back(pct(m.per_group[static_cast<std::size_t>(g)].value()));
    md += row(cells);
  }

  md += "\n## Reliability by answer rarity (relevant documents)\n\n";
  {
    const auto buckets = buckets_of(r);
    std::vector<std::string> head{"Metric"};
    for (const auto& b : buckets) head.push_back(b.label());
    md += row(head) + rule(1, buckets.size());
    if (!r.metrics.empty()) {
      std::vector<std::string> counts{"records"};
      for (const auto& rr : r.metrics.front().rarity) counts.push_back(std::to_string(rr.records));
      md += row(counts);
    }
    for (const auto& m : r.metrics) {
      std::vector<std::string> cells{m.label};
      for (const auto& rr : m.rarity) cells.push_back(pct(rr.agreement.value()));
      md += row(cells);
    }
  }

  md += "\n## Surface accuracy (% marked correct)\n\n";
  {
    std::vector<std::string> head{"Metric"};
    head.insert(head.end(), r.models.begin(), r.models.end());
    head.push_back("Ranking matches human");
    md += row(head) + rule(1, r.models.size() + 1);
    if (!r.metrics.empty()) {
      std::vector<std::string> cells{"human"};
      const auto& s = r.metrics.front().surface;
      for (const auto& name : r.models) {
        auto it = s.human_accuracy.find(name);
        cells.push_back(it == s.human_accuracy.end() ? "-" : pct(it->second));
      }
      cells.push_back("-");
      md += row(cells);
    }
    for (const auto& m : r.metrics) {
      std::vector<std::string> cells{m.label};
      for (const auto& name : r.models) {
        auto it = m.surface.metric_accuracy.find(name);
        cells.push_back(it == m.surface.metric_accuracy.end() ? "-" : pct(it->second));
      }
      cells.push_back(m.surface.ranking_order_matches_human ? "yes" : "no");
      md += row(cells);
    }
  }

  bool any_abstain = false;
  for (const auto& m : r.metrics) any_abstain = any_abstain || m.abstained > 0;
  if (any_abstain) {
    md += "\n## Abstentions (excluded from reliability)\n\n";
    md += row({"Metric", "Abstained"}) + rule(1, 1);
    for (const auto& m : r.metrics) md += row({m.label, std::to_string(m.abstained)});
  }

  md += "\n## LLM calls vs. number of evaluated models\n\n";
  md += row({"Models", "Judge-based", "Expansion-based"}) + rule(1, 2);
  for (const auto& p : calls_series(r.questions, r.models.size())) {
    md += row({std::to_string(p.models), std::to_string(p.judge_calls), std::to_string(p.expansion_calls)});
  }

  if (r.ledger) {
    md += "\n## Usage ledger\n\n";
    md += row({"Counter", "Value"}) + rule(1, 1);
    md += row({"expansion calls", std::to_string(r.ledger->expansion_calls)});
    md += row({"evaluation calls", std::to_string(r.ledger->evaluation_calls)});
    md += row({"prompt tokens", std::to_string(r.ledger->prompt_tokens)});
    md += row({"completion tokens", std::to_string(r.ledger->completion_tokens)});
  }
  return md;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

std::string csv_line(std::string_view section, std::string_view metric, std::string_view key, const Agreement* a,
                     const std::string& value) {
  std::string agree, total, abstained;
  if (a) {
    agree = std::to_string(a->agree);
    total = std::to_string(a->total);
    abstained = std::to_string(a->abstained);
  }
  return fmt::format("{},{},{},{},{},{},{}\n", csv_field(section), csv_field(metric), csv_field(key), agree, total,
                     abstained, value);
}

std::string csv(const Report& r) {
  std::string out = "section,metric,key,agree,total,abstained,value\n";
  for (const auto& m : r.metrics) {
    for (const auto& name : r.models) {
      auto it = m.per_model.find(name);
      if (it == m.per_model.end()) continue;
      out += csv_line("reliability", m.label, name, &it->second, pct(it->second.value()));
    }
    out += csv_line("reliability", m.label, "Avg", nullptr, pct(m.average));
  }
  for (const auto& m : r.metrics) {
    for (auto g : kGroups) {
      const Agreement& a = m.per_group[static_cast<std::size_t>(g)];
      out += csv_line("entity_group", m.label, to_string(g), &a, pct(a.value()));
    }
  }
  for (const auto& m : r.metrics) {
    for (const auto& rr : m.rarity) {
      out += csv_line("rarity", m.label, rr.bucket.label(), &rr.agreement, pct(rr.agreement.value()));
    }
  }
  if (!r.metrics.empty()) {
    for (const auto& rr : r.metrics.front().rarity) {
      out += csv_line("rarity_records", "", rr.bucket.label(), nullptr, std::to_string(rr.records));
    }
    const auto& human = r.metrics.front().surface.human_accuracy;
    for (const auto& name : r.models) {
      if (auto it = human.find(name); it != human.end()) out += csv_line("surface", "human", name, nullptr, pct(it->second));
    }
  }
  for (const auto& m : r.metrics) {
    for (const auto& name : r.models) {
      auto it = m.surface.metric_accuracy.find(name);
      if (it != m.surface.metric_accuracy.end()) out += csv_line("surface", m.label, name, nullptr, pct(it->second));
    }
    out += csv_line("surface", m.label, "ranking_matches_human", nullptr,
                    m.surface.ranking_order_matches_human ? "true" : "false");
  }
  for (const auto& p : calls_series(r.questions, r.models.size())) {
    out += csv_line("calls", "judge", std::to_string(p.models), nullptr, std::to_string(p.judge_calls));
    out += csv_line("calls", "expansion", std::to_string(p.models), nullptr, std::to_string(p.expansion_calls));
  }
  if (r.ledger) {
    out += csv_line("ledger", "", "expansion_calls", nullptr, std::to_string(r.ledger->expansion_calls));
    out += csv_line("ledger", "", "evaluation_calls", nullptr, std::to_string(r.ledger->evaluation_calls));
    out += csv_line("ledger", "", "prompt_tokens", nullptr, std::to_string(r.ledger->prompt_tokens));
    out += csv_line("ledger", "", "completion_tokens", nullptr, std::to_string(r.ledger->completion_tokens));
  }
  return out;
}

ojson agreement_json(const Agreement& a) {
  ojson j{{"agree", a.agree}, {"total", a.total}, {"abstained", a.abstained}};
  if (auto v = a.value()) j["reliability"] = *v;
  else j["reliability"] = nullptr;
  return j;
}

std::string json_text(const Report& r) {
  ojson root;
  root["questions"] = r.questions;
  root["models"] = r.models;
  ojson metrics = ojson::array();
  for (const auto& m : r.metrics) {
    ojson mj;
    mj["label"] = m.label;
    mj["metric"] = std::string(to_string(m.metric));
    ojson per_model = ojson::object();
    for (const auto& name : m.models) per_model[name] = agreement_json(m.per_model.at(name));
    mj["per_model"] = per_model;
    mj["average"] = m.average ? ojson(*m.average) : ojson(nullptr);
    ojson groups = ojson::object();
    for (auto g : kGroups) groups[std::string(to_string(g))] = agreement_json(m.per_group[static_cast<std::size_t>(g)]);
    mj["entity_groups"] = groups;
    ojson rarity = ojson::array();
    for (const auto& rr : m.rarity) {
      ojson b = agreement_json(rr.agreement);
      b["bucket"] = rr.bucket.label();
      b["records"] = rr.records;
      rarity.push_back(b);
    }
    mj["rarity"] = rarity;
    ojson surface;
    ojson acc = ojson::object();
    for (const auto& name : m.surface.models) acc[name] = m.surface.metric_accuracy.at(name);
    ojson hum = ojson::object();
    for (const auto& name : m.surface.models) hum[name] = m.surface.human_accuracy.at(name);
    surface["metric_accuracy"] = acc;
    surface["human_accuracy"] = hum;
    surface["metric_order"] = m.surface.metric_order;
    surface["human_order"] = m.surface.human_order;
    surface["ranking_order_matches_human"] = m.surface.ranking_order_matches_human;
    mj["surface_accuracy"] = surface;
    mj["abstained"] = m.abstained;
    metrics.push_back(mj);
  }
  root["metrics"] = metrics;
  ojson calls = ojson::array();
  for (const auto& p : calls_series(r.questions, r.models.size())) {
    calls.push_back(ojson{{"models", p.models}, {"judge_calls", p.judge_calls}, {"expansion_calls", p.expansion_calls}});
  }
  root["calls_series"] = calls;
  if (r.ledger) {
    root["ledger"] = ojson{{"expansion_calls", r.ledger->expansion_calls},
                           {"evaluation_calls", r.ledger->evaluation_calls},
                           {"prompt_tokens", r.ledger->prompt_tokens},
                           {"completion_tokens", r.ledger->completion_tokens}};
  }
  return root.dump(2) + "\n";
}

}  // namespace

std::string_view extension_for(ReportFormat f) noexcept {
  switch (f) {
    case ReportFormat::markdown: return "md";
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
  }
  return "md";
}

std::optional<ReportFormat> parse_report_format(std::string_view s) noexcept {
  if (s == "md" || s == "markdown") return ReportFormat::markdown;
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  return std::nullopt;
}

std::vector<CallsPoint> calls_series(std::size_t questions, std::size_t models) {
  std::vector<CallsPoint> out;
  const auto n = static_cast<std::int64_t>(questions);
  for (std::size_t m = 1; m <= models; ++m) out.push_back({m, static_cast<std::int64_t>(m) * n, n});
  return out;
}

std::string render_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::markdown: return markdown(report);
    case ReportFormat::csv: return csv(report);
    case ReportFormat::json: return json_text(report);
  }
  return {};
}

std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir, const Report& report,
                                                const std::vector<ReportFormat>& formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("IoError", "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (auto f : formats) {
    const auto path = dir / ("report." + std::string(extension_for(f)));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("IoError", "cannot write " + path.string());
    out << render_report(report, f);
    if (!out) throw DataError("IoError", "write failed for " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace entqa
