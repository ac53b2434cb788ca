#include "doctest.h"
#include "entqa/error.hpp"
#include "entqa/harness.hpp"
#include "support.hpp"

using namespace entqa;

namespace {

std::string error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

EvalRecord record(std::string id, std::vector<std::string> gold, std::vector<ModelPrediction> preds,
                  EntityType t = EntityType::NA, std::optional<std::int64_t> rarity = std::nullopt) {
  EvalRecord r;
  r.question_id = std::move(id);
  r.question = "question " + r.question_id;
  r.gold = AnswerSet(gold);
  r.entity_type = t;
  r.rarity_docs = rarity;
  r.predictions = std::move(preds);
  return r;
}

}  // namespace

TEST_CASE("EVOUNA import") {
  testing::TempDir dir;
  testing::write_file(dir / "nq.json", R"([
    {"question": "who played lionel", "golden_answer": "Michael Evans/Mike Evans",
     "answer_fid": "Mike Evans", "judge_fid": true,
     "answer_gpt4": "It was Mike Evans.", "judge_gpt4": "correct", "rarity_docs": 12},
    {"question": "how long is son of god", "golden_answer": ["138 minutes"],
     "answer_fid": "3 hours", "judge_fid": 0, "entity_type": "TIME"}
  ])");
  auto recs = import_evouna(dir / "nq.json");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].question_id == "q-0");
  CHECK(recs[1].question_id == "q-1");
  CHECK(recs[0].gold.texts() == std::vector<std::string>{"Michael Evans", "Mike Evans"});
  REQUIRE(recs[0].predictions.size() == 2);
  CHECK(recs[0].predictions[0].model_name == "FiD");
  CHECK(recs[0].predictions[1].model_name == "ChatGPT4");
  CHECK(recs[0].predictions[1].human_label);
  CHECK(recs[0].rarity_docs == 12);
  CHECK_FALSE(recs[1].predictions[0].human_label);
  CHECK(recs[1].entity_type == EntityType::TIME);
  CHECK(import_evouna(dir / "nq.json", "nq")[1].question_id == "nq-1");

  // load_dataset sniffs the format
  CHECK(load_dataset(dir / "nq.json").size() == 2);

  testing::write_file(dir / "nolabel.jsonl",
                      "{\"question\":\"q\",\"golden_answer\":\"a\",\"answer_fid\":\"a\"}\n");
  CHECK(error_kind([&] { import_evouna(dir / "nolabel.jsonl"); }) == "MissingHumanLabel");
  testing::write_file(dir / "nogold.jsonl", "{\"question\":\"q\",\"answer_fid\":\"a\",\"judge_fid\":true}\n");
  CHECK(error_kind([&] { import_evouna(dir / "nogold.jsonl"); }) == "SchemaError");
  testing::write_file(dir / "badlabel.jsonl",
                      "{\"question\":\"q\",\"golden_answer\":\"a\",\"answer_fid\":\"a\",\"judge_fid\":\"maybe\"}\n");
  CHECK(error_kind([&] { import_evouna(dir / "badlabel.jsonl"); }) == "SchemaError");
}

TEST_CASE("canonical records round trip") {
  testing::TempDir dir;
  std::vector<EvalRecord> recs{
      record("a", {"13"}, {{"FiD", "thirteen", true}, {"zeta", "ten", false}}, EntityType::CARDINAL, 0),
      record("b", {"Paris"}, {{"FiD", "Paris", true}})};
  write_records(dir / "r.jsonl", recs);
  auto back = load_records(dir / "r.jsonl");
  REQUIRE(back.size() == 2);
  CHECK(to_jsonl_line(back[0]) == to_jsonl_line(recs[0]));
  CHECK(back[0].rarity_docs == 0);
  CHECK(back[0].entity_type == EntityType::CARDINAL);
  CHECK(load_dataset(dir / "r.jsonl").size() == 2);
  CHECK(ordered_models(recs) == std::vector<std::string>{"FiD", "zeta"});

  testing::write_file(dir / "x.jsonl",
                      "{\"question_id\":\"x\",\"gold\":[\"a\"],\"predictions\":[{\"model_name\":\"m\",\"text\":\"a\"}]}\n");
  CHECK(error_kind([&] { load_records(dir / "x.jsonl"); }) == "MissingHumanLabel");
}

TEST_CASE("evaluate with original and expanded sets") {
  std::vector<EvalRecord> recs{record("a", {"13"}, {{"m1", "There are thirteen episodes", true}}),
                               record("b", {"Atlanta, Georgia"}, {{"m1", "Atlanta, GA", true}})};
  EvalOptions opts;
  auto plain = evaluate(recs, nullptr, opts);
  REQUIRE(plain.rows.size() == 2);
  CHECK_FALSE(plain.rows[0].verdict.correct);
  CHECK(plain.rows[0].human_label);

  ExpandedIndex idx;
  idx["a"] = AnswerSet({"13", "thirteen"});
  idx["b"] = AnswerSet({"Atlanta, Georgia", "Atlanta, GA"});
  auto expanded = evaluate(recs, &idx, opts);
  CHECK(expanded.rows[0].verdict.correct);
  CHECK(expanded.rows[1].verdict.matched_answer == "Atlanta, GA");

  idx.erase("b");
  CHECK(error_kind([&] { evaluate(recs, &idx, opts); }) == "UnresolvedQuestionId");
}

TEST_CASE("judge verdicts abstain on unreadable output") {
  std::vector<EvalRecord> recs{record("a", {"Zeus"}, {{"m1", "Atom", true}, {"m2", "Zeus", true}})};
  auto t = std::make_shared<testing::MockTransport>([](const CompletionRequest& r, int) -> Completion {
    return {r.prompt.find("Candidate answer: Atom") != std::string::npos ? "I am not sure" : "Yes", 1, 1};
  });
  LlmClient client(testing::quick_options(ClientMode::live), t, nullptr, nullptr);
  EvalOptions opts;
  opts.metric = Metric::llm_judge;
  opts.judge_client = &client;
  auto table = evaluate(recs, nullptr, opts);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].verdict.abstain);
  CHECK(table.rows[1].verdict.correct);
  auto rep = reliability(table, recs);
  CHECK(rep.abstained == 1);
  CHECK(rep.per_model.at("m1").total == 0);
  CHECK(rep.per_model.at("m2").value() == 1.0);

  EvalOptions no_client;
  no_client.metric = Metric::llm_judge;
  CHECK_THROWS_AS(evaluate(recs, nullptr, no_client), UsageError);
}

TEST_CASE("verdict tables round trip") {
  testing::TempDir dir;
  std::vector<EvalRecord> recs{record("a", {"x"}, {{"m1", "x", true}, {"m2", "y", false}})};
  auto table = evaluate(recs, nullptr, {});
  write_verdicts(dir / "v.jsonl", table);
  auto back = load_verdicts(dir / "v.jsonl");
  REQUIRE(back.rows.size() == 2);
  CHECK(back.metric == Metric::soft_em);
  CHECK(to_jsonl_line(back.rows[0]) == to_jsonl_line(table.rows[0]));

  auto text = testing::read_file(dir / "v.jsonl");
  const auto pos = text.rfind("\"soft-em\"");
  text.replace(pos, 9, "\"hard-em\"");
  testing::write_file(dir / "mixed.jsonl", text);
  CHECK(error_kind([&] { load_verdicts(dir / "mixed.jsonl"); }) == "MixedMetrics");
}

TEST_CASE("reliability breakdowns") {
  // m1 agrees on 3 of 4, m2 on 4 of 4.
  std::vector<EvalRecord> recs{
      record("a", {"13"}, {{"m1", "13", true}, {"m2", "13", true}}, EntityType::CARDINAL, 0),
      record("b", {"Paris"}, {{"m1", "Paris", false}, {"m2", "Rome", false}}, EntityType::GPE, 5),
      record("c", {"x"}, {{"m1", "y", false}, {"m2", "x", true}}, EntityType::NA, 5000),
      record("d", {"z"}, {{"m1", "z", true}, {"m2", "q", false}}, EntityType::NA)};
  auto table = evaluate(recs, nullptr, {});
  auto rep = reliability(table, recs, "soft-em");
  CHECK(rep.label == "soft-em");
  CHECK(rep.per_model.at("m1").agree == 3);
  CHECK(rep.per_model.at("m1").total == 4);
  CHECK(rep.per_model.at("m2").agree == 4);
  CHECK(rep.average == doctest::Approx(0.875));
  CHECK(rep.per_group[static_cast<std::size_t>(EntityGroup::numeric)].total == 2);
  CHECK(rep.per_group[static_cast<std::size_t>(EntityGroup::non_numeric)].agree == 1);
  CHECK(rep.per_group[static_cast<std::size_t>(EntityGroup::na)].agree == 4);

  REQUIRE(rep.rarity.size() == 5);
  CHECK(rep.rarity[0].bucket.label() == "0");
  CHECK(rep.rarity[0].records == 1);
  CHECK(rep.rarity[1].records == 1);
  CHECK(rep.rarity[4].bucket.label() == ">1000");
  CHECK(rep.rarity[4].records == 1);

  // metric: m1 3/4, m2 2/4; human: m1 2/4, m2 2/4, tie broken by name
  CHECK(rep.surface.metric_accuracy.at("m1") == 0.75);
  CHECK(rep.surface.metric_accuracy.at("m2") == 0.5);
  CHECK(rep.surface.human_accuracy.at("m2") == 0.5);
  CHECK(rep.surface.ranking_order_matches_human);
}

TEST_CASE("rarity bucket edges") {
  auto b = default_rarity_buckets();
  REQUIRE(b.size() == 5);
  CHECK(b[0].contains(0));
  CHECK_FALSE(b[0].contains(1));
  CHECK(b[1].contains(10));
  CHECK(b[2].contains(11));
  CHECK(b[3].contains(1000));
  CHECK(b[4].contains(1001));
  CHECK(b[2].label() == "11-100");
}
