#include <set>

#include "doctest.h"
#include "entqa/error.hpp"
#include "entqa/expansion.hpp"
#include "support.hpp"

using namespace entqa;

TEST_CASE("builtin banks are complete") {
  for (auto d : {DatasetId::nq, DatasetId::tq}) {
    const auto& bank = builtin_bank(d);
    for (std::size_t k = 0; k < kBankKeyCount; ++k) {
      const auto& group = bank.groups[k];
      CHECK(group.size() == kExemplarsPerBank);
      for (const auto& ex : group) {
        CHECK_FALSE(ex.question.empty());
        CHECK_FALSE(ex.expanded_answers.empty());
      }
    }
  }
  const auto& date = builtin_bank(DatasetId::nq).group(BankKey::DATE);
  CHECK(date.front().question == "when was ye rishta kya kehlata hai started");
  CHECK(date.front().expanded_answers.front() == "January 12, 2009");
  CHECK(builtin_bank(DatasetId::nq).group(BankKey::MONEY).front().expanded_answers.front() == "$1.55 billion");
  CHECK(builtin_bank(DatasetId::nq).group(BankKey::PERCENT).front().expanded_answers.front() == "42%");
}

TEST_CASE("entity routing") {
  CHECK(bank_key_for(EntityType::PERSON) == BankKey::PERSON);
  CHECK(bank_key_for(EntityType::NORP) == BankKey::other);
  CHECK(bank_key_for(EntityType::ORDINAL) == BankKey::unknown);
  CHECK(bank_key_for(EntityType::NA) == BankKey::unknown);
}

TEST_CASE("method names") {
  CHECK(parse_method("inst_entity").kind == MethodKind::inst_entity);
  CHECK(parse_method("inst-zero").kind == MethodKind::inst_zero);
  auto r = parse_method("inst_random:7");
  CHECK(r.kind == MethodKind::inst_random);
  CHECK(r.seed == 7);
  CHECK(r.to_string() == "inst_random:7");
  CHECK(parse_method("inst_random", 3).seed == 3);
  CHECK_FALSE(parse_method("rules").uses_llm());
  CHECK_THROWS_AS(parse_method("magic"), UsageError);
}

TEST_CASE("prompt layout") {
  const auto& bank = builtin_bank(DatasetId::nq);
  const AnswerSet gold({"Michael Evans"});
  const auto zero = build_prompt({MethodKind::inst_zero, 0}, EntityType::PERSON, "who played lionel", gold, bank);
  CHECK(zero == std::string(kExpansionInstruction) + "\n\nQuestion: who played lionel\nGold Answers: Michael Evans");

  const auto entity = build_prompt({MethodKind::inst_entity, 0}, EntityType::PERSON, "who played lionel", gold, bank);
  const std::string first = "\n\nQuestion: who plays the bad guy in fifth element\nGold Answers: Gary Oldman/";
  CHECK(entity.find(first) == kExpansionInstruction.size());
  CHECK(entity.size() > zero.size());
  CHECK(entity.substr(entity.size() - 50) == zero.substr(zero.size() - 50));

  CHECK(join_answers(std::vector<std::string>{"AC/DC", "x"}) == "AC\\/DC/x");
  CHECK_THROWS_AS(build_prompt({MethodKind::inst_zero, 0}, EntityType::NA, "q", AnswerSet{}, bank), DataError);
}

TEST_CASE("exemplar selection") {
  const auto& bank = builtin_bank(DatasetId::nq);
  const ExpansionMethod r7{MethodKind::inst_random, 7};
  auto a = select_exemplars(r7, EntityType::DATE, bank);
  auto b = select_exemplars(r7, EntityType::PERSON, bank);
  CHECK(a.size() == kExemplarsPerBank);
  CHECK(a == b);  // random exemplars ignore the entity type
  CHECK(std::set<const Exemplar*>(a.begin(), a.end()).size() == a.size());
  CHECK(select_exemplars({MethodKind::inst_random, 8}, EntityType::DATE, bank) != a);
  CHECK(select_exemplars({MethodKind::inst_zero, 0}, EntityType::DATE, bank).empty());
  auto ent = select_exemplars({MethodKind::inst_entity, 0}, EntityType::GPE, bank);
  CHECK(ent.front() == &bank.group(BankKey::GPE).front());
  CHECK_THROWS_AS(select_exemplars({MethodKind::rules, 0}, EntityType::DATE, bank), UsageError);
}

TEST_CASE("completion parsing") {
  const std::vector<std::string> orig{"Michael Evans"};
  CHECK(parse_expansion(" Michael Evans/Mike Evans/ Michael Jonas Evans \n", orig) ==
        std::vector<std::string>{"Mike Evans", "Michael Jonas Evans"});
  CHECK(parse_expansion("Mike Evans/mike  evans/AC\\/DC", orig) == std::vector<std::string>{"Mike Evans", "AC/DC"});
  CHECK(parse_expansion("Mike Evans/M. Evans\n\nQuestion: next one\nGold Answers: x/y", orig) ==
        std::vector<std::string>{"Mike Evans", "M. Evans"});
  CHECK(parse_expansion("Gold Answers: Mike Evans", orig) == std::vector<std::string>{"Mike Evans"});

  auto salvaged = parse_expansion_detailed("- Mike Evans\n- Michael J. Evans\n", orig);
  CHECK(salvaged.salvaged);
  CHECK(salvaged.answers == std::vector<std::string>{"Mike Evans", "Michael J. Evans"});

  auto longish = parse_expansion_detailed("ok/" + std::string(200, 'x'));
  CHECK(longish.dropped_long == 1);
  CHECK(longish.answers == std::vector<std::string>{"ok"});
  CHECK(parse_expansion("", orig).empty());
}

TEST_CASE("expanded sets serialize") {
  ExpandedAnswerSet s;
  s.question_id = "q-1";
  s.original = AnswerSet({"13"});
  s.expanded = s.original;
  s.expanded.add("thirteen", Provenance::rule_expanded);
  s.method = {MethodKind::rules, 0};
  s.entity_type = EntityType::CARDINAL;
  s.created_at = "2024-01-01T00:00:00Z";
  s.flags = {"salvaged_lines"};
  const auto line = to_jsonl_line(s);
  CHECK(line.rfind("{\"question_id\":\"q-1\",\"original\":[\"13\"],\"expanded\":[\"13\",\"thirteen\"]", 0) == 0);
  CHECK(line.find("\"provenance\":[\"original\",\"rule-expanded\"]") != std::string::npos);
  auto back = expanded_from_jsonl_line(line);
  CHECK(back.expanded == s.expanded);
  CHECK(back.method == s.method);
  CHECK(back.flags == s.flags);
  CHECK(to_jsonl_line(back) == line);
}

TEST_CASE("dataset expansion with a mock model") {
  std::vector<TypedQuestion> qs{
      {"q-1", "who played lionel", AnswerSet({"Michael Evans"}), EntityType::PERSON, TypeSource::rule},
      {"q-2", "where was it played", AnswerSet({"Atlanta, Georgia"}), EntityType::GPE, TypeSource::rule},
      {"q-3", "which muscle", AnswerSet({"pectoralis major"}), EntityType::NA, TypeSource::rule},
  };
  auto transport = std::make_shared<testing::MockTransport>([](const CompletionRequest& r, int) -> Completion {
    if (r.prompt.find("who played lionel\nGold") != std::string::npos) return {"Mike Evans/Michael Jonas Evans", 1, 1};
    if (r.prompt.find("where was it played\nGold") != std::string::npos) return {"Atlanta, GA\nAtlanta", 1, 1};
    throw TransportFailure(400, "rejected");
  });
  LlmClient client(testing::quick_options(ClientMode::live), transport, nullptr, nullptr);
  auto result = expand_dataset(qs, {MethodKind::inst_entity, 0}, &client);
  REQUIRE(result.sets.size() == 3);
  CHECK(result.sets[0].expanded.texts() ==
        std::vector<std::string>{"Michael Evans", "Mike Evans", "Michael Jonas Evans"});
  CHECK(result.sets[0].expanded[1].provenance == Provenance::llm_expanded);
  CHECK(result.sets[0].prompt_hash.size() == 64);
  CHECK(result.sets[0].created_at == "2024-01-01T00:00:00Z");
  CHECK(result.sets[1].flags == std::vector<std::string>{"salvaged_lines"});
  CHECK(result.sets[2].expanded.texts() == std::vector<std::string>{"pectoralis major"});
  REQUIRE(result.failures.size() == 1);
  CHECK(result.failures[0].question_id == "q-3");
  CHECK(result.failures[0].kind == "EndpointError");
  CHECK(client.ledger().calls(Phase::expansion) == 2);

  auto rules = expand_dataset(qs, {MethodKind::rules, 0}, nullptr);
  CHECK(rules.failures.empty());
  CHECK(rules.sets[0].expanded.size() == 1);
  CHECK(rules.sets[0].prompt_hash.empty());
}
