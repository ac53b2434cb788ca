#include "doctest.h"
#include "entqa/error.hpp"
#include "entqa/typing.hpp"
#include "support.hpp"

using namespace entqa;

namespace {

std::vector<UntypedQuestion> sample() {
  return {{"q-1", "who played lionel", {"Michael Evans"}},
          {"q-2", "how long is son of god", {"138 minutes"}},
          {"q-3-org", "who publishes it", {"Chatto & Windus"}}};
}

const std::string kFixtures = ENTQA_FIXTURES;

}  // namespace

TEST_CASE("rule typer precedence") {
  CHECK(rule_type("50%") == EntityType::PERCENT);
  CHECK(rule_type("$12 billion") == EntityType::MONEY);
  CHECK(rule_type("2 hours 18 minutes") == EntityType::TIME);
  CHECK(rule_type("138 minutes") == EntityType::TIME);
  CHECK(rule_type("January 12, 2009") == EntityType::DATE);
  CHECK(rule_type("1946") == EntityType::DATE);
  CHECK(rule_type("fifteenth place") == EntityType::ORDINAL);
  CHECK(rule_type("3,000 miles") == EntityType::QUANTITY);
  CHECK(rule_type("about 600") == EntityType::CARDINAL);
  CHECK(rule_type("13") == EntityType::CARDINAL);
  CHECK(rule_type("beneath the pectoralis major") == EntityType::NA);
  CHECK(rule_type("Atlanta, Georgia") == EntityType::NA);
}

TEST_CASE("tag aggregation is a majority vote with first-seen ties") {
  using E = EntityType;
  CHECK(aggregate_tags(std::vector<E>{}) == E::NA);
  CHECK(aggregate_tags(std::vector<E>{E::DATE, E::CARDINAL, E::DATE}) == E::DATE);
  CHECK(aggregate_tags(std::vector<E>{E::CARDINAL, E::DATE}) == E::CARDINAL);
  CHECK(aggregate_tags(std::vector<E>{E::DATE, E::CARDINAL, E::CARDINAL, E::DATE}) == E::DATE);
}

TEST_CASE("external types file") {
  testing::TempDir dir;
  testing::write_file(dir / "types.jsonl",
                      "{\"question_id\":\"q-1\",\"tag\":\"PERSON\"}\n"
                      "{\"question_id\":\"q-2\",\"tag\":\"SPACESHIP\"}\n");
  auto types = load_external_types(dir / "types.jsonl");
  CHECK(types.types.at("q-1") == EntityType::PERSON);
  CHECK(types.types.at("q-2") == EntityType::NA);
  CHECK(types.unknown_tags == 1);

  ExternalTagger tagger(types);
  auto typed = classify_all(sample(), tagger);
  CHECK(typed[0].entity_type == EntityType::PERSON);
  CHECK(typed[0].type_source == TypeSource::external);
  // q-3-org is missing from the file: the rule typer fills in.
  CHECK(typed[2].type_source == TypeSource::rule);

  TypingOptions strict;
  strict.fallback_to_rule = false;
  CHECK_THROWS_AS(classify_all(sample(), tagger, strict), DataError);

  testing::write_file(dir / "dup.jsonl",
                      "{\"question_id\":\"a\",\"tag\":\"ORG\"}\n{\"question_id\":\"a\",\"tag\":\"GPE\"}\n");
  CHECK_THROWS_WITH_AS(load_external_types(dir / "dup.jsonl"), doctest::Contains("a"), DataError);
  testing::write_file(dir / "bad.jsonl", "{not json\n");
  CHECK_THROWS_AS(load_external_types(dir / "bad.jsonl"), DataError);
  try {
    load_external_types(dir / "absent.jsonl");
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(e.kind() == "TaggerUnavailable");
  }
}

TEST_CASE("overrides win over the tagger") {
  ExternalTypes pins;
  pins.types["q-2"] = EntityType::QUANTITY;
  TypingOptions opts;
  opts.overrides = &pins;
  RuleTagger rules;
  auto typed = classify_all(sample(), rules, opts);
  CHECK(typed[1].entity_type == EntityType::QUANTITY);
  CHECK(typed[1].type_source == TypeSource::override_file);
  CHECK(typed[0].entity_type == EntityType::NA);
}

TEST_CASE("sidecar tagger over a pipe") {
  SidecarTagger tagger("sh " + kFixtures + "/fake_ner.sh");
  auto tags = tagger.tag(sample());
  REQUIRE(tags.size() == 3);
  CHECK(tags[0] == EntityType::PERSON);
  CHECK(tags[2] == EntityType::ORG);

  SidecarTagger truncated("sh " + kFixtures + "/fake_ner_truncated.sh");
  try {
    truncated.tag(sample());
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(e.kind() == "TaggerUnavailable");
  }
  // With fallback the batch still gets rule types.
  auto typed = classify_all(sample(), truncated);
  CHECK(typed[1].entity_type == EntityType::TIME);
  CHECK(typed[1].type_source == TypeSource::rule);

  TypingOptions strict;
  strict.fallback_to_rule = false;
  CHECK_THROWS_AS(classify_all(sample(), truncated, strict), DataError);

  SidecarTagger missing("/nonexistent/tagger-binary 2>/dev/null");
  CHECK_THROWS_AS(missing.tag(sample()), DataError);
}
