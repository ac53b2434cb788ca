#include <random>

#include "doctest.h"
#include "entqa/error.hpp"
#include "entqa/normalize.hpp"
#include "entqa/scoring.hpp"
#include "support.hpp"

using namespace entqa;

TEST_CASE("normalization modes") {
  CHECK(normalize("  The   Quick\tBrown ", NormalizationMode::light) == "the quick brown");
  CHECK(normalize("The Quick, Brown fox!", NormalizationMode::squad) == "quick brown fox");
  CHECK(normalize("an apple a day", NormalizationMode::squad) == "apple day");
  CHECK(normalize("", NormalizationMode::squad).empty());
}

TEST_CASE("normalization is idempotent") {
  std::mt19937 rng(11);
  const std::string alphabet = "aAbB tThHeE.,!?'-\t0123 ";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 30);
    for (int k = 0; k < len; ++k) s.push_back(alphabet[rng() % alphabet.size()]);
    for (auto mode : {NormalizationMode::light, NormalizationMode::squad}) {
      const auto once = normalize(s, mode);
      CHECK(normalize(once, mode) == once);
    }
  }
}

TEST_CASE("token-boundary containment rejects partial numbers") {
  CHECK_FALSE(contains_normalized("released in 2013", "13", Containment::token_boundary));
  CHECK(contains_normalized("released in 2013", "13", Containment::substring));
  CHECK(contains_normalized("born on 14 june, 1946, in queens", "14 june, 1946", Containment::token_boundary));
  CHECK_FALSE(contains_normalized("anything", "", Containment::substring));
}

TEST_CASE("soft and hard EM") {
  const AnswerSet gold({"Atlanta, Georgia", "Atlanta"});
  auto v = soft_em("The game was played in Atlanta.", gold);
  CHECK(v.correct);
  CHECK(v.matched_answer == "Atlanta");
  CHECK_FALSE(hard_em("The game was played in Atlanta.", gold).correct);
  CHECK(hard_em("atlanta georgia", gold).correct);
  CHECK_FALSE(soft_em("It aired in 2013", AnswerSet({"13"})).correct);
  CHECK_FALSE(hard_em("", AnswerSet({"the"})).correct);
  CHECK_THROWS_AS(soft_em("x", AnswerSet{}), DataError);
}

TEST_CASE("F1 on the pectoralis example") {
  const AnswerSet gold({"beneath the pectoralis major"});
  // light: 5 vs 4 tokens, overlap 3 -> P 3/5, R 3/4
  CHECK(f1(std::string("under the pectoralis major muscle"), gold, NormalizationProfile::light()) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // squad drops "the": 4 vs 3 tokens, overlap 2 -> P 1/2, R 2/3
  CHECK(f1(std::string("under the pectoralis major muscle"), gold, NormalizationProfile::squad()) ==
        doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(f1_pair("", "x", NormalizationMode::squad) == 0.0);
  CHECK(f1_pair("a b b", "b b c", NormalizationMode::light) == doctest::Approx(2.0 / 3.0));
  auto v = f1_verdict("under the pectoralis major muscle", gold, NormalizationProfile::light(), 0.6);
  CHECK(v.correct);
  CHECK(v.detail == "f1=0.6667");
}

TEST_CASE("metric names round trip") {
  for (auto m : {Metric::soft_em, Metric::hard_em, Metric::f1_threshold, Metric::llm_judge}) {
    CHECK(parse_metric(to_string(m)) == m);
  }
  CHECK_FALSE(parse_metric("bleu"));
}

TEST_CASE("judge prompt and response parsing") {
  const auto prompt = build_judge_prompt("who won?", AnswerSet({"Zeus", "Zeus robot"}), "Atom wins");
  CHECK(prompt.find("who won?") != std::string::npos);
  CHECK(prompt.find("Zeus / Zeus robot") != std::string::npos);
  CHECK(prompt.find("Atom wins") != std::string::npos);
  CHECK(prompt.find("{question}") == std::string::npos);
  CHECK(judge_template_hash().size() == 64);

  CHECK(parse_judge_response("Yes."));
  CHECK(parse_judge_response("  correct, the answer matches"));
  CHECK(parse_judge_response("TRUE"));
  CHECK_FALSE(parse_judge_response("No, it does not."));
  CHECK_FALSE(parse_judge_response("Incorrect"));
  CHECK_FALSE(parse_judge_response("wrong"));
  CHECK_THROWS_AS(parse_judge_response("Maybe"), DataError);
  CHECK_THROWS_AS(parse_judge_response(""), DataError);
}

TEST_CASE("llm judge goes through the evaluation phase") {
  auto transport = testing::echo_transport("Yes");
  LlmClient client(testing::quick_options(ClientMode::live), transport, nullptr, nullptr);
  auto v = llm_judge("q", AnswerSet({"a"}), "pred", client);
  CHECK(v.correct);
  CHECK(v.metric == Metric::llm_judge);
  CHECK(client.ledger().calls(Phase::evaluation) == 1);
  CHECK(client.ledger().calls(Phase::expansion) == 0);
}
