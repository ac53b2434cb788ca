#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "entqa/cli.hpp"
#include "entqa/expansion.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace entqa;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = entqa::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kCorpus = std::string(ENTQA_FIXTURES) + "/../../data/mini_corpus.jsonl";

nlohmann::json last_json_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  auto start = text.rfind('\n', end);
  return nlohmann::json::parse(text.substr(start == std::string::npos ? 0 : start + 1, end + 1));
}

}  // namespace

TEST_CASE("help and usage errors") {
  auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("expand") != std::string::npos);
  CHECK(run_cli({"expand", "--help"}).code == 0);

  auto unknown = run_cli({"expand", "--no-such-flag"});
  CHECK(unknown.code == 2);
  CHECK(nlohmann::json::parse(unknown.err)["category"] == "usage");
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);

  auto missing = run_cli({"evaluate", "--dataset", kCorpus});
  CHECK(missing.code == 2);
  CHECK(nlohmann::json::parse(missing.err)["error"] == "MissingOption");
  CHECK(run_cli({"evaluate", "--dataset", kCorpus, "--out", "/tmp/x", "--metric", "bleu"}).code == 2);
  CHECK(run_cli({"expand", "--dataset", kCorpus, "--method", "nope", "--dry-run"}).code == 2);
}

TEST_CASE("data errors exit with 3") {
  testing::TempDir dir;
  auto r = run_cli({"evaluate", "--dataset", (dir / "absent.jsonl").string(), "--out", (dir / "v.jsonl").string()});
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.err)["category"] == "data");
}

TEST_CASE("dry run prints prompts without calls") {
  auto r = run_cli({"expand", "--dataset", kCorpus, "--method", "inst_entity", "--dry-run"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(std::string(kExpansionInstruction)) != std::string::npos);
  CHECK(r.out.find("Question: How long is the movie son of god\nGold Answers: 138 minutes") != std::string::npos);
  auto summary = last_json_line(r.out);
  CHECK(summary["expansion_calls"] == 0);
  CHECK(summary["prompts"] == 14);
}

TEST_CASE("replay miss exits with 4 and reports each question") {
  testing::TempDir dir;
  auto r = run_cli({"expand", "--dataset", kCorpus, "--method", "inst_zero", "--out", (dir / "x.jsonl").string(),
                "--transcript", (dir / "none.jsonl").string()});
  CHECK(r.code == 4);
  CHECK(r.err.find("ReplayMiss") != std::string::npos);
  CHECK(last_json_line(r.out)["failures"] == 14);
}

TEST_CASE("record prompts, then expand in replay mode") {
  testing::TempDir dir;
  const auto prompts = dir / "prompts.jsonl";
  auto dry = run_cli({"expand", "--dataset", kCorpus, "--method", "inst_zero", "--dry-run", "--prompts-out",
                  prompts.string()});
  REQUIRE(dry.code == 0);

  // Answer every prompt with a fixed completion.
  std::istringstream in(testing::read_file(prompts));
  std::string line, answered;
  int n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    j["response"] = "alt answer " + std::to_string(n++) + "/another form";
    answered += j.dump() + "\n";
  }
  REQUIRE(n == 14);
  testing::write_file(dir / "answered.jsonl", answered);
  const auto transcript = dir / "t.jsonl";
  auto rec = run_cli({"record", "--prompts", (dir / "answered.jsonl").string(), "--transcript", transcript.string()});
  REQUIRE(rec.code == 0);
  CHECK(last_json_line(rec.out)["recorded"] == 14);
  auto again = run_cli({"record", "--prompts", (dir / "answered.jsonl").string(), "--transcript", transcript.string()});
  CHECK(last_json_line(again.out)["already_present"] == 14);

  auto rep = run_cli({"replay", "--prompts", prompts.string(), "--transcript", transcript.string()});
  REQUIRE(rep.code == 0);
  CHECK(rep.out.find("alt answer 0/another form") != std::string::npos);

  const auto out = dir / "x.jsonl";
  auto exp = run_cli({"expand", "--dataset", kCorpus, "--method", "inst_zero", "--out", out.string(), "--transcript",
                  transcript.string()});
  REQUIRE_MESSAGE(exp.code == 0, exp.err);
  CHECK(last_json_line(exp.out)["ledger"]["expansion_calls"] == 0);
  auto sets = load_expanded_sets(out);
  REQUIRE(sets.size() == 14);
  CHECK(sets[0].expanded.texts().back() == "another form");
  CHECK(std::filesystem::exists(dir / "x.jsonl.run.toml"));
}

TEST_CASE("settings precedence: config < flag < environment") {
  testing::TempDir dir;
  testing::write_file(dir / "cfg.toml", "method = \"inst_zero\"\n[expand]\nbank = \"tq\"\n");
  const auto out = dir / "rules.jsonl";

  auto from_config = run_cli({"--config", (dir / "cfg.toml").string(), "expand", "--dataset", kCorpus, "--dry-run"});
  REQUIRE(from_config.code == 0);
  CHECK(last_json_line(from_config.out)["method"] == "inst_zero");

  auto flag_wins = run_cli({"--config", (dir / "cfg.toml").string(), "expand", "--dataset", kCorpus, "--method",
                        "rules", "--out", out.string()});
  REQUIRE(flag_wins.code == 0);
  const auto toml = testing::read_file(dir / "rules.jsonl.run.toml");
  CHECK(toml.find("method = \"rules\"") != std::string::npos);
  CHECK(toml.find("bank = \"tq\"") != std::string::npos);
  CHECK(toml.find("command = \"expand\"") != std::string::npos);

  ::setenv("ENTQA_METHOD", "inst_random:3", 1);
  auto env_wins = run_cli({"--config", (dir / "cfg.toml").string(), "expand", "--dataset", kCorpus, "--method",
                       "rules", "--dry-run"});
  ::unsetenv("ENTQA_METHOD");
  REQUIRE(env_wins.code == 0);
  CHECK(last_json_line(env_wins.out)["method"] == "inst_random:3");

  testing::write_file(dir / "broken.toml", "this is not a setting\n");
  CHECK(run_cli({"--config", (dir / "broken.toml").string(), "expand", "--dataset", kCorpus, "--dry-run"}).code == 3);
}

TEST_CASE("type, evaluate, reliability and report") {
  testing::TempDir dir;
  const auto typed = dir / "typed.jsonl";
  REQUIRE(run_cli({"type", "--dataset", kCorpus, "--out", typed.string()}).code == 0);
  const auto rules = dir / "rules.jsonl";
  REQUIRE(run_cli({"expand", "--dataset", typed.string(), "--method", "rules", "--out", rules.string()}).code == 0);

  const auto verdicts = dir / "v.jsonl";
  auto ev = run_cli({"evaluate", "--dataset", typed.string(), "--expanded", rules.string(), "--out", verdicts.string()});
  REQUIRE(ev.code == 0);
  CHECK(last_json_line(ev.out)["verdicts"] == 28);

  auto rel = run_cli({"reliability", "--dataset", typed.string(), "--verdicts", verdicts.string()});
  REQUIRE(rel.code == 0);
  auto j = nlohmann::json::parse(rel.out);
  CHECK(j["metrics"][0]["per_model"]["reader-b"]["reliability"] == 1.0);

  auto scored = run_cli({"score", "--predictions", (std::filesystem::path(ENTQA_FIXTURES) / "predictions.jsonl").string(),
                     "--answers", rules.string(), "--metric", "soft-em"});
  REQUIRE_MESSAGE(scored.code == 0, scored.err);
  CHECK(scored.out.find("\"question_id\":\"ex-7\",\"metric\":\"soft-em\",\"correct\":true") != std::string::npos);

  const auto report_dir = dir / "report";
  auto rep = run_cli({"report", "--dataset", typed.string(), "--out", report_dir.string(), "--expand-method", "rules"});
  REQUIRE_MESSAGE(rep.code == 0, rep.err);
  CHECK(std::filesystem::exists(report_dir / "report.md"));
  CHECK(std::filesystem::exists(report_dir / "report.csv"));
  CHECK(std::filesystem::exists(report_dir / "report.json"));
  CHECK(std::filesystem::exists(report_dir / "run_config.toml"));
  CHECK(testing::read_file(report_dir / "report.md").find("| soft-em + rules |") != std::string::npos);
}

TEST_CASE("installed binary maps errors to exit codes") {
  const std::string bin = ENTQA_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("--help") == 0);
  CHECK(status("expand --bogus") == 2);
  CHECK(status("evaluate --dataset /nonexistent.jsonl --out /tmp/entqa-never.jsonl") == 3);
}
