#include <thread>

#include "doctest.h"
#include "entqa/error.hpp"
#include "entqa/llm_client.hpp"
#include "support.hpp"

using namespace entqa;
using testing::MockTransport;

namespace {

CompletionRequest req(std::string prompt, std::string model = "m") {
  CompletionRequest r;
  r.model_name = std::move(model);
  r.prompt = std::move(prompt);
  return r;
}

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST_CASE("request hash covers every knob") {
  auto a = req("hello");
  auto b = a;
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 64);
  b.temperature = 0.5;
  CHECK(a.hash() != b.hash());
  b = a;
  b.max_tokens = 100;
  CHECK(a.hash() != b.hash());
  b = a;
  b.model_name = "other";
  CHECK(a.hash() != b.hash());
  CHECK(a.canonical().find("\"max_tokens\":200") != std::string::npos);
}

TEST_CASE("cache hits do not reach the network or the ledger") {
  auto t = testing::echo_transport("answer");
  LlmClient client(testing::quick_options(ClientMode::live), t, nullptr, nullptr);
  auto first = client.complete(req("p"), Phase::expansion);
  auto second = client.complete(req("p"), Phase::expansion);
  CHECK(first.from_network);
  CHECK_FALSE(second.from_network);
  CHECK(second.text == "answer");
  CHECK(t->calls() == 1);
  auto snap = client.ledger().snapshot();
  CHECK(snap.expansion_calls == 1);
  CHECK(snap.prompt_tokens == 10);
  CHECK(snap.completion_tokens == 2);
  CHECK(snap.by_model.at("m").calls == 1);
}

TEST_CASE("transient failures are retried with backoff") {
  std::vector<std::chrono::milliseconds> waits;
  auto t = std::make_shared<MockTransport>([](const CompletionRequest&, int call) -> Completion {
    if (call == 1) throw TransportFailure(429, "slow down");
    if (call == 2) throw TransportFailure(503, "busy");
    return {"done", 1, 1};
  });
  auto opts = testing::quick_options(ClientMode::live);
  opts.retry.sleeper = [&](std::chrono::milliseconds d) { waits.push_back(d); };
  LlmClient client(opts, t, nullptr, nullptr);
  CHECK(client.complete(req("p"), Phase::evaluation).text == "done");
  CHECK(t->calls() == 3);
  REQUIRE(waits.size() == 2);
  CHECK(waits[0].count() == 500);
  CHECK(waits[1].count() == 1000);
  CHECK(client.ledger().calls(Phase::evaluation) == 1);
}

TEST_CASE("client errors are not retried") {
  auto t = std::make_shared<MockTransport>(
      [](const CompletionRequest&, int) -> Completion { throw TransportFailure(401, "bad key"); });
  LlmClient client(testing::quick_options(ClientMode::live), t, nullptr, nullptr);
  CHECK(kind_of([&] { client.complete(req("p"), Phase::expansion); }) == "EndpointError");
  CHECK(t->calls() == 1);
  CHECK(client.ledger().snapshot().total_calls() == 0);
}

TEST_CASE("retries give up after max_attempts") {
  auto t = std::make_shared<MockTransport>(
      [](const CompletionRequest&, int) -> Completion { throw TransportFailure(500, "down"); });
  auto opts = testing::quick_options(ClientMode::live);
  opts.retry.max_attempts = 3;
  LlmClient client(opts, t, nullptr, nullptr);
  CHECK(kind_of([&] { client.complete(req("p"), Phase::expansion); }) == "EndpointError");
  CHECK(t->calls() == 3);
}

TEST_CASE("backoff is capped") {
  RetryPolicy p;
  CHECK(p.delay_for(1).count() == 500);
  CHECK(p.delay_for(3).count() == 2000);
  CHECK(p.delay_for(20).count() == 30000);
}

TEST_CASE("replay misses and missing credentials") {
  LlmClient replay(testing::quick_options(ClientMode::replay), nullptr, nullptr, nullptr);
  CHECK(kind_of([&] { replay.complete(req("p"), Phase::expansion); }) == "ReplayMiss");
  LlmClient live(testing::quick_options(ClientMode::live), nullptr, nullptr, nullptr);
  CHECK(kind_of([&] { live.complete(req("p"), Phase::expansion); }) == "MissingCredential");
}

TEST_CASE("record then replay from the transcript file") {
  testing::TempDir dir;
  const auto path = dir / "t.jsonl";
  {
    auto store = std::make_shared<TranscriptStore>(path);
    LlmClient rec(testing::quick_options(ClientMode::record), testing::echo_transport("from network"), store,
                  nullptr);
    rec.complete(req("p1"), Phase::expansion);
    rec.complete(req("p2"), Phase::expansion);
  }
  const auto text = testing::read_file(path);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.rfind("{\"hash\":", 0) == 0);

  auto store = std::make_shared<TranscriptStore>(path);
  CHECK(store->size() == 2);
  LlmClient replay(testing::quick_options(ClientMode::replay), nullptr, store, nullptr);
  auto out = replay.complete(req("p2"), Phase::expansion);
  CHECK(out.text == "from network");
  CHECK(out.timestamp == "2024-01-01T00:00:00Z");
  CHECK_FALSE(out.from_network);
  CHECK(replay.ledger().snapshot().total_calls() == 0);

  // live mode caches in memory only
  LlmClient live(testing::quick_options(ClientMode::live), testing::echo_transport(), store, nullptr);
  live.complete(req("p3"), Phase::expansion);
  CHECK(testing::read_file(path) == text);

  testing::write_file(dir / "bad.jsonl", "nope\n");
  CHECK_THROWS_AS(TranscriptStore(dir / "bad.jsonl"), DataError);
}

TEST_CASE("concurrent identical requests share one network call") {
  std::atomic<bool> release{false};
  auto t = std::make_shared<MockTransport>([&](const CompletionRequest&, int) -> Completion {
    while (!release) std::this_thread::yield();
    return {"shared", 1, 1};
  });
  LlmClient client(testing::quick_options(ClientMode::live), t, nullptr, nullptr);
  std::vector<std::thread> threads;
  std::vector<std::string> results(8);
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] { results[i] = client.complete(req("same"), Phase::expansion).text; });
  }
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  release = true;
  for (auto& th : threads) th.join();
  CHECK(t->calls() == 1);
  for (const auto& r : results) CHECK(r == "shared");
  CHECK(client.ledger().calls(Phase::expansion) == 1);
}

TEST_CASE("in-flight limit holds") {
  std::atomic<int> active{0}, peak{0};
  auto t = std::make_shared<MockTransport>([&](const CompletionRequest&, int) -> Completion {
    const int now = ++active;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    --active;
    return {"x", 1, 1};
  });
  auto opts = testing::quick_options(ClientMode::live);
  opts.max_in_flight = 2;
  LlmClient client(opts, t, nullptr, nullptr);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] { client.complete(req("p" + std::to_string(i)), Phase::expansion); });
  }
  for (auto& th : threads) th.join();
  CHECK(t->calls() == 8);
  CHECK(peak.load() <= 2);
}

TEST_CASE("pricing and cost") {
  testing::TempDir dir;
  testing::write_file(dir / "p.toml", "[gpt-3.5-turbo-instruct]\ninput_per_1k = 0.0015\noutput_per_1k = 0.002\n");
  auto table = load_pricing(dir / "p.toml");
  REQUIRE(table.count("gpt-3.5-turbo-instruct"));
  UsageLedger ledger;
  ledger.record(Phase::expansion, "gpt-3.5-turbo-instruct", 2000, 500);
  CHECK(estimate_cost(ledger.snapshot(), table) == doctest::Approx(2 * 0.0015 + 0.5 * 0.002));
  ledger.record(Phase::evaluation, "unpriced", 10, 10);
  CHECK(kind_of([&] { estimate_cost(ledger.snapshot(), table); }) == "MissingRate");
}

TEST_CASE("client modes parse") {
  CHECK(parse_client_mode("record") == ClientMode::record);
  CHECK_FALSE(parse_client_mode("offline"));
}
