#include "entqa/llm_client.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <thread>

#include "entqa/digest.hpp"
#include "entqa/kv_config.hpp"
#include "json.hpp"

namespace entqa {
namespace {

using ojson = nlohmann::ordered_json;

ojson request_json(const CompletionRequest& r) {
  return ojson{{"model", r.model_name},
               {"prompt", r.prompt},
               {"max_tokens", r.max_tokens},
               {"temperature", r.temperature},
               {"top_p", r.top_p}};
}

ojson entry_json(const TranscriptEntry& e) {
  return ojson{{"hash", e.hash},
               {"request", request_json(e.request)},
               {"response", e.response},
               {"timestamp", e.timestamp},
               {"mode", std::string(to_string(e.mode))},
               {"usage", {{"prompt_tokens", e.prompt_tokens}, {"completion_tokens", e.completion_tokens}}}};
}

TranscriptEntry entry_from_json(const ojson& j) {
  TranscriptEntry e;
  const auto& req = j.at("request");
  e.request.model_name = req.at("model").get<std::string>();
  e.request.prompt = req.at("prompt").get<std::string>();
  e.request.max_tokens = req.value("max_tokens", 200);
  e.request.temperature = req.value("temperature", 0.0);
  e.request.top_p = req.value("top_p", 1.0);
  e.hash = j.value("hash", e.request.hash());
  e.response = j.at("response").get<std::string>();
  e.timestamp = j.value("timestamp", std::string());
  e.mode = parse_client_mode(j.value("mode", std::string("live"))).value_or(ClientMode::live);
  if (j.contains("usage")) {
    e.prompt_tokens = j["usage"].value("prompt_tokens", std::int64_t{0});
    e.completion_tokens = j["usage"].value("completion_tokens", std::int64_t{0});
  }
  return e;
}

}  // namespace

std::string_view to_string(ClientMode m) noexcept {
  switch (m) {
    case ClientMode::live: return "live";
    case ClientMode::record: return "record";
    case ClientMode::replay: return "replay";
  }
  return "live";
}

std::string_view to_string(Phase p) noexcept { return p == Phase::expansion ? "expansion" : "evaluation"; }

std::optional<ClientMode> parse_client_mode(std::string_view s) noexcept {
  if (s == "live") return ClientMode::live;
  if (s == "record") return ClientMode::record;
  if (s == "replay") return ClientMode::replay;
  return std::nullopt;
}

std::string CompletionRequest::canonical() const { return request_json(*this).dump(); }

std::string CompletionRequest::hash() const { return sha256_hex(canonical()); }

std::string utc_timestamp_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --- ledger ---------------------------------------------------------------

void UsageLedger::record(Phase phase, const std::string& model, std::int64_t prompt_tokens,
                         std::int64_t completion_tokens) {
  (phase == Phase::expansion ? expansion_calls_ : evaluation_calls_).fetch_add(1);
  prompt_tokens_.fetch_add(prompt_tokens);
  completion_tokens_.fetch_add(completion_tokens);
  std::lock_guard lock(mutex_);
  auto& m = by_model_[model];
  ++m.calls;
  m.prompt_tokens += prompt_tokens;
  m.completion_tokens += completion_tokens;
}

std::int64_t UsageLedger::calls(Phase phase) const noexcept {
  return phase == Phase::expansion ? expansion_calls_.load() : evaluation_calls_.load();
}

UsageLedger::Snapshot UsageLedger::snapshot() const {
  Snapshot s;
  s.expansion_calls = expansion_calls_.load();
  s.evaluation_calls = evaluation_calls_.load();
  s.prompt_tokens = prompt_tokens_.load();
  s.completion_tokens = completion_tokens_.load();
  std::lock_guard lock(mutex_);
  s.by_model = by_model_;
  return s;
}

PricingTable load_pricing(const std::filesystem::path& path) {
  PricingTable table;
  for (const auto& [section, keys] : load_kv_config(path).sections()) {
    if (section.empty()) continue;
    Rate r;
    auto number = [&](const char* key) {
      auto it = keys.find(key);
      if (it == keys.end()) throw DataError("MissingRate", "pricing for " + section + " lacks " + key);
      try {
        return std::stod(it->second);
      } catch (const std::exception&) {
        throw DataError("ConfigSyntax", "pricing for " + section + ": " + key + " is not a number");
      }
    };
    r.input_per_1k = number("input_per_1k");
    r.output_per_1k = number("output_per_1k");
    table[section] = r;
  }
  return table;
}

double estimate_cost(const UsageLedger::Snapshot& usage, const PricingTable& pricing) {
  double total = 0.0;
  for (const auto& [model, u] : usage.by_model) {
    if (u.prompt_tokens == 0 && u.completion_tokens == 0) continue;
    auto it = pricing.find(model);
    if (it == pricing.end()) throw DataError("MissingRate", "no pricing rate for model " + model);
    total += static_cast<double>(u.prompt_tokens) / 1000.0 * it->second.input_per_1k +
             static_cast<double>(u.completion_tokens) / 1000.0 * it->second.output_per_1k;
  }
  return total;
}

// --- transcript -------------------------------------------------------------

TranscriptStore::TranscriptStore(std::filesystem::path path) : path_(std::move(path)) {
  if (std::ifstream in{*path_}) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        auto e = entry_from_json(ojson::parse(line));
        entries_.try_emplace(e.hash, std::move(e));
      } catch (const nlohmann::json::exception& ex) {
        throw DataError("MalformedLine", path_->string() + ":" + std::to_string(line_no) + ": " + ex.what());
      }
    }
  }
}

std::optional<TranscriptEntry> TranscriptStore::find(const std::string& hash) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(hash);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool TranscriptStore::append(const TranscriptEntry& entry, bool persist) {
  std::lock_guard lock(mutex_);
  if (!entries_.try_emplace(entry.hash, entry).second) return false;
  if (persist && path_) {
    if (!out_.is_open()) {
      if (path_->has_parent_path()) std::filesystem::create_directories(path_->parent_path());
      out_.open(*path_, std::ios::app | std::ios::binary);
      if (!out_) throw DataError("IoError", "cannot append to transcript " + path_->string());
    }
    out_ << entry_json(entry).dump() << '\n';
    out_.flush();
  }
  return true;
}

std::size_t TranscriptStore::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

// --- client -----------------------------------------------------------------

std::chrono::milliseconds RetryPolicy::delay_for(int attempt) const {
  double ms = static_cast<double>(base_delay.count()) * std::pow(multiplier, std::max(0, attempt - 1));
  ms = std::min(ms, static_cast<double>(max_delay.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

LlmClient::LlmClient(ClientOptions options, std::shared_ptr<Transport> transport,
                     std::shared_ptr<TranscriptStore> store, std::shared_ptr<UsageLedger> ledger)
    : options_(std::move(options)),
      transport_(std::move(transport)),
      store_(store ? std::move(store) : std::make_shared<TranscriptStore>()),
      ledger_(ledger ? std::move(ledger) : std::make_shared<UsageLedger>()),
      slots_(static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(options_.max_in_flight, 1, 64))),
      tokens_(options_.burst),
      last_refill_(std::chrono::steady_clock::now()) {
  options_.max_in_flight = std::clamp<std::size_t>(options_.max_in_flight, 1, 64);
  if (!options_.clock) options_.clock = utc_timestamp_now;
  if (!options_.retry.sleeper) options_.retry.sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

CompletionOutcome LlmClient::complete(const CompletionRequest& req, Phase phase) {
  const std::string hash = req.hash();
  if (auto hit = store_->find(hash)) return {hit->response, hash, hit->timestamp, false};
  if (options_.mode == ClientMode::replay) {
    throw NetworkError("ReplayMiss", "no recorded response for request " + hash);
  }
  if (!transport_) {
    throw NetworkError("MissingCredential", "live requests need ENTQA_ENDPOINT and ENTQA_API_KEY");
  }

  std::promise<CompletionOutcome> promise;
  std::shared_future<CompletionOutcome> future;
  bool owner = false;
  {
    std::lock_guard lock(inflight_mutex_);
    if (auto it = inflight_.find(hash); it != inflight_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      inflight_.emplace(hash, future);
      owner = true;
    }
  }
  if (!owner) return future.get();

  try {
    promise.set_value(fetch(req, hash, phase));
  } catch (...) {
    promise.set_exception(std::current_exception());
  }
  {
    std::lock_guard lock(inflight_mutex_);
    inflight_.erase(hash);
  }
  return future.get();
}

void LlmClient::throttle() {
  if (options_.requests_per_second <= 0.0) return;
  for (;;) {
    std::chrono::duration<double> wait{0};
    {
      std::lock_guard lock(bucket_mutex_);
      const auto now = std::chrono::steady_clock::now();
      const std::chrono::duration<double> elapsed = now - last_refill_;
      tokens_ = std::min(options_.burst, tokens_ + elapsed.count() * options_.requests_per_second);
      last_refill_ = now;
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      wait = std::chrono::duration<double>((1.0 - tokens_) / options_.requests_per_second);
    }
    std::this_thread::sleep_for(wait);
  }
}

CompletionOutcome LlmClient::fetch(const CompletionRequest& req, const std::string& hash, Phase phase) {
  // A concurrent owner may have finished between the cache check and now.
  if (auto hit = store_->find(hash)) return {hit->response, hash, hit->timestamp, false};

  slots_.acquire();
  struct Release {
    std::counting_semaphore<64>& s;
    ~Release() { s.release(); }
  } release{slots_};

  const int attempts = std::max(1, options_.retry.max_attempts);
  for (int attempt = 1;; ++attempt) {
    throttle();
    try {
      Completion c = transport_->send(req);
      ledger_->record(phase, req.model_name, c.prompt_tokens, c.completion_tokens);
      TranscriptEntry entry{hash, req, c.text, options_.clock(), options_.mode, c.prompt_tokens, c.completion_tokens};
      store_->append(entry, options_.mode == ClientMode::record);
      return {c.text, hash, entry.timestamp, true};
    } catch (const TransportFailure& f) {
      if (!f.transient() || attempt >= attempts) {
        throw NetworkError("EndpointError", "endpoint failed with status " + std::to_string(f.status()) + " after " +
                                                std::to_string(attempt) + " attempt(s): " + f.what());
      }
      options_.retry.sleeper(options_.retry.delay_for(attempt));
    }
  }
}

}  // namespace entqa
