#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entqa/error.hpp"

namespace entqa {

enum class ClientMode { live, record, replay };
enum class Phase { expansion, evaluation };

std::string_view to_string(ClientMode m) noexcept;
std::string_view to_string(Phase p) noexcept;
std::optional<ClientMode> parse_client_mode(std::string_view s) noexcept;

struct CompletionRequest {
  std::string model_name;
  std::string prompt;
  int max_tokens = 200;
  double temperature = 0.0;
  double top_p = 1.0;

  /// Canonical JSON of every field; the hash input.
  std::string canonical() const;
  /// SHA-256 over canonical(); changing any knob changes the hash.
  std::string hash() const;
};

struct Completion {
  std::string text;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

/// Failure reported by a transport. status 0 means the request never got an
/// HTTP answer (connect error, timeout).
class TransportFailure : public NetworkError {
 public:
  TransportFailure(int status, const std::string& message)
      : NetworkError("EndpointError", message), status_(status) {}
  int status() const noexcept { return status_; }
  /// 5xx, 429 and connection failures are worth retrying.
  bool transient() const noexcept { return status_ == 0 || status_ == 429 || status_ >= 500; }

 private:
  int status_;
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// Throws TransportFailure.
  virtual Completion send(const CompletionRequest& req) = 0;
};

struct HttpTransportOptions {
  std::string base_url;                   ///< scheme://host[:port]
  std::string path = "/v1/completions";
  std::string api_key;
  bool chat = false;                      ///< chat-style body and response shape
  std::chrono::seconds timeout{60};
};

/// Single-turn completion over HTTP(S).
class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(HttpTransportOptions options);
  Completion send(const CompletionRequest& req) override;

 private:
  HttpTransportOptions options_;
};

/// Reads ENTQA_ENDPOINT (full URL) and ENTQA_API_KEY, plus the optional
/// ENTQA_API_STYLE=chat. Throws NetworkError MissingCredential.
HttpTransportOptions http_options_from_env();

/// Calls and token counts per phase and per model. Only successful network
/// round-trips are recorded.
class UsageLedger {
 public:
  struct ModelUsage {
    std::int64_t calls = 0;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
  };
  struct Snapshot {
    std::int64_t expansion_calls = 0;
    std::int64_t evaluation_calls = 0;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    std::map<std::string, ModelUsage> by_model;

    std::int64_t total_calls() const noexcept { return expansion_calls + evaluation_calls; }
  };

  void record(Phase phase, const std::string& model, std::int64_t prompt_tokens, std::int64_t completion_tokens);

  std::int64_t calls(Phase phase) const noexcept;
  Snapshot snapshot() const;

 private:
  std::atomic<std::int64_t> expansion_calls_{0};
  std::atomic<std::int64_t> evaluation_calls_{0};
  std::atomic<std::int64_t> prompt_tokens_{0};
  std::atomic<std::int64_t> completion_tokens_{0};
  mutable std::mutex mutex_;
  std::map<std::string, ModelUsage> by_model_;
};

struct Rate {
  double input_per_1k = 0.0;
  double output_per_1k = 0.0;
};

using PricingTable = std::map<std::string, Rate>;

/// `[model]` sections with input_per_1k / output_per_1k keys.
PricingTable load_pricing(const std::filesystem::path& path);

/// Sum over models of tokens/1000 * rate. Throws DataError MissingRate for a
/// model with recorded usage but no rate.
double estimate_cost(const UsageLedger::Snapshot& usage, const PricingTable& pricing);

struct TranscriptEntry {
  std::string hash;
  CompletionRequest request;
  std::string response;
  std::string timestamp;
  ClientMode mode = ClientMode::live;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

/// Append-only hash -> response map, optionally backed by a JSON-lines file.
/// The first entry for a hash wins.
class TranscriptStore {
 public:
  TranscriptStore() = default;
  /// Loads existing lines (if any) and appends new persisted entries to the
  /// same file. Throws DataError MalformedLine.
  explicit TranscriptStore(std::filesystem::path path);

  std::optional<TranscriptEntry> find(const std::string& hash) const;
  /// Returns false when the hash was already present. `persist` controls
  /// whether the entry is written to the backing file.
  bool append(const TranscriptEntry& entry, bool persist);
  std::size_t size() const;
  const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, TranscriptEntry> entries_;
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_delay{30000};
  /// Injected so tests do not sleep.
  std::function<void(std::chrono::milliseconds)> sleeper;

  std::chrono::milliseconds delay_for(int attempt) const;  ///< attempt is 1-based
};

struct ClientOptions {
  ClientMode mode = ClientMode::replay;
  std::size_t max_in_flight = 4;
  double requests_per_second = 0.0;  ///< 0 disables the token bucket
  double burst = 4.0;
  RetryPolicy retry;
  /// ISO-8601 timestamp source for new transcript entries.
  std::function<std::string()> clock;
};

struct CompletionOutcome {
  std::string text;
  std::string hash;
  std::string timestamp;
  bool from_network = false;
};

class LlmClient {
 public:
  /// `transport` may be null in replay mode.
  LlmClient(ClientOptions options, std::shared_ptr<Transport> transport, std::shared_ptr<TranscriptStore> store,
            std::shared_ptr<UsageLedger> ledger);

  /// Cache first; replay misses throw NetworkError ReplayMiss. Live and
  /// record modes go to the transport and retry transient failures.
  CompletionOutcome complete(const CompletionRequest& req, Phase phase);

  ClientMode mode() const noexcept { return options_.mode; }
  std::size_t max_in_flight() const noexcept { return options_.max_in_flight; }
  UsageLedger& ledger() noexcept { return *ledger_; }
  TranscriptStore& store() noexcept { return *store_; }

 private:
  CompletionOutcome fetch(const CompletionRequest& req, const std::string& hash, Phase phase);
  void throttle();

  ClientOptions options_;
  std::shared_ptr<Transport> transport_;
  std::shared_ptr<TranscriptStore> store_;
  std::shared_ptr<UsageLedger> ledger_;
  std::counting_semaphore<64> slots_;

  std::mutex inflight_mutex_;
  std::unordered_map<std::string, std::shared_future<CompletionOutcome>> inflight_;

  std::mutex bucket_mutex_;
  double tokens_;
  std::chrono::steady_clock::time_point last_refill_;
};

std::string utc_timestamp_now();

}  // namespace entqa
