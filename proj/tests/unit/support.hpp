#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <string>

#include "entqa/llm_client.hpp"

namespace entqa::testing {

// Scripted transport: the handler sees every request that reaches the network.
class MockTransport final : public Transport {
 public:
  using Handler = std::function<Completion(const CompletionRequest&, int call)>;
  explicit MockTransport(Handler h) : handler_(std::move(h)) {}

  Completion send(const CompletionRequest& req) override {
    const int n = ++calls_;
    return handler_(req, n);
  }
  int calls() const { return calls_.load(); }

 private:
  Handler handler_;
  std::atomic<int> calls_{0};
};

inline std::shared_ptr<MockTransport> echo_transport(std::string text = "ok") {
  return std::make_shared<MockTransport>([text](const CompletionRequest&, int) { return Completion{text, 10, 2}; });
}

inline ClientOptions quick_options(ClientMode mode) {
  ClientOptions o;
  o.mode = mode;
  o.retry.sleeper = [](std::chrono::milliseconds) {};
  o.clock = [] { return std::string("2024-01-01T00:00:00Z"); };
  return o;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("entqa-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace entqa::testing
