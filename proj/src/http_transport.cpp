#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <cmath>
#include <cstdlib>

#include "entqa/llm_client.hpp"
#include "json.hpp"

namespace entqa {
namespace {

using json = nlohmann::json;

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

// Rough count used only when the endpoint omits a usage block.
std::int64_t approx_tokens(const std::string& text) {
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(text.size()) / 4.0));
}

}  // namespace

HttpTransport::HttpTransport(HttpTransportOptions options) : options_(std::move(options)) {
  if (options_.base_url.empty()) throw NetworkError("MissingCredential", "no endpoint URL configured");
  if (options_.api_key.empty()) throw NetworkError("MissingCredential", "no API key configured");
}

Completion HttpTransport::send(const CompletionRequest& req) {
  json body{{"model", req.model_name},
            {"max_tokens", req.max_tokens},
            {"temperature", req.temperature},
            {"top_p", req.top_p}};
  if (options_.chat) {
    body["messages"] = json::array({{{"role", "user"}, {"content", req.prompt}}});
  } else {
    body["prompt"] = req.prompt;
  }

  httplib::Client cli(options_.base_url);
  cli.set_connection_timeout(options_.timeout);
  cli.set_read_timeout(options_.timeout);
  cli.set_bearer_token_auth(options_.api_key);
  auto res = cli.Post(options_.path, body.dump(), "application/json");
  if (!res) throw TransportFailure(0, "request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw TransportFailure(res->status, "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }

  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty()) {
    throw TransportFailure(502, "unexpected response shape");
  }
  const auto& choice = reply["choices"][0];
  Completion c;
  if (options_.chat) {
    c.text = choice.value("/message/content"_json_pointer, std::string());
  } else {
    c.text = choice.value("text", std::string());
  }
  if (reply.contains("usage") && reply["usage"].is_object()) {
    c.prompt_tokens = reply["usage"].value("prompt_tokens", std::int64_t{0});
    c.completion_tokens = reply["usage"].value("completion_tokens", std::int64_t{0});
  } else {
    c.prompt_tokens = approx_tokens(req.prompt);
    c.completion_tokens = approx_tokens(c.text);
  }
  return c;
}

HttpTransportOptions http_options_from_env() {
  HttpTransportOptions o;
  const std::string endpoint = env_or_empty("ENTQA_ENDPOINT");
  o.api_key = env_or_empty("ENTQA_API_KEY");
  if (endpoint.empty() || o.api_key.empty()) {
    throw NetworkError("MissingCredential", "live requests need ENTQA_ENDPOINT and ENTQA_API_KEY");
  }
  // Split "scheme://host[:port]/path" into client base and request path.
  const auto scheme = endpoint.find("://");
  const auto slash = endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash == std::string::npos) {
    o.base_url = endpoint;
  } else {
    o.base_url = endpoint.substr(0, slash);
    if (endpoint.size() > slash + 1) o.path = endpoint.substr(slash);
  }
  o.chat = env_or_empty("ENTQA_API_STYLE") == "chat";
  if (o.chat && slash == std::string::npos) o.path = "/v1/chat/completions";
  return o;
}

}  // namespace entqa
