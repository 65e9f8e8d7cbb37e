#ifndef TTSEVAL_LLM_CLIENT_H_
#define TTSEVAL_LLM_CLIENT_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ttseval/prompts.h"

namespace ttseval {

// An OpenAI-compatible chat-completions service.
struct Endpoint {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  // Environment variable holding the bearer token; unset or empty means no
  // Authorization header.
  std::string api_key_env = "OPENAI_API_KEY";
  // Empty disables the response cache.
  std::filesystem::path cache_dir;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;
  std::chrono::seconds timeout{300};
};

// Cache key: SHA-256 over the canonical JSON of the endpoint URL and every
// request field. The cache file is `<cache_dir>/<key>.txt`.
std::string request_cache_key(const ChatRequest& request,
                              const Endpoint& endpoint);

// Request body sent on the wire.
std::string chat_request_body(const ChatRequest& request);

class ChatClient {
 public:
  explicit ChatClient(Endpoint endpoint);

  // Assistant message text. Cache hits never touch the network. Throws
  // TransportError once retries are exhausted, RateLimited when the last
  // attempt was answered with HTTP 429.
  std::string complete(const ChatRequest& request);

  const Endpoint& endpoint() const { return endpoint_; }
  std::size_t network_calls() const { return network_calls_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }

 private:
  std::optional<std::string> cache_lookup(const std::string& key) const;
  void cache_store(const std::string& key, const std::string& response) const;
  std::string post_once(const ChatRequest& request, double* retry_after,
                        bool* retryable, int* status);

  Endpoint endpoint_;
  std::atomic<std::size_t> network_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

struct DispatchOptions {
  std::size_t parallelism = 4;
  // Minimum spacing between request starts against the endpoint.
  std::chrono::milliseconds min_interval{0};
};

struct DispatchOutcome {
  std::optional<std::string> response;
  std::string error;  // set when response is empty
};

// Issues every request through a bounded pool; outcomes are returned in
// request order and one failure never cancels the others.
std::vector<DispatchOutcome> dispatch_requests(
    ChatClient& client, const std::vector<ChatRequest>& requests,
    const DispatchOptions& options = {});

}  // namespace ttseval

#endif  // TTSEVAL_LLM_CLIENT_H_
