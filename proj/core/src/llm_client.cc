#include "ttseval/llm_client.h"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "ttseval/errors.h"
#include "ttseval/sha256.h"
#include "ttseval/text.h"

namespace ttseval {

using json = nlohmann::ordered_json;

std::string chat_request_body(const ChatRequest& request) {
  json body;
  body["model"] = request.model_id;
  body["messages"] = json::array();
  if (request.system_text) {
    body["messages"].push_back(
        {{"role", "system"}, {"content", *request.system_text}});
  }
  body["messages"].push_back(
      {{"role", "user"}, {"content", request.user_text}});
  body["max_tokens"] = request.max_output;
  body["temperature"] = request.temperature;
  return body.dump();
}

std::string request_cache_key(const ChatRequest& request,
                              const Endpoint& endpoint) {
  json key;
  key["url"] = endpoint.base_url + endpoint.path;
  key["model"] = request.model_id;
  key["system"] =
      request.system_text ? json(*request.system_text) : json(nullptr);
  key["user"] = request.user_text;
  key["max_output"] = request.max_output;
  key["temperature"] = request.temperature;
  return sha256_hex(key.dump());
}

ChatClient::ChatClient(Endpoint endpoint) : endpoint_(std::move(endpoint)) {
  if (endpoint_.base_url.empty()) {
    throw ConfigError("chat endpoint base URL is empty");
  }
}

std::optional<std::string> ChatClient::cache_lookup(
    const std::string& key) const {
  if (endpoint_.cache_dir.empty()) return std::nullopt;
  auto path = endpoint_.cache_dir / (key + ".txt");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void ChatClient::cache_store(const std::string& key,
                             const std::string& response) const {
  if (endpoint_.cache_dir.empty()) return;
  std::filesystem::create_directories(endpoint_.cache_dir);
  // Write-then-rename so readers never observe a partial entry.
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id() << '.'
         << std::random_device{}();
  auto final_path = endpoint_.cache_dir / (key + ".txt");
  auto temp_path = endpoint_.cache_dir / (key + suffix.str());
  {
    std::ofstream out(temp_path, std::ios::binary);
    if (!out) throw Error("cannot write cache entry " + temp_path.string());
    out << response;
  }
  std::filesystem::rename(temp_path, final_path);
}

std::string ChatClient::post_once(const ChatRequest& request,
                                  double* retry_after, bool* retryable,
                                  int* status) {
  *retry_after = -1.0;
  *retryable = true;
  *status = 0;
  httplib::Client client(endpoint_.base_url);
  auto seconds = endpoint_.timeout.count();
  client.set_connection_timeout(seconds, 0);
  client.set_read_timeout(seconds, 0);
  client.set_write_timeout(seconds, 0);

  httplib::Headers headers;
  if (const char* token = std::getenv(endpoint_.api_key_env.c_str());
      token != nullptr && *token != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }
  network_calls_.fetch_add(1);
  auto result = client.Post(endpoint_.path, headers, chat_request_body(request),
                            "application/json");
  if (!result) {
    throw TransportError("request to " + endpoint_.base_url +
                         " failed: " + httplib::to_string(result.error()));
  }
  *status = result->status;
  if (result->status == 429) {
    if (result->has_header("Retry-After")) {
      try {
        *retry_after = std::stod(result->get_header_value("Retry-After"));
      } catch (const std::exception&) {
      }
    }
    throw RateLimited("rate limited by " + endpoint_.base_url, *retry_after);
  }
  if (result->status >= 500) {
    throw TransportError("server error " + std::to_string(result->status));
  }
  if (result->status != 200) {
    *retryable = false;
    throw TransportError("HTTP " + std::to_string(result->status) + ": " +
                         result->body.substr(0, 200));
  }
  try {
    auto body = json::parse(result->body);
    return body.at("choices")
        .at(0)
        .at("message")
        .at("content")
        .get<std::string>();
  } catch (const json::exception& e) {
    *retryable = false;
    throw TransportError(std::string("malformed completion response: ") +
                         e.what());
  }
}

std::string ChatClient::complete(const ChatRequest& request) {
  if (request.user_text.empty()) throw PreconditionError("empty user text");
  const std::string key = request_cache_key(request, endpoint_);
  if (auto cached = cache_lookup(key)) {
    cache_hits_.fetch_add(1);
    return *cached;
  }

  auto backoff =
      std::chrono::duration<double, std::milli>(endpoint_.initial_backoff);
  for (int attempt = 0;; ++attempt) {
    double retry_after = -1.0;
    bool retryable = true;
    int status = 0;
    try {
      std::string response =
          post_once(request, &retry_after, &retryable, &status);
      cache_store(key, response);
      return response;
    } catch (const TransportError& e) {
      if (!retryable) throw;
      if (attempt >= endpoint_.max_retries) {
        throw TransportError("giving up after " + std::to_string(attempt + 1) +
                             " attempts: " + e.what());
      }
    } catch (const RateLimited&) {
      if (attempt >= endpoint_.max_retries) throw;
    }
    auto wait = backoff;
    if (retry_after > 0) {
      wait = std::max(wait, std::chrono::duration<double, std::milli>(
                                retry_after * 1000.0));
    }
    std::this_thread::sleep_for(wait);
    backoff *= endpoint_.backoff_multiplier;
  }
}

std::vector<DispatchOutcome> dispatch_requests(
    ChatClient& client, const std::vector<ChatRequest>& requests,
    const DispatchOptions& options) {
  std::vector<DispatchOutcome> outcomes(requests.size());
  std::atomic<std::size_t> next{0};
  std::mutex pace_mu;
  auto next_start = std::chrono::steady_clock::now();

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= requests.size()) return;
      if (options.min_interval.count() > 0) {
        std::chrono::steady_clock::time_point start;
        {
          std::lock_guard lock(pace_mu);
          start = std::max(next_start, std::chrono::steady_clock::now());
          next_start = start + options.min_interval;
        }
        std::this_thread::sleep_until(start);
      }
      try {
        outcomes[i].response = client.complete(requests[i]);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };

  std::size_t threads =
      std::max<std::size_t>(1, std::min(options.parallelism, requests.size()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  return outcomes;
}

}  // namespace ttseval
