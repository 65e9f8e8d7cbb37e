#include "ttseval/embedder.h"

#include <cmath>
#include <cstdint>

#include "httplib.h"
#include "json.hpp"
#include "ttseval/errors.h"

namespace ttseval {
namespace {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

Vector fallback_embed(std::string_view text, std::size_t dim) {
  if (dim < 8) throw PreconditionError("fallback_embed: dim must be >= 8");
  std::string padded;
  padded.reserve(text.size() + 2);
  padded.push_back('<');
  padded.append(text);
  padded.push_back('>');

  Vector v(dim, 0.0);
  if (padded.size() < 3) {
    v[fnv1a(padded) % dim] += 1.0;
  } else {
    std::string_view view(padded);
    for (std::size_t i = 0; i + 3 <= view.size(); ++i) {
      v[fnv1a(view.substr(i, 3)) % dim] += 1.0;
    }
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

FallbackEmbedder::FallbackEmbedder(std::size_t dim) : dim_(dim) {
  if (dim_ < 8) throw PreconditionError("FallbackEmbedder: dim must be >= 8");
}

std::vector<Vector> FallbackEmbedder::embed(
    const std::vector<std::string>& texts) {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) out.push_back(fallback_embed(text, dim_));
  return out;
}

std::string FallbackEmbedder::id() const {
  return "fallback-trigram-" + std::to_string(dim_);
}

std::string embed_request_body(const std::vector<std::string>& texts) {
  nlohmann::json body;
  body["texts"] = texts;
  return body.dump();
}

std::vector<Vector> parse_embed_response(std::string_view body,
                                         std::size_t expected_count) {
  std::vector<Vector> vectors;
  try {
    auto j = nlohmann::json::parse(body);
    auto dim = j.at("dim").get<std::size_t>();
    vectors = j.at("vectors").get<std::vector<Vector>>();
    for (const auto& v : vectors) {
      if (v.size() != dim) {
        throw EmbedderError("embedding dimension does not match 'dim'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw EmbedderError(std::string("malformed /embed response: ") + e.what());
  }
  if (vectors.size() != expected_count) {
    throw EmbedderError("/embed returned " + std::to_string(vectors.size()) +
                        " vectors for " + std::to_string(expected_count) +
                        " texts");
  }
  return vectors;
}

HttpEmbedder::HttpEmbedder(std::string base_url, std::size_t batch_size,
                           std::chrono::seconds timeout)
    : base_url_(std::move(base_url)),
      batch_size_(batch_size == 0 ? 1 : batch_size),
      timeout_(timeout) {}

std::vector<Vector> HttpEmbedder::embed(const std::vector<std::string>& texts) {
  std::vector<Vector> out;
  out.reserve(texts.size());
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_.count(), 0);
  client.set_read_timeout(timeout_.count(), 0);
  for (std::size_t start = 0; start < texts.size(); start += batch_size_) {
    std::size_t stop = std::min(texts.size(), start + batch_size_);
    std::vector<std::string> batch(texts.begin() + start, texts.begin() + stop);
    auto result =
        client.Post("/embed", embed_request_body(batch), "application/json");
    if (!result) {
      throw EmbedderError("embedding service unreachable at " + base_url_ +
                          ": " + httplib::to_string(result.error()));
    }
    if (result->status != 200) {
      throw EmbedderError("embedding service returned HTTP " +
                          std::to_string(result->status));
    }
    for (auto& v : parse_embed_response(result->body, batch.size())) {
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::string HttpEmbedder::id() const { return "http:" + base_url_; }

}  // namespace ttseval
