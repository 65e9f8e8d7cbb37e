#ifndef TTSEVAL_EMBEDDER_H_
#define TTSEVAL_EMBEDDER_H_

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ttseval {

using Vector = std::vector<double>;

// Sentence embedding provider. Implementations must be safe to call from
// several threads at once.
class Embedder {
 public:
  virtual ~Embedder() = default;
  // One vector per input text, in input order.
  virtual std::vector<Vector> embed(const std::vector<std::string>& texts) = 0;
  // Identifies the embedding space in reports ("fallback-trigram-256", ...).
  virtual std::string id() const = 0;
};

// Character-trigram feature hashing (FNV-1a 64) into `dim` buckets,
// L2-normalized. The text is wrapped in '<' '>' boundary markers first.
Vector fallback_embed(std::string_view text, std::size_t dim);

class FallbackEmbedder : public Embedder {
 public:
  explicit FallbackEmbedder(std::size_t dim = 256);
  std::vector<Vector> embed(const std::vector<std::string>& texts) override;
  std::string id() const override;

 private:
  std::size_t dim_;
};

// Client for the embedding service: POST /embed {"texts": [...]} returning
// {"vectors": [[...], ...], "dim": n}.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(
      std::string base_url, std::size_t batch_size = 64,
      std::chrono::seconds timeout = std::chrono::seconds(120));
  std::vector<Vector> embed(const std::vector<std::string>& texts) override;
  std::string id() const override;

 private:
  std::string base_url_;
  std::size_t batch_size_;
  std::chrono::seconds timeout_;
};

// Request/response bodies of the /embed protocol.
std::string embed_request_body(const std::vector<std::string>& texts);
// Throws EmbedderError on a malformed or inconsistent response.
std::vector<Vector> parse_embed_response(std::string_view body,
                                         std::size_t expected_count);

}  // namespace ttseval

#endif  // TTSEVAL_EMBEDDER_H_
