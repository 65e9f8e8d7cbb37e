#ifndef TTSEVAL_ERRORS_H_
#define TTSEVAL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ttseval {

// Root of every error thrown by the library. Callers that only want to
// isolate per-document failures can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// core-model
class EmptyAnnotation : public Error {
 public:
  using Error::Error;
};

// corpus-filter
class NoBodySection : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

// llm-gateway
class UnparseableVerdict : public Error {
 public:
  using Error::Error;
};

class UnparseableCategory : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class RateLimited : public Error {
 public:
  RateLimited(const std::string& what, double retry_after_seconds)
      : Error(what), retry_after_seconds_(retry_after_seconds) {}
  // Seconds suggested by the server's Retry-After header, or < 0 if absent.
  double retry_after_seconds() const { return retry_after_seconds_; }

 private:
  double retry_after_seconds_;
};

// alignment
class ZeroVector : public Error {
 public:
  using Error::Error;
};

class EmbedderError : public Error {
 public:
  using Error::Error;
};

// metrics
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

// cli-report
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ttseval

#endif  // TTSEVAL_ERRORS_H_
