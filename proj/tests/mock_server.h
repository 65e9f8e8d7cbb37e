// Loopback HTTP server running on a background thread for client tests.

#ifndef TTSEVAL_TESTS_MOCK_SERVER_H_
#define TTSEVAL_TESTS_MOCK_SERVER_H_

#include <string>
#include <thread>

#include "httplib.h"

class MockServer {
 public:
  MockServer() = default;
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;
  ~MockServer() { stop(); }

  httplib::Server& server() { return server_; }

  // Binds an ephemeral port and serves until destruction.
  void start() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

#endif  // TTSEVAL_TESTS_MOCK_SERVER_H_
