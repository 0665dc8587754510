// Chat-completions transport: a live HTTP client for OpenAI-compatible
// endpoints and a JSON-lines cassette for record/replay.

#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <json.hpp>

namespace logictree {

struct LlmConfig {
  std::string endpoint = "http://127.0.0.1:8000/v1";  // base URL; path appended
  std::string model = "gpt-4o";
  double temperature = 0.1;
  int max_retries = 3;
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds retry_backoff{250};  // doubled per retry
  std::string api_key_env = "OPENAI_API_KEY";    // credentials come from the environment
  int max_in_flight = 4;
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Takes a full chat-completions request body and returns the assistant text.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const nlohmann::json& request) = 0;
  virtual bool concurrent_ok() const { return false; }
};

// FNV-1a over the canonical request dump; the cassette key.
std::uint64_t request_hash(const nlohmann::json& request);
std::string request_hash_hex(const nlohmann::json& request);

class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(LlmConfig config);

  std::string complete(const nlohmann::json& request) override;
  bool concurrent_ok() const override { return true; }  // one client per call

 private:
  LlmConfig config_;
  std::string host_;  // scheme://authority
  std::string path_prefix_;
};

// Wraps another transport and appends {"request_hash","response"} JSON lines.
class CassetteRecorder : public ChatTransport {
 public:
  CassetteRecorder(std::shared_ptr<ChatTransport> inner, const std::filesystem::path& file);

  std::string complete(const nlohmann::json& request) override;
  bool concurrent_ok() const override { return true; }  // writes are serialized

 private:
  std::shared_ptr<ChatTransport> inner_;
  std::ofstream out_;
  std::mutex mutex_;
};

// Replays recorded responses; repeated identical requests replay in recorded
// order. A request with no recorded response is a TransportError.
class CassetteReplayTransport : public ChatTransport {
 public:
  explicit CassetteReplayTransport(const std::filesystem::path& file);

  std::string complete(const nlohmann::json& request) override;
  bool concurrent_ok() const override { return true; }

 private:
  std::unordered_map<std::string, std::deque<std::string>> responses_;
  std::mutex mutex_;
};

}  // namespace logictree
