#include "logictree/chat_client.hpp"

#include <cstdlib>

#ifdef LOGICTREE_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace logictree {

std::uint64_t request_hash(const nlohmann::json& request) {
  const std::string dump = request.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string request_hash_hex(const nlohmann::json& request) {
  std::uint64_t h = request_hash(request);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

HttpChatTransport::HttpChatTransport(LlmConfig config) : config_(std::move(config)) {
  // Split "scheme://host[:port]/prefix" into client target and path prefix.
  const std::string& url = config_.endpoint;
  std::size_t scheme_end = url.find("://");
  std::size_t authority_begin = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  std::size_t path_begin = url.find('/', authority_begin);
  if (path_begin == std::string::npos) {
    host_ = url;
    path_prefix_.clear();
  } else {
    host_ = url.substr(0, path_begin);
    path_prefix_ = url.substr(path_begin);
  }
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string HttpChatTransport::complete(const nlohmann::json& request) {
  httplib::Client client(host_);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(config_.timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(config_.timeout));

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto res = client.Post(path_prefix_ + "/chat/completions", headers, request.dump(),
                         "application/json");
  if (!res) {
    throw TransportError("connection to " + host_ + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportError("chat completion returned HTTP " + std::to_string(res->status) + ": " +
                         res->body.substr(0, 200));
  }
  nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.contains("choices") || body["choices"].empty() ||
      !body["choices"][0].contains("message")) {
    throw TransportError("malformed chat completion payload");
  }
  return body["choices"][0]["message"].value("content", std::string());
}

CassetteRecorder::CassetteRecorder(std::shared_ptr<ChatTransport> inner,
                                   const std::filesystem::path& file)
    : inner_(std::move(inner)), out_(file, std::ios::app) {
  if (!out_) throw TransportError("cannot open cassette for writing: " + file.string());
}

std::string CassetteRecorder::complete(const nlohmann::json& request) {
  std::string response = inner_->complete(request);
  nlohmann::ordered_json line;
  line["request_hash"] = request_hash_hex(request);
  line["response"] = response;
  std::lock_guard<std::mutex> lock(mutex_);
  out_ << line.dump() << "\n";
  out_.flush();
  return response;
}

CassetteReplayTransport::CassetteReplayTransport(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw TransportError("cannot open cassette: " + file.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json entry = nlohmann::json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.contains("request_hash") || !entry.contains("response")) {
      throw TransportError("malformed cassette line: " + line.substr(0, 80));
    }
    responses_[entry["request_hash"].get<std::string>()].push_back(
        entry["response"].get<std::string>());
  }
}

std::string CassetteReplayTransport::complete(const nlohmann::json& request) {
  std::string key = request_hash_hex(request);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = responses_.find(key);
  if (it == responses_.end() || it->second.empty()) {
    throw TransportError("no recorded response for request " + key);
  }
  std::string response = std::move(it->second.front());
  // Keep the last recorded response available for further identical requests.
  if (it->second.size() > 1) it->second.pop_front();
  return response;
}

}  // namespace logictree
