#include <doctest.h>

#include <atomic>
#include <thread>

#ifdef LOGICTREE_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "fixture_gen.hpp"
#include "logictree/chat_client.hpp"
#include "logictree/dataset.hpp"
#include "logictree/engine.hpp"
#include "logictree/llm_backend.hpp"
#include "logictree/symbolic_backend.hpp"
#include "simulated_llm.hpp"

using namespace logictree;
using namespace logictree::testsupport;

TEST_CASE("http transport against a local chat-completions server") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    auto body = nlohmann::json::parse(req.body);
    if (body.value("model", "") == "boom") {
      res.status = 500;
      res.set_content("{\"error\":\"synthetic\"}", "application/json");
      return;
    }
    nlohmann::json reply = {
        {"choices", {{{"message", {{"role", "assistant"}, {"content", "Same"}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });

  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  LlmConfig config;
  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  config.max_retries = 0;

  nlohmann::json request = {{"model", "test"},
                            {"messages", nlohmann::json::array()},
                            {"temperature", 0.1}};

  SUBCASE("happy path returns the assistant text") {
    HttpChatTransport transport(config);
    CHECK(transport.complete(request) == "Same");
    CHECK(hits.load() == 1);
  }

  SUBCASE("non-200 statuses raise TransportError") {
    HttpChatTransport transport(config);
    nlohmann::json bad = request;
    bad["model"] = "boom";
    CHECK_THROWS_AS(transport.complete(bad), TransportError);
  }

  SUBCASE("unreachable hosts raise TransportError") {
    LlmConfig dead = config;
    dead.endpoint = "http://127.0.0.1:1/v1";
    dead.timeout = std::chrono::milliseconds(500);
    HttpChatTransport transport(dead);
    CHECK_THROWS_AS(transport.complete(request), TransportError);
  }

  server.stop();
  server_thread.join();
}

TEST_CASE("full llm stack over live http matches the symbolic engine") {
  // The simulated model behind a real chat-completions server: exercises the
  // whole path prompt -> http -> response grammar -> engine.
  httplib::Server server;
  SimulatedLlmTransport model;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    auto body = nlohmann::json::parse(req.body);
    nlohmann::json reply = {
        {"choices",
         {{{"message", {{"role", "assistant"}, {"content", model.complete(body)}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  LlmConfig config;
  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  config.max_retries = 1;
  config.retry_backoff = std::chrono::milliseconds(0);

  Problem problem = build_problem(make_cross_tree_record(), true).problem;
  LlmBackend llm(std::make_shared<HttpChatTransport>(config), config);
  ProofResult over_http = solve(problem, llm);

  SymbolicBackend symbolic;
  ProofResult expected = solve(problem, symbolic);
  CHECK(over_http.label == expected.label);
  CHECK(over_http.steps == expected.steps);

  server.stop();
  server_thread.join();
}

TEST_CASE("request hashing is stable and order-sensitive") {
  nlohmann::json a = {{"model", "m"}, {"messages", {"x"}}, {"temperature", 0.1}};
  nlohmann::json b = {{"temperature", 0.1}, {"messages", {"x"}}, {"model", "m"}};
  // nlohmann::json sorts object keys, so logically equal requests hash equal.
  CHECK(request_hash_hex(a) == request_hash_hex(b));
  nlohmann::json c = a;
  c["model"] = "other";
  CHECK(request_hash_hex(a) != request_hash_hex(c));
}
