// Copyright 2026 The zgptda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "zgptda/errors.hpp"
#include "zgptda/hashing.hpp"
#include "zgptda/transport.hpp"

namespace zgptda::transport {
namespace {

namespace fs = std::filesystem;

ChatRequest request(std::string text, std::size_t slot) {
  return {.model = "gpt-4",
          .messages = {{"user", "Restate this.\n\n" + std::move(text)}},
          .temperature = 0.7,
          .slot = slot};
}

class Flaky : public Transport {
 public:
  Flaky(int failures, bool retryable) : failures_(failures), retryable_(retryable) {}
  std::string complete(const ChatRequest&) override {
    if (calls++ < failures_) throw TransportError("flaky", retryable_);
    return "ok";
  }
  std::string id() const override { return "flaky"; }
  int calls = 0;

 private:
  int failures_;
  bool retryable_;
};

TEST(Hashing, KnownDigests) {
  EXPECT_EQ(hashing::sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(hashing::sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(WireBody, ShapeAndHash) {
  const auto req = request("Hello there.", 1);
  const auto body = wire_body(req);
  EXPECT_EQ(body["model"], "gpt-4");
  EXPECT_EQ(body["messages"][0]["role"], "user");
  EXPECT_FALSE(body.contains("slot"));
  EXPECT_EQ(request_hash(req), request_hash(request("Hello there.", 1)));
  EXPECT_NE(request_hash(req), request_hash(request("Hello there.", 2)));
  EXPECT_EQ(request_hash(req).size(), 64u);
}

TEST(Mock, DeterministicPerSeedAndSlot) {
  const std::string text =
      "The pump failed during the night shift. Operators restarted it twice. "
      "The valve was later replaced by the maintenance crew.";
  MockTransport a(7), b(7), c(8);
  EXPECT_EQ(a.complete(request(text, 1)), b.complete(request(text, 1)));
  EXPECT_NE(a.complete(request(text, 1)), a.complete(request(text, 2)));
  bool differs = false;
  for (std::size_t slot = 1; slot <= 10; ++slot) {
    const auto out = a.complete(request(text, slot));
    EXPECT_FALSE(out.empty());
    differs |= out != c.complete(request(text, slot));
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(a.complete(ChatRequest{}), TransportError);
}

TEST(ReplayAndRecording, RoundTrip) {
  const auto path = fs::temp_directory_path() / "zgptda_test_replay.jsonl";
  MockTransport mock(3);
  RecordingTransport rec(mock);
  std::vector<std::string> first;
  for (std::size_t slot = 1; slot <= 4; ++slot) {
    first.push_back(rec.complete(request("A b c d e. F g h i j.", slot)));
  }
  rec.save(path);
  const auto replay = ReplayTransport::load(path);
  EXPECT_EQ(replay->size(), 4u);
  for (std::size_t slot = 1; slot <= 4; ++slot) {
    EXPECT_EQ(replay->complete(request("A b c d e. F g h i j.", slot)), first[slot - 1]);
  }
  try {
    replay->complete(request("unknown", 1));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_FALSE(e.retryable());
  }
  // Saved twice, the file is byte-identical.
  std::ifstream in1(path);
  const std::string body1((std::istreambuf_iterator<char>(in1)), {});
  rec.save(path);
  std::ifstream in2(path);
  const std::string body2((std::istreambuf_iterator<char>(in2)), {});
  EXPECT_EQ(body1, body2);
  fs::remove(path);
}

TEST(ReplayAndRecording, MalformedFile) {
  const auto path = fs::temp_directory_path() / "zgptda_test_bad_replay.jsonl";
  std::ofstream(path) << "{\"request_hash\":\"x\",\"completion\":\"y\"}\n{\"x\":1}\n";
  try {
    ReplayTransport::load(path);
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  fs::remove(path);
  EXPECT_THROW(ReplayTransport::load(path), LoadError);
}

TEST(Retry, BacksOffThenSucceeds) {
  Flaky t(2, true);
  std::vector<long> sleeps;
  const auto out = complete_with_retry(t, request("x", 1), RetryPolicy{},
                                       [&](std::chrono::milliseconds d) {
                                         sleeps.push_back(d.count());
                                       });
  EXPECT_EQ(out, "ok");
  EXPECT_EQ(sleeps, (std::vector<long>{500, 1000}));
}

TEST(Retry, GivesUpAfterMaxAttempts) {
  Flaky t(100, true);
  std::vector<long> sleeps;
  const RetryPolicy policy{.max_attempts = 6,
                           .initial_backoff = std::chrono::milliseconds(1000),
                           .multiplier = 3.0,
                           .max_backoff = std::chrono::milliseconds(5000)};
  EXPECT_THROW(complete_with_retry(t, request("x", 1), policy,
                                   [&](auto d) { sleeps.push_back(d.count()); }),
               TransportError);
  EXPECT_EQ(t.calls, 6);
  EXPECT_EQ(sleeps, (std::vector<long>{1000, 3000, 5000, 5000, 5000}));
}

TEST(Retry, NonRetryableFailsFast) {
  Flaky t(1, false);
  EXPECT_THROW(complete_with_retry(t, request("x", 1), RetryPolicy{}, [](auto) {}),
               TransportError);
  EXPECT_EQ(t.calls, 1);
}

TEST(Http, RequiresKeyAndUrl) {
  EXPECT_THROW(HttpTransport(HttpConfig{.api_key = ""}), std::invalid_argument);
  EXPECT_THROW(HttpTransport(HttpConfig{.endpoint = "nope", .api_key = "k"}),
               std::invalid_argument);
}

class LocalServer : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                               httplib::Response& res) {
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = req.body;
      const int n = hits_++;
      if (mode_ == 1 && n == 0) {
        res.status = 429;
        return;
      }
      if (mode_ == 2) {
        res.status = 400;
        res.set_content("bad request", "text/plain");
        return;
      }
      if (mode_ == 3) {
        res.set_content("{\"nothing\":1}", "application/json");
        return;
      }
      res.set_content(
          R"({"choices":[{"message":{"role":"assistant","content":"Paraphrased."}}]})",
          "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  HttpTransport client() {
    return HttpTransport({.endpoint = "http://127.0.0.1:" + std::to_string(port_) +
                                      "/v1/chat/completions",
                          .api_key = "test-key",
                          .timeout = std::chrono::seconds(5)});
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  int mode_ = 0;
  std::string last_auth_;
  std::string last_body_;
};

TEST_F(LocalServer, ParsesCompletion) {
  auto t = client();
  const auto req = request("Some text.", 1);
  EXPECT_EQ(t.complete(req), "Paraphrased.");
  EXPECT_EQ(last_auth_, "Bearer test-key");
  EXPECT_EQ(nlohmann::json::parse(last_body_), wire_body(req));
}

TEST_F(LocalServer, RateLimitIsRetried) {
  mode_ = 1;
  auto t = client();
  EXPECT_EQ(complete_with_retry(t, request("x", 1), RetryPolicy{}, [](auto) {}),
            "Paraphrased.");
  EXPECT_EQ(hits_.load(), 2);
}

TEST_F(LocalServer, ClientErrorsAreFinal) {
  mode_ = 2;
  auto t = client();
  try {
    complete_with_retry(t, request("x", 1), RetryPolicy{}, [](auto) {});
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_FALSE(e.retryable());
  }
  EXPECT_EQ(hits_.load(), 1);
  mode_ = 3;
  EXPECT_THROW(t.complete(request("x", 1)), TransportError);
}

TEST(Http, UnreachableIsRetryable) {
  HttpTransport t({.endpoint = "http://127.0.0.1:1/v1/chat/completions",
                   .api_key = "k",
                   .timeout = std::chrono::seconds(2)});
  try {
    t.complete(request("x", 1));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_TRUE(e.retryable());
  }
}

}  // namespace
}  // namespace zgptda::transport
