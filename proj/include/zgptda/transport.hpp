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

// Chat-completion transports: deterministic mock, recorded replay, and live
// HTTP.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "zgptda/errors.hpp"

namespace zgptda::transport {

struct Message {
  std::string role;
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<Message> messages;
  double temperature = 0.7;
  // Instance slot (1-based). Not sent on the wire; part of the replay key so
  // identical prompts for different slots stay distinct.
  std::size_t slot = 0;
};

/// Wire body: {"messages": [{"content", "role"}...], "model", "temperature"}.
nlohmann::json wire_body(const ChatRequest& req);

/// SHA-256 of the canonical wire body followed by "#<slot>".
std::string request_hash(const ChatRequest& req);

class TransportError : public Error {
 public:
  TransportError(const std::string& what, bool retryable)
      : Error(what), retryable_(retryable) {}
  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// Returns the completion text. Throws TransportError.
  virtual std::string complete(const ChatRequest& req) = 0;
  virtual std::string id() const = 0;
};

/// Canned paraphrases derived from the last message's source text: the
/// sentences are rotated by the slot and lightly perturbed with a generator
/// seeded from (seed, request hash). Identical on every platform.
class MockTransport final : public Transport {
 public:
  explicit MockTransport(std::uint64_t seed) : seed_(seed) {}
  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return "mock"; }

 private:
  std::uint64_t seed_;
};

/// Serves completions from JSON Lines records {request_hash, completion}.
class ReplayTransport final : public Transport {
 public:
  /// Throws LoadError on unreadable or malformed files.
  static std::unique_ptr<ReplayTransport> load(
      const std::filesystem::path& path);

  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return "replay"; }
  std::size_t size() const { return completions_.size(); }

 private:
  std::map<std::string, std::string> completions_;
};

/// Wraps another transport and keeps every successful completion so it can
/// be saved as a replay file.
class RecordingTransport final : public Transport {
 public:
  explicit RecordingTransport(Transport& inner) : inner_(inner) {}
  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return inner_.id(); }

  /// Records sorted by request hash; written atomically.
  void save(const std::filesystem::path& path) const;

 private:
  Transport& inner_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> recorded_;
};

struct HttpConfig {
  // Full URL of the chat-completions endpoint.
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string api_key;
  std::chrono::seconds timeout{60};
};

/// OpenAI-style chat completions. 429 and 5xx are retryable.
class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(HttpConfig config);
  std::string complete(const ChatRequest& req) override;
  std::string id() const override { return "live"; }

 private:
  HttpConfig config_;
  std::string origin_;
  std::string path_;
};

/// Name of the environment variable holding the live API key.
inline constexpr const char* kApiKeyEnv = "ZGPTDA_API_KEY";

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// Calls transport.complete, retrying retryable failures with exponential
/// backoff. Rethrows the last error when attempts run out.
std::string complete_with_retry(Transport& transport, const ChatRequest& req,
                                const RetryPolicy& policy,
                                const Sleeper& sleep = {});

}  // namespace zgptda::transport
