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

#include "zgptda/transport.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "zgptda/corpus.hpp"
#include "zgptda/hashing.hpp"
#include "zgptda/io.hpp"

namespace zgptda::transport {
namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(std::move(w));
  return out;
}

}  // namespace

nlohmann::json wire_body(const ChatRequest& req) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : req.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  return {{"model", req.model},
          {"messages", std::move(messages)},
          {"temperature", req.temperature}};
}

std::string request_hash(const ChatRequest& req) {
  return hashing::sha256_hex(wire_body(req).dump() + "#" +
                             std::to_string(req.slot));
}

std::string MockTransport::complete(const ChatRequest& req) {
  if (req.messages.empty()) {
    throw TransportError("mock: request has no messages", false);
  }
  // The source text follows the first blank line of the prompt when there
  // is one.
  std::string_view prompt = req.messages.back().content;
  if (const auto cut = prompt.find("\n\n"); cut != std::string_view::npos) {
    prompt.remove_prefix(cut + 2);
  }
  auto sentences = corpus::split_sentences(prompt);
  if (sentences.empty()) return std::string(prompt);

  const std::string hash = request_hash(req);
  std::mt19937_64 rng(seed_ ^ std::stoull(hash.substr(0, 16), nullptr, 16));
  const std::size_t shift = (req.slot == 0 ? 0 : req.slot - 1) % sentences.size();
  std::rotate(sentences.begin(), sentences.begin() + shift, sentences.end());

  std::string out;
  for (const auto& sentence : sentences) {
    auto words = split_ws(sentence);
    if (words.size() > 3 && rng() % 3 == 0) {
      const std::size_t i = rng() % (words.size() - 1);
      std::swap(words[i], words[i + 1]);
    }
    if (words.size() > 3 && rng() % 4 == 0) {
      words.erase(words.begin() + static_cast<std::ptrdiff_t>(
                                      rng() % (words.size() - 1)));
    }
    for (const auto& w : words) {
      if (!out.empty()) out.push_back(' ');
      out += w;
    }
  }
  return out;
}

std::unique_ptr<ReplayTransport> ReplayTransport::load(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open replay file " + path.string());
  auto out = std::make_unique<ReplayTransport>();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      rec = nullptr;
    }
    if (!rec.is_object() || !rec.contains("request_hash") ||
        !rec["request_hash"].is_string() || !rec.contains("completion") ||
        !rec["completion"].is_string()) {
      throw LoadError(path.string() + ": line " + std::to_string(line_no) +
                          ": expected {\"request_hash\", \"completion\"}",
                      line_no);
    }
    out->completions_[rec["request_hash"].get<std::string>()] =
        rec["completion"].get<std::string>();
  }
  return out;
}

std::string ReplayTransport::complete(const ChatRequest& req) {
  const auto hash = request_hash(req);
  const auto it = completions_.find(hash);
  if (it == completions_.end()) {
    throw TransportError("replay: no completion recorded for request " + hash,
                         false);
  }
  return it->second;
}

std::string RecordingTransport::complete(const ChatRequest& req) {
  std::string text = inner_.complete(req);
  std::lock_guard lock(mu_);
  recorded_[request_hash(req)] = text;
  return text;
}

void RecordingTransport::save(const std::filesystem::path& path) const {
  std::string body;
  {
    std::lock_guard lock(mu_);
    for (const auto& [hash, text] : recorded_) {
      body += nlohmann::json{{"request_hash", hash}, {"completion", text}}.dump();
      body += '\n';
    }
  }
  io::write_atomic(path, body);
}

HttpTransport::HttpTransport(HttpConfig config) : config_(std::move(config)) {
  const auto scheme = config_.endpoint.find("://");
  if (scheme == std::string::npos) {
    throw std::invalid_argument("live transport: endpoint must be a URL");
  }
  const auto slash = config_.endpoint.find('/', scheme + 3);
  origin_ = config_.endpoint.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : config_.endpoint.substr(slash);
  if (config_.api_key.empty()) {
    throw std::invalid_argument(std::string("live transport: ") + kApiKeyEnv +
                                " is not set");
  }
}

std::string HttpTransport::complete(const ChatRequest& req) {
  httplib::Client client(origin_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  client.set_bearer_token_auth(config_.api_key);
  const auto res =
      client.Post(path_, wire_body(req).dump(), "application/json");
  if (!res) {
    throw TransportError("live: " + httplib::to_string(res.error()), true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransportError("live: HTTP " + std::to_string(res->status), true);
  }
  if (res->status != 200) {
    throw TransportError("live: HTTP " + std::to_string(res->status) + ": " +
                             res->body.substr(0, 200),
                         false);
  }
  try {
    const auto body = nlohmann::json::parse(res->body);
    return body.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("live: unexpected response: ") + e.what(),
                         false);
  }
}

std::string complete_with_retry(Transport& transport, const ChatRequest& req,
                                const RetryPolicy& policy,
                                const Sleeper& sleep) {
  auto backoff = policy.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return transport.complete(req);
    } catch (const TransportError& e) {
      if (!e.retryable() || attempt >= policy.max_attempts) throw;
    }
    if (sleep) {
      sleep(backoff);
    } else {
      std::this_thread::sleep_for(backoff);
    }
    backoff = std::min(
        policy.max_backoff,
        std::chrono::milliseconds(static_cast<std::int64_t>(
            static_cast<double>(backoff.count()) * policy.multiplier)));
  }
}

}  // namespace zgptda::transport
