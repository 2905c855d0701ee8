// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <future>

#include "hilite/error.h"
#include "hilite/scorer.h"
#include "http_client.h"
#include "httplib.h"

namespace hilite {
namespace internal {
namespace {

struct Url {
  std::string base;    // scheme://host[:port]
  std::string prefix;  // path prefix without trailing slash
};

Url SplitUrl(const std::string& endpoint) {
  Url url;
  const auto scheme = endpoint.find("://");
  const auto path_start =
      endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) {
    url.base = endpoint;
  } else {
    url.base = endpoint.substr(0, path_start);
    url.prefix = endpoint.substr(path_start);
    while (!url.prefix.empty() && url.prefix.back() == '/') url.prefix.pop_back();
  }
  return url;
}

std::string Check(const httplib::Result& res, const std::string& method,
                  const std::string& url) {
  if (!res) {
    throw TransportError(method + " " + url + ": " +
                         httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError(method + " " + url + ": HTTP status " +
                         std::to_string(res->status));
  }
  return res->body;
}

}  // namespace

std::string PostJson(const std::string& endpoint, std::string_view path,
                     const std::string& body, int timeout_seconds) {
  const Url url = SplitUrl(endpoint);
  const std::string full_path = url.prefix + std::string(path);
  httplib::Client client(url.base);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  auto res = client.Post(full_path, body, "application/json");
  return Check(res, "POST", url.base + full_path);
}

std::string GetJson(const std::string& endpoint, std::string_view path,
                    int timeout_seconds) {
  const Url url = SplitUrl(endpoint);
  const std::string full_path = url.prefix + std::string(path);
  httplib::Client client(url.base);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  auto res = client.Get(full_path);
  return Check(res, "GET", url.base + full_path);
}

}  // namespace internal

HttpScoreSource::HttpScoreSource(std::string endpoint,
                                 HttpScorerOptions options)
    : endpoint_(ResolveScorerEndpoint(std::move(endpoint))),
      options_(options) {
  if (endpoint_.empty()) throw ConfigError("scorer endpoint is not configured");
  options_.batch_size = std::max(1, options_.batch_size);
  options_.max_in_flight = std::max(1, options_.max_in_flight);
}

std::vector<ScoreResponse> HttpScoreSource::Score(
    std::span<const ScoreRequest> requests) const {
  for (const auto& r : requests) ValidateRequest(r);
  std::vector<ScoreResponse> out;
  out.reserve(requests.size());

  auto run_batch = [this](std::span<const ScoreRequest> batch) {
    const std::string body = EncodeScoreRequestBody(batch);
    const std::string reply = internal::PostJson(endpoint_, "/v1/score", body,
                                                 options_.timeout_seconds);
    return DecodeScoreResponseBody(reply, batch);
  };

  const std::size_t batch = static_cast<std::size_t>(options_.batch_size);
  std::size_t pos = 0;
  while (pos < requests.size()) {
    // Up to max_in_flight batches at once; results are appended in order.
    std::vector<std::future<std::vector<ScoreResponse>>> wave;
    for (int k = 0; k < options_.max_in_flight && pos < requests.size(); ++k) {
      const std::size_t n = std::min(batch, requests.size() - pos);
      auto slice = requests.subspan(pos, n);
      pos += n;
      wave.push_back(std::async(options_.max_in_flight == 1
                                    ? std::launch::deferred
                                    : std::launch::async,
                                run_batch, slice));
    }
    for (auto& f : wave) {
      auto part = f.get();
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

}  // namespace hilite
