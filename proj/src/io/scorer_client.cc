// Copyright 2026 The QRA Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qra/io/scorer_client.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json_util.h"

namespace qra {

using json_util::json;

std::string_view ToString(ScorerTask t) {
  switch (t) {
    case ScorerTask::kSentiment: return "sentiment";
    case ScorerTask::kTopic: return "topic";
    case ScorerTask::kToxicity: return "toxicity";
    case ScorerTask::kPerplexity: return "perplexity";
  }
  return "sentiment";
}

ScorerTask ParseScorerTask(std::string_view s) {
  if (s == "sentiment") return ScorerTask::kSentiment;
  if (s == "topic") return ScorerTask::kTopic;
  if (s == "toxicity") return ScorerTask::kToxicity;
  if (s == "perplexity") return ScorerTask::kPerplexity;
  throw Error(ErrorCode::kSchema, "unknown scorer task '" + std::string(s) + "'");
}

MetricDescriptor ScorerMetric(ScorerTask task) {
  MetricDescriptor m;
  m.id = std::string(ToString(task));
  m.name = m.id;
  if (task == ScorerTask::kPerplexity) {
    m.direction = Direction::kLowerBetter;
    m.unit = Unit::kRaw;
  } else {
    m.direction = Direction::kHigherBetter;
    m.unit = Unit::kPercent;
  }
  return m;
}

std::string EncodeRequest(const ScorerRequest& request) {
  json body{{"task", std::string(ToString(request.task))},
            {"texts", request.texts}};
  if (request.target_label) body["target_label"] = *request.target_label;
  return body.dump();
}

std::vector<double> DecodeResponse(std::string_view body,
                                   const ScorerRequest& request) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kScorer,
                std::string("response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("scores") || !doc["scores"].is_array()) {
    throw Error(ErrorCode::kScorer, "response lacks a 'scores' array");
  }
  const json& scores = doc["scores"];
  if (scores.size() != request.texts.size()) {
    throw Error(ErrorCode::kCountMismatch,
                "scorer returned " + std::to_string(scores.size()) +
                    " scores for " + std::to_string(request.texts.size()) +
                    " texts");
  }
  std::vector<double> out;
  out.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const json& s = scores[i];
    const std::string where = "scores[" + std::to_string(i) + "]";
    if (request.task == ScorerTask::kPerplexity) {
      if (!s.is_number() || !(s.get<double>() > 0.0) ||
          !std::isfinite(s.get<double>())) {
        throw Error(ErrorCode::kScorer,
                    where + ": perplexity must be a positive number");
      }
      out.push_back(s.get<double>());
    } else if (s.is_string()) {
      if (!request.target_label) {
        throw Error(ErrorCode::kScorer, where + ": label without a target");
      }
      out.push_back(s.get<std::string>() == *request.target_label ? 1.0 : 0.0);
    } else if (s.is_boolean()) {
      out.push_back(s.get<bool>() ? 1.0 : 0.0);
    } else if (s.is_number() &&
               (s.get<double>() == 0.0 || s.get<double>() == 1.0)) {
      out.push_back(s.get<double>());
    } else {
      throw Error(ErrorCode::kScorer,
                  where + ": expected a label or a 0/1 indicator, got " +
                      s.dump());
    }
  }
  return out;
}

namespace {

class HttpTransport : public ScorerTransport {
 public:
  explicit HttpTransport(const ScorerEndpoint& endpoint) {
    const std::string& url = endpoint.base_url;
    const std::size_t scheme = url.find("://");
    const std::size_t path_start =
        url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    const std::string origin =
        path_start == std::string::npos ? url : url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/score" : url.substr(path_start);
    client_ = std::make_unique<httplib::Client>(origin);
    if (!client_->is_valid()) {
      throw Error(ErrorCode::kNetwork, "invalid scorer URL '" + url + "'");
    }
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
        endpoint.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
        endpoint.timeout - secs);
    client_->set_connection_timeout(secs.count(), usecs.count());
    client_->set_read_timeout(secs.count(), usecs.count());
    client_->set_write_timeout(secs.count(), usecs.count());
    if (endpoint.bearer_token) {
      client_->set_bearer_token_auth(*endpoint.bearer_token);
    }
    url_ = url;
  }

  HttpResponse Post(const std::string& body) override {
    httplib::Result res = client_->Post(path_, body, "application/json");
    if (!res) {
      throw Error(ErrorCode::kNetwork, "POST " + url_ + ": " +
                                           httplib::to_string(res.error()));
    }
    return {res->status, res->body};
  }

 private:
  std::unique_ptr<httplib::Client> client_;
  std::string path_;
  std::string url_;
};

bool Retryable(const Error& e) { return e.code() == ErrorCode::kNetwork; }

}  // namespace

TransportFactory HttpTransportFactory(const ScorerEndpoint& endpoint) {
  return [endpoint]() -> std::unique_ptr<ScorerTransport> {
    return std::make_unique<HttpTransport>(endpoint);
  };
}

std::vector<double> ScoreBatch(ScorerTransport& transport,
                               const ScorerRequest& request,
                               const RetryPolicy& retry) {
  const std::string body = EncodeRequest(request);
  std::chrono::milliseconds backoff = retry.initial_backoff;
  const int attempts = std::max(1, retry.max_attempts);
  for (int attempt = 1;; ++attempt) {
    try {
      const HttpResponse res = transport.Post(body);
      if (res.status >= 200 && res.status < 300) {
        return DecodeResponse(res.body, request);
      }
      if (res.status >= 500) {
        // Server-side failures are treated like transport failures.
        throw Error(ErrorCode::kNetwork,
                    "scorer status " + std::to_string(res.status) + ": " +
                        res.body);
      }
      throw Error(ErrorCode::kScorer,
                  "scorer status " + std::to_string(res.status) + ": " +
                      res.body);
    } catch (const Error& e) {
      if (!Retryable(e) || attempt >= attempts) throw;
    }
    if (retry.sleep) {
      retry.sleep(backoff);
    } else {
      std::this_thread::sleep_for(backoff);
    }
    backoff = std::min(
        retry.max_backoff,
        std::chrono::milliseconds(static_cast<long long>(
            static_cast<double>(backoff.count()) * retry.multiplier)));
  }
}

std::vector<ScoreCell> ScoreRecords(std::span<const GenerationRecord> records,
                                    const ScorerEndpoint& endpoint,
                                    const ScoreOptions& options) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyOutputs, "no generation records to score");
  }
  if (endpoint.max_batch < 1) {
    throw Error(ErrorCode::kSchema, "max_batch must be >= 1");
  }
  const bool classifier = endpoint.task != ScorerTask::kPerplexity;
  const std::string attribute(ToString(endpoint.task));

  struct Group {
    std::optional<std::string> target;
    std::vector<const GenerationRecord*> records;
    std::vector<double> scores;
  };
  std::map<CellKey, Group> groups;
  for (const GenerationRecord& r : records) {
    const CellKey key{r.system, attribute, ConditionId(r.attributes)};
    Group& g = groups[key];
    if (classifier && !g.target) {
      if (endpoint.target_label) {
        g.target = endpoint.target_label;
      } else if (auto it = r.attributes.find(attribute);
                 it != r.attributes.end()) {
        g.target = it->second;
      } else {
        throw Error(ErrorCode::kSchema,
                    "record (" + r.system + ", prefix " + r.prefix_id +
                        ") has no '" + attribute +
                        "' attribute and no target label was given");
      }
    }
    g.records.push_back(&r);
  }

  struct Task {
    Group* group;
    std::size_t begin;
    std::size_t end;
  };
  std::vector<Task> tasks;
  for (auto& [key, g] : groups) {
    g.scores.resize(g.records.size());
    const std::size_t step = static_cast<std::size_t>(endpoint.max_batch);
    for (std::size_t b = 0; b < g.records.size(); b += step) {
      tasks.push_back({&g, b, std::min(g.records.size(), b + step)});
    }
  }

  const TransportFactory factory =
      options.transport ? options.transport : HttpTransportFactory(endpoint);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      std::unique_ptr<ScorerTransport> transport = factory();
      for (std::size_t t = next++; t < tasks.size(); t = next++) {
        {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (failure) return;
        }
        const Task& task = tasks[t];
        ScorerRequest request{endpoint.task, task.group->target, {}};
        for (std::size_t i = task.begin; i < task.end; ++i) {
          request.texts.push_back(task.group->records[i]->text);
        }
        const std::vector<double> scores =
            ScoreBatch(*transport, request, options.retry);
        std::copy(scores.begin(), scores.end(),
                  task.group->scores.begin() +
                      static_cast<std::ptrdiff_t>(task.begin));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(1, endpoint.parallelism)), 1,
      tasks.size());
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < workers; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ScoreCell> cells;
  for (const auto& [key, g] : groups) {
    double sum = 0.0;
    for (double s : g.scores) sum += s;
    const double n = static_cast<double>(g.scores.size());
    ScoreCell cell;
    cell.key = key;
    cell.value = classifier ? 100.0 * sum / n : sum / n;
    cell.n_basis = static_cast<int>(g.scores.size());
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace qra
