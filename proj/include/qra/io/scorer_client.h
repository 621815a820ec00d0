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

#ifndef QRA_IO_SCORER_CLIENT_H_
#define QRA_IO_SCORER_CLIENT_H_

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qra/core/model.h"

namespace qra {

// Model-based scoring (attribute classifiers, language-model perplexity) runs
// in an external service. Wire contract, JSON over HTTP POST:
//   request:  {"task": "...", "target_label": "..."?, "texts": [...]}
//   response: {"scores": [...]}
// Classifier scores are predicted labels or 0/1 indicators of target_label;
// perplexity scores are positive reals. One score per text, in order.
enum class ScorerTask { kSentiment, kTopic, kToxicity, kPerplexity };

std::string_view ToString(ScorerTask t);
ScorerTask ParseScorerTask(std::string_view s);

// Environment variable holding an optional bearer token for the scorer.
inline constexpr const char* kScorerTokenEnv = "QRA_SCORER_TOKEN";

struct ScorerEndpoint {
  // "http://host:port/path"; the path defaults to "/score".
  std::string base_url;
  ScorerTask task = ScorerTask::kSentiment;
  // Overrides the per-record intended label (the record attribute named after
  // the task) for classifier tasks.
  std::optional<std::string> target_label;
  std::chrono::milliseconds timeout{30000};
  int max_batch = 32;
  // Batches in flight at once.
  int parallelism = 1;
  std::optional<std::string> bearer_token;
};

struct ScorerRequest {
  ScorerTask task = ScorerTask::kSentiment;
  std::optional<std::string> target_label;
  std::vector<std::string> texts;
};

std::string EncodeRequest(const ScorerRequest& request);
// Returns one value per text: 0/1 indicators for classifier tasks,
// perplexities otherwise. Throws kScorer on malformed bodies and
// kCountMismatch when the score count differs from the text count.
std::vector<double> DecodeResponse(std::string_view body,
                                   const ScorerRequest& request);

struct HttpResponse {
  int status = 0;
  std::string body;
};

class ScorerTransport {
 public:
  virtual ~ScorerTransport() = default;
  // Throws Error(kNetwork) when no response was received.
  virtual HttpResponse Post(const std::string& body) = 0;
};

using TransportFactory = std::function<std::unique_ptr<ScorerTransport>()>;

TransportFactory HttpTransportFactory(const ScorerEndpoint& endpoint);

// Network failures and 5xx responses are retried with exponential backoff;
// 4xx responses fail immediately.
struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{5000};
  // Defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

std::vector<double> ScoreBatch(ScorerTransport& transport,
                               const ScorerRequest& request,
                               const RetryPolicy& retry);

struct ScoreOptions {
  // Defaults to HTTP against endpoint.base_url.
  TransportFactory transport;
  RetryPolicy retry;
};

// One cell per (system, condition) with metric id = task name. Classifier
// cells hold the percentage of outputs carrying the target label; perplexity
// cells the mean perplexity. Cells are sorted by key and independent of
// max_batch and parallelism.
std::vector<ScoreCell> ScoreRecords(std::span<const GenerationRecord> records,
                                    const ScorerEndpoint& endpoint,
                                    const ScoreOptions& options = {});

// Descriptor matching the cells ScoreRecords produces for `task`.
MetricDescriptor ScorerMetric(ScorerTask task);

}  // namespace qra

#endif  // QRA_IO_SCORER_CLIENT_H_
