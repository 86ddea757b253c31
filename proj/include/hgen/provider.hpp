#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hgen/embedding.hpp"
#include "hgen/errors.hpp"

namespace hgen {

struct CompletionRequest {
  std::string system_prompt;
  std::string user_prompt;
  int max_tokens = 2048;
  double temperature = 0.0;  // 0 by default for reproducibility
};

// Stable digest of the full request (plus model identity). Cache key and
// error correlation handle.
std::string request_digest(const CompletionRequest& request,
                           const std::string& model_name);

enum class ProviderKind { http_completion, http_embedding, mock };

struct ProviderConfig {
  ProviderKind kind = ProviderKind::mock;
  std::string endpoint;           // http kinds only, full URL
  std::string api_key_env;        // env var holding the key, never the key
  std::string model_name = "mock";
  int timeout_ms = 30000;
  int max_retries = 2;            // attempts = 1 + max_retries
  int parallelism = 4;
  // JSON pointer to the generated text in the completion response body.
  std::string response_pointer = "/content/0/text";
};

class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  // Non-empty completion text. Safe for concurrent invocation.
  virtual std::string complete(const CompletionRequest& request) = 0;
  virtual std::string identity() const = 0;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // One embedding per input, order preserved, all of the same dimension.
  virtual std::vector<Embedding> embed(const std::vector<std::string>& texts) = 0;
  virtual std::string identity() const = 0;
};

// Deterministic offline completion provider. Responses are resolved in
// order: exact canned digest, first matching prompt substring rule, then a
// generated stub derived from the request digest and the prompt's content
// words. Stub generation honors an "exactly N" directive in the prompt by
// emitting an N-item "1. Title: ..." list, so pipeline output stays
// parseable end to end.
class MockCompletionProvider : public CompletionProvider {
 public:
  explicit MockCompletionProvider(std::string model_name = "mock-completion");

  std::string complete(const CompletionRequest& request) override;
  std::string identity() const override { return "mock:" + model_name_; }

  void respond_to_digest(const std::string& digest, std::string response);
  void respond_when_contains(std::string needle, std::string response);

  int call_count() const;
  std::vector<CompletionRequest> calls() const;

 private:
  std::string stub_response(const CompletionRequest& request) const;

  std::string model_name_;
  mutable std::mutex mutex_;
  std::map<std::string, std::string> canned_;
  std::vector<std::pair<std::string, std::string>> contains_rules_;
  std::vector<CompletionRequest> calls_;
};

// Deterministic offline embedding provider: token-hash bag-of-words vector,
// L2-normalized. Shared words yield higher cosine, which gives the
// clustering stages plausible structure with zero dependencies.
class MockEmbeddingProvider : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDim = 256;

  std::vector<Embedding> embed(const std::vector<std::string>& texts) override;
  std::string identity() const override { return "mock:bag-of-words-256"; }

  static Embedding embed_one(const std::string& text);

  int call_count() const;

 private:
  mutable std::mutex mutex_;
  int call_count_ = 0;
};

// Content-addressed on-disk completion cache (JSON lines keyed by request
// digest). Hits never touch the inner provider.
class CachedCompletionProvider : public CompletionProvider {
 public:
  CachedCompletionProvider(std::shared_ptr<CompletionProvider> inner,
                           std::string cache_path, std::string model_name);

  std::string complete(const CompletionRequest& request) override;
  std::string identity() const override { return inner_->identity(); }

 private:
  std::shared_ptr<CompletionProvider> inner_;
  std::string cache_path_;
  std::string model_name_;
  std::mutex mutex_;
  std::map<std::string, std::string> entries_;
};

// Same idea for embeddings, keyed per individual text.
class CachedEmbeddingProvider : public EmbeddingProvider {
 public:
  CachedEmbeddingProvider(std::shared_ptr<EmbeddingProvider> inner,
                          std::string cache_path, std::string model_name);

  std::vector<Embedding> embed(const std::vector<std::string>& texts) override;
  std::string identity() const override { return inner_->identity(); }

 private:
  std::shared_ptr<EmbeddingProvider> inner_;
  std::string cache_path_;
  std::string model_name_;
  std::mutex mutex_;
  std::map<std::string, Embedding> entries_;
};

// HTTP-backed providers. POST {model, system, messages, max_tokens,
// temperature}; the completion text is extracted with
// config.response_pointer. Embeddings POST {model, input:[...]} and read
// /data/i/embedding. API keys come from the env var named in the config.
std::shared_ptr<CompletionProvider> make_http_completion_provider(
    const ProviderConfig& config);
std::shared_ptr<EmbeddingProvider> make_http_embedding_provider(
    const ProviderConfig& config);

// Builds the configured provider pair, wrapping both in on-disk caches when
// cache_dir is non-empty. Fails fast on a missing API key env var.
struct ProviderSet {
  std::shared_ptr<CompletionProvider> completion;
  std::shared_ptr<EmbeddingProvider> embedding;
};
ProviderSet make_providers(const ProviderConfig& completion_config,
                           const ProviderConfig& embedding_config,
                           const std::string& cache_dir);

}  // namespace hgen
