#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <semaphore>
#include <thread>

#include "hgen/hash.hpp"
#include "hgen/provider.hpp"
#include "httplib.h"
#include "json.hpp"

namespace hgen {

using nlohmann::json;

namespace {

struct ParsedUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ConfigError("provider endpoint is not a URL: " + url);
  std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string resolve_api_key(const ProviderConfig& config) {
  if (config.api_key_env.empty()) return "";
  const char* value = std::getenv(config.api_key_env.c_str());
  if (value == nullptr || *value == '\0')
    throw ProviderError("API key env var " + config.api_key_env +
                            " is unset or empty",
                        "", false);
  return value;
}

// Shared transport: bounded concurrency, retry loop, auth headers.
class HttpTransport {
 public:
  explicit HttpTransport(const ProviderConfig& config)
      : config_(config),
        url_(split_url(config.endpoint)),
        api_key_(resolve_api_key(config)),
        slots_(std::max(1, config.parallelism)) {}

  json post_json(const json& body, const std::string& digest) {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<256>& slots;
      ~Release() { slots.release(); }
    } release{slots_};

    httplib::Headers headers;
    if (!api_key_.empty()) {
      headers.emplace("x-api-key", api_key_);
      headers.emplace("Authorization", "Bearer " + api_key_);
    }
    std::string payload = body.dump();
    std::string last_error;
    int attempts = 1 + std::max(0, config_.max_retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
      if (attempt > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
      httplib::Client client(url_.base);
      client.set_connection_timeout(0, config_.timeout_ms * 1000);
      client.set_read_timeout(config_.timeout_ms / 1000,
                              (config_.timeout_ms % 1000) * 1000);
      auto response =
          client.Post(url_.path, headers, payload, "application/json");
      if (!response) {
        last_error = "transport failure: " + httplib::to_string(response.error());
        continue;
      }
      if (response->status == 429 || response->status >= 500) {
        last_error = "HTTP " + std::to_string(response->status);
        continue;
      }
      if (response->status != 200)
        throw ProviderError("provider rejected request (HTTP " +
                                std::to_string(response->status) +
                                "): " + response->body,
                            digest, false);
      try {
        return json::parse(response->body);
      } catch (const json::exception& err) {
        throw ProviderError(
            std::string("provider returned unparseable JSON: ") + err.what(),
            digest, false);
      }
    }
    throw ProviderError("provider unreachable after " +
                            std::to_string(attempts) + " attempts (" +
                            last_error + ")",
                        digest, true);
  }

  const ProviderConfig& config() const { return config_; }

 private:
  ProviderConfig config_;
  ParsedUrl url_;
  std::string api_key_;
  std::counting_semaphore<256> slots_;
};

class HttpCompletionProvider : public CompletionProvider {
 public:
  explicit HttpCompletionProvider(const ProviderConfig& config)
      : transport_(config) {}

  std::string complete(const CompletionRequest& request) override {
    std::string digest = request_digest(request, transport_.config().model_name);
    json body = {
        {"model", transport_.config().model_name},
        {"system", request.system_prompt},
        {"messages", json::array({json{{"role", "user"},
                                       {"content", request.user_prompt}}})},
        {"max_tokens", request.max_tokens},
        {"temperature", request.temperature},
    };
    json response = transport_.post_json(body, digest);
    std::string text;
    try {
      text = response.at(json::json_pointer(transport_.config().response_pointer))
                 .get<std::string>();
    } catch (const json::exception&) {
      throw ProviderError("completion response lacks text at pointer " +
                              transport_.config().response_pointer,
                          digest, false);
    }
    if (text.empty())
      throw ProviderError("provider returned empty body", digest, false);
    return text;
  }

  std::string identity() const override {
    return "http:" + transport_.config().model_name;
  }

 private:
  HttpTransport transport_;
};

class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(const ProviderConfig& config)
      : transport_(config) {}

  std::vector<Embedding> embed(const std::vector<std::string>& texts) override {
    if (texts.empty()) throw ArgumentError("embed: no input texts");
    json body = {{"model", transport_.config().model_name}, {"input", texts}};
    std::string digest = sha256_hex(body.dump());
    json response = transport_.post_json(body, digest);
    std::vector<Embedding> embeddings;
    try {
      const json& data = response.at("data");
      embeddings.reserve(data.size());
      for (const json& item : data) {
        Embedding embedding;
        embedding.values = item.at("embedding").get<std::vector<double>>();
        embeddings.push_back(std::move(embedding));
      }
    } catch (const json::exception& err) {
      throw ProviderError(std::string("malformed embedding response: ") +
                              err.what(),
                          digest, false);
    }
    if (embeddings.size() != texts.size())
      throw ProviderError("embedding count mismatch", digest, false);
    for (const Embedding& embedding : embeddings) {
      if (embedding.dim() == 0 || embedding.dim() != embeddings.front().dim())
        throw ProviderError("inconsistent embedding dimensions", digest, false);
      for (double value : embedding.values)
        if (!std::isfinite(value))
          throw ProviderError("non-finite embedding entry", digest, false);
    }
    return embeddings;
  }

  std::string identity() const override {
    return "http:" + transport_.config().model_name;
  }

 private:
  HttpTransport transport_;
};

}  // namespace

std::shared_ptr<CompletionProvider> make_http_completion_provider(
    const ProviderConfig& config) {
  if (config.endpoint.empty())
    throw ConfigError("http completion provider requires an endpoint");
  return std::make_shared<HttpCompletionProvider>(config);
}

std::shared_ptr<EmbeddingProvider> make_http_embedding_provider(
    const ProviderConfig& config) {
  if (config.endpoint.empty())
    throw ConfigError("http embedding provider requires an endpoint");
  return std::make_shared<HttpEmbeddingProvider>(config);
}

}  // namespace hgen
