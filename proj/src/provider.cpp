#include "hgen/provider.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <unordered_map>

#include "hgen/hash.hpp"
#include "hgen/textutil.hpp"
#include "json.hpp"

namespace hgen {

using nlohmann::json;

std::string request_digest(const CompletionRequest& request,
                           const std::string& model_name) {
  char temperature_buf[32];
  std::snprintf(temperature_buf, sizeof temperature_buf, "%.6g",
                request.temperature);
  std::string material = model_name;
  material += '\x1f';
  material += request.system_prompt;
  material += '\x1f';
  material += request.user_prompt;
  material += '\x1f';
  material += std::to_string(request.max_tokens);
  material += '\x1f';
  material += temperature_buf;
  return sha256_hex(material);
}

MockCompletionProvider::MockCompletionProvider(std::string model_name)
    : model_name_(std::move(model_name)) {}

void MockCompletionProvider::respond_to_digest(const std::string& digest,
                                               std::string response) {
  std::lock_guard lock(mutex_);
  canned_[digest] = std::move(response);
}

void MockCompletionProvider::respond_when_contains(std::string needle,
                                                   std::string response) {
  std::lock_guard lock(mutex_);
  contains_rules_.emplace_back(std::move(needle), std::move(response));
}

int MockCompletionProvider::call_count() const {
  std::lock_guard lock(mutex_);
  return static_cast<int>(calls_.size());
}

std::vector<CompletionRequest> MockCompletionProvider::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

std::string MockCompletionProvider::complete(const CompletionRequest& request) {
  if (request.user_prompt.empty())
    throw ArgumentError("completion request with empty user prompt");
  std::string digest = request_digest(request, model_name_);
  {
    std::lock_guard lock(mutex_);
    calls_.push_back(request);
    auto canned = canned_.find(digest);
    if (canned != canned_.end()) {
      if (canned->second.empty())
        throw ProviderError("mock provider returned empty body", digest, false);
      return canned->second;
    }
    for (const auto& [needle, response] : contains_rules_) {
      if (request.user_prompt.find(needle) != std::string::npos) {
        if (response.empty())
          throw ProviderError("mock provider returned empty body", digest, false);
        return response;
      }
    }
  }
  return stub_response(request);
}

namespace {

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = {
      "this",   "that",  "with",   "from",  "have",  "will",  "which",
      "their",  "there", "would",  "could", "should", "about", "these",
      "those",  "class", "public", "private", "static", "void", "return",
      "import", "package", "const", "include", "using", "namespace",
      "exactly", "items", "item",  "format", "title", "each", "into",
      "follow", "numbered", "list", "respond", "write", "below", "given"};
  return words;
}

std::vector<std::string> content_words(const std::string& text,
                                       std::size_t limit) {
  std::unordered_map<std::string, int> counts;
  for (const std::string& token : tokenize(text)) {
    if (token.size() < 4) continue;
    if (std::any_of(token.begin(), token.end(),
                    [](unsigned char ch) { return std::isdigit(ch); }))
      continue;
    if (stopwords().count(token)) continue;
    ++counts[token];
  }
  std::vector<std::pair<std::string, int>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> words;
  for (const auto& [word, count] : ranked) {
    words.push_back(word);
    if (words.size() >= limit) break;
  }
  return words;
}

std::string capitalize(std::string word) {
  if (!word.empty())
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  return word;
}

// Parses "exactly <N>" out of the prompt, if present.
std::optional<int> requested_count(const std::string& prompt) {
  std::size_t pos = prompt.find("exactly ");
  while (pos != std::string::npos) {
    std::size_t digit = pos + 8;
    if (digit < prompt.size() && std::isdigit(static_cast<unsigned char>(prompt[digit]))) {
      int value = 0;
      while (digit < prompt.size() &&
             std::isdigit(static_cast<unsigned char>(prompt[digit]))) {
        value = value * 10 + (prompt[digit] - '0');
        ++digit;
      }
      return value;
    }
    pos = prompt.find("exactly ", pos + 1);
  }
  return std::nullopt;
}

}  // namespace

std::string MockCompletionProvider::stub_response(
    const CompletionRequest& request) const {
  std::string digest = request_digest(request, model_name_);
  std::string tag = digest.substr(0, 8);
  std::vector<std::string> words = content_words(request.user_prompt, 24);
  if (words.empty()) words = {"module", "behavior", "logic"};

  auto word_at = [&](std::size_t index) -> const std::string& {
    return words[index % words.size()];
  };

  std::optional<int> count = requested_count(request.user_prompt);
  if (!count.has_value()) {
    std::string body = "Covers";
    for (std::size_t i = 0; i < std::min<std::size_t>(words.size(), 10); ++i)
      body += " " + words[i];
    body += ". Derived reference " + tag + ".";
    return body;
  }

  std::string out;
  for (int item = 0; item < *count; ++item) {
    std::size_t offset = static_cast<std::size_t>(item) * 3;
    out += std::to_string(item + 1) + ". Title: " + capitalize(word_at(offset)) +
           " " + word_at(offset + 1) + " " + word_at(offset + 2) + "\n";
    out += "Handles " + word_at(offset) + " " + word_at(offset + 1) + " " +
           word_at(offset + 2) + " together with " + word_at(offset + 3) + " " +
           word_at(offset + 4) + " concerns (" + tag + "-" +
           std::to_string(item + 1) + ").\n";
  }
  return out;
}

std::vector<Embedding> MockEmbeddingProvider::embed(
    const std::vector<std::string>& texts) {
  if (texts.empty()) throw ArgumentError("embed: no input texts");
  {
    std::lock_guard lock(mutex_);
    ++call_count_;
  }
  std::vector<Embedding> embeddings;
  embeddings.reserve(texts.size());
  for (const std::string& text : texts) embeddings.push_back(embed_one(text));
  return embeddings;
}

int MockEmbeddingProvider::call_count() const {
  std::lock_guard lock(mutex_);
  return call_count_;
}

Embedding MockEmbeddingProvider::embed_one(const std::string& text) {
  Embedding embedding;
  embedding.values.assign(kDim, 0.0);
  for (const std::string& token : tokenize(text))
    embedding.values[fnv1a64(token) % kDim] += 1.0;
  double norm_sq = 0.0;
  for (double value : embedding.values) norm_sq += value * value;
  if (norm_sq == 0.0) {
    embedding.values[0] = 1.0;  // tokenless input still needs a direction
    return embedding;
  }
  double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (double& value : embedding.values) value *= inv_norm;
  return embedding;
}

namespace {

void load_jsonl_cache(const std::string& path,
                      const std::function<void(const json&)>& sink) {
  std::ifstream in(path);
  if (!in.good()) return;  // first run: no cache yet
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      sink(json::parse(line));
    } catch (const json::exception&) {
      std::cerr << "warning: skipping corrupt cache line " << line_no << " in "
                << path << "\n";
    }
  }
}

void append_jsonl(const std::string& path, const json& entry) {
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::app);
  out << entry.dump() << "\n";
}

}  // namespace

CachedCompletionProvider::CachedCompletionProvider(
    std::shared_ptr<CompletionProvider> inner, std::string cache_path,
    std::string model_name)
    : inner_(std::move(inner)),
      cache_path_(std::move(cache_path)),
      model_name_(std::move(model_name)) {
  load_jsonl_cache(cache_path_, [this](const json& entry) {
    entries_[entry.at("d").get<std::string>()] = entry.at("r").get<std::string>();
  });
}

std::string CachedCompletionProvider::complete(const CompletionRequest& request) {
  std::string digest = request_digest(request, model_name_);
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(digest);
    if (it != entries_.end()) return it->second;
  }
  std::string response = inner_->complete(request);
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.emplace(digest, response);
  if (inserted) append_jsonl(cache_path_, json{{"d", digest}, {"r", response}});
  return it->second;
}

CachedEmbeddingProvider::CachedEmbeddingProvider(
    std::shared_ptr<EmbeddingProvider> inner, std::string cache_path,
    std::string model_name)
    : inner_(std::move(inner)),
      cache_path_(std::move(cache_path)),
      model_name_(std::move(model_name)) {
  load_jsonl_cache(cache_path_, [this](const json& entry) {
    Embedding embedding;
    embedding.values = entry.at("v").get<std::vector<double>>();
    entries_[entry.at("d").get<std::string>()] = std::move(embedding);
  });
}

std::vector<Embedding> CachedEmbeddingProvider::embed(
    const std::vector<std::string>& texts) {
  if (texts.empty()) throw ArgumentError("embed: no input texts");
  std::vector<Embedding> result(texts.size());
  std::vector<std::size_t> miss_indices;
  std::vector<std::string> miss_texts;
  std::vector<std::string> digests(texts.size());
  {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      digests[i] = sha256_hex(model_name_ + '\x1f' + texts[i]);
      auto it = entries_.find(digests[i]);
      if (it != entries_.end()) {
        result[i] = it->second;
      } else {
        miss_indices.push_back(i);
        miss_texts.push_back(texts[i]);
      }
    }
  }
  if (!miss_texts.empty()) {
    std::vector<Embedding> fetched = inner_->embed(miss_texts);
    if (fetched.size() != miss_texts.size())
      throw ProviderError("embedding provider returned wrong count", "", false);
    std::lock_guard lock(mutex_);
    for (std::size_t k = 0; k < miss_indices.size(); ++k) {
      std::size_t i = miss_indices[k];
      result[i] = fetched[k];
      if (entries_.emplace(digests[i], fetched[k]).second)
        append_jsonl(cache_path_,
                     json{{"d", digests[i]}, {"v", fetched[k].values}});
    }
  }
  return result;
}

ProviderSet make_providers(const ProviderConfig& completion_config,
                           const ProviderConfig& embedding_config,
                           const std::string& cache_dir) {
  ProviderSet providers;
  if (completion_config.kind == ProviderKind::mock) {
    providers.completion = std::make_shared<MockCompletionProvider>(
        completion_config.model_name.empty() ? "mock-completion"
                                             : completion_config.model_name);
  } else {
    providers.completion = make_http_completion_provider(completion_config);
  }
  if (embedding_config.kind == ProviderKind::mock) {
    providers.embedding = std::make_shared<MockEmbeddingProvider>();
  } else {
    providers.embedding = make_http_embedding_provider(embedding_config);
  }
  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir);
    providers.completion = std::make_shared<CachedCompletionProvider>(
        providers.completion,
        (std::filesystem::path(cache_dir) / "completions.jsonl").string(),
        completion_config.model_name);
    providers.embedding = std::make_shared<CachedEmbeddingProvider>(
        providers.embedding,
        (std::filesystem::path(cache_dir) / "embeddings.jsonl").string(),
        embedding_config.model_name);
  }
  return providers;
}

}  // namespace hgen
