#include "hgen/summarizer.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "hgen/hash.hpp"
#include "hgen/textutil.hpp"

namespace hgen {

namespace fs = std::filesystem;

namespace {

std::string infer_language(const fs::path& path) {
  static const std::map<std::string, std::string> kByExtension = {
      {".c", "C"},           {".cc", "C++"},     {".cpp", "C++"},
      {".cxx", "C++"},       {".h", "C/C++"},    {".hpp", "C++"},
      {".java", "Java"},     {".js", "JavaScript"},
      {".jsx", "JavaScript"}, {".ts", "TypeScript"},
      {".tsx", "TypeScript"}, {".py", "Python"},  {".go", "Go"},
      {".rs", "Rust"},       {".rb", "Ruby"},    {".cs", "C#"},
      {".vue", "Vue"},       {".kt", "Kotlin"},  {".swift", "Swift"},
      {".php", "PHP"},       {".scala", "Scala"}};
  auto it = kByExtension.find(to_lower(path.extension().string()));
  return it == kByExtension.end() ? "unknown" : it->second;
}

bool looks_binary(const std::string& content) {
  std::size_t probe = std::min<std::size_t>(content.size(), 8000);
  for (std::size_t i = 0; i < probe; ++i)
    if (content[i] == '\0') return true;
  return false;
}

}  // namespace

std::vector<SourceFile> discover_sources(
    const std::string& root, const std::vector<std::string>& include_globs,
    const std::vector<std::string>& exclude_globs) {
  if (!fs::exists(root))
    throw Error("source root does not exist: " + root);
  if (!fs::is_directory(root))
    throw Error("source root is not a directory: " + root);

  std::vector<SourceFile> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string relative = fs::relative(entry.path(), root).generic_string();
    bool included = include_globs.empty();
    for (const std::string& glob : include_globs)
      included = included || glob_match(glob, relative);
    if (!included) continue;
    bool excluded = false;
    for (const std::string& glob : exclude_globs)
      excluded = excluded || glob_match(glob, relative);
    if (excluded) continue;

    std::ifstream in(entry.path(), std::ios::binary);
    if (!in.good()) {
      std::cerr << "warning: skipping unreadable file " << relative << "\n";
      continue;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string content = buffer.str();
    if (content.empty() || looks_binary(content)) continue;

    SourceFile file;
    file.path = relative;
    file.language = infer_language(entry.path());
    file.content = sanitize_utf8(content);
    file.loc = line_count(file.content);
    files.push_back(std::move(file));
  }
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  return files;
}

std::vector<std::string> chunk_source(const SourceFile& file, int budget_tokens) {
  if (budget_tokens <= 0) throw ArgumentError("chunk budget must be positive");
  std::size_t budget_chars = static_cast<std::size_t>(budget_tokens) * 4;
  std::vector<std::string> chunks;
  std::string current;
  for (std::string& line : split_lines_keep_ends(file.content)) {
    if (!current.empty() && current.size() + line.size() > budget_chars) {
      chunks.push_back(std::move(current));
      current.clear();
    }
    current += line;
  }
  if (!current.empty()) chunks.push_back(std::move(current));
  return chunks;
}

Artifact summarize_code(const SourceFile& file, CompletionProvider& provider,
                        const PromptLibrary& prompts,
                        const SummarizerOptions& options) {
  if (trim(file.content).empty())
    throw PipelineError("empty source file: " + file.path);

  std::vector<std::string> chunks = chunk_source(file, options.chunk_budget_tokens);
  std::vector<std::string> outlines;
  outlines.reserve(chunks.size());
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    CompletionRequest request;
    request.user_prompt = prompts.render("summarize_outline",
                                         {{"file_name", file.path},
                                          {"language", file.language},
                                          {"content", chunks[i]}});
    request.max_tokens = options.max_tokens;
    try {
      outlines.push_back(provider.complete(request));
    } catch (const ProviderError& err) {
      throw ProviderError(std::string(err.what()) + " (file " + file.path + ")",
                          err.request_digest(), err.retriable());
    }
  }
  std::string combined_outline;
  for (std::size_t i = 0; i < outlines.size(); ++i) {
    if (i > 0) combined_outline += "\n\n";
    combined_outline += outlines[i];
  }

  CompletionRequest polish;
  polish.user_prompt = prompts.render(
      "summarize_polish",
      {{"file_name", file.path}, {"outline", combined_outline}});
  polish.max_tokens = options.max_tokens;
  std::string summary;
  try {
    summary = trim(provider.complete(polish));
  } catch (const ProviderError& err) {
    throw ProviderError(std::string(err.what()) + " (file " + file.path + ")",
                        err.request_digest(), err.retriable());
  }
  if (summary.empty())
    throw ProviderError("provider returned blank summary for " + file.path,
                        request_digest(polish, ""), false);

  Artifact artifact;
  artifact.layer_index = 0;
  artifact.artifact_type = kCodeLayerType;
  artifact.title = fs::path(file.path).stem().string();
  artifact.body = summary;
  artifact.source_path = file.path;
  artifact.size = file.loc;  // LOC for code artifacts
  artifact.id = artifact_id(0, artifact.artifact_type, artifact.title, artifact.body);
  return artifact;
}

std::vector<Artifact> summarize_sources(const std::vector<SourceFile>& files,
                                        CompletionProvider& provider,
                                        const PromptLibrary& prompts,
                                        const SummarizerOptions& options) {
  std::vector<Artifact> artifacts(files.size());
  std::vector<std::exception_ptr> failures(files.size());
  std::atomic<std::size_t> next{0};

  int worker_count =
      std::max(1, std::min<int>(options.parallelism,
                                static_cast<int>(files.size())));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(worker_count));
  for (int w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      while (true) {
        std::size_t index = next.fetch_add(1);
        if (index >= files.size()) return;
        try {
          artifacts[index] = summarize_code(files[index], provider, prompts, options);
        } catch (...) {
          failures[index] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  for (const std::exception_ptr& failure : failures)
    if (failure) std::rethrow_exception(failure);

  // Files were already path-sorted; keep the same order in the layer.
  return artifacts;
}

}  // namespace hgen
