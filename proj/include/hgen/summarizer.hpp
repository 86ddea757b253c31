#pragma once

#include <string>
#include <vector>

#include "hgen/artifact.hpp"
#include "hgen/prompts.hpp"
#include "hgen/provider.hpp"

namespace hgen {

struct SourceFile {
  std::string path;      // relative to the discovery root, '/' separators
  std::string language;  // inferred from the extension
  std::string content;   // UTF-8 (invalid bytes replaced)
  int loc = 0;
};

// Recursively collects text files under root, filtered by include/exclude
// globs, in lexicographic path order. Binary and empty files are skipped.
// An empty include list admits every file.
std::vector<SourceFile> discover_sources(
    const std::string& root, const std::vector<std::string>& include_globs,
    const std::vector<std::string>& exclude_globs);

// Splits at line boundaries so each chunk stays within `budget_tokens`
// (estimated at 4 chars per token). Concatenating the chunks reproduces the
// content exactly. A line larger than the budget becomes its own chunk.
std::vector<std::string> chunk_source(const SourceFile& file, int budget_tokens);

struct SummarizerOptions {
  int chunk_budget_tokens = 20000;
  int max_tokens = 1024;
  int parallelism = 4;
};

// Stage 0 for one file: an outline call per chunk, then one polishing call
// over the combined outline. The resulting layer-0 artifact keeps the
// file's line count as its size so later density estimates work on LOC.
Artifact summarize_code(const SourceFile& file, CompletionProvider& provider,
                        const PromptLibrary& prompts,
                        const SummarizerOptions& options);

// Stage 0 for a whole source set. Files may be summarized concurrently;
// the result is re-sorted by path, one artifact per file.
std::vector<Artifact> summarize_sources(const std::vector<SourceFile>& files,
                                        CompletionProvider& provider,
                                        const PromptLibrary& prompts,
                                        const SummarizerOptions& options);

inline const char* kCodeLayerType = "code summary";

}  // namespace hgen
