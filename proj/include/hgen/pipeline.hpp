#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgen/artifact.hpp"
#include "hgen/cluster.hpp"
#include "hgen/generator.hpp"
#include "hgen/linker.hpp"
#include "hgen/prompts.hpp"
#include "hgen/provider.hpp"
#include "hgen/summarizer.hpp"

namespace hgen {

struct PipelineConfig {
  std::string project_name = "project";
  std::string source_root;
  std::vector<std::string> include_globs;  // empty admits every file
  std::vector<std::string> exclude_globs;
  std::vector<LayerSpec> layer_specs;      // bottom-up, excluding layer 0
  ClusterParams cluster_params;
  LinkParams link_params;
  ProviderConfig completion_provider;
  ProviderConfig embedding_provider;
  std::string cache_dir;
  std::string prompts_dir;
  std::uint64_t seed = 1;
  double baseline_cutoff = 0.7;
  SummarizerOptions summarizer;
};

// JSON config file mirroring PipelineConfig (see README for the key set).
// Unknown keys are rejected. Throws ConfigError.
PipelineConfig load_config(const std::string& path);

// Agile two-layer default: user stories under epics.
PipelineConfig default_config();

// Digest of the canonical config serialization, recorded in provenance.
std::string config_digest(const PipelineConfig& config);

class Pipeline {
 public:
  Pipeline(PipelineConfig config, ProviderSet providers, PromptLibrary prompts);

  // Stage 0 only: one layer-0 artifact per discovered source file.
  std::vector<Artifact> summarize_only();

  // Stages 1-5 once: lower artifacts to the next layer plus its links.
  struct LayerResult {
    Layer layer;
    std::vector<TraceLink> links;
  };
  LayerResult run_layer(const std::vector<Artifact>& lower,
                        const LayerSpec& spec);

  // The full run: Stage 0, then one run_layer per configured spec. The
  // returned tree passes validate_tree.
  ArtifactTree run();

  // Comparison generator: no clustering or refinement, one bulk generation
  // pass per layer, links by fixed cutoff on min-max normalized cosine.
  // Orphans are permitted.
  ArtifactTree run_baseline();

  const PipelineConfig& config() const { return config_; }

 private:
  std::vector<Artifact> build_layer_zero();
  ArtifactTree assemble(std::vector<Layer> layers, std::vector<TraceLink> links,
                        const std::string& mode) const;

  PipelineConfig config_;
  ProviderSet providers_;
  PromptLibrary prompts_;
};

// Exports: "markdown" (nested headings, top layer first, child references),
// "dot" (layer-ranked digraph), "csv-links" (parent,child,score rows, no
// header). Unknown format throws ArgumentError.
std::string export_tree(const ArtifactTree& tree, const std::string& format);

// Writes via a temp file plus rename so interrupted runs leave prior
// output intact.
void write_atomic(const std::string& path, const std::string& bytes);

}  // namespace hgen
