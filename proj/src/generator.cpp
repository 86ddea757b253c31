#include "hgen/generator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iostream>
#include <map>
#include <set>

#include "hgen/hash.hpp"
#include "hgen/kernels.hpp"
#include "hgen/stats.hpp"
#include "hgen/textutil.hpp"

namespace hgen {

std::string generate_format(const std::string& artifact_type,
                            const std::optional<std::string>& user_template,
                            CompletionProvider& provider,
                            const PromptLibrary& prompts) {
  if (artifact_type.empty())
    throw ArgumentError("artifact type must not be empty");
  if (user_template.has_value()) return *user_template;
  CompletionRequest request;
  request.user_prompt =
      prompts.render("format_template", {{"artifact_type", artifact_type}});
  request.max_tokens = 256;
  return trim(provider.complete(request));
}

double max_inverse_cohesion_of(const Clustering& clustering) {
  double max_inverse = 0.0;
  for (const Cluster& cluster : clustering.clusters) {
    if (cluster.size() < 2) continue;
    if (cluster.cohesion <= 0.0) continue;  // pinned to diversity 1 directly
    max_inverse = std::max(max_inverse, 1.0 / cluster.cohesion);
  }
  return max_inverse;
}

NTargets compute_n_targets(int cluster_size, std::optional<double> cohesion,
                           double max_inverse_cohesion, int member_size_sum,
                           double layer_mean_size, const LayerSpec& spec) {
  if (layer_mean_size <= 0.0)
    throw ArgumentError("layer mean artifact size must be positive");

  NTargets result;
  result.density = static_cast<double>(member_size_sum) / layer_mean_size;

  if (!cohesion.has_value() || *cohesion <= 0.0 || max_inverse_cohesion <= 0.0) {
    result.diversity = 1.0;  // inverse cohesion undefined: maximal ambiguity
  } else {
    result.diversity = (1.0 / *cohesion) / max_inverse_cohesion;
    result.diversity = std::min(result.diversity, 1.0);
  }

  if (cluster_size <= 2) {
    result.n_targets = 1;
    return result;
  }

  int raw = static_cast<int>(result.diversity * result.density);  // truncate
  int lowest =
      static_cast<int>(std::floor(spec.lower_bound * cluster_size)) + 1;
  int highest =
      static_cast<int>(std::ceil(spec.upper_bound * cluster_size)) - 1;
  if (highest < lowest) {
    result.n_targets = 1;  // degenerate user bounds
    return result;
  }
  result.n_targets = std::clamp(raw, lowest, highest);
  return result;
}

std::vector<ParsedItem> parse_numbered_items(const std::string& response) {
  std::vector<ParsedItem> items;
  std::vector<std::string> lines = split_lines_keep_ends(response);
  ParsedItem current;
  bool in_item = false;

  auto flush = [&] {
    if (!in_item) return;
    current.title = trim(current.title);
    current.body = trim(current.body);
    if (!current.title.empty() && !current.body.empty())
      items.push_back(current);
    current = {};
  };

  for (const std::string& raw_line : lines) {
    std::string line = trim(raw_line);
    // Item header: "<number>. Title: <text>" (also tolerates "N) Title:").
    std::size_t cursor = 0;
    while (cursor < line.size() &&
           std::isdigit(static_cast<unsigned char>(line[cursor])))
      ++cursor;
    bool header = cursor > 0 && cursor < line.size() &&
                  (line[cursor] == '.' || line[cursor] == ')');
    if (header) {
      std::string rest = trim(line.substr(cursor + 1));
      if (rest.rfind("Title:", 0) == 0) {
        flush();
        in_item = true;
        current.title = trim(rest.substr(6));
        continue;
      }
    }
    if (in_item && !line.empty()) {
      if (!current.body.empty()) current.body += "\n";
      current.body += line;
    }
  }
  flush();
  return items;
}

namespace {

std::string render_members(const std::vector<const Artifact*>& members) {
  std::string text;
  for (const Artifact* member : members) {
    text += "- " + member->title + ": " + member->body + "\n";
  }
  return text;
}

std::vector<Artifact> items_to_artifacts(const std::vector<ParsedItem>& items,
                                         const std::string& artifact_type,
                                         int target_layer) {
  std::vector<Artifact> artifacts;
  artifacts.reserve(items.size());
  for (const ParsedItem& item : items) {
    Artifact artifact;
    artifact.layer_index = target_layer;
    artifact.artifact_type = artifact_type;
    artifact.title = item.title;
    artifact.body = item.body;
    artifact.size = word_count(item.body);
    artifact.id =
        artifact_id(target_layer, artifact_type, item.title, item.body);
    artifacts.push_back(std::move(artifact));
  }
  return artifacts;
}

}  // namespace

std::vector<Artifact> generate_artifacts(
    const std::vector<const Artifact*>& members, const std::string& format,
    int n_targets, const std::string& artifact_type, int target_layer,
    CompletionProvider& provider, const PromptLibrary& prompts) {
  if (members.empty()) throw ArgumentError("generation needs cluster members");
  if (n_targets < 1) throw ArgumentError("n_targets must be at least 1");

  std::map<std::string, std::string> values = {
      {"artifact_type", artifact_type},
      {"format", format},
      {"n_targets", std::to_string(n_targets)},
      {"members", render_members(members)},
  };
  CompletionRequest request;
  request.user_prompt = prompts.render("generate_artifacts", values);
  std::string response = provider.complete(request);
  std::vector<ParsedItem> items = parse_numbered_items(response);

  if (static_cast<int>(items.size()) != n_targets) {
    values["previous_count"] = std::to_string(items.size());
    CompletionRequest retry;
    retry.user_prompt = prompts.render("generate_retry", values);
    response = provider.complete(retry);
    items = parse_numbered_items(response);
  }
  if (static_cast<int>(items.size()) > n_targets) {
    std::cerr << "warning: provider returned " << items.size() << " items for "
              << n_targets << " requested; truncating\n";
    items.resize(n_targets);
  }
  if (static_cast<int>(items.size()) < n_targets)
    throw ProviderError("provider produced " + std::to_string(items.size()) +
                            " artifacts after retry, needed " +
                            std::to_string(n_targets),
                        request_digest(request, ""), false);
  return items_to_artifacts(items, artifact_type, target_layer);
}

std::vector<std::vector<int>> find_duplicate_clusters(
    const std::vector<Artifact>& generated,
    const std::vector<Embedding>& generated_embeddings,
    const std::vector<int>& source_cluster_of, const ClusterParams& params) {
  if (generated.size() < 2) return {};

  std::vector<std::string> ids;
  ids.reserve(generated.size());
  std::map<std::string, int> index_of;
  for (std::size_t i = 0; i < generated.size(); ++i) {
    ids.push_back(generated[i].id);
    index_of[generated[i].id] = static_cast<int>(i);
  }

  Clustering reclustering =
      cluster_layer(ids, generated_embeddings, params,
                    generated.front().layer_index);

  std::vector<double> cohesions;
  for (const Cluster& cluster : reclustering.clusters)
    if (cluster.size() >= 2) cohesions.push_back(cluster.cohesion);
  if (cohesions.empty()) return {};
  double threshold = percentile_of(cohesions, 75.0);

  std::vector<std::vector<int>> groups;
  for (const Cluster& cluster : reclustering.clusters) {
    if (cluster.size() < 2 || cluster.cohesion < threshold) continue;
    std::set<int> origin_clusters;
    std::vector<int> group;
    for (const std::string& id : cluster.member_ids) {
      int index = index_of.at(id);
      group.push_back(index);
      origin_clusters.insert(source_cluster_of[index]);
    }
    if (origin_clusters.size() < 2) continue;
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
  }
  return groups;
}

std::vector<int> trace_duplicate_sources(
    const std::vector<int>& group,
    const std::vector<Embedding>& generated_embeddings,
    const std::vector<int>& source_cluster_of,
    const std::vector<std::vector<int>>& cluster_members,
    const std::vector<Embedding>& lower_embeddings) {
  std::set<int> fresh;
  for (int parent_index : group) {
    const std::vector<int>& members =
        cluster_members[source_cluster_of[parent_index]];
    double best = -2.0;
    std::vector<double> scores;
    scores.reserve(members.size());
    for (int member : members) {
      double score = cosine_similarity(generated_embeddings[parent_index],
                                       lower_embeddings[member]);
      scores.push_back(score);
      best = std::max(best, score);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      if (scores[i] >= best - kDuplicateSourceTolerance)
        fresh.insert(members[i]);
  }
  return std::vector<int>(fresh.begin(), fresh.end());
}

}  // namespace hgen
