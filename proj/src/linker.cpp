#include "hgen/linker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "hgen/stats.hpp"
#include "json.hpp"

namespace hgen {

namespace {

double clamp_unit(double value) { return std::clamp(value, 0.0, 1.0); }

}  // namespace

std::string SimilarityMatrix::to_csv() const {
  std::string out = "parent,child,score\n";
  for (std::size_t i = 0; i < parent_ids.size(); ++i)
    for (std::size_t j = 0; j < child_ids.size(); ++j) {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.17g", scores.at(i, j));
      out += parent_ids[i] + "," + child_ids[j] + "," + buffer + "\n";
    }
  return out;
}

std::vector<TraceLink> link_intra_cluster(
    const std::vector<std::string>& parent_ids,
    const std::vector<Embedding>& parent_embeddings,
    const std::vector<std::string>& child_ids,
    const std::vector<Embedding>& child_embeddings, const LinkParams& params) {
  if (parent_ids.empty() || child_ids.empty()) return {};

  ScoreMatrix raw = par::cosine_matrix(parent_embeddings, child_embeddings);
  const std::size_t total = raw.data.size();

  std::vector<TraceLink> links;
  if (total == 1) {
    // Lone pair: sigma is meaningless, link it.
    links.push_back({parent_ids[0], child_ids[0], clamp_unit(raw.at(0, 0))});
    return links;
  }

  double low = raw.data[0], high = raw.data[0];
  for (double value : raw.data) {
    low = std::min(low, value);
    high = std::max(high, value);
  }

  std::vector<double> normalized(total);
  for (std::size_t index = 0; index < total; ++index) {
    double value = raw.data[index];
    switch (params.normalization) {
      case ScoreNormalization::minmax:
        // Constant scores normalize to 1: nothing distinguishes the pairs.
        normalized[index] = high > low ? (value - low) / (high - low) : 1.0;
        break;
      case ScoreNormalization::raw_max:
        normalized[index] = high > 0.0 ? value / high : 1.0;
        break;
    }
  }

  double spread = stddev_of(normalized);
  double threshold = 1.0 - params.sigma_window * spread;
  for (std::size_t i = 0; i < parent_ids.size(); ++i)
    for (std::size_t j = 0; j < child_ids.size(); ++j)
      if (normalized[i * child_ids.size() + j] >= threshold)
        links.push_back({parent_ids[i], child_ids[j], clamp_unit(raw.at(i, j))});
  return links;
}

std::vector<TraceLink> ensure_no_orphans(
    const std::vector<std::string>& child_ids,
    const std::vector<Embedding>& child_embeddings,
    const std::vector<std::string>& parent_ids,
    const std::vector<Embedding>& parent_embeddings,
    std::vector<TraceLink> links) {
  if (child_ids.empty()) return links;
  if (parent_ids.empty())
    throw PipelineError("cannot guarantee parents: generated layer is empty");

  std::set<std::string> linked;
  for (const TraceLink& link : links) linked.insert(link.child_id);

  ScoreMatrix scores = par::cosine_matrix(parent_embeddings, child_embeddings);
  for (std::size_t j = 0; j < child_ids.size(); ++j) {
    if (linked.count(child_ids[j])) continue;
    std::size_t best = 0;
    for (std::size_t i = 1; i < parent_ids.size(); ++i) {
      if (scores.at(i, j) > scores.at(best, j) ||
          (scores.at(i, j) == scores.at(best, j) &&
           parent_ids[i] < parent_ids[best]))
        best = i;
    }
    links.push_back({parent_ids[best], child_ids[j], clamp_unit(scores.at(best, j))});
  }
  return links;
}

std::vector<FlaggedPair> detect_cross_duplicates(
    const std::vector<std::string>& ids,
    const std::vector<Embedding>& embeddings, const LinkParams& params) {
  if (ids.size() < 3) return {};  // mean/std need support

  ScoreMatrix pairwise = par::pairwise_cosine_matrix(embeddings);
  std::vector<double> scores;
  scores.reserve(ids.size() * (ids.size() - 1) / 2);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      scores.push_back(pairwise.at(i, j));

  double center = mean_of(scores);
  double spread = stddev_of(scores);
  double threshold = center + params.duplicate_sigma * spread;

  std::vector<FlaggedPair> flagged;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (pairwise.at(i, j) > threshold)
        flagged.push_back({ids[i], ids[j], pairwise.at(i, j)});

  std::sort(flagged.begin(), flagged.end(),
            [](const FlaggedPair& a, const FlaggedPair& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.first_id != b.first_id) return a.first_id < b.first_id;
              return a.second_id < b.second_id;
            });
  return flagged;
}

std::string flagged_pairs_json(const std::vector<FlaggedPair>& pairs) {
  nlohmann::json out = nlohmann::json::array();
  for (const FlaggedPair& pair : pairs)
    out.push_back({{"first", pair.first_id},
                   {"second", pair.second_id},
                   {"score", pair.score}});
  return out.dump(2) + "\n";
}

std::vector<TraceLink> share_links(
    const std::vector<FlaggedPair>& pairs, std::vector<TraceLink> links,
    const std::vector<std::string>& parent_ids,
    const std::vector<Embedding>& parent_embeddings,
    const std::vector<std::string>& child_ids,
    const std::vector<Embedding>& child_embeddings,
    const LinkParams& params) {
  std::map<std::string, std::size_t> parent_index;
  for (std::size_t i = 0; i < parent_ids.size(); ++i)
    parent_index[parent_ids[i]] = i;
  std::map<std::string, std::size_t> child_index;
  for (std::size_t j = 0; j < child_ids.size(); ++j)
    child_index[child_ids[j]] = j;

  ScoreMatrix scores = par::cosine_matrix(parent_embeddings, child_embeddings);
  std::set<std::pair<std::string, std::string>> existing;
  for (const TraceLink& link : links)
    existing.emplace(link.parent_id, link.child_id);

  auto adopt = [&](const std::string& to_id, const std::string& from_id) {
    std::size_t to = parent_index.at(to_id);
    std::size_t from = parent_index.at(from_id);
    std::vector<std::string> from_children;
    for (const auto& [parent, child] : existing)
      if (parent == from_id) from_children.push_back(child);
    for (const std::string& child : from_children) {
      std::size_t j = child_index.at(child);
      if (std::abs(scores.at(to, j) - scores.at(from, j)) > params.share_tolerance)
        continue;
      if (existing.emplace(to_id, child).second)
        links.push_back({to_id, child, clamp_unit(scores.at(to, j))});
    }
  };

  for (const FlaggedPair& pair : pairs) {
    adopt(pair.first_id, pair.second_id);
    adopt(pair.second_id, pair.first_id);
  }
  return links;
}

MergeResult merge_duplicates(const std::vector<FlaggedPair>& pairs,
                             std::vector<TraceLink> links) {
  MergeResult result;
  auto children_of = [&](const std::string& parent) {
    std::set<std::string> children;
    for (const TraceLink& link : links)
      if (link.parent_id == parent) children.insert(link.child_id);
    return children;
  };
  auto mean_child_score = [&](const std::string& parent) {
    double sum = 0.0;
    int count = 0;
    for (const TraceLink& link : links)
      if (link.parent_id == parent) {
        sum += link.score;
        ++count;
      }
    return count > 0 ? sum / count : 0.0;
  };

  for (const FlaggedPair& pair : pairs) {
    if (result.dropped_parent_ids.count(pair.first_id) ||
        result.dropped_parent_ids.count(pair.second_id))
      continue;
    std::set<std::string> first_children = children_of(pair.first_id);
    std::set<std::string> second_children = children_of(pair.second_id);
    if (first_children != second_children) continue;  // both retained

    double first_mean = mean_child_score(pair.first_id);
    double second_mean = mean_child_score(pair.second_id);
    std::string loser;
    if (first_mean != second_mean)
      loser = first_mean < second_mean ? pair.first_id : pair.second_id;
    else
      loser = std::max(pair.first_id, pair.second_id);

    result.dropped_parent_ids.insert(loser);
    std::erase_if(links, [&](const TraceLink& link) {
      return link.parent_id == loser;
    });
  }
  result.links = std::move(links);
  return result;
}

}  // namespace hgen
