#include "hgen/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "hgen/errors.hpp"
#include "hgen/kernels.hpp"
#include "hgen/stats.hpp"
#include "json.hpp"

namespace hgen {

using nlohmann::json;

double cluster_cohesion(std::span<const Embedding> members) {
  return par::pairwise_mean_cosine(members);
}

double cluster_importance(int size, double cohesion, int votes, double alpha) {
  return (alpha * std::log(static_cast<double>(size)) + cohesion) *
         static_cast<double>(votes);
}

namespace {

std::vector<Embedding> gather(std::span<const Embedding> items,
                              const std::vector<int>& indices) {
  std::vector<Embedding> out;
  out.reserve(indices.size());
  for (int index : indices) out.push_back(items[index]);
  return out;
}

const std::string& min_id(const Candidate& candidate,
                          const std::vector<std::string>& ids) {
  const std::string* smallest = &ids[candidate.members.front()];
  for (int member : candidate.members)
    if (ids[member] < *smallest) smallest = &ids[member];
  return *smallest;
}

}  // namespace

std::vector<Candidate> generate_candidates(std::span<const Embedding> items,
                                           const ClusterParams& params) {
  std::map<std::vector<int>, Candidate> pool;
  for (Technique technique : params.technique_set) {
    TechniqueParams technique_params = params.technique;
    technique_params.seed = params.seed;
    Partition partition = run_technique(technique, items, technique_params);
    for (std::vector<int>& group : partition) {
      auto it = pool.find(group);
      if (it == pool.end()) {
        Candidate candidate;
        candidate.members = group;
        candidate.votes = 1;
        candidate.origins = {technique_name(technique)};
        pool.emplace(std::move(group), std::move(candidate));
      } else {
        ++it->second.votes;
        it->second.origins.push_back(technique_name(technique));
      }
    }
  }
  std::vector<Candidate> out;
  out.reserve(pool.size());
  for (auto& [members, candidate] : pool) out.push_back(std::move(candidate));
  return out;
}

SizeFilterResult filter_by_size(std::vector<Candidate> pool,
                                const ClusterParams& params) {
  SizeFilterResult result;
  std::set<int> singles;
  for (Candidate& candidate : pool) {
    int size = static_cast<int>(candidate.members.size());
    if (size >= params.large_cluster_min)
      result.discarded.push_back(std::move(candidate));
    else if (size == 1)
      singles.insert(candidate.members.front());
    else
      result.kept.push_back(std::move(candidate));
  }
  result.set_aside.assign(singles.begin(), singles.end());
  return result;
}

void score_candidates(std::vector<Candidate>& pool,
                      std::span<const Embedding> items,
                      const ClusterParams& params) {
  for (Candidate& candidate : pool) {
    candidate.cohesion = cluster_cohesion(gather(items, candidate.members));
    candidate.importance =
        cluster_importance(static_cast<int>(candidate.members.size()),
                           candidate.cohesion, candidate.votes, params.alpha);
  }
}

void rank_candidates(std::vector<Candidate>& pool,
                     const std::vector<std::string>& ids) {
  std::stable_sort(pool.begin(), pool.end(),
                   [&](const Candidate& a, const Candidate& b) {
                     if (a.importance != b.importance)
                       return a.importance > b.importance;
                     if (a.cohesion != b.cohesion) return a.cohesion > b.cohesion;
                     return min_id(a, ids) < min_id(b, ids);
                   });
}

CleanseResult cleanse_candidate(const Candidate& candidate,
                                std::span<const Embedding> items,
                                const ClusterParams& params) {
  CleanseResult result{candidate, {}};
  if (candidate.members.size() < 3) return result;

  std::vector<Embedding> members = gather(items, candidate.members);
  std::vector<double> means = par::member_mean_cosines(members);
  double center = mean_of(means);
  double spread = stddev_of(means);
  if (spread <= 0.0) return result;

  double cutoff = center - params.outlier_sigma * spread;
  std::vector<int> kept;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (means[i] < cutoff)
      result.ejected.push_back(candidate.members[i]);
    else
      kept.push_back(candidate.members[i]);
  }
  if (result.ejected.empty()) return result;

  result.cleansed.members = std::move(kept);
  if (result.cleansed.members.size() >= 2) {
    result.cleansed.cohesion =
        cluster_cohesion(gather(items, result.cleansed.members));
    result.cleansed.importance = cluster_importance(
        static_cast<int>(result.cleansed.members.size()),
        result.cleansed.cohesion, result.cleansed.votes, params.alpha);
  } else {
    result.cleansed.cohesion = 0.0;
    result.cleansed.importance = 0.0;
  }
  return result;
}

std::vector<Candidate> select_clusters(const std::vector<Candidate>& ranked,
                                       std::span<const Embedding> items,
                                       const ClusterParams& params) {
  std::vector<Candidate> admitted;
  if (ranked.empty()) return admitted;

  std::vector<double> cohesions;
  cohesions.reserve(ranked.size());
  for (const Candidate& candidate : ranked) cohesions.push_back(candidate.cohesion);
  double threshold =
      percentile_of(cohesions, params.selection_cohesion_percentile);

  std::set<int> included;
  for (const Candidate& focus : ranked) {
    std::vector<int> remaining;
    for (int member : focus.members)
      if (!included.count(member)) remaining.push_back(member);
    if (remaining.size() < 2) continue;

    double cohesion = remaining.size() == focus.members.size()
                          ? focus.cohesion
                          : cluster_cohesion(gather(items, remaining));
    if (cohesion < threshold) continue;

    Candidate selected = focus;
    selected.members = std::move(remaining);
    selected.cohesion = cohesion;
    selected.importance =
        cluster_importance(static_cast<int>(selected.members.size()), cohesion,
                           selected.votes, params.alpha);
    for (int member : selected.members) included.insert(member);
    admitted.push_back(std::move(selected));
  }
  return admitted;
}

Clustering assign_orphans(std::vector<Candidate> admitted,
                          const std::vector<int>& orphans,
                          const std::vector<std::string>& ids,
                          std::span<const Embedding> items,
                          const ClusterParams& params, int layer_index) {
  Clustering clustering;
  clustering.layer_index = layer_index;

  std::vector<int> singletons;
  for (int orphan : orphans) {
    int best = -1;
    double best_mean = 0.0;
    for (std::size_t c = 0; c < admitted.size(); ++c) {
      double mean =
          serial::mean_cosine_to(items[orphan], gather(items, admitted[c].members));
      bool qualifies = std::abs(mean - admitted[c].cohesion) <=
                           params.orphan_tolerance ||
                       mean > admitted[c].cohesion;
      if (!qualifies) continue;
      if (best < 0 || mean > best_mean) {
        best = static_cast<int>(c);
        best_mean = mean;
      }
    }
    if (best < 0) {
      singletons.push_back(orphan);
      continue;
    }
    Candidate& host = admitted[best];
    host.members.insert(
        std::upper_bound(host.members.begin(), host.members.end(), orphan),
        orphan);
    host.cohesion = cluster_cohesion(gather(items, host.members));
    host.importance =
        cluster_importance(static_cast<int>(host.members.size()), host.cohesion,
                           host.votes, params.alpha);
  }

  for (Candidate& candidate : admitted) {
    Cluster cluster;
    for (int member : candidate.members) cluster.member_ids.push_back(ids[member]);
    cluster.cohesion = candidate.cohesion;
    cluster.votes = candidate.votes;
    cluster.importance = candidate.importance;
    cluster.origins = candidate.origins;
    clustering.clusters.push_back(std::move(cluster));
  }
  for (int singleton : singletons)
    clustering.singletons.push_back(ids[singleton]);
  return clustering;
}

namespace {

json candidate_to_json(const Candidate& candidate,
                       const std::vector<std::string>& ids) {
  json entry;
  entry["members"] = json::array();
  for (int member : candidate.members) entry["members"].push_back(ids[member]);
  entry["h"] = candidate.cohesion;
  entry["v"] = candidate.votes;
  entry["s"] = candidate.members.size();
  entry["importance"] = candidate.importance;
  entry["origins"] = candidate.origins;
  return entry;
}

}  // namespace

Clustering cluster_layer(const std::vector<std::string>& ids,
                         const std::vector<Embedding>& embeddings,
                         const ClusterParams& params, int layer_index,
                         std::string* debug_json) {
  if (ids.size() != embeddings.size())
    throw ArgumentError("cluster_layer: ids and embeddings differ in length");

  Clustering degenerate;
  degenerate.layer_index = layer_index;
  if (ids.size() < 2) {
    degenerate.singletons = ids;
    return degenerate;
  }

  json debug;
  std::span<const Embedding> items(embeddings);

  std::vector<Candidate> pool = generate_candidates(items, params);
  SizeFilterResult filtered = filter_by_size(std::move(pool), params);
  score_candidates(filtered.kept, items, params);
  rank_candidates(filtered.kept, ids);

  if (debug_json != nullptr) {
    debug["candidates"] = json::array();
    for (const Candidate& candidate : filtered.kept)
      debug["candidates"].push_back(candidate_to_json(candidate, ids));
    debug["discarded_large"] = json::array();
    for (const Candidate& candidate : filtered.discarded)
      debug["discarded_large"].push_back(candidate_to_json(candidate, ids));
    debug["set_aside_singletons"] = json::array();
    for (int index : filtered.set_aside)
      debug["set_aside_singletons"].push_back(ids[index]);
  }

  // C6 in ranked order; clusters reduced below 2 members drop out here.
  std::vector<Candidate> cleansed;
  cleansed.reserve(filtered.kept.size());
  for (const Candidate& candidate : filtered.kept) {
    CleanseResult result = cleanse_candidate(candidate, items, params);
    if (debug_json != nullptr && !result.ejected.empty()) {
      json event;
      event["cluster"] = candidate_to_json(candidate, ids);
      event["ejected"] = json::array();
      for (int index : result.ejected) event["ejected"].push_back(ids[index]);
      debug["cleansing"].push_back(std::move(event));
    }
    if (result.cleansed.members.size() >= 2)
      cleansed.push_back(std::move(result.cleansed));
  }

  std::vector<Candidate> admitted = select_clusters(cleansed, items, params);

  std::set<int> covered;
  for (const Candidate& candidate : admitted)
    for (int member : candidate.members) covered.insert(member);
  std::vector<int> orphans;
  for (int index = 0; index < static_cast<int>(ids.size()); ++index)
    if (!covered.count(index)) orphans.push_back(index);

  Clustering clustering =
      assign_orphans(std::move(admitted), orphans, ids, items, params, layer_index);

  if (debug_json != nullptr) {
    debug["admitted"] = json::array();
    for (const Cluster& cluster : clustering.clusters) {
      json entry;
      entry["members"] = cluster.member_ids;
      entry["h"] = cluster.cohesion;
      entry["v"] = cluster.votes;
      entry["importance"] = cluster.importance;
      entry["oversize_after_orphans"] =
          cluster.size() >= params.large_cluster_min;
      debug["admitted"].push_back(std::move(entry));
    }
    debug["singletons"] = clustering.singletons;
    *debug_json = debug.dump(2);
  }
  return clustering;
}

}  // namespace hgen
