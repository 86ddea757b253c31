#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hgen/techniques.hpp"

namespace hgen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SteepDownArea {
  int start;
  int end;
  double mib;  // maximum in between since the area was opened
};

// Extends a steep region, tolerating up to min_samples consecutive
// non-steep points while the plot keeps moving the same way.
int extend_region(const std::vector<bool>& steep, const std::vector<bool>& opposite,
                  int start, int min_samples) {
  int non_steep = 0;
  int end = start;
  int index = start;
  const int limit = static_cast<int>(steep.size());
  while (index < limit) {
    if (steep[index]) {
      non_steep = 0;
      end = index;
    } else if (!opposite[index]) {
      ++non_steep;
      if (non_steep > min_samples) break;
    } else {
      return end;
    }
    ++index;
  }
  return end;
}

std::vector<SteepDownArea> filter_sdas(const std::vector<SteepDownArea>& sdas,
                                       double mib, double xi_complement,
                                       const std::vector<double>& plot) {
  std::vector<SteepDownArea> kept;
  if (std::isinf(mib)) return kept;
  for (const SteepDownArea& sda : sdas) {
    if (mib <= plot[sda.start] * xi_complement)
      kept.push_back({sda.start, sda.end, std::max(sda.mib, mib)});
  }
  return kept;
}

}  // namespace

// OPTICS with xi-steepness cluster extraction. The ordering pass uses no
// eps bound; ties are broken by index so runs are reproducible. Points in
// no extracted leaf interval come back as noise singletons.
Partition optics_cluster(std::span<const Embedding> items,
                         const TechniqueParams& params) {
  const int count = static_cast<int>(items.size());
  const int min_samples = std::max(2, params.optics_min_samples);
  ScoreMatrix cosine = par::pairwise_cosine_matrix(items);
  auto distance = [&](int i, int j) { return 1.0 - cosine.at(i, j); };

  // Core distance: distance to the (min_samples-1)-th nearest other point.
  std::vector<double> core(count, kInf);
  for (int i = 0; i < count; ++i) {
    std::vector<double> others;
    others.reserve(count - 1);
    for (int j = 0; j < count; ++j)
      if (j != i) others.push_back(distance(i, j));
    if (static_cast<int>(others.size()) >= min_samples - 1) {
      std::nth_element(others.begin(), others.begin() + (min_samples - 2),
                       others.end());
      core[i] = others[min_samples - 2];
    }
  }

  // Ordering pass.
  std::vector<bool> processed(count, false);
  std::vector<double> reachability(count, kInf);
  std::vector<int> ordering;
  ordering.reserve(count);
  auto expand = [&](int point) {
    for (int j = 0; j < count; ++j) {
      if (processed[j]) continue;
      double reach = std::max(core[point], distance(point, j));
      if (reach < reachability[j]) reachability[j] = reach;
    }
  };
  for (int start = 0; start < count; ++start) {
    if (processed[start]) continue;
    processed[start] = true;
    ordering.push_back(start);
    expand(start);
    while (true) {
      int next = -1;
      for (int j = 0; j < count; ++j) {
        if (processed[j] || std::isinf(reachability[j])) continue;
        if (next < 0 || reachability[j] < reachability[next]) next = j;
      }
      if (next < 0) break;
      processed[next] = true;
      ordering.push_back(next);
      expand(next);
    }
  }

  // Reachability plot in visit order, with a trailing sentinel so the
  // final steep-up region can close.
  std::vector<double> plot(count + 1);
  for (int i = 0; i < count; ++i) plot[i] = reachability[ordering[i]];
  plot[0] = kInf;
  plot[count] = kInf;

  const double xi_complement = 1.0 - params.optics_xi;
  std::vector<bool> steep_up(count), steep_down(count), up(count), down(count);
  for (int i = 0; i < count; ++i) {
    double here = plot[i];
    double there = plot[i + 1];
    steep_up[i] = here <= there * xi_complement;
    steep_down[i] = here * xi_complement >= there;
    up[i] = here < there;
    down[i] = here > there;
    if (std::isinf(here) && std::isinf(there)) {
      steep_up[i] = steep_down[i] = up[i] = down[i] = false;
    } else if (std::isinf(here)) {
      steep_up[i] = up[i] = false;
      steep_down[i] = down[i] = true;
    } else if (std::isinf(there)) {
      steep_up[i] = up[i] = true;
      steep_down[i] = down[i] = false;
    }
  }

  std::vector<std::pair<int, int>> intervals;
  std::vector<SteepDownArea> sdas;
  double mib = 0.0;
  int index = 0;
  while (index < count) {
    mib = std::max(mib, plot[index]);
    if (steep_down[index]) {
      sdas = filter_sdas(sdas, mib, xi_complement, plot);
      int down_start = index;
      int down_end = extend_region(steep_down, up, down_start, min_samples);
      sdas.push_back({down_start, down_end, 0.0});
      index = down_end + 1;
      mib = plot[index];
    } else if (steep_up[index]) {
      sdas = filter_sdas(sdas, mib, xi_complement, plot);
      int up_start = index;
      int up_end = extend_region(steep_up, down, up_start, min_samples);
      index = up_end + 1;
      mib = plot[index];

      std::vector<std::pair<int, int>> found;
      for (const SteepDownArea& sda : sdas) {
        int c_start = sda.start;
        int c_end = up_end;
        if (sda.mib > plot[c_end + 1] * xi_complement) continue;

        double down_max = plot[sda.start];
        if (down_max * xi_complement >= plot[c_end + 1]) {
          while (plot[c_start + 1] > plot[c_end + 1] && c_start < sda.end)
            ++c_start;
        } else if (plot[c_end + 1] * xi_complement >= down_max) {
          while (plot[c_end] > down_max && c_end > up_start) --c_end;
        }
        if (c_end - c_start + 1 < min_samples) continue;
        if (c_start > sda.end) continue;
        if (c_end < up_start) continue;
        found.emplace_back(c_start, c_end);
      }
      // Narrowest areas first so leaf intervals win label assignment.
      std::reverse(found.begin(), found.end());
      intervals.insert(intervals.end(), found.begin(), found.end());
    } else {
      ++index;
    }
  }

  // First fully-unlabeled interval wins; the rest stay noise.
  std::vector<int> label_at(count, -1);
  int next_label = 0;
  for (const auto& [begin, end] : intervals) {
    bool free = true;
    for (int i = begin; i <= end && free; ++i) free = label_at[i] < 0;
    if (!free) continue;
    for (int i = begin; i <= end; ++i) label_at[i] = next_label;
    ++next_label;
  }

  Partition partition(next_label);
  for (int position = 0; position < count; ++position) {
    int label = label_at[position];
    if (label >= 0)
      partition[label].push_back(ordering[position]);
    else
      partition.push_back({ordering[position]});
  }
  std::erase_if(partition, [](const std::vector<int>& group) { return group.empty(); });
  return partition;
}

}  // namespace hgen
