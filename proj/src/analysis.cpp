#include "ccd/analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace ccd {

namespace {

void check_lengths(const Assignment &a, const Assignment &b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("assignments cover different vertex counts (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

std::uint64_t choose2(std::uint64_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

// Dense community ids by first appearance, plus sizes.
struct Dense {
  std::vector<std::size_t> id;
  std::vector<std::size_t> size;
};

Dense densify(const Assignment &x) {
  const Assignment c = x.canonical();
  Dense d;
  d.id.resize(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) {
    d.id[v] = c[v];
    if (d.id[v] >= d.size.size()) {
      d.size.resize(d.id[v] + 1, 0);
    }
    d.size[d.id[v]] += 1;
  }
  return d;
}

// Cells keyed by (a community, b community), ordered lexicographically.
std::map<std::pair<std::size_t, std::size_t>, std::size_t> contingency(const Dense &a, const Dense &b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cells;
  for (std::size_t v = 0; v < a.id.size(); ++v) {
    cells[{a.id[v], b.id[v]}] += 1;
  }
  return cells;
}

} // namespace

std::vector<double> jaccard_per_vertex(const Assignment &a, const Assignment &b) {
  check_lengths(a, b);
  const Dense da = densify(a);
  const Dense db = densify(b);
  const auto cells = contingency(da, db);
  std::vector<double> out(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) {
    const auto shared = static_cast<double>(cells.at({da.id[v], db.id[v]}));
    const auto uni = static_cast<double>(da.size[da.id[v]] + db.size[db.id[v]]) - shared;
    out[v] = shared / uni;
  }
  return out;
}

PairClasses pair_comembership_classes(const Assignment &a, const Assignment &b) {
  check_lengths(a, b);
  const Dense da = densify(a);
  const Dense db = densify(b);
  std::uint64_t both = 0;
  for (const auto &[key, n] : contingency(da, db)) {
    both += choose2(n);
  }
  std::uint64_t pairs_a = 0;
  std::uint64_t pairs_b = 0;
  for (std::size_t s : da.size) {
    pairs_a += choose2(s);
  }
  for (std::size_t s : db.size) {
    pairs_b += choose2(s);
  }
  return {both, pairs_a - both, pairs_b - both};
}

VolumeSummary community_volume_summary(const VertexVolumes &volumes, const Assignment &assignment, Volume tau) {
  if (volumes.size() != assignment.size()) {
    throw std::invalid_argument("volume vector length does not match the assignment");
  }
  const Dense d = densify(assignment);
  VolumeSummary s;
  s.totals.assign(d.size.size(), 0);
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    s.totals[d.id[v]] += volumes[v];
  }
  std::sort(s.totals.begin(), s.totals.end());
  if (!s.totals.empty()) {
    const auto at_most = std::upper_bound(s.totals.begin(), s.totals.end(), tau) - s.totals.begin();
    s.fraction_at_most_tau = static_cast<double>(at_most) / static_cast<double>(s.totals.size());
  }
  return s;
}

std::vector<OverlapEdge> overlap_edges(const Assignment &a, const Assignment &b) {
  check_lengths(a, b);
  std::vector<OverlapEdge> out;
  for (const auto &[key, n] : contingency(densify(a), densify(b))) {
    out.push_back({key.first, key.second, n});
  }
  return out;
}

ComparisonReport compare_assignments(const Assignment &a, const Assignment &b, const VertexVolumes &volumes,
                                     Volume tau) {
  check_lengths(a, b);
  ComparisonReport r;
  r.tau = tau;
  r.jaccard = jaccard_per_vertex(a, b);
  r.pairs = pair_comembership_classes(a, b);
  r.volumes_a = community_volume_summary(volumes, a, tau);
  r.volumes_b = community_volume_summary(volumes, b, tau);
  r.overlap = overlap_edges(a, b);

  const Dense da = densify(a);
  const Dense db = densify(b);
  const auto p = static_cast<double>(a.size());
  r.communities_a = da.size.size();
  r.communities_b = db.size.size();
  r.mean_size_a = r.communities_a > 0 ? p / static_cast<double>(r.communities_a) : 0.0;
  r.mean_size_b = r.communities_b > 0 ? p / static_cast<double>(r.communities_b) : 0.0;

  std::vector<Volume> volume_a(da.size.size(), 0);
  for (std::size_t v = 0; v < a.size(); ++v) {
    volume_a[da.id[v]] += volumes[v];
  }
  std::vector<std::size_t> fanout(da.size.size(), 0);
  for (const OverlapEdge &e : r.overlap) {
    fanout[e.a_community] += 1;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double fan_sum[2] = {0, 0};
  double fan_n[2] = {0, 0};
  for (std::size_t c = 0; c < fanout.size(); ++c) {
    const int cls = volume_a[c] <= tau ? 0 : 1;
    fan_sum[cls] += static_cast<double>(fanout[c]);
    fan_n[cls] += 1;
  }
  r.fanout_violating = fan_n[0] > 0 ? fan_sum[0] / fan_n[0] : nan;
  r.fanout_feasible = fan_n[1] > 0 ? fan_sum[1] / fan_n[1] : nan;

  double diff_sum[2] = {0, 0};
  double diff_n[2] = {0, 0};
  for (std::size_t v = 0; v < a.size(); ++v) {
    const int cls = volume_a[da.id[v]] <= tau ? 0 : 1;
    diff_sum[cls] += static_cast<double>(da.size[da.id[v]]) - static_cast<double>(db.size[db.id[v]]);
    diff_n[cls] += 1;
  }
  r.size_change_violating = diff_n[0] > 0 ? diff_sum[0] / diff_n[0] : nan;
  r.size_change_feasible = diff_n[1] > 0 ? diff_sum[1] / diff_n[1] : nan;
  return r;
}

} // namespace ccd
