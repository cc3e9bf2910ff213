// Copyright 2026 The qconn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <thread>
#include <vector>

#include "qconn/network.hpp"

namespace qconn {

/// Strongest entanglement connection between a node pair.
///
/// The connection strength of a path is the product of its edge
/// concurrences (the concurrence left after swapping at every intermediate
/// node). All arithmetic runs in the log domain: `log_strength` is the
/// accumulated sum of log-concurrences and `strength = exp(log_strength)`.
/// Disconnected pairs carry an empty path, strength 0 (log -inf) and 0 hops.
struct PathResult {
  NodeId i = 0;
  NodeId j = 0;
  std::vector<NodeId> path;  // node sequence i..j; empty if disconnected
  double strength = 0.0;
  double log_strength = -std::numeric_limits<double>::infinity();
  std::int32_t hops = 0;
};

/// Empirical distribution of fewest-hop path lengths over unordered node
/// pairs. Masses q(l) plus `disconnected_fraction` sum to one.
struct PathLengthPmf {
  std::map<std::int32_t, double> q;
  std::int32_t ell_max = 0;
  double disconnected_fraction = 0.0;
  std::uint64_t pair_count = 0;

  void validate() const {
    double total = disconnected_fraction;
    detail::require(disconnected_fraction >= 0.0, errc::invalid_pmf,
                    "negative disconnected fraction");
    std::int32_t max_seen = 0;
    for (const auto& [ell, mass] : q) {
      detail::require(ell >= 1, errc::invalid_pmf, "hop count below 1");
      detail::require(mass >= 0.0, errc::invalid_pmf, "negative mass");
      if (mass > 0.0) max_seen = std::max(max_seen, ell);
      total += mass;
    }
    detail::require(std::abs(total - 1.0) <= 1e-12, errc::invalid_pmf,
                    "masses sum to " + std::to_string(total));
    detail::require(ell_max == max_seen, errc::invalid_pmf,
                    "ell_max inconsistent with masses");
  }
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Run body(i) for i in [0, n), fanning out over `threads` workers
/// (0 = hardware concurrency). Work items must write disjoint state.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  unsigned t = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (t < 1) t = 1;
  t = static_cast<unsigned>(std::min<std::size_t>(t, n));
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        body(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Single-source sweep minimising (sum of -log c, hop count)
/// lexicographically. Edges with zero concurrence (weight +inf) are not
/// traversable. `dist`/`hops` must be node_count()-sized.
inline void sssp_sweep(const Network& net, std::uint32_t source,
                       std::vector<double>& dist,
                       std::vector<std::int32_t>& hops,
                       std::uint32_t stop_at = 0xffffffffu) {
  struct Item {
    double dist;
    std::int32_t hops;
    std::uint32_t node;
    bool operator>(const Item& o) const {
      if (dist != o.dist) return dist > o.dist;
      if (hops != o.hops) return hops > o.hops;
      return node > o.node;
    }
  };
  std::fill(dist.begin(), dist.end(), kInf);
  std::fill(hops.begin(), hops.end(), 0);
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0.0;
  heap.push({0.0, 0, source});
  while (!heap.empty()) {
    const Item top = heap.top();
    heap.pop();
    if (top.dist != dist[top.node] || top.hops != hops[top.node])
      continue;  // stale entry
    if (top.node == stop_at) return;
    for (const Network::Arc& a : net.arcs(top.node)) {
      if (!(a.weight < kInf)) continue;
      const double nd = top.dist + a.weight;
      const std::int32_t nh = top.hops + 1;
      if (nd < dist[a.to] || (nd == dist[a.to] && nh < hops[a.to])) {
        dist[a.to] = nd;
        hops[a.to] = nh;
        heap.push({nd, nh, a.to});
      }
    }
  }
}

/// Walk from `from` towards the sweep source, at each step taking the
/// smallest-id neighbour that still lies on a (dist, hops)-optimal path.
/// The relaxation that fixed dist[u] guarantees at least one neighbour
/// passes the exact equality test, so the walk always makes progress.
inline std::vector<NodeId> greedy_path(const Network& net, std::uint32_t from,
                                       std::uint32_t source,
                                       const std::vector<double>& dist,
                                       const std::vector<std::int32_t>& hops) {
  std::vector<NodeId> path;
  if (!(dist[from] < kInf)) return path;  // disconnected
  path.reserve(static_cast<std::size_t>(hops[from]) + 1);
  std::uint32_t u = from;
  path.push_back(net.id_of(u));
  while (u != source) {
    bool advanced = false;
    for (const Network::Arc& a : net.arcs(u)) {  // ascending neighbour id
      if (!(a.weight < kInf)) continue;
      if (hops[a.to] + 1 == hops[u] && dist[a.to] + a.weight == dist[u]) {
        path.push_back(net.id_of(a.to));
        u = a.to;
        advanced = true;
        break;
      }
    }
    if (!advanced)
      throw std::logic_error("optimal path reconstruction stalled");
  }
  return path;
}

inline std::uint64_t pair_index(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
  // upper-triangular row-major, a < b < m
  return a * m - a * (a + 1) / 2 + (b - a - 1);
}

}  // namespace detail

/// Pairwise connection strengths over a node subset.
///
/// Strengths and hop counts are always stored (one slot per unordered
/// pair); realizing path sequences are optional because they dominate
/// memory on large instances. Entries are addressed by node id in either
/// order.
class StrengthTable {
 public:
  StrengthTable(NodeSet subset, std::vector<double> log_strength,
                std::vector<std::int32_t> hops,
                std::optional<std::vector<std::vector<NodeId>>> paths = {})
      : subset_(std::move(subset)),
        log_strength_(std::move(log_strength)),
        hops_(std::move(hops)),
        paths_(std::move(paths)) {
    const std::uint64_t np = pair_count();
    detail::require(log_strength_.size() == np && hops_.size() == np &&
                        (!paths_ || paths_->size() == np),
                    errc::invalid_parameter, "strength table size mismatch");
  }

  /// Table from plain strengths in row-major upper-triangular order;
  /// hop counts are unknown and recorded as 0 (1 for the degenerate
  /// single-edge reading is not assumed).
  static StrengthTable from_strengths(NodeSet subset,
                                      const std::vector<double>& strengths) {
    std::vector<double> ls;
    ls.reserve(strengths.size());
    for (double s : strengths) {
      detail::require(s >= 0.0 && s <= 1.0, errc::invalid_parameter,
                      "strength outside [0,1]");
      ls.push_back(std::log(s));
    }
    return StrengthTable(std::move(subset), std::move(ls),
                         std::vector<std::int32_t>(strengths.size(), 0));
  }

  const NodeSet& subset() const noexcept { return subset_; }

  std::uint64_t pair_count() const noexcept {
    const std::uint64_t m = subset_.size();
    return m < 2 ? 0 : m * (m - 1) / 2;
  }

  double log_strength(NodeId i, NodeId j) const {
    return log_strength_[index(i, j)];
  }
  double strength(NodeId i, NodeId j) const {
    return std::exp(log_strength(i, j));
  }
  std::int32_t hops(NodeId i, NodeId j) const { return hops_[index(i, j)]; }

  bool has_paths() const noexcept { return paths_.has_value(); }

  /// Path oriented from the smaller to the larger node id.
  const std::vector<NodeId>& path(NodeId i, NodeId j) const {
    detail::require(paths_.has_value(), errc::invalid_parameter,
                    "table built without paths");
    return (*paths_)[index(i, j)];
  }

  PathResult result(NodeId i, NodeId j) const {
    PathResult r;
    r.i = std::min(i, j);
    r.j = std::max(i, j);
    r.log_strength = log_strength(i, j);
    r.strength = std::exp(r.log_strength);
    r.hops = hops(i, j);
    if (paths_) r.path = (*paths_)[index(i, j)];
    return r;
  }

  std::span<const double> log_strengths() const noexcept {
    return log_strength_;
  }
  std::span<const std::int32_t> hop_counts() const noexcept { return hops_; }

 private:
  std::uint64_t index(NodeId i, NodeId j) const {
    detail::require(i != j, errc::same_node,
                    "pair requires two distinct nodes");
    std::uint64_t a = subset_.rank(i), b = subset_.rank(j);
    if (a > b) std::swap(a, b);
    return detail::pair_index(a, b, subset_.size());
  }

  NodeSet subset_;
  std::vector<double> log_strength_;
  std::vector<std::int32_t> hops_;
  std::optional<std::vector<std::vector<NodeId>>> paths_;
};

/// Strongest connection between i and j over all simple paths; ties between
/// equal-strength paths go to fewer hops, then to the lexicographically
/// smallest node sequence, so output is reproducible.
inline PathResult optimal_path(const Network& net, NodeId i, NodeId j) {
  detail::require(i != j, errc::same_node, "i and j must differ");
  const std::uint32_t from = net.index_of(i);
  const std::uint32_t source = net.index_of(j);
  std::vector<double> dist(net.node_count());
  std::vector<std::int32_t> hops(net.node_count());
  detail::sssp_sweep(net, source, dist, hops, from);
  PathResult r;
  r.i = i;
  r.j = j;
  if (dist[from] < detail::kInf) {
    r.log_strength = -dist[from];
    r.strength = std::exp(r.log_strength);
    r.hops = hops[from];
    r.path = detail::greedy_path(net, from, source, dist, hops);
  }
  return r;
}

struct AllPairsOptions {
  bool keep_paths = true;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// One single-source sweep per subset member over the whole network (paths
/// may pass through nodes outside the subset). Sweeps are independent and
/// fan out across threads; every pair slot is written by exactly one sweep,
/// so results are identical for any worker count.
inline StrengthTable all_pairs_strengths(const Network& net,
                                         const NodeSet& subset,
                                         AllPairsOptions opt = {}) {
  const std::uint64_t m = subset.size();
  detail::require(m >= 2, errc::subset_too_small,
                  "need at least 2 subset nodes");
  std::vector<std::uint32_t> member_index(m);
  for (std::uint64_t k = 0; k < m; ++k)
    member_index[k] = net.index_of(subset[k]);

  const std::uint64_t np = m * (m - 1) / 2;
  std::vector<double> log_strength(np);
  std::vector<std::int32_t> hop_out(np);
  std::optional<std::vector<std::vector<NodeId>>> paths;
  if (opt.keep_paths) paths.emplace(np);

  detail::parallel_for(m, opt.threads, [&](std::size_t b) {
    thread_local std::vector<double> dist;
    thread_local std::vector<std::int32_t> hops;
    dist.resize(net.node_count());
    hops.resize(net.node_count());
    detail::sssp_sweep(net, member_index[b], dist, hops);
    // this sweep owns every pair whose larger-rank endpoint is b
    for (std::uint64_t a = 0; a < b; ++a) {
      const std::uint64_t idx = detail::pair_index(a, b, m);
      const std::uint32_t ia = member_index[a];
      if (dist[ia] < detail::kInf) {
        log_strength[idx] = -dist[ia];
        hop_out[idx] = hops[ia];
        if (paths)
          (*paths)[idx] =
              detail::greedy_path(net, ia, member_index[b], dist, hops);
      } else {
        log_strength[idx] = -detail::kInf;
        hop_out[idx] = 0;
      }
    }
  });
  return StrengthTable(subset, std::move(log_strength), std::move(hop_out),
                       std::move(paths));
}

/// PMF of breadth-first hop distances over all unordered node pairs.
/// Zero-concurrence edges are not traversable here either.
inline PathLengthPmf hop_distance_pmf(const Network& net,
                                      unsigned threads = 0) {
  const std::size_t n = net.node_count();
  detail::require(n >= 2, errc::invalid_parameter,
                  "need at least 2 nodes for a pair PMF");

  const unsigned t = threads == 0
                         ? std::max(1u, std::thread::hardware_concurrency())
                         : threads;
  std::vector<std::vector<std::uint64_t>> counts(
      t, std::vector<std::uint64_t>(n, 0));
  std::vector<std::uint64_t> disconnected(t, 0);
  std::atomic<unsigned> worker_id{0};

  detail::parallel_for(n, t, [&](std::size_t source) {
    thread_local unsigned wid = worker_id.fetch_add(1);
    thread_local std::vector<std::int32_t> depth;
    thread_local std::vector<std::uint32_t> frontier;
    depth.assign(n, -1);
    frontier.clear();
    frontier.push_back(static_cast<std::uint32_t>(source));
    depth[source] = 0;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const std::uint32_t u = frontier[head];
      for (const Network::Arc& a : net.arcs(u)) {
        if (!(a.weight < detail::kInf) || depth[a.to] >= 0) continue;
        depth[a.to] = depth[u] + 1;
        counts[wid][static_cast<std::size_t>(depth[a.to])]++;
        frontier.push_back(a.to);
        ++reached;
      }
    }
    disconnected[wid] += n - reached;
  });

  std::vector<std::uint64_t> total(n, 0);
  std::uint64_t disc = 0;
  for (unsigned w = 0; w < t; ++w) {
    for (std::size_t ell = 0; ell < n; ++ell) total[ell] += counts[w][ell];
    disc += disconnected[w];
  }
  // each unordered pair was seen from both endpoints
  PathLengthPmf pmf;
  pmf.pair_count = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  for (std::size_t ell = 1; ell < n; ++ell) {
    if (total[ell] == 0) continue;
    pmf.q[static_cast<std::int32_t>(ell)] =
        static_cast<double>(total[ell] / 2) /
        static_cast<double>(pmf.pair_count);
    pmf.ell_max = static_cast<std::int32_t>(ell);
  }
  pmf.disconnected_fraction =
      static_cast<double>(disc / 2) / static_cast<double>(pmf.pair_count);
  return pmf;
}

}  // namespace qconn
