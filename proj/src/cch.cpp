#include "sta/cch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>

namespace sta {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::infinity();

std::uint64_t pair_key(int lo_rank, int hi_rank) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo_rank)) << 32) |
         static_cast<std::uint32_t>(hi_rank);
}

// Undirected simple skeleton of the directed multigraph.
std::vector<std::vector<Vertex>> build_skeleton(const RoadNetwork& net) {
  std::vector<std::vector<Vertex>> adj(static_cast<size_t>(net.num_vertices()));
  for (const Edge& e : net.edges()) {
    if (e.tail == e.head) continue;
    adj[static_cast<size_t>(e.tail)].push_back(e.head);
    adj[static_cast<size_t>(e.head)].push_back(e.tail);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return adj;
}

// Recursive balanced bisection: BFS level sets from a pseudo-peripheral
// vertex, the median level acts as separator and is eliminated last.
class OrderBuilder {
 public:
  OrderBuilder(const std::vector<std::vector<Vertex>>& adj, Vertex n)
      : adj_(adj), in_set_(static_cast<size_t>(n), 0), level_(static_cast<size_t>(n), -1) {
    order_.reserve(static_cast<size_t>(n));
  }

  std::vector<Vertex> run() {
    std::vector<Vertex> all(adj_.size());
    for (size_t v = 0; v < adj_.size(); ++v) all[v] = static_cast<Vertex>(v);
    recurse(std::move(all));
    return std::move(order_);
  }

 private:
  static constexpr size_t kLeafSize = 16;

  void emit(std::vector<Vertex> verts) {
    std::sort(verts.begin(), verts.end());
    order_.insert(order_.end(), verts.begin(), verts.end());
  }

  // BFS restricted to marked vertices; returns visited list, fills level_.
  std::vector<Vertex> bfs(Vertex root) {
    std::vector<Vertex> visited{root};
    level_[static_cast<size_t>(root)] = 0;
    for (size_t head = 0; head < visited.size(); ++head) {
      const Vertex u = visited[head];
      for (Vertex w : adj_[static_cast<size_t>(u)]) {
        if (!in_set_[static_cast<size_t>(w)] || level_[static_cast<size_t>(w)] >= 0) continue;
        level_[static_cast<size_t>(w)] = level_[static_cast<size_t>(u)] + 1;
        visited.push_back(w);
      }
    }
    return visited;
  }

  void clear_levels(const std::vector<Vertex>& verts) {
    for (Vertex v : verts) level_[static_cast<size_t>(v)] = -1;
  }

  void recurse(std::vector<Vertex> verts) {
    if (verts.size() <= kLeafSize) {
      emit(std::move(verts));
      return;
    }
    for (Vertex v : verts) in_set_[static_cast<size_t>(v)] = 1;

    // Split into connected components first.
    std::vector<std::vector<Vertex>> comps;
    std::sort(verts.begin(), verts.end());
    for (Vertex v : verts) {
      if (level_[static_cast<size_t>(v)] >= 0) continue;
      comps.push_back(bfs(v));
    }
    clear_levels(verts);
    for (Vertex v : verts) in_set_[static_cast<size_t>(v)] = 0;

    if (comps.size() > 1) {
      for (auto& c : comps) recurse(std::move(c));
      return;
    }

    // Connected: find a pseudo-peripheral vertex by double sweep.
    for (Vertex v : verts) in_set_[static_cast<size_t>(v)] = 1;
    std::vector<Vertex> sweep = bfs(verts.front());
    Vertex far = sweep.back();
    clear_levels(verts);
    std::vector<Vertex> layered = bfs(far);

    int max_level = 0;
    for (Vertex v : layered) max_level = std::max(max_level, level_[static_cast<size_t>(v)]);
    std::vector<std::int64_t> level_count(static_cast<size_t>(max_level) + 1, 0);
    for (Vertex v : layered) level_count[static_cast<size_t>(level_[static_cast<size_t>(v)])]++;
    int split = 1;
    std::int64_t seen = level_count[0];
    while (split < max_level && seen < static_cast<std::int64_t>(verts.size()) / 2) {
      seen += level_count[static_cast<size_t>(split)];
      ++split;
    }

    std::vector<Vertex> below, separator, above;
    for (Vertex v : layered) {
      const int l = level_[static_cast<size_t>(v)];
      if (l < split)
        below.push_back(v);
      else if (l == split)
        separator.push_back(v);
      else
        above.push_back(v);
    }
    clear_levels(verts);
    for (Vertex v : verts) in_set_[static_cast<size_t>(v)] = 0;

    recurse(std::move(below));
    if (!above.empty()) recurse(std::move(above));
    emit(std::move(separator));
  }

  const std::vector<std::vector<Vertex>>& adj_;
  std::vector<char> in_set_;
  std::vector<int> level_;
  std::vector<Vertex> order_;
};

}  // namespace

std::span<const std::int32_t> MetricIndependentIndex::up_chords(Vertex v) const {
  const size_t r = static_cast<size_t>(rank_[static_cast<size_t>(v)]);
  const auto b = static_cast<size_t>(up_first_[r]);
  const auto e = static_cast<size_t>(up_first_[r + 1]);
  return {up_chords_.data() + b, e - b};
}

std::int32_t MetricIndependentIndex::find_chord(Vertex a, Vertex b) const {
  int ra = rank_[static_cast<size_t>(a)], rb = rank_[static_cast<size_t>(b)];
  if (ra > rb) std::swap(ra, rb);
  auto it = chord_index_.find(pair_key(ra, rb));
  return it == chord_index_.end() ? -1 : it->second;
}

MetricIndependentIndex MetricIndependentIndex::build(const RoadNetwork& network) {
  MetricIndependentIndex idx;
  idx.network_ = &network;
  const Vertex n = network.num_vertices();
  const auto skeleton = build_skeleton(network);

  idx.order_ = OrderBuilder(skeleton, n).run();
  idx.rank_.assign(static_cast<size_t>(n), 0);
  for (int r = 0; r < n; ++r) idx.rank_[static_cast<size_t>(idx.order_[static_cast<size_t>(r)])] = r;

  // Elimination game on ranks: eliminating a vertex connects its remaining
  // higher neighbors into a clique.
  std::vector<std::set<int>> higher(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : skeleton[static_cast<size_t>(v)]) {
      if (v < w) {
        const int rv = idx.rank_[static_cast<size_t>(v)], rw = idx.rank_[static_cast<size_t>(w)];
        higher[static_cast<size_t>(std::min(rv, rw))].insert(std::max(rv, rw));
      }
    }
  }

  idx.et_parent_.assign(static_cast<size_t>(n), kNoVertex);
  idx.up_first_.assign(static_cast<size_t>(n) + 1, 0);
  for (int r = 0; r < n; ++r) {
    const Vertex v = idx.order_[static_cast<size_t>(r)];
    const auto& ups = higher[static_cast<size_t>(r)];
    if (!ups.empty()) idx.et_parent_[static_cast<size_t>(v)] = idx.order_[static_cast<size_t>(*ups.begin())];
    for (int hr : ups) {
      const auto ce = static_cast<std::int32_t>(idx.chord_lo_.size());
      idx.chord_lo_.push_back(v);
      idx.chord_hi_.push_back(idx.order_[static_cast<size_t>(hr)]);
      idx.chord_index_.emplace(pair_key(r, hr), ce);
      idx.up_chords_.push_back(ce);
    }
    idx.up_first_[static_cast<size_t>(r) + 1] =
        static_cast<std::int32_t>(idx.up_chords_.size());
    for (auto i = ups.begin(); i != ups.end(); ++i) {
      auto j = i;
      for (++j; j != ups.end(); ++j) higher[static_cast<size_t>(*i)].insert(*j);
    }
  }

  // Triangle lists, grouped by apex rank ascending.
  for (int r = 0; r < n; ++r) {
    const auto b = static_cast<size_t>(idx.up_first_[static_cast<size_t>(r)]);
    const auto e = static_cast<size_t>(idx.up_first_[static_cast<size_t>(r) + 1]);
    for (size_t i = b; i < e; ++i) {
      for (size_t j = i + 1; j < e; ++j) {
        const std::int32_t uv = idx.up_chords_[i], uw = idx.up_chords_[j];
        const std::int32_t vw =
            idx.find_chord(idx.chord_hi_[static_cast<size_t>(uv)], idx.chord_hi_[static_cast<size_t>(uw)]);
        if (vw < 0) throw std::logic_error("chordal closure broken: triangle edge missing");
        idx.triangles_.push_back({uv, uw, vw});
      }
    }
  }

  idx.edge_chord_.assign(static_cast<size_t>(network.num_edges()), -1);
  idx.edge_up_.assign(static_cast<size_t>(network.num_edges()), 0);
  for (EdgeId e = 0; e < network.num_edges(); ++e) {
    const Edge& ed = network.edge(e);
    if (ed.tail == ed.head) continue;  // self loops never lie on simple paths
    idx.edge_chord_[static_cast<size_t>(e)] = idx.find_chord(ed.tail, ed.head);
    idx.edge_up_[static_cast<size_t>(e)] =
        idx.rank_[static_cast<size_t>(ed.tail)] < idx.rank_[static_cast<size_t>(ed.head)] ? 1 : 0;
  }
  return idx;
}

MetricIndependentIndex cch_preprocess(const RoadNetwork& network) {
  return MetricIndependentIndex::build(network);
}

CustomizedIndex cch_customize(const MetricIndependentIndex& index,
                              std::span<const Cost> edge_costs) {
  const RoadNetwork& net = index.network();
  if (edge_costs.size() != static_cast<size_t>(net.num_edges()))
    throw ValidationError("metric size does not match edge count");
  for (size_t e = 0; e < edge_costs.size(); ++e)
    if (!(edge_costs[e] >= 0.0) || !std::isfinite(edge_costs[e]))
      throw ValidationError("edge " + std::to_string(e) +
                            ": customization requires finite non-negative cost");

  CustomizedIndex c;
  c.index_ = &index;
  c.edge_costs_.assign(edge_costs.begin(), edge_costs.end());
  const size_t nc = static_cast<size_t>(index.num_chords());
  c.up_.assign(nc, kInf);
  c.down_.assign(nc, kInf);
  c.mid_up_.assign(nc, kNoVertex);
  c.mid_down_.assign(nc, kNoVertex);
  c.orig_up_.assign(nc, kNoEdge);
  c.orig_down_.assign(nc, kNoEdge);

  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const auto ce = index.chord_of_edge(e);
    if (ce < 0) continue;
    const size_t cs = static_cast<size_t>(ce);
    if (index.edge_is_up(e)) {
      if (edge_costs[static_cast<size_t>(e)] < c.up_[cs]) {
        c.up_[cs] = edge_costs[static_cast<size_t>(e)];
        c.orig_up_[cs] = e;
      }
    } else if (edge_costs[static_cast<size_t>(e)] < c.down_[cs]) {
      c.down_[cs] = edge_costs[static_cast<size_t>(e)];
      c.orig_down_[cs] = e;
    }
  }

  // Basic customization: bottom-up lower-triangle relaxations. After this,
  // each label is the best path through vertices below both endpoints.
  for (const auto& t : index.triangles()) {
    const Vertex apex = index.chord_lo(t.uv);
    const size_t uv = static_cast<size_t>(t.uv), uw = static_cast<size_t>(t.uw),
                 vw = static_cast<size_t>(t.vw);
    const Cost via_up = c.down_[uv] + c.up_[uw];  // v -> u -> w
    if (via_up < c.up_[vw]) {
      c.up_[vw] = via_up;
      c.mid_up_[vw] = apex;
    }
    const Cost via_down = c.down_[uw] + c.up_[uv];  // w -> u -> v
    if (via_down < c.down_[vw]) {
      c.down_[vw] = via_down;
      c.mid_down_[vw] = apex;
    }
  }

  // Perfect customization: top-down pass pulls every label down to the
  // exact shortest-path distance between the chord endpoints.
  c.dist_up_ = c.up_;
  c.dist_down_ = c.down_;
  for (auto it = index.triangles().rbegin(); it != index.triangles().rend(); ++it) {
    const size_t uv = static_cast<size_t>(it->uv), uw = static_cast<size_t>(it->uw),
                 vw = static_cast<size_t>(it->vw);
    c.dist_up_[uv] = std::min(c.dist_up_[uv], c.dist_up_[uw] + c.dist_down_[vw]);    // u->w->v
    c.dist_down_[uv] = std::min(c.dist_down_[uv], c.dist_up_[vw] + c.dist_down_[uw]);  // v->w->u
    c.dist_up_[uw] = std::min(c.dist_up_[uw], c.dist_up_[uv] + c.dist_up_[vw]);      // u->v->w
    c.dist_down_[uw] = std::min(c.dist_down_[uw], c.dist_down_[vw] + c.dist_down_[uv]);  // w->v->u
  }
  return c;
}

CchQuery::CchQuery(const CustomizedIndex& customized)
    : cust_(&customized), idx_(&customized.index()) {
  const size_t n = static_cast<size_t>(idx_->network().num_vertices());
  dist_f_.assign(n, kInf);
  dist_b_.assign(n, kInf);
  pred_f_.assign(n, -1);
  pred_b_.assign(n, -1);
  stamp_.assign(n, 0);
}

void CchQuery::touch(Vertex v) {
  if (stamp_[static_cast<size_t>(v)] != generation_) {
    stamp_[static_cast<size_t>(v)] = generation_;
    dist_f_[static_cast<size_t>(v)] = kInf;
    dist_b_[static_cast<size_t>(v)] = kInf;
    pred_f_[static_cast<size_t>(v)] = -1;
    pred_b_[static_cast<size_t>(v)] = -1;
  }
}

void CchQuery::unpack(std::int32_t ce, bool upward, Path& out) const {
  const Vertex m = upward ? cust_->mid_up_[static_cast<size_t>(ce)]
                          : cust_->mid_down_[static_cast<size_t>(ce)];
  if (m == kNoVertex) {
    const EdgeId e = upward ? cust_->orig_up_[static_cast<size_t>(ce)]
                            : cust_->orig_down_[static_cast<size_t>(ce)];
    if (e == kNoEdge) throw std::logic_error("unpacking an unreachable chord label");
    out.push_back(e);
    return;
  }
  const Vertex a = upward ? idx_->chord_lo(ce) : idx_->chord_hi(ce);
  const Vertex b = upward ? idx_->chord_hi(ce) : idx_->chord_lo(ce);
  // The apex m sits below both endpoints: a -> m descends, m -> b ascends.
  unpack(idx_->find_chord(a, m), false, out);
  unpack(idx_->find_chord(m, b), true, out);
}

PathResult CchQuery::run(Vertex s, Vertex t) {
  const RoadNetwork& net = idx_->network();
  if (s == t) throw ValidationError("query requires distinct endpoints, got s = t = " +
                                    std::to_string(s));
  ++generation_;
  touch(s);
  dist_f_[static_cast<size_t>(s)] = 0.0;
  touch(t);
  dist_b_[static_cast<size_t>(t)] = 0.0;

  auto relax_f = [&](Vertex x) {
    const Cost dx = dist_f_[static_cast<size_t>(x)];
    if (dx == kInf) return;
    for (std::int32_t ce : idx_->up_chords(x)) {
      const Vertex w = idx_->chord_hi(ce);
      touch(w);
      const Cost nd = dx + cust_->up_[static_cast<size_t>(ce)];
      if (nd < dist_f_[static_cast<size_t>(w)]) {
        dist_f_[static_cast<size_t>(w)] = nd;
        pred_f_[static_cast<size_t>(w)] = ce;
      }
    }
  };
  auto relax_b = [&](Vertex y) {
    const Cost dy = dist_b_[static_cast<size_t>(y)];
    if (dy == kInf) return;
    for (std::int32_t ce : idx_->up_chords(y)) {
      const Vertex w = idx_->chord_hi(ce);
      touch(w);
      const Cost nd = dy + cust_->down_[static_cast<size_t>(ce)];
      if (nd < dist_b_[static_cast<size_t>(w)]) {
        dist_b_[static_cast<size_t>(w)] = nd;
        pred_b_[static_cast<size_t>(w)] = ce;
      }
    }
  };

  // Interleaved walk up both elimination-tree chains, lower rank first.
  Vertex x = s, y = t;
  while (x != y) {
    const bool walk_x =
        y == kNoVertex || (x != kNoVertex && idx_->rank(x) < idx_->rank(y));
    if (walk_x) {
      touch(x);
      relax_f(x);
      x = idx_->et_parent(x);
    } else {
      touch(y);
      relax_b(y);
      y = idx_->et_parent(y);
    }
  }
  if (x == kNoVertex)
    throw NoPathError("no path from " + std::to_string(s) + " to " + std::to_string(t));

  // Shared ancestor chain: collect meet candidates, relax both directions.
  Cost best = kInf;
  Vertex meet = kNoVertex;
  for (Vertex v = x; v != kNoVertex; v = idx_->et_parent(v)) {
    touch(v);
    const Cost total = dist_f_[static_cast<size_t>(v)] + dist_b_[static_cast<size_t>(v)];
    if (total < best) {
      best = total;
      meet = v;
    }
    relax_f(v);
    relax_b(v);
  }
  if (!std::isfinite(best))
    throw NoPathError("no path from " + std::to_string(s) + " to " + std::to_string(t));

  std::vector<std::int32_t> up_arcs;
  for (Vertex v = meet; v != s;) {
    const std::int32_t ce = pred_f_[static_cast<size_t>(v)];
    up_arcs.push_back(ce);
    v = idx_->chord_lo(ce);
  }
  std::reverse(up_arcs.begin(), up_arcs.end());

  Path walk;
  for (std::int32_t ce : up_arcs) unpack(ce, true, walk);
  for (Vertex v = meet; v != t;) {
    const std::int32_t ce = pred_b_[static_cast<size_t>(v)];
    unpack(ce, false, walk);
    v = idx_->chord_lo(ce);
  }

  // Splice out zero-cost detours so the strategy is a simple path.
  PathResult result;
  result.cost = best;
  std::vector<Vertex> verts{s};
  std::unordered_map<Vertex, size_t> seen_at;
  seen_at.emplace(s, 0);
  for (EdgeId e : walk) {
    const Vertex h = net.edge(e).head;
    auto it = seen_at.find(h);
    if (it != seen_at.end()) {
      while (verts.size() > it->second + 1) {
        seen_at.erase(verts.back());
        verts.pop_back();
        result.path.pop_back();
      }
    } else {
      result.path.push_back(e);
      verts.push_back(h);
      seen_at.emplace(h, verts.size() - 1);
    }
  }

  Cost check = 0.0;
  for (EdgeId e : result.path) check += cust_->edge_costs_[static_cast<size_t>(e)];
  if (std::abs(check - best) > 1e-9 * std::max(1.0, std::abs(best)))
    throw std::logic_error("unpacked path cost diverges from query distance");
  return result;
}

PathResult cch_query(const CustomizedIndex& customized, Vertex s, Vertex t) {
  CchQuery q(customized);
  return q.run(s, t);
}

}  // namespace sta
