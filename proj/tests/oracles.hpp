// Test-only reference computations, independent of the library's own
// algorithm paths.
#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <vector>

#include "alex/geom.hpp"
#include "alex/metric.hpp"

namespace oracle {

// Dense-graph geodesic oracle: subdivide every edge with k Steiner points and
// connect all node pairs on each face boundary by straight in-face segments,
// then run Dijkstra. Distances converge to the true geodesics from above.
class DenseGraph {
public:
  DenseGraph(const alex::SurfaceComplex& m, int steiner_per_edge = 50) : m_(m) {
    int n = m.vertex_count();
    for (int v = 0; v < n; ++v) node_of_vertex_.push_back(add_node());
    for (int ds = 0; ds < m.side_count(); ++ds) {
      if (ds > m.glue(ds)) continue;
      double len = m.side_length(ds);
      std::vector<int> chain;
      chain.push_back(node_of_vertex_[m.side_from(ds)]);
      for (int i = 1; i <= steiner_per_edge; ++i) chain.push_back(add_node());
      chain.push_back(node_of_vertex_[m.side_to(ds)]);
      side_nodes_[ds] = chain;
      std::vector<int> rev(chain.rbegin(), chain.rend());
      side_nodes_[m.glue(ds)] = rev;
      for (size_t i = 0; i + 1 < chain.size(); ++i) {
        add_arc(chain[i], chain[i + 1], len / (steiner_per_edge + 1));
      }
    }
    // complete in-face connections
    for (int t = 0; t < m.triangle_count(); ++t) {
      auto chart = m.chart(t);
      std::vector<std::pair<int, alex::Vec2>> nodes;
      for (int s = 0; s < 3; ++s) {
        int ds = alex::side_id(t, s);
        alex::Rigid2 inv = m.canonical_to_side(ds).inverse();
        const auto& chain = side_nodes_[ds];
        double len = m.side_length(ds);
        int k = static_cast<int>(chain.size()) - 2;
        for (int i = 0; i <= k; ++i) {  // skip the far endpoint; next side adds it
          double tpar = len * i / (k + 1);
          nodes.push_back({chain[i], inv.apply({tpar, 0})});
        }
      }
      for (size_t i = 0; i < nodes.size(); ++i) {
        for (size_t j = i + 1; j < nodes.size(); ++j) {
          add_arc(nodes[i].first, nodes[j].first,
                  alex::dist(nodes[i].second, nodes[j].second));
        }
      }
    }
  }

  std::vector<double> distances_from_vertex(int v) const {
    std::vector<double> dist(adj_.size(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
    dist[node_of_vertex_[v]] = 0;
    q.push({0, node_of_vertex_[v]});
    while (!q.empty()) {
      auto [d, u] = q.top();
      q.pop();
      if (d > dist[u]) continue;
      for (auto [to, w] : adj_[u]) {
        if (d + w < dist[to]) {
          dist[to] = d + w;
          q.push({d + w, to});
        }
      }
    }
    std::vector<double> out(m_.vertex_count());
    for (int i = 0; i < m_.vertex_count(); ++i) out[i] = dist[node_of_vertex_[i]];
    return out;
  }

private:
  const alex::SurfaceComplex& m_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  std::vector<int> node_of_vertex_;
  std::map<int, std::vector<int>> side_nodes_;

  int add_node() {
    adj_.push_back({});
    return static_cast<int>(adj_.size()) - 1;
  }
  void add_arc(int a, int b, double w) {
    adj_[a].push_back({b, w});
    adj_[b].push_back({a, w});
  }
};

// Deterministic random tetrahedra with a volume floor.
struct TetraSample {
  std::array<alex::Vec3, 4> pts;
  double ab, ac, ad, bc, bd, cd;
};

inline TetraSample random_tetrahedron(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  while (true) {
    std::array<alex::Vec3, 4> p;
    for (auto& v : p) v = {uni(rng), uni(rng), uni(rng)};
    double vol = std::abs(dot(p[1] - p[0], cross(p[2] - p[0], p[3] - p[0]))) / 6.0;
    if (vol < 2e-3) continue;
    TetraSample t;
    t.pts = p;
    t.ab = dist(p[0], p[1]);
    t.ac = dist(p[0], p[2]);
    t.ad = dist(p[0], p[3]);
    t.bc = dist(p[1], p[2]);
    t.bd = dist(p[1], p[3]);
    t.cd = dist(p[2], p[3]);
    return t;
  }
}

// Dihedral angle along AB from coordinates via face normals.
inline double dihedral_from_points(const std::array<alex::Vec3, 4>& p) {
  alex::Vec3 u = p[1] - p[0];
  alex::Vec3 n1 = cross(u, p[2] - p[0]);
  alex::Vec3 n2 = cross(u, p[3] - p[0]);
  return alex::acos_clamped(dot(n1, n2) / (norm(n1) * norm(n2)));
}

} // namespace oracle
