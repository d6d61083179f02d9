#include "hgb/construct.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hgb/error.hpp"

namespace hgb {

void canonicalize(std::vector<Hyperedge>& hyperedges) {
  for (Hyperedge& he : hyperedges) std::sort(he.begin(), he.end());
  std::sort(hyperedges.begin(), hyperedges.end());
}

namespace {

/// Vertex order produced by repeatedly removing a minimum-degree vertex.
std::vector<NodeId> degeneracy_order(const Adjacency& adj) {
  const std::size_t n = adj.num_nodes();
  std::vector<std::size_t> degree(n);
  std::size_t max_degree = 0;
  for (NodeId v = 0; v < n; ++v) {
    degree[v] = adj.degree(v);
    max_degree = std::max(max_degree, degree[v]);
  }
  // Bucket queue (Batagelj-Zaversnik).
  std::vector<std::size_t> bin(max_degree + 2, 0);
  for (std::size_t d : degree) ++bin[d];
  std::size_t start = 0;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    const std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<NodeId> order(n);
  std::vector<std::size_t> pos(n);
  for (NodeId v = 0; v < n; ++v) {
    pos[v] = bin[degree[v]]++;
    order[pos[v]] = v;
  }
  for (std::size_t d = max_degree + 1; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    for (NodeId u : adj.neighbors(v)) {
      if (degree[u] <= degree[v]) continue;
      const std::size_t du = degree[u];
      const std::size_t pu = pos[u];
      const std::size_t pw = bin[du];
      const NodeId w = order[pw];
      if (u != w) {
        std::swap(order[pu], order[pw]);
        pos[u] = pw;
        pos[w] = pu;
      }
      ++bin[du];
      --degree[u];
    }
  }
  return order;
}

void intersect(std::span<const NodeId> a, std::span<const NodeId> b, std::vector<NodeId>& out) {
  out.clear();
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

class CliqueEnumerator {
 public:
  CliqueEnumerator(const Adjacency& adj, std::size_t min_size, std::vector<Hyperedge>& out)
      : adj_(adj), min_size_(min_size), out_(out) {}

  void expand(std::vector<NodeId>& clique, std::vector<NodeId> candidates,
              std::vector<NodeId> excluded) {
    if (candidates.empty()) {
      if (excluded.empty() && clique.size() >= min_size_) out_.push_back(clique);
      return;
    }
    if (clique.size() + candidates.size() < min_size_) return;

    // Pivot: vertex of P u X with the most neighbours in P.
    NodeId pivot = candidates.front();
    std::size_t best = intersection_size(adj_.neighbors(pivot), candidates);
    for (const auto* pool : {&candidates, &excluded}) {
      for (NodeId u : *pool) {
        const std::size_t c = intersection_size(adj_.neighbors(u), candidates);
        if (c > best) {
          best = c;
          pivot = u;
        }
      }
    }

    std::vector<NodeId> branch;
    std::set_difference(candidates.begin(), candidates.end(), adj_.neighbors(pivot).begin(),
                        adj_.neighbors(pivot).end(), std::back_inserter(branch));
    std::vector<NodeId> next_p, next_x;
    for (NodeId v : branch) {
      intersect(candidates, adj_.neighbors(v), next_p);
      intersect(excluded, adj_.neighbors(v), next_x);
      clique.push_back(v);
      expand(clique, next_p, next_x);
      clique.pop_back();
      candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
      excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
    }
  }

 private:
  const Adjacency& adj_;
  std::size_t min_size_;
  std::vector<Hyperedge>& out_;
};

}  // namespace

std::vector<Hyperedge> cliques_to_hyperedges(std::span<const Edge> edges, std::size_t num_nodes,
                                             std::size_t min_size) {
  for (const Edge& e : edges)
    if (e.u >= num_nodes || e.v >= num_nodes || e.u == e.v)
      throw ContractError("cliques_to_hyperedges: invalid simple edge");
  // Deduplicate so that Adjacency neighbour lists are sets.
  std::vector<Edge> unique(edges.begin(), edges.end());
  for (Edge& e : unique) e = canonical(e);
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  const Adjacency adj(num_nodes, unique);
  const std::vector<NodeId> order = degeneracy_order(adj);
  std::vector<std::size_t> rank(num_nodes);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  std::vector<Hyperedge> cliques;
  CliqueEnumerator enumerator(adj, min_size, cliques);
  std::vector<NodeId> clique;
  for (NodeId v : order) {
    std::vector<NodeId> later, earlier;
    for (NodeId u : adj.neighbors(v)) (rank[u] > rank[v] ? later : earlier).push_back(u);
    clique.assign(1, v);
    enumerator.expand(clique, std::move(later), std::move(earlier));
  }
  canonicalize(cliques);
  return cliques;
}

std::vector<Hyperedge> interval_hyperedges(std::span<const GenomicPosition> positions,
                                           std::int64_t threshold_bp) {
  if (threshold_bp < 0) throw ContractError("interval_hyperedges: negative threshold");
  std::map<std::string, std::vector<NodeId>> by_chromosome;
  for (std::size_t v = 0; v < positions.size(); ++v)
    by_chromosome[positions[v].chromosome].push_back(static_cast<NodeId>(v));

  std::vector<Hyperedge> result;
  for (auto& [chromosome, nodes] : by_chromosome) {
    std::stable_sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
      return positions[a].offset < positions[b].offset;
    });
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::int64_t anchor = positions[nodes[i]].offset;
      while (positions[nodes[lo]].offset < anchor - threshold_bp) ++lo;
      while (hi < nodes.size() && positions[nodes[hi]].offset <= anchor + threshold_bp) ++hi;
      Hyperedge he(nodes.begin() + static_cast<std::ptrdiff_t>(lo),
                   nodes.begin() + static_cast<std::ptrdiff_t>(hi));
      std::sort(he.begin(), he.end());
      result.push_back(std::move(he));
    }
  }
  canonicalize(result);
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

DistanceMetric parse_metric(std::string_view name) {
  if (name == "euclidean") return DistanceMetric::euclidean;
  if (name == "cosine") return DistanceMetric::cosine;
  throw ContractError("unknown distance metric '" + std::string(name) + "'");
}

std::string_view to_string(DistanceMetric metric) {
  return metric == DistanceMetric::euclidean ? "euclidean" : "cosine";
}

std::vector<Hyperedge> ball_hyperedges(const Matrix& embeddings, double tau,
                                       DistanceMetric metric) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw ContractError("ball_hyperedges: tau must be a positive finite number");
  if (!embeddings.allFinite()) throw ContractError("ball_hyperedges: non-finite embedding value");

  const Eigen::Index n = embeddings.rows();
  std::vector<Hyperedge> balls(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) balls[static_cast<std::size_t>(i)].push_back(
      static_cast<NodeId>(i));

  Matrix points = embeddings;
  if (metric == DistanceMetric::cosine) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double norm = points.row(i).norm();
      if (norm > 0.0) points.row(i) /= norm;
    }
  }
  const double tau_sq = tau * tau;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const auto rest = points.bottomRows(n - i - 1);
    Eigen::VectorXd score;
    if (metric == DistanceMetric::euclidean) {
      score = (rest.rowwise() - points.row(i)).rowwise().squaredNorm();
    } else {
      score = (1.0 - (rest * points.row(i).transpose()).array()).matrix();
    }
    const double limit = metric == DistanceMetric::euclidean ? tau_sq : tau;
    for (Eigen::Index j = 0; j < score.size(); ++j) {
      if (score(j) <= limit) {
        const auto u = static_cast<std::size_t>(i);
        const auto w = static_cast<std::size_t>(i + 1 + j);
        balls[u].push_back(static_cast<NodeId>(w));
        balls[w].push_back(static_cast<NodeId>(u));
      }
    }
  }
  for (Hyperedge& he : balls) std::sort(he.begin(), he.end());
  return balls;
}

}  // namespace hgb
