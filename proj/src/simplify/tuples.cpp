#include "vsa/simplify/tuples.hpp"

#include <algorithm>
#include <set>

#include "vsa/core/error.hpp"

namespace vsa {

namespace {

using Set = std::vector<ProxyId>;  // sorted

Set intersect(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void bron_kerbosch(const std::vector<Set>& adj, Set& r, Set p, Set x, std::vector<Set>& out) {
  if (p.empty() && x.empty()) {
    if (r.size() >= 3) out.push_back(r);
    return;
  }
  // Pivot: vertex of P u X with most neighbors in P.
  ProxyId pivot = kUnassigned;
  std::size_t best = 0;
  for (const Set* s : {&p, &x}) {
    for (ProxyId u : *s) {
      const std::size_t c = intersect(adj[u], p).size();
      if (pivot == kUnassigned || c > best) pivot = u, best = c;
    }
  }
  Set candidates;
  std::set_difference(p.begin(), p.end(), adj[pivot].begin(), adj[pivot].end(), std::back_inserter(candidates));
  for (ProxyId v : candidates) {
    r.insert(std::upper_bound(r.begin(), r.end(), v), v);
    bron_kerbosch(adj, r, intersect(p, adj[v]), intersect(x, adj[v]), out);
    r.erase(std::find(r.begin(), r.end(), v));
    p.erase(std::find(p.begin(), p.end(), v));
    x.insert(std::upper_bound(x.begin(), x.end(), v), v);
  }
}

std::vector<QTuple> maximal_only(std::vector<Set> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<QTuple> out;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    bool contained = false;
    for (std::size_t b = 0; b < sets.size() && !contained; ++b) {
      contained = a != b && sets[b].size() > sets[a].size() &&
                  std::includes(sets[b].begin(), sets[b].end(), sets[a].begin(), sets[a].end());
    }
    if (!contained) out.push_back({sets[a]});
  }
  return out;
}

}  // namespace

std::vector<QTuple> enumerate_q_tuples(const std::vector<std::pair<ProxyId, ProxyId>>& adjacency,
                                       std::size_t proxy_count) {
  std::vector<Set> adj(proxy_count);
  for (const auto& [a, b] : adjacency) {
    if (a == b || a < 0 || b < 0 || static_cast<std::size_t>(std::max(a, b)) >= proxy_count) {
      throw InvalidArgument("adjacency pair out of range");
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (Set& s : adj) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  Set all(proxy_count);
  for (std::size_t i = 0; i < proxy_count; ++i) all[i] = static_cast<ProxyId>(i);
  std::vector<Set> cliques;
  Set r;
  bron_kerbosch(adj, r, all, {}, cliques);
  return maximal_only(std::move(cliques));
}

std::vector<QTuple> witnessed_tuples(const NeighborGraph& graph, const Segmentation& seg,
                                     const std::vector<QTuple>& cliques) {
  const std::size_t n = graph.size();
  std::vector<Set> touched(n);
  for (std::size_t i = 0; i < n; ++i) {
    touched[i].push_back(seg.assignment[i]);
    for (PointIndex j : graph.ball[i]) {
      touched[i].push_back(seg.assignment[j]);
      touched[j].push_back(seg.assignment[i]);
    }
  }
  std::set<Set> witnesses;
  for (Set& s : touched) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() >= 3) witnesses.insert(s);
  }

  std::vector<Set> kept;
  for (const QTuple& clique : cliques) {
    for (const Set& w : witnesses) {
      Set common = intersect(clique.proxy_ids, w);
      if (common.size() >= 3) kept.push_back(std::move(common));
    }
  }
  return maximal_only(std::move(kept));
}

bool tuples_well_formed(const std::vector<QTuple>& tuples,
                        const std::vector<std::pair<ProxyId, ProxyId>>& adjacency) {
  auto adjacent = [&](ProxyId a, ProxyId b) {
    return std::binary_search(adjacency.begin(), adjacency.end(), std::make_pair(std::min(a, b), std::max(a, b)));
  };
  for (std::size_t a = 0; a < tuples.size(); ++a) {
    const Set& s = tuples[a].proxy_ids;
    if (s.size() < 3 || !std::is_sorted(s.begin(), s.end())) return false;
    for (std::size_t u = 0; u < s.size(); ++u) {
      for (std::size_t v = u + 1; v < s.size(); ++v) {
        if (!adjacent(s[u], s[v])) return false;
      }
    }
    for (std::size_t b = 0; b < tuples.size(); ++b) {
      const Set& t = tuples[b].proxy_ids;
      if (a != b && std::includes(t.begin(), t.end(), s.begin(), s.end())) return false;
    }
  }
  return true;
}

}  // namespace vsa
