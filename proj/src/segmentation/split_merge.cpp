#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "vsa/core/energy.hpp"
#include "vsa/core/error.hpp"
#include "vsa/segmentation/operations.hpp"

namespace vsa {

namespace {

bool lex_less(const Vec3& a, const Vec3& b) {
  return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
}

// Lexicographically smallest unit vector in the span of `basis` columns.
Vec3 lex_smallest_unit(const Eigen::Matrix3Xd& basis) {
  if (basis.cols() == 1) {
    const Vec3 v = basis.col(0).normalized();
    return lex_less(-v, v) ? Vec3(-v) : v;
  }
  // Minimising the first coordinate over the unit sphere of the subspace gives
  // -P e / |P e| for the first axis e that is not orthogonal to it.
  for (int axis = 0; axis < 3; ++axis) {
    const Vec3 projected = basis * (basis.transpose() * Vec3::Unit(axis));
    if (projected.norm() > 1e-12) return -projected.normalized();
  }
  return basis.col(0).normalized();
}

double sum_weights(const PointCloud& cloud, std::span<const PointIndex> members) {
  double w = 0.0;
  for (PointIndex j : members) w += cloud.weight(j);
  return w;
}

void finish_proxy(const PointCloud& cloud, Proxy& p) {
  p.normal = fit_normal(cloud, p.members, p.id);
  p.center = least_deviating_member(cloud, p.members, p.normal);
  p.energy = proxy_energy(cloud, p.members, p.normal);
}

// Union of `hi` into `lo` with a given normal; `hi` is left empty.
void absorb(const PointCloud& cloud, Segmentation& seg, ProxyId lo, ProxyId hi, const Vec3& normal) {
  Proxy& a = seg.proxies[lo];
  Proxy& b = seg.proxies[hi];
  std::vector<PointIndex> merged;
  merged.reserve(a.members.size() + b.members.size());
  std::merge(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(), std::back_inserter(merged));
  for (PointIndex j : b.members) seg.assignment[j] = lo;
  a.members = std::move(merged);
  b.members.clear();
  a.normal = normal;
  a.center = least_deviating_member(cloud, a.members, a.normal);
  a.energy = proxy_energy(cloud, a.members, a.normal);
  b.energy = 0.0;
}

}  // namespace

SplitAxis split_axis(const PointCloud& cloud, std::span<const PointIndex> members) {
  if (members.empty()) throw InvalidArgument("split axis of an empty member set");
  const double total = sum_weights(cloud, members);
  auto weight = [&](PointIndex j) { return total > 0.0 ? cloud.weight(j) : 1.0; };
  const double norm = total > 0.0 ? total : static_cast<double>(members.size());

  Vec3 mean = Vec3::Zero();
  for (PointIndex j : members) mean += weight(j) * cloud.point(j);
  mean /= norm;

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (PointIndex j : members) {
    const Vec3 d = cloud.point(j) - mean;
    cov += weight(j) * d * d.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Vec3 values = eig.eigenvalues();  // ascending
  const double scale = std::max(std::abs(values[2]), 1e-300);
  int first = 2;
  while (first > 0 && values[2] - values[first - 1] <= 1e-12 * scale) --first;
  const Eigen::Matrix3Xd basis = eig.eigenvectors().rightCols(3 - first);
  return {mean, lex_smallest_unit(basis)};
}

SplitOutcome split(const PointCloud& cloud, Segmentation& seg, ProxyId id) {
  SplitOutcome out;
  Proxy& parent = seg.proxies.at(id);
  if (parent.members.size() < 2) {
    out.reason = "proxy " + std::to_string(id) + " has fewer than two members";
    return out;
  }
  const SplitAxis axis = split_axis(cloud, parent.members);
  std::vector<PointIndex> positive, negative;
  for (PointIndex j : parent.members) {
    ((cloud.point(j) - axis.mean).dot(axis.direction) >= 0.0 ? positive : negative).push_back(j);
  }
  if (positive.empty() || negative.empty()) {
    out.reason = "proxy " + std::to_string(id) + " has no spread along its split direction";
    return out;
  }

  Proxy first{id, std::move(positive)};
  Proxy second{static_cast<ProxyId>(seg.proxies.size()), std::move(negative)};
  try {
    finish_proxy(cloud, first);
    finish_proxy(cloud, second);
  } catch (const DegenerateNormalSum&) {
    out.reason = "a half of proxy " + std::to_string(id) + " has a vanishing normal sum";
    return out;
  }
  for (PointIndex j : second.members) seg.assignment[j] = second.id;
  seg.proxies[id] = std::move(first);
  seg.proxies.push_back(std::move(second));
  out.applied = true;
  out.kept = id;
  out.added = seg.proxies.back().id;
  return out;
}

std::optional<Vec3> merged_normal(const Segmentation& seg, ProxyId i, ProxyId j) {
  const Proxy& a = seg.proxies.at(i);
  const Proxy& b = seg.proxies.at(j);
  const Vec3 sum = static_cast<double>(a.members.size()) * a.normal + static_cast<double>(b.members.size()) * b.normal;
  const double len = sum.norm();
  if (len < 1e-12) return std::nullopt;
  return Vec3(sum / len);
}

std::optional<double> merged_energy(const PointCloud& cloud, const Segmentation& seg, ProxyId i, ProxyId j) {
  const auto normal = merged_normal(seg, i, j);
  if (!normal) return std::nullopt;
  return proxy_energy(cloud, seg.proxies[i].members, *normal) + proxy_energy(cloud, seg.proxies[j].members, *normal);
}

void merge(const PointCloud& cloud, const NeighborGraph& graph, Segmentation& seg, ProxyId i, ProxyId j,
           double eta) {
  const auto m = static_cast<ProxyId>(seg.proxies.size());
  if (i == j || i < 0 || j < 0 || i >= m || j >= m) throw InvalidArgument("merge needs two distinct proxy ids");
  const ProxyId lo = std::min(i, j), hi = std::max(i, j);
  const auto adjacency = proxy_adjacency(graph, seg);
  if (!std::binary_search(adjacency.begin(), adjacency.end(), std::make_pair(lo, hi))) {
    throw InvalidArgument("proxies " + std::to_string(lo) + " and " + std::to_string(hi) + " are not adjacent");
  }
  const auto normal = merged_normal(seg, lo, hi);
  if (!normal) throw InvalidArgument("merged normal vanishes (antipodal proxies)");
  const double energy = proxy_energy(cloud, seg.proxies[lo].members, *normal) +
                        proxy_energy(cloud, seg.proxies[hi].members, *normal);
  if (!(energy < eta)) {
    throw InvalidArgument("merged energy " + std::to_string(energy) + " is not below eta " + std::to_string(eta));
  }
  absorb(cloud, seg, lo, hi, *normal);
  seg.compact();
}

PassResult split_pass(const PointCloud& cloud, Segmentation& seg, double eta) {
  PassResult result;
  std::vector<ProxyId> order;
  for (const Proxy& p : seg.proxies) {
    if (p.energy > eta && p.members.size() >= 2) order.push_back(p.id);
  }
  std::sort(order.begin(), order.end(), [&](ProxyId a, ProxyId b) {
    const double ea = seg.proxies[a].energy, eb = seg.proxies[b].energy;
    return ea > eb || (ea == eb && a < b);
  });
  double total = 0.0;
  for (const Proxy& p : seg.proxies) total += p.energy;
  for (ProxyId id : order) {
    const double before = seg.proxies[id].energy;
    const SplitOutcome outcome = split(cloud, seg, id);
    if (!outcome.applied) {
      result.rejected.push_back(outcome.reason);
      continue;
    }
    total += seg.proxies[outcome.kept].energy + seg.proxies[outcome.added].energy - before;
    ++result.applied;
    result.energies.push_back(total);
  }
  return result;
}

PassResult merge_pass(const PointCloud& cloud, const NeighborGraph& graph, Segmentation& seg, double eta) {
  PassResult result;
  const std::size_t m = seg.proxies.size();

  // Sufficient statistics: with unit normals, E(N) = Q - 2 N.S + W for |N| = 1.
  struct Stats {
    double count = 0, w = 0, q = 0;
    Vec3 s = Vec3::Zero();
  };
  std::vector<Stats> stats(m);
  for (const Proxy& p : seg.proxies) {
    Stats& st = stats[p.id];
    st.count = static_cast<double>(p.members.size());
    for (PointIndex j : p.members) {
      const double w = cloud.weight(j);
      st.w += w;
      st.q += w * cloud.normal(j).squaredNorm();
      st.s += w * cloud.normal(j);
    }
  }

  std::vector<std::set<ProxyId>> adjacent(m);
  for (const auto& [a, b] : proxy_adjacency(graph, seg)) {
    adjacent[a].insert(b);
    adjacent[b].insert(a);
  }
  std::vector<std::uint32_t> version(m, 0);
  std::vector<char> alive(m, 1);

  struct Candidate {
    double energy;
    ProxyId a, b;
    std::uint32_t va, vb;
    bool operator>(const Candidate& o) const { return std::tie(energy, a, b) > std::tie(o.energy, o.a, o.b); }
  };
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  auto estimate = [&](ProxyId a, ProxyId b) -> std::optional<std::pair<double, Vec3>> {
    const Proxy& pa = seg.proxies[a];
    const Proxy& pb = seg.proxies[b];
    const Vec3 sum = stats[a].count * pa.normal + stats[b].count * pb.normal;
    if (sum.norm() < 1e-12) return std::nullopt;
    const Vec3 normal = sum.normalized();
    const double e = stats[a].q + stats[b].q - 2.0 * normal.dot(stats[a].s + stats[b].s) + stats[a].w + stats[b].w;
    return std::make_pair(std::max(e, 0.0), normal);
  };
  auto push = [&](ProxyId a, ProxyId b) {
    if (a > b) std::swap(a, b);
    if (const auto est = estimate(a, b); est && est->first < eta) {
      queue.push({est->first, a, b, version[a], version[b]});
    }
  };
  for (std::size_t a = 0; a < m; ++a) {
    for (ProxyId b : adjacent[a]) {
      if (static_cast<ProxyId>(a) < b) push(static_cast<ProxyId>(a), b);
    }
  }

  double total = 0.0;
  for (const Proxy& p : seg.proxies) total += p.energy;
  while (!queue.empty()) {
    const Candidate c = queue.top();
    queue.pop();
    if (!alive[c.a] || !alive[c.b] || c.va != version[c.a] || c.vb != version[c.b]) continue;
    const auto normal = merged_normal(seg, c.a, c.b);
    if (!normal) continue;
    // The statistic-based estimate screens candidates; the threshold is
    // enforced on the directly summed energy.
    const double exact = proxy_energy(cloud, seg.proxies[c.a].members, *normal) +
                         proxy_energy(cloud, seg.proxies[c.b].members, *normal);
    if (!(exact < eta)) {
      result.rejected.push_back("pair " + std::to_string(c.a) + "," + std::to_string(c.b) +
                                " exceeds eta on exact evaluation");
      continue;
    }
    const double before = seg.proxies[c.a].energy + seg.proxies[c.b].energy;
    absorb(cloud, seg, c.a, c.b, *normal);
    total += seg.proxies[c.a].energy - before;
    ++result.applied;
    result.energies.push_back(total);

    Stats& sa = stats[c.a];
    const Stats& sb = stats[c.b];
    sa.count += sb.count;
    sa.w += sb.w;
    sa.q += sb.q;
    sa.s += sb.s;
    alive[c.b] = 0;
    ++version[c.a];
    ++version[c.b];
    for (ProxyId other : adjacent[c.b]) {
      adjacent[other].erase(c.b);
      if (other != c.a) {
        adjacent[other].insert(c.a);
        adjacent[c.a].insert(other);
      }
    }
    adjacent[c.b].clear();
    adjacent[c.a].erase(c.a);
    adjacent[c.a].erase(c.b);
    for (ProxyId other : adjacent[c.a]) push(c.a, other);
  }
  if (result.applied > 0) seg.compact();
  return result;
}

}  // namespace vsa
