#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "vsa/bench/counterexample.hpp"
#include "vsa/bench/shapes.hpp"
#include "vsa/core/energy.hpp"
#include "vsa/core/error.hpp"
#include "vsa/segmentation/operations.hpp"
#include "vsa/segmentation/pipeline.hpp"

using namespace vsa;

namespace {

std::vector<ProxyId> cube_face_labels(const PointCloud& cloud, std::size_t per_face) {
  std::vector<ProxyId> labels(cloud.size());
  for (std::size_t j = 0; j < cloud.size(); ++j) labels[j] = static_cast<ProxyId>(j / per_face);
  return labels;
}

PointCloud disk(std::size_t rings) {
  std::vector<Vec3> p, n;
  p.emplace_back(0.013, 0.007, 0);
  for (std::size_t r = 1; r <= rings; ++r) {
    const std::size_t count = 6 * r;
    for (std::size_t t = 0; t < count; ++t) {
      const double a = 2 * M_PI * (static_cast<double>(t) + 0.5) / static_cast<double>(count);
      p.emplace_back(r * std::cos(a), r * std::sin(a), 0);
    }
  }
  n.assign(p.size(), Vec3::UnitZ());
  return {p, n};
}

// Chain graph over points listed in order.
NeighborGraph chain(const PointCloud& cloud) {
  std::vector<std::vector<PointIndex>> adj(cloud.size());
  for (std::size_t i = 0; i + 1 < cloud.size(); ++i) {
    adj[i].push_back(static_cast<PointIndex>(i + 1));
    adj[i + 1].push_back(static_cast<PointIndex>(i));
  }
  return NeighborGraph::from_adjacency(cloud, adj);
}

}  // namespace

TEST_CASE("seed selection") {
  const auto ident = select_seeds(7, SeedCount{7}, 3);
  CHECK(ident == std::vector<PointIndex>{0, 1, 2, 3, 4, 5, 6});
  CHECK(select_seeds(20, SeedList{{0, 5, 9}}, 0) == std::vector<PointIndex>{0, 5, 9});
  CHECK(select_seeds(4, SeedAll{}, 0) == std::vector<PointIndex>{0, 1, 2, 3});
  const auto a = select_seeds(1000, SeedCount{12}, 42);
  CHECK(a == select_seeds(1000, SeedCount{12}, 42));
  CHECK(a != select_seeds(1000, SeedCount{12}, 43));
  CHECK(std::set<PointIndex>(a.begin(), a.end()).size() == 12);
  CHECK_THROWS_AS(select_seeds(5, SeedCount{6}, 0), InvalidArgument);
  CHECK_THROWS_AS(select_seeds(5, SeedList{{1, 1}}, 0), InvalidArgument);
  CHECK_THROWS_AS(select_seeds(5, SeedList{{5}}, 0), InvalidArgument);
}

TEST_CASE("flood") {
  SUBCASE("one seed takes everything") {
    std::mt19937_64 rng(1);
    const auto cloud = oracle::random_cloud(rng, 60);
    const auto g = build_neighbor_graph(cloud, 8);
    const std::vector<PointIndex> seeds{17};
    const auto seg = flood(cloud, g, seeds);
    CHECK(seg.proxy_count() == 1);
    CHECK(seg.proxies[0].members.size() == 60);
  }
  SUBCASE("two-line instance") {
    const auto inst = bench::build_counterexample(100);
    const auto seg = flood(inst.cloud, inst.graph, inst.seeds);
    for (PointIndex j = 0; j < 100; ++j) CHECK(seg.assignment[j] == 0);
    for (PointIndex j = 100; j < 202; ++j) CHECK(seg.assignment[j] == 1);
  }
  SUBCASE("matches an exhaustive frontier simulation") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
      const auto cloud = oracle::random_cloud(rng, 20, 0.9);
      const auto g = build_neighbor_graph(cloud, 3);
      if (count_components(g) != 1) continue;
      const auto seeds = select_seeds(20, SeedCount{3}, trial);
      std::vector<Vec3> normals;
      for (PointIndex s : seeds) normals.push_back(cloud.normal(s));
      CHECK(flood(cloud, g, seeds).assignment == oracle::reference_flood(cloud, g, seeds, normals));
      std::vector<Vec3> skewed{oracle::random_unit(rng), oracle::random_unit(rng), oracle::random_unit(rng)};
      CHECK(flood(cloud, g, seeds, skewed).assignment == oracle::reference_flood(cloud, g, seeds, skewed));
    }
  }
  SUBCASE("unreachable points are reported") {
    const PointCloud cloud({Vec3::Zero(), Vec3::UnitX(), Vec3(5, 0, 0), Vec3(6, 0, 0)},
                           std::vector<Vec3>(4, Vec3::UnitZ()));
    const auto g = NeighborGraph::from_adjacency(cloud, {{1}, {0}, {3}, {2}});
    const std::vector<PointIndex> seeds{0};
    CHECK_THROWS_AS(flood(cloud, g, seeds), UnreachedPoints);
  }
}

TEST_CASE("proxy update and seed step on the two-line instance") {
  const auto inst = bench::build_counterexample(100);
  auto seg = flood(inst.cloud, inst.graph, inst.seeds);
  proxy_update(inst.cloud, seg);
  const Vec3 expected = Vec3(-1, 100, 0) / std::sqrt(10001.0);
  CHECK((seg.proxies[1].normal - expected).norm() < 1e-12);
  CHECK(seg.proxies[1].energy == doctest::Approx(bench::counterexample_e1(100)).epsilon(1e-9));
  CHECK(seed_step(inst.cloud, seg)[1] == 201);
  CHECK_FALSE(best_switch(inst.cloud, inst.graph, seg).has_value());
}

TEST_CASE("seed step matches a member scan") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cloud = oracle::random_cloud(rng, 50, 0.7);
    std::vector<ProxyId> labels(50);
    for (auto& l : labels) l = static_cast<ProxyId>(rng() % 4);
    for (ProxyId i = 0; i < 4; ++i) labels[i] = i;
    const auto seg = segmentation_from_assignment(cloud, labels);
    const auto seeds = seed_step(cloud, seg);
    for (const auto& p : seg.proxies) {
      PointIndex best = p.members.front();
      for (PointIndex j : p.members) {
        if ((cloud.normal(j) - p.normal).squaredNorm() < (cloud.normal(best) - p.normal).squaredNorm()) best = j;
      }
      CHECK(seeds[p.id] == best);
    }
  }
}

TEST_CASE("switch step equals the exhaustive best boundary move") {
  std::mt19937_64 rng(33);
  int compared = 0, moved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 6 + rng() % 7;
    const auto cloud = oracle::random_cloud(rng, n, 1.2);
    const auto g = build_neighbor_graph(cloud, 3);
    std::vector<ProxyId> labels(n);
    for (auto& l : labels) l = static_cast<ProxyId>(rng() % 2);
    labels[0] = 0;
    labels[1] = 1;
    auto seg = segmentation_from_assignment(cloud, labels);
    const auto expect = oracle::brute_best_switch(cloud, g, seg);
    const auto got = best_switch(cloud, g, seg);
    ++compared;
    REQUIRE(got.has_value() == expect.has_value());
    if (got) {
      ++moved;
      CHECK(got->point == expect->point);
      CHECK(got->to == expect->to);
      CHECK(got->delta == doctest::Approx(expect->delta).epsilon(1e-9));
    }
    // Drive to convergence; the final state admits no improving boundary move.
    for (int guard = 0; guard < 10000; ++guard) {
      proxy_update(cloud, seg);
      const double before = total_energy(cloud, seg);
      if (!switch_step(cloud, g, seg)) break;
      CHECK(total_energy(cloud, seg) < before);
    }
    CHECK_FALSE(oracle::brute_best_switch(cloud, g, seg).has_value());
  }
  CHECK(moved > 50);
  CHECK(compared == 300);
}

TEST_CASE("split") {
  SUBCASE("two parallel patches separate along their offset") {
    std::vector<Vec3> p;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        p.emplace_back(-2 + 0.25 * i, 0.25 * j, 0);
        p.emplace_back(1 + 0.25 * i, 0.25 * j, 0);
      }
    std::vector<Vec3> n;
    for (std::size_t j = 0; j < p.size(); ++j) n.push_back(j % 2 ? Vec3(1, 0, 3).normalized() : Vec3(-1, 0, 3).normalized());
    const PointCloud cloud(p, n);
    auto seg = segmentation_from_assignment(cloud, std::vector<ProxyId>(p.size(), 0));
    const auto out = split(cloud, seg, 0);
    REQUIRE(out.applied);
    CHECK(seg.proxy_count() == 2);
    for (std::size_t j = 0; j < p.size(); ++j) CHECK(seg.assignment[j] == seg.assignment[j % 2]);
    CHECK(seg.assignment[0] != seg.assignment[1]);
    CHECK(seg.proxies[0].energy == doctest::Approx(0.0));
    CHECK(seg.proxies[1].energy == doctest::Approx(0.0));
    CHECK_NOTHROW(check_partition(cloud, seg));
  }
  SUBCASE("two points get one each") {
    const PointCloud cloud({Vec3::Zero(), Vec3::UnitX()}, {Vec3::UnitZ(), Vec3::UnitY()});
    auto seg = segmentation_from_assignment(cloud, {0, 0});
    REQUIRE(split(cloud, seg, 0).applied);
    CHECK(seg.proxy_count() == 2);
    CHECK(seg.assignment[0] != seg.assignment[1]);
  }
  SUBCASE("single member is rejected") {
    const PointCloud cloud({Vec3::Zero(), Vec3::UnitX()}, {Vec3::UnitZ(), Vec3::UnitY()});
    auto seg = segmentation_from_assignment(cloud, {0, 1});
    const auto out = split(cloud, seg, 0);
    CHECK_FALSE(out.applied);
    CHECK_FALSE(out.reason.empty());
    CHECK(seg.proxy_count() == 2);
  }
  SUBCASE("coincident members cannot be split") {
    const PointCloud cloud({Vec3::Zero(), Vec3::Zero(), Vec3::Zero()}, {Vec3::UnitZ(), Vec3::UnitY(), Vec3::UnitX()});
    auto seg = segmentation_from_assignment(cloud, {0, 0, 0});
    CHECK_FALSE(split(cloud, seg, 0).applied);
    CHECK(seg.proxy_count() == 1);
  }
  SUBCASE("L-shaped proxy: direction matches a covariance eigensolve") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec3> p, n;
    std::vector<double> w;
    for (int j = 0; j < 200; ++j) {
      const bool leg = j % 3 == 0;
      p.push_back(leg ? Vec3(0.2 * u(rng), 1.2 * u(rng), 0) : Vec3(3.0 * u(rng), 0.2 * u(rng), 0));
      n.push_back(oracle::random_unit(rng));
      w.push_back(0.5 + u(rng));
    }
    const PointCloud cloud(p, n, w);
    std::vector<PointIndex> all(200);
    std::iota(all.begin(), all.end(), 0);
    const Vec3 d = split_axis(cloud, all).direction;
    CHECK(std::abs(d.dot(oracle::top_spread_direction(cloud, all))) == doctest::Approx(1.0).epsilon(1e-10));

    auto seg = segmentation_from_assignment(cloud, std::vector<ProxyId>(200, 0));
    REQUIRE(split(cloud, seg, 0).applied);
    const Vec3 mu = split_axis(cloud, all).mean;
    for (PointIndex j : all) CHECK((seg.assignment[j] == 0) == ((cloud.point(j) - mu).dot(d) >= 0));
    CHECK(seg.proxies[0].members.size() + seg.proxies[1].members.size() == 200);
  }
}

TEST_CASE("split pass touches each over-threshold proxy once") {
  std::mt19937_64 rng(6);
  const auto cloud = oracle::random_cloud(rng, 120, 1.5);
  std::vector<ProxyId> labels(120);
  for (std::size_t j = 0; j < 120; ++j) labels[j] = static_cast<ProxyId>(j % 3);
  auto seg = segmentation_from_assignment(cloud, labels);
  const double eta = 0.5 * std::min({seg.proxies[0].energy, seg.proxies[1].energy, seg.proxies[2].energy});
  const auto pass = split_pass(cloud, seg, eta);
  CHECK(pass.applied == 3);
  CHECK(seg.proxy_count() == 6);
  CHECK(pass.energies.size() == 3);
  for (std::size_t a = 1; a < pass.energies.size(); ++a) CHECK(pass.energies[a] <= pass.energies[a - 1] + 1e-9);
  CHECK_NOTHROW(check_partition(cloud, seg));
}

TEST_CASE("merged normal and merge") {
  const auto cloud = disk(6);
  const auto g = build_neighbor_graph(cloud, 8);
  std::vector<ProxyId> labels(cloud.size());
  for (std::size_t j = 0; j < cloud.size(); ++j) labels[j] = cloud.point(j).x() < 0 ? 1 : 0;
  auto seg = segmentation_from_assignment(cloud, labels);
  CHECK((*merged_normal(seg, 0, 1) - Vec3::UnitZ()).norm() < 1e-15);
  CHECK(*merged_energy(cloud, seg, 0, 1) == 0.0);
  merge(cloud, g, seg, 0, 1, 1.0);
  CHECK(seg.proxy_count() == 1);
  CHECK(seg.proxies[0].members.size() == cloud.size());
  CHECK(seg.proxies[0].energy == 0.0);

  Segmentation pair;
  pair.proxies.resize(2);
  pair.proxies[0].members = {0, 1};
  pair.proxies[1].members = {2, 3};
  pair.proxies[0].normal = Vec3::UnitX();
  pair.proxies[1].normal = Vec3::UnitY();
  const Vec3 n = *merged_normal(pair, 0, 1);
  CHECK(n.x() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(n.y() == doctest::Approx(1 / std::sqrt(2.0)));
  pair.proxies[1].normal = -Vec3::UnitX();
  CHECK_FALSE(merged_normal(pair, 0, 1).has_value());
}

TEST_CASE("merge preconditions") {
  const PointCloud cloud({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0), Vec3(3, 0, 0)},
                         {Vec3::UnitZ(), Vec3::UnitZ(), Vec3::UnitX(), Vec3::UnitX()});
  const auto g = NeighborGraph::from_adjacency(cloud, {{1}, {0, 2}, {1, 3}, {2}});
  auto seg = segmentation_from_assignment(cloud, {0, 0, 1, 2});
  CHECK_THROWS_AS(merge(cloud, g, seg, 0, 2, 10.0), InvalidArgument);   // not adjacent
  CHECK_THROWS_AS(merge(cloud, g, seg, 0, 1, 0.5), InvalidArgument);    // energy 1.53 >= eta
  CHECK_THROWS_AS(merge(cloud, g, seg, 0, 0, 10.0), InvalidArgument);
  merge(cloud, g, seg, 1, 2, 0.1);
  CHECK(seg.proxy_count() == 2);
  CHECK(seg.assignment == std::vector<ProxyId>{0, 0, 1, 1});
}

TEST_CASE("merge pass leaves no mergeable adjacent pair") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cloud = oracle::random_cloud(rng, 150, 0.3);
    const auto g = build_neighbor_graph(cloud, 8);
    std::vector<ProxyId> labels(150);
    for (std::size_t j = 0; j < 150; ++j) {
      labels[j] = static_cast<ProxyId>(std::floor(cloud.point(j).x() * 4) + 4 * std::floor(cloud.point(j).y() * 4));
    }
    auto seg = segmentation_from_assignment(cloud, labels);
    seg.compact();
    seg = segmentation_from_assignment(cloud, seg.assignment);
    const std::size_t initial = seg.proxy_count();
    const double eta = 1.0 + trial;
    const auto pass = merge_pass(cloud, g, seg, eta);
    CHECK_NOTHROW(check_partition(cloud, seg));
    for (const auto& p : seg.proxies) {
      if (p.members.size() > 0) CHECK(proxy_energy(cloud, p.members, p.normal) == doctest::Approx(p.energy));
    }
    for (auto [a, b] : proxy_adjacency(g, seg)) {
      const auto e = merged_energy(cloud, seg, a, b);
      CHECK((!e || *e >= eta));
    }
    CHECK(pass.applied + seg.proxy_count() == initial);
  }
}

TEST_CASE("proxy adjacency") {
  SUBCASE("single proxy") {
    const auto cloud = bench::plane_cloud(10);
    const auto g = build_neighbor_graph(cloud, 8);
    CHECK(proxy_adjacency(g, segmentation_from_assignment(cloud, std::vector<ProxyId>(100, 0))).empty());
  }
  SUBCASE("two half-planes") {
    const auto cloud = bench::plane_cloud(20);
    const auto g = build_neighbor_graph(cloud, 8);
    std::vector<ProxyId> labels(400);
    for (std::size_t j = 0; j < 400; ++j) labels[j] = cloud.point(j).x() < 9.5 ? 0 : 1;
    const auto adj = proxy_adjacency(g, segmentation_from_assignment(cloud, labels));
    CHECK(adj == std::vector<std::pair<ProxyId, ProxyId>>{{0, 1}});
  }
  SUBCASE("cube faces meet along 12 edges") {
    const auto cloud = bench::cube_cloud(20);
    const auto g = build_neighbor_graph(cloud, 8);
    const auto adj = proxy_adjacency(g, segmentation_from_assignment(cloud, cube_face_labels(cloud, 400)));
    std::vector<std::pair<ProxyId, ProxyId>> expect;
    for (ProxyId a = 0; a < 6; ++a)
      for (ProxyId b = a + 1; b < 6; ++b)
        if (a / 2 != b / 2) expect.emplace_back(a, b);  // faces on different axes share an edge
    CHECK(adj == expect);
    CHECK(adj.size() == 12);
  }
}

TEST_CASE("relabel components") {
  SUBCASE("connected proxies are kept") {
    const auto cloud = bench::plane_cloud(10);
    const auto g = build_neighbor_graph(cloud, 8);
    std::vector<ProxyId> labels(100);
    for (std::size_t j = 0; j < 100; ++j) labels[j] = cloud.point(j).y() < 4.5 ? 0 : 1;
    auto seg = segmentation_from_assignment(cloud, labels);
    CHECK(relabel_components(cloud, g, seg) == 0);
    CHECK(seg.assignment == labels);
  }
  SUBCASE("a torn proxy becomes two") {
    std::vector<Vec3> p;
    for (int i = 0; i < 9; ++i) p.emplace_back(i, 0, 0);
    const PointCloud cloud(p, std::vector<Vec3>(9, Vec3::UnitZ()));
    const auto g = chain(cloud);
    auto seg = segmentation_from_assignment(cloud, {0, 0, 0, 1, 1, 1, 0, 0, 0});
    CHECK(relabel_components(cloud, g, seg) == 1);
    CHECK(seg.proxy_count() == 3);
    CHECK(seg.assignment[0] == seg.assignment[2]);
    CHECK(seg.assignment[6] == seg.assignment[8]);
    CHECK(seg.assignment[0] != seg.assignment[6]);
    CHECK_NOTHROW(check_partition(cloud, seg));
  }
  SUBCASE("random labels match a union-find count") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
      const auto cloud = oracle::random_cloud(rng, 80);
      const auto g = build_neighbor_graph(cloud, 4);
      std::vector<ProxyId> labels(80);
      for (auto& l : labels) l = static_cast<ProxyId>(rng() % 5);
      for (ProxyId i = 0; i < 5; ++i) labels[i] = i;
      auto seg = segmentation_from_assignment(cloud, labels);
      const std::size_t pieces = oracle::proxy_component_count(g, labels);
      CHECK(5 + relabel_components(cloud, g, seg) == pieces);
      CHECK(seg.proxy_count() == pieces);
      CHECK(oracle::proxy_component_count(g, seg.assignment) == pieces);
      CHECK_NOTHROW(check_partition(cloud, seg));
    }
  }
}

TEST_CASE("pipeline") {
  SUBCASE("flat cloud, one seed") {
    const auto cloud = bench::plane_cloud(10);
    PipelineConfig c;
    c.mode = Mode::Classic;
    c.seeds = SeedCount{1};
    const auto r = run_pipeline(cloud, c);
    CHECK(r.converged);
    CHECK(r.segmentation.proxy_count() == 1);
    CHECK(total_energy(cloud, r.segmentation) == 0.0);
  }
  SUBCASE("flat cloud, every point a seed, merges to one proxy") {
    const auto cloud = bench::plane_cloud(10);
    PipelineConfig c;
    c.seeds = SeedAll{};
    c.eta = 0.1;
    const auto r = run_pipeline(cloud, c);
    CHECK(r.converged);
    CHECK(r.segmentation.proxy_count() == 1);
    CHECK(mse(cloud, r.segmentation) == doctest::Approx(0.0));
  }
  SUBCASE("switch mode on a fuzzed cloud: partition, monotone trace, determinism") {
    std::mt19937_64 rng(77);
    const auto cloud = oracle::random_cloud(rng, 300, 0.5);
    PipelineConfig c;
    c.seeds = SeedCount{8};
    c.eta = 3.0;
    c.rng_seed = 5;
    const auto r = run_pipeline(cloud, c);
    CHECK(r.converged);
    CHECK_NOTHROW(check_partition(cloud, r.segmentation));
    for (std::size_t t = 1; t < r.reports.size(); ++t) {
      const auto op = r.reports[t].operation;
      if (op == Operation::Update || op == Operation::Switch || op == Operation::Split) {
        CHECK(r.reports[t].energy <= r.reports[t - 1].energy + 1e-9);
      }
    }
    const auto again = run_pipeline(cloud, c);
    CHECK(again.segmentation.assignment == r.segmentation.assignment);
    CHECK(again.iterations == r.iterations);
  }
  SUBCASE("area weights are recorded") {
    const auto cloud = bench::plane_cloud(6);
    PipelineConfig c;
    c.weights = WeightScheme::Area;
    c.seeds = SeedCount{2};
    const auto r = run_pipeline(cloud, c);
    REQUIRE(r.weights.size() == 36);
    CHECK(r.weights[0] > 0.0);
    CHECK(r.weights[0] != 1.0);
  }
  SUBCASE("classic iteration bound") {
    const auto ring = bench::build_closed_ring(8, 2);
    PipelineConfig c;
    c.mode = Mode::Classic;
    c.seeds = SeedList{ring.seeds};
    c.max_iterations = 100;
    const auto r = run_pipeline(ring.cloud, ring.graph, c);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 100);
    CHECK_FALSE(r.note.empty());
  }
  SUBCASE("config validation") {
    PipelineConfig c;
    c.eta = -1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    CHECK(parse_mode("classic") == Mode::Classic);
    CHECK_THROWS_AS(parse_mode("loop"), InvalidArgument);
    CHECK(parse_weight_scheme("area") == WeightScheme::Area);
  }
}

TEST_CASE("sphere with every point as a seed") {
  const auto cloud = bench::fibonacci_sphere(5122);
  PipelineConfig c;
  c.seeds = SeedAll{};
  c.eta = 25.0;
  const auto r = run_pipeline(cloud, c);
  CHECK(r.converged);
  MESSAGE("sphere, all-points seeding, eta 25: m = " << r.segmentation.proxy_count());
  CHECK(r.segmentation.proxy_count() >= 10);
  CHECK(r.segmentation.proxy_count() <= 60);
  CHECK_NOTHROW(check_partition(cloud, r.segmentation));
  for (std::size_t t = 1; t < r.reports.size(); ++t) {
    if (r.reports[t].operation != Operation::Merge) {
      CHECK(r.reports[t].energy <= r.reports[t - 1].energy + 1e-9);
    }
  }
}
