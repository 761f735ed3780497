#include "vsa/io/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "vsa/bench/counterexample.hpp"
#include "vsa/bench/eta_heuristic.hpp"
#include "vsa/bench/experiment.hpp"
#include "vsa/bench/shapes.hpp"
#include "vsa/core/energy.hpp"
#include "vsa/core/error.hpp"
#include "vsa/io/manifest.hpp"
#include "vsa/io/point_io.hpp"
#include "vsa/io/segmentation_io.hpp"
#include "vsa/segmentation/pipeline.hpp"
#include "vsa/simplify/simplify.hpp"

namespace vsa::io {

namespace fs = std::filesystem;

namespace {

// Raised when a run finishes but did not converge or is infeasible; outputs are still written.
struct NotConverged : Error {
  using Error::Error;
};

std::ofstream create(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

fs::path with_suffix(const fs::path& prefix, const std::string& suffix) { return fs::path(prefix.string() + suffix); }

SeedSpec parse_seeds(const std::string& text) {
  if (text == "all") return SeedAll{};
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return SeedCount{static_cast<std::size_t>(std::stoull(text))};
  }
  std::ifstream in(text);
  if (!in) throw DataError("--seeds: '" + text + "' is neither a count, 'all', nor a readable index file");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::replace(content.begin(), content.end(), ',', ' ');
  std::istringstream tokens(content);
  SeedList list;
  std::string token;
  while (tokens >> token) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(token, &used);
      if (used != token.size() || v < 0) throw std::invalid_argument(token);
      list.indices.push_back(static_cast<PointIndex>(v));
    } catch (const std::exception&) {
      throw DataError(text + ": bad seed index '" + token + "'");
    }
  }
  return list;
}

struct SegmentArgs {
  std::string input, prefix, seeds = "6", mode = "switch", weights = "unit", color_ply;
  double eta = 25.0;
  std::size_t k = 8, max_iters = 0;
  bool split = true, merge = true;
  std::uint64_t rng_seed = 0;
};

struct SimplifyArgs {
  std::string input, labels, output, strategy = "optimize", anchor = "centroid", weights = "unit";
  double wtilde = 1.0, ctol = 1e-6;
  std::size_t k = 8, max_outer = 50;
  bool triangulate = false;
};

int run_segment(const SegmentArgs& a, std::ostream& out) {
  PipelineConfig config;
  config.mode = parse_mode(a.mode);
  config.eta = a.eta;
  config.k = a.k;
  config.seeds = parse_seeds(a.seeds);
  config.enable_split = a.split;
  config.enable_merge = a.merge;
  config.weights = parse_weight_scheme(a.weights);
  config.rng_seed = a.rng_seed;
  if (a.max_iters > 0) {
    (config.mode == Mode::Classic ? config.max_iterations : config.max_switch_iterations) = a.max_iters;
  }
  config.validate();

  const PointCloud cloud = load_point_cloud(a.input);
  const NeighborGraph graph = build_neighbor_graph(cloud, config.k);
  const PointCloud used = prepare_cloud(cloud, graph, config.weights);
  const PipelineResult result = run_pipeline(used, graph, config);

  RunManifest manifest;
  manifest.command = "segment";
  manifest.input = a.input;
  manifest.pipeline = config;
  manifest.has_pipeline = true;
  manifest.outputs["labels"] = with_suffix(a.prefix, ".labels.csv").string();
  manifest.outputs["proxies"] = with_suffix(a.prefix, ".proxies.json").string();
  if (!a.color_ply.empty()) manifest.outputs["colored_ply"] = a.color_ply;

  {
    auto labels = create(manifest.outputs["labels"]);
    write_labels_csv(labels, result.segmentation);
    auto proxies = create(manifest.outputs["proxies"]);
    write_proxies_json(proxies, result.segmentation);
  }
  if (!a.color_ply.empty()) {
    auto ply = create(a.color_ply);
    write_colored_ply(ply, cloud, result.segmentation);
  }
  {
    auto m = create(with_suffix(a.prefix, ".manifest.json"));
    write_manifest(m, manifest);
  }
  fmt::print(out, "m = {}\nenergy = {:.12g}\nmse = {:.12g}\niterations = {}\nconverged = {}\n",
             result.segmentation.proxy_count(), total_energy(used, result.segmentation), mse(used, result.segmentation),
             result.iterations, result.converged ? "yes" : "no");
  if (!result.converged) throw NotConverged(result.note);
  return kSuccess;
}

int run_simplify(const SimplifyArgs& a, std::ostream& out) {
  SimplifyOptions options;
  options.strategy = parse_strategy(a.strategy);
  options.anchor = a.anchor == "center" ? Anchor::CenterPoint : Anchor::Centroid;
  options.solver.default_wtilde = a.wtilde;
  options.solver.constraint_tol = a.ctol;
  options.solver.max_outer = a.max_outer;

  const PointCloud cloud = load_point_cloud(a.input);
  const NeighborGraph graph = build_neighbor_graph(cloud, a.k);
  const PointCloud used = prepare_cloud(cloud, graph, parse_weight_scheme(a.weights));
  std::ifstream labels_in(a.labels);
  if (!labels_in) throw DataError("cannot open " + a.labels);
  std::vector<ProxyId> labels = read_labels_csv(labels_in);
  if (labels.size() != cloud.size()) {
    throw DataError(a.labels + ": " + std::to_string(labels.size()) + " labels for " + std::to_string(cloud.size()) +
                    " points");
  }
  const Segmentation seg = segmentation_from_assignment(used, std::move(labels));
  const SimplifiedMesh mesh = simplify(used, graph, seg, options);

  const fs::path mesh_path = a.output;
  fs::path report_path = mesh_path, manifest_path = mesh_path;
  report_path.replace_extension(".report.json");
  manifest_path.replace_extension(".manifest.json");
  {
    auto obj = create(mesh_path);
    write_obj_mesh(obj, mesh, a.triangulate);
    auto report = create(report_path);
    write_mesh_report(report, mesh);
  }
  RunManifest manifest;
  manifest.command = "simplify";
  manifest.input = a.input;
  manifest.outputs = {{"labels_in", a.labels}, {"mesh", mesh_path.string()}, {"report", report_path.string()}};
  manifest.simplify = options;
  manifest.has_simplify = true;
  manifest.simplify_k = a.k;
  manifest.simplify_weights = parse_weight_scheme(a.weights);
  manifest.triangulate = a.triangulate;
  {
    auto m = create(manifest_path);
    write_manifest(m, manifest);
  }

  std::size_t flagged = 0;
  for (const Face& f : mesh.faces) flagged += f.warning;
  fmt::print(out, "vertices = {}\nfaces = {}\nflagged faces = {}\nfeasible = {}\nmax plane residual = {:.3e}\n",
             mesh.vertices.size(), mesh.faces.size(), flagged, mesh.feasible ? "yes" : "no", mesh.max_plane_residual);
  if (mesh.vertices.empty() || mesh.faces.empty()) throw NotConverged("simplified mesh is empty");
  if (!mesh.feasible) throw NotConverged("vertex optimization did not meet its tolerances");
  return kSuccess;
}

int run_bench(const std::string& configs_path, const std::string& output, std::ostream& out) {
  std::ifstream in(configs_path);
  if (!in) throw DataError("cannot open " + configs_path);
  nlohmann::json request;
  try {
    request = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(configs_path + ": " + e.what());
  }
  std::optional<PointCloud> cloud;
  if (request.contains("input")) {
    cloud = load_point_cloud(request.at("input").get<std::string>());
  } else {
    const std::string shape = request.value("shape", "sphere");
    const std::size_t count = request.value("count", std::size_t{0});
    if (shape == "sphere") cloud = bench::fibonacci_sphere(count ? count : 5122);
    else if (shape == "cube") cloud = bench::cube_cloud(count ? count : 20);
    else if (shape == "octahedron") cloud = bench::octahedron_cloud(count ? count : 20);
    else if (shape == "dodecahedron") cloud = bench::noisy_dodecahedron(count ? count : 962);
    else if (shape == "plane") cloud = bench::plane_cloud(count ? count : 20);
    else throw DataError(configs_path + ": unknown shape '" + shape + "'");
  }
  std::vector<bench::NamedConfig> configs;
  for (const auto& entry : request.value("configs", nlohmann::json::array())) {
    const std::string id = entry.value("id", "run" + std::to_string(configs.size()));
    configs.push_back({id, pipeline_config_from_json(entry)});
  }
  if (configs.empty()) throw DataError(configs_path + ": no configs");
  const auto rows = bench::experiment_report(*cloud, configs);
  if (output.empty()) {
    bench::write_report_csv(out, rows);
  } else {
    auto csv = create(output);
    bench::write_report_csv(csv, rows);
  }
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational shape approximation on oriented point clouds", "vsa"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.option_defaults()->always_capture_default();

  SegmentArgs seg;
  auto* segment = app.add_subcommand("segment", "Segment a point cloud into planar proxies");
  segment->add_option("input", seg.input, "Point cloud (.ply or .obj with normals)")->required();
  segment->add_option("-o,--output", seg.prefix, "Output prefix for .labels.csv, .proxies.json, .manifest.json")->required();
  segment->add_option("--eta", seg.eta, "Per-proxy energy threshold for splits and merges")->check(CLI::NonNegativeNumber);
  segment->add_option("--k", seg.k, "Neighbor count")->check(CLI::PositiveNumber);
  segment->add_option("--mode", seg.mode, "classic or switch")->check(CLI::IsMember({"classic", "switch"}));
  segment->add_option("--seeds", seg.seeds, "Seed count, 'all', or a file of point indices");
  segment->add_flag("--split,!--no-split", seg.split, "Split proxies above eta");
  segment->add_flag("--merge,!--no-merge", seg.merge, "Merge adjacent proxies below eta");
  segment->add_option("--weights", seg.weights, "unit or area")->check(CLI::IsMember({"unit", "area"}));
  segment->add_option("--rng-seed", seg.rng_seed, "Seed for the initial seed draw");
  segment->add_option("--max-iters", seg.max_iters, "Iteration bound of the selected mode")->check(CLI::PositiveNumber);
  segment->add_option("--color-ply", seg.color_ply, "Also write a proxy-colored ASCII PLY");

  SimplifyArgs simp;
  auto* simplify_cmd = app.add_subcommand("simplify", "Build a polygonal mesh from a segmentation");
  simplify_cmd->add_option("input", simp.input, "Point cloud the labels refer to")->required();
  simplify_cmd->add_option("--labels", simp.labels, "Labels CSV written by segment")->required();
  simplify_cmd->add_option("-o,--output", simp.output, "Output OBJ; .report.json and .manifest.json are written beside it")->required();
  simplify_cmd->add_option("--strategy", simp.strategy, "intersect or optimize")->check(CLI::IsMember({"intersect", "optimize"}));
  simplify_cmd->add_option("--wtilde", simp.wtilde, "Normal deviation weight")->check(CLI::NonNegativeNumber);
  simplify_cmd->add_option("--ctol", simp.ctol, "Constraint tolerance")->check(CLI::PositiveNumber);
  simplify_cmd->add_option("--max-outer", simp.max_outer, "Outer solver iterations")->check(CLI::PositiveNumber);
  simplify_cmd->add_option("--k", simp.k, "Neighbor count used for adjacency")->check(CLI::PositiveNumber);
  simplify_cmd->add_option("--weights", simp.weights, "unit or area")->check(CLI::IsMember({"unit", "area"}));
  simplify_cmd->add_option("--anchor", simp.anchor, "Plane anchor: centroid or center")->check(CLI::IsMember({"centroid", "center"}));
  simplify_cmd->add_flag("--triangulate", simp.triangulate, "Write fan triangles instead of polygons");

  std::size_t n = 100;
  auto* counter = app.add_subcommand("counterexample", "Classic flooding energy growth on the two-line instance");
  counter->add_option("--n", n, "Points per line")->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}));

  double a = 1.0, b = 1.0;
  std::size_t points = 1;
  auto* eta_cmd = app.add_subcommand("eta-heuristic", "Energy of a sampled paraboloid patch as an initial eta");
  eta_cmd->add_option("--a", a, "Paraboloid parameter a")->required()->check(CLI::PositiveNumber);
  eta_cmd->add_option("--b", b, "Paraboloid parameter b")->required()->check(CLI::PositiveNumber);
  eta_cmd->add_option("--points", points, "Points per proxy")->required()->check(CLI::PositiveNumber);

  std::string configs, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run pipeline configurations and report m, energy, MSE and time");
  bench_cmd->add_option("--configs", configs, "JSON file with a cloud and a list of configs")->required();
  bench_cmd->add_option("-o,--output", bench_out, "CSV path (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kSuccess;
    err << app.help();
    return kUsage;
  }

  try {
    if (*segment) return run_segment(seg, out);
    if (*simplify_cmd) return run_simplify(simp, out);
    if (*counter) {
      const bench::CounterexampleRun run = bench::run_counterexample(n);
      fmt::print(out, "n = {}\nE1 = {:.12g}\nE2 = {:.12g}\nE1 closed form = {:.12g}\n", n, run.e1, run.e2,
                 bench::counterexample_e1(n));
      return kSuccess;
    }
    if (*eta_cmd) {
      fmt::print(out, "nu = {}\neta = {:.12g}\n", bench::grid_half_width(points), bench::eta_heuristic({a, b, points}));
      return kSuccess;
    }
    if (*bench_cmd) return run_bench(configs, bench_out, out);
  } catch (const NotConverged& e) {
    err << "warning: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace vsa::io
