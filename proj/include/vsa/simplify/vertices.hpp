#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vsa/core/point_cloud.hpp"
#include "vsa/core/segmentation.hpp"
#include "vsa/simplify/mesh.hpp"

namespace vsa {

struct Plane {
  Vec3 anchor;  // a point on the plane
  Vec3 normal;  // unit
};

/// Smallest singular value below this fraction of the largest rejects an intersection.
inline constexpr double kConditionThreshold = 1e-6;

struct Intersection {
  std::optional<Vec3> point;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::string diagnostic;  // set when rejected
};

Intersection intersect_three_planes(const std::array<Plane, 3>& planes);

/// Per-proxy geometry used for vertex placement.
struct ProxyFrame {
  Vec3 anchor;    // C_i
  Vec3 normal;    // N_i
  Vec3 centroid;  // member centroid
  double radius;  // max member distance from the centroid
};

enum class Anchor { Centroid, CenterPoint };

std::vector<ProxyFrame> proxy_frames(const PointCloud& cloud, const Segmentation& seg, Anchor anchor);

/// One vertex per tuple by intersecting three of its planes. For q > 3 the
/// triple with the largest smallest singular value is used. Tuples whose
/// triples are all ill-conditioned, or whose vertex lies farther than
/// 3 * radius from the centroid of any of its proxies, are skipped with a diagnostic.
SimplifiedMesh solve_vertices_naive(const std::vector<ProxyFrame>& frames, const std::vector<QTuple>& tuples);

struct SolverConfig {
  std::vector<double> wtilde;  // per proxy; empty means default_wtilde everywhere
  double default_wtilde = 1.0;
  std::size_t max_outer = 50;
  double constraint_tol = 1e-6;
  double step_tol = 1e-10;

  double weight(std::size_t proxy) const { return wtilde.empty() ? default_wtilde : wtilde.at(proxy); }
};

/// Vertex placement problem: unknowns x_j per tuple and corrected normals n_i
/// per proxy, packed as [x_0, ..., x_{t-1}, n_0, ..., n_{m-1}].
///
///   F(z) = sum_j sum_{i in I_j} |x_j - C_i|^2 + sum_i w_i |N_i - n_i|^2
///   c_ij = n_i . (x_j - C_i) = 0,   h_i = |n_i|^2 - 1 = 0.
///
/// The penalized objective is F + sum l_k g_k + mu/2 sum g_k^2 over all
/// constraints g = (c, h) in a fixed order (c by tuple then proxy, then h by proxy).
class VertexProblem {
 public:
  VertexProblem(std::vector<ProxyFrame> frames, std::vector<QTuple> tuples, std::vector<double> weights);

  std::size_t variable_count() const { return 3 * (tuples_.size() + frames_.size()); }
  std::size_t constraint_count() const { return incidences_ + frames_.size(); }

  /// x_j at the barycenter of its anchors, n_i = N_i.
  Eigen::VectorXd initial_point() const;
  double objective(const Eigen::VectorXd& z) const;
  Eigen::VectorXd constraints(const Eigen::VectorXd& z) const;
  double penalized(const Eigen::VectorXd& z, const Eigen::VectorXd& lambda, double mu) const;
  Eigen::VectorXd penalized_gradient(const Eigen::VectorXd& z, const Eigen::VectorXd& lambda, double mu) const;
  Eigen::MatrixXd penalized_hessian(const Eigen::VectorXd& z, const Eigen::VectorXd& lambda, double mu) const;

  const std::vector<QTuple>& tuples() const { return tuples_; }
  const std::vector<ProxyFrame>& frames() const { return frames_; }

 private:
  std::vector<ProxyFrame> frames_;
  std::vector<QTuple> tuples_;
  std::vector<double> weights_;
  std::size_t incidences_ = 0;
};

struct SolveReport {
  Eigen::VectorXd solution;
  double objective = 0.0;
  double max_violation = 0.0;
  std::size_t outer_iterations = 0;
  bool converged = false;
};

/// Augmented Lagrangian outer loop with a damped Newton inner solve.
SolveReport solve_vertex_problem(const VertexProblem& problem, const SolverConfig& config);

/// Vertices and corrected normals from the constrained solve. Marked
/// infeasible when the tolerances are not met within max_outer.
SimplifiedMesh solve_vertices_optimized(const std::vector<ProxyFrame>& frames, const std::vector<QTuple>& tuples,
                                        const SolverConfig& config);

}  // namespace vsa
