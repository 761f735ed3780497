#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "vsa/core/error.hpp"
#include "vsa/simplify/vertices.hpp"

namespace vsa {

VertexProblem::VertexProblem(std::vector<ProxyFrame> frames, std::vector<QTuple> tuples, std::vector<double> weights)
    : frames_(std::move(frames)), tuples_(std::move(tuples)), weights_(std::move(weights)) {
  if (weights_.size() != frames_.size()) throw InvalidArgument("one deviation weight per proxy is required");
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("deviation weights must be finite and >= 0");
  }
  for (const QTuple& t : tuples_) {
    for (ProxyId id : t.proxy_ids) {
      if (id < 0 || static_cast<std::size_t>(id) >= frames_.size()) throw InvalidArgument("tuple proxy out of range");
    }
    incidences_ += t.proxy_ids.size();
  }
}

Eigen::VectorXd VertexProblem::initial_point() const {
  Eigen::VectorXd z(variable_count());
  for (std::size_t j = 0; j < tuples_.size(); ++j) {
    Vec3 x = Vec3::Zero();
    for (ProxyId id : tuples_[j].proxy_ids) x += frames_[id].anchor;
    z.segment<3>(3 * j) = x / static_cast<double>(tuples_[j].proxy_ids.size());
  }
  const std::size_t base = 3 * tuples_.size();
  for (std::size_t i = 0; i < frames_.size(); ++i) z.segment<3>(base + 3 * i) = frames_[i].normal;
  return z;
}

double VertexProblem::objective(const Eigen::VectorXd& z) const {
  double f = 0.0;
  const std::size_t base = 3 * tuples_.size();
  for (std::size_t j = 0; j < tuples_.size(); ++j) {
    for (ProxyId id : tuples_[j].proxy_ids) f += (z.segment<3>(3 * j) - frames_[id].anchor).squaredNorm();
  }
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    f += weights_[i] * (frames_[i].normal - z.segment<3>(base + 3 * i)).squaredNorm();
  }
  return f;
}

Eigen::VectorXd VertexProblem::constraints(const Eigen::VectorXd& z) const {
  Eigen::VectorXd g(constraint_count());
  const std::size_t base = 3 * tuples_.size();
  std::size_t k = 0;
  for (std::size_t j = 0; j < tuples_.size(); ++j) {
    for (ProxyId id : tuples_[j].proxy_ids) {
      g[k++] = z.segment<3>(base + 3 * id).dot(z.segment<3>(3 * j) - frames_[id].anchor);
    }
  }
  for (std::size_t i = 0; i < frames_.size(); ++i) g[k++] = z.segment<3>(base + 3 * i).squaredNorm() - 1.0;
  return g;
}

double VertexProblem::penalized(const Eigen::VectorXd& z, const Eigen::VectorXd& lambda, double mu) const {
  const Eigen::VectorXd g = constraints(z);
  return objective(z) + lambda.dot(g) + 0.5 * mu * g.squaredNorm();
}

Eigen::VectorXd VertexProblem::penalized_gradient(const Eigen::VectorXd& z, const Eigen::VectorXd& lambda,
                                                  double mu) const {
  const Eigen::VectorXd g = constraints(z);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(variable_count());
  const std::size_t base = 3 * tuples_.size();
  std::size_t k = 0;
  for (std::size_t j = 0; j < tuples_.size(); ++j) {
    const Vec3 x = z.segment<3>(3 * j);
    for (ProxyId id : tuples_[j].proxy_ids) {
      const Vec3 n = z.segment<3>(base + 3 * id);
      const double s = lambda[k] + mu * g[k];
      grad.segment<3>(3 * j) += 2.0 * (x - frames_[id].anchor) + s * n;
      grad.segment<3>(base + 3 * id) += s * (x - frames_[id].anchor);
      ++k;
    }
  }
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    const Vec3 n = z.segment<3>(base + 3 * i);
    const double s = lambda[k] + mu * g[k];
    grad.segment<3>(base + 3 * i) += 2.0 * weights_[i] * (n - frames_[i].normal) + 2.0 * s * n;
    ++k;
  }
  return grad;
}

Eigen::MatrixXd VertexProblem::penalized_hessian(const Eigen::VectorXd& z, const Eigen::VectorXd& lambda,
                                                 double mu) const {
  const Eigen::VectorXd g = constraints(z);
  const auto dim = static_cast<Eigen::Index>(variable_count());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const std::size_t base = 3 * tuples_.size();
  const Eigen::Matrix3d eye = Eigen::Matrix3d::Identity();
  std::size_t k = 0;
  for (std::size_t j = 0; j < tuples_.size(); ++j) {
    const auto xj = static_cast<Eigen::Index>(3 * j);
    const Vec3 x = z.segment<3>(xj);
    for (ProxyId id : tuples_[j].proxy_ids) {
      const auto ni = static_cast<Eigen::Index>(base + 3 * id);
      const Vec3 n = z.segment<3>(ni);
      const Vec3 d = x - frames_[id].anchor;
      const double s = lambda[k] + mu * g[k];
      h.block<3, 3>(xj, xj) += 2.0 * eye + mu * n * n.transpose();
      h.block<3, 3>(ni, ni) += mu * d * d.transpose();
      const Eigen::Matrix3d cross = s * eye + mu * n * d.transpose();
      h.block<3, 3>(xj, ni) += cross;
      h.block<3, 3>(ni, xj) += cross.transpose();
      ++k;
    }
  }
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    const auto ni = static_cast<Eigen::Index>(base + 3 * i);
    const Vec3 n = z.segment<3>(ni);
    const double s = lambda[k] + mu * g[k];
    h.block<3, 3>(ni, ni) += (2.0 * weights_[i] + 2.0 * s) * eye + 4.0 * mu * n * n.transpose();
    ++k;
  }
  return h;
}

namespace {

constexpr std::size_t kMaxInner = 200;
constexpr double kArmijo = 1e-4;

// Minimizes the penalized objective for fixed multipliers. Returns the final
// gradient infinity norm.
double inner_solve(const VertexProblem& problem, Eigen::VectorXd& z, const Eigen::VectorXd& lambda, double mu,
                   double step_tol, double grad_tol) {
  const auto dim = static_cast<Eigen::Index>(problem.variable_count());
  double value = problem.penalized(z, lambda, mu);
  Eigen::VectorXd grad = problem.penalized_gradient(z, lambda, mu);
  for (std::size_t it = 0; it < kMaxInner; ++it) {
    if (grad.lpNorm<Eigen::Infinity>() <= grad_tol) break;
    const Eigen::MatrixXd hess = problem.penalized_hessian(z, lambda, mu);
    const double scale = std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
    double shift = 0.0;
    Eigen::VectorXd dir;
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::MatrixXd shifted = hess;
      shifted.diagonal().array() += shift;
      const Eigen::LLT<Eigen::MatrixXd> llt(shifted);
      if (llt.info() == Eigen::Success) {
        dir = -llt.solve(grad);
        if (dir.allFinite() && grad.dot(dir) < 0.0) break;
      }
      dir.resize(0);
      shift = shift == 0.0 ? 1e-10 * scale : 4.0 * shift;
    }
    if (dir.size() != dim) dir = -grad;

    double t = 1.0;
    const double slope = grad.dot(dir);
    Eigen::VectorXd trial = z + t * dir;
    double trial_value = problem.penalized(trial, lambda, mu);
    while (!(trial_value <= value + kArmijo * t * slope) && t > 1e-20) {
      t *= 0.5;
      trial = z + t * dir;
      trial_value = problem.penalized(trial, lambda, mu);
    }
    if (!(trial_value <= value + kArmijo * t * slope)) break;
    const double step = (t * dir).lpNorm<Eigen::Infinity>();
    z = std::move(trial);
    value = trial_value;
    grad = problem.penalized_gradient(z, lambda, mu);
    if (step <= step_tol) break;
  }
  return grad.lpNorm<Eigen::Infinity>();
}

}  // namespace

SolveReport solve_vertex_problem(const VertexProblem& problem, const SolverConfig& config) {
  SolveReport report;
  Eigen::VectorXd z = problem.initial_point();
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.constraint_count()));
  double mu = 10.0;
  double previous = std::numeric_limits<double>::infinity();
  const double grad_tol = std::max(1e-12, 1e-3 * config.constraint_tol);

  Eigen::VectorXd best = z;
  double best_violation = std::numeric_limits<double>::infinity();
  for (std::size_t outer = 1; outer <= config.max_outer; ++outer) {
    inner_solve(problem, z, lambda, mu, config.step_tol, grad_tol);
    const Eigen::VectorXd g = problem.constraints(z);
    const double violation = g.size() ? g.lpNorm<Eigen::Infinity>() : 0.0;
    report.outer_iterations = outer;
    if (violation <= best_violation) {
      best = z;
      best_violation = violation;
    }
    if (violation <= config.constraint_tol) {
      report.converged = true;
      break;
    }
    lambda += mu * g;
    if (violation > 0.25 * previous) mu = std::min(mu * 10.0, 1e12);
    previous = violation;
  }
  report.solution = report.converged ? z : best;
  report.objective = problem.objective(report.solution);
  const Eigen::VectorXd g = problem.constraints(report.solution);
  report.max_violation = g.size() ? g.lpNorm<Eigen::Infinity>() : 0.0;
  return report;
}

SimplifiedMesh solve_vertices_optimized(const std::vector<ProxyFrame>& frames, const std::vector<QTuple>& tuples,
                                        const SolverConfig& config) {
  std::vector<double> weights(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) weights[i] = config.weight(i);
  const VertexProblem problem(frames, tuples, std::move(weights));
  const SolveReport report = solve_vertex_problem(problem, config);

  SimplifiedMesh mesh;
  const std::size_t base = 3 * tuples.size();
  for (std::size_t j = 0; j < tuples.size(); ++j) {
    mesh.vertices.push_back(report.solution.segment<3>(3 * j));
    mesh.vertex_proxies.push_back(tuples[j].proxy_ids);
  }
  for (std::size_t i = 0; i < frames.size(); ++i) mesh.corrected_normals.push_back(report.solution.segment<3>(base + 3 * i));
  for (std::size_t j = 0; j < tuples.size(); ++j) {
    for (ProxyId id : tuples[j].proxy_ids) {
      mesh.max_plane_residual = std::max(
          mesh.max_plane_residual, std::abs(mesh.corrected_normals[id].dot(mesh.vertices[j] - frames[id].anchor)));
    }
  }
  mesh.feasible = report.converged;
  if (!report.converged) {
    mesh.diagnostics.push_back("optimization stopped after " + std::to_string(report.outer_iterations) +
                               " outer iterations with constraint violation " +
                               std::to_string(report.max_violation));
  }
  return mesh;
}

}  // namespace vsa
