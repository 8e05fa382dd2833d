#pragma once

// Binary logistic regression trained by full-batch gradient descent with
// backtracking line search.
//
// Objective over N rows x_i with labels y_i in {0,1}:
//   L(w, b) = (1/N) sum_i [ log(1 + exp(z_i)) - y_i z_i ] + (lambda/2) |w|^2,
//   z_i = w . x_i + b.
// The bias is not regularized. Parameters are packed as (w_0, ..., w_{d-1}, b).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace redcrawl::logistic {

inline double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(z)) without overflow.
inline double softplus(double z) noexcept {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

/// Dense row-major design matrix with labels.
class Objective {
 public:
  Objective(std::size_t dim, std::vector<double> x, std::vector<double> y, double lambda)
      : dim_(dim), x_(std::move(x)), y_(std::move(y)), lambda_(lambda) {
    if (x_.size() != dim_ * y_.size()) throw std::invalid_argument("logistic::Objective: shape mismatch");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rows() const noexcept { return y_.size(); }
  std::size_t param_count() const noexcept { return dim_ + 1; }
  std::span<const double> row(std::size_t i) const { return {x_.data() + i * dim_, dim_}; }
  double label(std::size_t i) const { return y_[i]; }

  double margin(std::span<const double> params, std::size_t i) const {
    double z = params[dim_];
    const auto r = row(i);
    for (std::size_t k = 0; k < dim_; ++k) z += params[k] * r[k];
    return z;
  }

  double loss(std::span<const double> params) const {
    double total = 0.0;
    for (std::size_t i = 0; i < rows(); ++i) {
      const double z = margin(params, i);
      total += softplus(z) - y_[i] * z;
    }
    const double data = rows() == 0 ? 0.0 : total / static_cast<double>(rows());
    return data + 0.5 * lambda_ * squared_weight_norm(params);
  }

  std::vector<double> gradient(std::span<const double> params) const {
    std::vector<double> g(param_count(), 0.0);
    for (std::size_t i = 0; i < rows(); ++i) {
      const double residual = sigmoid(margin(params, i)) - y_[i];
      const auto r = row(i);
      for (std::size_t k = 0; k < dim_; ++k) g[k] += residual * r[k];
      g[dim_] += residual;
    }
    if (rows() > 0)
      for (auto& gk : g) gk /= static_cast<double>(rows());
    for (std::size_t k = 0; k < dim_; ++k) g[k] += lambda_ * params[k];
    return g;
  }

 private:
  double squared_weight_norm(std::span<const double> params) const {
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) s += params[k] * params[k];
    return s;
  }

  std::size_t dim_;
  std::vector<double> x_;
  std::vector<double> y_;
  double lambda_;
};

struct DescentOptions {
  std::size_t max_iterations = 500;
  double tolerance = 1e-6;  // on the max-norm of the gradient
  double initial_step = 1.0;
  double armijo = 1e-4;
  double shrink = 0.5;
  double grow = 2.0;
};

struct DescentResult {
  std::vector<double> params;
  std::size_t iterations = 0;
  double loss = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
  /// Loss after each accepted step, starting with the initial point.
  std::vector<double> loss_history;
};

inline double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Gradient descent from the origin. Each accepted step satisfies the Armijo
/// condition, so the loss never increases.
inline DescentResult minimize(const Objective& obj, const DescentOptions& opt = {}) {
  DescentResult res;
  res.params.assign(obj.param_count(), 0.0);
  res.loss = obj.loss(res.params);
  res.loss_history.push_back(res.loss);
  double step = opt.initial_step;
  std::vector<double> trial(obj.param_count());

  for (;;) {
    const auto g = obj.gradient(res.params);
    res.gradient_norm = max_norm(g);
    if (res.gradient_norm < opt.tolerance) {
      res.converged = true;
      break;
    }
    if (res.iterations >= opt.max_iterations) break;

    double g2 = 0.0;
    for (double x : g) g2 += x * x;
    bool accepted = false;
    while (step > 1e-14) {
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] = res.params[k] - step * g[k];
      const double trial_loss = obj.loss(trial);
      if (trial_loss <= res.loss - opt.armijo * step * g2) {
        res.params.swap(trial);
        res.loss = trial_loss;
        res.loss_history.push_back(trial_loss);
        accepted = true;
        break;
      }
      step *= opt.shrink;
    }
    ++res.iterations;
    if (!accepted) break;
    step *= opt.grow;
  }
  return res;
}

}  // namespace redcrawl::logistic
