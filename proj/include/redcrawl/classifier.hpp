#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "redcrawl/logistic.hpp"
#include "redcrawl/observer.hpp"

namespace redcrawl {

struct TrainingRow {
  FeatureVector x;
  Color label;
};

struct TrainingSet {
  std::vector<TrainingRow> rows;
  /// Number of monitors placed when the snapshot was taken.
  std::size_t snapshot_step = 0;
};

struct FitParams {
  double lambda = 1e-3;
  logistic::DescentOptions descent{};
};

struct TrainedModel {
  std::array<double, kFeatureCount> weights{};
  double bias = 0.0;
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> sd{};
  /// No usable fit (empty or single-class data); callers rank by red neighbors instead.
  bool fallback = true;
  std::size_t iterations = 0;
  double loss = 0.0;
};

/// One row per monitored node, in monitoring order, with features computed as
/// if that node were still a candidate.
inline TrainingSet build_training_set(const ObserverState& state) {
  if (state.monitored_count() == 0) throw ContractViolation("build_training_set: no monitored nodes");
  TrainingSet set;
  set.snapshot_step = state.monitored_count();
  set.rows.reserve(state.monitored_count());
  for (NodeId m : state.monitored_order()) set.rows.push_back({unmonitored_features(state, m), *state.monitored_color(m)});
  return set;
}

struct Standardization {
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> sd{};

  static Standardization of(const TrainingSet& data) {
    Standardization s;
    if (data.rows.empty()) return s;
    const auto n = static_cast<double>(data.rows.size());
    for (const auto& r : data.rows)
      for (std::size_t k = 0; k < kFeatureCount; ++k) s.mean[k] += r.x[k];
    for (auto& m : s.mean) m /= n;
    for (const auto& r : data.rows)
      for (std::size_t k = 0; k < kFeatureCount; ++k) s.sd[k] += (r.x[k] - s.mean[k]) * (r.x[k] - s.mean[k]);
    for (auto& v : s.sd) v = std::sqrt(v / n);
    return s;
  }

  /// Constant features map to 0.
  FeatureVector apply(const FeatureVector& x) const {
    FeatureVector out{};
    for (std::size_t k = 0; k < kFeatureCount; ++k) out[k] = sd[k] > 1e-12 ? (x[k] - mean[k]) / sd[k] : 0.0;
    return out;
  }
};

/// Objective on standardized features; label 1 means red.
inline logistic::Objective make_objective(const TrainingSet& data, const Standardization& s, double lambda) {
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(data.rows.size() * kFeatureCount);
  for (const auto& r : data.rows) {
    const auto z = s.apply(r.x);
    x.insert(x.end(), z.begin(), z.end());
    y.push_back(r.label == Color::Red ? 1.0 : 0.0);
  }
  return logistic::Objective(kFeatureCount, std::move(x), std::move(y), lambda);
}

/// Analytic gradient of the regularized loss at `params` (9 weights then bias),
/// with features standardized by the data's own statistics.
inline std::vector<double> gradient(const TrainingSet& data, std::span<const double> params, double lambda) {
  return make_objective(data, Standardization::of(data), lambda).gradient(params);
}

inline TrainedModel fit(const TrainingSet& data, const FitParams& params = {}) {
  TrainedModel model;
  std::size_t reds = 0;
  for (const auto& r : data.rows) reds += r.label == Color::Red;
  if (reds == 0 || reds == data.rows.size()) return model;

  const auto s = Standardization::of(data);
  const auto result = logistic::minimize(make_objective(data, s, params.lambda), params.descent);
  std::copy_n(result.params.begin(), kFeatureCount, model.weights.begin());
  model.bias = result.params[kFeatureCount];
  model.mean = s.mean;
  model.sd = s.sd;
  model.fallback = false;
  model.iterations = result.iterations;
  model.loss = result.loss;
  return model;
}

inline double decision_value(const TrainedModel& model, const FeatureVector& x) {
  const auto z = Standardization{model.mean, model.sd}.apply(x);
  double v = model.bias;
  for (std::size_t k = 0; k < kFeatureCount; ++k) v += model.weights[k] * z[k];
  return v;
}

/// P(red); nullopt when the model is in fallback mode.
inline std::optional<double> predict(const TrainedModel& model, const FeatureVector& x) {
  if (model.fallback) return std::nullopt;
  return logistic::sigmoid(decision_value(model, x));
}

}  // namespace redcrawl
