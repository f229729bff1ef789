#pragma once

#include <cmath>
#include <deque>
#include <vector>

#include "aoicache/rng.hpp"
#include "aoicache/state.hpp"

namespace aoicache {

// Zipf weights over all contents, ranked by region index (rank h + 1).
// Exponent 0 is the uniform distribution.
inline std::vector<double> zipf_weights(std::size_t n, double exponent) {
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t h = 0; h < n; ++h) {
    w[h] = 1.0 / std::pow(static_cast<double>(h + 1), exponent);
    total += w[h];
  }
  for (auto& x : w) x /= total;
  return w;
}

// Per-RSU popularity rows implied by a global request distribution.
inline Matrix<double> coverage_popularity(std::span<const double> global, const SystemConfig& cfg) {
  Matrix<double> p(cfg.num_rsus, cfg.num_regions, 0.0);
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    const auto cov = coverage_of(k, cfg);
    double total = 0.0;
    for (std::size_t h = cov.first; h < cov.last; ++h) total += global[h];
    for (std::size_t h = cov.first; h < cov.last; ++h) {
      p(k, h) = total > 0.0 ? global[h] / total : 1.0 / static_cast<double>(cov.size());
    }
  }
  return p;
}

// Request distribution used when vehicles pick a content: Zipf in static mode,
// uniform ("randomly generated") in empirical mode.
inline std::vector<double> request_distribution(const SystemConfig& cfg) {
  if (const auto* zipf = std::get_if<StaticZipf>(&cfg.popularity_mode)) {
    return zipf_weights(cfg.num_regions, zipf->exponent);
  }
  return zipf_weights(cfg.num_regions, 0.0);
}

// Inverse-CDF draw from a discrete distribution.
inline std::size_t sample_discrete(std::span<const double> probs, CounterRng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;
}

// Sliding-window request counts per (RSU, content); a row with no requests in
// the window falls back to uniform.
class EmpiricalPopularity {
 public:
  EmpiricalPopularity(const SystemConfig& cfg, std::int64_t window_slots)
      : window_(static_cast<std::size_t>(window_slots)),
        totals_(cfg.num_rsus, cfg.num_regions, 0) {}

  // Counts for the slot that just ended.
  void push_slot(Matrix<std::int64_t> counts) {
    for (std::size_t k = 0; k < counts.rows(); ++k) {
      for (std::size_t h = 0; h < counts.cols(); ++h) totals_(k, h) += counts(k, h);
    }
    history_.push_back(std::move(counts));
    if (history_.size() > window_) {
      const auto& old = history_.front();
      for (std::size_t k = 0; k < old.rows(); ++k) {
        for (std::size_t h = 0; h < old.cols(); ++h) totals_(k, h) -= old(k, h);
      }
      history_.pop_front();
    }
  }

  Matrix<double> popularity(const SystemConfig& cfg) const {
    Matrix<double> p(cfg.num_rsus, cfg.num_regions, 0.0);
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      const auto cov = coverage_of(k, cfg);
      std::int64_t total = 0;
      for (std::size_t h = cov.first; h < cov.last; ++h) total += totals_(k, h);
      for (std::size_t h = cov.first; h < cov.last; ++h) {
        p(k, h) = total > 0 ? static_cast<double>(totals_(k, h)) / static_cast<double>(total)
                            : 1.0 / static_cast<double>(cov.size());
      }
    }
    return p;
  }

 private:
  std::size_t window_;
  Matrix<std::int64_t> totals_;
  std::deque<Matrix<std::int64_t>> history_;
};

inline Matrix<double> initial_popularity(const SystemConfig& cfg) {
  return coverage_popularity(request_distribution(cfg), cfg);
}

}  // namespace aoicache
