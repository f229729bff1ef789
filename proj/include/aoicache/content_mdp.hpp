#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "aoicache/config.hpp"

namespace aoicache {

// Single-content refresh problem. States are AoI values 1..aoi_cap; holding ages
// the copy (saturating at the cap), refreshing brings it back to AoI 1.
struct ContentMdp {
  Slots max_aoi = 1;
  double popularity = 0.0;
  double cost = 0.0;
  double weight = 1.0;
  double discount = 0.9;
  Slots aoi_cap = 2;

  static ContentMdp with_default_cap(Slots max_aoi, double popularity, double cost, double weight,
                                     double discount) {
    return {max_aoi, popularity, cost, weight, discount, 2 * max_aoi};
  }

  Slots hold_next(Slots a) const noexcept { return std::min(a + 1, aoi_cap); }

  double hold_reward(Slots a) const noexcept {
    return weight * popularity * static_cast<double>(max_aoi) / static_cast<double>(hold_next(a));
  }

  double refresh_reward() const noexcept {
    return weight * popularity * static_cast<double>(max_aoi) - cost;
  }
};

struct SolvedContentMdp {
  ContentMdp mdp;
  std::vector<double> value;      // value[a - 1]
  std::vector<double> q_hold;     // q_hold[a - 1]
  std::vector<double> q_refresh;  // q_refresh[a - 1]
  std::vector<bool> refresh;      // greedy action per state; ties hold
  int iterations = 0;

  Slots clamp(Slots a) const noexcept { return std::clamp<Slots>(a, 1, mdp.aoi_cap); }

  double advantage(Slots a) const {
    const auto i = static_cast<std::size_t>(clamp(a) - 1);
    return q_refresh[i] - q_hold[i];
  }

  bool refreshes_at(Slots a) const { return refresh[static_cast<std::size_t>(clamp(a) - 1)]; }

  // Smallest AoI at which refreshing is chosen, if any.
  std::optional<Slots> refresh_threshold() const {
    for (std::size_t i = 0; i < refresh.size(); ++i) {
      if (refresh[i]) return static_cast<Slots>(i + 1);
    }
    return std::nullopt;
  }
};

inline SolvedContentMdp solve_content_mdp(const ContentMdp& mdp, double epsilon) {
  if (!(mdp.discount >= 0.0 && mdp.discount < 1.0)) {
    throw Error(ErrorKind::BadDiscount, "discount must lie in [0, 1)");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::BadEpsilon, "epsilon must be > 0");
  }
  if (mdp.max_aoi < 1 || mdp.aoi_cap < mdp.max_aoi) {
    throw Error(ErrorKind::InvalidParameter, "aoi_cap must be >= max_aoi >= 1");
  }

  const auto n = static_cast<std::size_t>(mdp.aoi_cap);
  const double gamma = mdp.discount;
  SolvedContentMdp out{mdp, std::vector<double>(n, 0.0), std::vector<double>(n),
                       std::vector<double>(n), std::vector<bool>(n), 0};

  auto backup = [&](const std::vector<double>& v) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = static_cast<Slots>(i + 1);
      out.q_hold[i] = mdp.hold_reward(a) + gamma * v[static_cast<std::size_t>(mdp.hold_next(a) - 1)];
      out.q_refresh[i] = mdp.refresh_reward() + gamma * v[0];
    }
  };

  // Sup-norm stopping rule that puts the returned values within epsilon / 2 of optimal.
  const double tolerance = gamma > 0.0 ? epsilon * (1.0 - gamma) / (2.0 * gamma) : 0.0;
  std::vector<double> next(n);
  while (true) {
    backup(out.value);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = std::max(out.q_hold[i], out.q_refresh[i]);
      change = std::max(change, std::abs(next[i] - out.value[i]));
    }
    out.value.swap(next);
    ++out.iterations;
    if (gamma == 0.0 || change < tolerance) break;
  }

  backup(out.value);
  for (std::size_t i = 0; i < n; ++i) out.refresh[i] = out.q_refresh[i] > out.q_hold[i];
  return out;
}

}  // namespace aoicache
