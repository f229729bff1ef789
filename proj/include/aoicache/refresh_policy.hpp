#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "aoicache/content_mdp.hpp"
#include "aoicache/reward.hpp"

namespace aoicache {

// Solved per-(RSU, content) MDPs. A row is re-solved when its popularity drifts
// by more than `kResolveDrift` in L1 from the popularity it was solved with.
class PolicyTable {
 public:
  static constexpr double kResolveDrift = 0.1;

  PolicyTable() = default;
  explicit PolicyTable(const SystemConfig& cfg)
      : rsus_(cfg.num_rsus),
        regions_(cfg.num_regions),
        entries_(cfg.num_rsus * cfg.num_regions),
        solved_with_(cfg.num_rsus, cfg.num_regions, 0.0) {}

  static PolicyTable solve_all(const Matrix<double>& popularity, const SystemConfig& cfg) {
    PolicyTable table(cfg);
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) table.solve_row(k, popularity, cfg);
    return table;
  }

  void solve_row(std::size_t k, const Matrix<double>& popularity, const SystemConfig& cfg) {
    const auto cov = coverage_of(k, cfg);
    for (std::size_t h = cov.first; h < cov.last; ++h) {
      const auto mdp = ContentMdp::with_default_cap(cfg.max_aoi[h], popularity(k, h),
                                                    cfg.update_cost(k, h), cfg.aoi_weight,
                                                    cfg.mdp_discount);
      entries_[k * regions_ + h] = solve_content_mdp(mdp, cfg.mdp_epsilon);
      solved_with_(k, h) = popularity(k, h);
    }
  }

  // Re-solves drifted rows; returns how many rows were re-solved.
  int resolve_drifted(const Matrix<double>& popularity, const SystemConfig& cfg) {
    int resolved = 0;
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      const auto cov = coverage_of(k, cfg);
      double drift = 0.0;
      for (std::size_t h = cov.first; h < cov.last; ++h) {
        drift += std::abs(popularity(k, h) - solved_with_(k, h));
      }
      if (drift > kResolveDrift) {
        solve_row(k, popularity, cfg);
        ++resolved;
      }
    }
    return resolved;
  }

  void set(std::size_t k, std::size_t h, SolvedContentMdp solved) {
    entries_.at(k * regions_ + h) = std::move(solved);
  }

  const SolvedContentMdp* find(std::size_t k, std::size_t h) const {
    if (k >= rsus_ || h >= regions_) return nullptr;
    const auto& e = entries_[k * regions_ + h];
    return e ? &*e : nullptr;
  }

  const SolvedContentMdp& at(std::size_t k, std::size_t h) const {
    const auto* solved = find(k, h);
    if (!solved) {
      throw Error(ErrorKind::MissingPolicy,
                  "no solved policy for RSU " + std::to_string(k) + ", content " + std::to_string(h));
    }
    return *solved;
  }

 private:
  std::size_t rsus_ = 0;
  std::size_t regions_ = 0;
  std::vector<std::optional<SolvedContentMdp>> entries_;
  Matrix<double> solved_with_;
};

// Latest slot offset (0 = this slot) at which a copy with pre-action AoI `aoi`
// can be refreshed without any held slot exceeding `limit`.
constexpr Slots latest_refresh_offset(Slots aoi, Slots limit) noexcept { return limit - aoi; }

// One refresh per slot, starting at `first_offset`: can every deadline be met?
// Earliest-deadline-first is optimal for unit jobs, so checking the sorted order suffices.
inline bool deadlines_feasible(std::vector<Slots> latest, Slots first_offset) {
  std::sort(latest.begin(), latest.end());
  for (std::size_t i = 0; i < latest.size(); ++i) {
    if (latest[i] < first_offset + static_cast<Slots>(i)) return false;
  }
  return true;
}

// Deadline test for RSU k over the contents selected by `include`, assuming
// `refreshed` (or nothing, if outside coverage) is refreshed this slot.
template <typename Include>
bool feasible_after(const CacheState& state, std::size_t k, std::size_t refreshed,
                    const SystemConfig& cfg, Include include) {
  const auto cov = coverage_of(k, cfg);
  std::vector<Slots> latest;
  for (std::size_t h = cov.first; h < cov.last; ++h) {
    if (!include(h)) continue;
    if (h == refreshed) {
      // Copy now holds the master's age; next refresh is due before it passes the limit.
      latest.push_back(cfg.max_aoi[h] - state.mbs_aoi[h] + 1);
    } else {
      latest.push_back(latest_refresh_offset(state.rsu_aoi(k, h), cfg.max_aoi[h]));
    }
  }
  return deadlines_feasible(std::move(latest), 1);
}

// True when RSU k can keep every covered copy within its limit using one refresh per
// slot, with the first refresh `first_offset` slots from now (0 = this slot).
inline bool deadlines_feasible(const CacheState& state, std::size_t k, const SystemConfig& cfg,
                               Slots first_offset) {
  const auto cov = coverage_of(k, cfg);
  std::vector<Slots> latest;
  for (std::size_t h = cov.first; h < cov.last; ++h) {
    latest.push_back(latest_refresh_offset(state.rsu_aoi(k, h), cfg.max_aoi[h]));
  }
  return deadlines_feasible(std::move(latest), first_offset);
}

namespace detail {

// Earliest deadline among included covered contents; lowest index on ties.
template <typename Include>
std::optional<std::size_t> most_urgent(const CacheState& state, std::size_t k,
                                       const SystemConfig& cfg, Include include) {
  const auto cov = coverage_of(k, cfg);
  std::optional<std::size_t> best;
  Slots best_latest = 0;
  for (std::size_t h = cov.first; h < cov.last; ++h) {
    if (!include(h)) continue;
    const Slots latest = latest_refresh_offset(state.rsu_aoi(k, h), cfg.max_aoi[h]);
    if (!best || latest < best_latest) {
      best = h;
      best_latest = latest;
    }
  }
  return best;
}

}  // namespace detail

// Index rule: per RSU, refresh the covered content with the largest positive
// refresh-minus-hold advantage at its current AoI; lowest index wins ties.
//
// Deadline guard: contents whose advantage is positive at their own AoI limit are
// worth keeping within it. If the index choice would leave those contents unable
// to meet their limits with one refresh per slot, the most urgent of them is
// refreshed instead.
inline UpdateAction select_updates(const CacheState& state, const PolicyTable& table,
                                   const SystemConfig& cfg) {
  auto action = UpdateAction::none(cfg);
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    const auto cov = coverage_of(k, cfg);
    std::optional<std::size_t> best;
    double best_adv = 0.0;
    std::vector<char> guarded(cfg.num_regions, 0);
    for (std::size_t h = cov.first; h < cov.last; ++h) {
      const auto& solved = table.at(k, h);
      const double adv = solved.advantage(state.rsu_aoi(k, h));
      if (adv > best_adv) {
        best_adv = adv;
        best = h;
      }
      guarded[h] = solved.advantage(cfg.max_aoi[h]) > 0.0;
    }
    auto is_guarded = [&](std::size_t h) { return guarded[h] != 0; };
    const std::size_t choice = best.value_or(cfg.num_regions);
    if (feasible_after(state, k, choice, cfg, is_guarded)) {
      if (best) action.x(k, *best) = 1;
    } else if (auto urgent = detail::most_urgent(state, k, cfg, is_guarded)) {
      action.x(k, *urgent) = 1;
    }
  }
  return action;
}

inline UpdateAction baseline_policy(RefreshPolicyKind kind, const CacheState& state,
                                    const SystemConfig& cfg) {
  auto action = UpdateAction::none(cfg);
  switch (kind) {
    case RefreshPolicyKind::NeverUpdate:
      return action;

    case RefreshPolicyKind::Threshold:
      // Lazy earliest-deadline-first: refresh only when holding would push some
      // copy past its limit now or make the remaining deadlines unmeetable.
      for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
        if (!deadlines_feasible(state, k, cfg, 1)) {
          action.x(k, *detail::most_urgent(state, k, cfg, [](std::size_t) { return true; })) = 1;
        }
      }
      return action;

    case RefreshPolicyKind::AlwaysUpdate:
      for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
        const auto cov = coverage_of(k, cfg);
        std::size_t best = cov.first;
        double best_gain = -1.0;
        for (std::size_t h = cov.first; h < cov.last; ++h) {
          const double gain = state.popularity(k, h) * static_cast<double>(cfg.max_aoi[h]) *
                              (1.0 / static_cast<double>(state.mbs_aoi[h]) -
                               1.0 / static_cast<double>(state.rsu_aoi(k, h) + 1));
          if (gain > best_gain) {
            best_gain = gain;
            best = h;
          }
        }
        action.x(k, best) = 1;
      }
      return action;

    case RefreshPolicyKind::MyopicGreedy:
      for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
        const auto cov = coverage_of(k, cfg);
        double best = row_reward(state, k, cfg.num_regions, cfg);
        std::optional<std::size_t> choice;
        for (std::size_t h = cov.first; h < cov.last; ++h) {
          const double r = row_reward(state, k, h, cfg);
          if (r > best) {
            best = r;
            choice = h;
          }
        }
        if (choice) action.x(k, *choice) = 1;
      }
      return action;

    case RefreshPolicyKind::MdpIndex:
      break;
  }
  throw Error(ErrorKind::UnknownKind,
              "'" + std::string(to_string(kind)) + "' is not a baseline refresh policy");
}

}  // namespace aoicache
