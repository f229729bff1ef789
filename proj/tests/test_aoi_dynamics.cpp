#include <catch_amalgamated.hpp>

#include <random>

#include "aoicache/aoi_dynamics.hpp"
#include "aoicache/refresh_policy.hpp"

using namespace aoicache;

namespace {

SystemConfig layout(std::size_t rsus, std::size_t per_rsu, Slots limit = 10) {
  SystemConfig cfg;
  cfg.num_rsus = rsus;
  cfg.regions_per_rsu = per_rsu;
  cfg.num_regions = rsus * per_rsu;
  cfg.max_aoi.assign(cfg.num_regions, limit);
  cfg.update_cost = Matrix<double>(rsus, cfg.num_regions, 1.0);
  return cfg;
}

}  // namespace

TEST_CASE("advance_mbs_aoi resets generated contents and ages the rest") {
  CHECK(advance_mbs_aoi(std::vector<Slots>{3, 7}, {true, false}) == std::vector<Slots>{1, 8});

  std::vector<Slots> aoi{1, 1};
  for (int t = 0; t < 5; ++t) aoi = advance_mbs_aoi(aoi, {false, false});
  CHECK(aoi == std::vector<Slots>{6, 6});

  std::vector<Slots> fresh{4, 9, 2};
  for (int t = 0; t < 10; ++t) {
    fresh = advance_mbs_aoi(fresh, {true, true, true});
    CHECK(fresh == std::vector<Slots>{1, 1, 1});
  }

  try {
    advance_mbs_aoi(std::vector<Slots>{1, 2}, {true});
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
}

TEST_CASE("advance_rsu_aoi refreshes from the master or ages") {
  const auto cfg = layout(1, 5);
  auto state = CacheState::uniform(cfg, 1);
  state.rsu_aoi(0, 2) = 9;
  state.mbs_aoi[2] = 1;

  auto action = UpdateAction::none(cfg);
  action.x(0, 2) = 1;
  CHECK(advance_rsu_aoi(state, action, cfg).rsu_aoi(0, 2) == 1);

  CHECK(advance_rsu_aoi(state, UpdateAction::none(cfg), cfg).rsu_aoi(0, 2) == 10);

  state.mbs_aoi[2] = 4;
  CHECK(advance_rsu_aoi(state, action, cfg).rsu_aoi(0, 2) == 4);
}

TEST_CASE("advance_rsu_aoi rejects illegal actions") {
  const auto cfg = layout(2, 5);
  const auto state = CacheState::uniform(cfg, 3);

  auto two = UpdateAction::none(cfg);
  two.x(0, 0) = 1;
  two.x(0, 1) = 1;
  try {
    advance_rsu_aoi(state, two, cfg);
    FAIL("expected ConstraintViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConstraintViolation);
  }

  auto outside = UpdateAction::none(cfg);
  outside.x(1, 2) = 1;  // RSU 1 covers 5..9
  CHECK_THROWS_AS(advance_rsu_aoi(state, outside, cfg), Error);
}

TEST_CASE("all-zero actions age every copy by exactly one") {
  const auto cfg = layout(3, 4);
  auto state = CacheState::uniform(cfg, 2);
  for (int t = 0; t < 20; ++t) {
    const auto next = advance_rsu_aoi(state, UpdateAction::none(cfg), cfg);
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      const auto cov = coverage_of(k, cfg);
      for (std::size_t h = cov.first; h < cov.last; ++h) {
        CHECK(next.rsu_aoi(k, h) == state.rsu_aoi(k, h) + 1);
      }
    }
    state = next;
  }
}

TEST_CASE("copies never become fresher than the master under random legal actions") {
  std::mt19937_64 gen(3);
  const auto cfg = layout(3, 4);
  auto state = CacheState::uniform(cfg, 1);
  std::bernoulli_distribution generated(0.3);
  for (int t = 0; t < 2000; ++t) {
    std::vector<bool> events(cfg.num_regions);
    for (std::size_t h = 0; h < events.size(); ++h) events[h] = generated(gen);
    state.mbs_aoi = advance_mbs_aoi(state.mbs_aoi, events);

    auto action = UpdateAction::none(cfg);
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      const auto cov = coverage_of(k, cfg);
      std::uniform_int_distribution<std::size_t> pick(cov.first, cov.last);  // last = no refresh
      if (auto h = pick(gen); h < cov.last) action.x(k, h) = 1;
    }
    state = advance_rsu_aoi(state, action, cfg);
    REQUIRE_NOTHROW(check_state(state, cfg));
  }
}

TEST_CASE("threshold refresh yields a sawtooth with period and peak equal to the limit") {
  for (Slots limit : {1, 2, 5, 10, 13}) {
    auto cfg = layout(1, 1, limit);
    auto state = CacheState::uniform(cfg, 1);
    std::vector<Slots> trajectory;
    for (int t = 0; t < 10 * limit + 5; ++t) {
      state.mbs_aoi = advance_mbs_aoi(state.mbs_aoi, {true});
      const auto action = baseline_policy(RefreshPolicyKind::Threshold, state, cfg);
      state = advance_rsu_aoi(state, action, cfg);
      trajectory.push_back(state.rsu_aoi(0, 0));
    }
    for (std::size_t t = 0; t < trajectory.size(); ++t) {
      CHECK(trajectory[t] <= limit);
      if (t + static_cast<std::size_t>(limit) < trajectory.size()) {
        CHECK(trajectory[t] == trajectory[t + static_cast<std::size_t>(limit)]);
      }
    }
    CHECK(*std::max_element(trajectory.begin(), trajectory.end()) == limit);
  }
}
