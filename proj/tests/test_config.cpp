#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "aoicache/config_json.hpp"
#include "aoicache/presets.hpp"

using namespace aoicache;

namespace {

SystemConfig tiled(std::size_t rsus, std::size_t per_rsu, Slots limit = 10) {
  SystemConfig cfg;
  cfg.num_rsus = rsus;
  cfg.regions_per_rsu = per_rsu;
  cfg.num_regions = rsus * per_rsu;
  cfg.max_aoi.assign(cfg.num_regions, limit);
  cfg.update_cost = Matrix<double>(rsus, cfg.num_regions, 1.0);
  return cfg;
}

ErrorKind kind_of(const SystemConfig& cfg) {
  try {
    validate_config(cfg);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected validation failure");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("validate_config accepts the 4x5 layout and the minimal system") {
  auto cfg = tiled(4, 5);
  CHECK(validate_config(cfg) == cfg);

  auto minimal = tiled(1, 1, 1);
  REQUIRE(minimal.max_aoi == std::vector<Slots>{1});
  CHECK_NOTHROW(validate_config(minimal));

  CHECK_NOTHROW(validate_config(fig1_preset()));
  CHECK_NOTHROW(validate_config(fig2_preset()));
}

TEST_CASE("validate_config error kinds") {
  auto cfg = tiled(4, 5);
  cfg.num_regions = 19;
  CHECK(kind_of(cfg) == ErrorKind::InvalidTopology);

  cfg = tiled(4, 5);
  cfg.max_aoi[3] = 0;
  CHECK(kind_of(cfg) == ErrorKind::NonPositiveLimit);

  cfg = tiled(4, 5);
  cfg.service_rate = 0.0;
  CHECK(kind_of(cfg) == ErrorKind::NonPositiveLimit);

  cfg = tiled(4, 5);
  cfg.update_cost(2, 7) = -0.1;
  CHECK(kind_of(cfg) == ErrorKind::NegativeParameter);

  cfg = tiled(4, 5);
  cfg.aoi_weight = -1.0;
  CHECK(kind_of(cfg) == ErrorKind::NegativeParameter);

  cfg = tiled(4, 5);
  cfg.lyapunov_v = -1.0;
  CHECK(kind_of(cfg) == ErrorKind::NegativeParameter);

  cfg = tiled(4, 5);
  cfg.popularity_mode = StaticZipf{-0.5};
  CHECK(kind_of(cfg) == ErrorKind::BadPopularityMode);

  cfg = tiled(4, 5);
  cfg.popularity_mode = Empirical{0};
  CHECK(kind_of(cfg) == ErrorKind::BadPopularityMode);

  cfg = tiled(4, 5);
  cfg.mbs_generation_prob = 1.5;
  CHECK(kind_of(cfg) == ErrorKind::InvalidParameter);

  cfg = tiled(4, 5);
  cfg.service_policy = PeriodicService{0};
  CHECK(kind_of(cfg) == ErrorKind::BadPeriod);
}

TEST_CASE("coverage_of tiles the road") {
  const auto cfg = tiled(4, 5);
  CHECK(coverage_of(0, cfg) == CoverageRange{0, 5});
  CHECK(coverage_of(3, cfg) == CoverageRange{15, 20});
  try {
    coverage_of(4, cfg);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
}

TEST_CASE("coverage ranges partition the regions for random layouts") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::size_t> dim(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cfg = tiled(dim(gen), dim(gen));
    std::multiset<std::size_t> seen;
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      const auto cov = coverage_of(k, cfg);
      CHECK(cov.size() == cfg.regions_per_rsu);
      for (std::size_t h = cov.first; h < cov.last; ++h) {
        seen.insert(h);
        CHECK(rsu_covering(h, cfg) == k);
      }
    }
    REQUIRE(seen.size() == cfg.num_regions);
    for (std::size_t h = 0; h < cfg.num_regions; ++h) CHECK(seen.count(h) == 1);
  }
}

TEST_CASE("config JSON round-trips field by field") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> real(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto cfg = trial % 2 ? fig1_preset() : fig2_preset();
    cfg.aoi_weight = real(gen);
    cfg.lyapunov_v = real(gen);
    cfg.service_cost = real(gen);
    cfg.service_rate = real(gen) + 0.01;
    cfg.mbs_generation_prob = real(gen) / 10.0;
    cfg.seed = gen();
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      for (std::size_t h = 0; h < cfg.num_regions; ++h) cfg.update_cost(k, h) = real(gen);
    }
    if (trial % 3 == 0) cfg.popularity_mode = Empirical{static_cast<std::int64_t>(trial + 1)};
    if (trial % 4 == 1) cfg.service_policy = PeriodicService{trial};
    if (trial % 4 == 2) cfg.service_policy = AlwaysServe{};
    cfg.policy = static_cast<RefreshPolicyKind>(trial % 5);

    const auto parsed = validate_config(parse_config(serialize_config(cfg)));
    CHECK(parsed == cfg);
    CHECK(config_digest(parsed) == config_digest(cfg));
  }
}

TEST_CASE("config JSON rejects unknown and missing keys") {
  auto j = to_json(fig1_preset());
  j["num_rsu"] = 4;
  try {
    config_from_json(j);
    FAIL("expected UnknownKey");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownKey);
  }

  j = to_json(fig1_preset());
  j.erase("max_aoi");
  CHECK_THROWS_AS(config_from_json(j), Error);

  j = to_json(fig1_preset());
  j["popularity_mode"]["window"] = 3;
  CHECK_THROWS_AS(config_from_json(j), Error);

  CHECK_THROWS_AS(parse_config("{not json"), Error);
}

TEST_CASE("policy names parse") {
  CHECK(parse_refresh_policy("mdp_index") == RefreshPolicyKind::MdpIndex);
  CHECK(parse_refresh_policy("never_update") == RefreshPolicyKind::NeverUpdate);
  CHECK_THROWS_AS(parse_refresh_policy("lru"), Error);
  CHECK(parse_service_policy("periodic(5)") == ServicePolicy{PeriodicService{5}});
  CHECK(parse_service_policy("always_serve") == ServicePolicy{AlwaysServe{}});
  CHECK_THROWS_AS(parse_service_policy("periodic(x)"), Error);
}
