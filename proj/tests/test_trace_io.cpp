#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>

#include "aoicache/presets.hpp"
#include "aoicache/simulator.hpp"
#include "aoicache/summary.hpp"
#include "aoicache/trace_io.hpp"

using namespace aoicache;

namespace {

std::size_t count_lines(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "aoicache_trace_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("a 1000-slot run writes a header plus 1000 rows") {
  const auto cfg = fig1_preset();
  const auto csv = format_traces_csv(run(cfg), cfg);
  CHECK(count_lines(csv) == 1001);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "slot,reward,aoi_utility,mbs_cost,cumulative_reward,updates_issued,"
        "aoi_0_0,aoi_0_1,aoi_0_2,aoi_0_3,aoi_0_4,aoi_1_0,aoi_1_1,aoi_1_2,aoi_1_3,aoi_1_4,"
        "aoi_2_0,aoi_2_1,aoi_2_2,aoi_2_3,aoi_2_4,aoi_3_0,aoi_3_1,aoi_3_2,aoi_3_3,aoi_3_4,"
        "q_0,served_0,q_1,served_1,q_2,served_2,q_3,served_3");

  const auto empty = format_traces_csv({}, cfg);
  CHECK(count_lines(empty) == 1);
  CHECK(parse_traces_csv(empty, cfg).rows.empty());
}

TEST_CASE("cumulative reward is the running sum of rewards") {
  auto cfg = fig1_preset();
  cfg.seed = 3;
  const auto traces = run(cfg);
  double sum = 0.0;
  for (const auto& tr : traces) {
    sum += tr.reward;
    REQUIRE(tr.cumulative_reward == Catch::Approx(sum).epsilon(1e-12));
    REQUIRE(tr.reward == Catch::Approx(cfg.aoi_weight * tr.aoi_utility - tr.mbs_cost).margin(1e-12));
  }
}

TEST_CASE("CSV round-trips every written field exactly") {
  auto cfg = fig2_preset();
  cfg.horizon_slots = 400;
  cfg.seed = 9;
  const auto traces = run(cfg);
  const auto path = (scratch_dir() / "roundtrip.csv").string();
  write_traces(traces, cfg, path);
  const auto table = read_traces(path, cfg);
  REQUIRE(table.rows.size() == traces.size());
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const auto& a = traces[t];
    const auto& b = table.rows[t];
    REQUIRE(b.slot == a.slot);
    REQUIRE(b.reward == a.reward);
    REQUIRE(b.aoi_utility == a.aoi_utility);
    REQUIRE(b.mbs_cost == a.mbs_cost);
    REQUIRE(b.cumulative_reward == a.cumulative_reward);
    REQUIRE(b.updates_issued == a.updates_issued);
    REQUIRE(b.rsu_aoi_samples == a.rsu_aoi_samples);
    REQUIRE(b.backlog == a.backlog);
    REQUIRE(b.served == a.served);
  }
  CHECK(format_traces_csv(table.rows, cfg) == format_traces_csv(traces, cfg));
}

TEST_CASE("summary statistics agree with the re-parsed CSV") {
  auto cfg = fig1_preset();
  cfg.seed = 4;
  const auto traces = run(cfg);
  const auto s = summarize(traces, cfg);
  CHECK(s.slots == 1000);
  CHECK(s.seed == 4);
  CHECK(s.config_digest == config_digest(cfg));

  double reward = 0.0;
  double mbs = 0.0;
  double q0 = 0.0;
  double q0_max = 0.0;
  std::int64_t served = 0;
  for (const auto& tr : parse_traces_csv(format_traces_csv(traces, cfg), cfg).rows) {
    reward += tr.reward;
    mbs += tr.mbs_cost;
    q0 += tr.backlog[0];
    q0_max = std::max(q0_max, tr.backlog[0]);
    for (auto n : tr.served) served += n;
  }
  CHECK(s.mean_reward == Catch::Approx(reward / 1000.0).margin(1e-9));
  CHECK(s.mean_mbs_cost == Catch::Approx(mbs / 1000.0).margin(1e-9));
  CHECK(s.mean_backlog[0] == Catch::Approx(q0 / 1000.0).margin(1e-9));
  CHECK(s.max_backlog[0] == q0_max);
  CHECK(s.served_count == served);
  CHECK(s.mean_cost == Catch::Approx(s.mean_mbs_cost + s.mean_service_cost).margin(1e-12));

  const auto j = to_json(s);
  CHECK(j.at("slots") == 1000);
  CHECK(j.at("mean_backlog").size() == 4);
}

TEST_CASE("a constant backlog summarises to itself") {
  auto cfg = fig1_preset();
  cfg.num_rsus = 1;
  cfg.num_regions = 5;
  cfg.max_aoi.resize(5);
  cfg.update_cost = Matrix<double>(1, 5, 1.0);
  std::vector<SlotTrace> traces(10);
  for (auto& tr : traces) {
    tr.backlog = {3.0};
    tr.served = {0};
    tr.rsu_aoi_samples.assign(5, 1);
  }
  const auto s = summarize(traces, cfg);
  CHECK(s.mean_backlog[0] == 3.0);
  CHECK(s.max_backlog[0] == 3.0);
}

TEST_CASE("violation counts separate threshold from never_update") {
  auto cfg = fig1_preset();
  cfg.policy = RefreshPolicyKind::Threshold;
  CHECK(summarize(run(cfg), cfg).violation_count == 0);
  cfg.policy = RefreshPolicyKind::NeverUpdate;
  CHECK(summarize(run(cfg), cfg).violation_count > 0);
}

TEST_CASE("summary and file errors") {
  const auto cfg = fig1_preset();
  try {
    summarize({}, cfg);
    FAIL("expected EmptyTraces");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyTraces);
  }
  try {
    write_traces({}, cfg, "/nonexistent-dir/for/sure/traces.csv");
    FAIL("expected IoFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoFailure);
  }
  CHECK_THROWS_AS(read_traces("/nonexistent-dir/traces.csv", cfg), Error);
  CHECK_THROWS_AS(parse_traces_csv("slot,reward\n", cfg), Error);
}

TEST_CASE("CSV quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(split_csv_line("1,\"a,b\",\"x\"\"y\"") == std::vector<std::string>{"1", "a,b", "x\"y"});
  CHECK(split_csv_line("") == std::vector<std::string>{""});
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(6.5) == "6.5");
}
