#include "kreg/errors.hpp"
#include "kreg/experiment_config.hpp"
#include "kreg/io.hpp"
#include "kreg/rng.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace kreg {
namespace {

const std::filesystem::path kConfigs = std::filesystem::path(KREG_SOURCE_DIR) / "configs";

nlohmann::json minimal() {
  return nlohmann::json::parse(R"({
    "kernel": {"family": "gaussian", "shape": 2},
    "domain": {"lower": [0], "upper": [1], "grid": 33},
    "sequence": {"generator": "halton"},
    "target": {"centers": [[0.4]], "coefficients": [1]},
    "seed": 1
  })");
}

TEST(Config, BundledConfigsParse) {
  for (const auto& entry : std::filesystem::directory_iterator(kConfigs)) {
    const auto doc = nlohmann::json::parse(read_file(entry.path()));
    EXPECT_NO_THROW(config_from_json(doc)) << entry.path();
  }
}

TEST(Config, DefaultsApplied) {
  const auto c = config_from_json(minimal());
  EXPECT_EQ(c.n_schedule, default_schedule());
  EXPECT_EQ(c.generator, GeneratorKind::Halton);
  EXPECT_EQ(c.holder.source, HolderSource::Estimated);
  EXPECT_FALSE(c.avoid_ball);
}

TEST(Config, DefaultScheduleIsPowersOfTwo) {
  const std::vector<std::size_t> expected{4, 8, 16, 32, 64, 128, 256, 512};
  EXPECT_EQ(default_schedule(), expected);
}

TEST(Config, RoundTrips) {
  auto doc = minimal();
  doc["sequence"]["avoid_ball"] = {{"center", {0.5}}, {"radius", 0.1}};
  doc["jitter"] = "auto";
  const auto c = config_from_json(doc);
  const auto again = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(again), config_to_json(c));
  ASSERT_TRUE(again.avoid_ball);
  EXPECT_EQ(again.avoid_ball->radius, 0.1);
  EXPECT_EQ(again.jitter, JitterPolicy::automatic());
}

TEST(Config, Violations) {
  auto expect_error = [](const std::function<void(nlohmann::json&)>& edit) {
    auto doc = minimal();
    edit(doc);
    EXPECT_THROW(config_from_json(doc), ConfigError) << doc.dump();
  };
  expect_error([](auto& d) { d.erase("kernel"); });
  expect_error([](auto& d) { d.erase("target"); });
  expect_error([](auto& d) { d["extra"] = 1; });
  expect_error([](auto& d) { d["n_schedule"] = {4, 4, 8}; });
  expect_error([](auto& d) { d["n_schedule"] = {0, 4}; });
  expect_error([](auto& d) { d["target"]["centers"] = {{1.5}}; });
  expect_error([](auto& d) { d["target"]["coefficients"] = {1, 2}; });
  expect_error([](auto& d) { d["target"]["centers"] = {{0.1, 0.2}}; });
  expect_error([](auto& d) { d["sequence"]["generator"] = "sobol"; });
  expect_error([](auto& d) { d["sequence"] = {{"generator", "explicit"}}; });
  expect_error([](auto& d) { d["domain"]["lower"] = {2}; });
  expect_error([](auto& d) { d["jitter"] = "lots"; });
  expect_error([](auto& d) { d["holder"] = {{"source", "declared"}}; });
  expect_error([](auto& d) { d["holder"] = {{"source", "estimated"}, {"pairs", 10}}; });
  expect_error([](auto& d) { d["seed"] = -1; });
}

TEST(Config, ExplicitSequenceAndDeclaredHolder) {
  auto doc = minimal();
  doc["sequence"] = {{"generator", "explicit"}, {"points", {{0.1}, {0.6}, {0.9}}}};
  doc["holder"] = {{"source", "declared"}, {"alpha", 0.5}, {"constant", 2.0}};
  doc["n_schedule"] = {1, 2, 3};
  const auto c = config_from_json(doc);
  EXPECT_EQ(c.explicit_points.rows(), 3);
  EXPECT_EQ(c.holder.alpha, 0.5);
  EXPECT_EQ(c.holder.constant, 2.0);
}

TEST(Seeds, SplittingRule) {
  const auto s = resolve_seeds(2024);
  EXPECT_EQ(s.master, 2024u);
  EXPECT_EQ(s.sequence, splitmix64(2024u ^ fnv1a64("sequence")));
  EXPECT_EQ(s.target, splitmix64(2024u ^ fnv1a64("target")));
  EXPECT_EQ(s.holder, splitmix64(2024u ^ fnv1a64("holder")));
  EXPECT_NE(s.sequence, s.target);
}

TEST(Seeds, ReferenceValues) {
  // Published reference values for splitmix64 and FNV-1a.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafull);
}

TEST(Target, RandomTargetIsSeededAndInsideDomain) {
  auto doc = minimal();
  doc["target"] = {{"random", {{"terms", 5}, {"coefficient_range", {-2, 2}}}}};
  const auto c = config_from_json(doc);
  const auto a = build_target(c, resolve_seeds(9));
  const auto b = build_target(c, resolve_seeds(9));
  ASSERT_EQ(a.size(), 5u);
  EXPECT_TRUE((a.centers().array() == b.centers().array()).all());
  EXPECT_TRUE((a.coefficients().array() == b.coefficients().array()).all());
  for (Eigen::Index i = 0; i < 5; ++i) {
    EXPECT_TRUE(c.domain.contains(row(a.centers(), i)));
    EXPECT_GE(a.coefficients()[i], -2.0);
    EXPECT_LT(a.coefficients()[i], 2.0);
  }
}

}  // namespace
}  // namespace kreg
