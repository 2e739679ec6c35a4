#include "truelearn/config.hpp"

#include <gtest/gtest.h>

#include <random>

namespace truelearn {
namespace {

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.01, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 0.99);
  std::uniform_int_distribution<int> pick(0, 100);
  constexpr std::size_t kOmegas[] = {0, 1, 3, 5, 10};
  RunConfig c;
  c.model.beta = pos(rng);
  c.model.perf_beta = pos(rng);
  c.model.draw_margin = pos(rng);
  c.model.dynamics_tau = unit(rng);
  c.model.decision_threshold = unit(rng) + 0.005;
  c.model.depth_skill_level = pos(rng) - 1.5;
  c.propagation.sr_metric = static_cast<SRMetric>(pick(rng) % 7);
  const auto k = kOmegas[pick(rng) % 5];
  c.propagation.omega = k == 0 ? OmegaSize::all() : OmegaSize::top(k);
  c.propagation.mixing = pick(rng) % 2 ? MixingMode::kInverseStandardError
                                       : MixingMode::kSemanticRelatedness;
  c.propagation.variance_source = pick(rng) % 2 ? VarianceSource::kFixedBeta
                                                : VarianceSource::kSourceTopic;
  c.edge_threshold = unit(rng);
  return c;
}

TEST(Config, EmptyTextGivesDefaults) { EXPECT_EQ(parse_config(""), RunConfig{}); }

TEST(Config, ParsesKeysCommentsAndBlanks) {
  const auto c = parse_config(
      "# tuned on the train split\n"
      "\n"
      "draw_margin = 0.25   # eps\n"
      "  OMEGA=3\n"
      "sr_metric = mw\r\n"
      "mixing_mode = inverse_standard_error\n");
  EXPECT_EQ(c.model.draw_margin, 0.25);
  EXPECT_EQ(c.propagation.omega, OmegaSize::top(3));
  EXPECT_EQ(c.propagation.sr_metric, SRMetric::kMW);
  EXPECT_EQ(c.propagation.mixing, MixingMode::kInverseStandardError);
  EXPECT_EQ(c.model.beta, RunConfig{}.model.beta);
}

TEST(Config, BaseValuesSurviveUnsetKeys) {
  RunConfig base;
  base.model.beta = 2.0;
  EXPECT_EQ(parse_config("draw_margin = 0.1", base).model.beta, 2.0);
}

TEST(Config, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto c = random_config(rng);
    EXPECT_EQ(parse_config(write_config(c)), c) << write_config(c);
  }
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("bogus = 1"), ConfigError);
  EXPECT_THROW(parse_config("beta 1"), ConfigError);
  EXPECT_THROW(parse_config("beta = abc"), ConfigError);
  EXPECT_THROW(parse_config("beta = nan"), ConfigError);
  EXPECT_THROW(parse_config("beta = -1"), ConfigError);
  EXPECT_THROW(parse_config("draw_margin = 0"), ConfigError);
  EXPECT_THROW(parse_config("omega = 4"), ConfigError);
  EXPECT_THROW(parse_config("sr_metric = cosine"), ConfigError);
  EXPECT_THROW(parse_config("edge_threshold = 1"), ConfigError);
}

TEST(Config, ErrorNamesTheLine) {
  try {
    parse_config("beta = 1\n\nomega = 7\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, MissingFileIsConfigError) {
  EXPECT_THROW(load_config("/nonexistent/truelearn.cfg"), ConfigError);
}

TEST(Grid, RowsOverrideBase) {
  RunConfig base;
  base.model.beta = 1.5;
  const auto g = parse_grid("draw_margin,omega\n0.1,1\n# skipped\n0.2,all\n", base);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].model.draw_margin, 0.1);
  EXPECT_EQ(g[0].propagation.omega, OmegaSize::top(1));
  EXPECT_EQ(g[1].model.draw_margin, 0.2);
  EXPECT_TRUE(g[1].propagation.omega.is_all());
  EXPECT_EQ(g[0].model.beta, 1.5);
  EXPECT_EQ(g[1].model.beta, 1.5);
}

TEST(Grid, Errors) {
  EXPECT_THROW(parse_grid("", {}), ConfigError);
  EXPECT_THROW(parse_grid("draw_margin\n", {}), ConfigError);
  EXPECT_THROW(parse_grid("eps\n0.1\n", {}), ConfigError);
  EXPECT_THROW(parse_grid("beta,beta\n1,2\n", {}), ConfigError);
  EXPECT_THROW(parse_grid("beta,omega\n1\n", {}), ConfigError);
  EXPECT_THROW(parse_grid("beta\n-1\n", {}), ConfigError);
  EXPECT_THROW(load_grid("/nonexistent/grid.csv", {}), ConfigError);
}

TEST(Grid, WrittenConfigsAsGridRowsProperty) {
  std::mt19937_64 rng(12);
  std::vector<RunConfig> configs;
  std::string text;
  for (int i = 0; i < 40; ++i) configs.push_back(random_config(rng));
  const auto entries = config_entries(configs[0]);
  for (std::size_t c = 0; c < entries.size(); ++c) text += (c ? "," : "") + entries[c].first;
  text += "\n";
  for (const auto& cfg : configs) {
    const auto row = config_entries(cfg);
    for (std::size_t c = 0; c < row.size(); ++c) text += (c ? "," : "") + row[c].second;
    text += "\n";
  }
  EXPECT_EQ(parse_grid(text, {}), configs);
}

}  // namespace
}  // namespace truelearn
