#include "truelearn/dataset.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

namespace truelearn {
namespace {

TEST(LoadEvents, ThreeRowsOneLearner) {
  const auto ds = parse_events(
      "learner_id,order_index,label,topics\n"
      "u1,0,1,10:0.5\n"
      "u1,1,0,11:0.25;12:0.75\n"
      "u1,2,1,10:1\n");
  ASSERT_EQ(ds.learners.size(), 1u);
  const auto& s = ds.learners.at("u1");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].label, Engagement::kEngaged);
  EXPECT_EQ(s[1].label, Engagement::kNotEngaged);
  EXPECT_EQ(s[2].label, Engagement::kEngaged);
  EXPECT_EQ(s[1].topics, (std::vector<TopicCoverage>{{11, 0.25}, {12, 0.75}}));
  EXPECT_EQ(ds.split.at("u1"), Split::kTest);
}

TEST(LoadEvents, EmptyFileWarns) {
  LoadReport rep;
  const auto ds = parse_events("", {}, &rep);
  EXPECT_TRUE(ds.learners.empty());
  ASSERT_EQ(rep.warnings.size(), 1u);

  const auto header_only = parse_events("learner_id,order_index,label,topics\n", {}, &rep);
  EXPECT_TRUE(header_only.learners.empty());
  EXPECT_FALSE(rep.warnings.empty());
}

TEST(LoadEvents, ColumnsFoundByName) {
  const auto ds = parse_events(
      "topics,label,learner_id,order_index\n"
      "5:0.1,1,a,3\n");
  EXPECT_EQ(ds.learners.at("a")[0].order_index, 3);
}

TEST(LoadEvents, SortsSessionsByOrderIndex) {
  const auto ds = parse_events(
      "learner_id,order_index,label,topics\n"
      "u,7,1,1:0.5\n"
      "u,2,0,2:0.5\n"
      "u,4,1,3:0.5\n");
  const auto& s = ds.learners.at("u");
  EXPECT_EQ(s[0].order_index, 2);
  EXPECT_EQ(s[1].order_index, 4);
  EXPECT_EQ(s[2].order_index, 7);
}

TEST(LoadEvents, MalformedRowsCountedWithFirstLine) {
  try {
    parse_events(
        "learner_id,order_index,label,topics\n"
        "u,0,1,1:0.5\n"
        "u,1,2,1:0.5\n"
        "u,x,1,1:0.5\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("2 malformed row(s)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  }
}

TEST(LoadEvents, DuplicateOrderIndexIsFatal) {
  EXPECT_THROW(parse_events("learner_id,order_index,label,topics\n"
                            "u,0,1,1:0.5\n"
                            "u,0,0,2:0.5\n"),
               DataError);
}

TEST(LoadEvents, DuplicateTopicInEventIsMalformed) {
  EXPECT_THROW(parse_events("learner_id,order_index,label,topics\nu,0,1,1:0.5;1:0.2\n"),
               DataError);
}

TEST(LoadEvents, TooManyTopicsIsMalformed) {
  std::string topics;
  for (int i = 0; i < 11; ++i) topics += (i ? ";" : "") + std::to_string(i) + ":0.5";
  const std::string text = "learner_id,order_index,label,topics\nu,0,1," + topics + "\n";
  EXPECT_THROW(parse_events(text), DataError);

  LoadOptions top;
  top.top_k_topics = 3;
  const auto ds = parse_events(text, top);
  EXPECT_EQ(ds.learners.at("u")[0].topics.size(), 3u);
}

TEST(LoadEvents, TopKKeepsDeepestInFileOrder) {
  LoadOptions opts;
  opts.top_k_topics = 2;
  const auto ds = parse_events(
      "learner_id,order_index,label,topics\nu,0,1,1:0.1;2:0.9;3:0.5;4:0.9\n", opts);
  EXPECT_EQ(ds.learners.at("u")[0].topics, (std::vector<TopicCoverage>{{2, 0.9}, {4, 0.9}}));
}

TEST(LoadEvents, ClampsDepthsAndDropsEmptyEvents) {
  LoadReport rep;
  const auto ds = parse_events(
      "learner_id,order_index,label,topics\n"
      "u,0,1,1:1.5;2:-0.25\n"
      "u,1,1,\n",
      {}, &rep);
  EXPECT_EQ(rep.clamped_depths, 2u);
  EXPECT_EQ(rep.dropped_empty_events, 1u);
  const auto& s = ds.learners.at("u");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].topics, (std::vector<TopicCoverage>{{1, 1.0}, {2, 0.0}}));
}

TEST(LoadEvents, JsonLinesVariants) {
  LoadOptions opts;
  opts.format = EventFormat::kJsonLines;
  const auto ds = parse_events(
      R"({"learner_id":"a","order_index":0,"label":1,"topics":"1:0.5;2:0.25"}
{"learner_id":"a","order_index":1,"label":0,"topics":[[3,0.5]]}

{"learner_id":"a","order_index":2,"label":1,"topics":[{"topic":4,"depth":0.125}]}
)",
      opts);
  const auto& s = ds.learners.at("a");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].topics, (std::vector<TopicCoverage>{{1, 0.5}, {2, 0.25}}));
  EXPECT_EQ(s[1].topics, (std::vector<TopicCoverage>{{3, 0.5}}));
  EXPECT_EQ(s[1].label, Engagement::kNotEngaged);
  EXPECT_EQ(s[2].topics, (std::vector<TopicCoverage>{{4, 0.125}}));

  EXPECT_THROW(parse_events("{not json}\n", opts), DataError);
}

Dataset random_dataset(std::mt19937_64& rng, std::size_t n_learners) {
  std::uniform_int_distribution<int> n_events(1, 12);
  std::uniform_int_distribution<int> n_topics(1, 10);
  std::uniform_int_distribution<TopicId> topic(0, 1'000'000);
  std::uniform_real_distribution<double> depth(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  Dataset ds;
  for (std::size_t l = 0; l < n_learners; ++l) {
    const LearnerId id = "learner \"" + std::to_string(l) + "\", x";
    auto& session = ds.learners[id];
    const int n = n_events(rng);
    for (int e = 0; e < n; ++e) {
      EngagementEvent ev;
      ev.learner_id = id;
      ev.order_index = 3 * e + 1;
      std::set<TopicId> used;
      const int k = n_topics(rng);
      while (static_cast<int>(ev.topics.size()) < k) {
        const TopicId t = topic(rng);
        if (used.insert(t).second) ev.topics.push_back({t, depth(rng)});
      }
      ev.label = coin(rng) ? Engagement::kEngaged : Engagement::kNotEngaged;
      session.push_back(ev);
    }
    ds.split[id] = Split::kTest;
  }
  return ds;
}

TEST(LoadEvents, WriteThenReadRoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ds = random_dataset(rng, 1 + trial % 7);
    const auto text = write_events_csv(ds);
    EXPECT_EQ(parse_events(text), ds);
    EXPECT_EQ(write_events_csv(parse_events(text)), text);
  }
}

Dataset ids_only(std::size_t n) {
  Dataset ds;
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = "L" + std::to_string(i);
    ds.learners[id] = {EngagementEvent{id, 0, {{1, 0.5}}, Engagement::kEngaged}};
    ds.split[id] = Split::kTest;
  }
  return ds;
}

TEST(SplitLearners, SevenThreeAndDeterministic) {
  const auto a = split_learners(ids_only(10), 0.7, 42);
  const auto b = split_learners(ids_only(10), 0.7, 42);
  EXPECT_EQ(a.learners_in(Split::kTrain).size(), 7u);
  EXPECT_EQ(a.learners_in(Split::kTest).size(), 3u);
  EXPECT_EQ(a.split, b.split);
  EXPECT_NE(split_learners(ids_only(10), 0.7, 43).split, a.split);
}

TEST(SplitLearners, TwoLearnersHalf) {
  const auto s = split_learners(ids_only(2), 0.5, 1);
  EXPECT_EQ(s.learners_in(Split::kTrain).size(), 1u);
  EXPECT_EQ(s.learners_in(Split::kTest).size(), 1u);
}

TEST(SplitLearners, LargeCohortIsPartition) {
  const auto ds = split_learners(ids_only(20000), 0.7, 5);
  const auto train = ds.learners_in(Split::kTrain);
  const auto test = ds.learners_in(Split::kTest);
  EXPECT_EQ(train.size(), 14000u);
  EXPECT_EQ(test.size(), 6000u);
  std::set<LearnerId> all(train.begin(), train.end());
  for (const auto& id : test) EXPECT_TRUE(all.insert(id).second);
  EXPECT_EQ(all.size(), 20000u);
  for (const auto& [id, s] : ds.learners) EXPECT_TRUE(all.count(id));
}

TEST(SplitLearners, Errors) {
  EXPECT_THROW(split_learners(ids_only(1), 0.7, 1), DataError);
  EXPECT_THROW(split_learners(ids_only(5), 0.0, 1), std::invalid_argument);
  EXPECT_THROW(split_learners(ids_only(5), 1.0, 1), std::invalid_argument);
  // Both sides stay non-empty even when rounding would empty one.
  const auto s = split_learners(ids_only(3), 0.9, 1);
  EXPECT_EQ(s.learners_in(Split::kTest).size(), 1u);
}

TEST(TopLearners, MostEventsTieBrokenById) {
  Dataset ds;
  const auto add = [&](const LearnerId& id, int n) {
    for (int i = 0; i < n; ++i) {
      ds.learners[id].push_back(EngagementEvent{id, i, {{1, 0.5}}, Engagement::kEngaged});
    }
    ds.split[id] = Split::kTrain;
  };
  add("c", 3);
  add("b", 5);
  add("a", 3);
  add("d", 1);
  const auto top = top_learners(ds, 2);
  EXPECT_EQ(top.learners.size(), 2u);
  EXPECT_TRUE(top.learners.count("b"));
  EXPECT_TRUE(top.learners.count("a"));
  EXPECT_EQ(top.split.at("a"), Split::kTrain);
  EXPECT_EQ(top_learners(ds, 10).learners.size(), 4u);
}

}  // namespace
}  // namespace truelearn
