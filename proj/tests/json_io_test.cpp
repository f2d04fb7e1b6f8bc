#include <gtest/gtest.h>

#include "support.hpp"

namespace gapforge {
namespace {

TEST(Json, OrdinalIndexLadderPartition) {
  EXPECT_EQ(to_json(Ordinal{2, 3}).dump(), "[2,3]");
  EXPECT_EQ(parse_ordinal(Json::parse("[2,3]")), Ordinal(2, 3));
  EXPECT_THROW(parse_ordinal(Json::parse("[2]")), Error);
  EXPECT_THROW(parse_ordinal(Json::parse("[-1,0]")), Error);

  const Index i{{1, 4}, 1};
  EXPECT_EQ(parse_index(to_json(i)), i);
  EXPECT_THROW(parse_index(Json::parse(R"({"ord":[0,0],"side":2})")), Error);

  EXPECT_EQ(parse_ladder(to_json(Ladder::canonical())), Ladder::canonical());
  const Ladder l = Ladder::explicit_tables({{{2, 0}, {{0, 1}, {1, 5}}}});
  EXPECT_EQ(parse_ladder(to_json(l)), l);
  EXPECT_THROW(parse_ladder(Json::parse(R"({"mode":"spiral"})")), Error);

  const SPartition p = alternating_partition(4);
  EXPECT_EQ(parse_partition(to_json(p)), p);
  EXPECT_THROW(parse_partition(Json::parse(R"({"S":[[1,0]],"T":[[1,0]],"D":[]})")), Error);
}

TEST(Json, GapFragmentRoundTrip) {
  Rng rng(1);
  const GapFragment g = testing::random_fragment(rng, {{0, 0}, {1, 3}, {2, 0}}, 9);
  const Json j = to_json(g);
  EXPECT_TRUE(j.at("a").contains("1.3"));
  EXPECT_EQ(parse_gap_fragment(j), g);
  Json bad = j;
  bad["I"] = Json::array();
  EXPECT_THROW(parse_gap_fragment(bad), Error);
  bad = j;
  bad["a"]["0.0"] = {42};
  EXPECT_THROW(parse_gap_fragment(bad), Error);
}

TEST(Json, PConditionRoundTrip) {
  const Json j = Json::parse(R"({"height":3,"entries":[{"ord":[0,1],"a_bits":"010","b_bits":"110"}]})");
  const PCondition p = parse_p_condition(j);
  EXPECT_EQ(p.word({{0, 1}, 0}), FinSet{1});
  EXPECT_EQ(to_json(p), j);
  EXPECT_THROW(parse_p_condition(Json::parse(R"({"height":2,"entries":[{"ord":[0,1],"a_bits":"010","b_bits":"110"}]})")),
               Error);
  EXPECT_THROW(parse_p_condition(Json::parse(R"({"height":1,"entries":[{"ord":[0,1],"a_bits":"1","b_bits":"0"}]})")),
               Error);
}

TEST(Json, QConditionAndReport) {
  const QCondition q{{{0, 1}, {1, 1}}, {{1, 0}}};
  EXPECT_EQ(parse_q_condition(to_json(q)), q);
  const PipelineReport r = pipeline({6, 16, 5, 4}, Ladder::canonical(), alternating_partition(1), 3);
  const Json j = to_json(r);
  for (const char* key : {"seed", "fragment", "W", "witnesses", "failures", "excess_csv", "violations", "ok"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(parse_gap_fragment(j.at("fragment")), r.fragment);
}

TEST(Json, ParseErrorsAreTyped) {
  try {
    parse_json_text("{not json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
  EXPECT_THROW(read_text_file("/nonexistent/gapforge.json"), Error);
}

}  // namespace
}  // namespace gapforge
