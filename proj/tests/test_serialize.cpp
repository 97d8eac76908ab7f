#include <gtest/gtest.h>

#include "shallowsep/serialize.hpp"
#include "shallowsep/shallowsep.hpp"

using namespace shallowsep;

namespace {

ProblemParams params(int h, int ell) {
  ProblemParams p;
  p.h = h;
  p.ell = ell;
  return p;
}

}  // namespace

TEST(Serialize, SeparatorRoundTrip) {
  auto g = gen::grid(16, 16);
  auto out = run_algorithm1(g, params(5, 3));
  ASSERT_TRUE(out.is_separator());
  const Json j = outcome_to_json(out);
  EXPECT_EQ(outcome_to_json(outcome_from_json(Json::parse(j.dump()))), j);
}

TEST(Serialize, CertificateRoundTripStillVerifies) {
  auto k = gen::complete(5);
  std::vector<Edge> e(k.edges().begin(), k.edges().end());
  std::vector<double> w(5, 1.0);
  w[4] = 50;
  auto g = WeightedGraph::from_edges(5, e, w);
  auto out = run_algorithm1(g, params(5, 1));
  ASSERT_TRUE(out.is_certificate());
  auto back = outcome_from_json(Json::parse(outcome_to_json(out).dump()));
  EXPECT_EQ(back.trees.size(), 5u);
  EXPECT_EQ(back.radius_bound, out.radius_bound);
  EXPECT_TRUE(verify_outcome(g, back, 5).ok);
}

TEST(Serialize, ClusteringRoundTrip) {
  auto g = gen::grid(12, 12);
  auto res = build_nested(g, params(5, 9), 9);
  ASSERT_TRUE(res.clustering);
  const Json j = clustering_to_json(*res.clustering);
  const Clustering back = clustering_from_json(Json::parse(j.dump()));
  EXPECT_EQ(clustering_to_json(back), j);
  EXPECT_TRUE(verify_clustering(g, back, 9).ok);
}

TEST(Serialize, RejectsMalformed) {
  EXPECT_THROW(outcome_from_json(Json::parse(R"({"schema": 1})")), Error);
  EXPECT_THROW(outcome_from_json(Json::parse(R"({"schema": 2, "type": "separator", "vertices": []})")), Error);
  EXPECT_THROW(outcome_from_json(Json::parse(R"({"schema": 1, "type": "wat"})")), Error);
  EXPECT_THROW(clustering_from_json(Json::parse(R"({"schema": 1, "n": 3})")), Error);
}
