#include <gtest/gtest.h>

#include "shallowsep/algo1.hpp"
#include "shallowsep/verify.hpp"
#include "test_support.hpp"

using namespace shallowsep;
namespace t = shallowsep::testing;

namespace {

ProblemParams params(int h, int ell, double eps = 0.5, std::uint64_t seed = 1) {
  ProblemParams p;
  p.h = h;
  p.ell = ell;
  p.epsilon = eps;
  p.seed = seed;
  return p;
}

RunOptions checked() {
  RunOptions o;
  o.check_invariants = true;
  return o;
}

}  // namespace

// Unit weights: after two singleton trees no component of V' is heavy, so the
// loop stops with M = {0, 1} as a valid separator.
TEST(Algo1, K5UnitWeightsStopsAtBalance) {
  auto g = t::complete(5);
  auto out = run_algorithm1(g, params(5, 1), {}, checked());
  ASSERT_TRUE(out.is_separator());
  EXPECT_EQ(out.vertices, (std::vector<Vertex>{0, 1}));
  EXPECT_TRUE(verify_separator(g, out.vertices).ok);
}

// With the last vertex carrying most of the weight V' stays heavy until every
// slot is full, which forces the certificate.
TEST(Algo1, HeavyKhGivesCertificate) {
  for (Vertex h = 2; h <= 7; ++h) {
    auto k = t::complete(h);
    std::vector<Edge> e(k.edges().begin(), k.edges().end());
    std::vector<double> w(h, 1.0);
    w[h - 1] = 10.0 * h;
    auto g = WeightedGraph::from_edges(h, e, w);
    auto out = run_algorithm1(g, params(static_cast<int>(h), 1), {}, checked());
    ASSERT_TRUE(out.is_certificate()) << h;
    EXPECT_EQ(out.trees.size(), h);
    EXPECT_EQ(out.cross_edges.size(), h * (h - 1) / 2);
    auto r = verify_minor_certificate(g, out.trees, static_cast<int>(h), out.radius_bound);
    EXPECT_TRUE(r.ok) << h << " " << r.detail;
  }
}

TEST(Algo1, SingleVertex) {
  auto g = t::path(1);
  auto out = run_algorithm1(g, params(3, 2), {}, checked());
  ASSERT_TRUE(out.is_separator());
  EXPECT_TRUE(verify_separator(g, out.vertices).ok);
  EXPECT_LE(out.vertices.size(), 1u);
}

TEST(Algo1, Grid31Separator) {
  auto g = t::grid(31, 31);
  auto out = run_algorithm1(g, params(5, 4), {}, checked());
  ASSERT_TRUE(out.is_separator()) << to_string(out.kind);
  auto r = verify_separator(g, out.vertices);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_LT(out.vertices.size(), g.num_vertices() / 2);
  EXPECT_GT(out.stats.get("iterations"), 0);
}

TEST(Algo1, HeavyBlownUpCliqueCertificate) {
  // K_6 with each vertex replaced by a 3-vertex path; adjacent branch sets
  // are joined at their middle vertices. The pendant vertex 17 is heavy.
  std::vector<Edge> e;
  for (Vertex i = 0; i < 6; ++i) e.push_back({3 * i, 3 * i + 1}), e.push_back({3 * i + 1, 3 * i + 2});
  for (Vertex i = 0; i < 6; ++i)
    for (Vertex j = i + 1; j < 6; ++j) e.push_back({3 * i + 1, 3 * j + 1});
  std::vector<double> w(18, 1.0);
  w[17] = 100;
  auto g = WeightedGraph::from_edges(18, e, w);
  auto out = run_algorithm1(g, params(6, 1), {}, checked());
  ASSERT_TRUE(out.is_certificate());
  EXPECT_TRUE(verify_minor_certificate(g, out.trees, 6, out.radius_bound).ok);
}

TEST(Algo1, PathAndCycleSeparate) {
  for (Vertex n : {2u, 3u, 10u, 101u}) {
    auto g = t::path(n);
    auto out = run_algorithm1(g, params(3, 2), {}, checked());
    ASSERT_TRUE(out.is_separator() || out.is_certificate());
    EXPECT_TRUE(verify_outcome(g, out, 3).ok) << n;
  }
  auto c = t::cycle(100);
  auto out = run_algorithm1(c, params(4, 3), {}, checked());
  EXPECT_TRUE(verify_outcome(c, out, 4).ok);
}

TEST(Algo1, RandomInstancesVerify) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    const Vertex n = 5 + static_cast<Vertex>(rng.below(120));
    const std::size_t m = n + rng.below(3 * n);
    auto g = t::gnm(n, m, seed, seed % 2 == 0);
    const int h = 2 + static_cast<int>(rng.below(5));
    const int ell = 1 + static_cast<int>(rng.below(4));
    const double eps = seed % 3 == 0 ? 1.0 : 0.5;
    auto out = run_algorithm1(g, params(h, ell, eps, seed), {}, checked());
    auto r = verify_outcome(g, out, h);
    EXPECT_TRUE(r.ok) << "seed " << seed << ": " << r.kind << " " << r.detail;
    if (out.is_certificate()) {
      EXPECT_LE(out.radius_bound, std::max<Dist>(1, 4 * params(h, ell, eps).oracle_k() * params(h, ell).rho(n)));
    }
  }
}

TEST(Algo1, PaddingKeepsOutputsValid) {
  Budgets b;
  b.pad_trees = 1;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = t::gnm(80, 200, seed);
    auto out = run_algorithm1(g, params(4, 2, 0.5, seed), b, checked());
    EXPECT_TRUE(verify_outcome(g, out, 4).ok) << seed;
  }
  auto g = t::grid(15, 15);
  auto out = run_algorithm1(g, params(5, 3), b, checked());
  EXPECT_TRUE(verify_outcome(g, out, 5).ok);
}

TEST(Algo1, Deterministic) {
  auto g = t::gnm(200, 600, 7);
  auto a = run_algorithm1(g, params(5, 2, 0.5, 3));
  auto b = run_algorithm1(g, params(5, 2, 0.5, 3));
  EXPECT_EQ(a.kind, b.kind);
  EXPECT_EQ(a.vertices, b.vertices);
  EXPECT_EQ(a.trees.size(), b.trees.size());
}

TEST(Algo1, RegimeErrors) {
  auto g = t::path(4);
  EXPECT_THROW(run_algorithm1(g, params(1, 2)), RegimeError);
  EXPECT_THROW(run_algorithm1(g, params(3, 0)), RegimeError);
  EXPECT_THROW(run_algorithm1(g, params(3, 2, 0.0)), RegimeError);
}

TEST(Verify, SeparatorChecker) {
  auto g = t::path(7);
  EXPECT_TRUE(verify_separator(g, {3}).ok);
  EXPECT_FALSE(verify_separator(g, {0}).ok);
  EXPECT_FALSE(verify_separator(g, {}).ok);
  EXPECT_EQ(verify_separator(g, {9}).kind, "range");
  // 2/3 of 6 is 4: a component of exactly 4 passes.
  auto p6 = t::path(6);
  EXPECT_TRUE(verify_separator(p6, {4}).ok);
  EXPECT_FALSE(verify_separator(p6, {5}).ok);
}

TEST(Verify, CertificateChecker) {
  auto g = t::complete(3);
  auto tree = [](Vertex v) { return make_tree(-1, v, {v}, [](Vertex) { return kNoVertex; }); };
  std::vector<TreeRecord> ts{tree(0), tree(1), tree(2)};
  EXPECT_TRUE(verify_minor_certificate(g, ts, 3, 0).ok);
  EXPECT_EQ(verify_minor_certificate(g, ts, 4, 0).kind, "count");
  ts[2] = tree(1);
  EXPECT_EQ(verify_minor_certificate(g, ts, 3, 0).kind, "disjointness");
  auto p = t::path(3);
  std::vector<TreeRecord> two{tree(0), tree(2)};
  EXPECT_EQ(verify_minor_certificate(p, two, 2, 0).kind, "adjacency");
  auto long_tree = make_tree(-1, 0, {0, 1, 2}, [](Vertex v) { return v - 1; });
  EXPECT_EQ(verify_minor_certificate(p, {long_tree}, 1, 1).kind, "radius");
  EXPECT_TRUE(verify_minor_certificate(p, {long_tree}, 1, 2).ok);
}
