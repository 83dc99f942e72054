#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dynanet/aging.hpp"
#include "dynanet/error.hpp"
#include "oracles.hpp"

using namespace dynanet;

namespace {

const std::vector<double> kAges{20, 30, 40, 50, 60};

Trajectory traj(std::vector<double> values, std::size_t n_active = 10, std::string gene = "g",
                CentralityKind kind = CentralityKind::kDegc) {
  return {std::move(gene), kind, std::move(values), n_active};
}

}  // namespace

TEST(Aging, PearsonOfIncreasingLine) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  EXPECT_NEAR(*correlate(v, kAges, CorrelationMethod::kPearson), 1.0, 1e-15);
}

TEST(Aging, ConstantTrajectoryHasNoCorrelation) {
  const std::vector<double> v{2, 2, 2, 2, 2};
  EXPECT_FALSE(correlate(v, kAges, CorrelationMethod::kPearson));
  const auto res = permutation_pvalue(traj(v), kAges, CorrelationMethod::kPearson, {}, 1);
  EXPECT_FALSE(res.r);
  EXPECT_FALSE(res.p);
}

TEST(Aging, LengthChecks) {
  const std::vector<double> v{1, 2, 3};
  EXPECT_THROW(correlate(v, kAges, CorrelationMethod::kPearson), UsageError);
  const std::vector<double> two{1, 2};
  EXPECT_THROW(correlate(two, std::vector<double>{1, 2}, CorrelationMethod::kPearson), UsageError);
}

TEST(Aging, MatchesTextbookFormula) {
  std::mt19937 gen(5);
  std::normal_distribution<double> n;
  std::vector<double> ages(30);
  for (std::size_t i = 0; i < ages.size(); ++i) ages[i] = 10.0 + 3.0 * static_cast<double>(i);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> v(30);
    for (auto& x : v) x = n(gen);
    EXPECT_NEAR(*correlate(v, ages, CorrelationMethod::kPearson), oracle::pearson(v, ages), 1e-12);
  }
}

TEST(Aging, SpearmanUsesAverageRanks) {
  const std::vector<double> v{0, 0, 1, 1, 3};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{1.5, 1.5, 3.5, 3.5, 5}));
  const auto ranks = average_ranks(v);
  EXPECT_NEAR(*correlate(v, kAges, CorrelationMethod::kSpearman), oracle::pearson(ranks, average_ranks(kAges)),
              1e-12);
  const std::vector<double> monotone{1, 4, 9, 16, 100};
  EXPECT_NEAR(*correlate(monotone, kAges, CorrelationMethod::kSpearman), 1.0, 1e-15);
}

TEST(Aging, MonotoneTrajectoryIsSignificant) {
  const auto res = permutation_pvalue(traj({1, 2, 3, 4, 5}), kAges, CorrelationMethod::kPearson, {}, 3);
  // Only the identity ordering reaches r = 1: expected p is 1/120.
  EXPECT_LT(*res.p, 0.03);
  const std::vector<double> ages10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto res10 = permutation_pvalue(traj(ages10), ages10, CorrelationMethod::kPearson, {}, 3);
  EXPECT_LT(*res10.p, 0.01);
}

TEST(Aging, NegationPreservesP) {
  const auto a = permutation_pvalue(traj({3, 1, 4, 1, 5}), kAges, CorrelationMethod::kPearson, {}, 9);
  const auto b = permutation_pvalue(traj({-3, -1, -4, -1, -5}), kAges, CorrelationMethod::kPearson, {}, 9);
  EXPECT_NEAR(*a.r, -*b.r, 1e-15);
  EXPECT_EQ(*a.p, *b.p);
}

TEST(Aging, AffineRescalingPreservesP) {
  for (const auto method : {CorrelationMethod::kPearson, CorrelationMethod::kSpearman}) {
    const std::vector<double> v{0.3, 0.0, 2.5, 1.1, 4.0};
    std::vector<double> w;
    for (const auto x : v) w.push_back(7.0 * x + 2.0);
    const auto a = permutation_pvalue(traj(v), kAges, method, {}, 5);
    const auto b = permutation_pvalue(traj(w), kAges, method, {}, 5);
    EXPECT_EQ(*a.p, *b.p);
  }
}

TEST(Aging, PseudoCountKeepsPPositive) {
  PermutationOptions opts;
  opts.pseudo_count = true;
  opts.n_perm = 99;
  const std::vector<double> ages10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto res = permutation_pvalue(traj(ages10), ages10, CorrelationMethod::kPearson, opts, 3);
  EXPECT_GE(*res.p, 0.01);
}

TEST(Aging, SampledPMatchesExhaustiveEnumeration) {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> v(5);
    for (auto& x : v) x = u(gen);
    const auto exact = oracle::exhaustive_permutation_p(v, kAges);
    const auto res = permutation_pvalue(traj(v), kAges, CorrelationMethod::kPearson, {}, 100 + rep);
    EXPECT_NEAR(*res.p, exact, 3.0 / std::sqrt(1000.0));
  }
}

TEST(Aging, LowActivityGenesSkipped) {
  const std::vector<double> ages10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<Trajectory> ts{traj(ages10, 4, "low"), traj(ages10, 5, "ok")};
  const auto set = predict(ts, ages10);
  EXPECT_EQ(set.skipped_low_activity, 1u);
  ASSERT_EQ(set.predicted.size(), 1u);
  EXPECT_EQ(set.predicted[0].gene, "ok");
  EXPECT_EQ(set.predicted[0].direction, Direction::kPositive);
  EXPECT_EQ(set.predicted[0].supporting, (std::vector<CentralityKind>{CentralityKind::kDegc}));
}

TEST(Aging, MixedDirection) {
  const std::vector<double> ages10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> down(ages10.rbegin(), ages10.rend());
  std::vector<Trajectory> ts{traj(ages10, 10, "g", CentralityKind::kDegc),
                             traj(down, 10, "g", CentralityKind::kBetwc)};
  const auto set = predict(ts, ages10);
  ASSERT_EQ(set.predicted.size(), 1u);
  EXPECT_EQ(set.predicted[0].direction, Direction::kMixed);
  EXPECT_EQ(set.predicted[0].supporting.size(), 2u);
}

TEST(Aging, ScoreFormulaAndRanking) {
  std::vector<PredictionRecord> recs(3);
  recs[0].gene = "b";
  recs[0].per_kind = {{CentralityKind::kDegc, 0.9, 0.009}};
  recs[0].supporting = {CentralityKind::kDegc};
  recs[1].gene = "a";
  recs[1].per_kind = {{CentralityKind::kDegc, 0.9, 0.009}};
  recs[1].supporting = {CentralityKind::kDegc};
  recs[2].gene = "c";
  for (const auto k : kAllCentralities) {
    recs[2].per_kind.push_back({k, -0.5, 0.0});
    recs[2].supporting.push_back(k);
  }
  score_and_rank(recs);
  EXPECT_EQ(recs[0].gene, "c");
  EXPECT_EQ(recs[0].score, 7.0);
  EXPECT_NEAR(recs[1].score, 0.991, 1e-12);
  EXPECT_EQ(recs[1].gene, "a");
  EXPECT_EQ(recs[2].gene, "b");
  EXPECT_EQ(recs[2].rank, 3u);
}

TEST(Aging, ScoreGrowsWithSupport) {
  std::mt19937 gen(4);
  std::uniform_real_distribution<double> u(0.0, 0.01);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<KindResult> per;
    for (const auto k : kAllCentralities) per.push_back({k, 0.5, u(gen)});
    std::vector<PredictionRecord> recs(2);
    recs[0].gene = "few";
    recs[1].gene = "many";
    recs[0].per_kind = recs[1].per_kind = per;
    recs[0].supporting = {per[0].kind, per[1].kind};
    recs[1].supporting = {per[0].kind, per[1].kind, per[2].kind};
    score_and_rank(recs);
    EXPECT_EQ(recs[0].gene, "many");
  }
}

TEST(Aging, PredictionSetMonotoneInThreshold) {
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double> ages10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<Trajectory> ts;
  for (int g = 0; g < 60; ++g) {
    std::vector<double> v(10);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = u(gen) + 0.05 * g * static_cast<double>(i) / 60.0;
    ts.push_back(traj(v, 10, "g" + std::to_string(g)));
  }
  PredictOptions strict, loose;
  strict.p_threshold = 0.01;
  loose.p_threshold = 0.1;
  const auto a = predict(ts, ages10, strict);
  const auto b = predict(ts, ages10, loose);
  for (const auto& rec : a.predicted) {
    EXPECT_TRUE(std::any_of(b.predicted.begin(), b.predicted.end(), [&](const auto& r) { return r.gene == rec.gene; }));
  }
  EXPECT_LE(a.predicted.size(), b.predicted.size());
}

TEST(Aging, PredictIsDeterministicAcrossThreads) {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double> ages10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<Trajectory> ts;
  for (int g = 0; g < 40; ++g) {
    std::vector<double> v(10);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = u(gen) + 0.1 * static_cast<double>(i) * (g % 2);
    ts.push_back(traj(v, 10, "g" + std::to_string(g)));
  }
  PredictOptions one, four;
  four.threads = 4;
  const auto a = predict(ts, ages10, one);
  std::reverse(ts.begin(), ts.end());
  const auto b = predict(ts, ages10, four);
  ASSERT_EQ(a.predicted.size(), b.predicted.size());
  for (std::size_t i = 0; i < a.predicted.size(); ++i) {
    EXPECT_EQ(a.predicted[i].gene, b.predicted[i].gene);
    EXPECT_EQ(a.predicted[i].score, b.predicted[i].score);
  }
}

TEST(Aging, TrajectoriesAreZeroWhereAbsent) {
  const auto net = parse_edge_list("a b\nb c\n").network;
  const ExpressionMatrix m({"a", "b", "c"}, {1, 2, 3},
                           {0.01, 0.01, 0.5, 0.01, 0.01, 0.01, 0.5, 0.01, 0.01});
  const auto series = build_series(net, m);
  const std::vector<CentralityKind> kinds{CentralityKind::kDegc};
  const auto ts = build_trajectories(series, kinds);
  ASSERT_EQ(ts.size(), 3u);
  EXPECT_EQ(ts[0].gene, "a");
  EXPECT_EQ(ts[0].values, (std::vector<double>{1, 1, 0}));
  EXPECT_EQ(ts[0].n_active, 2u);
  EXPECT_EQ(ts[2].values, (std::vector<double>{0, 1, 1}));
}

TEST(Aging, ControlWithOneRepeatHasNoZ) {
  const auto net = parse_edge_list("a b\nb c\nc d\nd a\n").network;
  const ExpressionMatrix m({"a", "b", "c", "d"}, {1, 2, 3, 4, 5, 6},
                           std::vector<std::optional<double>>(24, 0.01));
  ControlOptions opts;
  opts.n_repeats = 1;
  opts.kinds = {CentralityKind::kDegc};
  const auto res = randomized_control(net, universe_activity(net, m), opts);
  EXPECT_EQ(res.counts.size(), 1u);
  EXPECT_FALSE(res.z);
  EXPECT_FALSE(res.sd);
}
