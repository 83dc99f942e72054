#include <gtest/gtest.h>

#include <algorithm>

#include "dynanet/error.hpp"
#include "dynanet/models.hpp"
#include "oracles.hpp"

using namespace dynanet;

namespace {

ModelSpec spec(ModelFamily f, std::size_t n, std::size_t m, std::uint64_t seed = 1) {
  ModelSpec s;
  s.family = f;
  s.target_nodes = n;
  s.target_edges = m;
  s.seed = seed;
  return s;
}

std::vector<std::size_t> degrees(const Network& net) {
  std::vector<std::size_t> d;
  for (NodeIndex v = 0; v < net.node_count(); ++v) d.push_back(net.degree(v));
  return d;
}

}  // namespace

TEST(Models, FamilyNames) {
  for (const auto f : kAllFamilies) EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_EQ(parse_family("geogd"), ModelFamily::kGEOGD);
  EXPECT_FALSE(parse_family("STICKY"));
}

TEST(Models, MaximumDensityErIsComplete) {
  const auto net = generate(spec(ModelFamily::kER, 10, 45));
  EXPECT_EQ(net.node_count(), 10u);
  EXPECT_EQ(net.edge_count(), 45u);
}

TEST(Models, ErHitsEdgeCountExactly) {
  for (const std::size_t m : {0u, 1u, 100u, 2000u, 4900u}) {
    const auto net = generate(spec(ModelFamily::kER, 100, m, m));
    EXPECT_EQ(net.node_count(), 100u);
    EXPECT_EQ(net.edge_count(), m);
  }
}

TEST(Models, ErddPreservesDegreeSequence) {
  const auto data = oracle::random_graph(60, 0.1, 5);
  const auto out = generate(spec(ModelFamily::kERDD, data.node_count(), data.edge_count(), 3), &data);
  EXPECT_EQ(degrees(out), degrees(data));
  EXPECT_NE(out.edges(), data.edges());
}

TEST(Models, ErddNeedsMatchingSource) {
  const auto data = oracle::random_graph(20, 0.2, 5);
  EXPECT_THROW(generate(spec(ModelFamily::kERDD, 20, data.edge_count())), UsageError);
  EXPECT_THROW(generate(spec(ModelFamily::kERDD, 21, data.edge_count()), &data), ValidationError);
}

TEST(Models, GeometricRadiusSearchConverges) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = generate(spec(ModelFamily::kGEO, 100, 300, seed));
    EXPECT_EQ(net.node_count(), 100u);
    EXPECT_GE(net.edge_count(), 294u);
    EXPECT_LE(net.edge_count(), 306u);
  }
}

TEST(Models, CalibratedFamiliesWithinTolerance) {
  for (const auto f : {ModelFamily::kGEOGD, ModelFamily::kSF, ModelFamily::kSFGD}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto net = generate(spec(f, 200, 800, seed));
      EXPECT_EQ(net.node_count(), 200u) << to_string(f);
      EXPECT_GE(net.edge_count(), 784u) << to_string(f);
      EXPECT_LE(net.edge_count(), 816u) << to_string(f);
    }
  }
}

TEST(Models, ScaleFreeEdgeCountIsExact) {
  EXPECT_EQ(generate(spec(ModelFamily::kSF, 500, 1234, 9)).edge_count(), 1234u);
}

TEST(Models, SameSeedSameNetwork) {
  const auto data = oracle::random_graph(50, 0.1, 1);
  for (const auto f : kAllFamilies) {
    const auto s = spec(f, data.node_count(), data.edge_count(), 77);
    EXPECT_EQ(generate(s, &data), generate(s, &data)) << to_string(f);
  }
}

TEST(Models, InvalidSpecsRejected) {
  EXPECT_THROW(generate(spec(ModelFamily::kER, 0, 0)), ValidationError);
  EXPECT_THROW(generate(spec(ModelFamily::kER, 5, 11)), ValidationError);
}

TEST(Models, UnreachableDuplicationTargetNamesConstraint) {
  auto s = spec(ModelFamily::kSFGD, 30, 400);
  s.params.sfgd_q = 0.0;
  try {
    generate(s);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("SFGD"), std::string::npos);
  }
}

TEST(Models, FitReportShape) {
  const auto data = generate(spec(ModelFamily::kER, 60, 180, 4));
  FitOptions opts;
  opts.instances_per_family = 1;
  const auto report = evaluate_fit(data, kAllFamilies, opts);
  ASSERT_EQ(report.families.size(), 6u);
  for (const auto& fam : report.families) {
    EXPECT_FALSE(fam.failed) << fam.error;
    ASSERT_EQ(fam.scores.size(), 1u);
    EXPECT_GE(fam.scores[0], 0.0);
    EXPECT_LE(fam.scores[0], 1.0);
    EXPECT_EQ(fam.sd, 0.0);
  }
  ASSERT_TRUE(report.best_family);
  const auto best = std::max_element(report.families.begin(), report.families.end(),
                                     [](const auto& a, const auto& b) { return a.mean < b.mean; });
  EXPECT_EQ(best->mean, std::find_if(report.families.begin(), report.families.end(), [&](const auto& f) {
                          return f.family == *report.best_family;
                        })->mean);
}

TEST(Models, FailingFamilyDoesNotAbortOthers) {
  const auto data = oracle::random_graph(12, 0.9, 2);
  FitOptions opts;
  opts.instances_per_family = 2;
  opts.params.sfgd_q = 0.0;
  opts.params.max_bisections = 1;
  const std::vector<ModelFamily> fams{ModelFamily::kER, ModelFamily::kSFGD};
  const auto report = evaluate_fit(data, fams, opts);
  EXPECT_FALSE(report.families[0].failed);
  EXPECT_TRUE(report.families[1].failed);
  EXPECT_EQ(report.best_family, ModelFamily::kER);
}

TEST(Models, ErDataPrefersErOverScaleFree) {
  int wins = 0;
  for (std::uint64_t rep = 0; rep < 10; ++rep) {
    const auto data = generate(spec(ModelFamily::kER, 100, 300, 1000 + rep));
    FitOptions opts;
    opts.instances_per_family = 5;
    opts.seed = rep;
    const std::vector<ModelFamily> fams{ModelFamily::kER, ModelFamily::kSF};
    const auto report = evaluate_fit(data, fams, opts);
    wins += report.families[0].mean > report.families[1].mean;
  }
  EXPECT_GE(wins, 9);
}
