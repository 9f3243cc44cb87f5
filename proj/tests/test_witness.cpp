#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "elicit/catalog.hpp"
#include "elicit/core.hpp"
#include "elicit/rng.hpp"
#include "elicit/witness.hpp"
#include "oracles.hpp"

using namespace elicit;

namespace {

SpacePtr bernoulli() { return OutcomeSpace::from_values({0.0, 1.0}); }

std::vector<double> sorted_p1(const LevelSetSample& s) {
  std::vector<double> out;
  for (const Distribution& p : s.members) out.push_back(p.p(1));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("product embedding lists tuple probabilities lexicographically",
          "[witness]") {
  SpacePtr space = bernoulli();
  const Distribution p(space, {0.3, 0.7});
  const std::vector<double> e = embed_product(p, 2);
  REQUIRE(e.size() == 4);
  CHECK(e[0] == Catch::Approx(0.09).epsilon(1e-14));
  CHECK(e[1] == Catch::Approx(0.21).epsilon(1e-14));
  CHECK(e[2] == Catch::Approx(0.21).epsilon(1e-14));
  CHECK(e[3] == Catch::Approx(0.49).epsilon(1e-14));
  CHECK(embed_product(p, 1) == p.probs());
  CHECK_THROWS_AS(embed_product(p, 0), Error);
}

TEST_CASE("level sets of the variance on the coin", "[witness]") {
  const Property var = named_property("variance");
  const LevelSetSample s = sample_level_set(var, 0.16, bernoulli());
  REQUIRE(s.members.size() == 2);
  const std::vector<double> got = sorted_p1(s);
  CHECK(got[0] == Catch::Approx(0.2).margin(1e-9));
  CHECK(got[1] == Catch::Approx(0.8).margin(1e-9));
  for (const Distribution& p : s.members)
    CHECK(var.value(p)[0] == Catch::Approx(0.16).margin(1e-11));
}

TEST_CASE("level sets of the mean and the fourth central moment",
          "[witness]") {
  const LevelSetSample mean_set =
      sample_level_set(named_property("mean"), 0.3, bernoulli());
  REQUIRE(mean_set.members.size() == 1);
  CHECK(mean_set.members[0].p(1) == Catch::Approx(0.3).margin(1e-9));

  const LevelSetSample mu4_set =
      sample_level_set(named_property("central_moment4"), 0.0625, bernoulli());
  const std::vector<double> got = sorted_p1(mu4_set);
  REQUIRE(got.size() == 3);
  // Roots of p(1-p)(1 - 3 p(1-p)) = 1/16: p = 1/2 and (1 +/- sqrt(2/3))/2.
  CHECK(got[0] == Catch::Approx(0.091751709536137).margin(1e-9));
  CHECK(got[1] == Catch::Approx(0.5).margin(1e-9));
  CHECK(got[2] == Catch::Approx(0.908248290463863).margin(1e-9));
}

TEST_CASE("unattained level values are an error", "[witness]") {
  CHECK_THROWS_AS(
      sample_level_set(named_property("variance"), 0.3, bernoulli()), Error);
  SpacePtr four = OutcomeSpace::from_values({0, 1, 2, 3});
  CHECK_THROWS_AS(sample_level_set(named_property("mean"), 1.0, four), Error);
}

TEST_CASE("three-outcome level curves stay on the level", "[witness]") {
  const Property knorm = named_property("knorm2");
  SpacePtr three = OutcomeSpace::from_values({0, 1, 2});
  const LevelSetSample s = sample_level_set(knorm, 0.65, three);
  CHECK(s.members.size() >= 4);
  for (const Distribution& p : s.members) {
    const double norm = std::sqrt(p.p(0) * p.p(0) + p.p(1) * p.p(1) +
                                  p.p(2) * p.p(2));
    CHECK(norm == Catch::Approx(0.65).margin(1e-9));
  }
}

TEST_CASE("variance admits a one-observation witness", "[witness]") {
  const Property var = named_property("variance");
  const LevelSetSample A = sample_level_set(var, 0.16, bernoulli());
  const LevelSetSample B = sample_level_set(var, 0.21, bernoulli());
  const WitnessResult res = witness_search(A, B, 1);
  REQUIRE(res.feasible);
  REQUIRE(res.witness.has_value());
  const Witness& w = *res.witness;
  CHECK(w.m == 1);
  CHECK(w.r1 == 0.16);
  CHECK(w.r2 == 0.21);
  CHECK(w.residual <= 1e-7);
  CHECK(witness_valid(w));
  double s1 = 0.0, s2 = 0.0;
  for (double l : w.lambda1) {
    CHECK(l >= 0.0);
    s1 += l;
  }
  for (double l : w.lambda2) {
    CHECK(l >= 0.0);
    s2 += l;
  }
  CHECK(s1 == Catch::Approx(1.0).margin(1e-12));
  CHECK(s2 == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("the balanced two-point mixture is itself a valid witness",
          "[witness]") {
  SpacePtr space = bernoulli();
  Witness w;
  w.m = 1;
  w.r1 = 0.16;
  w.r2 = 0.21;
  w.group1 = {Distribution(space, {0.8, 0.2}), Distribution(space, {0.2, 0.8})};
  w.group2 = {Distribution(space, {0.7, 0.3}), Distribution(space, {0.3, 0.7})};
  w.lambda1 = {0.5, 0.5};
  w.lambda2 = {0.5, 0.5};
  w.residual = verify_witness(w);
  CHECK(w.residual <= 1e-15);
  CHECK(witness_valid(w));

  // Nudging one weight breaks the mixture; the recomputed residual says by
  // how much, and validity fails.
  Witness off = w;
  off.lambda1 = {0.51, 0.49};
  CHECK(verify_witness(off) == Catch::Approx(0.006).margin(1e-12));
  CHECK_FALSE(witness_valid(off));

  Witness bad_sum = w;
  bad_sum.lambda2 = {0.51, 0.5};
  CHECK_FALSE(witness_valid(bad_sum));
}

TEST_CASE("two observations separate the variance level sets", "[witness]") {
  const Property var = named_property("variance");
  const LevelSetSample A = sample_level_set(var, 0.16, bernoulli());
  const LevelSetSample B = sample_level_set(var, 0.21, bernoulli());
  const WitnessResult res = witness_search(A, B, 2);
  CHECK_FALSE(res.feasible);
  CHECK(res.note == "no_witness_in_sample");
  CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("fourth central moment keeps a witness at two observations",
          "[witness]") {
  const Property mu4 = named_property("central_moment4");
  const LevelSetSample A = sample_level_set(mu4, 0.07, bernoulli());
  const LevelSetSample B = sample_level_set(mu4, 0.08, bernoulli());
  REQUIRE(A.members.size() == 4);
  REQUIRE(B.members.size() == 4);
  const WitnessResult res = witness_search(A, B, 2);
  REQUIRE(res.feasible);
  CHECK(res.witness->residual <= 1e-7);
  CHECK(witness_valid(*res.witness));
}

TEST_CASE("witness search input validation", "[witness]") {
  const Property var = named_property("variance");
  const LevelSetSample A = sample_level_set(var, 0.16, bernoulli());
  const LevelSetSample B = sample_level_set(var, 0.21, bernoulli());
  CHECK_THROWS_AS(witness_search(A, B, 0), Error);

  LevelSetSample empty;
  empty.r = 0.5;
  CHECK_THROWS_AS(witness_search(A, empty, 1), Error);

  LevelSetSample same = B;
  same.r = A.r;
  CHECK_THROWS_AS(witness_search(A, same, 1), Error);

  LevelSetSample mixed = B;
  SpacePtr three = OutcomeSpace::from_values({0, 1, 2});
  mixed.members.push_back(Distribution(three, {0.2, 0.3, 0.5}));
  CHECK_THROWS_AS(witness_search(A, mixed, 1), Error);
}

TEST_CASE("level-set scan resolution is adjustable", "[witness]") {
  SampleOptions opts;
  opts.scan_resolution = 500;
  const LevelSetSample s =
      sample_level_set(named_property("variance"), 0.16, bernoulli(), opts);
  CHECK(s.members.size() == 2);
}

TEST_CASE("LP feasibility agrees with a weight-grid search on small instances",
          "[witness][oracle]") {
  SpacePtr space = bernoulli();
  Rng rng(31337);
  const int res = 60;
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t m = 1 + (rng.next_u64() % 2);
    auto draw_group = [&](std::size_t count) {
      std::vector<Distribution> members;
      for (std::size_t i = 0; i < count; ++i) {
        const double q = 0.05 + 0.9 * rng.uniform01();
        members.push_back(Distribution(space, {1.0 - q, q}));
      }
      return members;
    };
    LevelSetSample A, B;
    A.r = 1.0;
    B.r = 2.0;
    A.members = draw_group(1 + rng.next_u64() % 3);
    B.members = draw_group(1 + rng.next_u64() % 3);

    const WitnessResult lp = witness_search(A, B, m);
    std::vector<std::vector<double>> VA, VB;
    for (const auto& p : A.members) VA.push_back(embed_product(p, m));
    for (const auto& p : B.members) VB.push_back(embed_product(p, m));
    const double dist = oracles::grid_hull_min_dist(VA, VB, res);

    if (lp.feasible) {
      // A true intersection point rounds onto the weight grid within
      // O(1/res) per coordinate.
      CHECK(dist <= 6.0 / res);
      ++feasible_seen;
    } else {
      CHECK(dist > 1e-6);
      ++infeasible_seen;
    }
  }
  // The instance mix must exercise both answers for the check to mean much.
  CHECK(feasible_seen > 0);
  CHECK(infeasible_seen > 0);
}
