#include <doctest.h>

#include <cmath>
#include <random>

#include "disc/baselines.hpp"
#include "disc/oracle.hpp"
#include "helpers.hpp"

using namespace disc;
using namespace disc::testing;

TEST_CASE("greedy maxmin") {
  auto line = points2d({{0.3, 0.0}, {0.0, 0.0}, {0.6, 0.0}, {1.0, 0.0}});
  CHECK(sorted(greedy_maxmin(*line, 2, Metric::euclidean)) == std::vector<ObjectId>{1, 3});
  CHECK(sorted(greedy_maxmin(*line, 4, Metric::euclidean)) == std::vector<ObjectId>{0, 1, 2, 3});
  CHECK_THROWS_AS(greedy_maxmin(*line, 0, Metric::euclidean), std::invalid_argument);
  CHECK_THROWS_AS(greedy_maxmin(*line, 5, Metric::euclidean), std::invalid_argument);

  auto square = points2d({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const auto three = greedy_maxmin(*square, 3, Metric::euclidean);
  CHECK(three.size() == 3);
  CHECK(oracle::min_pairwise(*square, three, Metric::euclidean) == doctest::Approx(1.0));
  // Three corners always contain a diagonal pair.
  bool diagonal = false;
  for (ObjectId a : three)
    for (ObjectId b : three)
      diagonal = diagonal || std::abs(square->at(a).coords[0] - square->at(b).coords[0]) +
                                     std::abs(square->at(a).coords[1] - square->at(b).coords[1]) ==
                                 2.0;
  CHECK(diagonal);
}

TEST_CASE("greedy maxmin stays within twice the optimum") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 30; ++round) {
    const Dataset d = small_instance(rng, 6, 12);
    const std::size_t k = 2 + round % 4;
    const double got = oracle::min_pairwise(d, greedy_maxmin(d, k, Metric::euclidean), Metric::euclidean);
    const double best =
        oracle::min_pairwise(d, oracle::optimal_maxmin(d, k, Metric::euclidean), Metric::euclidean);
    CHECK(best <= 2.0 * got + 1e-12);
  }
}

TEST_CASE("greedy maxsum") {
  auto line = points2d({{0.3, 0.0}, {0.0, 0.0}, {0.6, 0.0}, {1.0, 0.0}});
  CHECK(sorted(greedy_maxsum(*line, 2, Metric::euclidean)) == std::vector<ObjectId>{1, 3});
  CHECK(greedy_maxsum(*line, 4, Metric::euclidean).size() == 4);

  const Dataset d = gen_clustered(1000, 2, 6);
  const auto picked = greedy_maxsum(d, 15, Metric::euclidean);
  double cx = 0, cy = 0;
  for (const auto& p : d.points()) {
    cx += p.coords[0];
    cy += p.coords[1];
  }
  cx /= 1000.0;
  cy /= 1000.0;
  auto from_centroid = [&](const Point& p) { return std::hypot(p.coords[0] - cx, p.coords[1] - cy); };
  double all = 0, sel = 0;
  for (const auto& p : d.points()) all += from_centroid(p);
  for (ObjectId id : picked) sel += from_centroid(d[id]);
  CHECK(sel / 15.0 > all / 1000.0);
}

TEST_CASE("k-medoids") {
  const Dataset d = gen_uniform(30, 2, 2);
  CHECK(k_medoids(d, 30, Metric::euclidean, 1).cost == 0.0);
  CHECK_THROWS_AS(k_medoids(d, 0, Metric::euclidean, 1), std::invalid_argument);

  auto cross = points2d({{0.5, 0.5}, {0.6, 0.5}, {0.4, 0.5}, {0.5, 0.6}, {0.5, 0.4}});
  CHECK(k_medoids(*cross, 1, Metric::euclidean, 3).medoids == std::vector<ObjectId>{0});

  auto two = points2d({{0.1, 0.1}, {0.12, 0.1}, {0.1, 0.13}, {0.9, 0.9}, {0.88, 0.9}, {0.9, 0.91},
                       {0.11, 0.11}});
  const auto res = k_medoids(*two, 2, Metric::euclidean, 5);
  double best = 1e9;
  std::vector<ObjectId> best_pair;
  for (ObjectId a = 0; a < 7; ++a)
    for (ObjectId b = a + 1; b < 7; ++b) {
      const std::vector<ObjectId> pair{a, b};
      const double c = medoid_cost(*two, pair, Metric::euclidean);
      if (c < best) best = c, best_pair = pair;
    }
  CHECK(res.cost == doctest::Approx(best));
  CHECK(res.medoids == best_pair);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset c = gen_clustered(200, 2, seed);
    const auto r = k_medoids(c, 6, Metric::euclidean, seed);
    CHECK(r.medoids.size() == 6);
    for (std::size_t i = 1; i < r.cost_trace.size(); ++i) CHECK(r.cost_trace[i] <= r.cost_trace[i - 1]);
    CHECK(r.cost == doctest::Approx(r.cost_trace.back()));
    CHECK(k_medoids(c, 6, Metric::euclidean, seed).medoids == r.medoids);
  }
}

TEST_CASE("jaccard distance") {
  const std::vector<ObjectId> a{1, 2, 3}, b{3, 2, 1}, c{4, 5, 6}, d{3, 4}, none{};
  CHECK(jaccard(a, b) == 0.0);
  CHECK(jaccard(a, c) == 1.0);
  CHECK(jaccard(a, d) == doctest::Approx(1.0 - 1.0 / 4.0));
  CHECK(jaccard(none, none) == 0.0);
}

TEST_CASE("quality report") {
  auto data = points2d({{0.0, 0.0}, {0.3, 0.4}, {1.0, 0.0}});
  const std::vector<ObjectId> single{1}, pair{0, 2}, none{};
  const auto q1 = quality(*data, single, 0.5, Metric::euclidean);
  CHECK(q1.f_sum == 0.0);
  CHECK(std::isinf(q1.f_min));
  CHECK_FALSE(q1.jaccard_to.has_value());
  CHECK(q1.coverage_fraction == doctest::Approx(2.0 / 3.0));

  const auto q2 = quality(*data, pair, 0.5, Metric::euclidean, std::span<const ObjectId>(single));
  CHECK(q2.f_min == doctest::Approx(1.0));
  CHECK(q2.f_sum == doctest::Approx(1.0));
  CHECK(q2.coverage_fraction == doctest::Approx(1.0));
  REQUIRE(q2.jaccard_to.has_value());
  CHECK(*q2.jaccard_to == 1.0);
  CHECK(q2.medoid_cost == doctest::Approx(0.5 / 3.0));

  const auto q0 = quality(*data, none, 0.5, Metric::euclidean);
  CHECK(q0.degenerate);
  CHECK(std::isinf(q0.f_min));
  const std::vector<ObjectId> bad{7};
  CHECK_THROWS_AS(quality(*data, bad, 0.5, Metric::euclidean), std::out_of_range);
}

TEST_CASE("maxmin ratio of a DisC subset") {
  auto spread = points2d({{0.1, 0.1}, {0.2, 0.1}, {0.15, 0.12}});
  const auto one = check_maxmin_ratio(*spread, Metric::euclidean, 1.0);
  CHECK(one.size == 1);
  CHECK(std::isinf(one.lambda));
  CHECK(one.ok);

  const auto all = check_maxmin_ratio(*spread, Metric::euclidean, 0.01);
  CHECK(all.size == 3);
  CHECK(all.lambda == all.lambda_star);
  CHECK(all.ok);

  std::mt19937_64 rng(50);
  for (int round = 0; round < 50; ++round) {
    const Dataset d = small_instance(rng, 4, 14);
    const auto res = check_maxmin_ratio(d, round % 2 ? Metric::manhattan : Metric::euclidean,
                                        0.1 + 0.02 * (round % 10));
    CHECK(res.ok);
    CHECK(res.lambda_star >= res.lambda);
  }
}
