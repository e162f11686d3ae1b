#include <doctest.h>

#include <cmath>
#include <random>

#include "disc/metrics.hpp"
#include "helpers.hpp"

using namespace disc;

TEST_CASE("distance on small examples") {
  const Point a = Point::numeric(0, {0.0, 0.0});
  const Point b = Point::numeric(1, {0.3, 0.4});
  CHECK(distance(Metric::euclidean, a, b) == doctest::Approx(0.5));
  CHECK(distance(Metric::manhattan, a, b) == doctest::Approx(0.7));
  CHECK(distance(Metric::euclidean, b, b) == 0.0);

  const Point c1 = Point::categorical(0, {"A", "3"});
  const Point c2 = Point::categorical(1, {"A", "5"});
  CHECK(distance(Metric::hamming, c1, c2) == 1.0);
  CHECK(distance(Metric::hamming, c1, c1) == 0.0);
}

TEST_CASE("distance rejects mismatched inputs") {
  const Point a = Point::numeric(0, {0.0, 0.0});
  const Point b = Point::numeric(1, {0.0, 0.0, 0.0});
  const Point c = Point::categorical(2, {"x", "y"});
  CHECK_THROWS_AS(distance(Metric::euclidean, a, b), std::invalid_argument);
  CHECK_THROWS_AS(distance(Metric::euclidean, a, c), std::invalid_argument);
  CHECK_THROWS_AS(distance(Metric::hamming, a, a), std::invalid_argument);
  CHECK_THROWS_AS(distance(Metric::manhattan, c, c), std::invalid_argument);
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pt = [&](ObjectId id) { return Point::numeric(id, {u(rng), u(rng), u(rng)}); };
  for (Metric m : {Metric::euclidean, Metric::manhattan}) {
    for (int i = 0; i < 10000; ++i) {
      const Point a = pt(0), b = pt(1), c = pt(2);
      const double ab = distance(m, a, b), bc = distance(m, b, c), ac = distance(m, a, c);
      REQUIRE(ab == distance(m, b, a));
      REQUIRE(ab >= 0.0);
      REQUIRE(ac <= ab + bc + 1e-12);
    }
  }
  const Dataset cat = gen_categorical(300, 5, 3, 4);
  for (std::size_t i = 0; i + 2 < cat.size(); ++i) {
    const auto& a = cat[i];
    const auto& b = cat[i + 1];
    const auto& c = cat[i + 2];
    REQUIRE(distance(Metric::hamming, a, c) <=
            distance(Metric::hamming, a, b) + distance(Metric::hamming, b, c));
  }
}

TEST_CASE("dataset construction and subset") {
  Dataset d({Point::numeric(0, {0.1}), Point::numeric(1, {0.2}), Point::numeric(2, {0.3})});
  CHECK(d.size() == 3);
  CHECK(d.dim() == 1);
  const std::vector<ObjectId> pick{2, 0};
  const Dataset s = d.subset(pick);
  REQUIRE(s.size() == 2);
  CHECK(s[0].id == 0);
  CHECK(s[0].coords[0] == 0.3);
  CHECK(s[1].coords[0] == 0.1);
  CHECK_THROWS_AS(d.at(3), std::out_of_range);
  CHECK_THROWS_AS(Dataset({Point::numeric(1, {0.1})}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({Point::numeric(0, {0.1}), Point::categorical(1, {"a"})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Dataset({Point::numeric(0, {0.1}), Point::numeric(1, {0.1, 0.2})}),
                  std::invalid_argument);
}

TEST_CASE("metric names round-trip") {
  for (Metric m : {Metric::euclidean, Metric::manhattan, Metric::hamming})
    CHECK(parse_metric(to_string(m)) == m);
  CHECK_THROWS_AS(parse_metric("cosine"), std::invalid_argument);
}

TEST_CASE("independence bounds") {
  CHECK(independence_bound(Metric::euclidean, 2) == 5);
  CHECK(independence_bound(Metric::manhattan, 2) == 7);
  CHECK(independence_bound(Metric::euclidean, 3) == 24);
  CHECK_FALSE(independence_bound(Metric::hamming, 7).has_value());
  CHECK_FALSE(independence_bound(Metric::manhattan, 3).has_value());
}

TEST_CASE("annulus bound formula") {
  const double beta = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(annulus_independence_bound(Metric::euclidean, 1.0, beta) == 9);
  CHECK(annulus_independence_bound(Metric::euclidean, 1.0, beta * beta) == 18);
  CHECK(annulus_independence_bound(Metric::manhattan, 0.1, 0.2) == 12);
  CHECK(annulus_independence_bound(Metric::manhattan, 0.1, 0.3) == 4 * (3 + 5));
  CHECK(annulus_independence_bound(Metric::manhattan, 0.2, 0.2) == 0);
  CHECK(annulus_independence_bound(Metric::euclidean, 0.2, 0.2) == 0);

  CHECK_THROWS_AS(annulus_independence_bound(Metric::euclidean, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(annulus_independence_bound(Metric::euclidean, 0.5, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(annulus_independence_bound(Metric::hamming, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("annulus bound is non-decreasing in the outer radius") {
  for (Metric m : {Metric::euclidean, Metric::manhattan}) {
    long long prev = 0;
    for (double r2 = 0.05; r2 < 2.0; r2 += 0.0137) {
      const long long b = annulus_independence_bound(m, 0.05, r2);
      CHECK(b >= prev);
      prev = b;
    }
  }
}
