#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cyclabel/core.hpp"

using namespace cyclabel;

namespace {

CycleLabeling cyc(std::vector<Label> v) { return CycleLabeling(std::move(v)); }

CycleLabeling random_cycle(std::mt19937& rng, int j) {
  std::vector<Label> labels(40);
  std::iota(labels.begin(), labels.end(), 0u);
  std::shuffle(labels.begin(), labels.end(), rng);
  labels.resize(static_cast<std::size_t>(j));
  return CycleLabeling(labels);
}

}  // namespace

TEST_CASE("cycle_distance on sample positions") {
  CHECK(cycle_distance(9, 0, 0) == 0);
  CHECK(cycle_distance(9, 2, 7) == 4);
  CHECK(cycle_distance(10, 0, 5) == 5);
  CHECK(directed_distance(9, 7, 2) == 4);
  CHECK(directed_distance(9, 2, 7) == 5);
  CHECK_THROWS_AS(cycle_distance(9, 0, 9), std::invalid_argument);
  CHECK_THROWS_AS(cycle_distance(9, -1, 3), std::invalid_argument);
}

TEST_CASE("cycle_distance is symmetric, bounded and satisfies the triangle inequality") {
  for (int j = 3; j <= 24; ++j) {
    for (int p = 0; p < j; ++p) {
      for (int q = 0; q < j; ++q) {
        const int d = cycle_distance(j, p, q);
        CHECK(d == cycle_distance(j, q, p));
        CHECK(d <= j / 2);
        CHECK(directed_distance(j, p, q) + directed_distance(j, q, p) == (p == q ? 0 : j));
        for (int r = 0; r < j; ++r) CHECK(cycle_distance(j, p, r) <= d + cycle_distance(j, q, r));
      }
    }
  }
}

TEST_CASE("CycleLabeling rejects short cycles and repeated labels") {
  CHECK_THROWS_AS(cyc({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(cyc({0, 1, 0}), std::invalid_argument);
  const auto c = cyc({4, 7, 9, 2});
  CHECK(c.position_of(9) == 2);
  CHECK_FALSE(c.position_of(5).has_value());
}

TEST_CASE("canonicalize picks the least rotation or reflection") {
  CHECK(canonicalize(cyc({2, 0, 1, 4, 3})) == cyc({0, 1, 4, 3, 2}));
  CHECK(canonicalize(cyc({0, 1, 2})) == cyc({0, 1, 2}));
  CHECK(canonicalize(cyc({0, 3, 2, 1})) == cyc({0, 1, 2, 3}));
  // Directed cycles only rotate.
  CHECK(canonicalize(cyc({0, 3, 2, 1}), true) == cyc({0, 3, 2, 1}));
}

TEST_CASE("canonicalize is invariant under rotation and reflection") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_cycle(rng, 3 + trial % 15);
    const auto canon = canonicalize(c);
    CHECK(canonicalize(canon) == canon);
    CHECK(canonicalize(reflect(c)) == canon);
    for (int k = 0; k < c.length(); ++k) CHECK(canonicalize(rotate(c, k)) == canon);
  }
}

TEST_CASE("pair_distances of small cycles") {
  const auto t3 = pair_distances(cyc({0, 1, 2}));
  CHECK(t3.size() == 3);
  CHECK(t3.find(0, 1) == 1);
  CHECK(t3.find(1, 2) == 1);
  CHECK(t3.find(2, 0) == 1);

  const auto t4 = pair_distances(cyc({0, 1, 2, 3}));
  CHECK(t4.size() == 6);
  CHECK(t4.find(0, 2) == 2);
  CHECK(t4.find(1, 3) == 2);
  int ones = 0;
  for (const auto& [pair, d] : t4.sorted_entries()) ones += d == 1;
  CHECK(ones == 4);

  CHECK(pair_distances(cyc({7, 8, 9, 20, 21})).find(7, 20) == 2);
}

TEST_CASE("pair_distances ignores rotation and reflection") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_cycle(rng, 3 + trial % 12);
    const auto t = pair_distances(c);
    CHECK(t.size() == static_cast<std::size_t>(c.length() * (c.length() - 1) / 2));
    CHECK(pair_distances(reflect(c)) == t);
    CHECK(pair_distances(rotate(c, trial % c.length())) == t);
  }
}

TEST_CASE("directed pair tables keep ordered pairs") {
  const auto t = pair_distances(cyc({0, 1, 2, 3}), true);
  CHECK(t.size() == 12);
  CHECK(t.find(0, 1) == 1);
  CHECK(t.find(1, 0) == 3);
}

TEST_CASE("PairDistanceTable refuses a second distance") {
  PairDistanceTable t;
  CHECK(t.insert(3, 5, 2));
  CHECK(t.insert(5, 3, 2));
  CHECK_FALSE(t.insert(5, 3, 1));
  CHECK(t.find(3, 5) == 2);
  CHECK_FALSE(t.find(3, 4).has_value());
}

TEST_CASE("FamilyLabeling orders cycles and counts labels") {
  FamilyLabeling f({cyc({0, 1, 2}), cyc({0, 1, 3, 4}), cyc({5, 6, 7, 8, 9})});
  REQUIRE(f.size() == 3);
  CHECK(f.cycles()[0].length() == 5);
  CHECK(f.cycles()[2].length() == 3);
  CHECK(f.lengths() == std::vector<int>{5, 4, 3});
  CHECK(f.label_count() == 10);
  CHECK(f.find(4) != nullptr);
  CHECK(f.find(6) == nullptr);
  CHECK_THROWS_AS(FamilyLabeling({cyc({0, 1, 2}), cyc({3, 4, 5})}), std::invalid_argument);
}
