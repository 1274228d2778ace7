#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ringbisect/oracles.hpp"
#include "ringbisect/ring.hpp"

using namespace ringbisect;

namespace {

constexpr Color R = Color::Red;
constexpr Color B = Color::Blue;

Coloring from_bits(int n, std::uint64_t bits) {
  Coloring c(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) c[static_cast<std::size_t>(v)] = ((bits >> v) & 1U) ? B : R;
  return c;
}

}  // namespace

TEST_SUITE("ring") {
  TEST_CASE("cut set construction rejects odd, duplicate and out-of-range edges") {
    CHECK_THROWS_AS(CutEdgeSet(8, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(CutEdgeSet(8, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(CutEdgeSet(8, {1, 8}), std::out_of_range);
    CHECK_THROWS_AS(CutEdgeSet(7), std::invalid_argument);
    CHECK_THROWS_AS(CutEdgeSet(2), std::invalid_argument);
    CHECK_THROWS_AS(CutEdgeSet(66), std::invalid_argument);
    CHECK(CutEdgeSet(8, {6, 2}).edges() == std::vector<int>{2, 6});
    CHECK(CutEdgeSet(8, {6, 2}).str() == "{2,6}");
  }

  TEST_CASE("cut sets order lexicographically by edge sequence") {
    CHECK(CutEdgeSet(4, {0, 1, 2, 3}) < CutEdgeSet(4, {0, 2}));
    CHECK(CutEdgeSet(4, {0, 2}) < CutEdgeSet(4, {1, 3}));
    CHECK(CutEdgeSet(4) < CutEdgeSet(4, {0, 1}));
  }

  TEST_CASE("cut_edges_of") {
    CHECK(cut_edges_of({R, R, B, B}) == CutEdgeSet(4, {1, 3}));
    CHECK(cut_edges_of({R, R, R, R}) == CutEdgeSet(4));
    CHECK(cut_edges_of({R, R, B, B, R, R, B, B}) == CutEdgeSet(8, {1, 3, 5, 7}));
  }

  TEST_CASE("coloring_of") {
    CHECK(coloring_of(CutEdgeSet(4, {1, 3}), R) == Coloring{R, R, B, B});
    CHECK(coloring_of(CutEdgeSet(4), B) == Coloring{B, B, B, B});
    CHECK(coloring_of(CutEdgeSet(8, {4, 6}), B) == Coloring{B, B, B, B, B, R, R, B});
  }

  TEST_CASE("coloring round trips") {
    for (int n = 4; n <= 10; n += 2) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const Coloring c = from_bits(n, bits);
        const CutEdgeSet cuts = cut_edges_of(c);
        REQUIRE(cuts.size() % 2 == 0);
        CHECK(coloring_of(cuts, c[0]) == c);
        CHECK(cut_edges_of(coloring_of(cuts, R)) == cuts);
        const Coloring other = coloring_of(cuts, B);
        for (std::size_t v = 0; v < c.size(); ++v) CHECK(other[v] == opposite(coloring_of(cuts, R)[v]));
      }
    }
  }

  TEST_CASE("less_count") {
    CHECK(less_count(CutEdgeSet(8)) == 0);
    CHECK(less_count(CutEdgeSet(8, {4, 6})) == 2);
    CHECK(less_count(CutEdgeSet(36, {4, 8, 10, 11, 12, 22, 24, 27, 31, 35})) == 14);
    CHECK(less_count(CutEdgeSet(8, {0, 2, 4, 6})) == 4);
    CHECK(more_frequent_color(CutEdgeSet(8, {0, 2, 4, 6})) == R);
    CHECK(more_frequent_color(CutEdgeSet(8, {0, 6})) == B);
    CHECK(more_frequent_color(CutEdgeSet(8, {0, 2})) == R);
    CHECK(more_frequent_color(CutEdgeSet(8, {7, 5})) == R);
  }

  TEST_CASE("is_alpha_balanced") {
    CHECK(is_alpha_balanced(CutEdgeSet(8, {4, 6}), Ratio(2)));
    CHECK(is_alpha_balanced(CutEdgeSet(8, {4, 6}), Ratio(3, 2)));
    CHECK_FALSE(is_alpha_balanced(CutEdgeSet(8), Ratio(3, 2)));
    CHECK_FALSE(is_alpha_balanced(CutEdgeSet(8, {4, 5}), Ratio(3, 2)));
    CHECK(is_alpha_balanced(CutEdgeSet(8), Ratio(2)));
    CHECK_THROWS_AS(is_alpha_balanced(CutEdgeSet(8), Ratio(1, 2)), std::invalid_argument);
  }

  TEST_CASE("arcs and arc distance") {
    CHECK(arc_distance(8, 0, 2) == 2);
    CHECK(arc_between(8, 0, 2).nodes == std::vector<int>{1, 2});
    CHECK(arc_distance(8, 0, 4) == 4);
    CHECK(arc_between(8, 0, 4).nodes == std::vector<int>{1, 2, 3, 4});
    CHECK(arc_between(8, 4, 0).nodes == std::vector<int>{1, 2, 3, 4});
    CHECK(arc_distance(8, 7, 0) == 1);
    CHECK(arc_between(8, 7, 0).nodes == std::vector<int>{0});
    CHECK(arc_between(8, 0, 7).nodes == std::vector<int>{0});
    CHECK(clockwise_arc(8, 6, 1).nodes == std::vector<int>{7, 0, 1});
    CHECK_THROWS_AS(arc_between(8, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(clockwise_arc(8, 3, 3), std::invalid_argument);
  }

  TEST_CASE("phi examples") {
    const CutEdgeSet c(8, {0, 2, 4, 6});
    CHECK(phi(c, c).empty());

    const PhiSet a = phi(c, CutEdgeSet(8, {0, 4}));
    CHECK(a.size() == 4);
    CHECK(a.nodes == std::vector<int>{3, 4, 5, 6});
    CHECK(a.branch == 0);
    REQUIRE(a.arcs.size() == 1);
    CHECK(a.arcs[0].start_edge == 2);
    CHECK(a.arcs[0].end_edge == 6);

    const PhiSet b = phi(CutEdgeSet(8, {0, 2}), CutEdgeSet(8, {0, 4}));
    CHECK(b.nodes == std::vector<int>{3, 4});

    const PhiSet d = phi(CutEdgeSet(8, {0, 1}), CutEdgeSet(8, {0, 7}));
    CHECK(d.nodes == std::vector<int>{0, 1});
    CHECK(d.branch == 1);
    CHECK_THROWS_AS(phi(CutEdgeSet(8), CutEdgeSet(6)), std::invalid_argument);
  }

  TEST_CASE("state distance examples") {
    const CutEdgeSet c(8, {1, 5});
    CHECK(state_distance(c, c) == 0);
    CHECK(state_distance(CutEdgeSet(8, {0, 4}), CutEdgeSet(8, {2, 6})) == 4);
    CHECK(state_distance(CutEdgeSet(8, {0, 2}), CutEdgeSet(8, {0, 4})) == 2);
    CHECK(state_distance(CutEdgeSet(8), CutEdgeSet(8, {0, 1, 2, 3, 4, 5, 6, 7})) == 4);
  }

  TEST_CASE("phi agrees with the brute-force recoloring count and is well formed") {
    for (int n = 4; n <= 10; n += 2) {
      const auto states = oracle::all_states(n);
      for (const auto& a : states) {
        for (const auto& b : states) {
          const PhiSet p = phi(a, b);
          REQUIRE(p.size() == oracle::recolor_distance(a, b));
          REQUIRE(state_distance(a, b) == p.size());
          REQUIRE(recolor_nodes(a, p.nodes) == b);
          const std::uint64_t diff = a.mask() ^ b.mask();
          std::set<int> seen;
          for (const Arc& arc : p.arcs) {
            CHECK(((diff >> arc.start_edge) & 1U) == 1U);
            CHECK(((diff >> arc.end_edge) & 1U) == 1U);
            for (int v : arc.nodes) CHECK(seen.insert(v).second);
          }
          CHECK(std::vector<int>(seen.begin(), seen.end()) == p.nodes);
          CHECK(2 * p.size() <= n);
        }
      }
    }
  }

  TEST_CASE("flip_node examples") {
    const FlipOutcome shift = flip_node(CutEdgeSet(8, {2, 6}), 3);
    CHECK(shift.cuts == CutEdgeSet(8, {3, 6}));
    CHECK(shift.event == StepEvent{3, StepKind::Shift, 2, 3});

    const FlipOutcome add = flip_node(CutEdgeSet(8, {2, 6}), 0);
    CHECK(add.cuts == CutEdgeSet(8, {0, 2, 6, 7}));
    CHECK(add.event == StepEvent{0, StepKind::AddPair, 7, 0});

    const FlipOutcome remove = flip_node(CutEdgeSet(8, {2, 3}), 3);
    CHECK(remove.cuts == CutEdgeSet(8));
    CHECK(remove.event == StepEvent{3, StepKind::RemovePair, 2, 3});

    CHECK_THROWS_AS(flip_node(CutEdgeSet(8), 8), std::out_of_range);
  }

  TEST_CASE("flip_node is an involution touching exactly the two adjacent edges") {
    for (int n = 4; n <= 8; n += 2) {
      for (const auto& c : oracle::all_states(n)) {
        for (int w = 0; w < n; ++w) {
          const CutEdgeSet once = flip_node(c, w).cuts;
          CHECK(flip_node(once, w).cuts == c);
          const int left = (w + n - 1) % n;
          CHECK((c.mask() ^ once.mask()) == ((std::uint64_t{1} << left) | (std::uint64_t{1} << w)));
          CHECK(state_distance(c, once) == 1);
        }
      }
    }
  }

  TEST_CASE("recolor_nodes toggles edges with exactly one listed endpoint") {
    const std::vector<int> nodes{1, 2};
    CHECK(recolor_nodes(CutEdgeSet(8), nodes) == CutEdgeSet(8, {0, 2}));
    const std::vector<int> everyone{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(recolor_nodes(CutEdgeSet(8, {1, 5}), everyone) == CutEdgeSet(8, {1, 5}));
  }
}
