#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "tpgg/error.hpp"
#include "tpgg/lattice.hpp"

using namespace tpgg;

namespace {

std::set<SiteIndex> as_set(std::span<const SiteIndex> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("3x3 von Neumann neighbors of the corner wrap around") {
  const Lattice lat(3, Neighborhood::VonNeumann);
  const auto n = as_set(lat.neighbors(lat.site_at(0, 0)));
  const std::set<SiteIndex> expected{lat.site_at(1, 0), lat.site_at(2, 0), lat.site_at(0, 1),
                                     lat.site_at(0, 2)};
  CHECK(n == expected);
}

TEST_CASE("groups containing the center of a 3x3 lattice") {
  const Lattice lat(3, Neighborhood::VonNeumann);
  const SiteIndex c = lat.site_at(1, 1);
  const auto g = lat.groups_containing(c);
  REQUIRE(g.size() == 5);
  CHECK(g[0] == c);
  const std::set<SiteIndex> expected{lat.site_at(1, 1), lat.site_at(0, 1), lat.site_at(2, 1),
                                     lat.site_at(1, 0), lat.site_at(1, 2)};
  CHECK(as_set(g) == expected);
}

TEST_CASE("60x60 von Neumann sizes") {
  const Lattice lat(60, Neighborhood::VonNeumann);
  CHECK(lat.size() == 3600);
  CHECK(lat.degree() == 4);
  CHECK(lat.group_size() == 5);
  CHECK(lat.group_table().size() == 3600 * 5);
}

TEST_CASE("too-small lattices are rejected") {
  for (auto kind : {Neighborhood::VonNeumann, Neighborhood::Moore}) {
    for (int side : {-1, 0, 1, 2}) {
      try {
        Lattice lat(side, kind);
        FAIL("expected InvalidSize for side " << side);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidSize);
      }
    }
  }
}

TEST_CASE("out-of-range site") {
  const Lattice lat(4, Neighborhood::VonNeumann);
  CHECK_THROWS_AS(lat.group(16), Error);
  CHECK_THROWS_AS(lat.groups_containing(100), Error);
  CHECK_NOTHROW(lat.group(15));
}

TEST_CASE("table invariants on both neighborhoods") {
  for (auto kind : {Neighborhood::VonNeumann, Neighborhood::Moore}) {
    for (int side : {3, 4, 5, 7, 12}) {
      CAPTURE(side);
      const Lattice lat(side, kind);
      const int deg = kind == Neighborhood::Moore ? 8 : 4;
      std::size_t memberships = 0;
      for (SiteIndex i = 0; i < lat.size(); ++i) {
        const auto nb = lat.neighbors(i);
        REQUIRE(int(nb.size()) == deg);
        const auto s = as_set(nb);
        CHECK(s.size() == nb.size());  // no duplicates
        CHECK(s.count(i) == 0);        // no self loops
        for (SiteIndex j : nb) {
          const auto back = as_set(lat.neighbors(j));
          CHECK(back.count(i) == 1);  // symmetric
        }
        CHECK(lat.group(i)[0] == i);
        memberships += lat.group(i).size();

        // Same neighborhoods as a coordinate-based derivation.
        const auto ref = oracle::neighbors(int(i), side, kind == Neighborhood::Moore);
        CHECK(s == std::set<SiteIndex>(ref.begin(), ref.end()));
      }
      CHECK(memberships == lat.size() * std::size_t(deg + 1));

      // i in group(j) <=> j in groups_containing(i)
      for (SiteIndex i = 0; i < lat.size(); ++i) {
        for (SiteIndex j = 0; j < lat.size(); ++j) {
          const auto g = lat.group(j);
          const bool in_group = std::find(g.begin(), g.end(), i) != g.end();
          const auto gc = lat.groups_containing(i);
          const bool listed = std::find(gc.begin(), gc.end(), j) != gc.end();
          CHECK(in_group == listed);
        }
      }
    }
  }
}

TEST_CASE("periodic wrap on every edge") {
  const Lattice lat(5, Neighborhood::VonNeumann);
  for (int y = 0; y < 5; ++y) {
    const auto left = as_set(lat.neighbors(lat.site_at(0, y)));
    CHECK(left.count(lat.site_at(4, y)) == 1);
    const auto right = as_set(lat.neighbors(lat.site_at(4, y)));
    CHECK(right.count(lat.site_at(0, y)) == 1);
  }
  for (int x = 0; x < 5; ++x) {
    CHECK(as_set(lat.neighbors(lat.site_at(x, 0))).count(lat.site_at(x, 4)) == 1);
    CHECK(as_set(lat.neighbors(lat.site_at(x, 4))).count(lat.site_at(x, 0)) == 1);
  }
}

TEST_CASE("construction is deterministic") {
  const Lattice a(9, Neighborhood::Moore);
  const Lattice b(9, Neighborhood::Moore);
  CHECK(std::equal(a.group_table().begin(), a.group_table().end(), b.group_table().begin(),
                   b.group_table().end()));
}

TEST_CASE("neighborhood names parse") {
  CHECK(parse_neighborhood("moore") == Neighborhood::Moore);
  CHECK(parse_neighborhood("von_neumann") == Neighborhood::VonNeumann);
  CHECK_THROWS_AS(parse_neighborhood("hex"), Error);
}
