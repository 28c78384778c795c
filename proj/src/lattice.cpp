#include "tpgg/lattice.hpp"

#include <array>
#include <string>
#include <utility>

#include "tpgg/error.hpp"

namespace tpgg {

namespace {

// Offsets in (dx, dy); VonNeumann uses the first four.
constexpr std::array<std::pair<int, int>, 8> kOffsets{{
    {-1, 0}, {1, 0}, {0, -1}, {0, 1},
    {-1, -1}, {1, -1}, {-1, 1}, {1, 1},
}};

int wrap(int v, int side) { return ((v % side) + side) % side; }

}  // namespace

std::string_view to_string(Neighborhood kind) {
  return kind == Neighborhood::Moore ? "moore" : "von_neumann";
}

Neighborhood parse_neighborhood(std::string_view text) {
  if (text == "von_neumann" || text == "vonneumann" || text == "vn") return Neighborhood::VonNeumann;
  if (text == "moore") return Neighborhood::Moore;
  throw Error(ErrorCode::InvalidArgument,
              "unknown neighborhood '" + std::string(text) + "' (expected von_neumann or moore)");
}

Lattice::Lattice(int side, Neighborhood kind)
    : side_(side), kind_(kind), degree_(kind == Neighborhood::Moore ? 8 : 4) {
  if (side < 3) {
    throw Error(ErrorCode::InvalidSize,
                "lattice side " + std::to_string(side) + " too small for " +
                    std::string(to_string(kind)) + " neighborhood (need >= 3)");
  }
  const std::size_t n = size();
  const auto g = std::size_t(group_size());
  groups_.resize(n * g);
  for (int y = 0; y < side_; ++y) {
    for (int x = 0; x < side_; ++x) {
      const SiteIndex c = site_at(x, y);
      SiteIndex* row = groups_.data() + std::size_t(c) * g;
      row[0] = c;
      for (int k = 0; k < degree_; ++k) {
        const auto [dx, dy] = kOffsets[std::size_t(k)];
        row[k + 1] = site_at(wrap(x + dx, side_), wrap(y + dy, side_));
      }
    }
  }
}

SiteIndex Lattice::site_at(int x, int y) const noexcept {
  return SiteIndex(y) * SiteIndex(side_) + SiteIndex(x);
}

void Lattice::check_site(SiteIndex site) const {
  if (site >= size()) {
    throw Error(ErrorCode::OutOfRange, "site index " + std::to_string(site) +
                                           " out of range for " + std::to_string(size()) +
                                           " sites");
  }
}

std::span<const SiteIndex> Lattice::group(SiteIndex center) const {
  check_site(center);
  const auto g = std::size_t(group_size());
  return {groups_.data() + std::size_t(center) * g, g};
}

std::span<const SiteIndex> Lattice::neighbors(SiteIndex site) const {
  return group(site).subspan(1);
}

std::span<const SiteIndex> Lattice::groups_containing(SiteIndex site) const {
  return group(site);
}

}  // namespace tpgg
