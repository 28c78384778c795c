#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tpgg {

using SiteIndex = std::uint32_t;

enum class Neighborhood { VonNeumann, Moore };

std::string_view to_string(Neighborhood kind);
Neighborhood parse_neighborhood(std::string_view text);

/// Periodic L x L square lattice with precomputed neighbor and group tables.
///
/// Sites are indexed row-major, `index = y * L + x`. The group centered at
/// `c` is stored as `c` followed by its neighbors, so `neighbors(c)` is a view
/// into the tail of `group(c)`. Immutable once built.
class Lattice {
 public:
  /// Throws Error(InvalidSize) when `side < 3`; a 2-wide torus folds
  /// opposite neighbors onto the same site.
  Lattice(int side, Neighborhood kind);

  int side() const noexcept { return side_; }
  std::size_t size() const noexcept { return std::size_t(side_) * side_; }
  Neighborhood kind() const noexcept { return kind_; }
  int degree() const noexcept { return degree_; }
  int group_size() const noexcept { return degree_ + 1; }

  std::span<const SiteIndex> neighbors(SiteIndex site) const;
  std::span<const SiteIndex> group(SiteIndex center) const;

  /// Centers of every group that `site` plays in: itself, then its
  /// neighbors. Identical to `group(site)` because adjacency is symmetric.
  std::span<const SiteIndex> groups_containing(SiteIndex site) const;

  SiteIndex site_at(int x, int y) const noexcept;
  int x_of(SiteIndex site) const noexcept { return int(site % SiteIndex(side_)); }
  int y_of(SiteIndex site) const noexcept { return int(site / SiteIndex(side_)); }

  /// Flat group table, `size() * group_size()` entries.
  std::span<const SiteIndex> group_table() const noexcept { return groups_; }

 private:
  void check_site(SiteIndex site) const;

  int side_;
  Neighborhood kind_;
  int degree_;
  std::vector<SiteIndex> groups_;
};

}  // namespace tpgg
