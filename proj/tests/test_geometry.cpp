#include <doctest.h>

#include <random>

#include "fcm/pgm.hpp"
#include "fcm/rod.hpp"

using namespace fcm;

TEST_CASE("two-rod geometry classification and penalization") {
  const EmbeddedGeometry<1> geometry = two_rod_geometry(8);

  CHECK(geometry.alpha_at({0.5}) == 1.0);
  CHECK(geometry.alpha_at({2.0}) == doctest::Approx(1e-8).epsilon(1e-14));
  // interface points classify as physical
  CHECK(geometry.alpha_at({1.0}) == 1.0);
  CHECK(geometry.alpha_at({7.0 / 3.0}) == 1.0);
  CHECK(geometry.alpha_at({0.0}) == 1.0);
  CHECK(geometry.alpha_at({3.0}) == 1.0);

  CHECK_THROWS_AS((void)geometry.alpha_at({-0.5}), std::domain_error);
  CHECK_THROWS_AS((void)geometry.alpha_at({3.5}), std::domain_error);
}

TEST_CASE("alpha takes exactly two values") {
  const EmbeddedGeometry<1> geometry = two_rod_geometry(6);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coord(0.0, 3.0);
  int physical = 0, fictitious = 0;
  for (int i = 0; i < 1000; ++i) {
    const double alpha = geometry.alpha_at({coord(rng)});
    if (alpha == 1.0) {
      ++physical;
    } else {
      CHECK(alpha == doctest::Approx(1e-6).epsilon(1e-14));
      ++fictitious;
    }
  }
  CHECK(physical + fictitious == 1000);
  CHECK(physical > 0);
  CHECK(fictitious > 0);
}

TEST_CASE("classification is deterministic") {
  const EmbeddedGeometry<1> geometry = two_rod_geometry(8);
  for (double x : {0.3, 1.0, 1.7, 7.0 / 3.0, 2.9}) {
    const double first = geometry.alpha_at({x});
    for (int i = 0; i < 10; ++i) CHECK(geometry.alpha_at({x}) == first);
  }
}

TEST_CASE("cut detection on the rod") {
  const EmbeddedGeometry<1> geometry = two_rod_geometry(8);
  const ProbeRule probe{6};
  CHECK_FALSE(geometry.is_cut(make_interval(0.0, 0.9), probe));
  CHECK(geometry.is_cut(make_interval(0.0, 1.5), probe));
  CHECK_FALSE(geometry.is_cut(make_interval(1.2, 2.0), probe));
}

TEST_CASE("cut detection is conservative under probe refinement") {
  const auto physical = regions::region_complement(regions::circle(0.4, 0.6, 0.23));
  const EmbeddedGeometry<2> geometry(make_rect(0.0, 0.0, 1.0, 1.0), physical, 6);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(0.0, 0.8);
  std::uniform_real_distribution<double> size(0.05, 0.2);
  for (int i = 0; i < 200; ++i) {
    const double x = coord(rng), y = coord(rng), w = size(rng), h = size(rng);
    const Box<2> cell = make_rect(x, y, x + w, y + h);
    if (geometry.is_cut(cell, ProbeRule{4})) {
      CHECK(geometry.is_cut(cell, ProbeRule{8}));
      CHECK(geometry.is_cut(cell, ProbeRule{16}));
    }
  }
}

TEST_CASE("bitmap geometry: uniform grid is never penalized") {
  const auto geometry =
      geometry_from_bitmap({{1, 1}, {1, 1}}, make_rect(0.0, 0.0, 1.0, 1.0), 6);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    CHECK(geometry.alpha_at({coord(rng), coord(rng)}) == 1.0);
  }
}

TEST_CASE("bitmap geometry: pixel lookup") {
  // rows are bottom-up: the zero pixel sits top-right
  const auto geometry =
      geometry_from_bitmap({{1, 1}, {1, 0}}, make_rect(0.0, 0.0, 1.0, 1.0), 7);
  CHECK(geometry.alpha_at({0.75, 0.75}) == doctest::Approx(1e-7).epsilon(1e-14));
  CHECK(geometry.alpha_at({0.25, 0.75}) == 1.0);
  CHECK(geometry.alpha_at({0.75, 0.25}) == 1.0);
}

TEST_CASE("bitmap geometry: empty grid rejected") {
  CHECK_THROWS_AS(geometry_from_bitmap({}, make_rect(0, 0, 1, 1), 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(geometry_from_bitmap({{}}, make_rect(0, 0, 1, 1), 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(geometry_from_bitmap({{1, 1}, {1}}, make_rect(0, 0, 1, 1), 6),
                  std::invalid_argument);
}

TEST_CASE("bitmap geometry: cut cells match brute-force pixel overlap") {
  // single zero pixel inside an 8x8 grid
  std::vector<std::vector<uint8_t>> grid(8, std::vector<uint8_t>(8, 1));
  const int zero_col = 3, zero_row = 4;
  grid[zero_row][zero_col] = 0;
  const auto geometry = geometry_from_bitmap(grid, make_rect(0.0, 0.0, 1.0, 1.0), 6);
  const Box<2> pixel = make_rect(zero_col / 8.0, zero_row / 8.0, (zero_col + 1) / 8.0,
                                 (zero_row + 1) / 8.0);

  // 4x4 cell grid: overlaps are either empty or a full pixel, so a dense
  // probe lattice must agree exactly with geometric overlap.
  for (int cy = 0; cy < 4; ++cy) {
    for (int cx = 0; cx < 4; ++cx) {
      const Box<2> cell = make_rect(cx / 4.0, cy / 4.0, (cx + 1) / 4.0, (cy + 1) / 4.0);
      const bool overlaps = cell.lo[0] < pixel.hi[0] && pixel.lo[0] < cell.hi[0] &&
                            cell.lo[1] < pixel.hi[1] && pixel.lo[1] < cell.hi[1];
      CHECK(geometry.is_cut(cell, ProbeRule{9}) == overlaps);
    }
  }
}

TEST_CASE("bitmap agrees with the implicit region it rasterizes") {
  const auto physical = regions::region_complement(regions::circle(0.5, 0.5, 0.3));
  const EmbeddedGeometry<2> implicit_geometry(make_rect(0.0, 0.0, 1.0, 1.0), physical,
                                              6);
  const int n = 64;
  std::vector<std::vector<uint8_t>> grid(n, std::vector<uint8_t>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = (c + 0.5) / n;
      const double y = (r + 0.5) / n;
      grid[r][c] = implicit_geometry.is_physical({x, y}) ? 1 : 0;
    }
  }
  const auto bitmap_geometry = geometry_from_bitmap(grid, make_rect(0, 0, 1, 1), 6);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = (c + 0.5) / n;
      const double y = (r + 0.5) / n;
      CHECK(bitmap_geometry.is_physical({x, y}) == implicit_geometry.is_physical({x, y}));
    }
  }
}

TEST_CASE("implicit region combinators honor the tie convention") {
  // physical = unit square minus two discs; disc boundaries stay physical
  const auto physical = regions::region_intersection(
      {regions::rectangle(0.0, 0.0, 1.0, 1.0),
       regions::region_complement(regions::region_union(
           {regions::circle(0.3, 0.3, 0.1), regions::circle(0.7, 0.7, 0.1)}))});
  const EmbeddedGeometry<2> geometry(make_rect(0.0, 0.0, 1.0, 1.0), physical, 6);
  CHECK(geometry.is_physical({0.3, 0.3 + 0.1}));  // on the disc boundary
  CHECK_FALSE(geometry.is_physical({0.3, 0.3}));
  CHECK(geometry.is_physical({0.05, 0.05}));
  CHECK(geometry.is_physical({0.0, 0.0}));  // on the square boundary
}

TEST_CASE("half plane region") {
  const EmbeddedGeometry<2> geometry(make_rect(0.0, 0.0, 1.0, 1.0),
                                     regions::half_plane(1.0, 0.0, 0.5), 6);
  CHECK(geometry.is_physical({0.2, 0.9}));
  CHECK_FALSE(geometry.is_physical({0.7, 0.1}));
  CHECK(geometry.is_physical({0.5, 0.5}));  // boundary is physical
  CHECK(geometry.is_cut(make_rect(0.4, 0.0, 0.6, 1.0), ProbeRule{4}));
}
