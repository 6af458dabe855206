#pragma once

#include <cstdint>
#include <vector>

#include "qflab/common.hpp"
#include "qflab/group.hpp"

namespace qflab {

// Uniform grid of cell centers covering the fundamental octagon with at
// least eight cells of padding on every side. Cell centers are half-offset
// from the box edges and never hit coordinate axes exactly unless shifted.
// `w` holds the area of (cell intersect octagon): full cells contribute h^2,
// cells crossing a single side arc are clipped exactly, corner cells are
// subsampled. Integrals over the surface are plain weighted sums.
struct Mesh {
  int n = 0;          // cells per side
  double h = 0.0;     // spacing
  double x0 = 0.0, y0 = 0.0;  // center of cell (0,0)
  std::vector<double> w;
  std::vector<cplx> centroid;           // centroid of (cell intersect octagon)
  std::vector<std::uint8_t> inside;     // center strictly inside the octagon
  std::vector<std::uint8_t> evaluable;  // center within the series eval radius

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * n + i; }
  cplx center(int i, int j) const { return {x0 + i * h, y0 + j * h}; }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  double total_weight() const;
};

inline constexpr double kEvalRadius = 0.9;

Mesh make_octagon_mesh(const FuchsianGroup& g, int n, cplx shift = {});

// Exact area of {|z-c| <= r} intersected with [x1,x2]x[y1,y2].
double circle_rect_area(cplx c, double r, double x1, double x2, double y1, double y2);

// Same region: area and first moments (integral of x dA, integral of y dA).
struct RegionMoments {
  double area = 0.0, mx = 0.0, my = 0.0;
};
RegionMoments circle_rect_moments(cplx c, double r, double x1, double x2, double y1,
                                  double y2);

}  // namespace qflab
