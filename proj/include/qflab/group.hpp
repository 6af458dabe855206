#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qflab/common.hpp"
#include "qflab/mobius.hpp"

namespace qflab {

// Letters 0..3 are the generators a,b,c,d; 4..7 their inverses.
struct GroupElement {
  Mat2c m;
  int word_len = 0;
  double displacement = 0.0;  // hyperbolic d(0, m(0))
};

// Genus-2 surface group acting on the unit disk, built from the regular
// octagon with all vertex angles pi/4 and side pairing with relator
// [a,b][c,d] = Id.
struct FuchsianGroup {
  std::array<Mat2c, 4> gens;       // a, b, c, d
  std::array<Mat2c, 8> letters;    // a,b,c,d,a^-1,b^-1,c^-1,d^-1
  std::array<cplx, 8> vertices;    // octagon vertices, Euclidean
  std::array<cplx, 8> side_center; // side geodesic circle centers
  double side_radius = 0.0;        // common Euclidean radius of side circles
  double vertex_radius = 0.0;      // Euclidean distance 0 -> vertex
  double relator_residual = 0.0;
  // letters[side_return[k]] maps the tile adjacent across side k back to the
  // base octagon.
  std::array<int, 8> side_return{};

  bool in_fundamental_domain(cplx z) const;
};

FuchsianGroup build_genus2_group();

// Hyperbolic displacement d(0, m(0)) of an SU(1,1) element.
double displacement_of(const Mat2c& m);

// All reduced words of length <= max_len, deduplicated by matrix distance.
// Throws BudgetExceeded if more than `cap` elements would be retained.
std::vector<GroupElement> enumerate_group(const FuchsianGroup& g, int max_len,
                                          std::size_t cap = 5'000'000);

// All elements with displacement <= disp_cap, found by breadth-first search
// over the Cayley graph pruned at disp_cap + slack. The slack covers the
// detour a geodesic word may take; the default is validated by test.
std::vector<GroupElement> enumerate_ball(const FuchsianGroup& g, double disp_cap,
                                         double slack = 3.2,
                                         std::size_t cap = 5'000'000);

// Dirichlet reduction of z into the fundamental octagon. Returns the reduced
// point; `word_out` (if non-null) receives the letter indices applied, so the
// input lies in the tile of the inverse product. Throws ConstructionFailure
// if reduction does not terminate within max_steps.
cplx reduce_to_domain(const FuchsianGroup& g, cplx z, std::vector<int>* word_out = nullptr,
                      int max_steps = 256);

}  // namespace qflab
