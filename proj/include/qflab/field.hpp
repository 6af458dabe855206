#pragma once

#include <string>
#include <vector>

#include "qflab/common.hpp"
#include "qflab/kernels.hpp"
#include "qflab/mesh.hpp"

namespace qflab {

// Complex scalar samples on the cells of a Mesh. `margin` counts boundary
// layers of the box whose values are not meaningful (grows by 2 per
// derivative). The mesh is owned by the caller and must outlive the field.
struct CField {
  const Mesh* mesh = nullptr;
  std::string chart = "z";
  int margin = 0;
  std::vector<cplx> v;

  cplx at(int i, int j) const { return v[mesh->idx(i, j)]; }
};

CField make_field(const Mesh& m, const std::string& chart = "z");

// Pointwise evaluation of f at every evaluable cell center (others get 0).
template <class F>
CField sample_field(const Mesh& m, const std::string& chart, F&& f) {
  CField out = make_field(m, chart);
  par_for(m.size(), [&](std::size_t c) {
    if (m.evaluable[c])
      out.v[c] = f(m.center(static_cast<int>(c % m.n), static_cast<int>(c / m.n)));
  });
  return out;
}

// Fourth-order centered differences; stencil 5 wide.
CField deriv_x(const CField& f);
CField deriv_y(const CField& f);
CField deriv_z(const CField& f);     // (d/dx - i d/dy)/2
CField deriv_zbar(const CField& f);  // (d/dx + i d/dy)/2

// Octagon integral: sum of w * f over cells.
cplx integrate(const Mesh& m, const std::vector<cplx>& vals);

// Max |f| over octagon-inside cells at index margin >= `margin` from the box.
double sup_inside(const CField& f, int margin = 0);

// Grid description used by the serialized form.
struct GridSpec {
  double x0 = 0.0, y0 = 0.0, h = 0.0;
  int nx = 0, ny = 0;
};

struct FieldData {
  std::string chart;
  GridSpec grid;
  std::vector<cplx> v;  // row-major, index j*nx + i
};

FieldData to_data(const CField& f);
void write_field_json(const std::string& path, const FieldData& f);
FieldData read_field_json(const std::string& path);
void write_field_csv(const std::string& path, const FieldData& f);

}  // namespace qflab
