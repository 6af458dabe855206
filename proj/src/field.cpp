#include "qflab/field.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "qflab/errors.hpp"

namespace qflab {

CField make_field(const Mesh& m, const std::string& chart) {
  CField f;
  f.mesh = &m;
  f.chart = chart;
  f.v.assign(m.size(), cplx{});
  return f;
}

namespace {

enum class Axis { X, Y };

CField deriv4(const CField& f, Axis axis) {
  const Mesh& m = *f.mesh;
  CField out = make_field(m, f.chart);
  out.margin = f.margin + 2;
  const int lo = out.margin, hi = m.n - out.margin;
  const double inv = 1.0 / (12.0 * m.h);
  par_for(m.size(), [&](std::size_t c) {
    int i = static_cast<int>(c % m.n), j = static_cast<int>(c / m.n);
    if (i < lo || i >= hi || j < lo || j >= hi) return;
    cplx p2, p1, m1, m2;
    if (axis == Axis::X) {
      p2 = f.at(i + 2, j), p1 = f.at(i + 1, j);
      m1 = f.at(i - 1, j), m2 = f.at(i - 2, j);
    } else {
      p2 = f.at(i, j + 2), p1 = f.at(i, j + 1);
      m1 = f.at(i, j - 1), m2 = f.at(i, j - 2);
    }
    out.v[c] = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) * inv;
  });
  return out;
}

}  // namespace

CField deriv_x(const CField& f) { return deriv4(f, Axis::X); }
CField deriv_y(const CField& f) { return deriv4(f, Axis::Y); }

CField deriv_z(const CField& f) {
  CField fx = deriv_x(f), fy = deriv_y(f);
  par_for(fx.v.size(),
          [&](std::size_t c) { fx.v[c] = 0.5 * (fx.v[c] - cplx(0, 1) * fy.v[c]); });
  return fx;
}

CField deriv_zbar(const CField& f) {
  CField fx = deriv_x(f), fy = deriv_y(f);
  par_for(fx.v.size(),
          [&](std::size_t c) { fx.v[c] = 0.5 * (fx.v[c] + cplx(0, 1) * fy.v[c]); });
  return fx;
}

cplx integrate(const Mesh& m, const std::vector<cplx>& vals) {
  return block_sum<cplx>(m.size(),
                         [&](std::size_t c) { return m.w[c] * vals[c]; });
}

double sup_inside(const CField& f, int margin) {
  const Mesh& m = *f.mesh;
  auto [neg, arg] = block_min(m.size(), [&](std::size_t c) {
    int i = static_cast<int>(c % m.n), j = static_cast<int>(c / m.n);
    if (!m.inside[c] || i < margin || i >= m.n - margin || j < margin ||
        j >= m.n - margin)
      return 0.0;
    return -std::abs(f.v[c]);
  });
  (void)arg;
  return -neg;
}

FieldData to_data(const CField& f) {
  FieldData d;
  d.chart = f.chart;
  d.grid = {f.mesh->x0, f.mesh->y0, f.mesh->h, f.mesh->n, f.mesh->n};
  d.v = f.v;
  return d;
}

void write_field_json(const std::string& path, const FieldData& f) {
  nlohmann::ordered_json j;
  j["chart"] = f.chart;
  j["grid"] = {{"origin", {f.grid.x0, f.grid.y0}},
               {"spacing", f.grid.h},
               {"nx", f.grid.nx},
               {"ny", f.grid.ny}};
  auto& data = j["data"] = nlohmann::ordered_json::array();
  for (const cplx& z : f.v) data.push_back({z.real(), z.imag()});
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for write: " + path);
  out << j.dump() << "\n";
}

FieldData read_field_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open for read: " + path);
  nlohmann::json j;
  in >> j;
  FieldData f;
  f.chart = j.at("chart").get<std::string>();
  auto& g = j.at("grid");
  f.grid.x0 = g.at("origin")[0].get<double>();
  f.grid.y0 = g.at("origin")[1].get<double>();
  f.grid.h = g.at("spacing").get<double>();
  f.grid.nx = g.at("nx").get<int>();
  f.grid.ny = g.at("ny").get<int>();
  f.v.reserve(j.at("data").size());
  for (auto& e : j.at("data")) f.v.emplace_back(e[0].get<double>(), e[1].get<double>());
  if (f.v.size() != static_cast<std::size_t>(f.grid.nx) * f.grid.ny)
    throw ConfigError("field data size does not match grid");
  return f;
}

void write_field_csv(const std::string& path, const FieldData& f) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for write: " + path);
  out << "i,j,x,y,re,im\n";
  char line[160];
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) {
      const cplx& z = f.v[static_cast<std::size_t>(j) * f.grid.nx + i];
      std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%.17g,%.17g\n", i, j,
                    f.grid.x0 + i * f.grid.h, f.grid.y0 + j * f.grid.h, z.real(),
                    z.imag());
      out << line;
    }
}

}  // namespace qflab
