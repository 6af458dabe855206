#include "qflab/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "qflab/errors.hpp"
#include "qflab/kernels.hpp"

namespace qflab {

namespace {

// Antiderivative of sqrt(r^2 - x^2).
double half_lens(double r, double x) {
  double u = std::clamp(x / r, -1.0, 1.0);
  return 0.5 * (x * std::sqrt(std::max(r * r - x * x, 0.0)) + r * r * std::asin(u));
}

}  // namespace

RegionMoments circle_rect_moments(cplx c, double r, double x1, double x2, double y1,
                                  double y2) {
  RegionMoments out;
  if (r <= 0.0) return out;
  const double a1 = x1 - c.real(), a2 = x2 - c.real();
  const double b1 = y1 - c.imag(), b2 = y2 - c.imag();
  double lo = std::max(a1, -r), hi = std::min(a2, r);
  if (lo >= hi) return out;

  double bp[8];
  int nbp = 0;
  bp[nbp++] = lo;
  bp[nbp++] = hi;
  for (double b : {b1, b2}) {
    if (std::abs(b) < r) {
      double s = std::sqrt(r * r - b * b);
      if (s > lo && s < hi) bp[nbp++] = s;
      if (-s > lo && -s < hi) bp[nbp++] = -s;
    }
  }
  std::sort(bp, bp + nbp);

  // antiderivatives in the circle-centered frame
  auto t_cube = [&](double x) {
    double q = std::max(r * r - x * x, 0.0);
    return -std::sqrt(q) * q / 3.0;  // of x*sqrt(r^2-x^2)
  };
  auto t_sq_half = [&](double x) {
    return 0.5 * r * r * x - x * x * x / 6.0;  // of (r^2-x^2)/2
  };

  for (int i = 0; i + 1 < nbp; ++i) {
    double u = bp[i], v = bp[i + 1];
    if (v - u < 1e-300) continue;
    double m = 0.5 * (u + v);
    double tm = std::sqrt(std::max(r * r - m * m, 0.0));
    double top_m = std::min(tm, b2), bot_m = std::max(-tm, b1);
    if (top_m <= bot_m) continue;
    bool top_t = tm < b2, bot_t = -tm > b1;
    double fu = half_lens(r, u), fv = half_lens(r, v);
    double len_top = top_t ? (fv - fu) : b2 * (v - u);
    double len_bot = bot_t ? -(fv - fu) : b1 * (v - u);
    out.area += len_top - len_bot;
    double mx_top = top_t ? (t_cube(v) - t_cube(u)) : b2 * 0.5 * (v * v - u * u);
    double mx_bot = bot_t ? -(t_cube(v) - t_cube(u)) : b1 * 0.5 * (v * v - u * u);
    out.mx += mx_top - mx_bot;
    double my_top = top_t ? (t_sq_half(v) - t_sq_half(u)) : 0.5 * b2 * b2 * (v - u);
    double my_bot = bot_t ? (t_sq_half(v) - t_sq_half(u)) : 0.5 * b1 * b1 * (v - u);
    out.my += my_top - my_bot;
  }
  out.area = std::max(out.area, 0.0);
  out.mx += c.real() * out.area;
  out.my += c.imag() * out.area;
  return out;
}

double circle_rect_area(cplx c, double r, double x1, double x2, double y1, double y2) {
  return circle_rect_moments(c, r, x1, x2, y1, y2).area;
}

double Mesh::total_weight() const {
  return block_sum<double>(w.size(), [this](std::size_t i) { return w[i]; });
}

Mesh make_octagon_mesh(const FuchsianGroup& g, int n, cplx shift) {
  if (n < 48) throw ConfigError("mesh resolution below 48");
  Mesh m;
  m.n = n;
  m.h = 2.0 * g.vertex_radius / (n - 17);
  const double R = 0.5 * m.h * n;
  m.x0 = -R + 0.5 * m.h + shift.real();
  m.y0 = -R + 0.5 * m.h + shift.imag();
  m.w.assign(m.size(), 0.0);
  m.centroid.assign(m.size(), cplx{});
  m.inside.assign(m.size(), 0);
  m.evaluable.assign(m.size(), 0);

  const double rv = g.vertex_radius;
  const double rc = g.side_radius;

  par_for(m.size(), [&](std::size_t cell) {
    int i = static_cast<int>(cell % n), j = static_cast<int>(cell / n);
    cplx z = m.center(i, j);
    m.centroid[cell] = z;
    const double x1 = z.real() - 0.5 * m.h, x2 = z.real() + 0.5 * m.h;
    const double y1 = z.imag() - 0.5 * m.h, y2 = z.imag() + 0.5 * m.h;

    m.evaluable[cell] = std::abs(z) <= kEvalRadius ? 1 : 0;

    bool center_in = std::abs(z) < rv;
    for (int k = 0; k < 8 && center_in; ++k)
      if (std::abs(z - g.side_center[k]) < rc) center_in = false;
    m.inside[cell] = center_in ? 1 : 0;

    auto rect_dist = [&](cplx c) {
      double dx = std::max({x1 - c.real(), 0.0, c.real() - x2});
      double dy = std::max({y1 - c.imag(), 0.0, c.imag() - y2});
      return std::hypot(dx, dy);
    };
    auto corner_max = [&](cplx c) {
      double d = 0.0;
      for (double cx : {x1, x2})
        for (double cy : {y1, y2}) d = std::max(d, std::abs(cplx(cx, cy) - c));
      return d;
    };

    // vertex circle: octagon lies inside |z| <= rv
    double dmin0 = rect_dist({0.0, 0.0});
    if (dmin0 >= rv) return;  // weight stays 0
    bool rv_straddle = corner_max({0.0, 0.0}) > rv;

    int straddle_k = -1, n_straddle = 0;
    for (int k = 0; k < 8; ++k) {
      double dmin = rect_dist(g.side_center[k]);
      double dmax = corner_max(g.side_center[k]);
      if (dmax <= rc) return;  // swallowed by a side disk, weight 0
      if (dmin < rc && rc < dmax) {
        straddle_k = k;
        ++n_straddle;
      }
    }

    if (n_straddle == 0 && !rv_straddle) {
      m.w[cell] = m.h * m.h;
      return;
    }
    if (n_straddle == 1 && !rv_straddle) {
      RegionMoments cut =
          circle_rect_moments(g.side_center[straddle_k], rc, x1, x2, y1, y2);
      double cellarea = m.h * m.h;
      m.w[cell] = std::max(cellarea - cut.area, 0.0);
      if (m.w[cell] > 1e-14 * cellarea)
        m.centroid[cell] = cplx{cellarea * z.real() - cut.mx, cellarea * z.imag() - cut.my} /
                           m.w[cell];
      return;
    }

    // corner cell: subsample
    constexpr int S = 32;
    int cnt = 0;
    cplx acc{};
    for (int a = 0; a < S; ++a)
      for (int b = 0; b < S; ++b) {
        cplx p{x1 + (a + 0.5) * m.h / S, y1 + (b + 0.5) * m.h / S};
        if (std::abs(p) > rv) continue;
        bool in = true;
        for (int k = 0; k < 8 && in; ++k)
          if (std::abs(p - g.side_center[k]) < rc) in = false;
        if (in) {
          ++cnt;
          acc += p;
        }
      }
    m.w[cell] = m.h * m.h * cnt / (S * S);
    if (cnt > 0) m.centroid[cell] = acc / static_cast<double>(cnt);
  });

  return m;
}

}  // namespace qflab
