#include "qflab/metric.hpp"

#include <cmath>
#include <limits>

#include "qflab/errors.hpp"

namespace qflab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// inverse metric entries at one cell
struct Inv {
  cplx i11, i12, i22;
};

Inv invert(cplx g11, cplx g12, cplx g22) {
  cplx det = g11 * g22 - g12 * g12;
  return {g22 / det, -g12 / det, g11 / det};
}

double comp_mod(cplx z) {
  return (std::isinf(z.real()) || std::isinf(z.imag())) ? kInf : std::abs(z);
}

}  // namespace

void check_nondegenerate(const ComplexMetric& g) {
  const Mesh& m = g.mesh();
  const int mg = g.margin();
  auto [worst, cell] = block_min(m.size(), [&](std::size_t c) {
    if (!m.inside[c]) return kInf;
    int i = static_cast<int>(c % m.n), j = static_cast<int>(c / m.n);
    if (i < mg || i >= m.n - mg || j < mg || j >= m.n - mg) return kInf;
    double scale = std::max({std::abs(g.g11.v[c]), std::abs(g.g12.v[c]),
                             std::abs(g.g22.v[c])});
    if (scale == 0.0) return -1.0;
    return std::abs(g.g11.v[c] * g.g22.v[c] - g.g12.v[c] * g.g12.v[c]) /
               (scale * scale) -
           1e-12;
  });
  if (worst < 0.0)
    throw DegenerateMetric("metric determinant vanishes at cell " +
                           std::to_string(cell));
}

ComplexMetric pullback_G_metric(const CField& f1, const CField& f2bar) {
  const Mesh& m = *f1.mesh;
  CField a1 = deriv_z(f1), b1 = deriv_zbar(f1);
  CField a2 = deriv_z(f2bar), b2 = deriv_zbar(f2bar);

  ComplexMetric g{make_field(m, f1.chart), make_field(m, f1.chart),
                  make_field(m, f1.chart)};
  g.g11.margin = g.g12.margin = g.g22.margin = a1.margin;

  // validity codes gathered first; throwing from a parallel region is not allowed
  std::vector<std::uint8_t> bad(m.size(), 0);
  const int mg = a1.margin;
  par_for(m.size(), [&](std::size_t c) {
    cplx diff = f1.v[c] - f2bar.v[c];
    int i = static_cast<int>(c % m.n), j = static_cast<int>(c / m.n);
    bool fd_valid =
        i >= mg && i < m.n - mg && j >= mg && j < m.n - mg;
    if (m.inside[c] && fd_valid) {
      double scale = 1.0 + std::abs(f1.v[c]) + std::abs(f2bar.v[c]);
      if (std::abs(diff) < 1e-12 * scale)
        bad[c] = 1;
      else if (std::abs(b1.v[c]) >= std::abs(a1.v[c]))
        bad[c] = 2;
      else if (std::abs(a2.v[c]) >= std::abs(b2.v[c]))
        bad[c] = 3;
    }
    if (bad[c]) return;
    cplx G = -4.0 / (diff * diff);
    g.g11.v[c] = G * a1.v[c] * a2.v[c];
    g.g12.v[c] = G * 0.5 * (a1.v[c] * b2.v[c] + b1.v[c] * a2.v[c]);
    g.g22.v[c] = G * b1.v[c] * b2.v[c];
  });
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (bad[c] == 1)
      throw CoincidentValues("developing pair collides at cell " + std::to_string(c));
    if (bad[c] == 2)
      throw OrientationViolation("first chart not orientation-preserving at cell " +
                                 std::to_string(c));
    if (bad[c] == 3)
      throw OrientationViolation("second chart not orientation-reversing at cell " +
                                 std::to_string(c));
  }
  return g;
}

CField curvature_field(const ComplexMetric& g) {
  const Mesh& m = g.mesh();
  check_nondegenerate(g);

  CField d1g11 = deriv_z(g.g11), d2g11 = deriv_zbar(g.g11);
  CField d1g12 = deriv_z(g.g12), d2g12 = deriv_zbar(g.g12);
  CField d1g22 = deriv_z(g.g22), d2g22 = deriv_zbar(g.g22);

  // Christoffel symbols, lower indices symmetric
  CField G111 = make_field(m), G112 = make_field(m), G122 = make_field(m);
  CField G211 = make_field(m), G212 = make_field(m), G222 = make_field(m);
  int mg = d1g11.margin;
  for (CField* f : {&G111, &G112, &G122, &G211, &G212, &G222}) f->margin = mg;

  par_for(m.size(), [&](std::size_t c) {
    Inv iv = invert(g.g11.v[c], g.g12.v[c], g.g22.v[c]);
    cplx t11_l1 = d1g11.v[c];                      // 2 d1 g11 - d1 g11
    cplx t11_l2 = 2.0 * d1g12.v[c] - d2g11.v[c];
    cplx t12_l1 = d2g11.v[c];
    cplx t12_l2 = d1g22.v[c];
    cplx t22_l1 = 2.0 * d2g12.v[c] - d1g22.v[c];
    cplx t22_l2 = d2g22.v[c];
    G111.v[c] = 0.5 * (iv.i11 * t11_l1 + iv.i12 * t11_l2);
    G211.v[c] = 0.5 * (iv.i12 * t11_l1 + iv.i22 * t11_l2);
    G112.v[c] = 0.5 * (iv.i11 * t12_l1 + iv.i12 * t12_l2);
    G212.v[c] = 0.5 * (iv.i12 * t12_l1 + iv.i22 * t12_l2);
    G122.v[c] = 0.5 * (iv.i11 * t22_l1 + iv.i12 * t22_l2);
    G222.v[c] = 0.5 * (iv.i12 * t22_l1 + iv.i22 * t22_l2);
  });

  CField d1G122 = deriv_z(G122), d1G222 = deriv_z(G222);
  CField d2G112 = deriv_zbar(G112), d2G212 = deriv_zbar(G212);

  CField K = make_field(m);
  K.margin = d1G122.margin;
  par_for(m.size(), [&](std::size_t c) {
    // (R(d1,d2)d2)^l = d1 G^l_22 - d2 G^l_12 + G^l_1m G^m_22 - G^l_2m G^m_12
    cplx r1 = d1G122.v[c] - d2G112.v[c] + G111.v[c] * G122.v[c] +
              G112.v[c] * G222.v[c] - G112.v[c] * G112.v[c] -
              G122.v[c] * G212.v[c];
    cplx r2 = d1G222.v[c] - d2G212.v[c] + G211.v[c] * G122.v[c] +
              G212.v[c] * G222.v[c] - G212.v[c] * G112.v[c] -
              G222.v[c] * G212.v[c];
    cplx num = g.g11.v[c] * r1 + g.g12.v[c] * r2;
    cplx det = g.g11.v[c] * g.g22.v[c] - g.g12.v[c] * g.g12.v[c];
    K.v[c] = num / det;
  });
  return K;
}

double max_curvature_deviation(const CField& K, double target) {
  const Mesh& m = *K.mesh;
  const double safe = kEvalRadius - 6.0 * m.h;
  auto [neg, cell] = block_min(m.size(), [&](std::size_t c) {
    if (!m.inside[c]) return 0.0;
    int i = static_cast<int>(c % m.n), j = static_cast<int>(c / m.n);
    if (i < K.margin || i >= m.n - K.margin || j < K.margin || j >= m.n - K.margin)
      return 0.0;
    if (std::abs(m.center(i, j)) > safe) return 0.0;
    return -std::abs(K.v[c] - target);
  });
  (void)cell;
  return -neg;
}

IsotropicRatios isotropic_ratios(const ComplexMetric& g) {
  const Mesh& m = g.mesh();
  check_nondegenerate(g);
  IsotropicRatios out{make_field(m), make_field(m),
                      std::vector<std::uint8_t>(m.size(), 0), false};
  out.r_minus.margin = out.r_plus.margin = g.margin();

  par_for(m.size(), [&](std::size_t c) {
    cplx a = g.g11.v[c], b = g.g12.v[c], e = g.g22.v[c];
    double scale = std::max({std::abs(a), std::abs(b), std::abs(e)});
    if (scale == 0.0) {
      out.r_minus.v[c] = out.r_plus.v[c] = 0.0;
      return;
    }
    cplx r1, r2;
    if (std::abs(a) < 1e-14 * scale) {
      // degree drop: one root escapes to infinity
      r2 = cplx{kInf, 0.0};
      r1 = (std::abs(b) > 0.0) ? -e / (2.0 * b) : cplx{kInf, 0.0};
    } else {
      cplx disc = std::sqrt(b * b - a * e);
      cplx q = (std::abs(b + disc) >= std::abs(b - disc)) ? -(b + disc) : -(b - disc);
      r1 = q / a;
      r2 = e / q;
      if (std::abs(b * b - a * e) < 1e-24 * scale * scale)
        out.double_root[c] = 1;
    }
    if (comp_mod(r1) > comp_mod(r2)) std::swap(r1, r2);
    out.r_minus.v[c] = r1;
    out.r_plus.v[c] = r2;
  });
  for (std::size_t c = 0; c < m.size(); ++c)
    if (out.double_root[c] && m.inside[c]) out.any_double_root = true;
  return out;
}

PositivityCertificate is_positive(const ComplexMetric& g) {
  IsotropicRatios ir = isotropic_ratios(g);
  const Mesh& m = g.mesh();
  const int mg = g.margin();
  auto [margin, cell] = block_min(m.size(), [&](std::size_t c) {
    if (!m.inside[c]) return kInf;
    int i = static_cast<int>(c % m.n), j = static_cast<int>(c / m.n);
    if (i < mg || i >= m.n - mg || j < mg || j >= m.n - mg) return kInf;
    double lo = std::abs(ir.r_minus.v[c]);
    double hi = std::abs(ir.r_plus.v[c]);
    double gap_lo = 1.0 - lo;                          // want |r_minus| < 1
    double gap_hi = std::isinf(hi) ? kInf : hi - 1.0;  // want |r_plus| > 1
    return std::min(gap_lo, gap_hi);
  });
  return {margin > 0.0, cell, margin};
}

CField area_form(const ComplexMetric& g) {
  CField a = g.g12;
  par_for(a.v.size(), [&](std::size_t c) { a.v[c] *= 2.0; });
  return a;
}

ComplexMetric conjugate_metric(const ComplexMetric& g) {
  ComplexMetric out{g.g22, g.g12, g.g11};
  par_for(g.g11.v.size(), [&](std::size_t c) {
    out.g11.v[c] = std::conj(g.g22.v[c]);
    out.g12.v[c] = std::conj(g.g12.v[c]);
    out.g22.v[c] = std::conj(g.g11.v[c]);
  });
  return out;
}

Sym2Form conjugate_form(const Sym2Form& s) {
  ComplexMetric tmp{s.c11, s.c12, s.c22};
  ComplexMetric c = conjugate_metric(tmp);
  return {c.g11, c.g12, c.g22};
}

CField sym2_inner(const Sym2Form& alpha, const Sym2Form& beta, const ComplexMetric& g) {
  const Mesh& m = g.mesh();
  check_nondegenerate(g);
  CField out = make_field(m, alpha.c11.chart);
  out.margin = std::max({alpha.c11.margin, beta.c11.margin, g.margin()});
  par_for(m.size(), [&](std::size_t c) {
    Inv iv = invert(g.g11.v[c], g.g12.v[c], g.g22.v[c]);
    cplx gi[2][2] = {{iv.i11, iv.i12}, {iv.i12, iv.i22}};
    cplx A[2][2] = {{alpha.c11.v[c], alpha.c12.v[c]},
                    {alpha.c12.v[c], alpha.c22.v[c]}};
    cplx B[2][2] = {{beta.c11.v[c], beta.c12.v[c]}, {beta.c12.v[c], beta.c22.v[c]}};
    // tr(Ginv A Ginv B)
    cplx GA[2][2]{}, GB[2][2]{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          GA[i][j] += gi[i][k] * A[k][j];
          GB[i][j] += gi[i][k] * B[k][j];
        }
    cplx tr{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) tr += GA[i][j] * GB[j][i];
    out.v[c] = tr;
  });
  return out;
}

Sym2Form add_scaled(const Sym2Form& a, cplx s, const Sym2Form& b) {
  Sym2Form out = a;
  par_for(out.c11.v.size(), [&](std::size_t c) {
    out.c11.v[c] = a.c11.v[c] + s * b.c11.v[c];
    out.c12.v[c] = a.c12.v[c] + s * b.c12.v[c];
    out.c22.v[c] = a.c22.v[c] + s * b.c22.v[c];
  });
  out.c11.margin = out.c12.margin = out.c22.margin =
      std::max(a.c11.margin, b.c11.margin);
  return out;
}

ComplexMetric add_scaled(const ComplexMetric& a, cplx s, const Sym2Form& b) {
  Sym2Form r = add_scaled(a.as_form(), s, b);
  return {r.c11, r.c12, r.c22};
}

}  // namespace qflab
