#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qflab/field.hpp"

namespace qflab {

// Symmetric complex 2-form S = c11 dz.dz + 2 c12 dz.dzbar + c22 dzbar.dzbar
// in the background chart, symmetric-product convention a.b = (ab+ba)/2.
struct Sym2Form {
  CField c11, c12, c22;
  const Mesh& mesh() const { return *c11.mesh; }
};

// Complex metric: same storage, g11 = g(dz,dz) etc. For a Bers metric
// rho dz.dwbar: g11 = rho dz(wbar), g12 = rho dzbar(wbar)/2, g22 = 0.
struct ComplexMetric {
  CField g11, g12, g22;
  const Mesh& mesh() const { return *g11.mesh; }
  int margin() const { return g11.margin; }
  Sym2Form as_form() const { return {g11, g12, g22}; }
};

// g = -4 (f1-f2bar)^-2 df1.df2bar assembled by finite differences.
// f1 must be orientation-preserving and f2bar orientation-reversing on the
// octagon; they may not collide there.
ComplexMetric pullback_G_metric(const CField& f1, const CField& f2bar);

// Gauss curvature in the coordinate frame (dz, dzbar) with complex
// Christoffel symbols; two layers of centered differences (margin +4).
CField curvature_field(const ComplexMetric& g);

// Max |K - target| over octagon cells whose full double-stencil stays in the
// evaluable disk.
double max_curvature_deviation(const CField& K, double target);

struct IsotropicRatios {
  CField r_minus, r_plus;  // sorted by modulus; infinity marks a dropped degree
  std::vector<std::uint8_t> double_root;
  bool any_double_root = false;
};
IsotropicRatios isotropic_ratios(const ComplexMetric& g);

struct PositivityCertificate {
  bool positive = false;
  std::size_t worst_cell = 0;
  double margin = 0.0;  // min over cells of the gap of root moduli to 1
};
PositivityCertificate is_positive(const ComplexMetric& g);

// Area density a with dA = a (i/2) dz^dzbar; a = 2 g12 on Bers-form metrics,
// which agrees with the Riemannian density at the Fuchsian point.
CField area_form(const ComplexMetric& g);

ComplexMetric conjugate_metric(const ComplexMetric& g);
Sym2Form conjugate_form(const Sym2Form& s);

// Pointwise <alpha,beta>_g = tr(Ginv A Ginv B), no conjugation.
CField sym2_inner(const Sym2Form& alpha, const Sym2Form& beta, const ComplexMetric& g);

// Throws DegenerateMetric if any octagon-inside cell fails the scale-free
// determinant test.
void check_nondegenerate(const ComplexMetric& g);

// Componentwise a + s*b.
Sym2Form add_scaled(const Sym2Form& a, cplx s, const Sym2Form& b);
ComplexMetric add_scaled(const ComplexMetric& a, cplx s, const Sym2Form& b);

}  // namespace qflab
