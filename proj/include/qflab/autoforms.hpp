#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qflab/field.hpp"
#include "qflab/group.hpp"
#include "qflab/metric.hpp"

namespace qflab {

// Seed for a theta series; must be holomorphic on the closed disk.
using SeedFn = std::function<cplx(cplx)>;
SeedFn seed_monomial(int k);

struct SeriesParams {
  int circle_samples = 2048;   // sample points on the analysis circle
  double circle_radius = 0.95; // analysis circle radius
  int taylor_terms = 768;      // coefficients kept after the FFT
  std::string cache_dir = "qflab-cache";
  std::string cache_key;  // empty: never touch the cache
};

// Weight-4 automorphic form on the disk: phi in q = phi (dchart)^2, held as
// mesh samples plus the Taylor coefficients they were evaluated from.
// tail_estimate is sup(last shell)/sup(total) on the analysis circle.
struct QDField {
  CField phi;
  std::string chart = "z";
  double tail_estimate = 0.0;
  std::vector<cplx> taylor;

  cplx eval(cplx z) const;  // Horner on the stored coefficients
};

// phi(z) = sum over words of length <= max_len of seed(gz) g'(z)^2.
QDField poincare_series(const FuchsianGroup& G, const SeedFn& seed, int max_len,
                        const Mesh& mesh, const SeriesParams& p = {});

// Same sum truncated by hyperbolic displacement instead of word length;
// the production constructor (tails decay in displacement, not word count).
QDField poincare_series_ball(const FuchsianGroup& G, const SeedFn& seed,
                             double disp_cap, const Mesh& mesh,
                             const SeriesParams& p = {});

QDField qd_from_taylor(std::vector<cplx> coeffs, const Mesh& mesh,
                       std::string chart = "z");

// max over sampled (generator g, cell z) with both endpoints evaluable of
// |phi(gz) g'(z)^2 - phi(z)| / (1 + |phi(z)|).
double automorphy_residual(const QDField& q, const FuchsianGroup& G);

// sup over fundamental-domain cells of |phi| / rho0.
double linf_norm(const QDField& q, const CField& rho0);

// Residuals (trace, divergence) of the real part of q against the
// Levi-Civita connection of the conformal background g0, both normalized
// by 1 + the pointwise size of h relative to the conformal density.
std::pair<double, double> check_tt(const Sym2Form& h, const ComplexMetric& g0);
std::pair<double, double> check_tt(const QDField& q, const ComplexMetric& g0);

// rho0(z) = 4/(1-|z|^2)^2 and the disk metric with g12 = rho0/2.
CField hyperbolic_density(const Mesh& m);
ComplexMetric fuchsian_metric(const Mesh& m);

Sym2Form plus_form(const QDField& q);   // c11 = phi (q = phi dz^2)
Sym2Form minus_form(const QDField& q);  // c22 = conj(phi): conjugate differential

// Basis of the 3-dimensional space from even monomial seeds {1, z^2, z^4}.
// Odd seeds sum to zero here: -id normalizes the octagon group and acts
// trivially on quadratic differentials, forcing even Taylor series.
std::array<QDField, 3> hqd_basis(const FuchsianGroup& G, const Mesh& mesh,
                                 double disp_cap = 12.4, SeriesParams p = {});

}  // namespace qflab
