#include "qflab/mobius.hpp"

#include <cmath>

namespace qflab {

Mat2c normalize_det(const Mat2c& m) {
  cplx dt = m.det();
  if (std::abs(dt) < 1e-300) throw ConstructionFailure("singular matrix in normalize_det");
  cplx s = 1.0 / std::sqrt(dt);
  Mat2c r = s * m;
  // Canonical projective sign: largest-modulus entry gets argument in (-pi/2, pi/2].
  cplx lead = r.a;
  double best = std::norm(r.a);
  for (cplx e : {r.b, r.c, r.d}) {
    if (std::norm(e) > best) {
      best = std::norm(e);
      lead = e;
    }
  }
  if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) r = cplx(-1.0) * r;
  return r;
}

Mat2c disk_translate_to_zero(cplx p) {
  double s = 1.0 - std::norm(p);
  if (s <= 0.0) throw ConstructionFailure("disk_translate_to_zero: |p| >= 1");
  double inv = 1.0 / std::sqrt(s);
  return {inv, -p * inv, -std::conj(p) * inv, inv};
}

Mat2c disk_rotation(double theta) {
  cplx h = std::polar(1.0, theta / 2.0);
  return {h, 0.0, 0.0, std::conj(h)};
}

namespace {
// Matrix of the map sending (z1, z2, z3) to (0, 1, infinity).
Mat2c to_standard_triple(const cplx p[3]) {
  cplx z1 = p[0], z2 = p[1], z3 = p[2];
  return {z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
}
}  // namespace

Mat2c three_point_mobius(const cplx src[3], const cplx dst[3]) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(src[i] - src[j]) < 1e-14)
        throw DegenerateProbes("three_point_mobius: coincident source points");
      if (std::abs(dst[i] - dst[j]) < 1e-14)
        throw DegenerateProbes("three_point_mobius: coincident target points");
    }
  Mat2c ms = to_standard_triple(src);
  Mat2c md = to_standard_triple(dst);
  return normalize_det(md.inverse() * ms);
}

double su11_residual(const Mat2c& m) {
  return std::abs(m.d - std::conj(m.a)) + std::abs(m.c - std::conj(m.b)) +
         std::abs(std::norm(m.a) - std::norm(m.b) - 1.0);
}

double mobius_dist(const Mat2c& m, const Mat2c& n) {
  double dplus = (m - n).norm();
  double dminus = (m + n).norm();
  return dplus < dminus ? dplus : dminus;
}

}  // namespace qflab
