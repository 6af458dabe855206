#pragma once

#include "qflab/common.hpp"
#include "qflab/errors.hpp"

namespace qflab {

// Mobius action of a 2x2 matrix (not required to be det-normalized).
inline cplx mobius_apply(const Mat2c& m, cplx z) {
  return (m.a * z + m.b) / (m.c * z + m.d);
}

// d/dz of the action; for det(m) = 1 this is 1/(cz+d)^2.
inline cplx mobius_deriv(const Mat2c& m, cplx z) {
  cplx den = m.c * z + m.d;
  return m.det() / (den * den);
}

// Scale to det 1 and pick the sign canonically (projective representative).
Mat2c normalize_det(const Mat2c& m);

// Disk automorphism z -> (z-p)/(1 - conj(p) z) as an SU(1,1) matrix.
Mat2c disk_translate_to_zero(cplx p);

// z -> e^{i theta} z as an SU(1,1) matrix.
Mat2c disk_rotation(double theta);

// The unique Mobius map with src[k] -> dst[k], all six points finite.
Mat2c three_point_mobius(const cplx src[3], const cplx dst[3]);

// SU(1,1) shape residual: |d - conj(a)| + |c - conj(b)| + ||a|^2-|b|^2 - 1|.
double su11_residual(const Mat2c& m);

// Projective matrix distance min(|m-n|, |m+n|) for det-normalized inputs.
double mobius_dist(const Mat2c& m, const Mat2c& n);

}  // namespace qflab
