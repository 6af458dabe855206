#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace qflab {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;

// 2x2 complex matrix, row-major [[a,b],[c,d]].
struct Mat2c {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  friend Mat2c operator*(const Mat2c& m, const Mat2c& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend Mat2c operator*(cplx s, const Mat2c& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend Mat2c operator+(const Mat2c& m, const Mat2c& n) {
    return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
  }
  friend Mat2c operator-(const Mat2c& m, const Mat2c& n) {
    return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
  }
  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  Mat2c inverse() const {
    cplx dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  Mat2c transpose() const { return {a, c, b, d}; }
  double norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  }
};

inline Mat2c mat2c_identity() { return {1.0, 0.0, 0.0, 1.0}; }

// Deterministic RNG wrapper; every randomized test/run seeds explicitly.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(eng);
  }
  double gauss(double sigma = 1.0) {
    std::normal_distribution<double> d(0.0, sigma);
    return d(eng);
  }
  cplx cgauss(double sigma = 1.0) { return {gauss(sigma), gauss(sigma)}; }
  // uniform on the disk of radius r
  cplx cdisk(double r) {
    while (true) {
      cplx z{uniform(-r, r), uniform(-r, r)};
      if (std::abs(z) < r) return z;
    }
  }
};

}  // namespace qflab
