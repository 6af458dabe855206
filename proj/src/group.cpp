#include "qflab/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <unordered_map>

#include "qflab/errors.hpp"

namespace qflab {

namespace {

// Vertex distance of the regular octagon with vertex angle pi/4:
//   sin(pi/4) sin(pi/8) cosh(d) = cos(pi/8) (1 + cos(pi/4)).
double solve_vertex_distance() {
  const double target = std::cos(PI / 8) * (1.0 + std::cos(PI / 4));
  const double coef = std::sin(PI / 4) * std::sin(PI / 8);
  auto f = [&](double d) { return coef * std::cosh(d) - target; };
  double lo = 0.5, hi = 6.0;
  if (f(lo) >= 0 || f(hi) <= 0) throw ConstructionFailure("vertex distance bracket");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  double d = 0.5 * (lo + hi);
  if (std::abs(f(d)) > 1e-12) throw ConstructionFailure("vertex distance residual");
  return d;
}

// Maps p -> 0 and q -> positive real axis.
Mat2c two_point_frame(cplx p, cplx q) {
  Mat2c t = disk_translate_to_zero(p);
  cplx img = mobius_apply(t, q);
  if (std::abs(img) < 1e-14) throw DegenerateProbes("coincident side endpoints");
  return disk_rotation(-std::arg(img)) * t;
}

// Isometry with (p,q) -> (p2,q2).
Mat2c pairing_map(cplx p, cplx q, cplx p2, cplx q2) {
  Mat2c m1 = two_point_frame(p, q);
  Mat2c m2 = two_point_frame(p2, q2);
  return normalize_det(m2.inverse() * m1);
}

// Nearest exact SU(1,1) matrix; keeps long products on the group manifold.
Mat2c su11_project(const Mat2c& m) {
  cplx a = 0.5 * (m.a + std::conj(m.d));
  cplx b = 0.5 * (m.b + std::conj(m.c));
  double s = std::sqrt(std::norm(a) - std::norm(b));
  a /= s;
  b /= s;
  return {a, b, std::conj(b), std::conj(a)};
}

struct Key {
  std::int64_t v[4];
  bool operator==(const Key& o) const {
    return v[0] == o.v[0] && v[1] == o.v[1] && v[2] == o.v[2] && v[3] == o.v[3];
  }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < 4; ++i) {
      h ^= static_cast<std::uint64_t>(k.v[i]);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr double kKeyQuantum = 1e-6;
constexpr double kDupTol = 1e-6;

// Only the first row is keyed; the second row of an SU(1,1) matrix is
// determined by it.
Key make_key(const Mat2c& m) {
  return {std::llround(m.a.real() / kKeyQuantum), std::llround(m.a.imag() / kKeyQuantum),
          std::llround(m.b.real() / kKeyQuantum), std::llround(m.b.imag() / kKeyQuantum)};
}

// Dedup set for group elements. Matrices within kDupTol of a stored element
// are duplicates; distinct elements of the discrete group stay several orders
// of magnitude farther apart on the radii used here. Lookup probes every
// neighbor cell of the quantized key for both signs, which is exhaustive for
// matches within one quantum, so a duplicate cannot slip through and restart
// the search from noisy copies.
class ElementSet {
 public:
  explicit ElementSet(const std::vector<GroupElement>* store) : store_(store) {}

  bool contains(const Mat2c& m) const {
    for (int sgn = 0; sgn < 2; ++sgn) {
      Key base = make_key(sgn ? cplx(-1.0, 0.0) * m : m);
      Key probe;
      for (int d0 = -1; d0 <= 1; ++d0)
        for (int d1 = -1; d1 <= 1; ++d1)
          for (int d2 = -1; d2 <= 1; ++d2)
            for (int d3 = -1; d3 <= 1; ++d3) {
              probe = {base.v[0] + d0, base.v[1] + d1, base.v[2] + d2, base.v[3] + d3};
              auto it = map_.find(probe);
              if (it != map_.end() &&
                  mobius_dist(m, (*store_)[it->second].m) < kDupTol)
                return true;
            }
    }
    return false;
  }

  void insert(const Mat2c& m, std::size_t index) { map_.emplace(make_key(m), index); }

 private:
  const std::vector<GroupElement>* store_;
  std::unordered_map<Key, std::size_t, KeyHash> map_;
};

}  // namespace

double displacement_of(const Mat2c& m) {
  double mod = std::abs(m.a);
  if (mod < 1.0) mod = 1.0;
  return 2.0 * std::acosh(mod);
}

bool FuchsianGroup::in_fundamental_domain(cplx z) const {
  if (std::abs(z) > vertex_radius) return false;
  for (int k = 0; k < 8; ++k)
    if (std::abs(z - side_center[k]) < side_radius) return false;
  return true;
}

FuchsianGroup build_genus2_group() {
  FuchsianGroup g;
  double dv = solve_vertex_distance();
  double rv = std::tanh(0.5 * dv);
  if (std::abs(rv - std::pow(2.0, -0.25)) > 1e-12)
    throw ConstructionFailure("vertex radius check");
  g.vertex_radius = rv;
  for (int k = 0; k < 8; ++k)
    g.vertices[k] = rv * std::exp(cplx(0.0, k * PI / 4));

  // Side geodesics are circles orthogonal to the unit circle through
  // consecutive vertices; side k joins v_k to v_{k+1}.
  double center_mod = (1.0 + rv * rv) / (2.0 * rv * std::cos(PI / 8));
  g.side_radius = std::sqrt(center_mod * center_mod - 1.0);
  for (int k = 0; k < 8; ++k)
    g.side_center[k] = center_mod * std::exp(cplx(0.0, (k + 0.5) * PI / 4));

  // Each pairing glues its source side to the destination side reversing the
  // boundary direction, so tiles land across the destination side. All eight
  // vertices form one cycle with angle sum 2pi.
  const auto& v = g.vertices;
  g.gens[0] = pairing_map(v[3], v[2], v[0], v[1]);  // a: side 2 -> side 0
  g.gens[1] = pairing_map(v[1], v[2], v[4], v[3]);  // b: side 1 -> side 3
  g.gens[2] = pairing_map(v[7], v[6], v[4], v[5]);  // c: side 6 -> side 4
  g.gens[3] = pairing_map(v[5], v[6], v[0], v[7]);  // d: side 5 -> side 7

  for (int i = 0; i < 4; ++i) {
    g.letters[i] = g.gens[i];
    g.letters[i + 4] = normalize_det(g.gens[i].inverse());
  }

  const Mat2c &a = g.gens[0], &b = g.gens[1], &c = g.gens[2], &d = g.gens[3];
  Mat2c rel = a * b * a.inverse() * b.inverse() * c * d * c.inverse() * d.inverse();
  g.relator_residual = mobius_dist(normalize_det(rel), mat2c_identity());
  if (g.relator_residual > 1e-9) throw ConstructionFailure("side pairing relator");

  // Tile adjacent across side k returns to the base tile under this letter.
  g.side_return = {4, 1, 0, 5, 6, 3, 2, 7};
  return g;
}

std::vector<GroupElement> enumerate_group(const FuchsianGroup& g, int max_len,
                                          std::size_t cap) {
  std::vector<GroupElement> out;
  ElementSet seen(&out);
  out.push_back({mat2c_identity(), 0, 0.0});
  seen.insert(out[0].m, 0);

  // last letter of each stored word, -1 for identity; used for free reduction
  std::vector<int> last{-1};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int j = 0; j < 8; ++j) {
        if (last[i] == (j + 4) % 8) continue;
        Mat2c m = su11_project(out[i].m * g.letters[j]);
        if (seen.contains(m)) continue;
        if (out.size() >= cap) throw BudgetExceeded("group enumeration cap");
        out.push_back({m, len, displacement_of(m)});
        last.push_back(j);
        seen.insert(m, out.size() - 1);
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

std::vector<GroupElement> enumerate_ball(const FuchsianGroup& g, double disp_cap,
                                         double slack, std::size_t cap) {
  const double search_cap = disp_cap + slack;
  std::vector<GroupElement> kept;
  ElementSet seen(&kept);
  kept.push_back({mat2c_identity(), 0, 0.0});
  seen.insert(kept[0].m, 0);

  std::vector<int> last{-1};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (int j = 0; j < 8; ++j) {
      if (last[i] == (j + 4) % 8) continue;
      Mat2c m = su11_project(kept[i].m * g.letters[j]);
      double disp = displacement_of(m);
      if (disp > search_cap) continue;
      if (seen.contains(m)) continue;
      if (kept.size() >= cap) throw BudgetExceeded("ball enumeration cap");
      kept.push_back({m, kept[i].word_len + 1, disp});
      last.push_back(j);
      seen.insert(m, kept.size() - 1);
      queue.push_back(kept.size() - 1);
    }
  }

  std::vector<GroupElement> out;
  out.reserve(kept.size());
  for (const auto& e : kept)
    if (e.displacement <= disp_cap) out.push_back(e);
  return out;
}

cplx reduce_to_domain(const FuchsianGroup& g, cplx z, std::vector<int>* word_out,
                      int max_steps) {
  if (word_out) word_out->clear();
  for (int step = 0; step < max_steps; ++step) {
    int worst = -1;
    double depth = 1e-13;
    for (int k = 0; k < 8; ++k) {
      double pen = g.side_radius - std::abs(z - g.side_center[k]);
      if (pen > depth) {
        depth = pen;
        worst = k;
      }
    }
    if (worst < 0) return z;
    int letter = g.side_return[worst];
    z = mobius_apply(g.letters[letter], z);
    if (word_out) word_out->push_back(letter);
  }
  throw ConstructionFailure("domain reduction did not terminate");
}

}  // namespace qflab
