#include "qflab/autoforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qflab/errors.hpp"

namespace qflab {

namespace {

using ordered_json = nlohmann::ordered_json;

// gz and g'(z)^2 for a det-1 map; contribution seed(gz) / (cz+d)^4
cplx theta_term(const Mat2c& m, cplx z, const SeedFn& seed) {
  cplx den = m.c * z + m.d;
  cplx gz = (m.a * z + m.b) / den;
  cplx d2 = den * den;
  return seed(gz) / (d2 * d2);
}

// circle samples of the partial sum over els[lo..hi); element order is fixed,
// so the result is independent of the thread count
std::vector<cplx> circle_sum(const std::vector<GroupElement>& els, std::size_t lo,
                             std::size_t hi, const SeedFn& seed, int M, double rs) {
  std::vector<cplx> out(M, cplx{});
  par_for(static_cast<std::size_t>(M), [&](std::size_t s) {
    cplx z = rs * std::exp(cplx{0.0, 2.0 * PI * static_cast<double>(s) / M});
    cplx acc{};
    for (std::size_t k = lo; k < hi; ++k) acc += theta_term(els[k].m, z, seed);
    out[s] = acc;
  });
  return out;
}

double sup_abs(const std::vector<cplx>& v) {
  double s = 0.0;
  for (cplx x : v) s = std::max(s, std::abs(x));
  return s;
}

// Taylor coefficients about 0 from circle samples: c_k = FFT_k / (M rs^k)
std::vector<cplx> taylor_from_circle(const std::vector<cplx>& samples, double rs,
                                     int K) {
  int M = static_cast<int>(samples.size());
  if (K > M / 2)
    throw ConfigError("taylor_terms must be at most half the circle sample count");
  std::vector<cplx> in(samples), out(M);
  fftw_plan plan = fftw_plan_dft_1d(
      M, reinterpret_cast<fftw_complex*>(in.data()),
      reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  std::vector<cplx> c(K);
  double scale = 1.0;
  for (int k = 0; k < K; ++k) {
    c[k] = out[k] / (static_cast<double>(M) * scale);
    scale *= rs;
  }
  return c;
}

struct ShellSummary {
  std::vector<cplx> total;
  double tail = 0.0;
};

// Shell sups for the convergence test are taken on a circle just outside the
// octagon (the domain the field is used on), not on the analysis circle,
// where shells only start to decay at much deeper truncation.
constexpr double kTailRadius = 0.85;
constexpr int kTailSamples = 256;

// accumulate shell by shell; shells are index ranges of a fixed partition
ShellSummary sum_shells(const std::vector<GroupElement>& els,
                        const std::vector<std::size_t>& shell_start,
                        const SeedFn& seed, int M, double rs) {
  ShellSummary r;
  r.total.assign(M, cplx{});
  std::vector<cplx> trial_total(kTailSamples, cplx{});
  double last_sup = 0.0, first_sup = 0.0;
  bool first = true;
  for (std::size_t s = 0; s + 1 < shell_start.size(); ++s) {
    std::size_t lo = shell_start[s], hi = shell_start[s + 1];
    if (lo == hi) continue;
    std::vector<cplx> part = circle_sum(els, lo, hi, seed, M, rs);
    for (int k = 0; k < M; ++k) r.total[k] += part[k];
    std::vector<cplx> trial =
        circle_sum(els, lo, hi, seed, kTailSamples, kTailRadius);
    for (int k = 0; k < kTailSamples; ++k) trial_total[k] += trial[k];
    last_sup = sup_abs(trial);
    if (first) first_sup = last_sup;
    first = false;
  }
  double total_sup = sup_abs(trial_total);
  if (total_sup <= 1e-10 * first_sup || total_sup == 0.0) {
    r.tail = 0.0;  // cancellation to zero: nothing left to converge
  } else {
    r.tail = last_sup / total_sup;
    if (r.tail > 0.5)
      throw NonConvergent("last truncation shell carries " +
                          std::to_string(r.tail) + " of the series sup");
  }
  return r;
}

QDField field_from_taylor(std::vector<cplx> taylor, const Mesh& mesh,
                          const std::string& chart, double tail) {
  QDField q;
  q.taylor = std::move(taylor);
  q.chart = chart;
  q.tail_estimate = tail;
  q.phi = sample_field(mesh, chart, [&](cplx z) { return q.eval(z); });
  return q;
}

std::string cache_path(const SeriesParams& p, double trunc) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "-M%d-rs%d-K%d-T%d.json", p.circle_samples,
                static_cast<int>(std::lround(p.circle_radius * 1000)),
                p.taylor_terms, static_cast<int>(std::lround(trunc * 100)));
  return p.cache_dir + "/" + p.cache_key + buf;
}

bool cache_load(const SeriesParams& p, double trunc, std::vector<cplx>& taylor,
                double& tail) {
  if (p.cache_key.empty()) return false;
  std::ifstream in(cache_path(p, trunc));
  if (!in) return false;
  try {
    ordered_json j = ordered_json::parse(in);
    if (j.at("version") != 1 || j.at("samples") != p.circle_samples ||
        j.at("terms") != p.taylor_terms)
      return false;
    tail = j.at("tail");
    taylor.clear();
    for (const auto& pair : j.at("taylor"))
      taylor.push_back({pair[0].get<double>(), pair[1].get<double>()});
    return static_cast<int>(taylor.size()) == p.taylor_terms;
  } catch (...) {
    return false;
  }
}

void cache_store(const SeriesParams& p, double trunc,
                 const std::vector<cplx>& taylor, double tail) {
  if (p.cache_key.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(p.cache_dir, ec);
  if (ec) return;
  ordered_json j;
  j["version"] = 1;
  j["samples"] = p.circle_samples;
  j["radius"] = p.circle_radius;
  j["terms"] = p.taylor_terms;
  j["trunc"] = trunc;
  j["tail"] = tail;
  ordered_json arr = ordered_json::array();
  for (cplx c : taylor) arr.push_back({c.real(), c.imag()});
  j["taylor"] = std::move(arr);
  std::ofstream out(cache_path(p, trunc));
  out << j.dump() << "\n";
}

}  // namespace

SeedFn seed_monomial(int k) {
  return [k](cplx z) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
  };
}

cplx QDField::eval(cplx z) const {
  cplx acc{};
  for (std::size_t k = taylor.size(); k-- > 0;) acc = acc * z + taylor[k];
  return acc;
}

QDField poincare_series(const FuchsianGroup& G, const SeedFn& seed, int max_len,
                        const Mesh& mesh, const SeriesParams& p) {
  if (max_len < 0) throw ConfigError("max_len must be nonnegative");
  std::vector<cplx> taylor;
  double tail = 0.0;
  if (!cache_load(p, static_cast<double>(max_len), taylor, tail)) {
    std::vector<GroupElement> els = enumerate_group(G, max_len);
    // shells = word-length layers (enumeration emits them in order)
    std::vector<std::size_t> starts;
    int cur = -1;
    for (std::size_t i = 0; i < els.size(); ++i)
      while (cur < els[i].word_len) {
        starts.push_back(i);
        ++cur;
      }
    starts.push_back(els.size());
    ShellSummary sum =
        sum_shells(els, starts, seed, p.circle_samples, p.circle_radius);
    taylor = taylor_from_circle(sum.total, p.circle_radius, p.taylor_terms);
    tail = sum.tail;
    cache_store(p, static_cast<double>(max_len), taylor, tail);
  }
  return field_from_taylor(std::move(taylor), mesh, "z", tail);
}

QDField poincare_series_ball(const FuchsianGroup& G, const SeedFn& seed,
                             double disp_cap, const Mesh& mesh,
                             const SeriesParams& p) {
  if (disp_cap <= 0.0) throw ConfigError("disp_cap must be positive");
  std::vector<cplx> taylor;
  double tail = 0.0;
  if (!cache_load(p, disp_cap, taylor, tail)) {
    std::vector<GroupElement> els = enumerate_ball(G, disp_cap);
    // shells = unit displacement bands, last band = (disp_cap-1, disp_cap]
    int bands = static_cast<int>(std::ceil(disp_cap));
    std::vector<std::vector<GroupElement>> bucket(bands + 1);
    for (const GroupElement& e : els) {
      int b = std::min(bands, static_cast<int>(std::floor(e.displacement)));
      bucket[b].push_back(e);
    }
    std::vector<GroupElement> ordered;
    std::vector<std::size_t> starts;
    for (auto& b : bucket) {
      starts.push_back(ordered.size());
      for (auto& e : b) ordered.push_back(e);
    }
    starts.push_back(ordered.size());
    ShellSummary sum =
        sum_shells(ordered, starts, seed, p.circle_samples, p.circle_radius);
    taylor = taylor_from_circle(sum.total, p.circle_radius, p.taylor_terms);
    tail = sum.tail;
    cache_store(p, disp_cap, taylor, tail);
  }
  return field_from_taylor(std::move(taylor), mesh, "z", tail);
}

QDField qd_from_taylor(std::vector<cplx> coeffs, const Mesh& mesh,
                       std::string chart) {
  return field_from_taylor(std::move(coeffs), mesh, chart, 0.0);
}

double automorphy_residual(const QDField& q, const FuchsianGroup& G) {
  if (q.taylor.empty())
    throw ConfigError("automorphy check needs series coefficients");
  const Mesh& m = *q.phi.mesh;
  int stride = std::max(1, m.n / 64);
  double worst = 0.0;
  std::size_t pairs = 0;
  for (int j = 0; j < m.n; j += stride)
    for (int i = 0; i < m.n; i += stride) {
      std::size_t c = m.idx(i, j);
      if (!m.inside[c]) continue;
      cplx z = m.center(i, j);
      cplx qz = q.eval(z);
      for (int k = 0; k < 4; ++k) {
        const Mat2c& g = G.gens[k];
        cplx w = mobius_apply(g, z);
        if (std::abs(w) > kEvalRadius) continue;
        cplx den = g.c * z + g.d;
        cplx d2 = den * den;
        double res = std::abs(q.eval(w) / (d2 * d2) - qz) / (1.0 + std::abs(qz));
        worst = std::max(worst, res);
        ++pairs;
      }
    }
  if (pairs < 32)
    throw InsufficientOverlap("only " + std::to_string(pairs) +
                              " testable generator pairs");
  return worst;
}

double linf_norm(const QDField& q, const CField& rho0) {
  const Mesh& m = *q.phi.mesh;
  auto [neg, cell] = block_min(m.size(), [&](std::size_t c) {
    if (!m.inside[c] || !m.evaluable[c]) return 0.0;
    return -std::abs(q.phi.v[c]) / rho0.v[c].real();
  });
  (void)cell;
  return -neg;
}

std::pair<double, double> check_tt(const Sym2Form& h, const ComplexMetric& g0) {
  const Mesh& m = g0.mesh();
  check_nondegenerate(g0);
  CField rho = area_form(g0);  // conformal density of the background
  CField dz_rho = deriv_z(rho);
  CField dz_h12 = deriv_z(h.c12), dzb_h12 = deriv_zbar(h.c12);
  CField dzb_h11 = deriv_zbar(h.c11), dz_h22 = deriv_z(h.c22);
  int mg = std::max({dz_rho.margin, dz_h12.margin, g0.margin(), h.c11.margin + 2});

  auto [neg_tr, c1] = block_min(m.size(), [&](std::size_t c) {
    if (!m.inside[c]) return 0.0;
    int i = static_cast<int>(c % m.n), j = static_cast<int>(c / m.n);
    if (i < mg || i >= m.n - mg || j < mg || j >= m.n - mg) return 0.0;
    cplx det = g0.g11.v[c] * g0.g22.v[c] - g0.g12.v[c] * g0.g12.v[c];
    cplx tr = (g0.g22.v[c] * h.c11.v[c] - 2.0 * g0.g12.v[c] * h.c12.v[c] +
               g0.g11.v[c] * h.c22.v[c]) /
              det;
    double size = (std::abs(h.c11.v[c]) + 2.0 * std::abs(h.c12.v[c]) +
                   std::abs(h.c22.v[c])) /
                  std::abs(rho.v[c]);
    return -std::abs(tr) / (1.0 + size);
  });
  (void)c1;

  auto [neg_dv, c2] = block_min(m.size(), [&](std::size_t c) {
    if (!m.inside[c]) return 0.0;
    int i = static_cast<int>(c % m.n), j = static_cast<int>(c / m.n);
    if (i < mg || i >= m.n - mg || j < mg || j >= m.n - mg) return 0.0;
    cplx r = rho.v[c];
    cplx P = dz_rho.v[c] / r;
    cplx d1 = (2.0 / r) * (dz_h12.v[c] - P * h.c12.v[c] + dzb_h11.v[c]);
    cplx d2 = (2.0 / r) * (dzb_h12.v[c] - std::conj(P) * h.c12.v[c] + dz_h22.v[c]);
    double size = (std::abs(h.c11.v[c]) + 2.0 * std::abs(h.c12.v[c]) +
                   std::abs(h.c22.v[c])) /
                  std::abs(r);
    double cov = 2.0 * std::max(std::abs(d1), std::abs(d2)) /
                 std::sqrt(std::abs(r));
    return -cov / (1.0 + size);
  });
  (void)c2;
  return {-neg_tr, -neg_dv};
}

std::pair<double, double> check_tt(const QDField& q, const ComplexMetric& g0) {
  const Mesh& m = *q.phi.mesh;
  Sym2Form h{make_field(m, q.phi.chart), make_field(m, q.phi.chart),
             make_field(m, q.phi.chart)};
  par_for(m.size(), [&](std::size_t c) {
    h.c11.v[c] = 0.5 * q.phi.v[c];
    h.c22.v[c] = 0.5 * std::conj(q.phi.v[c]);
  });
  h.c11.margin = h.c12.margin = h.c22.margin = q.phi.margin;
  return check_tt(h, g0);
}

CField hyperbolic_density(const Mesh& m) {
  return sample_field(m, "z", [](cplx z) {
    double r2 = std::norm(z);
    if (r2 >= 0.998) return cplx{};
    double d = 1.0 - r2;
    return cplx{4.0 / (d * d), 0.0};
  });
}

ComplexMetric fuchsian_metric(const Mesh& m) {
  ComplexMetric g{make_field(m), make_field(m), make_field(m)};
  CField rho = hyperbolic_density(m);
  par_for(m.size(), [&](std::size_t c) { g.g12.v[c] = 0.5 * rho.v[c]; });
  return g;
}

Sym2Form plus_form(const QDField& q) {
  const Mesh& m = *q.phi.mesh;
  Sym2Form s{q.phi, make_field(m, q.phi.chart), make_field(m, q.phi.chart)};
  s.c12.margin = s.c22.margin = q.phi.margin;
  return s;
}

Sym2Form minus_form(const QDField& q) {
  const Mesh& m = *q.phi.mesh;
  Sym2Form s{make_field(m, q.phi.chart), make_field(m, q.phi.chart), q.phi};
  par_for(m.size(), [&](std::size_t c) { s.c22.v[c] = std::conj(q.phi.v[c]); });
  s.c11.margin = s.c12.margin = q.phi.margin;
  return s;
}

std::array<QDField, 3> hqd_basis(const FuchsianGroup& G, const Mesh& mesh,
                                 double disp_cap, SeriesParams p) {
  std::string base = p.cache_key;
  std::array<QDField, 3> out;
  int seeds[3] = {0, 2, 4};
  for (int i = 0; i < 3; ++i) {
    if (!base.empty()) p.cache_key = base + "-m" + std::to_string(seeds[i]);
    out[i] = poincare_series_ball(G, seed_monomial(seeds[i]), disp_cap, mesh, p);
  }
  return out;
}

}  // namespace qflab
