#include "clab/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "clab/optimize.hpp"
#include "hp.hpp"

namespace clab {

namespace {

constexpr double kPi = std::numbers::pi;

struct SphereTable {
  std::vector<double> v1, v2;
};

std::shared_ptr<const SphereTable> sphere_table(double p, int n) {
  static std::mutex mu;
  static std::map<std::pair<double, int>, std::shared_ptr<const SphereTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (cache.size() > 64) cache.clear();
  auto tab = std::make_shared<SphereTable>();
  tab->v1.resize(n);
  tab->v2.resize(n);
  const Exponent e = Exponent::unrestricted(p);
  for (int i = 0; i < n; ++i) {
    const LpVector v = sphere_point(kPi * i / n, e);
    tab->v1[i] = v.x1;
    tab->v2[i] = v.x2;
  }
  cache.emplace(key, tab);
  return tab;
}

inline double image_power(const Operator2x2& t, double v1, double v2, double q) {
  const double z1 = t.a11 * v1 + t.a12 * v2;
  const double z2 = t.a21 * v1 + t.a22 * v2;
  return std::pow(std::fabs(z1), q) + std::pow(std::fabs(z2), q);
}

double g_at(const Operator2x2& t, double theta) {
  const LpVector v = sphere_point(theta, t.domain);
  return image_power(t, v.x1, v.x2, t.codomain.value());
}

// Lagrange stationarity on the sphere: zero where T^T (Tv)^{q-1} is parallel
// to v^{p-1}.
double stationarity(const Operator2x2& t, double theta) {
  const double p = t.domain.value(), q = t.codomain.value();
  const LpVector v = sphere_point(theta, t.domain);
  const double z1 = signed_pow(t.a11 * v.x1 + t.a12 * v.x2, q - 1);
  const double z2 = signed_pow(t.a21 * v.x1 + t.a22 * v.x2, q - 1);
  const double w1 = t.a11 * z1 + t.a21 * z2;
  const double w2 = t.a12 * z1 + t.a22 * z2;
  return w1 * signed_pow(v.x2, p - 1) - w2 * signed_pow(v.x1, p - 1);
}

struct Peak {
  double theta;
  double g;
};

Peak refine_peak(const Operator2x2& t, double theta0, double h) {
  auto f = [&](double th) { return g_at(t, th); };
  ArgValue best = golden_max(f, theta0 - h, theta0 + h, 1e-13);
  const double g0 = f(theta0);
  if (g0 > best.value) best = {theta0, g0};
  // Flat maxima leave golden section far from the true maximizer; the sign
  // change of the stationarity function pins it down.
  for (double delta : {1e-9, 1e-7, 1e-5, 1e-4, h}) {
    const double a = best.arg - delta, b = best.arg + delta;
    const double ca = stationarity(t, a), cb = stationarity(t, b);
    if (ca == 0.0 || cb == 0.0 || (ca > 0) == (cb > 0)) continue;
    const double th = bisect_sign_change([&](double x) { return stationarity(t, x); }, a, b, ca);
    const double gv = f(th);
    if (gv >= best.value - 4e-16 * std::fabs(best.value)) best = {th, std::max(gv, best.value)};
    break;
  }
  return {best.arg, best.value};
}

double wrap_angle(double th) {
  double r = std::fmod(th, kPi);
  if (r < 0) r += kPi;
  return r;
}

double angular_distance(double a, double b) {
  const double d = std::fmod(std::fabs(a - b), kPi);
  return std::min(d, kPi - d);
}

// Circular discrete local maxima within a relative 1e-4 of the top sample,
// best first, at most 64 of them.
std::vector<long> candidate_indices(const std::vector<double>& g, double gmax) {
  const long n = static_cast<long>(g.size());
  const double thr = gmax - 1e-4 * gmax;
  std::vector<long> idx;
  for (long i = 0; i < n; ++i) {
    const double gl = g[(i + n - 1) % n], gr = g[(i + 1) % n];
    if (g[i] >= thr && g[i] >= gl && g[i] >= gr) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](long a, long b) { return g[a] > g[b]; });
  if (idx.size() > 64) idx.resize(64);
  return idx;
}

std::vector<Peak> refine_all(const Operator2x2& t, const std::vector<long>& idx, int n) {
  const double h = kPi / n;
  std::vector<Peak> peaks;
  peaks.reserve(idx.size());
  for (long i : idx) peaks.push_back(refine_peak(t, kPi * i / n, h));
  return peaks;
}

// Returns false (and leaves g partial) as soon as a sample exceeds thr.
bool scan_below(const Operator2x2& t, const NormOptions& opt, double thr, std::vector<double>& g) {
  const int n = opt.scan_points;
  const auto tab = sphere_table(t.domain.value(), n);
  const double q = t.codomain.value();
  g.assign(n, 0.0);
  auto f = [&](long i) { return image_power(t, tab->v1[i], tab->v2[i], q); };
  if (opt.exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) {
      g[i] = f(i);
      if (g[i] > thr) return false;
    }
    return true;
  }
  kernels::map_index(n, f, g.data(), Exec::Parallel);
  for (double v : g)
    if (v > thr) return false;
  return true;
}

}  // namespace

LpVector sphere_point(double theta, Exponent p) {
  const double e = 2.0 / p.value();
  return {signed_pow(std::cos(theta), e), signed_pow(std::sin(theta), e), p};
}

LpVector canonical_sign(const LpVector& v) {
  if (v.x1 < 0 || (v.x1 == 0 && v.x2 < 0)) return {-v.x1, -v.x2, v.exponent};
  return v;
}

namespace detail {

ScanSummary scan_and_refine(const Operator2x2& t, const NormOptions& opt, double exit_above) {
  ScanSummary out;
  const int n = opt.scan_points;
  out.h = kPi / n;
  std::vector<double> g;
  if (!scan_below(t, opt, exit_above, g)) {
    out.exceeded = true;
    return out;
  }
  const double gmax = kernels::argmax(g.data(), n, opt.exec).value;
  const auto idx = candidate_indices(g, gmax);
  const auto peaks = refine_all(t, idx, n);
  for (size_t k = 0; k < idx.size(); ++k) {
    out.cand_theta.push_back(kPi * idx[k] / n);
    out.cand_g.push_back(peaks[k].g);
    out.best_g = std::max(out.best_g, peaks[k].g);
  }
  return out;
}

}  // namespace detail

NormCertificate op_norm(const Operator2x2& t, const NormOptions& opt) {
  const int n = opt.scan_points;
  const double q = t.codomain.value();
  std::vector<double> g;
  scan_below(t, opt, std::numeric_limits<double>::infinity(), g);
  const auto top = kernels::argmax(g.data(), n, opt.exec);
  const double gmax = top.value;
  const double gmin = *std::min_element(g.begin(), g.end());

  NormCertificate cert;
  auto add = [&](double theta) {
    cert.angles.push_back(wrap_angle(theta));
    cert.maximizers.push_back(canonical_sign(sphere_point(cert.angles.back(), t.domain)));
  };

  if (gmax == 0.0 || gmax - gmin <= 1e-12 * gmax) {
    // Constant on the sphere (zero map or isometry): every direction attains.
    cert.norm = std::pow(gmax, 1.0 / q);
    for (int k = 0; k < 4; ++k) add(k * kPi / 4);
    cert.independent_pair = true;
    return cert;
  }

  std::vector<Peak> peaks = refine_all(t, candidate_indices(g, gmax), n);
  // Quad polish of the leading peaks: at flat maxima the double position can
  // be off by 1e-6 or more.
  double gbest = 0;
  for (const Peak& pk : peaks) gbest = std::max(gbest, pk.g);
  const detail::QOp tq = detail::to_quad(t);
  for (Peak& pk : peaks) {
    if (pk.g < gbest * (1 - 1e-8)) continue;
    const detail::q128 th = detail::polish_maximizer_q(tq, pk.theta, kPi / n);
    const double gq = static_cast<double>(detail::excess_q(tq, th) + 1);
    if (gq >= pk.g - 4e-16 * pk.g) pk = {static_cast<double>(th), std::max(gq, pk.g)};
  }
  for (Peak& pk : peaks) pk.theta = wrap_angle(pk.theta);
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    return a.g > b.g || (a.g == b.g && a.theta < b.theta);
  });
  cert.norm = std::pow(peaks.front().g, 1.0 / q);
  for (const Peak& pk : peaks) {
    if (std::fabs(std::pow(pk.g, 1.0 / q) - cert.norm) > opt.tol_attain) continue;
    bool dup = false;
    for (double a : cert.angles) dup = dup || angular_distance(a, pk.theta) <= opt.merge_angle;
    if (!dup) add(pk.theta);
  }
  for (size_t i = 0; i < cert.maximizers.size() && !cert.independent_pair; ++i) {
    for (size_t j = i + 1; j < cert.maximizers.size(); ++j) {
      const LpVector& a = cert.maximizers[i];
      const LpVector& b = cert.maximizers[j];
      if (std::fabs(a.x1 * b.x2 - a.x2 * b.x1) > opt.independence_det) {
        cert.independent_pair = true;
        break;
      }
    }
  }
  return cert;
}

bool is_contraction(const Operator2x2& t, double tol, const NormOptions& opt) {
  if (tol < 0) throw DomainError("is_contraction: tol must be >= 0");
  const double q = t.codomain.value();
  const bool hp = tol < 1e-12;
  const double band = 1e-12;
  const auto s = detail::scan_and_refine(t, opt, std::pow(1.0 + (hp ? band : tol), q));
  if (s.exceeded) return false;
  if (s.best_g == 0.0) return true;
  const double nrm = std::pow(s.best_g, 1.0 / q);
  if (!hp) return nrm <= 1.0 + tol;
  if (nrm > 1.0 + band) return false;
  if (nrm < 1.0 - band) return true;
  const auto pk = detail::max_excess_hp(detail::to_quad(t), s, std::pow(1.0 - band, q));
  // quad rounding of the sphere point alone leaves ~1e-34 of excess
  return static_cast<double>(pk.excess) <= std::max(std::expm1(q * std::log1p(tol)), 1e-31);
}

double norm_excess_hp(const Operator2x2& t, const NormOptions& opt) {
  const auto s = detail::scan_and_refine(t, opt, std::numeric_limits<double>::infinity());
  return static_cast<double>(detail::max_excess_hp(detail::to_quad(t), s, 0.0).excess);
}

bool is_isometry(const Operator2x2& t, int samples, double tol) {
  for (int k = 0; k < samples; ++k) {
    const LpVector v = sphere_point(kPi * k / samples, t.domain);
    const LpVector w = apply(t, v);
    if (std::fabs(w.norm() - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace clab
