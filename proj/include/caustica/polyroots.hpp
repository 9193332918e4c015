#pragma once
//
// Real-root isolation with multiplicity for low-degree real polynomials.
//
// Roots are bracketed on the monotone pieces between the real critical
// points (found recursively from the derivative). A critical point c is a
// multiple root when P(c) is zero up to a relative backward error `tol`,
// i.e. some polynomial within coefficient-relative distance `tol` has an
// exact multiple root there. The answer is then certified with a Sturm
// sequence evaluated between consecutive roots.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "caustica/error.hpp"

namespace caustica {

class Polynomial {
 public:
  static constexpr int max_degree = 8;
  static constexpr double trim_tolerance = 1e-14;

  Polynomial() = default;

  /// Coefficients in ascending degree. Leading entries with
  /// |c| <= 1e-14 max|c| are dropped.
  explicit Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) {
    for (double v : c_)
      if (!std::isfinite(v)) throw NonFinite("polynomial coefficient is not finite");
    trim();
    if (degree() > max_degree) throw InvalidArgument("polynomial degree exceeds 8");
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::span<const double> coeffs() const noexcept { return c_; }
  double operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
  double leading() const { return c_.back(); }

  double operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// sum |c_i| |x|^i, the natural scale of rounding errors in P(x).
  double magnitude(double x) const noexcept {
    double acc = 0.0;
    const double ax = std::abs(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ax + std::abs(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
    return Polynomial(std::move(d));
  }

  double max_abs_coeff() const noexcept {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  /// 1 + max |c_i / c_n|; every root has modulus below it.
  double cauchy_bound() const {
    double m = 0.0;
    for (int i = 0; i < degree(); ++i) m = std::max(m, std::abs(c_[static_cast<std::size_t>(i)] / leading()));
    return 1.0 + m;
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> r(std::max(p.c_.size(), q.c_.size()), 0.0);
    for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) r[i] += q.c_[i];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-1.0) * q; }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<double> r(p.c_.size() + q.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> r(p.c_);
    for (double& v : r) v *= s;
    return Polynomial(std::move(r));
  }

 private:
  void trim() {
    const double m = max_abs_coeff();
    while (!c_.empty() && std::abs(c_.back()) <= trim_tolerance * m) c_.pop_back();
    if (m == 0.0) c_.clear();
  }

  std::vector<double> c_;
};

struct Root {
  double value = 0.0;
  int multiplicity = 1;
};

/// Distinct real roots in increasing order with multiplicities.
struct RootSet {
  std::vector<Root> roots;
  /// max |P(r)| / magnitude(r) over the reported roots.
  double residual = 0.0;

  std::size_t size() const noexcept { return roots.size(); }
  bool empty() const noexcept { return roots.empty(); }

  int total_multiplicity() const noexcept {
    int n = 0;
    for (const Root& r : roots) n += r.multiplicity;
    return n;
  }

  bool has_multiple() const noexcept {
    return std::any_of(roots.begin(), roots.end(), [](const Root& r) { return r.multiplicity > 1; });
  }
};

namespace detail {

// Remainder of num / den (den nonzero). `scale` receives the size of the
// largest term subtracted, which bounds the rounding error in the result.
inline std::vector<double> poly_remainder(std::vector<double> num, const std::vector<double>& den,
                                          double* scale = nullptr) {
  const std::size_t dn = den.size();
  double den_max = 0.0, num_max = 0.0;
  for (double c : den) den_max = std::max(den_max, std::abs(c));
  for (double c : num) num_max = std::max(num_max, std::abs(c));
  double s = num_max;
  while (num.size() >= dn) {
    const double q = num.back() / den.back();
    s = std::max(s, std::abs(q) * den_max);
    const std::size_t shift = num.size() - dn;
    for (std::size_t i = 0; i < dn; ++i) num[shift + i] -= q * den[i];
    num.pop_back();
  }
  if (scale) *scale = s;
  return num;
}

inline double normalize_in_place(std::vector<double>& v) {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  if (m > 0.0)
    for (double& c : v) c /= m;
  return m;
}

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace detail

namespace detail {

// Safeguarded Newton on a bracket [lo, hi] with a strict sign change.
inline double refine_bracketed(const Polynomial& p, const Polynomial& dp, double lo, double hi) {
  double flo = p(lo);
  if (flo == 0.0) return lo;
  if (p(hi) == 0.0) return hi;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = p(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
    const double d = dp(x);
    double next = (d != 0.0) ? x - fx / d : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  return x;
}

// Local half-separation of the roots hidden in a cluster of multiplicity k at
// c that is consistent with a backward error of tol. `err` is the rounding
// scale of P at c, p.magnitude(c) unless the caller knows better.
inline double cluster_radius(const Polynomial& p, double c, int k, double tol, double err = -1.0) {
  Polynomial d = p;
  double factorial = 1.0;
  for (int i = 1; i <= k; ++i) {
    d = d.derivative();
    factorial *= i;
  }
  const double dk = std::abs(d(c));
  const double num = factorial * tol * (err < 0.0 ? p.magnitude(c) : err);
  if (dk == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(num / dk, 1.0 / k);
}

// `scale` is the root magnitude below which separations stop being relative.
inline double merge_radius(double x, double scale = 1.0) { return 1e-7 * (scale + std::abs(x)); }

struct Candidate {
  double value;
  int multiplicity;
  bool critical;  // came from a critical point flagged as multiple
  double window;
};

// `envelope`, when given, has nonnegative coefficients and bounds the size of
// the terms that cancelled into P's coefficients; envelope(|x|) replaces
// p.magnitude(x) as the rounding scale.
inline std::vector<Root> cascade_roots(const Polynomial& p, double tol, double scale = 1.0,
                                       const Polynomial* envelope = nullptr) {
  const int n = p.degree();
  if (n < 1) return {};
  if (n == 1) return {Root{-p[0] / p[1], 1}};

  const Polynomial dp = p.derivative();
  const Polynomial denv = envelope ? envelope->derivative() : Polynomial();
  const std::vector<Root> crit = cascade_roots(dp, tol, scale, envelope ? &denv : nullptr);
  auto rounding = [&](double x) { return envelope ? std::max((*envelope)(std::abs(x)), p.magnitude(x)) : p.magnitude(x); };
  const double bound = p.cauchy_bound();

  std::vector<double> knots;
  knots.push_back(-bound);
  for (const Root& r : crit)
    if (r.value > -bound && r.value < bound) knots.push_back(r.value);
  knots.push_back(bound);

  std::vector<Candidate> cands;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double f0 = p(knots[i]), f1 = p(knots[i + 1]);
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      const double r = refine_bracketed(p, dp, knots[i], knots[i + 1]);
      cands.push_back({r, 1, false, merge_radius(r, scale)});
    }
  }
  for (const Root& c : crit) {
    if (std::abs(p(c.value)) <= tol * rounding(c.value)) {
      const int k = c.multiplicity + 1;
      const double w =
          std::max(merge_radius(c.value, scale), 4.0 * cluster_radius(p, c.value, k, tol, rounding(c.value)));
      cands.push_back({c.value, k, true, w});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) { return x.value < y.value; });

  // Multiple roots absorb the simple roots split off by rounding.
  std::vector<Candidate> merged;
  for (const Candidate& c : cands) {
    if (!merged.empty()) {
      Candidate& last = merged.back();
      const double gap = c.value - last.value;
      const bool absorb = (last.critical && gap <= last.window) || (c.critical && gap <= c.window) ||
                          gap <= std::max(merge_radius(last.value, scale), merge_radius(c.value, scale));
      if (absorb) {
        if (c.critical && !last.critical) {
          last.multiplicity = std::max(c.multiplicity, last.multiplicity + 1);
          last.value = c.value;
          last.window = c.window;
          last.critical = true;
        } else if (last.critical && !c.critical) {
          last.multiplicity = std::max(last.multiplicity, 2);
        } else if (last.critical && c.critical) {
          last.multiplicity = std::max(last.multiplicity, c.multiplicity);
        } else {
          last.value = 0.5 * (last.value + c.value);
          last.multiplicity += c.multiplicity;
        }
        continue;
      }
    }
    merged.push_back(c);
  }

  std::vector<Root> out;
  out.reserve(merged.size());
  for (const Candidate& c : merged) out.push_back({c.value, std::min(c.multiplicity, n)});
  return out;
}

}  // namespace detail

/// Sturm chain of P with remainders truncated below 1e-12 of the largest
/// term in their division; the chain stops at the (numerical) gcd of P and
/// P'.
class SturmSequence {
 public:
  static constexpr double truncation = 1e-12;

  explicit SturmSequence(const Polynomial& p) {
    if (p.degree() < 1) throw InvalidArgument("Sturm sequence needs degree >= 1");
    std::vector<double> p0(p.coeffs().begin(), p.coeffs().end());
    const Polynomial dp = p.derivative();
    std::vector<double> p1(dp.coeffs().begin(), dp.coeffs().end());
    detail::normalize_in_place(p0);
    detail::normalize_in_place(p1);
    chain_.push_back(p0);
    chain_.push_back(p1);
    // Relative error carried by each normalized element. Normalizing a
    // small remainder magnifies it; a remainder below its own error bound
    // is zero.
    constexpr double rounding = 1e-13;
    std::vector<double> err{rounding, rounding};
    while (chain_.back().size() > 1) {
      double scale = 1.0;
      std::vector<double> r = detail::poly_remainder(chain_[chain_.size() - 2], chain_.back(), &scale);
      for (double& c : r)
        if (std::abs(c) <= truncation * scale) c = 0.0;
      while (!r.empty() && r.back() == 0.0) r.pop_back();
      if (r.empty()) break;
      const double bound = rounding * scale + err[err.size() - 2] + scale * err.back();
      for (double& c : r) c = -c;
      const double size = detail::normalize_in_place(r);
      if (size <= bound && divides(p, chain_.back())) break;
      chain_.push_back(std::move(r));
      err.push_back(bound / size);
    }
  }

  int sign_variations(double x) const {
    int changes = 0;
    double prev = 0.0;
    for (const auto& c : chain_) {
      const double v = detail::horner(c, x);
      if (v == 0.0) continue;
      if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
      prev = v;
    }
    return changes;
  }

  std::size_t length() const noexcept { return chain_.size(); }

 private:
  // The chain may stop at G only if G looks like gcd(P, P'): each real root
  // of G must be a near-root of P. Tightly clustered simple roots also give
  // small remainders but fail this test.
  static bool divides(const Polynomial& p, const std::vector<double>& g) {
    const Polynomial gp{std::vector<double>(g)};
    if (gp.degree() < 1) return false;
    for (const Root& r : detail::cascade_roots(gp, 1e-12))
      if (std::abs(p(r.value)) > 1e-12 * p.magnitude(r.value)) return false;
    return true;
  }

  std::vector<std::vector<double>> chain_;
};

/// Number of distinct real roots in (lo, hi]. Endpoints that are roots are
/// nudged outward by a relative 1e-12.
inline int sturm_count(const Polynomial& p, double lo, double hi) {
  if (!(lo < hi)) throw InvalidArgument("sturm_count needs lo < hi");
  const SturmSequence s(p);
  auto nudge = [&](double x, double dir) {
    for (int i = 0; i < 8 && p(x) == 0.0; ++i) x += dir * 1e-12 * (1.0 + std::abs(x)) * std::pow(10.0, i);
    return x;
  };
  lo = nudge(lo, -1.0);
  hi = nudge(hi, +1.0);
  return s.sign_variations(lo) - s.sign_variations(hi);
}

namespace detail {

// Distinct-root count of each slot between midpoints of consecutive roots.
inline std::vector<int> slot_counts(const SturmSequence& sturm, const std::vector<Root>& roots, double bound) {
  std::vector<double> seps;
  seps.push_back(-bound);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) seps.push_back(0.5 * (roots[i].value + roots[i + 1].value));
  seps.push_back(bound);
  std::vector<int> counts;
  for (std::size_t i = 0; i + 1 < seps.size(); ++i)
    counts.push_back(sturm.sign_variations(seps[i]) - sturm.sign_variations(seps[i + 1]));
  return counts;
}

}  // namespace detail

/// All real roots of P with multiplicities. `tol` is the relative backward
/// error below which a critical value counts as a root.
///
/// Certification: each simple root's slot (between midpoints to its
/// neighbours) must hold exactly one root by the Sturm count. A multiple
/// root's slot may hold none (a complex pair inside the band), one, or up to
/// its multiplicity when all of them lie within its cluster radius. If the
/// Sturm chain separates it further, the band was too wide for this cluster
/// and the search is repeated with a tolerance 100 times tighter.
inline RootSet isolate_real_roots(const Polynomial& p, double tol = 1e-12) {
  if (p.degree() < 1) throw InvalidArgument("isolate_real_roots needs degree >= 1");
  const SturmSequence sturm(p);
  const double bound = p.cauchy_bound();

  RootSet out;
  for (double band = tol;; band *= 0.01) {
    out.roots = detail::cascade_roots(p, band);
    const std::vector<int> counts = detail::slot_counts(sturm, out.roots, bound);
    bool split = false;
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
      const Root& r = out.roots[i];
      if (r.multiplicity < 2 || counts[i] <= 1) continue;
      // Roots the chain separates inside the cluster radius belong to the
      // cluster; a split beyond it means the band was too wide.
      const double w = std::max(detail::merge_radius(r.value), detail::cluster_radius(p, r.value, r.multiplicity, band));
      const int inside = sturm.sign_variations(r.value - w) - sturm.sign_variations(r.value + w);
      if (inside != counts[i] || counts[i] > r.multiplicity) split = true;
    }
    if (split && band > 1e-17) continue;
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
      if (out.roots[i].multiplicity > 1) continue;
      if (counts[i] != 1)
        throw IllConditioned("Sturm certification failed: slot around root " + std::to_string(out.roots[i].value) +
                             " holds " + std::to_string(counts[i]) + " roots");
    }
    if (out.roots.empty() && counts.front() != 0)
      throw IllConditioned("Sturm sequence reports roots the isolation missed");
    break;
  }

  double residual = 0.0;
  for (const Root& r : out.roots) {
    const double mag = p.magnitude(r.value);
    if (mag > 0.0) residual = std::max(residual, std::abs(p(r.value)) / mag);
  }
  out.residual = residual;
  return out;
}

/// Smallest local half-separation over the real critical points of P: tiny
/// values mean P is close to having a multiple root (real or complex pair).
inline double near_multiple_separation(const Polynomial& p) {
  double best = std::numeric_limits<double>::infinity();
  if (p.degree() < 2) return best;
  const Polynomial dp = p.derivative();
  const Polynomial d2 = dp.derivative();
  for (const Root& c : detail::cascade_roots(dp, 1e-12)) {
    const double curv = std::abs(d2(c.value));
    const double h = curv > 0.0 ? std::sqrt(2.0 * std::abs(p(c.value)) / curv) : 0.0;
    best = std::min(best, h / (1.0 + std::abs(c.value)));
  }
  return best;
}

}  // namespace caustica
