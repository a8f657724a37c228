#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/hypergroup.hpp"
#include "hyperorlicz/measure.hpp"
#include "hyperorlicz/numeric.hpp"

namespace hyperorlicz {

/// μ ∗ ν, the bilinear extension of the structure constants.
template <class T>
Measure<T> convolve_measures(const DiscreteHypergroup& H, const Measure<T>& mu,
                             const Measure<T>& nu) {
  std::vector<typename Measure<T>::Entry> acc;
  for (const auto& [x, a] : mu.entries()) {
    for (const auto& [y, b] : nu.entries()) {
      for (const auto& [t, c] : H.conv(x, y).entries()) {
        acc.emplace_back(t, a * b * T(c));
      }
    }
  }
  return Measure<T>(std::move(acc));
}

/// μ⁻(E) = μ({x⁻ : x ∈ E})
template <class T>
Measure<T> reflect(const DiscreteHypergroup& H, const Measure<T>& mu) {
  std::vector<typename Measure<T>::Entry> e;
  e.reserve(mu.size());
  for (const auto& [x, v] : mu.entries()) e.emplace_back(H.inv(x), v);
  return Measure<T>(std::move(e));
}

/// x ∗ E = ∪_{y ∈ E} supp(δ_x ∗ δ_y)
inline std::vector<Point> translate_set(const DiscreteHypergroup& H, Point x,
                                        std::span<const Point> E) {
  std::vector<Point> out;
  for (Point y : E) {
    for (const auto& [t, w] : H.conv(x, y).entries()) out.push_back(t);
  }
  return make_point_set(std::move(out));
}

/// E ∗ F = ∪_{t ∈ E} (t ∗ F)
inline std::vector<Point> set_star(const DiscreteHypergroup& H,
                                   std::span<const Point> E,
                                   std::span<const Point> F) {
  std::vector<Point> out;
  for (Point t : E) {
    for (Point y : F) {
      for (const auto& [s, w] : H.conv(t, y).entries()) out.push_back(s);
    }
  }
  return make_point_set(std::move(out));
}

/// λ(E) = sum of Haar weights over a finite set.
inline double haar_mass(const DiscreteHypergroup& H, std::span<const Point> E) {
  CompensatedSum s;
  for (Point x : make_point_set({E.begin(), E.end()})) s += H.haar(x);
  return s.value();
}

/// supp(δ_x ∗ δ_y) is a singleton for every y in the window.
inline bool is_central_on(const DiscreteHypergroup& H, Point x, Window window) {
  if (H.is_group()) return true;
  for (Point y : H.points_in(window)) {
    if (H.conv(x, y).size() != 1) return false;
  }
  return true;
}

/// Center of the hypergroup relative to a truncation window.
struct CenterReport {
  std::vector<Point> points;
  Window window;
  bool truncation_relative = true;
};

inline CenterReport center(const DiscreteHypergroup& H, Window window) {
  CenterReport out;
  out.window = window;
  for (Point x : H.points_in(window)) {
    if (is_central_on(H, x, window)) out.points.push_back(x);
  }
  return out;
}

/// The point a ∗ x for a central a (δ_a ∗ δ_x is a point mass).
inline Point central_translate(const DiscreteHypergroup& H, Point a, Point x) {
  const FiniteMeasure m = H.conv(a, x);
  if (m.size() != 1) {
    throw Error(ErrorCode::not_central,
                std::to_string(a) + " * " + std::to_string(x) +
                    " is not a point mass");
  }
  return m.entries().front().first;
}

/// aⁿ ∗ E, applying the central action n times.
inline std::vector<Point> central_power_set(const DiscreteHypergroup& H,
                                            Point a, long long n,
                                            std::vector<Point> E) {
  for (long long k = 0; k < n; ++k) {
    for (Point& x : E) x = central_translate(H, a, x);
  }
  return make_point_set(std::move(E));
}

/// Smallest p >= 1 with aᵖ = e, searched up to `limit`.
inline std::optional<long long> element_order(const DiscreteHypergroup& H,
                                              Point a, long long limit) {
  Point x = H.identity();
  for (long long p = 1; p <= limit; ++p) {
    x = central_translate(H, a, x);
    if (x == H.identity()) return p;
  }
  return std::nullopt;
}

struct AperiodicityResult {
  enum class Status { found, not_within_bound, periodic };
  Status status = Status::not_within_bound;
  long long n = 0;  ///< N for `found`, the period for `periodic`
  long long n_max = 0;
  bool truncation_relative = true;
};

inline const char* to_string(AperiodicityResult::Status s) {
  switch (s) {
    case AperiodicityResult::Status::found: return "found";
    case AperiodicityResult::Status::not_within_bound: return "not_within_bound";
    case AperiodicityResult::Status::periodic: return "periodic";
  }
  return "?";
}

/// Smallest N <= n_max with E ∩ aⁿE = ∅ for every n in [N, n_max], or
/// evidence that a acts periodically on E.
inline AperiodicityResult is_aperiodic(const DiscreteHypergroup& H, Point a,
                                       std::span<const Point> E_in,
                                       long long n_max, Window center_window) {
  if (!is_central_on(H, a, center_window)) {
    throw Error(ErrorCode::not_central,
                std::to_string(a) + " is not in the center on the window");
  }
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be >= 1");
  const std::vector<Point> E = make_point_set({E_in.begin(), E_in.end()});
  AperiodicityResult out;
  out.n_max = n_max;
  std::vector<Point> current = E;
  long long last_hit = 0;
  for (long long n = 1; n <= n_max; ++n) {
    for (Point& x : current) x = central_translate(H, a, x);
    std::sort(current.begin(), current.end());
    if (!E.empty() && current == E) {
      out.status = AperiodicityResult::Status::periodic;
      out.n = n;
      return out;
    }
    std::vector<Point> common;
    std::set_intersection(E.begin(), E.end(), current.begin(), current.end(),
                          std::back_inserter(common));
    if (!common.empty()) last_hit = n;
  }
  if (last_hit == n_max) {
    out.status = AperiodicityResult::Status::not_within_bound;
    return out;
  }
  out.status = AperiodicityResult::Status::found;
  out.n = last_hit + 1;
  return out;
}

struct InvarianceCheck {
  bool equal = false;
  double translated_mass = 0.0;
  double original_mass = 0.0;
};

/// λ(x ∗ E) = λ(E) for a central x.
inline InvarianceCheck center_invariance_check(const DiscreteHypergroup& H,
                                               Point x,
                                               std::span<const Point> E,
                                               Window window) {
  if (!is_central_on(H, x, window)) {
    throw Error(ErrorCode::not_central,
                std::to_string(x) + " is not in the center on the window");
  }
  InvarianceCheck out;
  out.translated_mass = haar_mass(H, translate_set(H, x, E));
  out.original_mass = haar_mass(H, E);
  out.equal = close_rel(out.translated_mass, out.original_mass, 1e-12);
  return out;
}

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string witness;
  std::vector<Point> witness_points;
};

struct ValidationReport {
  Window window;
  std::vector<AxiomCheck> checks;
  bool commutative = true;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.passed; });
  }
  const AxiomCheck& check(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return c;
    }
    throw Error(ErrorCode::invalid_argument, "no axiom " + std::string(name));
  }
};

struct ValidateOptions {
  std::size_t associativity_size = 6;
  double tolerance = 1e-12;
};

namespace detail {

inline bool measures_close(const FiniteMeasure& a, const FiniteMeasure& b,
                           double tol) {
  const FiniteMeasure d = a - b;
  return d.max_abs() <= tol;
}

inline std::string witness_text(std::initializer_list<Point> pts) {
  static constexpr const char* names[] = {"x", "y", "z"};
  std::string s;
  std::size_t i = 0;
  for (Point p : pts) {
    if (i) s += ", ";
    s += std::string(i < 3 ? names[i] : "w") + "=" + std::to_string(p);
    ++i;
  }
  return s;
}

inline void record_failure(AxiomCheck& c, std::initializer_list<Point> pts) {
  if (!c.passed) return;
  c.passed = false;
  c.witness = witness_text(pts);
  c.witness_points.assign(pts.begin(), pts.end());
}

}  // namespace detail

/// Checks the discrete hypergroup axioms on a truncation window:
/// probability, identity, involution (anti-homomorphism), identity support,
/// associativity on the `associativity_size` points nearest e, and Haar
/// left-invariance at point masses. Queries leaving the halo throw
/// boundary_overflow rather than passing silently.
inline ValidationReport validate_axioms(const DiscreteHypergroup& H,
                                        Window window,
                                        const ValidateOptions& opt = {}) {
  const std::vector<Point> pts = H.points_in(window);
  if (pts.empty()) {
    throw Error(ErrorCode::invalid_argument, "window contains no points");
  }
  const double tol = std::max(opt.tolerance, H.tolerance());
  const Point e = H.identity();

  ValidationReport rep;
  rep.window = window;
  auto named = [](const char* n) {
    AxiomCheck c;
    c.name = n;
    return c;
  };
  AxiomCheck prob = named("probability"), ident = named("identity"),
             invol = named("involution"), esupp = named("identity_support"),
             assoc = named("associativity"), haar = named("haar_invariance");

  for (Point x : pts) {
    // identity law
    ++ident.checked;
    const FiniteMeasure dx = FiniteMeasure::point(x);
    if (!detail::measures_close(H.conv(e, x), dx, tol) ||
        !detail::measures_close(H.conv(x, e), dx, tol)) {
      detail::record_failure(ident, {x});
    }
    // (x⁻)⁻ = x
    ++invol.checked;
    if (H.inv(H.inv(x)) != x) detail::record_failure(invol, {x});

    for (Point y : pts) {
      const FiniteMeasure xy = H.conv(x, y);
      ++prob.checked;
      if (!xy.is_probability(tol)) detail::record_failure(prob, {x, y});

      ++invol.checked;
      if (!detail::measures_close(reflect(H, xy), H.conv(H.inv(y), H.inv(x)),
                                  tol)) {
        detail::record_failure(invol, {x, y});
      }

      ++esupp.checked;
      const bool has_e = xy(e) != 0.0;
      if (has_e != (x == H.inv(y))) detail::record_failure(esupp, {x, y});

      if (rep.commutative && !detail::measures_close(xy, H.conv(y, x), tol)) {
        rep.commutative = false;
      }
    }
  }
  // Involution must be a bijection of a finite carrier.
  if (H.is_finite()) {
    std::vector<Point> image;
    for (Point x : H.carrier_points()) image.push_back(H.inv(x));
    if (make_point_set(image).size() != H.carrier_points().size()) {
      detail::record_failure(invol, {});
      invol.witness = "not a bijection";
    }
  }

  // Associativity on the points closest to e.
  std::vector<Point> small = pts;
  std::stable_sort(small.begin(), small.end(), [e](Point a, Point b) {
    const auto da = a > e ? a - e : e - a;
    const auto db = b > e ? b - e : e - b;
    return da != db ? da < db : a < b;
  });
  if (small.size() > opt.associativity_size) small.resize(opt.associativity_size);
  std::sort(small.begin(), small.end());
  for (Point x : small) {
    for (Point y : small) {
      for (Point z : small) {
        ++assoc.checked;
        const FiniteMeasure left = convolve_measures(
            H, H.conv(x, y), FiniteMeasure::point(z));
        const FiniteMeasure right = convolve_measures(
            H, FiniteMeasure::point(x), H.conv(y, z));
        if (!detail::measures_close(left, right, tol)) {
          detail::record_failure(assoc, {x, y, z});
        }
      }
    }
  }

  // Σ_x h(x) (δ_z ∗ δ_x)({t}) = h(t). Contributing x lie in z⁻ ∗ t when the
  // table is a hypergroup; the window is scanned as well so that a broken
  // table cannot hide contributions.
  for (Point z : pts) {
    for (Point t : pts) {
      ++haar.checked;
      std::vector<Point> cand;
      for (const auto& [s, w] : H.conv(H.inv(z), t).entries()) cand.push_back(s);
      for (Point x : pts) {
        if (H.conv(z, x)(t) != 0.0) cand.push_back(x);
      }
      cand = make_point_set(std::move(cand));
      CompensatedSum sum;
      for (Point x : cand) sum += H.haar(x) * H.conv(z, x)(t);
      if (!close_rel(sum.value(), H.haar(t), tol)) {
        detail::record_failure(haar, {z, t});
      }
    }
  }

  rep.checks = {prob, ident, invol, esupp, assoc, haar};
  return rep;
}

}  // namespace hyperorlicz
