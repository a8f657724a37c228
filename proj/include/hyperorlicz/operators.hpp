#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/hypergroup.hpp"
#include "hyperorlicz/measure.hpp"
#include "hyperorlicz/orlicz.hpp"
#include "hyperorlicz/young.hpp"

namespace hyperorlicz {

/// F_g(x) = ‖w · L_x g‖_Φ / w(x)
template <class T>
double criterion_value(const DiscreteHypergroup& H, const OrliczFunction<T>& g,
                       const YoungFunction& phi, const Weight& w, Point x,
                       NormKind kind = NormKind::orlicz) {
  return norm(H, phi, translate(H, x, g), &w, kind) / w(x);
}

/// ‖T_g f‖_{Φ,w} <= C ‖f‖_{1,w} with C = sup_{y ∈ supp f} F_g(y⁻) w(y⁻)/w(y).
struct BoundednessEvidence {
  double lhs = 0.0;        ///< ‖f ∗ g‖_{Φ,w}
  double l1 = 0.0;         ///< ‖f‖_{1,w}
  double constant = 0.0;   ///< C
  bool holds = true;
};

template <class T>
struct ApplyTResult {
  OrliczFunction<T> value;
  BoundednessEvidence evidence;
};

/// T_g f = f ∗ g, with the pointwise bound f ∗ g = Σ_y f(y) h(y) L_{y⁻} g.
template <class T>
ApplyTResult<T> apply_T(const DiscreteHypergroup& H, const OrliczFunction<T>& g,
                        const OrliczFunction<T>& f, const YoungFunction& phi,
                        const Weight& w, NormKind kind = NormKind::orlicz,
                        double tol = 1e-9) {
  ApplyTResult<T> out{convolve(H, f, g), {}};
  auto& ev = out.evidence;
  ev.lhs = norm(H, phi, out.value, &w, kind);
  ev.l1 = l1_norm(H, f, &w);
  for (Point y : f.support()) {
    const Point yi = H.inv(y);
    ev.constant = std::max(
        ev.constant, criterion_value(H, g, phi, w, yi, kind) * w(yi) / w(y));
  }
  ev.holds = ev.lhs <= ev.constant * ev.l1 * (1.0 + tol) + tol;
  return out;
}

/// T̃_g μ = μ ∗ g
template <class T>
OrliczFunction<T> apply_T_measure(const DiscreteHypergroup& H,
                                  const OrliczFunction<T>& g,
                                  const Measure<T>& mu) {
  return convolve_measure(H, mu, g);
}

/// The measure f·h, whose action under T̃_g matches T_g f.
template <class T>
Measure<T> function_to_measure(const DiscreteHypergroup& H,
                               const OrliczFunction<T>& f) {
  return f.map_values([&](Point x, const T& v) { return v * T(H.haar(x)); })
      .template retag<measure_tag>();
}

enum class CriterionVerdict { vanishes_numerically, fails_to_vanish, inconclusive };

inline const char* to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::vanishes_numerically: return "VanishesNumerically";
    case CriterionVerdict::fails_to_vanish: return "FailsToVanish";
    case CriterionVerdict::inconclusive: return "Inconclusive";
  }
  return "?";
}

struct CriterionOptions {
  double epsilon = 1e-6;
  NormKind norm = NormKind::orlicz;
  /// Relative spread below which the last tail sups count as stabilized.
  double stable_tol = 1e-12;
};

struct CriterionProfile {
  std::vector<Point> points;
  std::vector<double> values;  ///< F_g at `points`
  std::vector<Window> windows;
  std::vector<double> tail_sups;  ///< sup of F_g over points outside each window
  double epsilon = 0.0;
  NormKind norm = NormKind::orlicz;
  CriterionVerdict verdict = CriterionVerdict::inconclusive;
  std::vector<std::string> certificates;
  std::vector<std::string> warnings;

  double max_value() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  }
  double min_value() const {
    return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
  }
};

namespace detail {

/// Ψ ∈ Δ₂ as a warning string, empty when it holds.
inline std::string psi_delta2_warning(const YoungFunction& phi) {
  if (const auto pg = phi.power_log_exponents()) {
    if (pg->first > 1.0) return {};
    return "complementary function is not in Delta2 (p = 1)";
  }
  try {
    CertificateParams cp;
    cp.lo = 1e-3;
    cp.hi = 1e3;
    cp.points = 64;
    cp.h_scales = 2;
    cp.tol = 1e-9;
    Complementary psi(phi);
    const auto as_young = YoungFunction::from_callable(
        [psi](double t) { return psi(t); }, cp);
    Delta2Params dp;
    dp.t_lo = 1e-2;
    dp.t_hi = 1e2;
    dp.points = 48;
    const auto r = is_delta2(as_young, 0.0, dp);
    if (r.holds()) return {};
    return "complementary function appears to fail Delta2 (numeric)";
  } catch (const Error& e) {
    return std::string("complementary Delta2 undetermined: ") + e.what();
  }
}

inline double sup_outside(const std::vector<Point>& pts,
                          const std::vector<double>& vals, Window w) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!w.contains(pts[i])) s = std::max(s, vals[i]);
  }
  return s;
}

inline Window clamp_to_halo(const DiscreteHypergroup& H, Window w) {
  return {std::max(w.lo, H.halo().lo), std::min(w.hi, H.halo().hi)};
}

inline std::vector<Point> enumeration(const DiscreteHypergroup& H, Window w) {
  return H.is_finite() ? H.carrier_points() : H.points_in(w);
}

}  // namespace detail

/// F_g over an enumeration region with tail sups outside the windows
/// around e of the given radii. On a finite carrier the whole carrier is
/// appended as the final window.
template <class T>
CriterionProfile criterion_profile(const DiscreteHypergroup& H,
                                   const OrliczFunction<T>& g,
                                   const YoungFunction& phi, const Weight& w,
                                   std::vector<Point> radii,
                                   const CriterionOptions& opt = {}) {
  if (radii.empty()) {
    throw Error(ErrorCode::invalid_argument, "window schedule is empty");
  }
  std::sort(radii.begin(), radii.end());
  if (radii.front() < 0) {
    throw Error(ErrorCode::invalid_argument, "window radii must be >= 0");
  }
  CriterionProfile prof;
  prof.epsilon = opt.epsilon;
  prof.norm = opt.norm;
  const Point e = H.identity();
  for (Point r : radii) {
    prof.windows.push_back(detail::clamp_to_halo(H, Window::around(e, r)));
  }
  const Window region =
      detail::clamp_to_halo(H, Window::around(e, 2 * radii.back()));
  prof.points = detail::enumeration(H, region);
  if (H.is_finite()) {
    prof.windows.push_back({prof.points.front(), prof.points.back()});
  }
  prof.values.reserve(prof.points.size());
  for (Point x : prof.points) {
    prof.values.push_back(criterion_value(H, g, phi, w, x, opt.norm));
  }
  for (const Window& win : prof.windows) {
    prof.tail_sups.push_back(detail::sup_outside(prof.points, prof.values, win));
  }

  if (auto warn = detail::psi_delta2_warning(phi); !warn.empty()) {
    prof.warnings.push_back(std::move(warn));
  }

  const double last = prof.tail_sups.back();
  if (last < opt.epsilon) {
    prof.verdict = CriterionVerdict::vanishes_numerically;
    if (H.is_finite()) prof.certificates.push_back("finite_carrier_empty_tail");
    return prof;
  }
  if (H.is_group() && w.is_unit()) {
    prof.verdict = CriterionVerdict::fails_to_vanish;
    prof.certificates.push_back("translation_isometry");
    return prof;
  }
  if (prof.tail_sups.size() >= 2) {
    const double prev = prof.tail_sups[prof.tail_sups.size() - 2];
    if (std::abs(prev - last) <= opt.stable_tol * std::max(prev, last)) {
      prof.verdict = CriterionVerdict::fails_to_vanish;
      prof.certificates.push_back("stabilized_tail");
      return prof;
    }
  }
  prof.verdict = CriterionVerdict::inconclusive;
  return prof;
}

/// sup of F_g over probe ∖ F (the whole carrier replaces `probe` when finite).
template <class T>
double finite_rank_gap(const DiscreteHypergroup& H, const OrliczFunction<T>& g,
                       const YoungFunction& phi, const Weight& w, Window F,
                       Window probe, NormKind kind = NormKind::orlicz) {
  double gap = 0.0;
  for (Point x : detail::enumeration(H, detail::clamp_to_halo(H, probe))) {
    if (F.contains(x)) continue;
    gap = std::max(gap, criterion_value(H, g, phi, w, x, kind));
  }
  return gap;
}

}  // namespace hyperorlicz
