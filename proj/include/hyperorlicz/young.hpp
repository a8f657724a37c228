#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/expression.hpp"
#include "hyperorlicz/numeric.hpp"

namespace hyperorlicz {

struct PowerFamily {
  double p;
};

/// |x|^p (ln(1+|x|))^gamma
struct PowerLogFamily {
  double p;
  double gamma;
};

struct CustomFamily {
  std::string expression;  ///< empty for opaque callables
};

using YoungFamily = std::variant<PowerFamily, PowerLogFamily, CustomFamily>;

/// Sampled convexity / shape evidence for a candidate Young function.
struct ConvexityCertificate {
  bool passed = false;
  std::size_t samples = 0;
  double worst_second_difference = 0.0;  ///< most negative normalized value
  double worst_x = 0.0;
  double worst_h = 0.0;
  std::string failure;  ///< empty when passed
};

struct CertificateParams {
  double lo = 1e-6;
  double hi = 1e6;
  std::size_t points = 512;
  int h_scales = 8;
  double tol = 1e-12;
  /// absolute floor for second differences; covers cancellation like exp(x) - 1
  double abs_tol = 4e-15;
  double growth_bound = 1e3;
};

namespace detail {

inline double power_log_raw(double p, double gamma, double x) {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  const double base = std::pow(ax, p);
  if (gamma == 0.0) return base;
  return base * std::pow(std::log1p(ax), gamma);
}

inline std::string describe_point(double x, double h) {
  std::ostringstream os;
  os.precision(17);
  os << "x=" << x << ", h=" << h;
  return os.str();
}

/// Checks Φ(0)=0, evenness, nonnegativity, monotonicity on [0,inf),
/// second differences and growth on a log grid. Points where the function
/// overflows are skipped.
template <class F>
ConvexityCertificate certify_shape(const F& raw, const CertificateParams& cp) {
  ConvexityCertificate cert;
  auto fail = [&](std::string why, double x, double h) {
    cert.passed = false;
    cert.failure = std::move(why) + " (" + describe_point(x, h) + ")";
    cert.worst_x = x;
    cert.worst_h = h;
    return cert;
  };

  const double at_zero = raw(0.0);
  if (!(std::abs(at_zero) <= 1e-15)) return fail("phi(0) != 0", 0.0, 0.0);

  const std::vector<double> grid = log_grid(cp.lo, cp.hi, cp.points);
  double prev = 0.0;
  double last_finite = 0.0;
  for (double x : grid) {
    const double v = raw(x);
    if (std::isnan(v)) return fail("evaluation is NaN", x, 0.0);
    if (std::isinf(v)) break;
    const double vm = raw(-x);
    ++cert.samples;
    if (v < 0.0) return fail("negative value", x, 0.0);
    const double scale = std::max({std::abs(v), std::abs(vm), 1e-300});
    if (!(std::abs(v - vm) <= cp.tol * scale)) return fail("not even", x, 0.0);
    if (v < prev - cp.tol * scale) return fail("not nondecreasing", x, 0.0);
    prev = v;
    last_finite = v;

    for (int k = 0; k < cp.h_scales; ++k) {
      const double h = x * std::ldexp(1.0, -k);
      const double a = raw(x - h);
      const double c = raw(x + h);
      if (std::isnan(a) || std::isnan(c)) return fail("evaluation is NaN", x, h);
      if (std::isinf(a) || std::isinf(c)) continue;
      const double d2 = a - 2.0 * v + c;
      const double s = std::max({std::abs(a), std::abs(v), std::abs(c), 1e-300});
      const double normalized = d2 / s;
      if (normalized < cert.worst_second_difference) {
        cert.worst_second_difference = normalized;
        cert.worst_x = x;
        cert.worst_h = h;
      }
      if (d2 < -cp.tol * s - cp.abs_tol) return fail("negative second difference", x, h);
    }
  }
  const double top = raw(cp.hi);
  if (!(std::isinf(top) || top > cp.growth_bound) &&
      !(last_finite > cp.growth_bound)) {
    return fail("no growth toward infinity", cp.hi, 0.0);
  }
  cert.passed = true;
  cert.failure.clear();
  return cert;
}

}  // namespace detail

/// A finite-valued convex even function with Φ(0)=0 and Φ(x) -> inf.
class YoungFunction {
 public:
  using Evaluator = std::function<double(double)>;

  /// Φ(x) = |x|^p, p >= 1.
  static YoungFunction power(double p, const CertificateParams& cp = {}) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::invalid_argument, "power family needs p >= 1");
    }
    return YoungFunction(
        [p](double x) { return detail::power_log_raw(p, 0.0, x); },
        PowerFamily{p}, cp);
  }

  /// Φ(x) = |x|^p (ln(1+|x|))^gamma with p >= 1, gamma >= 0.
  static YoungFunction power_log(double p, double gamma,
                                 const CertificateParams& cp = {}) {
    if (!(p >= 1.0) || !(gamma >= 0.0) || !std::isfinite(p) ||
        !std::isfinite(gamma)) {
      throw Error(ErrorCode::invalid_argument,
                  "power-log family needs p >= 1 and gamma >= 0");
    }
    return YoungFunction(
        [p, gamma](double x) { return detail::power_log_raw(p, gamma, x); },
        PowerLogFamily{p, gamma}, cp);
  }

  static YoungFunction custom(std::string_view expression,
                              const CertificateParams& cp = {}) {
    Expression e = Expression::parse(expression);
    return YoungFunction(std::move(e),
                         CustomFamily{std::string(expression)}, cp);
  }

  /// Wraps an arbitrary callable; it is evaluated at both signs when
  /// certifying evenness.
  static YoungFunction from_callable(Evaluator f,
                                     const CertificateParams& cp = {}) {
    return YoungFunction(std::move(f), CustomFamily{}, cp);
  }

  /// Φ(|x|). Rejects non-finite input.
  double operator()(double x) const {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::non_finite, "Young function argument not finite");
    }
    const double v = raw_(std::abs(x));
    if (std::isnan(v)) {
      throw Error(ErrorCode::non_finite, "Young function evaluated to NaN");
    }
    return v;
  }

  /// Unchecked evaluation at t >= 0 for hot loops.
  double at_nonneg(double t) const { return raw_(t); }

  const YoungFamily& family() const { return family_; }
  const ConvexityCertificate& certificate() const { return certificate_; }

  /// Exponents (p, gamma) for the two closed families.
  std::optional<std::pair<double, double>> power_log_exponents() const {
    if (const auto* f = std::get_if<PowerFamily>(&family_)) {
      return std::pair{f->p, 0.0};
    }
    if (const auto* f = std::get_if<PowerLogFamily>(&family_)) {
      return std::pair{f->p, f->gamma};
    }
    return std::nullopt;
  }

  /// Membership in the set of (p, gamma) with p + gamma > 2 whose Φ is a
  /// Young function (convexity certified on the sample grid).
  bool omega_member() const {
    const auto pg = power_log_exponents();
    return pg && pg->first + pg->second > 2.0 && certificate_.passed;
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    if (const auto* f = std::get_if<PowerFamily>(&family_)) {
      os << "power(p=" << f->p << ")";
    } else if (const auto* g = std::get_if<PowerLogFamily>(&family_)) {
      os << "power_log(p=" << g->p << ", gamma=" << g->gamma << ")";
    } else {
      const auto& c = std::get<CustomFamily>(family_);
      os << "custom(" << (c.expression.empty() ? "<callable>" : c.expression)
         << ")";
    }
    return os.str();
  }

 private:
  YoungFunction(Evaluator raw, YoungFamily family, const CertificateParams& cp)
      : raw_(std::move(raw)), family_(std::move(family)) {
    certificate_ = detail::certify_shape(raw_, cp);
    if (!certificate_.passed) {
      throw Error(ErrorCode::convexity_violation,
                  describe() + ": " + certificate_.failure);
    }
  }

  Evaluator raw_;
  YoungFamily family_;
  ConvexityCertificate certificate_;
};

inline double eval(const YoungFunction& phi, double x) { return phi(x); }

inline YoungFunction make_phi_p_gamma(double p, double gamma) {
  return YoungFunction::power_log(p, gamma);
}

/// sup_{y >= 0} (y|x| - f(y)) for a convex f on [0, inf). Throws
/// unbounded_on_range when the objective is still increasing at params.hi.
template <class F>
double conjugate_value(const F& f, double x, const SearchParams& params = {}) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::non_finite, "conjugate argument not finite");
  }
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  const auto r = maximize_concave([&](double y) { return y * ax - f(y); },
                                  params);
  if (r.increasing_at_upper_edge) {
    std::ostringstream os;
    os.precision(17);
    os << "objective still increasing at y=" << params.hi << " for x=" << x;
    throw Error(ErrorCode::unbounded_on_range, os.str());
  }
  return std::max(r.value, 0.0);
}

/// Complementary function Ψ(x) = sup{y|x| - Φ(y) : y >= 0}, numerically.
inline double complementary(const YoungFunction& phi, double x,
                            const SearchParams& params = {}) {
  return conjugate_value([&](double y) { return phi.at_nonneg(y); }, x, params);
}

/// Ψ as a callable, for use wherever a Young function is evaluated.
class Complementary {
 public:
  explicit Complementary(YoungFunction phi, SearchParams params = {})
      : phi_(std::move(phi)), params_(params) {}

  double operator()(double x) const { return complementary(phi_, x, params_); }
  double at_nonneg(double t) const { return complementary(phi_, t, params_); }

  const YoungFunction& primal() const { return phi_; }

 private:
  YoungFunction phi_;
  SearchParams params_;
};

struct Delta2Params {
  double t_lo = 1e-3;
  double t_hi = 1e4;
  std::size_t points = 256;
  /// Refute when the ratio grows by at least this factor over the top decade.
  double growth_factor = 2.0;
};

/// Numeric Δ2 evidence. Never a proof: the grid covers a finite range.
struct Delta2Result {
  enum class Kind { certificate, refutation };
  Kind kind = Kind::certificate;
  double k_estimate = 0.0;  ///< sup of Φ(2t)/Φ(t) over the grid
  /// Exact limiting ratio, known symbolically for the closed families.
  std::optional<double> asymptotic_ratio;
  bool symbolic = false;
  double t_start = 0.0;
  double t_end = 0.0;  ///< largest t with finite ratio
  std::vector<std::pair<double, double>> trend;  ///< (t, ratio) near the top
  std::string label = "numeric certificate (grid evidence, not a proof)";

  bool holds() const { return kind == Kind::certificate; }
};

inline Delta2Result is_delta2(const YoungFunction& phi, double t0 = 0.0,
                              const Delta2Params& params = {}) {
  if (!(t0 >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "t0 must be nonnegative");
  }
  const double start = std::max(t0, params.t_lo);
  const double end = std::max(start, params.t_hi);
  const auto grid = log_grid(start, end, params.points);

  Delta2Result out;
  out.t_start = start;
  std::vector<std::pair<double, double>> ratios;
  bool overflow = false;
  for (double t : grid) {
    const double a = phi.at_nonneg(t);
    if (a == 0.0) {
      throw Error(ErrorCode::degenerate_function,
                  "phi(t) = 0 at t = " + std::to_string(t));
    }
    const double b = phi.at_nonneg(2.0 * t);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      overflow = true;
      break;
    }
    ratios.emplace_back(t, b / a);
  }
  if (ratios.empty()) {
    throw Error(ErrorCode::degenerate_function, "no finite ratio on the grid");
  }
  out.t_end = ratios.back().first;
  for (const auto& [t, r] : ratios) out.k_estimate = std::max(out.k_estimate, r);

  const std::size_t keep = std::min<std::size_t>(ratios.size(), 8);
  out.trend.assign(ratios.end() - static_cast<std::ptrdiff_t>(keep),
                   ratios.end());

  if (const auto pg = phi.power_log_exponents()) {
    // Φ(2t)/Φ(t) = 2^p (ln(1+2t)/ln(1+t))^gamma -> 2^p.
    out.asymptotic_ratio = std::pow(2.0, pg->first);
    out.symbolic = true;
    out.kind = Delta2Result::Kind::certificate;
    out.label = "symbolic: ratio tends to 2^p";
    return out;
  }

  // Compare the top ratio with the ratio one decade lower.
  const double t_top = ratios.back().first;
  const double r_top = ratios.back().second;
  double r_dec = ratios.front().second;
  for (const auto& [t, r] : ratios) {
    if (t <= t_top / 10.0) r_dec = r;
  }
  const bool growing = r_top >= params.growth_factor * r_dec;
  out.kind = growing ? Delta2Result::Kind::refutation
                     : Delta2Result::Kind::certificate;
  if (growing) {
    out.label = overflow ? "numeric refutation: ratio grows until overflow"
                         : "numeric refutation: ratio still growing";
  }
  return out;
}

enum class SlopeKind { positive, zero, inconclusive };

inline const char* to_string(SlopeKind k) {
  switch (k) {
    case SlopeKind::positive: return "positive";
    case SlopeKind::zero: return "zero";
    case SlopeKind::inconclusive: return "inconclusive";
  }
  return "?";
}

struct SlopeReport {
  SlopeKind kind = SlopeKind::inconclusive;
  double infimum_estimate = 0.0;
  double fitted_exponent = 0.0;  ///< local log-log slope of Φ(x)/x near 0
  std::vector<std::pair<double, double>> ratios;
};

inline std::vector<double> default_slope_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 12; ++k) g.push_back(std::pow(10.0, -k));
  return g;
}

/// Estimates lim_{x->0+} Φ(x)/x. For convex Φ with Φ(0)=0 the ratio is
/// nondecreasing in x, so the infimum along the grid estimates the limit.
inline SlopeReport small_x_slope(const YoungFunction& phi,
                                 const std::vector<double>& eps_grid =
                                     default_slope_grid(),
                                 double zero_tol = 1e-9,
                                 double stable_tol = 1e-3) {
  if (eps_grid.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "slope grid needs two points");
  }
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))) {
      throw Error(ErrorCode::invalid_argument,
                  "slope grid must be positive and strictly decreasing");
    }
  }
  SlopeReport out;
  out.infimum_estimate = std::numeric_limits<double>::infinity();
  for (double x : eps_grid) {
    const double r = phi(x) / x;
    out.ratios.emplace_back(x, r);
    out.infimum_estimate = std::min(out.infimum_estimate, r);
  }
  const auto n = out.ratios.size();
  const auto [x1, r1] = out.ratios[n - 2];
  const auto [x2, r2] = out.ratios[n - 1];
  if (r1 > 0.0 && r2 > 0.0) {
    out.fitted_exponent = std::log(r1 / r2) / std::log(x1 / x2);
  }
  if (out.infimum_estimate <= zero_tol) {
    out.kind = SlopeKind::zero;
  } else if (std::abs(r1 - r2) <= stable_tol * r2) {
    out.kind = SlopeKind::positive;
  } else if (out.fitted_exponent > 0.05) {
    out.kind = SlopeKind::zero;
  } else {
    out.kind = SlopeKind::inconclusive;
  }
  return out;
}

}  // namespace hyperorlicz
