#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/hypergroup.hpp"
#include "hyperorlicz/hypergroup_analysis.hpp"
#include "hyperorlicz/measure.hpp"
#include "hyperorlicz/numeric.hpp"
#include "hyperorlicz/young.hpp"

namespace hyperorlicz {

/// Positive weight on the carrier. Weighted spaces use f ∈ L^Φ_w iff
/// f·w ∈ L^Φ, with ‖f‖_{Φ,w} = ‖f w‖_Φ.
class Weight {
 public:
  static Weight unit() {
    Weight w;
    w.f_ = [](Point) { return 1.0; };
    w.label_ = "unit";
    w.unit_ = true;
    return w;
  }

  /// w(x) = exp(rate |x|)
  static Weight exponential(double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
      throw Error(ErrorCode::invalid_argument, "weight rate must be >= 0");
    }
    Weight w;
    w.f_ = [rate](Point x) {
      return std::exp(rate * static_cast<double>(x < 0 ? -x : x));
    };
    w.label_ = "exponential:" + std::to_string(rate);
    w.unit_ = rate == 0.0;
    return w;
  }

  static Weight custom(std::function<double(Point)> f, std::string label) {
    Weight w;
    w.f_ = std::move(f);
    w.label_ = std::move(label);
    return w;
  }

  double operator()(Point x) const {
    const double v = f_(x);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument,
                  "weight must be positive and finite at " + std::to_string(x));
    }
    return v;
  }

  bool is_unit() const { return unit_; }
  const std::string& label() const { return label_; }

 private:
  std::function<double(Point)> f_;
  std::string label_;
  bool unit_ = false;
};

struct SubmultiplicativityReport {
  bool passed = true;
  std::size_t checked = 0;
  double worst_ratio = 0.0;  ///< max of (Σ_t conv(x,y)({t}) w(t)) / (w(x) w(y))
  std::optional<std::pair<Point, Point>> witness;
};

/// Σ_t conv(x,y)({t}) w(t) <= w(x) w(y) for all window pairs.
inline SubmultiplicativityReport certify_submultiplicative(
    const DiscreteHypergroup& H, const Weight& w, Window window,
    double tol = 1e-12) {
  SubmultiplicativityReport rep;
  const auto pts = H.points_in(window);
  for (Point x : pts) {
    for (Point y : pts) {
      ++rep.checked;
      CompensatedSum lhs;
      for (const auto& [t, c] : H.conv(x, y).entries()) lhs += c * w(t);
      const double rhs = w(x) * w(y);
      const double ratio = lhs.value() / rhs;
      rep.worst_ratio = std::max(rep.worst_ratio, ratio);
      if (lhs.value() > rhs * (1.0 + tol)) {
        if (rep.passed) rep.witness = std::pair{x, y};
        rep.passed = false;
      }
    }
  }
  return rep;
}

namespace detail {

template <class T>
class Accumulator {
 public:
  void add(const T& v) {
    if constexpr (is_complex<T>::value) {
      re_ += v.real();
      im_ += v.imag();
    } else {
      re_ += v;
    }
  }
  T value() const {
    if constexpr (is_complex<T>::value) {
      return T(re_.value(), im_.value());
    } else {
      return re_.value();
    }
  }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// (|f(x)| w(x), h(x)) pairs: the data every modular needs.
template <class T>
std::vector<std::pair<double, double>> magnitudes(const DiscreteHypergroup& H,
                                                  const OrliczFunction<T>& f,
                                                  const Weight* w) {
  std::vector<std::pair<double, double>> out;
  out.reserve(f.size());
  for (const auto& [x, v] : f.entries()) {
    out.emplace_back(magnitude(v) * (w ? (*w)(x) : 1.0), H.haar(x));
  }
  return out;
}

template <class Phi>
double modular_of(const Phi& phi,
                  const std::vector<std::pair<double, double>>& mags,
                  double scale) {
  CompensatedSum s;
  for (const auto& [m, h] : mags) s += phi.at_nonneg(m * scale) * h;
  return s.value();
}

}  // namespace detail

/// ρ_Φ(f w) = Σ_x Φ(|f(x)| w(x)) h(x)
template <class Phi, class T>
double modular(const DiscreteHypergroup& H, const Phi& phi,
               const OrliczFunction<T>& f, const Weight* w = nullptr) {
  return detail::modular_of(phi, detail::magnitudes(H, f, w), 1.0);
}

/// ‖f‖_{1,w} = Σ |f(x)| w(x) h(x)
template <class T>
double l1_norm(const DiscreteHypergroup& H, const OrliczFunction<T>& f,
               const Weight* w = nullptr) {
  CompensatedSum s;
  for (const auto& [x, v] : f.entries()) {
    s += magnitude(v) * (w ? (*w)(x) : 1.0) * H.haar(x);
  }
  return s.value();
}

/// Luxemburg gauge inf{k > 0 : ρ_Φ(f w / k) <= 1}, by bracketing and
/// bisection to relative tolerance `tol`.
template <class Phi, class T>
double luxemburg_norm(const DiscreteHypergroup& H, const Phi& phi,
                      const OrliczFunction<T>& f, const Weight* w = nullptr,
                      double tol = 1e-14) {
  const auto mags = detail::magnitudes(H, f, w);
  double top = 0.0;
  for (const auto& [m, h] : mags) top = std::max(top, m);
  if (top == 0.0) return 0.0;

  auto fits = [&](double k) { return detail::modular_of(phi, mags, 1.0 / k) <= 1.0; };
  double hi = top;
  double lo = top;
  if (fits(hi)) {
    do {
      lo /= 2.0;
    } while (fits(lo) && lo > 0.0);
    hi = lo * 2.0;
  } else {
    do {
      hi *= 2.0;
    } while (!fits(hi));
    lo = hi / 2.0;
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (fits(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Orlicz (dual) norm via the Amemiya formula inf_{k>0} (1 + ρ_Φ(k f w)) / k.
template <class Phi, class T>
double orlicz_norm(const DiscreteHypergroup& H, const Phi& phi,
                   const OrliczFunction<T>& f, const Weight* w = nullptr) {
  const auto mags = detail::magnitudes(H, f, w);
  double top = 0.0;
  for (const auto& [m, h] : mags) top = std::max(top, m);
  if (top == 0.0) return 0.0;
  const auto r = minimize_unimodal_positive(
      [&](double k) { return (1.0 + detail::modular_of(phi, mags, k)) / k; },
      1.0 / top);
  return r.value;
}

enum class NormKind { orlicz, luxemburg };

inline const char* to_string(NormKind k) {
  return k == NormKind::orlicz ? "orlicz" : "luxemburg";
}

template <class Phi, class T>
double norm(const DiscreteHypergroup& H, const Phi& phi,
            const OrliczFunction<T>& f, const Weight* w, NormKind kind) {
  return kind == NormKind::orlicz ? orlicz_norm(H, phi, f, w)
                                  : luxemburg_norm(H, phi, f, w);
}

/// g(y⁻ ∗ x) = Σ_t conv(y⁻, x)({t}) g(t)
template <class T>
T value_at_product(const DiscreteHypergroup& H, const OrliczFunction<T>& g,
                   Point y_inv, Point x) {
  detail::Accumulator<T> acc;
  for (const auto& [t, c] : H.conv(y_inv, x).entries()) {
    const T gt = g(t);
    if (gt != T(0)) acc.add(T(c) * gt);
  }
  return acc.value();
}

/// (f ∗ g)(x) = Σ_y f(y) g(y⁻ ∗ x) h(y)
template <class T>
T convolve_at(const DiscreteHypergroup& H, const OrliczFunction<T>& f,
              const OrliczFunction<T>& g, Point x) {
  detail::Accumulator<T> acc;
  for (const auto& [y, fy] : f.entries()) {
    acc.add(fy * value_at_product(H, g, H.inv(y), x) * T(H.haar(y)));
  }
  return acc.value();
}

/// f ∗ g on its full (finite) support supp f ∗ supp g.
template <class T>
OrliczFunction<T> convolve(const DiscreteHypergroup& H,
                           const OrliczFunction<T>& f,
                           const OrliczFunction<T>& g) {
  const auto sf = f.support();
  const auto sg = g.support();
  std::vector<typename OrliczFunction<T>::Entry> out;
  for (Point x : set_star(H, sf, sg)) out.emplace_back(x, convolve_at(H, f, g, x));
  return OrliczFunction<T>(std::move(out));
}

/// (L_z f)(x) = f(z ∗ x) = Σ_t conv(z, x)({t}) f(t)
template <class T>
OrliczFunction<T> translate(const DiscreteHypergroup& H, Point z,
                            const OrliczFunction<T>& f) {
  const auto sf = f.support();
  std::vector<typename OrliczFunction<T>::Entry> out;
  for (Point x : translate_set(H, H.inv(z), sf)) {
    out.emplace_back(x, value_at_product(H, f, z, x));
  }
  return OrliczFunction<T>(std::move(out));
}

/// (μ ∗ g)(x) = Σ_y μ({y}) g(y⁻ ∗ x)
template <class T>
OrliczFunction<T> convolve_measure(const DiscreteHypergroup& H,
                                   const Measure<T>& mu,
                                   const OrliczFunction<T>& g) {
  const auto sm = mu.support();
  const auto sg = g.support();
  std::vector<typename OrliczFunction<T>::Entry> out;
  for (Point x : set_star(H, sm, sg)) {
    detail::Accumulator<T> acc;
    for (const auto& [y, my] : mu.entries()) {
      acc.add(my * value_at_product(H, g, H.inv(y), x));
    }
    out.emplace_back(x, acc.value());
  }
  return OrliczFunction<T>(std::move(out));
}

/// The function e ↦ 1/h(e): the convolution identity for functions.
template <class T = double>
OrliczFunction<T> identity_function(const DiscreteHypergroup& H) {
  return OrliczFunction<T>::point(H.identity(), T(1.0 / H.haar(H.identity())));
}

}  // namespace hyperorlicz
