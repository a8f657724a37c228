#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace hyperorlicz {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// `count` points geometrically spaced from `lo` to `hi` inclusive (lo, hi > 0).
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid;
  if (count == 0) return grid;
  grid.reserve(count);
  if (count == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    grid.push_back(std::exp(a + (b - a) * t));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

/// Grid and refinement settings for one-dimensional searches.
struct SearchParams {
  double lo = 1e-9;      ///< smallest positive grid point (0 is always probed)
  double hi = 1e6;       ///< upper end of the search range
  std::size_t grid = 256;
  int refine_iters = 200;
};

struct MaximizeResult {
  double argmax = 0.0;
  double value = 0.0;
  /// The objective was still increasing at `hi`; the supremum may lie
  /// beyond the range.
  bool increasing_at_upper_edge = false;
};

namespace detail {

template <class F>
double golden_max(const F& f, double a, double b, int iters, double& best_x,
                  double& best_v) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters && b - a > 0.0; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      if (c == d) break;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      if (c == d) break;
      fd = f(d);
    }
  }
  if (fc > best_v) {
    best_v = fc;
    best_x = c;
  }
  if (fd > best_v) {
    best_v = fd;
    best_x = d;
  }
  return best_v;
}

}  // namespace detail

/// Maximizes a concave function on [0, params.hi]: coarse log grid, then
/// golden-section refinement on the bracket around the best grid point.
/// The returned value is the best objective actually evaluated.
template <class F>
MaximizeResult maximize_concave(const F& f, const SearchParams& params) {
  std::vector<double> ys{0.0};
  for (double y : log_grid(params.lo, params.hi, params.grid)) ys.push_back(y);

  std::size_t best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  std::vector<double> vals(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    vals[i] = f(ys[i]);
    if (vals[i] > best_v) {
      best_v = vals[i];
      best = i;
    }
  }
  MaximizeResult out;
  out.argmax = ys[best];
  out.value = best_v;
  const std::size_t last = ys.size() - 1;
  if (best == last && vals[last] > vals[last - 1]) {
    out.increasing_at_upper_edge = true;
    return out;
  }
  const double a = best == 0 ? 0.0 : ys[best - 1];
  const double b = ys[best == last ? last : best + 1];
  detail::golden_max(f, a, b, params.refine_iters, out.argmax, out.value);
  return out;
}

struct MinimizeResult {
  double argmin = 0.0;
  double value = 0.0;
  bool attained = true;  ///< false when the infimum is approached as t -> inf
};

/// Minimizes a unimodal function of t > 0 by golden section on log t,
/// starting from `t0` and expanding the bracket geometrically.
template <class F>
MinimizeResult minimize_unimodal_positive(const F& f, double t0,
                                          int iters = 300) {
  auto g = [&](double s) {
    const double v = -f(std::exp(s));
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };
  const double s0 = std::log(t0);
  const double v0 = g(s0);
  const double v1 = g(s0 + 1.0);
  // For a unimodal objective the side with the larger value holds the optimum.
  const double dir = v1 >= v0 ? 1.0 : -1.0;
  double before = dir > 0 ? s0 : s0 + 1.0;
  double prev = dir > 0 ? s0 + 1.0 : s0;
  double prev_v = dir > 0 ? v1 : v0;
  double step = 1.0;
  double lo = before;
  double hi = prev;
  bool hit_limit = false;
  for (;;) {
    step *= 2.0;
    const double next = prev + dir * step;
    const double next_v = g(next);
    if (next_v < prev_v) {
      lo = std::min(before, next);
      hi = std::max(before, next);
      break;
    }
    before = prev;
    prev = next;
    prev_v = next_v;
    if (std::abs(prev) > 690.0) {
      hit_limit = true;
      break;
    }
  }
  MinimizeResult out;
  if (hit_limit) {
    out.argmin = std::exp(prev);
    out.value = -prev_v;
    out.attained = false;
    return out;
  }
  double best_s = prev;
  double best_v = prev_v;
  detail::golden_max(g, lo, hi, iters, best_s, best_v);
  out.argmin = std::exp(best_s);
  out.value = -best_v;
  return out;
}

/// Relative closeness test with an absolute floor.
inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * scale + abs_floor;
}

}  // namespace hyperorlicz
