#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/numeric.hpp"

namespace hyperorlicz {

/// Carrier points of a discrete hypergroup are enumerated by integers.
using Point = std::int64_t;

/// Inclusive integer range [lo, hi].
struct Window {
  Point lo = 0;
  Point hi = -1;

  static Window around(Point center, Point radius) {
    return {center - radius, center + radius};
  }
  bool contains(Point x) const { return lo <= x && x <= hi; }
  bool empty() const { return hi < lo; }
  bool operator==(const Window&) const = default;
};

template <class T>
inline double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

struct measure_tag {};
struct function_tag {};

/// Finitely supported map carrier -> T with sorted, distinct support.
/// The tag separates measures (integrated against nothing) from functions
/// (integrated against the Haar weight).
template <class T, class Tag>
class Sparse {
 public:
  using value_type = T;
  using Entry = std::pair<Point, T>;

  Sparse() = default;
  Sparse(std::initializer_list<Entry> entries)
      : Sparse(std::vector<Entry>(entries)) {}

  /// Duplicate points are merged by addition; explicit zeros are dropped.
  explicit Sparse(std::vector<Entry> entries) : entries_(std::move(entries)) {
    normalize();
  }

  static Sparse point(Point x, T value = T(1)) {
    return Sparse(std::vector<Entry>{Entry{x, value}});
  }

  /// value * indicator of the given points
  static Sparse indicator(std::span<const Point> points, T value = T(1)) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Entry> e;
    e.reserve(pts.size());
    for (Point p : pts) e.emplace_back(p, value);
    Sparse s;
    s.entries_ = std::move(e);
    s.normalize(/*merge=*/false);
    return s;
  }

  const std::vector<Entry>& entries() const& { return entries_; }
  // by value on rvalues, so `for (... : H.conv(x, y).entries())` is safe
  std::vector<Entry> entries() && { return std::move(entries_); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<Point> support() const {
    std::vector<Point> s;
    s.reserve(entries_.size());
    for (const auto& [x, v] : entries_) s.push_back(x);
    return s;
  }

  T operator()(Point x) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), x,
        [](const Entry& e, Point p) { return e.first < p; });
    return (it != entries_.end() && it->first == x) ? it->second : T(0);
  }

  T total_mass() const {
    T s(0);
    for (const auto& [x, v] : entries_) s += v;
    return s;
  }

  double total_variation() const {
    CompensatedSum s;
    for (const auto& [x, v] : entries_) s += magnitude(v);
    return s.value();
  }

  /// sum |v(x)| w(x)
  template <class W>
  double weighted_total_variation(const W& w) const {
    CompensatedSum s;
    for (const auto& [x, v] : entries_) s += magnitude(v) * w(x);
    return s.value();
  }

  bool is_probability(double tol = 1e-12) const {
    if constexpr (is_complex<T>::value) {
      for (const auto& [x, v] : entries_) {
        if (v.imag() != 0.0 || v.real() < 0.0) return false;
      }
      return std::abs(total_mass() - T(1)) <= tol;
    } else {
      for (const auto& [x, v] : entries_) {
        if (v < 0.0) return false;
      }
      return std::abs(total_mass() - T(1)) <= tol;
    }
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [x, v] : entries_) m = std::max(m, magnitude(v));
    return m;
  }

  Sparse& operator+=(const Sparse& other) {
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    std::merge(entries_.begin(), entries_.end(), other.entries_.begin(),
               other.entries_.end(), std::back_inserter(merged),
               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    entries_ = std::move(merged);
    normalize();
    return *this;
  }
  friend Sparse operator+(Sparse a, const Sparse& b) { return a += b; }

  Sparse& operator*=(T s) {
    for (auto& [x, v] : entries_) v *= s;
    normalize(false);
    return *this;
  }
  friend Sparse operator*(T s, Sparse a) { return a *= s; }
  friend Sparse operator*(Sparse a, T s) { return a *= s; }
  friend Sparse operator-(const Sparse& a, const Sparse& b) {
    return a + T(-1) * b;
  }

  /// Pointwise map of the values.
  template <class F>
  Sparse map_values(F f) const {
    Sparse out = *this;
    for (auto& [x, v] : out.entries_) v = f(x, v);
    out.normalize(false);
    return out;
  }

  /// Same support and values, carried into another space.
  template <class OtherTag>
  Sparse<T, OtherTag> retag() const {
    return Sparse<T, OtherTag>(entries_);
  }

  bool operator==(const Sparse&) const = default;

 private:
  void normalize(bool merge = true) {
    auto by_point = [](const Entry& a, const Entry& b) {
      return a.first < b.first;
    };
    if (!std::is_sorted(entries_.begin(), entries_.end(), by_point)) {
      std::stable_sort(entries_.begin(), entries_.end(), by_point);
    }
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (auto& e : entries_) {
      if (merge && !out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
      } else {
        out.push_back(e);
      }
    }
    std::erase_if(out, [](const Entry& e) { return e.second == T(0); });
    entries_ = std::move(out);
  }

  std::vector<Entry> entries_;
};

template <class T = double>
using Measure = Sparse<T, measure_tag>;
using FiniteMeasure = Measure<double>;
using ComplexMeasure = Measure<std::complex<double>>;

template <class T = double>
using OrliczFunction = Sparse<T, function_tag>;

/// Sorted, duplicate-free point set.
inline std::vector<Point> make_point_set(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace hyperorlicz
