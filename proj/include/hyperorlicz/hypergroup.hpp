#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/measure.hpp"

namespace hyperorlicz {

/// One row of a user-supplied structure-constant table: δ_x ∗ δ_y.
struct TableEntry {
  Point x = 0;
  Point y = 0;
  std::vector<Point> support;
  std::vector<double> weights;
};

struct TableSpec {
  std::vector<Point> points;
  std::vector<TableEntry> table;
  std::vector<Point> involution;  ///< aligned with `points`
  Point identity = 0;
  std::vector<double> haar;  ///< aligned with `points`
  double tolerance = 1e-12;
};

/// A discrete hypergroup given by structure constants conv(x, y) = δ_x ∗ δ_y,
/// an involution, an identity and a Haar weight. Immutable after
/// construction; every query either stays inside the halo or throws
/// boundary_overflow.
///
/// Built-in structure constants are dyadic (1 or 1/2) and therefore exact in
/// binary floating point.
class DiscreteHypergroup {
 public:
  enum class Kind { integers, cyclic, chebyshev, table };

  /// The group ℤ: conv(x, y) = δ_{x+y}, x⁻ = -x, h ≡ 1.
  static DiscreteHypergroup integers() {
    DiscreteHypergroup h(Kind::integers);
    h.halo_ = {-kDefaultReach, kDefaultReach};
    return h;
  }

  /// The group ℤ_m on {0, ..., m-1}.
  static DiscreteHypergroup cyclic(Point m) {
    if (m < 1) throw Error(ErrorCode::invalid_argument, "cyclic order must be >= 1");
    DiscreteHypergroup h(Kind::cyclic);
    h.modulus_ = m;
    h.halo_ = {0, m - 1};
    return h;
  }

  /// Chebyshev polynomial hypergroup on ℕ_0:
  /// conv(m, n) = ½δ_{|m-n|} + ½δ_{m+n} for m, n >= 1, conv(0, n) = δ_n,
  /// h(0) = 1, h(n) = 2.
  static DiscreteHypergroup chebyshev() {
    DiscreteHypergroup h(Kind::chebyshev);
    h.halo_ = {0, kDefaultReach};
    return h;
  }

  static DiscreteHypergroup from_table(const TableSpec& spec) {
    DiscreteHypergroup h(Kind::table);
    auto data = std::make_shared<TableData>();
    const auto& pts = spec.points;
    if (pts.empty()) throw Error(ErrorCode::invalid_table, "no carrier points");
    if (spec.involution.size() != pts.size() || spec.haar.size() != pts.size()) {
      throw Error(ErrorCode::invalid_table,
                  "involution and haar must align with points");
    }
    data->points = make_point_set(pts);
    if (data->points.size() != pts.size()) {
      throw Error(ErrorCode::invalid_table, "duplicate carrier points");
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!(spec.haar[i] > 0.0) || !std::isfinite(spec.haar[i])) {
        throw Error(ErrorCode::invalid_table,
                    "haar weight must be positive at " + std::to_string(pts[i]));
      }
      data->inv[pts[i]] = spec.involution[i];
      data->haar[pts[i]] = spec.haar[i];
    }
    // Involution: a bijection of the carrier.
    std::vector<Point> image = spec.involution;
    std::sort(image.begin(), image.end());
    if (image != data->points) {
      throw Error(ErrorCode::invalid_table,
                  "involution is not a bijection on the carrier");
    }
    if (!std::binary_search(data->points.begin(), data->points.end(),
                            spec.identity)) {
      throw Error(ErrorCode::invalid_table, "identity is not a carrier point");
    }
    for (const auto& row : spec.table) {
      if (row.support.size() != row.weights.size() || row.support.empty()) {
        throw Error(ErrorCode::invalid_table,
                    "row (" + std::to_string(row.x) + "," +
                        std::to_string(row.y) + ") malformed");
      }
      std::vector<FiniteMeasure::Entry> e;
      double sum = 0.0;
      for (std::size_t i = 0; i < row.support.size(); ++i) {
        if (!std::binary_search(data->points.begin(), data->points.end(),
                                row.support[i])) {
          throw Error(ErrorCode::invalid_table,
                      "support point " + std::to_string(row.support[i]) +
                          " not in carrier");
        }
        if (row.weights[i] < 0.0) {
          throw Error(ErrorCode::invalid_table, "negative structure constant");
        }
        sum += row.weights[i];
        e.emplace_back(row.support[i], row.weights[i]);
      }
      if (std::abs(sum - 1.0) > spec.tolerance) {
        throw Error(ErrorCode::invalid_table,
                    "row (" + std::to_string(row.x) + "," +
                        std::to_string(row.y) + ") does not sum to 1");
      }
      data->conv[{row.x, row.y}] = FiniteMeasure(std::move(e));
    }
    h.identity_ = spec.identity;
    h.tolerance_ = spec.tolerance;
    h.halo_ = {data->points.front(), data->points.back()};
    h.table_ = std::move(data);
    return h;
  }

  /// Copy with δ_x ∗ δ_y replaced. Not validated; see validate_axioms.
  DiscreteHypergroup with_entry(Point x, Point y, FiniteMeasure m) const {
    DiscreteHypergroup h = *this;
    auto ov = overrides_ ? std::make_shared<OverrideMap>(*overrides_)
                         : std::make_shared<OverrideMap>();
    (*ov)[{x, y}] = std::move(m);
    h.overrides_ = std::move(ov);
    return h;
  }

  /// Copy with a narrower (or wider) halo.
  DiscreteHypergroup with_halo(Window halo) const {
    DiscreteHypergroup h = *this;
    h.halo_ = halo;
    return h;
  }

  Kind kind() const { return kind_; }
  Point modulus() const { return modulus_; }
  Point identity() const { return identity_; }
  Window halo() const { return halo_; }
  double tolerance() const { return tolerance_; }
  bool modified() const { return overrides_ != nullptr; }

  std::string name() const {
    switch (kind_) {
      case Kind::integers: return "integers";
      case Kind::cyclic: return "cyclic:" + std::to_string(modulus_);
      case Kind::chebyshev: return "chebyshev";
      case Kind::table: return "table";
    }
    return "?";
  }

  bool is_finite() const { return kind_ == Kind::cyclic || kind_ == Kind::table; }

  /// Every δ_x ∗ δ_y is a point mass (built-in groups, unmodified).
  bool is_group() const {
    return (kind_ == Kind::integers || kind_ == Kind::cyclic) && !modified();
  }

  bool in_carrier(Point x) const {
    switch (kind_) {
      case Kind::integers: return true;
      case Kind::cyclic: return 0 <= x && x < modulus_;
      case Kind::chebyshev: return x >= 0;
      case Kind::table:
        return std::binary_search(table_->points.begin(), table_->points.end(), x);
    }
    return false;
  }

  /// Carrier points inside both `w` and the halo.
  std::vector<Point> points_in(Window w) const {
    std::vector<Point> out;
    const Point lo = std::max(w.lo, halo_.lo);
    const Point hi = std::min(w.hi, halo_.hi);
    if (kind_ == Kind::table) {
      for (Point p : table_->points) {
        if (lo <= p && p <= hi) out.push_back(p);
      }
      return out;
    }
    for (Point p = lo; p <= hi; ++p) {
      if (in_carrier(p)) out.push_back(p);
    }
    return out;
  }

  /// All carrier points; finite carriers only.
  std::vector<Point> carrier_points() const {
    if (!is_finite()) {
      throw Error(ErrorCode::invalid_argument, name() + " carrier is infinite");
    }
    if (kind_ == Kind::table) return table_->points;
    return points_in({0, modulus_ - 1});
  }

  Point inv(Point x) const {
    require_point(x);
    switch (kind_) {
      case Kind::integers: return -x;
      case Kind::cyclic: return (modulus_ - x) % modulus_;
      case Kind::chebyshev: return x;
      case Kind::table: return table_->inv.at(x);
    }
    return x;
  }

  double haar(Point x) const {
    require_point(x);
    switch (kind_) {
      case Kind::integers:
      case Kind::cyclic: return 1.0;
      case Kind::chebyshev: return x == 0 ? 1.0 : 2.0;
      case Kind::table: return table_->haar.at(x);
    }
    return 1.0;
  }

  /// δ_x ∗ δ_y
  FiniteMeasure conv(Point x, Point y) const {
    require_point(x);
    require_point(y);
    if (overrides_) {
      if (auto it = overrides_->find({x, y}); it != overrides_->end()) {
        return checked(it->second, x, y);
      }
    }
    switch (kind_) {
      case Kind::integers:
        return checked(FiniteMeasure::point(x + y), x, y);
      case Kind::cyclic:
        return FiniteMeasure::point((x + y) % modulus_);
      case Kind::chebyshev: {
        if (x == 0) return checked(FiniteMeasure::point(y), x, y);
        if (y == 0) return checked(FiniteMeasure::point(x), x, y);
        const Point d = x > y ? x - y : y - x;
        return checked(FiniteMeasure({{d, 0.5}, {x + y, 0.5}}), x, y);
      }
      case Kind::table: {
        auto it = table_->conv.find({x, y});
        if (it == table_->conv.end()) {
          throw Error(ErrorCode::boundary_overflow,
                      "table has no entry for (" + std::to_string(x) + "," +
                          std::to_string(y) + ")");
        }
        return it->second;
      }
    }
    return {};
  }

 private:
  static constexpr Point kDefaultReach = Point(1) << 40;

  struct TableData {
    std::vector<Point> points;
    std::map<std::pair<Point, Point>, FiniteMeasure> conv;
    std::map<Point, Point> inv;
    std::map<Point, double> haar;
  };
  using OverrideMap = std::map<std::pair<Point, Point>, FiniteMeasure>;

  explicit DiscreteHypergroup(Kind k) : kind_(k) {}

  void require_point(Point x) const {
    if (!in_carrier(x)) {
      throw Error(ErrorCode::invalid_argument,
                  std::to_string(x) + " is not a point of " + name());
    }
    if (!halo_.contains(x)) {
      throw Error(ErrorCode::boundary_overflow,
                  std::to_string(x) + " lies outside the halo of " + name());
    }
  }

  FiniteMeasure checked(FiniteMeasure m, Point x, Point y) const {
    for (const auto& [t, w] : m.entries()) {
      if (!halo_.contains(t)) {
        throw Error(ErrorCode::boundary_overflow,
                    "support of conv(" + std::to_string(x) + "," +
                        std::to_string(y) + ") leaves the halo at " +
                        std::to_string(t));
      }
    }
    return m;
  }

  Kind kind_;
  Point modulus_ = 0;
  Point identity_ = 0;
  double tolerance_ = 1e-15;
  Window halo_;
  std::shared_ptr<const TableData> table_;
  std::shared_ptr<const OverrideMap> overrides_;
};

}  // namespace hyperorlicz
