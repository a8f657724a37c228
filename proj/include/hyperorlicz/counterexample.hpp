#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/hypergroup.hpp"
#include "hyperorlicz/hypergroup_analysis.hpp"
#include "hyperorlicz/measure.hpp"
#include "hyperorlicz/numeric.hpp"
#include "hyperorlicz/orlicz.hpp"
#include "hyperorlicz/sequence_condition.hpp"
#include "hyperorlicz/young.hpp"

namespace hyperorlicz {

namespace detail {

inline void require_symmetric_neighbourhood(const DiscreteHypergroup& H,
                                            const std::vector<Point>& U) {
  if (!std::binary_search(U.begin(), U.end(), H.identity())) {
    throw Error(ErrorCode::invalid_argument, "U must contain the identity");
  }
  for (Point u : U) {
    if (!std::binary_search(U.begin(), U.end(), H.inv(u))) {
      throw Error(ErrorCode::invalid_argument,
                  "U is not symmetric: missing inverse of " + std::to_string(u));
    }
  }
}

inline bool subset_of(const std::vector<Point>& a, const std::vector<Point>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool disjoint(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return common.empty();
}

}  // namespace detail

/// Largest-effort symmetric V ⊆ U with e ∈ V and V ∗ V ⊆ U: starting from U,
/// repeatedly drop the symmetric pair {v, v⁻} involved in the most
/// offending products.
inline std::vector<Point> find_V(const DiscreteHypergroup& H,
                                 std::span<const Point> U_in) {
  const std::vector<Point> U = make_point_set({U_in.begin(), U_in.end()});
  detail::require_symmetric_neighbourhood(H, U);
  const Point e = H.identity();
  std::vector<Point> V = U;
  for (;;) {
    std::map<Point, long long> offences;
    for (Point s : V) {
      for (Point t : V) {
        for (const auto& [p, c] : H.conv(s, t).entries()) {
          if (!std::binary_search(U.begin(), U.end(), p)) {
            ++offences[s];
            ++offences[t];
            break;
          }
        }
      }
    }
    if (offences.empty()) return V;
    Point worst = e;
    long long worst_count = -1;
    for (const auto& [v, count] : offences) {
      if (v == e) continue;
      const long long c = count + (v == H.inv(v) ? 0 : offences[H.inv(v)]);
      const auto dist = [e](Point p) { return p > e ? p - e : e - p; };
      if (c > worst_count || (c == worst_count && dist(v) > dist(worst))) {
        worst = v;
        worst_count = c;
      }
    }
    if (worst_count < 0) {
      // Only e offends: e ∗ e leaves U, so no V exists.
      throw Error(ErrorCode::not_found, "no V with V*V inside U");
    }
    const Point pair = H.inv(worst);
    std::erase_if(V, [&](Point p) { return p == worst || p == pair; });
  }
}

struct FindNResult {
  long long N = 0;
  long long scan_bound = 0;
};

/// Minimal N with U ∩ (aⁿ ∗ U) = ∅ and U ∩ (a⁻ⁿ ∗ U) = ∅ for every n in
/// [N, scan_bound]. Throws no_aperiodic_element when a is not central on
/// `center_window` or has finite order.
inline FindNResult find_N(const DiscreteHypergroup& H, Point a,
                          std::span<const Point> U_in, long long scan_bound,
                          Window center_window) {
  const std::vector<Point> U = make_point_set({U_in.begin(), U_in.end()});
  if (!is_central_on(H, a, center_window) ||
      !is_central_on(H, H.inv(a), center_window)) {
    throw Error(ErrorCode::no_aperiodic_element,
                std::to_string(a) + " is not in the center of " + H.name());
  }
  const long long order_limit =
      H.is_finite() ? static_cast<long long>(H.carrier_points().size())
                    : scan_bound;
  if (const auto order = element_order(H, a, order_limit)) {
    throw Error(ErrorCode::no_aperiodic_element,
                std::to_string(a) + " has finite order " +
                    std::to_string(*order) + " in " + H.name());
  }
  std::vector<Point> fwd = U;
  std::vector<Point> back = U;
  long long last_hit = 0;
  for (long long n = 1; n <= scan_bound; ++n) {
    fwd = central_power_set(H, a, 1, std::move(fwd));
    back = central_power_set(H, H.inv(a), 1, std::move(back));
    if (!detail::disjoint(U, fwd) || !detail::disjoint(U, back)) last_hit = n;
  }
  if (last_hit == scan_bound) {
    throw Error(ErrorCode::not_found,
                "U meets a^n U up to the scan bound " +
                    std::to_string(scan_bound));
  }
  return {last_hit + 1, scan_bound};
}

struct CounterexampleParams {
  long long scan_bound = 256;
  Window center_window{-64, 64};
  /// Partial sums are taken exactly up to max(M, this) before the
  /// integral-test tail is added.
  long long tail_reference = 10000;
};

/// One block of the construction: f = α_n on a^{-nN} ∗ V and
/// g = β_n on a^{nN} ∗ V ∗ V.
struct CounterexamplePiece {
  long long n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<Point> f_set;
  std::vector<Point> g_set;
};

struct CounterexampleInstance {
  DiscreteHypergroup hypergroup;
  Point a = 0;
  std::vector<Point> U;
  std::vector<Point> V;
  std::vector<Point> VV;
  long long N = 0;
  long long N_prime = 0;
  long long M = 0;
  long long scan_bound = 0;
  double lambda_V = 0.0;
  double lambda_VV = 0.0;
  /// Certified upper bounds for Σ_{n>=N'} Φ1(α_n) and Σ_{n>=N'} Φ2(β_n).
  double tail_bound_phi1 = 0.0;
  double tail_bound_phi2 = 0.0;
  YoungFunction phi1;
  YoungFunction phi2;
  SequenceWitness witness;
  SequenceVerdict sequence;
  std::vector<CounterexamplePiece> pieces;  ///< n = N' .. M

  /// f truncated to blocks n <= m.
  OrliczFunction<double> f(long long m) const { return assemble(m, true); }
  OrliczFunction<double> g(long long m) const { return assemble(m, false); }

 private:
  OrliczFunction<double> assemble(long long m, bool first) const {
    std::vector<OrliczFunction<double>::Entry> e;
    for (const auto& p : pieces) {
      if (p.n > m) break;
      for (Point x : first ? p.f_set : p.g_set) {
        e.emplace_back(x, first ? p.alpha : p.beta);
      }
    }
    return OrliczFunction<double>(std::move(e));
  }
};

/// Builds the divergent pair (f, g) for an aperiodic central element a.
inline CounterexampleInstance build_counterexample(
    const DiscreteHypergroup& H, Point a, std::span<const Point> U_in,
    const YoungFunction& phi1, const YoungFunction& phi2,
    const SequenceWitness& witness, long long M,
    const CounterexampleParams& params = {}) {
  if (M < 1) throw Error(ErrorCode::invalid_argument, "horizon must be >= 1");
  const FindNResult nres =
      find_N(H, a, U_in, params.scan_bound, params.center_window);

  const SequenceVerdict verdict =
      check_sequence_condition(phi1, phi2, witness, {M, 1.0});
  if (!verdict.satisfied()) {
    throw Error(ErrorCode::witness_fails,
                std::string("sequence condition verdict: ") +
                    to_string(verdict.kind));
  }

  CounterexampleInstance inst{H,    a,    make_point_set({U_in.begin(), U_in.end()}),
                              {},   {},   nres.N,
                              0,    M,    nres.scan_bound,
                              0.0,  0.0,  0.0,
                              0.0,  phi1, phi2,
                              witness, verdict, {}};
  inst.V = find_V(H, inst.U);
  inst.VV = set_star(H, inst.V, inst.V);
  inst.lambda_V = haar_mass(H, inst.V);
  inst.lambda_VV = haar_mass(H, inst.VV);

  // Minimal N' with certified Σ_{n>=N'} Φ1(α_n) < 1/λ(V) and
  // Σ_{n>=N'} Φ2(β_n) < 1/λ(V∗V).
  const long long K = std::max(M, params.tail_reference);
  const TailEstimate t1 = series_tail(phi1, witness.alpha, static_cast<double>(K));
  const TailEstimate t2 = series_tail(phi2, witness.beta, static_cast<double>(K));
  if (!is_finite_status(t1.status) || !is_finite_status(t2.status)) {
    throw Error(ErrorCode::witness_fails, "tail bounds are not finite");
  }
  std::vector<double> suffix1(static_cast<std::size_t>(K + 2), 0.0);
  std::vector<double> suffix2(static_cast<std::size_t>(K + 2), 0.0);
  {
    CompensatedSum s1, s2;
    for (long long n = K; n >= 1; --n) {
      const double u = static_cast<double>(n);
      s1 += phi1.at_nonneg(witness.alpha(u));
      s2 += phi2.at_nonneg(witness.beta(u));
      suffix1[static_cast<std::size_t>(n)] = s1.value();
      suffix2[static_cast<std::size_t>(n)] = s2.value();
    }
  }
  for (long long n = 1; n <= K; ++n) {
    const double b1 = suffix1[static_cast<std::size_t>(n)] + t1.bound;
    const double b2 = suffix2[static_cast<std::size_t>(n)] + t2.bound;
    if (b1 * inst.lambda_V < 1.0 && b2 * inst.lambda_VV < 1.0) {
      inst.N_prime = n;
      inst.tail_bound_phi1 = b1;
      inst.tail_bound_phi2 = b2;
      break;
    }
  }
  if (inst.N_prime == 0) {
    throw Error(ErrorCode::witness_fails,
                "no tail start within " + std::to_string(K) +
                    " meets the modular bounds");
  }

  // Blocks a^{-nN} ∗ V and a^{nN} ∗ V ∗ V for n = N' .. M.
  const Point a_inv = H.inv(a);
  std::vector<Point> fset =
      central_power_set(H, a_inv, inst.N_prime * inst.N, inst.V);
  std::vector<Point> gset =
      central_power_set(H, a, inst.N_prime * inst.N, inst.VV);
  for (long long n = inst.N_prime; n <= M; ++n) {
    const double u = static_cast<double>(n);
    inst.pieces.push_back({n, witness.alpha(u), witness.beta(u), fset, gset});
    if (n < M) {
      fset = central_power_set(H, a_inv, inst.N, std::move(fset));
      gset = central_power_set(H, a, inst.N, std::move(gset));
    }
  }

  // Pairwise disjointness of the blocks, exhaustively.
  auto all_disjoint = [&](bool first) {
    std::vector<Point> all;
    std::size_t total = 0;
    for (const auto& p : inst.pieces) {
      const auto& s = first ? p.f_set : p.g_set;
      total += s.size();
      all.insert(all.end(), s.begin(), s.end());
    }
    return make_point_set(std::move(all)).size() == total;
  };
  if (!all_disjoint(true) || !all_disjoint(false)) {
    throw Error(ErrorCode::invalid_argument,
                "translated blocks overlap; the instance violates disjointness");
  }
  return inst;
}

struct DivergenceRow {
  long long M = 0;
  Point x = 0;
  double value = 0.0;        ///< exact truncated (f_M ∗ g_M)(x)
  double lower_bound = 0.0;  ///< λ(V) Σ_{n=N'}^{M} α_n β_n
  bool identity_holds = false;
};

struct DivergenceReport {
  std::vector<DivergenceRow> rows;
  /// Values increase strictly along the schedule for every x.
  bool strictly_increasing = true;
  std::string label =
      "unbounded truncated partial sums of (f*g)(x) on V (operational "
      "reading of non-existence)";
};

/// Truncated (f_M ∗ g_M)(x) for x ∈ V along a horizon schedule, against the
/// closed form λ(V) Σ_{n=N'}^{M} α_n β_n.
inline DivergenceReport divergence_report(const CounterexampleInstance& inst,
                                          std::span<const Point> x_grid,
                                          std::span<const long long> schedule,
                                          double rel_tol = 1e-12) {
  for (Point x : x_grid) {
    if (!std::binary_search(inst.V.begin(), inst.V.end(), x)) {
      throw Error(ErrorCode::invalid_argument,
                  std::to_string(x) + " is not in V");
    }
  }
  DivergenceReport rep;
  std::map<Point, double> last;
  for (long long M : schedule) {
    if (M > inst.M) {
      throw Error(ErrorCode::invalid_argument,
                  "schedule entry " + std::to_string(M) +
                      " exceeds the instance horizon");
    }
    const auto f = inst.f(M);
    const auto g = inst.g(M);
    CompensatedSum closed;
    for (const auto& p : inst.pieces) {
      if (p.n > M) break;
      closed += p.alpha * p.beta;
    }
    const double bound = inst.lambda_V * closed.value();
    for (Point x : x_grid) {
      DivergenceRow row;
      row.M = M;
      row.x = x;
      row.value = convolve_at(inst.hypergroup, f, g, x);
      row.lower_bound = bound;
      row.identity_holds = close_rel(row.value, bound, rel_tol);
      if (auto it = last.find(x); it != last.end() && !(row.value > it->second)) {
        rep.strictly_increasing = false;
      }
      last[x] = row.value;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace hyperorlicz
