#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hyperorlicz/error.hpp"
#include "hyperorlicz/numeric.hpp"
#include "hyperorlicz/young.hpp"

namespace hyperorlicz {

/// c * n^{-s}
struct PowerLaw {
  double c;
  double s;
};

/// A nonnegative sequence given by a rule that is evaluable at any real
/// index u >= 1 (the integral test needs the continuous extension).
class TermRule {
 public:
  static TermRule power_law(double c, double s) {
    if (!(c > 0.0) || !(s >= 0.0) || !std::isfinite(c) || !std::isfinite(s)) {
      throw Error(ErrorCode::invalid_argument, "power law needs c > 0, s >= 0");
    }
    TermRule r;
    r.at_ = [c, s](double u) { return c * std::pow(u, -s); };
    r.power_ = PowerLaw{c, s};
    std::ostringstream os;
    os.precision(17);
    os << c << "*n^-" << s;
    r.label_ = os.str();
    return r;
  }

  static TermRule custom(std::function<double(double)> at, std::string label) {
    TermRule r;
    r.at_ = std::move(at);
    r.label_ = std::move(label);
    return r;
  }

  double operator()(double u) const { return at_(u); }
  const std::optional<PowerLaw>& power_law_form() const { return power_; }
  const std::string& label() const { return label_; }

 private:
  std::function<double(double)> at_;
  std::optional<PowerLaw> power_;
  std::string label_;
};

enum class TailMethod { integral_test, partial_sum_only };

struct SequenceWitness {
  TermRule alpha;
  TermRule beta;
  TailMethod method = TailMethod::integral_test;

  /// α_n = β_n = n^{-1/2}
  static SequenceWitness inverse_sqrt() {
    return {TermRule::power_law(1.0, 0.5), TermRule::power_law(1.0, 0.5),
            TailMethod::integral_test};
  }
};

enum class SeriesStatus {
  certified_finite,
  certified_divergent,
  numeric_finite,
  numeric_divergent,
  unknown,
};

inline const char* to_string(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::certified_finite: return "certified_finite";
    case SeriesStatus::certified_divergent: return "certified_divergent";
    case SeriesStatus::numeric_finite: return "numeric_finite";
    case SeriesStatus::numeric_divergent: return "numeric_divergent";
    case SeriesStatus::unknown: return "unknown";
  }
  return "?";
}

inline bool is_finite_status(SeriesStatus s) {
  return s == SeriesStatus::certified_finite ||
         s == SeriesStatus::numeric_finite;
}
inline bool is_divergent_status(SeriesStatus s) {
  return s == SeriesStatus::certified_divergent ||
         s == SeriesStatus::numeric_divergent;
}

/// Upper bound for sum_{n > K} t(n), or a divergence verdict.
struct TailEstimate {
  SeriesStatus status = SeriesStatus::unknown;
  double bound = std::numeric_limits<double>::infinity();
};

namespace detail {

/// ∫_K^inf t(u) du for nonincreasing t, on a log scale with a power-law
/// extrapolation beyond K * 1e8.
template <class T>
TailEstimate numeric_tail_integral(const T& t, double K) {
  constexpr int intervals = 2000;  // even
  const double span = std::log(1e8);
  const double dv = span / intervals;
  auto integrand = [&](double v) {
    const double u = K * std::exp(v);
    return t(u) * u;
  };
  CompensatedSum acc;
  for (int i = 0; i <= intervals; ++i) {
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * integrand(i * dv);
  }
  const double body = acc.value() * dv / 3.0;
  const double U = K * 1e8;
  const double tU = t(U);
  TailEstimate out;
  if (tU == 0.0) {
    out.status = SeriesStatus::numeric_finite;
    out.bound = body;
    return out;
  }
  const double t_prev = t(U / 10.0);
  const double r = std::log(t_prev / tU) / std::log(10.0);
  if (r > 1.001) {
    out.status = SeriesStatus::numeric_finite;
    out.bound = body + tU * U / (r - 1.0);
  } else {
    out.status = SeriesStatus::numeric_divergent;
  }
  return out;
}

inline void require_nonnegative_nonincreasing(const TermRule& rule,
                                              double horizon, bool need_monotone,
                                              const char* which) {
  double prev = std::numeric_limits<double>::infinity();
  const auto grid = log_grid(1.0, std::max(2.0, horizon * 1e3), 512);
  for (double u : grid) {
    const double v = rule(u);
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument,
                  std::string(which) + " rule is negative or not finite at n=" +
                      std::to_string(u));
    }
    if (need_monotone && v > prev * (1.0 + 1e-12)) {
      throw Error(ErrorCode::method_inapplicable,
                  std::string(which) +
                      " rule is not nonincreasing; the integral test needs a "
                      "monotone term (n=" + std::to_string(u) + ")");
    }
    prev = v;
  }
}

}  // namespace detail

/// Tail bound for sum_{n > K} Φ(α_n). Closed form when Φ is a power or
/// power-log function and α is a power law (ln(1+a) <= a gives
/// Φ(c u^{-s}) <= c^q u^{-sq} with q = p + gamma); numeric otherwise.
inline TailEstimate series_tail(const YoungFunction& phi, const TermRule& rule,
                                double K) {
  const auto pg = phi.power_log_exponents();
  const auto& pl = rule.power_law_form();
  if (pg && pl) {
    const double q = pg->first + pg->second;
    const double sq = pl->s * q;
    TailEstimate out;
    if (sq > 1.0) {
      out.status = SeriesStatus::certified_finite;
      out.bound = std::pow(pl->c, q) * std::pow(K, 1.0 - sq) / (sq - 1.0);
    } else {
      // ln(1+a) >= a/2 on [0,1] gives the matching lower comparison.
      out.status = SeriesStatus::certified_divergent;
    }
    return out;
  }
  return detail::numeric_tail_integral(
      [&](double u) { return phi.at_nonneg(rule(u)); }, K);
}

/// sum_{n=1}^{M} Φ(α_n)
inline double partial_sum(const YoungFunction& phi, const TermRule& rule,
                          long long M) {
  CompensatedSum acc;
  for (long long n = 1; n <= M; ++n) {
    acc += phi.at_nonneg(rule(static_cast<double>(n)));
  }
  return acc.value();
}

struct SeriesEvidence {
  double partial_sum = 0.0;
  SeriesStatus status = SeriesStatus::unknown;
  std::optional<double> tail_bound;  ///< bound for the part beyond the horizon
  std::string method;
};

enum class SequenceVerdictKind { satisfied, witness_fails, inconclusive };

inline const char* to_string(SequenceVerdictKind k) {
  switch (k) {
    case SequenceVerdictKind::satisfied: return "satisfied";
    case SequenceVerdictKind::witness_fails: return "witness_fails";
    case SequenceVerdictKind::inconclusive: return "inconclusive";
  }
  return "?";
}

struct SequenceBudget {
  long long horizon = 10000;
  double divergence_target = 1.0;
};

struct SequenceVerdict {
  SequenceVerdictKind kind = SequenceVerdictKind::inconclusive;
  long long horizon = 0;
  SeriesEvidence phi1_series;
  SeriesEvidence phi2_series;
  double product_partial = 0.0;
  SeriesStatus product_status = SeriesStatus::unknown;
  std::optional<double> product_lower_bound;  ///< certified bound on P(M)
  double divergence_target = 0.0;
  bool closed_form = false;
  std::string label;

  bool satisfied() const { return kind == SequenceVerdictKind::satisfied; }
};

/// Checks sum Φ1(α_n) < inf, sum Φ2(β_n) < inf and sum α_n β_n = inf using
/// partial sums to the horizon plus integral-test tail evidence.
inline SequenceVerdict check_sequence_condition(const YoungFunction& phi1,
                                                const YoungFunction& phi2,
                                                const SequenceWitness& w,
                                                const SequenceBudget& budget = {}) {
  if (budget.horizon < 1) {
    throw Error(ErrorCode::invalid_argument, "horizon must be positive");
  }
  const bool integral = w.method == TailMethod::integral_test;
  const double M = static_cast<double>(budget.horizon);
  detail::require_nonnegative_nonincreasing(w.alpha, M, integral, "alpha");
  detail::require_nonnegative_nonincreasing(w.beta, M, integral, "beta");

  SequenceVerdict v;
  v.horizon = budget.horizon;
  v.divergence_target = budget.divergence_target;

  CompensatedSum s1, s2, prod;
  for (long long n = 1; n <= budget.horizon; ++n) {
    const double a = w.alpha(static_cast<double>(n));
    const double b = w.beta(static_cast<double>(n));
    s1 += phi1.at_nonneg(a);
    s2 += phi2.at_nonneg(b);
    prod += a * b;
  }
  v.phi1_series.partial_sum = s1.value();
  v.phi2_series.partial_sum = s2.value();
  v.product_partial = prod.value();

  if (!integral) {
    v.phi1_series.method = v.phi2_series.method = "partial_sum_only";
    v.kind = SequenceVerdictKind::inconclusive;
    v.label = "partial sums only; no tail evidence";
    return v;
  }

  auto fill = [&](SeriesEvidence& ev, const YoungFunction& phi,
                  const TermRule& rule) {
    const TailEstimate t = series_tail(phi, rule, M);
    ev.status = t.status;
    if (is_finite_status(t.status)) ev.tail_bound = t.bound;
    ev.method = t.status == SeriesStatus::certified_finite ||
                        t.status == SeriesStatus::certified_divergent
                    ? "integral_test_closed_form"
                    : "integral_test_numeric";
  };
  fill(v.phi1_series, phi1, w.alpha);
  fill(v.phi2_series, phi2, w.beta);

  const auto& pa = w.alpha.power_law_form();
  const auto& pb = w.beta.power_law_form();
  if (pa && pb) {
    const double c = pa->c * pb->c;
    const double s = pa->s + pb->s;
    if (s <= 1.0) {
      v.product_status = SeriesStatus::certified_divergent;
      // nonincreasing terms: sum_{n<=M} >= ∫_1^{M+1}
      v.product_lower_bound =
          s == 1.0 ? c * std::log(M + 1.0)
                   : c * (std::pow(M + 1.0, 1.0 - s) - 1.0) / (1.0 - s);
    } else {
      v.product_status = SeriesStatus::certified_finite;
    }
  } else {
    const TailEstimate t = detail::numeric_tail_integral(
        [&](double u) { return w.alpha(u) * w.beta(u); }, M);
    v.product_status = t.status;
  }

  v.closed_form = v.phi1_series.status != SeriesStatus::numeric_finite &&
                  v.phi1_series.status != SeriesStatus::numeric_divergent &&
                  v.phi2_series.status != SeriesStatus::numeric_finite &&
                  v.phi2_series.status != SeriesStatus::numeric_divergent &&
                  (v.product_status == SeriesStatus::certified_divergent ||
                   v.product_status == SeriesStatus::certified_finite);

  const double reached = v.product_lower_bound.value_or(v.product_partial);
  if (is_divergent_status(v.phi1_series.status) ||
      is_divergent_status(v.phi2_series.status) ||
      is_finite_status(v.product_status)) {
    v.kind = SequenceVerdictKind::witness_fails;
  } else if (is_finite_status(v.phi1_series.status) &&
             is_finite_status(v.phi2_series.status) &&
             is_divergent_status(v.product_status) &&
             reached >= budget.divergence_target) {
    v.kind = SequenceVerdictKind::satisfied;
  } else {
    v.kind = SequenceVerdictKind::inconclusive;
  }
  v.label = v.closed_form ? "numeric certificate with closed-form tail bounds"
                          : "numeric certificate with numeric tail estimates";
  return v;
}

}  // namespace hyperorlicz
