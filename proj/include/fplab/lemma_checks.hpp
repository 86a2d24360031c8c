#ifndef FPLAB_LEMMA_CHECKS_HPP
#define FPLAB_LEMMA_CHECKS_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fplab/angles.hpp"
#include "fplab/potentials.hpp"

namespace fplab {

// --------------------------------------------------------------------------
// Auxiliary functions of the analytic argument.
// --------------------------------------------------------------------------

// G(theta) = cos^{p-1}(theta) sin(theta) on [0, pi/2]. Uses the snapped
// cosine so G(pi/2) is an exact zero even for p < 2.
inline double g_func(double theta, double p) {
  if (!(theta >= 0.0 && theta <= kPi / 2.0))
    throw std::domain_error("g_func: theta must lie in [0, pi/2]");
  if (!(p >= 1.0)) throw std::domain_error("g_func: p must be >= 1");
  return std::pow(detail::abs_cos_reduced(theta), p - 1.0) * std::sin(theta);
}

// K(theta) = cos^p(theta) + cos^p(pi/2 - nu - theta).
inline double k_func(double theta, double nu, double p) {
  if (!(nu >= 0.0 && nu <= kPi / 2.0))
    throw std::domain_error("k_func: nu must lie in [0, pi/2]");
  if (!(theta >= 0.0 && theta <= kPi / 2.0 - nu))
    throw std::domain_error("k_func: theta must lie in [0, pi/2 - nu]");
  if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("k_func: p must lie in [1, 2]");
  return std::pow(std::cos(theta), p) + std::pow(std::cos(kPi / 2.0 - nu - theta), p);
}

// L(alpha) = 1 + 2 sin^p(alpha/2) + cos^p(alpha).
inline double l_func(double alpha, double p) {
  if (!(alpha >= 0.0 && alpha <= kPi / 3.0))
    throw std::domain_error("l_func: alpha must lie in [0, pi/3]");
  return 1.0 + 2.0 * std::pow(std::sin(alpha / 2.0), p) + std::pow(std::cos(alpha), p);
}

// P(alpha) = cos^p(alpha) + cos^p(2pi/3 - alpha).
inline double p_func(double alpha, double p) {
  if (!(alpha >= kPi / 3.0 && alpha <= kPi / 2.0))
    throw std::domain_error("p_func: alpha must lie in [pi/3, pi/2]");
  return std::pow(std::cos(alpha), p) + std::pow(std::cos(2.0 * kPi / 3.0 - alpha), p);
}

// R(rho) = sin^p(rho) + sin^p(alpha - rho).
inline double r_func(double rho, double alpha, double p) {
  if (!(alpha >= 0.0 && alpha <= kPi / 3.0))
    throw std::domain_error("r_func: alpha must lie in [0, pi/3]");
  if (!(rho >= 0.0 && rho <= alpha / 2.0))
    throw std::domain_error("r_func: rho must lie in [0, alpha/2]");
  return std::pow(std::sin(rho), p) + std::pow(std::sin(alpha - rho), p);
}

// sum of sin^p over three acute angles summing to pi/2.
inline double eps_sum(double e1, double e2, double e3, double p) {
  if (!(e1 >= 0.0 && e2 >= 0.0 && e3 >= 0.0) ||
      std::fabs(e1 + e2 + e3 - kPi / 2.0) > 1e-12)
    throw std::invalid_argument("eps_sum: angles must be nonnegative and sum to pi/2");
  return std::pow(std::sin(e1), p) + std::pow(std::sin(e2), p) + std::pow(std::sin(e3), p);
}

// Rational bound controlling the sign of G''': 6p + 28/p - 16/p^2 + 4/p^3 - 22.
inline double cubic_bound(double p) {
  if (!(p > 0.0)) throw std::domain_error("cubic_bound: p must be > 0");
  return 6.0 * p + 28.0 / p - 16.0 / (p * p) + 4.0 / (p * p * p) - 22.0;
}

// --------------------------------------------------------------------------
// Dense-grid inequality suites.
// --------------------------------------------------------------------------

enum class LemmaId { GGa, GGb, GGc, GGd, KK, LL, PP, RR, EPS, IIa, IIb };

inline const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::GGa: return "GG-a";
    case LemmaId::GGb: return "GG-b";
    case LemmaId::GGc: return "GG-c";
    case LemmaId::GGd: return "GG-d";
    case LemmaId::KK: return "KK";
    case LemmaId::LL: return "LL";
    case LemmaId::PP: return "PP";
    case LemmaId::RR: return "RR";
    case LemmaId::EPS: return "EPS";
    case LemmaId::IIa: return "IIa";
    case LemmaId::IIb: return "IIb";
  }
  return "?";
}

struct GridSpec {
  int points_per_axis = 1000;
  // NaN means "use the lemma's stated hypothesis range".
  double p_lo = std::numeric_limits<double>::quiet_NaN();
  double p_hi = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 1e-12;
};

struct LemmaReport {
  std::string lemma_id;
  bool passed = false;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::vector<double> worst_point;
  long long points_checked = 0;
};

namespace detail {

// Suites in 3+ parameters cannot afford 10^3 points per axis; cap the
// per-axis count so the total stays around a few million evaluations.
inline int axis_points(int requested, int dims) {
  if (requested < 2) requested = 2;
  switch (dims) {
    case 1:
    case 2: return requested;
    case 3: return std::min(requested, 128);
    case 4: return std::min(requested, 40);
    default: return std::min(requested, 18);
  }
}

struct AxisRange {
  double lo, hi;
};

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

struct MarginAccumulator {
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> at;
  long long count = 0;

  void add(double margin, std::initializer_list<double> point) {
    ++count;
    if (margin < worst) {
      worst = margin;
      at.assign(point);
    }
  }
};

inline double delta_pair(double theta, double rho, double p) {
  // Delta_p(theta) with theta_1 = 0 and theta_2 = pi/2 + rho.
  return std::pow(fplab::detail::abs_cos_reduced(theta - (kPi / 2.0 + rho)), p) +
         std::pow(fplab::detail::abs_cos_reduced(theta), p);
}

inline double e_pair(double theta, double rho, double alpha, double p) {
  // E_p(theta) with theta_2 = pi/2 + rho and theta_3 = 2 rho + alpha.
  return std::pow(fplab::detail::abs_cos_reduced(theta - (kPi / 2.0 + rho)), p) +
         std::pow(fplab::detail::abs_cos_reduced(theta - (2.0 * rho + alpha)), p);
}

}  // namespace detail

inline LemmaReport run_lemma_suite(LemmaId id, const GridSpec& grid) {
  using detail::linspace;
  const double kInset = 1e-9;  // keeps 0^0-style boundary evaluations off the grid

  struct Window {
    double lo, hi;
  };
  // stated hypothesis range (default grid) and the widest admissible window
  auto ranges = [&](LemmaId which) -> std::pair<Window, Window> {
    switch (which) {
      case LemmaId::GGa:
      case LemmaId::GGb:
      case LemmaId::KK: return {{1.0, 2.0}, {1.0, 2.0}};
      case LemmaId::GGc:
      case LemmaId::GGd: return {{1.0, 1.73}, {1.0, 2.0}};
      case LemmaId::LL: return {{4.0 / 3.0, kLog3Log2}, {4.0 / 3.0, 2.0}};
      case LemmaId::PP:
      case LemmaId::RR: return {{4.0 / 3.0 + kInset, 1.73}, {4.0 / 3.0 + kInset, 2.0}};
      case LemmaId::EPS: return {{1.0, kLog3Log2}, {1.0, 2.0}};
      case LemmaId::IIa:
      case LemmaId::IIb: return {{1.0, 2.0}, {1.0, 2.0}};
    }
    return {{1.0, 2.0}, {1.0, 2.0}};
  };
  const auto [stated, admissible] = ranges(id);
  const double p_lo = std::isnan(grid.p_lo) ? stated.lo : grid.p_lo;
  const double p_hi = std::isnan(grid.p_hi) ? stated.hi : grid.p_hi;
  if (!(p_lo <= p_hi) || p_lo < admissible.lo - 1e-15 || p_hi > admissible.hi + 1e-15)
    throw std::invalid_argument(std::string("run_lemma_suite: p-range violates the ") +
                                lemma_name(id) + " hypotheses");
  if (grid.points_per_axis < 100)
    throw std::invalid_argument("run_lemma_suite: need >= 100 points per axis");
  if (!(grid.tolerance > 0.0))
    throw std::invalid_argument("run_lemma_suite: tolerance must be > 0");

  detail::MarginAccumulator acc;
  const int n1 = grid.points_per_axis;

  switch (id) {
    case LemmaId::GGa: {
      // G increasing on [0, theta_c], decreasing on [theta_c, pi/2].
      for (double p : linspace(p_lo, p_hi, detail::axis_points(n1, 2))) {
        const double tc = theta_c(p);
        auto ts = linspace(0.0, kPi / 2.0, n1);
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
          if (ts[i + 1] <= tc)
            acc.add(g_func(ts[i + 1], p) - g_func(ts[i], p), {p, ts[i]});
          else if (ts[i] >= tc)
            acc.add(g_func(ts[i], p) - g_func(ts[i + 1], p), {p, ts[i]});
        }
      }
      break;
    }
    case LemmaId::GGb: {
      for (double p : linspace(p_lo, p_hi, detail::axis_points(n1, 2)))
        for (double t : linspace(0.0, kPi / 4.0, n1))
          acc.add(g_func(kPi / 2.0 - t, p) - g_func(t, p), {p, t});
      break;
    }
    case LemmaId::GGc: {
      for (double p : linspace(p_lo, p_hi, detail::axis_points(n1, 2))) {
        const double tc = theta_c(p);
        const double amax = kPi / 2.0 - tc;
        if (amax <= kInset) continue;
        for (double a : linspace(kInset, amax - kInset, n1))
          acc.add(g_func(tc - a, p) - g_func(tc + a, p), {p, a});
      }
      break;
    }
    case LemmaId::GGd: {
      // Sample x on [0, theta_c], solve G(y) = G(x) on [theta_c, pi/2] by
      // bisection (G decreases there), then test (x+y)/2 <= theta_c.
      for (double p : linspace(std::max(p_lo, 1.0 + kInset), p_hi,
                               detail::axis_points(n1, 2))) {
        const double tc = theta_c(p);
        const double g_end = g_func(kPi / 2.0, p);
        // x very close to theta_c makes y ill conditioned: G is flat there, so
        // solving G(y) = G(x) localizes y only to ~1e-16/|G'(y)|. Points in
        // that sliver are covered by the symmetric-decay suite anyway.
        for (double x : linspace(0.0, tc - 1e-3, n1)) {
          const double gx = g_func(x, p);
          if (gx <= g_end) continue;  // no matching y: hypothesis is vacuous
          double lo = tc, hi = kPi / 2.0;
          for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g_func(mid, p) >= gx ? lo : hi) = mid;
          }
          const double y = 0.5 * (lo + hi);
          acc.add(tc - 0.5 * (x + y), {p, x});
        }
      }
      break;
    }
    case LemmaId::KK: {
      const int n = detail::axis_points(n1, 3);
      for (double p : linspace(p_lo, p_hi, n)) {
        for (double nu : linspace(0.0, kPi / 2.0 - kInset, n)) {
          const double bound = 1.0 + std::pow(std::sin(nu), p);
          const double span = kPi / 2.0 - nu;
          for (double t : linspace(0.0, span, n))
            acc.add(k_func(t, nu, p) - bound, {p, nu, t});
        }
      }
      break;
    }
    case LemmaId::LL: {
      for (double p : linspace(p_lo, p_hi, detail::axis_points(n1, 2)))
        for (double a : linspace(0.0, kPi / 3.0, n1))
          acc.add(l_func(a, p) - 2.0, {p, a});
      break;
    }
    case LemmaId::PP: {
      for (double p : linspace(p_lo, p_hi, detail::axis_points(n1, 2))) {
        const double at_left = p_func(kPi / 3.0, p);
        for (double a : linspace(kPi / 3.0, kPi / 2.0, n1)) {
          const double v = p_func(a, p);
          acc.add(v - at_left, {p, a});  // minimized at alpha = pi/3
          // the numeric floor 2/3 only holds while 2^{1-p} >= 2/3
          if (p <= kLog3Log2) acc.add(v - 2.0 / 3.0, {p, a});
        }
      }
      break;
    }
    case LemmaId::RR: {
      const int n = detail::axis_points(n1, 3);
      for (double p : linspace(p_lo, p_hi, n)) {
        for (double a : linspace(kInset, kPi / 3.0, n)) {
          const double ends = std::min(r_func(0.0, a, p), r_func(a / 2.0, a, p));
          for (double rho : linspace(0.0, a / 2.0, n))
            acc.add(r_func(rho, a, p) - ends, {p, a, rho});
        }
      }
      break;
    }
    case LemmaId::EPS: {
      const int n = detail::axis_points(n1, 3);
      for (double p : linspace(p_lo, p_hi, n)) {
        for (double e1 : linspace(0.0, kPi / 2.0, n)) {
          for (double e2 : linspace(0.0, kPi / 2.0 - e1, n)) {
            const double e3 = kPi / 2.0 - e1 - e2;
            acc.add(eps_sum(e1, e2, std::max(e3, 0.0), p) - 1.0, {p, e1, e2});
          }
        }
      }
      break;
    }
    case LemmaId::IIa: {
      // (a): Delta_p >= 1 on T1 for p <= 2.
      {
        const int n = detail::axis_points(n1, 3);
        for (double p : linspace(p_lo, std::min(p_hi, 2.0), n))
          for (double rho : linspace(0.0, kPi / 6.0, n))
            for (double t : linspace(kPi / 2.0 + rho, kPi, n))
              acc.add(detail::delta_pair(t, rho, p) - 1.0, {p, rho, t});
      }
      // (b): pair sums >= 2 for p <= log3/log2.
      if (p_lo <= kLog3Log2) {
        const int n = detail::axis_points(n1, 4);
        for (double p : linspace(p_lo, std::min(p_hi, kLog3Log2), n)) {
          for (double rho : linspace(0.0, kPi / 6.0, n)) {
            for (double ti : linspace(kPi / 2.0 + rho, kPi, n)) {
              const double di = detail::delta_pair(ti, rho, p);
              for (double tj : linspace(2.0 * rho, kPi / 2.0 - rho, n))
                acc.add(di + detail::delta_pair(tj, rho, p) - 2.0, {p, rho, ti, tj});
            }
          }
        }
      }
      break;
    }
    case LemmaId::IIb: {
      // (1): E_p >= 1 for every Type II angle, p <= 2.
      {
        const int n = detail::axis_points(n1, 4);
        for (double p : linspace(p_lo, std::min(p_hi, 2.0), n)) {
          for (double rho : linspace(0.0, kPi / 6.0 - kInset, n)) {
            const double amax = kPi / 2.0 - 3.0 * rho;
            if (amax <= 0.0) continue;
            for (double a : linspace(0.0, amax, n))
              for (double b : linspace(0.0, amax - a, n))
                acc.add(detail::e_pair(2.0 * rho + a + b, rho, a, p) - 1.0,
                        {p, rho, a, b});
          }
        }
      }
      // (2): pair sums over (rho, alpha, beta, theta) >= 2 for p <= log3/log2.
      if (p_lo <= kLog3Log2) {
        const int n = detail::axis_points(n1, 5);
        for (double p : linspace(p_lo, std::min(p_hi, kLog3Log2), n)) {
          for (double rho : linspace(0.0, kPi / 6.0 - kInset, n)) {
            const double amax = kPi / 2.0 - 3.0 * rho;
            if (amax <= 0.0) continue;
            for (double a : linspace(0.0, amax, n)) {
              for (double b : linspace(0.0, amax - a, n)) {
                const double ei = detail::e_pair(2.0 * rho + a + b, rho, a, p);
                for (double t : linspace(0.0, kPi / 2.0 - rho, n)) {
                  const double tj = kPi / 2.0 + rho + t;
                  acc.add(ei + detail::e_pair(tj, rho, a, p) - 2.0, {p, rho, a, b, t});
                }
              }
            }
          }
        }
      }
      break;
    }
  }

  LemmaReport report;
  report.lemma_id = lemma_name(id);
  report.worst_margin = acc.worst;
  report.worst_point = acc.at;
  report.points_checked = acc.count;
  report.passed = acc.count > 0 && acc.worst >= -grid.tolerance;
  return report;
}

inline std::vector<LemmaReport> run_all_lemma_suites(const GridSpec& grid) {
  std::vector<LemmaReport> reports;
  for (LemmaId id : {LemmaId::GGa, LemmaId::GGb, LemmaId::GGc, LemmaId::GGd,
                     LemmaId::KK, LemmaId::LL, LemmaId::PP, LemmaId::RR,
                     LemmaId::EPS, LemmaId::IIa, LemmaId::IIb})
    reports.push_back(run_lemma_suite(id, grid));
  return reports;
}

}  // namespace fplab

#endif  // FPLAB_LEMMA_CHECKS_HPP
