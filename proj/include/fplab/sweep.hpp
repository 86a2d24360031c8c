#ifndef FPLAB_SWEEP_HPP
#define FPLAB_SWEEP_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fplab/families.hpp"
#include "fplab/optimize.hpp"

namespace fplab {

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One row of a p-grid sweep.
struct SweepRecord {
  double p = 0.0;
  double f_min = std::numeric_limits<double>::quiet_NaN();
  FamilyInstance family;
  std::optional<double> dfdp;
  bool failed = false;
};

enum class TransitionMethod { CrossingBisection, DerivativeJump };

struct TransitionReport {
  double p_star = 0.0;
  FamilyKind left_family = FamilyKind::Custom;
  FamilyKind right_family = FamilyKind::Custom;
  TransitionMethod method = TransitionMethod::DerivativeJump;
  double precision = 0.0;
};

// Symmetric difference derivative (f(p+d) - f(p-d)) / (2d).
inline double numeric_derivative(const std::function<double(double)>& f, double p,
                                 double d) {
  if (!(d > 0.0)) throw std::invalid_argument("numeric_derivative: d must be > 0");
  const double hi = f(p + d), lo = f(p - d);
  if (!std::isfinite(hi) || !std::isfinite(lo))
    throw DivergenceError("numeric_derivative: non-finite evaluation");
  return (hi - lo) / (2.0 * d);
}

// Minimizes FP on each grid point, classifies the minimizer, then fills the
// derivative column by symmetric differences of f_min on interior points.
// Per-point optimizer failures are recorded, not propagated.
inline std::vector<SweepRecord> sweep(int n, const std::vector<double>& p_grid,
                                      const OptimizerSettings& settings,
                                      double classify_tol = 1e-5) {
  if (p_grid.empty()) throw std::invalid_argument("sweep: empty grid");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (!(p_grid[i] > 0.0)) throw std::invalid_argument("sweep: p must be > 0");
    if (i > 0 && !(p_grid[i] > p_grid[i - 1]))
      throw std::invalid_argument("sweep: grid must be strictly increasing");
  }

  std::vector<SweepRecord> records(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    SweepRecord& rec = records[i];
    rec.p = p_grid[i];
    try {
      MinimizeResult r = minimize_fp(n, rec.p, settings);
      rec.f_min = r.value;
      rec.family = classify(r.config, classify_tol);
    } catch (const DivergenceError&) {
      rec.failed = true;
      rec.family = FamilyInstance{FamilyKind::Custom, n, std::nullopt};
    }
  }
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    if (records[i - 1].failed || records[i + 1].failed) continue;
    records[i].dfdp = (records[i + 1].f_min - records[i - 1].f_min) /
                      (records[i + 1].p - records[i - 1].p);
  }
  return records;
}

namespace detail {

// Family value used for transition bisection. For Y/Z this tracks the best
// interior local minimum in alpha when one exists: near a boundary-to-interior
// transition the boundary value ties the competing family exactly, so only the
// interior branch produces a sign change.
inline double crossing_value(const FamilyInstance& inst, double p) {
  if (inst.kind == FamilyKind::Y || inst.kind == FamilyKind::Z) {
    if (auto interior = best_interior_alpha(inst.kind, p, 1e-14))
      return interior->value;
    return best_alpha(inst.kind, p, 1e-14).value;
  }
  return closed_form_potential(inst, p);
}

}  // namespace detail

// Localizes the p where family B starts to beat family A by bisection on the
// closed-form gap, to |interval| < tol.
inline TransitionReport locate_crossing(const FamilyInstance& family_a,
                                        const FamilyInstance& family_b, double p_lo,
                                        double p_hi, double tol) {
  if (!(p_lo < p_hi)) throw std::invalid_argument("locate_crossing: need p_lo < p_hi");
  if (!(tol > 0.0)) throw std::invalid_argument("locate_crossing: tol must be > 0");
  // exact value ties at the boundary count as "not yet crossed"
  auto b_wins = [&](double p) {
    return detail::crossing_value(family_b, p) <
           detail::crossing_value(family_a, p) - 1e-12;
  };
  const bool lo_state = b_wins(p_lo);
  const bool hi_state = b_wins(p_hi);
  if (lo_state == hi_state)
    throw BracketError("locate_crossing: no sign change in bracket");
  double lo = p_lo, hi = p_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (b_wins(mid) == lo_state ? lo : hi) = mid;
  }
  TransitionReport report;
  report.p_star = 0.5 * (lo + hi);
  report.left_family = lo_state ? family_b.kind : family_a.kind;
  report.right_family = lo_state ? family_a.kind : family_b.kind;
  report.method = TransitionMethod::CrossingBisection;
  report.precision = tol;
  return report;
}

// Flags grid intervals where the derivative column jumps or the classified
// family changes. jump_threshold <= 0 selects the default: 5x the median
// absolute neighbor difference of dfdp, floored at 1e-6.
inline std::vector<TransitionReport> detect_transitions(
    const std::vector<SweepRecord>& records, double jump_threshold = 0.0) {
  if (records.size() < 3)
    throw std::invalid_argument("detect_transitions: need at least 3 records");

  // |d(dfdp)| between neighboring interior points, indexed by left record
  std::vector<std::pair<std::size_t, double>> diffs;
  for (std::size_t i = 1; i + 2 < records.size(); ++i) {
    if (records[i].dfdp && records[i + 1].dfdp)
      diffs.emplace_back(i, std::fabs(*records[i + 1].dfdp - *records[i].dfdp));
  }
  if (jump_threshold <= 0.0) {
    std::vector<double> mags;
    mags.reserve(diffs.size());
    for (const auto& [_, d] : diffs) mags.push_back(d);
    if (!mags.empty()) {
      std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
      jump_threshold = 5.0 * mags[mags.size() / 2];
    }
    jump_threshold = std::max(jump_threshold, 1e-6);
  }

  std::vector<bool> flagged(records.size(), false);
  for (const auto& [i, d] : diffs)
    if (d > jump_threshold) flagged[i] = flagged[i + 1] = true;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    if (records[i].failed || records[i + 1].failed) continue;
    const auto& fa = records[i].family;
    const auto& fb = records[i + 1].family;
    if (fa.kind != fb.kind) flagged[i] = flagged[i + 1] = true;
  }

  std::vector<TransitionReport> reports;
  const double spacing = records[1].p - records[0].p;
  std::size_t i = 0;
  while (i < records.size()) {
    if (!flagged[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < records.size() && flagged[j + 1]) ++j;
    TransitionReport rep;
    rep.p_star = 0.5 * (records[i].p + records[j].p);
    rep.left_family = records[i > 0 ? i - 1 : i].family.kind;
    rep.right_family = records[j + 1 < records.size() ? j + 1 : j].family.kind;
    rep.method = TransitionMethod::DerivativeJump;
    rep.precision = spacing;
    reports.push_back(rep);
    i = j + 1;
  }
  return reports;
}

// Minimizes FP at each N and reports the frame-operator deviation of the
// minimizer, for the asymptotic-tightness diagnostic.
struct TightnessPoint {
  int n;
  FrameOperatorSummary summary;
};

inline std::vector<TightnessPoint> tightness_curve(double p, const std::vector<int>& n_list,
                                                   const OptimizerSettings& settings) {
  if (!(p > 0.0 && p < 2.0))
    throw std::invalid_argument("tightness_curve: p must lie in (0, 2)");
  std::vector<TightnessPoint> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    MinimizeResult r = minimize_fp(n, p, settings);
    out.push_back({n, frame_operator_deviation(r.config)});
  }
  return out;
}

}  // namespace fplab

#endif  // FPLAB_SWEEP_HPP
