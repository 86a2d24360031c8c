#ifndef FPLAB_FAMILIES_HPP
#define FPLAB_FAMILIES_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fplab/angles.hpp"
#include "fplab/optimize.hpp"
#include "fplab/potentials.hpp"

namespace fplab {

enum class FamilyKind { Perp, Harmonic, Y, Z, E6, Custom };

inline const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Perp: return "perp";
    case FamilyKind::Harmonic: return "harmonic";
    case FamilyKind::Y: return "y";
    case FamilyKind::Z: return "z";
    case FamilyKind::E6: return "e6";
    case FamilyKind::Custom: return "custom";
  }
  return "custom";
}

inline std::optional<FamilyKind> family_from_name(std::string_view name) {
  if (name == "perp") return FamilyKind::Perp;
  if (name == "harmonic") return FamilyKind::Harmonic;
  if (name == "y") return FamilyKind::Y;
  if (name == "z") return FamilyKind::Z;
  if (name == "e6") return FamilyKind::E6;
  if (name == "custom") return FamilyKind::Custom;
  return std::nullopt;
}

// A named special configuration. Y and Z carry the opening angle alpha and
// exist only for N = 5; E6 only for N = 6.
struct FamilyInstance {
  FamilyKind kind = FamilyKind::Custom;
  int n = 0;
  std::optional<double> alpha;

  void validate() const {
    if (n < 1) throw std::invalid_argument("FamilyInstance: N must be >= 1");
    const bool needs_alpha = kind == FamilyKind::Y || kind == FamilyKind::Z;
    if (needs_alpha) {
      if (n != 5) throw std::invalid_argument("FamilyInstance: Y/Z require N = 5");
      if (!alpha) throw std::invalid_argument("FamilyInstance: Y/Z require alpha");
      if (!(*alpha >= 0.0 && *alpha <= kPi / 2.0))
        throw std::invalid_argument("FamilyInstance: alpha must lie in [0, pi/2]");
    } else if (alpha) {
      throw std::invalid_argument("FamilyInstance: alpha only applies to Y/Z");
    }
    if (kind == FamilyKind::E6 && n != 6)
      throw std::invalid_argument("FamilyInstance: E6 requires N = 6");
  }
};

// Literal angle multiset of the family, reduced mod pi.
inline AngleConfig build(const FamilyInstance& instance) {
  instance.validate();
  const int n = instance.n;
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(n));
  switch (instance.kind) {
    case FamilyKind::Perp: {
      const int zeros = (n + 1) / 2;  // odd N: (N+1)/2 zeros, even N: N/2
      for (int i = 0; i < zeros; ++i) angles.push_back(0.0);
      for (int i = zeros; i < n; ++i) angles.push_back(kPi / 2.0);
      break;
    }
    case FamilyKind::Harmonic:
      for (int j = 0; j < n; ++j) angles.push_back(j * kPi / n);
      break;
    case FamilyKind::Y: {
      const double a = *instance.alpha;
      angles = {0.0, 0.0, kPi / 2.0 - a, kPi / 2.0, kPi / 2.0 + a};
      break;
    }
    case FamilyKind::Z: {
      const double a = *instance.alpha;
      angles = {-a, -a, 0.0, a, a};
      break;
    }
    case FamilyKind::E6:
      angles = {0.0, 0.0, kPi / 3.0, kPi / 3.0, 2.0 * kPi / 3.0, 2.0 * kPi / 3.0};
      break;
    case FamilyKind::Custom:
      throw std::invalid_argument("build: Custom has no literal angle list");
  }
  return AngleConfig(std::move(angles));
}

// Analytic pairwise summation of the family's potential. Cross-validated
// against frame_potential(build(...)) in the test suite rather than trusted.
inline double closed_form_potential(const FamilyInstance& instance, double p) {
  instance.validate();
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("closed_form_potential: p must be finite and > 0");
  const double n = static_cast<double>(instance.n);
  switch (instance.kind) {
    case FamilyKind::Perp:
      return instance.n % 2 ? (n - 1.0) * (n - 1.0) / 2.0 : (n * n - 2.0 * n) / 2.0;
    case FamilyKind::Harmonic: {
      double sum = 0.0;
      for (int j = 1; j < instance.n; ++j)
        sum += kernel_w(j * kPi / n, p);
      return n * sum;
    }
    case FamilyKind::Y: {
      const double a = *instance.alpha;
      return 2.0 * (1.0 + 4.0 * kernel_w(kPi / 2.0 - a, p) + 2.0 * kernel_w(a, p) +
                    kernel_w(2.0 * a, p));
    }
    case FamilyKind::Z: {
      const double a = *instance.alpha;
      return 4.0 + 8.0 * kernel_w(a, p) + 8.0 * kernel_w(2.0 * a, p);
    }
    case FamilyKind::E6:
      return 6.0 + 24.0 * std::pow(2.0, -p);
    case FamilyKind::Custom:
      break;
  }
  throw std::invalid_argument("closed_form_potential: unsupported for Custom");
}

struct AlphaResult {
  double alpha;
  double value;
};

namespace detail {

inline double family_alpha_value(FamilyKind kind, double alpha, double p) {
  FamilyInstance inst{kind, 5, alpha};
  return closed_form_potential(inst, p);
}

// Scan [0, pi/2] on >= 512 seed points, then golden-section each candidate
// bracket. `interior_only` keeps only strict local minima away from the
// boundary, which is what transition bisection tracks.
inline std::optional<AlphaResult> scan_alpha(FamilyKind kind, double p, double tol,
                                             bool interior_only) {
  if (kind != FamilyKind::Y && kind != FamilyKind::Z)
    throw std::invalid_argument("best_alpha: kind must be Y or Z");
  if (!(tol > 0.0)) throw std::invalid_argument("best_alpha: tol must be > 0");
  constexpr int kSeeds = 1024;
  const double hi = kPi / 2.0;
  auto f = [kind, p](double a) { return family_alpha_value(kind, a, p); };

  std::vector<double> vals(kSeeds + 1);
  for (int i = 0; i <= kSeeds; ++i) vals[i] = f(hi * i / kSeeds);

  std::optional<AlphaResult> best;
  auto consider = [&](const AlphaResult& r) {
    // ties broken toward smaller alpha
    if (!best || r.value < best->value - 1e-15 ||
        (std::fabs(r.value - best->value) <= 1e-15 && r.alpha < best->alpha))
      best = r;
  };
  for (int i = 0; i <= kSeeds; ++i) {
    const bool left_ok = i == 0 || vals[i] <= vals[i - 1];
    const bool right_ok = i == kSeeds || vals[i] <= vals[i + 1];
    if (!(left_ok && right_ok)) continue;
    if (interior_only && (i == 0 || i == kSeeds)) continue;
    const double a = hi * std::max(i - 1, 0) / kSeeds;
    const double b = hi * std::min(i + 1, kSeeds) / kSeeds;
    GoldenResult g = golden_section(f, a, b, tol);
    AlphaResult r{g.x, g.value};
    // boundary seeds can beat the refined midpoint when the minimum is there
    if (i == 0 && vals[0] <= r.value) r = {0.0, vals[0]};
    if (i == kSeeds && vals[kSeeds] <= r.value) r = {hi, vals[kSeeds]};
    consider(r);
  }
  return best;
}

}  // namespace detail

// Global minimizer of the family's potential over alpha in [0, pi/2].
inline AlphaResult best_alpha(FamilyKind kind, double p, double tol) {
  auto r = detail::scan_alpha(kind, p, tol, /*interior_only=*/false);
  return *r;  // always present: the scan covers the boundary
}

// Best strictly interior local minimum, if any. Near a boundary-to-interior
// phase transition the global minimum sits on the boundary while the interior
// branch is still the one whose value crosses it.
inline std::optional<AlphaResult> best_interior_alpha(FamilyKind kind, double p,
                                                      double tol) {
  return detail::scan_alpha(kind, p, tol, /*interior_only=*/true);
}

// Classifies a configuration into one of the known families at tolerance
// `tol`, fitting alpha for Y/Z by minimizing the alignment distance to the
// built family over an alpha grid with golden-section refinement.
inline FamilyInstance classify(const AngleConfig& config, double tol) {
  const int n = static_cast<int>(config.size());
  auto matches = [&](const FamilyInstance& inst) {
    return config_distance(config, build(inst)) <= tol;
  };

  if (FamilyInstance perp{FamilyKind::Perp, n, std::nullopt}; matches(perp)) return perp;
  if (FamilyInstance harm{FamilyKind::Harmonic, n, std::nullopt}; matches(harm)) return harm;
  if (n == 6) {
    if (FamilyInstance e6{FamilyKind::E6, 6, std::nullopt}; matches(e6)) return e6;
  }
  if (n == 5) {
    for (FamilyKind kind : {FamilyKind::Y, FamilyKind::Z}) {
      constexpr int kGrid = 1024;
      const double hi = kPi / 2.0;
      auto dist = [&](double a) {
        return config_distance(config, build(FamilyInstance{kind, 5, a}));
      };
      double best_a = 0.0, best_d = dist(0.0);
      for (int i = 1; i <= kGrid; ++i) {
        const double a = hi * i / kGrid;
        const double d = dist(a);
        if (d < best_d) {
          best_d = d;
          best_a = a;
        }
      }
      const double lo = std::max(0.0, best_a - hi / kGrid);
      const double up = std::min(hi, best_a + hi / kGrid);
      GoldenResult g = golden_section(dist, lo, up, std::min(tol, 1e-12));
      if (g.value <= tol) return FamilyInstance{kind, 5, g.x};
    }
  }
  return FamilyInstance{FamilyKind::Custom, n, std::nullopt};
}

}  // namespace fplab

#endif  // FPLAB_FAMILIES_HPP
