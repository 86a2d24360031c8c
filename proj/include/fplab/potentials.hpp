#ifndef FPLAB_POTENTIALS_HPP
#define FPLAB_POTENTIALS_HPP

#include <cmath>
#include <span>
#include <stdexcept>

#include "fplab/angles.hpp"

namespace fplab {

namespace detail {

// |cos(delta)| with delta reduced to (-pi/2, pi/2] first, so the value near
// orthogonality comes straight out of libm without cancellation. Angles that
// are perpendicular up to a few ulps of accumulated rounding give a cosine of
// order 1e-16..1e-15; snap those to an exact zero so small exponents p do not
// blow the rounding noise up to ~|eps|^p. The window is far below anything a
// non-degenerate configuration can reach.
inline double abs_cos_reduced(double delta) {
  const double c = std::fabs(std::cos(std::remainder(delta, kPi)));
  return c <= 1e-14 ? 0.0 : c;
}

}  // namespace detail

// W_p(theta) = |cos theta|^p, pi-periodic.
inline double kernel_w(double theta, double p) {
  if (!std::isfinite(theta) || !std::isfinite(p))
    throw std::invalid_argument("kernel_w: non-finite argument");
  if (p <= 0.0) throw std::invalid_argument("kernel_w: p must be positive");
  return std::pow(detail::abs_cos_reduced(theta), p);
}

// Tent kernel V(theta) = (2/pi)|theta - pi/2| on [0, pi], pi-periodic.
inline double kernel_v(double theta) {
  if (!std::isfinite(theta))
    throw std::invalid_argument("kernel_v: non-finite argument");
  return (2.0 / kPi) * std::fabs(reduce_mod_pi(theta) - kPi / 2.0);
}

// p and N of a potential evaluation; p = infinity is out of scope.
struct PotentialSpec {
  double p;
  int n;
  PotentialSpec(double p_, int n_) : p(p_), n(n_) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("PotentialSpec: p must be finite and > 0");
    if (n < 1) throw std::invalid_argument("PotentialSpec: N must be >= 1");
  }
};

// Sum over ordered pairs k != l of |cos(theta_k - theta_l)|^p.
inline double frame_potential(const AngleConfig& config, double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("frame_potential: p must be finite and > 0");
  const auto& a = config.angles();
  double sum = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k)
    for (std::size_t l = 0; l < k; ++l)
      sum += std::pow(detail::abs_cos_reduced(a[k] - a[l]), p);
  return 2.0 * sum;
}

// Same pairwise sum with the tent kernel V in place of W_p.
inline double linearized_potential(const AngleConfig& config) {
  const auto& a = config.angles();
  double sum = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k)
    for (std::size_t l = 0; l < k; ++l)
      sum += kernel_v(a[k] - a[l]);
  return 2.0 * sum;
}

// Critical angle of G(theta) = cos^{p-1}(theta) sin(theta):
// cos^2(theta_c) = (p-1)/p, defined for 1 <= p <= 2.
inline double theta_c(double p) {
  if (!(p >= 1.0 && p <= 2.0))
    throw std::domain_error("theta_c: p must lie in [1, 2]");
  return std::acos(std::sqrt((p - 1.0) / p));
}

// Largest theta_p such that V <= W_p pointwise on [0, theta_p].
// Dense grid scan of the sign of W_p - V over (0, pi], then bisection
// refinement of the first sign change to 1e-12.
inline double theta_p(double p) {
  if (!(p > 0.0 && p <= 2.0))
    throw std::domain_error("theta_p: p must lie in (0, 2]");
  constexpr int kGrid = 10000;
  auto gap = [p](double t) { return kernel_w(t, p) - kernel_v(t); };
  double prev = 0.0;
  for (int i = 1; i <= kGrid; ++i) {
    const double t = kPi * i / kGrid;
    if (gap(t) < 0.0) {
      double lo = prev, hi = t;  // gap(lo) >= 0 > gap(hi)
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) >= 0.0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = t;
  }
  return kPi;  // W_p dominates V on the whole period (p <= 1 regime)
}

// Frame operator X X^T of the configuration and its distance to (N/2) I.
struct FrameOperatorSummary {
  double xx = 0.0;  // sum cos^2
  double yy = 0.0;  // sum sin^2
  double xy = 0.0;  // sum cos*sin
  double deviation = 0.0;   // spectral norm of X X^T - (N/2) I
  double frobenius = 0.0;   // Frobenius norm of the same matrix
};

inline FrameOperatorSummary frame_operator_deviation(const AngleConfig& config) {
  FrameOperatorSummary s;
  for (double t : config.angles()) {
    const double c = std::cos(t), sn = std::sin(t);
    s.xx += c * c;
    s.yy += sn * sn;
    s.xy += c * sn;
  }
  const double half_n = 0.5 * static_cast<double>(config.size());
  const double da = s.xx - half_n, db = s.yy - half_n;
  // Symmetric 2x2 [da xy; xy db]: eigenvalues ((da+db) +- sqrt((da-db)^2+4xy^2))/2.
  const double tr = da + db;
  const double disc = std::sqrt((da - db) * (da - db) + 4.0 * s.xy * s.xy);
  s.deviation = std::max(std::fabs(0.5 * (tr + disc)), std::fabs(0.5 * (tr - disc)));
  s.frobenius = std::sqrt(da * da + db * db + 2.0 * s.xy * s.xy);
  return s;
}

// Probabilistic p-frame potential of the normalized counting measure:
// the double integral including diagonal terms, (FP + N) / N^2.
inline double pfp_counting(const AngleConfig& config, double p) {
  const double n = static_cast<double>(config.size());
  return (frame_potential(config, p) + n) / (n * n);
}

}  // namespace fplab

#endif  // FPLAB_POTENTIALS_HPP
