#ifndef FPLAB_ANGLES_HPP
#define FPLAB_ANGLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fplab {

inline constexpr double kPi = std::numbers::pi;

// log3/log2, the exponent at which the tent kernel touches |cos|^p at pi/3.
inline const double kLog3Log2 = std::log(3.0) / std::log(2.0);

// Reduce an angle to [0, pi). Vectors x and -x are identified, so the
// configuration space is the circle of circumference pi.
inline double reduce_mod_pi(double theta) {
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  if (t >= kPi) t = 0.0;  // fmod rounding can land exactly on pi
  return t;
}

// Distance between two reduced angles on the circle of circumference pi.
inline double circ_dist_pi(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, kPi - d);
}

// An ordered multiset of N unit vectors on the circle, stored as angles
// reduced to [0, pi). N is fixed at construction.
class AngleConfig {
 public:
  explicit AngleConfig(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty())
      throw std::invalid_argument("AngleConfig: need at least one angle");
    for (double& t : angles_) {
      if (!std::isfinite(t))
        throw std::invalid_argument("AngleConfig: non-finite angle");
      t = reduce_mod_pi(t);
    }
  }

  std::size_t size() const { return angles_.size(); }
  const std::vector<double>& angles() const { return angles_; }
  double operator[](std::size_t i) const { return angles_[i]; }

 private:
  std::vector<double> angles_;
};

namespace detail {

// Sorted angle vector after rotating so that angles[pivot] lands at 0,
// optionally reflecting (theta -> -theta) first.
inline std::vector<double> gauge_candidate(const std::vector<double>& angles,
                                           std::size_t pivot, bool reflect) {
  std::vector<double> out(angles.size());
  const double s = reflect ? -1.0 : 1.0;
  const double ref = s * angles[pivot];
  for (std::size_t k = 0; k < angles.size(); ++k)
    out[k] = reduce_mod_pi(s * angles[k] - ref);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Canonical representative of the equivalence class under rotation,
// permutation and sign flips: the lexicographically smallest sorted angle
// vector over all gauges that pin one angle at 0, with and without
// reflection. Idempotent.
inline AngleConfig canonicalize(const AngleConfig& config) {
  const auto& a = config.angles();
  std::vector<double> best;
  for (int reflect = 0; reflect < 2; ++reflect) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto cand = detail::gauge_candidate(a, i, reflect != 0);
      if (best.empty() || cand < best) best = std::move(cand);
    }
  }
  return AngleConfig(std::move(best));
}

// Best alignment distance between two configurations: the smallest, over all
// gauges, of the largest componentwise circular distance. The alignment pins
// one angle of `a` onto the smallest sorted angle of `b`; residual wrap-around
// of the sorted order is absorbed by trying all cyclic shifts.
inline double config_distance(const AngleConfig& a, const AngleConfig& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("config_distance: size mismatch");
  const std::size_t n = a.size();
  std::vector<double> bs = b.angles();
  std::sort(bs.begin(), bs.end());

  double best = kPi;
  std::vector<double> v(n);
  for (int reflect = 0; reflect < 2; ++reflect) {
    const double s = reflect ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double shift = bs[0] - s * a[i];
      for (std::size_t k = 0; k < n; ++k)
        v[k] = reduce_mod_pi(s * a[k] + shift);
      std::sort(v.begin(), v.end());
      for (std::size_t rot = 0; rot < n; ++rot) {
        double worst = 0.0;
        for (std::size_t k = 0; k < n && worst < best; ++k)
          worst = std::max(worst, circ_dist_pi(v[(k + rot) % n], bs[k]));
        best = std::min(best, worst);
      }
    }
  }
  return best;
}

// True iff the two configurations are the same point of the quotient space
// up to componentwise tolerance `tol`.
inline bool equivalent(const AngleConfig& a, const AngleConfig& b, double tol) {
  if (a.size() != b.size())
    throw std::invalid_argument("equivalent: size mismatch");
  if (tol < 0.0) throw std::invalid_argument("equivalent: negative tolerance");
  if (tol == 0.0)
    return canonicalize(a).angles() == canonicalize(b).angles();
  return config_distance(a, b) <= tol;
}

}  // namespace fplab

#endif  // FPLAB_ANGLES_HPP
