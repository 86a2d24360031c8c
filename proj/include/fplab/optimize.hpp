#ifndef FPLAB_OPTIMIZE_HPP
#define FPLAB_OPTIMIZE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fplab/angles.hpp"
#include "fplab/potentials.hpp"

namespace fplab {

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OptimizerSettings {
  int restarts = 3000;
  std::uint64_t master_seed = 0;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double f_tol = 1e-13;
  double x_tol = 1e-10;
  int max_iters = 100000;
  double initial_edge = 0.25;   // simplex edge for fresh restarts
  double polish_edge = 1e-6;    // simplex edge for the polish pass
  int threads = 0;              // 0: FPLAB_THREADS env or hardware count
  bool keep_trace = false;      // record running best value per restart

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (!(reflection > 0.0)) throw std::invalid_argument("reflection must be > 0");
    if (!(expansion > 1.0)) throw std::invalid_argument("expansion must be > 1");
    if (!(contraction > 0.0 && contraction < 1.0))
      throw std::invalid_argument("contraction must lie in (0, 1)");
    if (!(shrink > 0.0 && shrink < 1.0))
      throw std::invalid_argument("shrink must lie in (0, 1)");
  }
};

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FPLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------------------
// Deterministic counter-based RNG: a splitmix64 stream keyed by
// (master_seed, counter), so restart k always sees the same draws no matter
// how restarts are scheduled across threads.
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

class RestartRng {
 public:
  RestartRng(std::uint64_t master_seed, std::uint64_t counter)
      : state_(detail::mix64(master_seed ^ detail::mix64(counter + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Golden-section search on a bracket [a, b]. The caller seeds multiple
// brackets when f is multimodal.
// ---------------------------------------------------------------------------

struct GoldenResult {
  double x;
  double value;
};

template <class F>
GoldenResult golden_section(F&& f, double a, double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("golden_section: need a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section: tol must be > 0");
  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_gr * (b - a);
  double d = a + inv_gr * (b - a);
  double fc = f(c), fd = f(d);
  if (!std::isfinite(fc) || !std::isfinite(fd))
    throw DivergenceError("golden_section: non-finite objective value");
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_gr * (b - a);
      fd = f(d);
    }
    if (!std::isfinite(fc) || !std::isfinite(fd))
      throw DivergenceError("golden_section: non-finite objective value");
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex minimization with the four classical coefficients.
// ---------------------------------------------------------------------------

struct NmResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
};

template <class F>
NmResult nelder_mead(F&& f, const std::vector<double>& x0,
                     const OptimizerSettings& settings, double edge) {
  settings.validate();
  const std::size_t m = x0.size();
  if (m == 0) throw std::invalid_argument("nelder_mead: empty start point");

  auto eval = [&f](const std::vector<double>& x) {
    const double v = f(x);
    if (!std::isfinite(v))
      throw DivergenceError("nelder_mead: objective returned a non-finite value");
    return v;
  };

  std::vector<std::vector<double>> xs(m + 1, x0);
  std::vector<double> fs(m + 1);
  for (std::size_t i = 0; i < m; ++i) xs[i + 1][i] += edge;
  for (std::size_t i = 0; i <= m; ++i) fs[i] = eval(xs[i]);

  std::vector<std::size_t> order(m + 1);
  std::vector<double> centroid(m), cand(m);
  NmResult result;

  for (int iter = 0; iter < settings.max_iters; ++iter) {
    for (std::size_t i = 0; i <= m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&fs](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    const std::size_t best = order[0], worst = order[m], second = order[m - 1];

    double spread = 0.0, diameter = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
      spread = std::max(spread, std::fabs(fs[i] - fs[best]));
      for (std::size_t j = 0; j < m; ++j)
        diameter = std::max(diameter, std::fabs(xs[i][j] - xs[best][j]));
    }
    if (spread < settings.f_tol && diameter < settings.x_tol) {
      result.converged = true;
      result.iterations = iter;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < m; ++j) centroid[j] += xs[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(m);

    auto blend = [&](double coeff) {
      for (std::size_t j = 0; j < m; ++j)
        cand[j] = centroid[j] + coeff * (centroid[j] - xs[worst][j]);
    };

    blend(settings.reflection);
    const double fr = eval(cand);
    if (fr < fs[best]) {
      const std::vector<double> reflected = cand;
      blend(settings.reflection * settings.expansion);
      const double fe = eval(cand);
      if (fe < fr) {
        xs[worst] = cand;
        fs[worst] = fe;
      } else {
        xs[worst] = reflected;
        fs[worst] = fr;
      }
    } else if (fr < fs[second]) {
      xs[worst] = cand;
      fs[worst] = fr;
    } else {
      const bool outside = fr < fs[worst];
      if (outside)
        blend(settings.reflection * settings.contraction);
      else
        blend(-settings.contraction);
      const double fc = eval(cand);
      if (fc < (outside ? fr : fs[worst])) {
        xs[worst] = cand;
        fs[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= m; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < m; ++j)
            xs[i][j] = xs[best][j] + settings.shrink * (xs[i][j] - xs[best][j]);
          fs[i] = eval(xs[i]);
        }
      }
    }
    result.iterations = iter + 1;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= m; ++i)
    if (fs[i] < fs[best]) best = i;
  result.x = xs[best];
  result.value = fs[best];
  return result;
}

// ---------------------------------------------------------------------------
// Multi-start minimization of the p-frame potential.
// ---------------------------------------------------------------------------

struct MinimizeResult {
  AngleConfig config;
  double value = std::numeric_limits<double>::infinity();
  int restarts_used = 0;
  int failed_restarts = 0;
  int best_restart_index = -1;
  bool converged = false;
  std::vector<double> trace;  // running best per restart, when requested
};

namespace detail {

// FP with theta_1 gauge-fixed at 0; `tail` holds the other N-1 angles.
inline double fp_gauge_fixed(const std::vector<double>& tail, double p) {
  double sum = 0.0;
  for (std::size_t k = 0; k < tail.size(); ++k) {
    sum += std::pow(abs_cos_reduced(tail[k]), p);
    for (std::size_t l = 0; l < k; ++l)
      sum += std::pow(abs_cos_reduced(tail[k] - tail[l]), p);
  }
  return 2.0 * sum;
}

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::vector<double> x;
};

}  // namespace detail

// Gauge-fixes theta_1 = 0 and runs `settings.restarts` independent
// Nelder-Mead minimizations from seeded uniform starts, each polished by a
// second run with a shrunken simplex. The reduction (min by value, ties to
// the lower restart index) is associative, so the result is identical for
// any thread count.
inline MinimizeResult minimize_fp(int n, double p, const OptimizerSettings& settings) {
  if (n < 2) throw std::invalid_argument("minimize_fp: N must be >= 2");
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("minimize_fp: p must be finite and > 0");
  settings.validate();

  const std::size_t dim = static_cast<std::size_t>(n - 1);
  auto objective = [p](const std::vector<double>& x) {
    return detail::fp_gauge_fixed(x, p);
  };

  auto run_restart = [&](int index) {
    detail::RestartOutcome out;
    RestartRng rng(settings.master_seed, static_cast<std::uint64_t>(index));
    std::vector<double> x0(dim);
    for (double& v : x0) v = rng.next_unit() * kPi;
    try {
      NmResult first = nelder_mead(objective, x0, settings, settings.initial_edge);
      NmResult polished = nelder_mead(objective, first.x, settings, settings.polish_edge);
      const bool polish_better = polished.value <= first.value;
      out.value = polish_better ? polished.value : first.value;
      out.x = polish_better ? std::move(polished.x) : std::move(first.x);
      out.converged = first.converged || polished.converged;
    } catch (const DivergenceError&) {
      // skipped and counted, like runs the reference protocol ignored
    }
    return out;
  };

  const int threads = std::min(resolve_thread_count(settings.threads), settings.restarts);
  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(settings.restarts));
  if (threads <= 1) {
    for (int i = 0; i < settings.restarts; ++i) outcomes[i] = run_restart(i);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= settings.restarts) return;
        outcomes[i] = run_restart(i);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  int best_index = -1, failed = 0;
  for (int i = 0; i < settings.restarts; ++i) {
    if (!std::isfinite(outcomes[i].value)) {
      ++failed;
      continue;
    }
    if (best_index < 0 || outcomes[i].value < outcomes[best_index].value)
      best_index = i;
  }
  if (best_index < 0)
    throw DivergenceError("minimize_fp: every restart failed");

  std::vector<double> full(static_cast<std::size_t>(n), 0.0);
  std::copy(outcomes[best_index].x.begin(), outcomes[best_index].x.end(), full.begin() + 1);
  MinimizeResult result{canonicalize(AngleConfig(std::move(full)))};
  result.value = outcomes[best_index].value;
  result.restarts_used = settings.restarts;
  result.failed_restarts = failed;
  result.best_restart_index = best_index;
  result.converged = outcomes[best_index].converged;
  if (settings.keep_trace) {
    result.trace.reserve(static_cast<std::size_t>(settings.restarts));
    double running = std::numeric_limits<double>::infinity();
    for (const auto& o : outcomes) {
      running = std::min(running, o.value);
      result.trace.push_back(running);
    }
  }
  return result;
}

}  // namespace fplab

#endif  // FPLAB_OPTIMIZE_HPP
