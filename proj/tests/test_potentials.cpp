#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fplab/angles.hpp"
#include "fplab/families.hpp"
#include "fplab/potentials.hpp"

using namespace fplab;

namespace {

AngleConfig perp(int n) { return build(FamilyInstance{FamilyKind::Perp, n, std::nullopt}); }
AngleConfig harmonic(int n) {
  return build(FamilyInstance{FamilyKind::Harmonic, n, std::nullopt});
}

AngleConfig random_config(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, kPi);
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (double& a : angles) a = u(rng);
  return AngleConfig(std::move(angles));
}

}  // namespace

TEST_CASE("kernel_w values") {
  CHECK(kernel_w(0.0, 1.3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kernel_w(kPi / 2.0, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
  // |cos(pi/3)|^{log3/log2} = (1/2)^{log3/log2} = 1/3
  CHECK(kernel_w(kPi / 3.0, kLog3Log2) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK_THROWS_AS(kernel_w(std::nan(""), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kernel_w(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(kernel_w(0.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("kernel_v values") {
  CHECK(kernel_v(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kernel_v(kPi / 2.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(kernel_v(5.0 * kPi / 4.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS_AS(kernel_v(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("kernels are pi-periodic") {
  for (int i = 0; i < 10000; ++i) {
    const double t = -2.0 * kPi + 4.0 * kPi * i / 9999.0;
    CHECK(std::fabs(kernel_w(t + kPi, 1.7) - kernel_w(t, 1.7)) < 1e-12);
    CHECK(std::fabs(kernel_v(t + kPi) - kernel_v(t)) < 1e-12);
  }
}

TEST_CASE("kernel dominance region below theta_p") {
  for (double p : {0.8, 1.0, 1.3, kLog3Log2}) {
    const double tp = theta_p(p);
    for (int i = 0; i <= 2000; ++i) {
      const double t = tp * i / 2000.0;
      CHECK(kernel_w(t, p) >= kernel_v(t) - 1e-12);
    }
  }
}

TEST_CASE("frame_potential values") {
  CHECK(frame_potential(perp(5), 1.0) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(frame_potential(AngleConfig({0.0, kPi / 2.0}), 1.7) ==
        doctest::Approx(0.0).epsilon(1e-14));
  // X_3^(h) at p = 2: six ordered pairs at |cos| = 1/2
  CHECK(frame_potential(harmonic(3), 2.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK_THROWS_AS(frame_potential(perp(5), -1.0), std::invalid_argument);
}

TEST_CASE("frame_potential closed-form oracle for perp configurations") {
  for (int n = 2; n <= 99; ++n) {
    const double expected =
        n % 2 ? (n - 1.0) * (n - 1.0) / 2.0 : (n * n - 2.0 * n) / 2.0;
    for (double p : {0.5, 1.0, 1.3, 2.0})
      CHECK(frame_potential(perp(n), p) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("frame_potential symmetry invariance") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    AngleConfig a = random_config(rng, n);
    const double p = 0.3 + 2.5 * u(rng) / kPi;
    const double base = frame_potential(a, p);

    std::vector<double> rotated = a.angles();
    const double shift = u(rng);
    for (double& t : rotated) t += shift;
    CHECK(frame_potential(AngleConfig(rotated), p) ==
          doctest::Approx(base).epsilon(1e-12));

    std::vector<double> shuffled = a.angles();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(frame_potential(AngleConfig(shuffled), p) ==
          doctest::Approx(base).epsilon(1e-12));

    std::vector<double> reflected = a.angles();
    for (double& t : reflected) t = -t;
    CHECK(frame_potential(AngleConfig(reflected), p) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("linearized_potential values") {
  CHECK(linearized_potential(perp(5)) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(linearized_potential(AngleConfig({0.0, kPi / 2.0})) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(linearized_potential(AngleConfig({0.0, kPi / 4.0})) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("theta_c") {
  CHECK(theta_c(2.0) == doctest::Approx(kPi / 4.0).epsilon(1e-14));
  CHECK(theta_c(1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(theta_c(kLog3Log2) == doctest::Approx(0.9178723831440295).epsilon(1e-12));
  CHECK_THROWS_AS(theta_c(0.9), std::domain_error);
  CHECK_THROWS_AS(theta_c(2.1), std::domain_error);
}

TEST_CASE("theta_p") {
  CHECK(theta_p(kLog3Log2) == doctest::Approx(kPi / 3.0).epsilon(1e-9));
  CHECK(theta_p(1.0) == doctest::Approx(kPi).epsilon(1e-14));
  const double tp12 = theta_p(1.2);
  CHECK(tp12 > kPi / 3.0);
  CHECK(tp12 == doctest::Approx(1.465051608788807).epsilon(1e-9));
  CHECK_THROWS_AS(theta_p(2.5), std::domain_error);
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize(AngleConfig({kPi / 2.0, 0.0})).angles() ==
        std::vector<double>{0.0, kPi / 2.0});
  AngleConfig rotated({0.3, 0.3 + kPi / 2.0});
  auto canon = canonicalize(rotated).angles();
  CHECK(canon[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(canon[1] == doctest::Approx(kPi / 2.0).epsilon(1e-13));
  auto refl = canonicalize(AngleConfig({0.0, kPi - 0.4})).angles();
  CHECK(refl[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(refl[1] == doctest::Approx(0.4).epsilon(1e-13));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    AngleConfig a = random_config(rng, 5);
    AngleConfig once = canonicalize(a);
    AngleConfig twice = canonicalize(once);
    CHECK(once.angles() == twice.angles());
  }
}

TEST_CASE("equivalent") {
  AngleConfig x5perp = perp(5);
  AngleConfig rot({kPi / 4.0, kPi / 4.0, kPi / 4.0, 3.0 * kPi / 4.0, 3.0 * kPi / 4.0});
  CHECK(equivalent(x5perp, rot, 1e-9));
  CHECK_FALSE(equivalent(harmonic(3), perp(3), 1e-9));
  CHECK(equivalent(AngleConfig({0.0, 0.4}), AngleConfig({0.0, 0.4 + 1e-7}), 1e-6));
  CHECK_FALSE(equivalent(AngleConfig({0.0, 0.4}), AngleConfig({0.0, 0.5}), 1e-6));
  CHECK_THROWS_AS(equivalent(x5perp, AngleConfig({0.0, 1.0}), 1e-9),
                  std::invalid_argument);
}

TEST_CASE("equivalent is an equivalence relation at tol 0") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    AngleConfig a = random_config(rng, 6);
    std::vector<double> pb = a.angles(), pc = a.angles();
    std::shuffle(pb.begin(), pb.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    AngleConfig b(pb), c(pc);
    CHECK(equivalent(a, a, 0.0));
    CHECK(equivalent(a, b, 0.0) == equivalent(b, a, 0.0));
    if (equivalent(a, b, 0.0) && equivalent(b, c, 0.0)) CHECK(equivalent(a, c, 0.0));
  }
}

TEST_CASE("frame operator deviation") {
  CHECK(frame_operator_deviation(perp(2)).deviation ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(frame_operator_deviation(perp(5)).deviation ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK(frame_operator_deviation(harmonic(5)).deviation <= 1e-12);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    auto s = frame_operator_deviation(random_config(rng, n));
    CHECK(s.xx + s.yy == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    CHECK(s.deviation >= 0.0);
    CHECK(s.frobenius >= s.deviation - 1e-14);
  }
}

TEST_CASE("pfp_counting") {
  CHECK(pfp_counting(perp(2), 1.4) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pfp_counting(AngleConfig({0.7}), 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pfp_counting(perp(5), 0.9) == doctest::Approx(0.52).epsilon(1e-13));
}

TEST_CASE("angle config invariants") {
  CHECK_THROWS_AS(AngleConfig({}), std::invalid_argument);
  CHECK_THROWS_AS(AngleConfig({std::nan("")}), std::invalid_argument);
  AngleConfig a({-0.5, 4.0, kPi});
  for (double t : a.angles()) {
    CHECK(t >= 0.0);
    CHECK(t < kPi);
  }
}
