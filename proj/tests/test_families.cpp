#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fplab/families.hpp"
#include "fplab/potentials.hpp"

using namespace fplab;

namespace {

FamilyInstance inst(FamilyKind kind, int n) { return FamilyInstance{kind, n, std::nullopt}; }
FamilyInstance inst(FamilyKind kind, int n, double alpha) {
  return FamilyInstance{kind, n, alpha};
}

}  // namespace

TEST_CASE("family names round trip") {
  for (FamilyKind k : {FamilyKind::Perp, FamilyKind::Harmonic, FamilyKind::Y,
                       FamilyKind::Z, FamilyKind::E6, FamilyKind::Custom}) {
    auto back = family_from_name(family_name(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK_FALSE(family_from_name("no-such-family").has_value());
}

TEST_CASE("build produces the stated angle multisets") {
  auto p5 = build(inst(FamilyKind::Perp, 5)).angles();
  CHECK(p5 == std::vector<double>{0.0, 0.0, 0.0, kPi / 2.0, kPi / 2.0});
  auto p4 = build(inst(FamilyKind::Perp, 4)).angles();
  CHECK(p4 == std::vector<double>{0.0, 0.0, kPi / 2.0, kPi / 2.0});

  auto h4 = build(inst(FamilyKind::Harmonic, 4)).angles();
  REQUIRE(h4.size() == 4);
  for (int j = 0; j < 4; ++j) CHECK(h4[j] == doctest::Approx(j * kPi / 4.0).epsilon(1e-15));

  auto y = build(inst(FamilyKind::Y, 5, 0.3)).angles();
  CHECK(y == std::vector<double>{0.0, 0.0, kPi / 2.0 - 0.3, kPi / 2.0, kPi / 2.0 + 0.3});

  // Z angles are stored mod pi, so -alpha lands at pi - alpha
  auto z = build(inst(FamilyKind::Z, 5, 0.3)).angles();
  REQUIRE(z.size() == 5);
  CHECK(equivalent(AngleConfig(z), AngleConfig({-0.3, -0.3, 0.0, 0.3, 0.3}), 1e-12));

  auto e6 = build(inst(FamilyKind::E6, 6)).angles();
  CHECK(e6 == std::vector<double>{0.0, 0.0, kPi / 3.0, kPi / 3.0, 2.0 * kPi / 3.0,
                                  2.0 * kPi / 3.0});
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(build(inst(FamilyKind::Perp, 0)), std::invalid_argument);
  CHECK_THROWS_AS(build(inst(FamilyKind::Y, 5)), std::invalid_argument);
  CHECK_THROWS_AS(build(inst(FamilyKind::Y, 6, 0.3)), std::invalid_argument);
  CHECK_THROWS_AS(build(inst(FamilyKind::Z, 5, -0.1)), std::invalid_argument);
  CHECK_THROWS_AS(build(inst(FamilyKind::Z, 5, 2.0)), std::invalid_argument);
  CHECK_THROWS_AS(build(inst(FamilyKind::E6, 5)), std::invalid_argument);
  CHECK_THROWS_AS(build(inst(FamilyKind::Perp, 4, 0.3)), std::invalid_argument);
  CHECK_THROWS_AS(build(inst(FamilyKind::Custom, 3)), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_potential(inst(FamilyKind::Custom, 3), 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(closed_form_potential(inst(FamilyKind::Perp, 5), 0.0),
                  std::invalid_argument);
}

TEST_CASE("closed form agrees with the generic sum") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> up(0.2, 4.0);
  std::uniform_real_distribution<double> ua(0.0, kPi / 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double p = up(rng);
    FamilyInstance in{FamilyKind::Custom, 0, std::nullopt};
    switch (trial % 5) {
      case 0: in = inst(FamilyKind::Perp, 2 + static_cast<int>(rng() % 40)); break;
      case 1: in = inst(FamilyKind::Harmonic, 2 + static_cast<int>(rng() % 40)); break;
      case 2: in = inst(FamilyKind::Y, 5, ua(rng)); break;
      case 3: in = inst(FamilyKind::Z, 5, ua(rng)); break;
      case 4: in = inst(FamilyKind::E6, 6); break;
    }
    const double closed = closed_form_potential(in, p);
    const double generic = frame_potential(build(in), p);
    CHECK(closed == doctest::Approx(generic).epsilon(1e-12));
  }
}

TEST_CASE("family potential landmarks") {
  // Y(0) collapses onto the perpendicular configuration
  CHECK(equivalent(build(inst(FamilyKind::Y, 5, 0.0)), build(inst(FamilyKind::Perp, 5)),
                   1e-12));
  CHECK(closed_form_potential(inst(FamilyKind::Y, 5, 0.0), 1.3) ==
        doctest::Approx(8.0).epsilon(1e-14));
  // Z(0) collapses all five vectors onto one line
  CHECK(closed_form_potential(inst(FamilyKind::Z, 5, 0.0), 1.3) ==
        doctest::Approx(20.0).epsilon(1e-14));
  CHECK(closed_form_potential(inst(FamilyKind::E6, 6), 3.0) ==
        doctest::Approx(9.0).epsilon(1e-14));
  // off-diagonal part of the tight-frame bound N^2/2 is N^2/2 - N
  CHECK(closed_form_potential(inst(FamilyKind::Harmonic, 6), 2.0) ==
        doctest::Approx(12.0).epsilon(1e-13));
}

TEST_CASE("best_alpha for the Z family at p = 2") {
  // d/dalpha vanishes at cos(2 alpha) = -1/4, value 7.5 exactly
  const AlphaResult r = best_alpha(FamilyKind::Z, 2.0, 1e-12);
  // near the minimum the value is flat to double precision over ~1e-8 in
  // alpha, so alpha is only localizable to that scale
  CHECK(r.alpha == doctest::Approx(0.9117382909684876).epsilon(1e-7));
  CHECK(r.value == doctest::Approx(7.5).epsilon(1e-12));
}

TEST_CASE("best_alpha for the Y family sits at the boundary for small p") {
  const AlphaResult r = best_alpha(FamilyKind::Y, 1.5, 1e-12);
  CHECK(r.alpha == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(r.value == doctest::Approx(8.0).epsilon(1e-12));
  // but an interior local minimum exists and tracks the crossing
  auto interior = best_interior_alpha(FamilyKind::Y, 1.75, 1e-12);
  REQUIRE(interior.has_value());
  CHECK(interior->alpha > 0.01);
  CHECK(interior->alpha < kPi / 2.0 - 0.01);
  CHECK(interior->value == doctest::Approx(closed_form_potential(
                               inst(FamilyKind::Y, 5, interior->alpha), 1.75))
                               .epsilon(1e-13));
}

TEST_CASE("best_alpha for the Z family at p = 1.9") {
  const AlphaResult r = best_alpha(FamilyKind::Z, 1.9, 1e-12);
  CHECK(r.alpha == doctest::Approx(0.899339728918).epsilon(1e-7));
  CHECK(r.value == doctest::Approx(7.72062837499).epsilon(1e-10));
}

TEST_CASE("best_alpha value is continuous in p") {
  for (FamilyKind kind : {FamilyKind::Y, FamilyKind::Z}) {
    double prev = best_alpha(kind, 1.5, 1e-12).value;
    for (int i = 1; i <= 50; ++i) {
      const double p = 1.5 + 0.5 * i / 50.0;
      const double cur = best_alpha(kind, p, 1e-12).value;
      CHECK(std::fabs(cur - prev) < 0.1);
      prev = cur;
    }
  }
}

TEST_CASE("classify recovers built families") {
  CHECK(classify(build(inst(FamilyKind::Perp, 7)), 1e-9).kind == FamilyKind::Perp);
  CHECK(classify(build(inst(FamilyKind::Harmonic, 8)), 1e-9).kind ==
        FamilyKind::Harmonic);
  CHECK(classify(build(inst(FamilyKind::E6, 6)), 1e-9).kind == FamilyKind::E6);

  for (int i = 1; i < 100; ++i) {
    const double a = (kPi / 2.0) * i / 100.0;
    for (FamilyKind kind : {FamilyKind::Y, FamilyKind::Z}) {
      const FamilyInstance got = classify(build(inst(kind, 5, a)), 1e-9);
      // Y(pi/2) and small-alpha degeneracies aside, interior alphas round trip
      if (got.kind == kind) {
        REQUIRE(got.alpha.has_value());
        CHECK(*got.alpha == doctest::Approx(a).epsilon(1e-7));
      } else {
        // a collapsed instance may legitimately match an earlier family
        CHECK((got.kind == FamilyKind::Perp || got.kind == FamilyKind::Harmonic ||
               got.kind == FamilyKind::Y));
      }
    }
  }
}

TEST_CASE("classify tolerates perturbation and rejects strangers") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> eps(-1e-7, 1e-7);
  auto noisy = [&](const AngleConfig& c) {
    std::vector<double> a = c.angles();
    for (double& t : a) t += eps(rng);
    return AngleConfig(std::move(a));
  };
  CHECK(classify(noisy(build(inst(FamilyKind::Perp, 5))), 1e-5).kind ==
        FamilyKind::Perp);
  CHECK(classify(noisy(build(inst(FamilyKind::Z, 5, 0.9))), 1e-5).kind ==
        FamilyKind::Z);
  CHECK(classify(AngleConfig({0.1, 0.7, 1.9, 2.4, 3.0}), 1e-6).kind ==
        FamilyKind::Custom);
}
