#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "hnkit/representation.hpp"
#include "oracle_helpers.hpp"

using namespace hnkit;
using hnkit_test::random_upper;

namespace {

RepresentationData lebesgue_data(int n) {
  return RepresentationData(0.0, std::vector<double>(static_cast<size_t>(n), 0.0),
                            Measure::lebesgue(n));
}

RepresentationData three_var_data() {
  return RepresentationData(1.0, {0.0, 0.0, 0.0},
                            Measure::hyperplane({1.0, 1.0, 1.0}, 0.0,
                                                kPi / std::sqrt(3.0)));
}

RepresentationData density2_data() {
  return RepresentationData(0.0, {0.0, 0.0},
                            Measure::from_registry(2, "inv_one_plus_t2_product"));
}

FunctionOracle closed_form_oracle(int n, std::function<Complex(const UpperPoint&)> f) {
  return FunctionOracle(n, std::move(f));
}

}  // namespace

TEST_CASE("representation data validation") {
  CHECK_THROWS_AS(RepresentationData(0.0, {1.0}, Measure::lebesgue(2)),
                  DomainError);
  CHECK_THROWS_AS(RepresentationData(0.0, {-0.1, 0.0}, Measure::lebesgue(2)),
                  DomainError);
  CHECK_NOTHROW(RepresentationData(2.0, {0.0, 1.5}, Measure::lebesgue(2)));
}

TEST_CASE("lebesgue data represents the constant i") {
  hnkit::detail::Rng rng(31);
  for (int n = 1; n <= 2; ++n) {
    const auto data = lebesgue_data(n);
    for (int rep = 0; rep < 5; ++rep) {
      const auto r = evaluate_q(data, random_upper(n, rng));
      REQUIRE(r.converged);
      CHECK(std::abs(r.value - kImagUnit) <= 1e-6);
    }
  }
}

TEST_CASE("zero measure gives the linear part only") {
  const RepresentationData data(1.5, {2.0, 0.5}, Measure::zero(2));
  const UpperPoint z(std::vector<Complex>{Complex{1.0, 1.0}, Complex{-2.0, 3.0}});
  const auto r = evaluate_q(data, z);
  REQUIRE(r.converged);
  CHECK(std::abs(r.value - (1.5 + 2.0 * z.coord(1) + 0.5 * z.coord(2))) < 1e-14);

  const auto zero = evaluate_q(lebesgue_data(2), z);  // a = 0, b = 0, mu = lambda
  REQUIRE(zero.converged);

  const RepresentationData nothing(0.0, {0.0}, Measure::zero(1));
  CHECK(evaluate_q(nothing, UpperPoint::all_i(1)).value == Complex{0.0, 0.0});
}

TEST_CASE("three-variable hyperplane example") {
  const auto data = three_var_data();
  const auto r = evaluate_q(data, UpperPoint::all_i(3), QuadratureSpec(1e-7, 1e-10));
  REQUIRE(r.converged);
  // 1 - 1/(3i) = 1 + i/3
  CHECK(std::abs(r.value - Complex{1.0, 1.0 / 3.0}) <= 1e-5);

  const auto im = evaluate_im_q(data, UpperPoint::all_i(3), QuadratureSpec(1e-7, 1e-10));
  REQUIRE(im.converged);
  CHECK(im.value.real() == Catch::Approx(1.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("extended evaluation") {
  // Lebesgue data: -i as soon as one coordinate drops to the lower half-plane.
  const auto data = lebesgue_data(2);
  const OffRealPoint lower(std::vector<Complex>{Complex{0.5, 1.0}, Complex{0.0, -2.0}});
  const auto r = evaluate_q_extended(data, lower);
  REQUIRE(r.converged);
  CHECK(std::abs(r.value - (-kImagUnit)) <= 1e-6);

  // The density example at (i, i) has the closed value i/4.
  const auto g = evaluate_q_extended(density2_data(), OffRealPoint(UpperPoint::all_i(2)));
  REQUIRE(g.converged);
  CHECK(std::abs(g.value - Complex{0.0, 0.25}) <= 1e-7);

  // Restricted to the upper poly-half-plane it is evaluate_q exactly
  // (same code path).
  hnkit::detail::Rng rng(32);
  const auto z = random_upper(2, rng);
  CHECK(evaluate_q(data, z).value == evaluate_q_extended(data, OffRealPoint(z)).value);

  // Zero measure: linear part evaluated at the point as given.
  const RepresentationData lin(0.25, {1.0, 3.0}, Measure::zero(2));
  CHECK(std::abs(evaluate_q_extended(lin, lower).value -
                 (0.25 + lower.coord(1) + 3.0 * lower.coord(2))) < 1e-14);
}

TEST_CASE("imaginary part via the Poisson kernel") {
  // b-only data: Im q = sum b_l Im z_l.
  const RepresentationData lin(0.0, {1.0, 1.0}, Measure::zero(2));
  const UpperPoint z(std::vector<Complex>{Complex{0.3, 0.7}, Complex{-1.0, 2.2}});
  CHECK(evaluate_im_q(lin, z).value.real() == Catch::Approx(2.9));

  // Two computation paths agree on admissible data.
  hnkit::detail::Rng rng(33);
  for (const auto& data : {lebesgue_data(2), three_var_data()}) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto p = random_upper(data.dim(), rng);
      const auto direct = evaluate_q(data, p, QuadratureSpec(1e-7, 1e-10));
      const auto poisson = evaluate_im_q(data, p, QuadratureSpec(1e-7, 1e-10));
      REQUIRE(direct.converged);
      REQUIRE(poisson.converged);
      CHECK(std::abs(direct.value.imag() - poisson.value.real()) <= 1e-6);
    }
  }
}

TEST_CASE("recover a") {
  const auto q1 = closed_form_oracle(3, [](const UpperPoint& z) {
    return 1.0 - 1.0 / (z.coord(1) + z.coord(2) + z.coord(3));
  });
  CHECK(recover_a(q1) == Catch::Approx(1.0));

  const auto q2 = closed_form_oracle(2, [](const UpperPoint&) {
    return Complex{7.25, 0.0};
  });
  CHECK(recover_a(q2) == Catch::Approx(7.25));

  // q(z) = 2 z_2 - 1/(z_1 + z_2): Re(2i - 1/(2i)) = 0.
  const auto q3 = closed_form_oracle(2, [](const UpperPoint& z) {
    return 2.0 * z.coord(2) - 1.0 / (z.coord(1) + z.coord(2));
  });
  CHECK(std::abs(recover_a(q3)) < 1e-15);
}

TEST_CASE("recover b") {
  const auto shifted = closed_form_oracle(2, [](const UpperPoint& z) {
    return 2.0 * z.coord(2) - 1.0 / (z.coord(1) + z.coord(2));
  });
  const auto b2 = recover_b(shifted, 2);
  REQUIRE(b2.converged);
  CHECK(b2.value == Catch::Approx(2.0).margin(1e-8));
  const auto b1 = recover_b(shifted, 1);
  REQUIRE(b1.converged);
  CHECK(std::abs(b1.value) <= 1e-8);

  // Pure integral data: all slopes vanish (quadrature-backed oracle).
  const auto leb = make_oracle(lebesgue_data(2));
  for (int j = 1; j <= 2; ++j) {
    const auto b = recover_b(leb, j);
    REQUIRE(b.converged);
    CHECK(std::abs(b.value) <= 1e-6);
  }

  // Linear oracle: slope 1 in every coordinate.
  const auto sum3 = closed_form_oracle(3, [](const UpperPoint& z) {
    return z.coord(1) + z.coord(2) + z.coord(3);
  });
  for (int j = 1; j <= 3; ++j) {
    const auto b = recover_b(sum3, j);
    REQUIRE(b.converged);
    CHECK(b.value == Catch::Approx(1.0).margin(1e-10));
  }

  CHECK_THROWS_AS(recover_b(sum3, 1, NonTangentialPath::to_point(0.0)),
                  DomainError);
}

TEST_CASE("recover c") {
  const auto recip = closed_form_oracle(1, [](const UpperPoint& z) {
    return -1.0 / z.coord(1);
  });
  const auto c = recover_c(recip, 1);
  REQUIRE(c.converged);
  CHECK(c.value == Catch::Approx(-1.0).margin(1e-10));

  const auto leb = make_oracle(lebesgue_data(1));
  const auto c0 = recover_c(leb, 1);
  REQUIRE(c0.converged);
  CHECK(std::abs(c0.value) <= 1e-6);

  const auto sum2 = closed_form_oracle(2, [](const UpperPoint& z) {
    return z.coord(1) + z.coord(2);
  });
  const auto c1 = recover_c(sum2, 1);
  REQUIRE(c1.converged);
  CHECK(std::abs(c1.value) <= 1e-10);
}

TEST_CASE("one-variable atom recovery and slope") {
  const auto recip = closed_form_oracle(1, [](const UpperPoint& z) {
    return -1.0 / z.coord(1);
  });
  const auto mass = recover_point_mass_1d(recip, 0.0);
  REQUIRE(mass.converged);
  CHECK(mass.value == Catch::Approx(kPi).margin(1e-3));
  const auto away = recover_point_mass_1d(recip, 1.0);
  REQUIRE(away.converged);
  CHECK(std::abs(away.value) <= 1e-3);

  const auto ident = closed_form_oracle(1, [](const UpperPoint& z) {
    return z.coord(1);
  });
  CHECK(std::abs(recover_point_mass_1d(ident, 0.7).value) <= 1e-3);

  const auto affine = closed_form_oracle(1, [](const UpperPoint& z) {
    return 3.0 * z.coord(1) + 1.0;
  });
  CHECK(slope_at_infinity_1d(affine).value == Catch::Approx(3.0).margin(1e-6));
  CHECK(std::abs(slope_at_infinity_1d(recip).value) <= 1e-6);
  const auto shift = closed_form_oracle(1, [](const UpperPoint& z) {
    return z.coord(1) + kImagUnit;
  });
  CHECK(slope_at_infinity_1d(shift).value == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("stieltjes inversion") {
  const TestFunction psi{[](std::span<const double> x) {
                           double p = 1.0;
                           for (double v : x) p /= 1.0 + v * v;
                           return p;
                         },
                         1.0};

  // Constant-i oracle in two variables: Im q = 1, the integral is pi^2 for
  // every y, and so is the limit.
  const auto const_i = closed_form_oracle(2, [](const UpperPoint&) {
    return kImagUnit;
  });
  std::vector<double> ladder;
  for (int k = 1; k <= 5; ++k) ladder.push_back(std::ldexp(1.0, -k));
  const auto s = stieltjes_inverse(const_i, psi, ladder, QuadratureSpec(1e-7, 1e-10));
  REQUIRE(s.converged);
  CHECK(s.value == Catch::Approx(kPi * kPi).epsilon(0.005));

  // Zero-measure data: Im q = b*y -> 0.
  const auto linear = closed_form_oracle(1, [](const UpperPoint& z) {
    return z.coord(1);
  });
  const auto z = stieltjes_inverse(linear, psi, ladder, QuadratureSpec(1e-7, 1e-10));
  CHECK(std::abs(z.value) <= 1e-4);
}

TEST_CASE("constancy check") {
  const auto five = closed_form_oracle(2, [](const UpperPoint&) {
    return Complex{5.0, 0.0};
  });
  const auto v = constancy_check(five, UpperPoint::all_i(2));
  CHECK(v.applicable);
  CHECK(v.max_deviation == 0.0);
  CHECK(v.constant_value == Complex{5.0, 0.0});

  const auto const_i = closed_form_oracle(2, [](const UpperPoint&) {
    return kImagUnit;
  });
  CHECK_FALSE(constancy_check(const_i, UpperPoint::all_i(2)).applicable);

  const auto sum2 = closed_form_oracle(2, [](const UpperPoint& z) {
    return z.coord(1) + z.coord(2);
  });
  CHECK_FALSE(constancy_check(sum2, UpperPoint::all_i(2)).applicable);
}

TEST_CASE("herglotz positivity of admissible data") {
  hnkit::detail::Rng rng(34);
  for (const auto& data : {lebesgue_data(1), lebesgue_data(2), three_var_data()}) {
    for (int rep = 0; rep < 25; ++rep) {
      const auto z = random_upper(data.dim(), rng);
      const auto r = evaluate_q(data, z, QuadratureSpec(1e-6, 1e-9));
      REQUIRE(r.converged);
      CHECK(r.value.imag() >= -1e-8);
    }
  }
}

TEST_CASE("uniqueness probe: distinct measures give distinct functions") {
  const UpperPoint probe(std::vector<Complex>{Complex{0.4, 1.1}, Complex{-0.2, 0.9}});
  const auto q1 = evaluate_q(lebesgue_data(2), probe);
  const auto q2 = evaluate_q(density2_data(), probe);
  CHECK(std::abs(q1.value - q2.value) > 1e-6);
}

TEST_CASE("n = 1 reduction to the classical formula") {
  // Independent route: a + b z + (1/pi) int (1/(t-z) - t/(1+t^2)) rho(t) dt.
  const RepresentationData data(
      0.75, {1.25}, Measure::from_registry(1, "inv_one_plus_t2_product"));
  hnkit::detail::Rng rng(35);
  for (int rep = 0; rep < 10; ++rep) {
    const Complex z = rng.upper_coord();
    const auto mine = evaluate_q(data, UpperPoint(std::vector<Complex>{z}),
                                 QuadratureSpec(1e-12, 1e-14));
    const auto classical = hnkit::detail::integrate_over_Rk(
        [&](std::span<const double> t) {
          return hnkit_test::classic_integrand_1d(z, t[0]) /
                 (1.0 + t[0] * t[0]);
        },
        1, QuadratureSpec(1e-12, 1e-14));
    REQUIRE(mine.converged);
    REQUIRE(classical.converged);
    const Complex reference = 0.75 + 1.25 * z + classical.value / kPi;
    CHECK(std::abs(mine.value - reference) <= 1e-10);
  }
}

TEST_CASE("oracle validation rejects negative imaginary parts") {
  const auto bad = FunctionOracle(1, [](const UpperPoint&) {
    return -kImagUnit;  // not Herglotz on purpose
  });
  CHECK_THROWS_AS(bad(UpperPoint(std::vector<Complex>{Complex{0.0, 2.0}})),
                  DomainError);
}
