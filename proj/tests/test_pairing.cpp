#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conekit/pairing.hpp"

using namespace conekit;

namespace {
const double kSqrtPi = 1.7724538509055160;
const double kLeadingOdd = 0.28209479177387814;  // sqrt(pi) / (2 pi)
const QuadratureSpec kSpec{};

TestFunction centered_gaussian() {
  return make_gaussian_hermite({0.0, 0.0}, 1.0, {{0, 0, 1.0}});
}
TestFunction odd_gaussian() {
  return make_gaussian_hermite({0.0, 0.0}, 1.0, {{1, 0, 1.0}});
}
}  // namespace

TEST_CASE("leading pairing") {
  const PairingResult odd = leading_pairing(odd_gaussian(), kSpec);
  CHECK(odd.value.imag() == doctest::Approx(kLeadingOdd).epsilon(1e-10));
  CHECK(odd.value.real() == 0.0);
  REQUIRE(odd.terms.size() == 1);
  CHECK(odd.terms[0].first == "leading");

  const PairingResult shifted = leading_pairing(
      make_gaussian_hermite({1.0, 0.0}, 1.0, {{0, 0, 1.0}}), kSpec);
  CHECK(shifted.value.imag() ==
        doctest::Approx(0.30357885292069686).epsilon(1e-9));

  CHECK(std::abs(leading_pairing(centered_gaussian(), kSpec).value) <= 1e-12);
}

TEST_CASE("moment delta pairing") {
  const PairingResult r = moment_delta_pairing(odd_gaussian(), 1, 2, kSpec);
  CHECK(r.value.real() == doctest::Approx(-kSqrtPi).epsilon(1e-9));
  CHECK(r.value.imag() == 0.0);
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms[0].first == "moment_delta");

  CHECK(std::abs(moment_delta_pairing(centered_gaussian(), 1, 0, kSpec).value) <=
        1e-10);
}

TEST_CASE("rough expansion") {
  TestFunction f = odd_gaussian();
  const PairingResult lead = leading_pairing(f, kSpec);
  const PairingResult zero = rough_expansion(f, 10.0, 0, kSpec);
  CHECK(zero.value.imag() ==
        doctest::Approx(lead.value.imag()).epsilon(1e-12));
  REQUIRE(zero.terms.size() == 1);
  CHECK(zero.terms[0].first == "n=0");

  const PairingResult two = rough_expansion(f, 10.0, 2, kSpec);
  REQUIRE(two.terms.size() == 3);
  CHECK(two.terms[0].second == zero.terms[0].second);
  // the n = 1 term integrates an odd-derivative slice that vanishes at xi2=0
  CHECK(std::abs(two.terms[1].second) <= 1e-12);

  CHECK_THROWS_AS(rough_expansion(f, -1.0, 0, kSpec), std::invalid_argument);
  CHECK_THROWS_AS(rough_expansion(f, 10.0, -1, kSpec), std::invalid_argument);
}

TEST_CASE("sharp expansion values and prefix structure") {
  TestFunction f = odd_gaussian();
  const PairingResult lead = leading_pairing(f, kSpec);
  const PairingResult zero =
      sharp_expansion(f, 10.0, 0, CoeffMode::derived, kSpec);
  CHECK(zero.value == lead.value);
  const PairingResult one =
      sharp_expansion(f, 10.0, 1, CoeffMode::derived, kSpec);
  CHECK(one.value == zero.value);

  const PairingResult two =
      sharp_expansion(f, 10.0, 2, CoeffMode::derived, kSpec);
  CHECK(two.value.imag() ==
        doctest::Approx(0.28138955479439716).epsilon(1e-9));
  REQUIRE(two.terms.size() == 3);
  CHECK(two.terms[0].first == "leading");
  CHECK(two.terms[1].first == "moment[m=0,n=2,k=1]");
  CHECK(two.terms[2].first == "lemma1[m=1,n=2]");
  CHECK(two.terms[2].second.imag() ==
        doctest::Approx(-0.01 * kSqrtPi / (8.0 * std::numbers::pi))
            .epsilon(1e-9));

  const PairingResult four =
      sharp_expansion(f, 10.0, 4, CoeffMode::derived, kSpec);
  REQUIRE(four.terms.size() == 6);
  for (std::size_t i = 0; i < two.terms.size(); ++i) {
    CHECK(four.terms[i].first == two.terms[i].first);
    CHECK(std::abs(four.terms[i].second - two.terms[i].second) <= 1e-12);
  }

  CHECK_NOTHROW(sharp_expansion(f, 10.0, 2, CoeffMode::paper_literal, kSpec));
  CHECK_THROWS_AS(
      sharp_expansion(make_bump(2.0), 10.0, 8, CoeffMode::derived, kSpec),
      std::domain_error);
  CHECK_THROWS_AS(
      sharp_expansion(f, 10.0, 2, CoeffMode::derived, kSpec, 0.0),
      std::invalid_argument);
}

TEST_CASE("moment and Fourier routes agree") {
  for (int k : {0, 1, 6})
    CHECK(lemma1_dft_check(k, gaussian_1d(0.0, 1.0), 4096, 20.0) <= 1e-6);
  CHECK(lemma1_dft_check(3, gaussian_1d(1.0, 1.0), 4096, 20.0) <= 1e-6);
}

TEST_CASE("fourier route guards its grid") {
  CHECK_THROWS_AS(lemma1_dft_check(2, gaussian_1d(0.0, 1.0), 4096, 5.0),
                  std::domain_error);
  CHECK_THROWS_AS(lemma1_dft_check(2, gaussian_1d(0.0, 1.0), 16, 20.0),
                  std::domain_error);
  CHECK_THROWS_AS(lemma1_dft_check(-1, gaussian_1d(0.0, 1.0), 4096, 20.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(lemma1_dft_check(2, gaussian_1d(0.0, 1.0), 1, 20.0),
                  std::invalid_argument);
}
