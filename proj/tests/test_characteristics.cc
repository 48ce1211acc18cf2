// Copyright 2026 The AFD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <doctest.h>

#include "afd/characteristics.h"
#include "afd/numerics.h"

namespace afd {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool HasCaveat(const Characteristics& ch, const std::string& needle) {
  for (const std::string& c : ch.caveats) {
    if (c.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST_SUITE("characteristics") {

TEST_CASE("closed forms at the published design points") {
  const Characteristics four = ClosedForm(FilterConstants(0.1, 1.0, 4.0));
  CHECK(std::abs(four.q_erb - 1.0186 / 0.1) < 5e-3);
  CHECK(std::abs(four.q_erb - 10.185916357881301) < 1e-11);

  const Characteristics b72 = ClosedForm(FilterConstants(0.1, 1.0, 7.2));
  CHECK(std::abs(b72.q_erb * 0.1 - 1.4334) < 5e-4);

  const Characteristics b1 = ClosedForm(FilterConstants(0.1, 1.0, 1.0));
  CHECK(b1.phi_accum == 0.5);

  CHECK(four.beta_peak == 1.0);
  CHECK(four.beta_max_n == 1.0);
  CHECK(four.n_beta == doctest::Approx(4.0 / (2 * kPi * 0.1)).epsilon(1e-14));
  CHECK(four.s_beta ==
        doctest::Approx((20.0 / std::log(10.0)) * 4.0 / 0.01).epsilon(1e-14));
}

TEST_CASE("q_n decreases with the level") {
  const Characteristics ch =
      ClosedForm(FilterConstants(0.1, 1.0, 4.0), {3, 10, 15});
  CHECK(ch.q_n.at(3) > ch.q_n.at(10));
  CHECK(ch.q_n.at(10) > ch.q_n.at(15));
}

TEST_CASE("q_erb flagged undefined below the gamma domain") {
  const Characteristics ch = ClosedForm(FilterConstants(0.1, 1.0, 0.4));
  CHECK(std::isnan(ch.q_erb));
  CHECK(HasCaveat(ch, "q_erb undefined"));
  CHECK(ch.phi_accum == 0.2);
  CHECK(ch.s_beta > 0);
}

TEST_CASE("level validation") {
  CHECK_THROWS_AS(ClosedForm(FilterConstants(0.1, 1, 4), {0.0}), DomainError);
  CHECK_THROWS_AS(ClosedForm(FilterConstants(0.1, 1, 4), {61.0}), DomainError);
}

TEST_CASE("tuning ratio g at the reference exponents") {
  const auto g_at = [](double bu) {
    return RatioValue(RatioKind::G(), FilterConstants(0.1, 1.0, bu));
  };
  CHECK(std::abs(g_at(4.0) - 1.6) < 1e-12);
  CHECK(std::abs(g_at(3.0) - 16.0 / 9.0) < 1e-12);
  CHECK(std::abs(g_at(5.0) - 768.0 / 525.0) < 1e-12);
  CHECK(std::abs(g_at(3.0) - 1.78) < 0.005);
  CHECK(std::abs(g_at(5.0) - 1.46) < 0.005);
  CHECK(std::abs(g_at(2.0) - 2.0) < 1e-12);
}

TEST_CASE("g is strictly decreasing on [2, 50]") {
  double prev = RatioValue(RatioKind::G(), FilterConstants(0.1, 1.0, 2.0));
  for (int i = 1; i <= 400; ++i) {
    const double bu = 2.0 + 48.0 * i / 400.0;
    const double g = RatioValue(RatioKind::G(), FilterConstants(0.1, 1.0, bu));
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("alpha decreases toward its asymptote and never reaches 1.70") {
  const auto alpha_at = [](double bu) {
    return RatioValue(RatioKind::Alpha(), FilterConstants(0.1, 1.0, bu));
  };
  CHECK(std::abs(alpha_at(4.0) - 1.797) < 5e-4);
  CHECK(std::abs(alpha_at(4.0) - 1.8) < 0.005);
  CHECK(std::abs(alpha_at(3.86) - 1.8001851399364065) < 1e-12);

  const double asymptote = (2.0 / std::sqrt(kPi)) * std::sqrt(std::log(10.0));
  CHECK(std::abs(asymptote - 1.7122331603837460) < 1e-12);
  double prev = alpha_at(2.0);
  double lowest = prev;
  for (int i = 1; i <= 400; ++i) {
    const double bu = 2.0 + 48.0 * i / 400.0;
    const double a = alpha_at(bu);
    CHECK(a < prev);
    prev = a;
    lowest = std::min(lowest, a);
  }
  CHECK(lowest > asymptote);
  CHECK(lowest > 1.70);
}

TEST_CASE("A_p-only ratios") {
  const FilterConstants c(0.1, 1.0, 4.0);
  CHECK(RatioValue(RatioKind::PhiOverN(), c) ==
        doctest::Approx(kPi * 0.1).epsilon(1e-15));
  CHECK(RatioValue(RatioKind::SOverN(), c) ==
        doctest::Approx(40.0 * kPi / std::log(10.0) / 0.1).epsilon(1e-14));
  CHECK(RatioKind::SOverN().DependsOnlyOnAp());
  CHECK(RatioKind::G().DependsOnlyOnBu());
}

TEST_CASE("ratio algebra is consistent with the closed-form fields") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ap(0.02, 0.2);
  std::uniform_real_distribution<double> bu(1.5, 12.0);
  std::uniform_real_distribution<double> bp(0.7, 1.3);
  for (int k = 0; k < 50; ++k) {
    const FilterConstants c(ap(rng), bp(rng), bu(rng));
    const Characteristics ch = ClosedForm(c, {10});
    // nu = Q_10 / N_beta = g / alpha.
    const double nu_ratio = RatioValue(RatioKind::G(), c) /
                            RatioValue(RatioKind::Alpha(), c);
    const double nu_fields = ch.q_n.at(10) / ch.n_beta;
    CHECK(std::abs(nu_ratio - nu_fields) < 1e-12 * std::abs(nu_fields));
    // ERB * N matches b_p / g.
    CHECK(std::abs(RatioValue(RatioKind::ErbTimesN(), c) -
                   (c.b_p / ch.q_erb) * ch.n_beta) < 1e-12);
    // Squared-bandwidth-times-convexity identity; BW_n = b_p / Q_n is
    // already b_p-free because Q_n scales with b_p.
    const double bw10 = ch.beta_peak / ch.q_n.at(10);
    const double expected = RatioValue(RatioKind::Bwn2TimesS(10), c);
    CHECK(std::abs(expected - bw10 * bw10 * ch.s_beta) < 1e-9 * expected);
  }
}

TEST_CASE("ratio parsing round-trips") {
  for (const std::string token :
       {"alpha", "g", "erb_times_n", "erb2_times_s", "s_over_n", "phi_over_n",
        "qerb_over_q10", "bw3_times_n", "bw32_times_s"}) {
    CHECK(ParseRatioKind(token).Name() == token);
  }
  CHECK_THROWS_AS(ParseRatioKind("nonsense"), DomainError);
  CHECK_THROWS_AS(ParseRatioKind("bw0_times_n"), DomainError);
}

TEST_CASE("closed-form monotonicity over the regime grid") {
  for (int i = 0; i < 20; ++i) {
    const double bu = 1.5 + 10.5 * i / 19.0;
    double prev_qerb = -1;
    for (int j = 0; j < 20; ++j) {
      const double ap = 0.3 - 0.29 * j / 19.0;  // decreasing A_p
      const Characteristics ch =
          ClosedForm(FilterConstants(ap, 1.0, bu), {10});
      CHECK(ch.q_erb > prev_qerb);
      prev_qerb = ch.q_erb;
    }
  }
  for (int j = 0; j < 20; ++j) {
    const double ap = 0.01 + 0.29 * j / 19.0;
    double prev_qerb = -1;
    double prev_q10 = -1;
    for (int i = 0; i < 20; ++i) {
      const double bu = 1.5 + 10.5 * i / 19.0;
      const Characteristics ch =
          ClosedForm(FilterConstants(ap, 1.0, bu), {10});
      CHECK(ch.q_erb > prev_qerb);
      CHECK(ch.q_n.at(10) > prev_q10);
      prev_qerb = ch.q_erb;
      prev_q10 = ch.q_n.at(10);
    }
  }
}

TEST_CASE("closed-form q_erb against brute-force quadrature") {
  for (double ap : {0.02, 0.05, 0.1, 0.2}) {
    for (double bu : {2.0, 4.0, 7.2, 12.0}) {
      const FilterConstants c(ap, 1.0, bu);
      const auto power = [&](double beta) {
        return std::norm(EvalSharp(c, beta));
      };
      const double integral =
          AdaptiveSimpson(power, c.b_p - 50.0 * ap, c.b_p + 50.0 * ap, 1e-9);
      const double erb = integral / std::pow(ap, -2.0 * bu);
      const double q_brute = c.b_p / erb;
      const double q_closed = ClosedForm(c).q_erb;
      CHECK(std::abs(1.0 - q_brute / q_closed) < 1e-5);
    }
  }
}

TEST_CASE("extraction calibrates against the sharp closed forms") {
  const FilterConstants c(0.05, 1.0, 7.2);
  const Characteristics analytic = ClosedForm(c);
  const Characteristics numeric =
      ExtractNumeric(SampleResponse(FilterClass::kSharp, c));

  for (const std::string field :
       {"beta_peak", "q_3", "q_10", "q_15", "q_erb", "s_beta", "n_beta",
        "beta_max_n"}) {
    CHECK(std::abs(RelativeError(analytic, numeric, field)) < 1e-3);
  }
  // The default grid truncates both phase tails; the deterministic
  // shortfall at A_p = 0.05 is (atan(A_p/2) + atan(A_p/0.99)) / pi = 2.4%.
  const double eps_phi = RelativeError(analytic, numeric, "phi_accum");
  CHECK(eps_phi > 0.02);
  CHECK(eps_phi < 0.03);
  CHECK(HasCaveat(numeric, "lower bound"));
  CHECK(numeric.source == CharSource::kNumeric);
  CHECK(numeric.source_class == FilterClass::kSharp);
}

TEST_CASE("phase characteristics beat magnitude ones for gef") {
  const FilterConstants c(0.05, 1.0, 7.2);
  const Characteristics analytic = ClosedForm(c);
  const Characteristics numeric =
      ExtractNumeric(SampleResponse(FilterClass::kGefP, c));
  const double eps_qerb = RelativeError(analytic, numeric, "q_erb");
  const double eps_nbeta = RelativeError(analytic, numeric, "n_beta");
  CHECK(std::abs(eps_qerb) < 0.01);
  CHECK(std::abs(eps_nbeta) < std::abs(eps_qerb));
}

TEST_CASE("errors grow with A_p") {
  const auto gef_qerb_eps = [](double ap) {
    const FilterConstants c(ap, 1.0, 4.0);
    return RelativeError(ClosedForm(c),
                         ExtractNumeric(SampleResponse(FilterClass::kGefP, c)),
                         "q_erb");
  };
  CHECK(std::abs(gef_qerb_eps(0.2)) > std::abs(gef_qerb_eps(0.02)));
}

TEST_CASE("relative error convention") {
  const FilterConstants c(0.1, 1.0, 4.0);
  const Characteristics a = ClosedForm(c);
  Characteristics b = a;
  CHECK(RelativeError(a, b, "q_erb") == 0.0);
  b.q_erb = 0.98 * a.q_erb;
  CHECK(RelativeError(a, b, "q_erb") == doctest::Approx(0.02).epsilon(1e-12));
  CHECK_THROWS_AS(RelativeError(a, b, "no_such_field"), DomainError);
}

TEST_CASE("strict extraction reports unbracketed bandwidths") {
  const FilterConstants c(0.25, 1.0, 1.5);
  const FrequencyResponse fr = SampleResponse(FilterClass::kGefP, c);
  CHECK_THROWS_AS(ExtractNumeric(fr, {40.0}), ExtractionError);

  const Characteristics lenient =
      ExtractNumeric(fr, {10.0, 40.0}, ExtractMode::kLenient);
  CHECK(std::isnan(lenient.q_n.at(40.0)));
  CHECK(lenient.field_issues.count("q_40") == 1);
  CHECK(std::isfinite(lenient.q_erb));
}

TEST_CASE("peak at the grid edge is rejected") {
  // A rising ramp: the "peak" lands on the last sample.
  ArrayX beta = ArrayX::LinSpaced(64, 0.0, 1.0);
  ArrayXc raw(64);
  for (int i = 0; i < 64; ++i) raw[i] = Complex(1.0 + beta[i], 0.0);
  const FrequencyResponse fr = FrequencyResponse::FromRaw(beta, raw);
  CHECK_THROWS_AS(ExtractNumeric(fr), DomainError);
}

TEST_CASE("field accessor on q levels") {
  const Characteristics ch =
      ClosedForm(FilterConstants(0.1, 1.0, 4.0), {3, 10});
  CHECK(ch.Field("q_3") == ch.q_n.at(3));
  CHECK(ch.Field("q_10") == ch.q_n.at(10));
  CHECK(ch.Field("q_erb") == ch.q_erb);
  CHECK_THROWS_AS(ch.Field("q_15"), DomainError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace afd
