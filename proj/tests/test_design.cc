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

#include "afd/design.h"

namespace afd {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool HasWarning(const std::vector<std::string>& warnings,
                const std::string& needle) {
  for (const std::string& w : warnings) {
    if (w.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST_SUITE("design") {

TEST_CASE("estimate_bp") {
  CHECK(EstimateBp(std::nullopt) == 1.0);
  CHECK(EstimateBp(0.98) == 0.98);
  CHECK(EstimateBp(0.9) == 0.9);  // f_peak below CF is a valid design
  CHECK_THROWS_AS(EstimateBp(0.0), DomainError);
}

TEST_CASE("solve_bu from the tuning ratio") {
  const BuEstimate b1 = SolveBu(RatioKind::G(), 1.25, 1.0);
  CHECK(b1.type == BuEstimate::kPoint);
  CHECK(std::abs(b1.value - 7.2114218480675963) < 1e-9);
  CHECK(std::abs(b1.value - 7.2) < 0.05);
  CHECK(b1.warnings.empty());

  const BuEstimate b2 = SolveBu(RatioKind::G(), 2.0, 1.0);
  CHECK(std::abs(b2.value - 2.0) < 1e-6);

  const BuEstimate b3 = SolveBu(RatioKind::G(), 1.6, 1.0);
  CHECK(std::abs(b3.value - 4.0) < 1e-9);
}

TEST_CASE("solve_bu respects b_p in the g ratio") {
  // g scales with b_p, so observing g = 0.8 * 1.6 at b_p = 0.8 recovers 4.
  const BuEstimate b = SolveBu(RatioKind::G(), 0.8 * 1.6, 0.8);
  CHECK(std::abs(b.value - 4.0) < 1e-9);
}

TEST_CASE("solve_bu from alpha near the historical point") {
  const BuEstimate b = SolveBu(RatioKind::Alpha(), 1.8, 1.0);
  CHECK(b.type == BuEstimate::kPoint);
  CHECK(std::abs(b.value - 3.8684311690795336) < 1e-6);
  CHECK(std::abs(b.value - 3.86) < 0.05);
  // Alpha is categorically weak for point estimation.
  CHECK(HasWarning(b.warnings, "alpha"));
}

TEST_CASE("solve_bu sensitivity warning in the flat alpha region") {
  const BuEstimate b = SolveBu(RatioKind::Alpha(), 1.73, 1.0);
  CHECK(b.type == BuEstimate::kPoint);
  CHECK(HasWarning(b.warnings, "sensitivity"));
}

TEST_CASE("solve_bu lower bounds beyond the bracket") {
  const BuEstimate below = SolveBu(RatioKind::Alpha(), 1.70, 1.0);
  CHECK(below.type == BuEstimate::kLowerBound);
  CHECK(below.value == kBuBracketHi);

  const BuEstimate tiny_g = SolveBu(RatioKind::G(), 0.3, 1.0);
  CHECK(tiny_g.type == BuEstimate::kLowerBound);
}

TEST_CASE("solve_bu unattainable and misuse errors") {
  CHECK_THROWS_AS(SolveBu(RatioKind::G(), 2.2, 1.0), UnattainableError);
  CHECK_THROWS_AS(SolveBu(RatioKind::Alpha(), 2.5, 1.0), UnattainableError);
  CHECK_THROWS_AS(SolveBu(RatioKind::SOverN(), 100.0, 1.0), DomainError);
  CHECK_THROWS_AS(SolveBu(RatioKind::G(), 1.25, 0.0), DomainError);
}

TEST_CASE("solve_bu flags the envelope bound and branch ambiguity") {
  const BuEstimate b = SolveBu(RatioKind::G(), 2.1, 1.0);
  CHECK(b.type == BuEstimate::kPoint);
  CHECK(b.value < 1.5);
  CHECK(HasWarning(b.warnings, "envelope"));
  CHECK(HasWarning(b.warnings, "excluded branch"));
}

TEST_CASE("solve_bu inverts other exponent-identifying ratios") {
  const FilterConstants c(0.07, 1.0, 5.5);
  for (const RatioKind kind :
       {RatioKind::ErbTimesN(), RatioKind::Erb2TimesS(),
        RatioKind::BwnTimesN(3), RatioKind::Bwn2TimesS(3),
        RatioKind::QerbOverQn(3)}) {
    const double observed = RatioValue(kind, c);
    const BuEstimate est = SolveBu(kind, observed, c.b_p);
    CHECK(est.type == BuEstimate::kPoint);
    CHECK(std::abs(est.value - c.b_u) < 1e-7);
  }
}

TEST_CASE("solve_ap from each characteristic") {
  const double q_sim_1k = 7.5392607000957486;
  CHECK(std::abs(SolveAp(CharName::Qerb(), q_sim_1k, 1.0, 4.0) -
                 0.13510497597930179) < 1e-12);
  CHECK(std::abs(SolveAp(CharName::Qerb(), 11.0, 1.0, 7.2114218480675963) -
                 0.13042425384555102) < 1e-12);

  const FilterConstants c(0.085, 1.1, 6.3);
  const Characteristics ch = ClosedForm(c, {10});
  CHECK(std::abs(SolveAp(CharName::Qerb(), ch.q_erb, c.b_p, c.b_u) - c.a_p) <
        1e-12);
  CHECK(std::abs(SolveAp(CharName::Qn(10), ch.q_n.at(10), c.b_p, c.b_u) -
                 c.a_p) < 1e-12);
  CHECK(std::abs(SolveAp(CharName::Sbeta(), ch.s_beta, c.b_p, c.b_u) -
                 c.a_p) < 1e-12);
  CHECK(std::abs(SolveAp(CharName::Nbeta(), ch.n_beta, c.b_p, c.b_u) -
                 c.a_p) < 1e-12);

  CHECK_THROWS_AS(SolveAp(CharName::Qerb(), -1.0, 1.0, 4.0), DomainError);
  CHECK_THROWS_AS(SolveAp(CharName::Qerb(), 10.0, 1.0, 0.4), DomainError);
}

TEST_CASE("solve_ap from the A_p-only ratios") {
  CHECK(std::abs(SolveApFromRatio(RatioKind::PhiOverN(), kPi * 0.05) - 0.05) <
        1e-15);
  const double s_over_n =
      RatioValue(RatioKind::SOverN(), FilterConstants(0.1, 1.0, 4.0));
  CHECK(std::abs(SolveApFromRatio(RatioKind::SOverN(), s_over_n) - 0.1) <
        1e-14);
  CHECK_THROWS_AS(SolveApFromRatio(RatioKind::G(), 1.6), DomainError);
}

TEST_CASE("run_design: chinchilla ratio with forward-masking Q") {
  DesignSpec spec;
  spec.bu_source = std::make_pair(RatioKind::G(), 1.25);
  spec.ap_source = std::make_pair(CharName::Qerb(), 11.0);
  const DesignResult result = RunDesign(spec);
  CHECK(result.constants.b_p == 1.0);
  CHECK(std::abs(result.constants.b_u - 7.2114218480675963) < 1e-9);
  CHECK(std::abs(result.constants.a_p - 0.1303) < 2e-4);
}

TEST_CASE("run_design: historical exponent with simultaneous-masking Q") {
  DesignSpec spec;
  spec.bu_source = 4.0;
  spec.ap_source = std::make_pair(CharName::Qerb(), 7.5392607000957486);
  const DesignResult result = RunDesign(spec);
  CHECK(std::abs(result.constants.a_p - 0.1351) < 1e-3);
}

TEST_CASE("run_design gates alpha behind the override") {
  DesignSpec spec;
  spec.bu_source = std::make_pair(RatioKind::Alpha(), 1.75);
  spec.ap_source = std::make_pair(CharName::Qerb(), 10.0);
  CHECK_THROWS_AS(RunDesign(spec), DomainError);

  spec.allow_alpha = true;
  const DesignResult result = RunDesign(spec);
  CHECK(result.constants.b_u > 5.0);
  CHECK(HasWarning(result.warnings, "alpha"));
}

TEST_CASE("run_design advises against the {Q_erb, Q_10} set") {
  DesignSpec spec;
  spec.allow_alpha = true;
  spec.bu_source = std::make_pair(RatioKind::Alpha(), 1.8);
  spec.ap_source = std::make_pair(CharName::Qn(10), 5.0);
  const DesignResult result = RunDesign(spec);
  CHECK(HasWarning(result.warnings, "advisory"));
}

TEST_CASE("run_design raises diagnostics for out-of-regime results") {
  DesignSpec spec;
  spec.bu_source = 4.0;
  spec.ap_source = std::make_pair(CharName::Qerb(), 3.0);  // A_p ~ 0.34
  const DesignResult result = RunDesign(spec);
  CHECK(result.constants.a_p > 0.25);
  CHECK(HasWarning(result.warnings, "sharp-filter approximation"));

  DesignSpec low;
  low.bu_source = 1.2;
  low.ap_source = std::make_pair(CharName::Nbeta(), 10.0);
  CHECK(HasWarning(RunDesign(low).warnings, "envelope"));
}

TEST_CASE("run_design propagates unattainable ratios") {
  DesignSpec spec;
  spec.bu_source = std::make_pair(RatioKind::G(), 3.0);
  spec.ap_source = std::make_pair(CharName::Qerb(), 10.0);
  CHECK_THROWS_AS(RunDesign(spec), UnattainableError);

  // A lower-bound-only result cannot produce constants either.
  DesignSpec lb;
  lb.allow_alpha = true;
  lb.bu_source = std::make_pair(RatioKind::Alpha(), 1.70);
  lb.ap_source = std::make_pair(CharName::Qerb(), 10.0);
  CHECK_THROWS_AS(RunDesign(lb), UnattainableError);
}

TEST_CASE("A_p-first and B_u-first orders agree exactly") {
  const FilterConstants c(0.07, 1.0, 5.0);
  const double g_obs = RatioValue(RatioKind::G(), c);
  const double phi_over_n = RatioValue(RatioKind::PhiOverN(), c);

  DesignSpec spec;
  spec.bu_source = std::make_pair(RatioKind::G(), g_obs);
  spec.ap_source = std::make_pair(RatioKind::PhiOverN(), phi_over_n);
  const DesignResult via_pipeline = RunDesign(spec);

  // Both inversions are independent algebra, so doing A_p first is the
  // same arithmetic.
  const double ap_first = SolveApFromRatio(RatioKind::PhiOverN(), phi_over_n);
  const double bu_second = SolveBu(RatioKind::G(), g_obs, 1.0).value;
  CHECK(via_pipeline.constants.a_p == ap_first);
  CHECK(via_pipeline.constants.b_u == bu_second);
}

TEST_CASE("round-trip recovery over random in-regime constants") {
  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> ap(0.02, 0.2);
  std::uniform_real_distribution<double> bp(0.7, 1.3);
  std::uniform_real_distribution<double> bu(2.0, 12.0);
  for (int k = 0; k < 100; ++k) {
    const FilterConstants c(ap(rng), bp(rng), bu(rng));
    const Characteristics ch = ClosedForm(c);
    DesignSpec spec;
    spec.beta_peak = c.b_p;
    spec.bu_source = std::make_pair(RatioKind::G(), RatioValue(RatioKind::G(), c));
    spec.ap_source = std::make_pair(CharName::Qerb(), ch.q_erb);
    const DesignResult result = RunDesign(spec);
    CHECK(std::abs(result.constants.a_p - c.a_p) < 1e-9 * c.a_p);
    CHECK(result.constants.b_p == c.b_p);
    CHECK(std::abs(result.constants.b_u - c.b_u) < 1e-9 * c.b_u);
  }
}

TEST_CASE("raising g1 lowers the exponent estimate") {
  const double hi = SolveBu(RatioKind::G(), 1.2, 1.0).value;
  const double lo = SolveBu(RatioKind::G(), 1.3, 1.0).value;
  CHECK(lo < hi);
}

TEST_CASE("bu_constraints baseline entries") {
  const std::vector<BuConstraint> list = BuConstraintsFrom({});
  REQUIRE(list.size() == 2);
  CHECK(list[0].label == "impulse-envelope growth");
  CHECK(list[0].kind == BuConstraint::kLowerBound);
  CHECK(list[0].lo == 1.5);
  CHECK(list[1].label == "historical");
  CHECK(list[1].kind == BuConstraint::kPoint);
  CHECK(list[1].lo == 4.0);
}

TEST_CASE("bu_constraints from the reported observations") {
  ConstraintInputs inputs;
  inputs.alpha_range = std::make_pair(1.7, 1.8);
  inputs.g1 = 1.25;
  inputs.r_range = std::make_pair(0.8, 1.0);
  inputs.eta_range = std::make_pair(1.0, 2.0);
  const std::vector<BuConstraint> list = BuConstraintsFrom(inputs);
  REQUIRE(list.size() == 5);

  CHECK(list[1].label == "alpha range");
  CHECK(list[1].kind == BuConstraint::kLowerBound);
  CHECK(std::abs(list[1].lo - 3.86) < 0.01);

  CHECK(list[2].label == "g = g1");
  CHECK(list[2].kind == BuConstraint::kPoint);
  CHECK(std::abs(list[2].lo - 7.2) < 0.05);

  CHECK(list[3].label == "g = g2 = r*eta");
  CHECK(list[3].kind == BuConstraint::kLowerBound);
  CHECK(std::abs(list[3].lo - 2.0) < 1e-6);

  inputs.include_g2_upper = true;
  const std::vector<BuConstraint> with_upper = BuConstraintsFrom(inputs);
  CHECK(with_upper[3].kind == BuConstraint::kInterval);
  CHECK(std::abs(with_upper[3].hi - 18.855757561979369) < 1e-6);
}

TEST_CASE("bu_constraints input validation") {
  ConstraintInputs bad;
  bad.alpha_range = std::make_pair(1.8, 1.7);
  CHECK_THROWS_AS(BuConstraintsFrom(bad), DomainError);

  ConstraintInputs half;
  half.r_range = std::make_pair(0.8, 1.0);
  CHECK_THROWS_AS(BuConstraintsFrom(half), DomainError);
}

TEST_CASE("characteristic name parsing") {
  CHECK(ParseCharName("q_erb").kind == CharName::kQerb);
  CHECK(ParseCharName("q10").n == 10.0);
  CHECK(ParseCharName("q_3").n == 3.0);
  CHECK(ParseCharName("s_beta").kind == CharName::kSbeta);
  CHECK(ParseCharName("n_beta").kind == CharName::kNbeta);
  CHECK_THROWS_AS(ParseCharName("zzz"), DomainError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace afd
