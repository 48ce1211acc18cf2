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
//
// The inverse pipeline: estimate b_p from the peak location, B_u from a
// single-constant characteristic ratio by a bracketed nonlinear solve, and
// A_p from one remaining characteristic by direct algebra.

#ifndef AFD_DESIGN_H_
#define AFD_DESIGN_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "afd/characteristics.h"

namespace afd {

// B_u search bracket. Below 1 a second alpha branch exists but contradicts
// the impulse-envelope constraint, so it is excluded by policy.
inline constexpr FPType kBuBracketLo = 1.001;
inline constexpr FPType kBuBracketHi = 50.0;
// Envelope growth-then-decay requires B_u >= 3/2.
inline constexpr FPType kBuEnvelopeMin = 1.5;
// |dB_u/d(ratio)| above this at the root marks the estimate unreliable.
inline constexpr FPType kSensitivityLimit = 50.0;

// b_p from an observed peak location, defaulting to 1 when none is given.
FPType EstimateBp(std::optional<FPType> beta_peak);

struct BuEstimate {
  enum Type { kPoint, kLowerBound };
  Type type = kPoint;
  FPType value = 0;
  std::vector<std::string> warnings;
};

// Solves ratio(B_u) = observed on the monotone branch of (1.001, 50].
// Ratios with an interior extremum (g peaks near B_u = 1.35) are inverted on
// the branch from the extremum toward 50. Values reachable only beyond
// B_u = 50 come back as a lower bound; values off the attainable range throw
// UnattainableError. A_p-only ratios are rejected.
BuEstimate SolveBu(const RatioKind& kind, FPType observed, FPType b_p);

// A characteristic usable to solve for A_p once b_p and B_u are known.
struct CharName {
  enum Kind { kQerb, kQn, kSbeta, kNbeta };
  Kind kind;
  FPType n = 0;

  static CharName Qerb() { return {kQerb}; }
  static CharName Qn(FPType n) { return {kQn, n}; }
  static CharName Sbeta() { return {kSbeta}; }
  static CharName Nbeta() { return {kNbeta}; }
  std::string Name() const;
};

CharName ParseCharName(const std::string& token);

// Inverts the closed-form expression of the named characteristic for A_p.
FPType SolveAp(const CharName& characteristic, FPType observed, FPType b_p,
               FPType b_u);

// A_p directly from one of the A_p-only ratios.
FPType SolveApFromRatio(const RatioKind& kind, FPType observed);

struct DesignSpec {
  std::optional<FPType> beta_peak;
  // Either (ratio, observed value) or a fixed exponent.
  std::variant<std::pair<RatioKind, FPType>, FPType> bu_source;
  // Either (characteristic, observed value) or (A_p-only ratio, observed).
  std::variant<std::pair<CharName, FPType>, std::pair<RatioKind, FPType>>
      ap_source;
  // Alpha varies too slowly with B_u to identify it; using it as a B_u
  // source requires this explicit override.
  bool allow_alpha = false;
};

struct DesignResult {
  FilterConstants constants;
  std::vector<std::string> warnings;
};

// Runs b_p -> B_u -> A_p and gathers every advisory raised along the way
// (solver sensitivity, envelope bound, sharp-regime excess, discouraged
// characteristic sets).
DesignResult RunDesign(const DesignSpec& spec);

struct BuConstraint {
  enum Kind { kLowerBound, kPoint, kInterval };
  std::string label;
  Kind kind;
  FPType lo = 0;
  FPType hi = 0;
  std::string provenance;
};

struct ConstraintInputs {
  std::optional<std::pair<FPType, FPType>> alpha_range;
  std::optional<FPType> g1;
  std::optional<std::pair<FPType, FPType>> r_range;
  std::optional<std::pair<FPType, FPType>> eta_range;
  // The upper bound implied by the low end of g2 = r * eta is unreliable
  // (B_u is extremely sensitive to g there) and is suppressed by default.
  bool include_g2_upper = false;
};

// Assembles the exponent constraints: the always-on envelope bound, a lower
// bound from the alpha range, a point estimate from g1, a lower bound from
// the g2 = r * eta range, and the historical reference value.
std::vector<BuConstraint> BuConstraintsFrom(const ConstraintInputs& inputs);

}  // namespace afd

#endif  // AFD_DESIGN_H_
