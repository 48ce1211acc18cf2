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
// Peak-centric filter characteristics: the closed forms in terms of the
// filter constants (valid exactly for the sharp approximation), numerical
// extraction of the same quantities from any sampled response, and the
// signed relative error between the two routes.

#ifndef AFD_CHARACTERISTICS_H_
#define AFD_CHARACTERISTICS_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "afd/response.h"

namespace afd {

enum class CharSource { kClosedForm, kNumeric };

struct Characteristics {
  FPType beta_peak = 0;             // peak normalized frequency
  std::map<FPType, FPType> q_n;     // n-dB quality factors, keyed by n
  FPType q_erb = 0;                 // ERB quality factor
  FPType s_beta = 0;                // downward convexity of mag_db at peak
  FPType beta_max_n = 0;            // where group delay is maximal
  FPType n_beta = 0;                // group delay (cycles) at beta_peak
  FPType n_beta_at_max = 0;         // group delay at beta_max_n
  FPType phi_accum = 0;             // total phase accumulation, cycles
  CharSource source = CharSource::kClosedForm;
  std::optional<FilterClass> source_class;
  // Soft findings: undefined Q_erb, tail-limited phi_accum, ERB tail above
  // threshold, or (lenient extraction) per-field failures.
  std::vector<std::string> caveats;
  std::map<std::string, std::string> field_issues;

  // Field accessor by name: "beta_peak", "q_erb", "q_<n>", "s_beta",
  // "n_beta", "beta_max_n", "phi_accum". Throws DomainError for unknown
  // names.
  FPType Field(const std::string& name) const;
};

// Canonical field name for an n-dB quality factor ("q_3", "q_10", ...).
std::string QnFieldName(FPType n);

// Characteristic ratios that depend on a single filter constant.
struct RatioKind {
  enum Kind {
    kAlpha,        // Q_erb / Q_10
    kG,            // Q_erb / N_beta
    kQerbOverQn,   // Q_erb / Q_n (n parameter)
    kErbTimesN,    // ERB_beta * N_beta
    kErb2TimesS,   // ERB_beta^2 * S_beta
    kBwnTimesN,    // BW_n * N_beta (n parameter)
    kBwn2TimesS,   // BW_n^2 * S_beta (n parameter)
    kSOverN,       // S_beta / N_beta   (A_p only)
    kPhiOverN,     // phi_accum / N_beta (A_p only)
  };
  Kind kind;
  FPType n = 0;

  static RatioKind Alpha() { return {kAlpha}; }
  static RatioKind G() { return {kG}; }
  static RatioKind QerbOverQn(FPType n) { return {kQerbOverQn, n}; }
  static RatioKind ErbTimesN() { return {kErbTimesN}; }
  static RatioKind Erb2TimesS() { return {kErb2TimesS}; }
  static RatioKind BwnTimesN(FPType n) { return {kBwnTimesN, n}; }
  static RatioKind Bwn2TimesS(FPType n) { return {kBwn2TimesS, n}; }
  static RatioKind SOverN() { return {kSOverN}; }
  static RatioKind PhiOverN() { return {kPhiOverN}; }

  bool DependsOnlyOnBu() const {
    return kind != kSOverN && kind != kPhiOverN;
  }
  bool DependsOnlyOnAp() const { return !DependsOnlyOnBu(); }
  std::string Name() const;
};

RatioKind ParseRatioKind(const std::string& token);

// Closed-form characteristics from the constants. Q_erb requires
// B_u > 1/2; below that it is set to NaN and flagged in caveats while the
// remaining fields are still returned. n_levels must lie in (0, 60].
Characteristics ClosedForm(const FilterConstants& c,
                           const std::set<FPType>& n_levels = {3, 10, 15});

// Closed-form value of a characteristic ratio.
FPType RatioValue(const RatioKind& kind, const FilterConstants& c);

enum class ExtractMode { kStrict, kLenient };

// Numerical extraction of the characteristics from a sampled response:
// parabolic peak interpolation, linear-interpolated n-dB crossings searched
// outward from the peak, trapezoid ERB integral, and 5-node fourth-order
// stencils for convexity and group delay. In strict mode a bandwidth that
// does not bracket or a non-concave peak throws ExtractionError; in lenient
// mode the affected fields become NaN and are listed in field_issues.
Characteristics ExtractNumeric(const FrequencyResponse& fr,
                               const std::set<FPType>& n_levels = {3, 10, 15},
                               ExtractMode mode = ExtractMode::kStrict);

// Signed relative error 1 - numeric/analytic for the named field; the sign
// is kept to show consistent over- or under-estimation.
FPType RelativeError(const Characteristics& analytic,
                     const Characteristics& numeric, const std::string& field);

}  // namespace afd

#endif  // AFD_CHARACTERISTICS_H_
