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
// Transfer-function and impulse-response evaluation for the gammatone-family
// filter classes, all parameterized by the same constants (A_p, b_p, B_u)
// and expressed in normalized frequency beta = f / CF and scaled time
// t~ = 2 pi CF t.

#ifndef AFD_RESPONSE_H_
#define AFD_RESPONSE_H_

#include <optional>
#include <string>

#include "afd/common.h"

namespace afd {

// The constants parameterizing every in-scope transfer function: the
// repeated pole is p = -A_p + i b_p, raised to the exponent -B_u.
struct FilterConstants {
  FPType a_p;
  FPType b_p;
  FPType b_u;

  FilterConstants(FPType ap, FPType bp, FPType bu);

  // True when A_p is small enough that the sharp-filter approximation is
  // trustworthy; above kSharpRegimeMaxAp results carry a warning, not an
  // error.
  bool InSharpRegime() const { return a_p <= kSharpRegimeMaxAp; }
};

enum class FilterClass { kSharp, kGefP, kV, kPGtf };

std::string FilterClassName(FilterClass c);
FilterClass ParseFilterClass(const std::string& name);

// A sampled, normalized frequency response. Magnitude is peak-normalized so
// max(mag_db) == 0 exactly; phase is unwrapped and referenced so
// phase_cycles[0] == 0. `value` holds the complex response divided by the
// peak magnitude (a real scalar), so a positive gain applied to the raw
// response leaves every field unchanged.
struct FrequencyResponse {
  ArrayX beta;
  ArrayXc value;
  ArrayX mag_db;
  ArrayX phase_cycles;
  std::optional<FilterClass> source_class;

  // Builds a normalized response from raw complex samples; validates the
  // type invariants (lengths equal and >= 3, beta strictly increasing and
  // nonnegative).
  static FrequencyResponse FromRaw(const ArrayX& beta, const ArrayXc& raw,
                                   std::optional<FilterClass> cls = {});
};

struct ImpulseResponse {
  ArrayX t_tilde;
  ArrayX value;
};

// Sharp approximation: (i beta - p)^(-B_u), principal branch, raw gain.
Complex EvalSharp(const FilterConstants& c, FPType beta);

// Pole-pair (GEF/P) filter: ((s - p)(s - conj(p)))^(-B_u) at s = i beta.
Complex EvalGefP(const FilterConstants& c, FPType beta);

// V filter: the pole-pair response times the real zero (s + A_p).
Complex EvalV(const FilterConstants& c, FPType beta);

// Cosine-form gammatone impulse response
// g(t~) = exp(-A_p t~) t~^(B_u - 1) cos(b_p t~ - B_u pi/2) sampled on
// t_grid (increasing, starting at 0).
ImpulseResponse ImpulsePGtf(const FilterConstants& c, const ArrayX& t_grid);

// Frequency response of the cosine-form gammatone by numerical Fourier
// integral of its impulse response. The time window extends until the
// envelope tail falls below 1e-8 of its maximum (NumericalError if that is
// unreachable). beta_grid must be increasing within [0, 4 b_p].
FrequencyResponse PGtfFrequencyResponse(const FilterConstants& c,
                                        const ArrayX& beta_grid);

// Sampling grid: `base_points` uniform points on [lo_factor, hi_factor] b_p
// with a x16 density refinement on [b_p - 5 A_p, b_p + 5 A_p].
ArrayX BetaGrid(const FilterConstants& c, FPType lo_factor, FPType hi_factor,
                Eigen::Index base_points);

// Default sampling grid: 4096 uniform points on [0.01, 3] b_p with a x16
// density refinement on [b_p - 5 A_p, b_p + 5 A_p].
ArrayX DefaultBetaGrid(const FilterConstants& c);

// Evaluates the chosen class on the grid and normalizes per the
// FrequencyResponse contract. The grid must be increasing with at least 64
// points and span at least [0.05, 3] b_p.
FrequencyResponse SampleResponse(FilterClass cls, const FilterConstants& c,
                                 const ArrayX& beta_grid);
FrequencyResponse SampleResponse(FilterClass cls, const FilterConstants& c);

// Magnitude argmax located by golden-section refinement of a dense scan.
// Supported for the closed-form evaluators (Sharp, GefP, V); the P-GTF peak
// is only available through numeric extraction of its sampled response.
FPType NumericPeakBeta(FilterClass cls, const FilterConstants& c);

}  // namespace afd

#endif  // AFD_RESPONSE_H_
