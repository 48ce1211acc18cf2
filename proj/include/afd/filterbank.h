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
// Human auditory filterbank constant tables across characteristic
// frequency, built from the psychoacoustic Q_erb source formulas and the
// inverse design pipeline. CF is in kHz throughout.

#ifndef AFD_FILTERBANK_H_
#define AFD_FILTERBANK_H_

#include <string>
#include <vector>

#include "afd/response.h"

namespace afd {

struct CfGrid {
  ArrayX cf_khz;
  enum Spacing { kLinear, kLogarithmic };
  Spacing spacing = kLogarithmic;

  static CfGrid Logarithmic(FPType lo_khz, FPType hi_khz, int points);
  static CfGrid Linear(FPType lo_khz, FPType hi_khz, int points);
  // Octave-dense human-range default: 40 log points on [0.125, 16] kHz.
  static CfGrid HumanDefault();
};

struct FilterbankRow {
  FPType cf_khz = 0;
  std::string q_erb_source;   // "q_sim" or "q_forw"
  FPType q_erb = 0;
  FPType a_p = 0;
  FPType b_p = 0;
  FPType b_u = 0;
  std::vector<std::string> flags;
};

struct FilterbankTable {
  std::string recipe;
  std::string cf_unit = "kHz";
  std::vector<FilterbankRow> rows;
};

// Q_erb from simultaneous notched-noise masking:
// (10^3 / 24.7) * CF / (4.37 CF + 1), CF in kHz.
FPType QSim(FPType cf_khz);

// Q_erb from forward masking: 11 * CF^0.27, CF in kHz, measured on
// [1, 8] kHz; values outside that window are extrapolations.
FPType QForw(FPType cf_khz);
bool QForwExtrapolated(FPType cf_khz);

// The CF-invariant tuning ratio used by the g1 recipes.
inline constexpr FPType kTuningRatioG1 = 1.25;

// Recipes: "historical" (B_u = 4 with Q_sim), "g1_qsim" and "g1_qforw"
// (B_u solved from g = 1.25, paired with Q_sim or Q_forw). Coefficients are
// recomputed from the gamma ratios at build time; the familiar rounded
// values (1.0186, 1.4334, 0.0252, 0.1303, 0.0354) are test checks, not
// inputs. b_p = 1 for every row.
FilterbankTable BuildTable(const std::string& recipe, const CfGrid& grid);

}  // namespace afd

#endif  // AFD_FILTERBANK_H_
