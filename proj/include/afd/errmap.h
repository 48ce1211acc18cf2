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
// Validation error maps: signed relative error of the closed-form
// characteristics against numeric extraction, per realizable class, over
// the (A_p, B_u) plane at fixed b_p = 1.

#ifndef AFD_ERRMAP_H_
#define AFD_ERRMAP_H_

#include <string>
#include <vector>

#include "afd/characteristics.h"

namespace afd {

enum class CellStatus : int {
  kOk = 0,
  kUnbracketed,       // n-dB bandwidth never crossed within the grid
  kNotConcave,        // negative convexity at the peak
  kFailed,            // whole-cell extraction failure
};

std::string CellStatusName(CellStatus s);

struct ErrorGrid {
  ArrayX ap_axis;
  ArrayX bu_axis;
  FilterClass filter_class = FilterClass::kGefP;
  FPType b_p = 1.0;
  std::vector<std::string> characteristics;
  // One (ap x bu) matrix of signed errors per characteristic, aligned with
  // `characteristics`; failed cells hold NaN with a non-Ok status.
  std::vector<Eigen::MatrixXd> epsilon;
  std::vector<Eigen::MatrixXi> status;

  Eigen::Index CharIndex(const std::string& name) const;
};

// In sweeps, "n_beta" compares the numeric group-delay maximum against the
// closed form; for realizable classes that is the N_beta the validation
// figures show (the delay read exactly at the magnitude peak is identically
// B_u / (2 pi A_p) for the pole-pair class).
inline const std::vector<std::string> kDefaultSweepCharacteristics = {
    "q_erb", "q_3", "q_10", "s_beta", "n_beta", "beta_peak"};

// Runs sample -> extract -> relative-error per cell. Cells are pure and
// independent; with threads > 1 they are evaluated concurrently and written
// to disjoint slots, so the result is identical for any thread count.
// Sharp-class sweeps are calibration-only and must be requested explicitly.
ErrorGrid Sweep(FilterClass cls, const ArrayX& ap_axis, const ArrayX& bu_axis,
                const std::vector<std::string>& characteristics =
                    kDefaultSweepCharacteristics,
                bool allow_sharp = false, int threads = 0);

// Default 24 x 24 sweep over A_p in [0.02, 0.25], B_u in [1.5, 12].
ErrorGrid DefaultSweep(FilterClass cls, bool allow_sharp = false,
                       int threads = 0);

// Long-format CSV: class, characteristic, a_p, b_u, epsilon, status.
void WriteCsv(const ErrorGrid& grid, std::ostream& out);

// Fraction of (characteristic, cell) entries that failed extraction.
FPType FailureFraction(const ErrorGrid& grid);

}  // namespace afd

#endif  // AFD_ERRMAP_H_
