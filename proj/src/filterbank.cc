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

#include "afd/filterbank.h"

#include <cmath>

#include "afd/design.h"

namespace afd {

namespace {

void ValidateRange(FPType lo, FPType hi, int points) {
  if (!(lo > 0) || !(hi >= lo)) throw DomainError("CfGrid: bad CF range");
  if (lo < 0.02 || hi > 20.0) {
    throw DomainError("CfGrid: CF must lie within [0.02, 20] kHz");
  }
  if (points < 1) throw DomainError("CfGrid: need at least one point");
  if (points == 1 && hi != lo) {
    throw DomainError("CfGrid: a single point needs lo == hi");
  }
}

}  // namespace

CfGrid CfGrid::Logarithmic(FPType lo_khz, FPType hi_khz, int points) {
  ValidateRange(lo_khz, hi_khz, points);
  CfGrid grid;
  grid.spacing = kLogarithmic;
  grid.cf_khz.resize(points);
  if (points == 1) {
    grid.cf_khz[0] = lo_khz;
    return grid;
  }
  const FPType log_lo = std::log(lo_khz);
  const FPType log_hi = std::log(hi_khz);
  for (int i = 0; i < points; ++i) {
    grid.cf_khz[i] = std::exp(log_lo + (log_hi - log_lo) * i / (points - 1));
  }
  return grid;
}

CfGrid CfGrid::Linear(FPType lo_khz, FPType hi_khz, int points) {
  ValidateRange(lo_khz, hi_khz, points);
  CfGrid grid;
  grid.spacing = kLinear;
  grid.cf_khz.resize(points);
  if (points == 1) {
    grid.cf_khz[0] = lo_khz;
    return grid;
  }
  for (int i = 0; i < points; ++i) {
    grid.cf_khz[i] = lo_khz + (hi_khz - lo_khz) * i / (points - 1);
  }
  return grid;
}

CfGrid CfGrid::HumanDefault() { return Logarithmic(0.125, 16.0, 40); }

FPType QSim(FPType cf_khz) {
  if (!(cf_khz > 0)) throw DomainError("QSim: CF must be positive");
  return (1000.0 / 24.7) * cf_khz / (4.37 * cf_khz + 1.0);
}

FPType QForw(FPType cf_khz) {
  if (!(cf_khz > 0)) throw DomainError("QForw: CF must be positive");
  return 11.0 * std::pow(cf_khz, 0.27);
}

bool QForwExtrapolated(FPType cf_khz) {
  return cf_khz < 1.0 || cf_khz > 8.0;
}

FilterbankTable BuildTable(const std::string& recipe, const CfGrid& grid) {
  std::string canonical = recipe;
  for (char& ch : canonical) {
    if (ch == '-') ch = '_';
  }
  const bool historical = canonical == "historical";
  const bool g1_qsim = canonical == "g1_qsim";
  const bool g1_qforw = canonical == "g1_qforw";
  if (!historical && !g1_qsim && !g1_qforw) {
    throw DomainError("BuildTable: unknown recipe " + recipe);
  }

  // B_u is CF-invariant by construction: fixed for the historical recipe,
  // solved once from the tuning ratio for the g1 recipes.
  const FPType b_u =
      historical ? 4.0 : SolveBu(RatioKind::G(), kTuningRatioG1, 1.0).value;
  const bool use_forw = g1_qforw;

  FilterbankTable table;
  table.recipe = canonical;
  table.rows.reserve(grid.cf_khz.size());
  for (Eigen::Index i = 0; i < grid.cf_khz.size(); ++i) {
    const FPType cf = grid.cf_khz[i];
    FilterbankRow row;
    row.cf_khz = cf;
    row.q_erb_source = use_forw ? "q_forw" : "q_sim";
    row.q_erb = use_forw ? QForw(cf) : QSim(cf);
    row.b_p = 1.0;
    row.b_u = b_u;
    row.a_p = SolveAp(CharName::Qerb(), row.q_erb, row.b_p, row.b_u);
    if (use_forw && QForwExtrapolated(cf)) {
      row.flags.push_back("extrapolated");
    }
    if (row.a_p > kSharpRegimeMaxAp) {
      row.flags.push_back("sharp-regime-exceeded");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace afd
