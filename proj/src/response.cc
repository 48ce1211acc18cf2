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

#include "afd/response.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "afd/numerics.h"

namespace afd {

namespace {

constexpr FPType kPi = 3.14159265358979323846;
constexpr FPType kTwoPi = 2.0 * kPi;

}  // namespace

FilterConstants::FilterConstants(FPType ap, FPType bp, FPType bu)
    : a_p(ap), b_p(bp), b_u(bu) {
  if (!(ap > 0) || !(bp > 0) || !(bu > 0)) {
    std::ostringstream msg;
    msg << "FilterConstants must be strictly positive, got A_p=" << ap
        << " b_p=" << bp << " B_u=" << bu;
    throw DomainError(msg.str());
  }
}

std::string FilterClassName(FilterClass c) {
  switch (c) {
    case FilterClass::kSharp: return "sharp";
    case FilterClass::kGefP: return "gef";
    case FilterClass::kV: return "v";
    case FilterClass::kPGtf: return "pgtf";
  }
  return "unknown";
}

FilterClass ParseFilterClass(const std::string& name) {
  if (name == "sharp") return FilterClass::kSharp;
  if (name == "gef" || name == "gefp" || name == "p") return FilterClass::kGefP;
  if (name == "v") return FilterClass::kV;
  if (name == "pgtf" || name == "gtf") return FilterClass::kPGtf;
  throw DomainError("unknown filter class: " + name);
}

FrequencyResponse FrequencyResponse::FromRaw(const ArrayX& beta,
                                             const ArrayXc& raw,
                                             std::optional<FilterClass> cls) {
  const Eigen::Index n = beta.size();
  if (n < 3 || raw.size() != n) {
    throw DomainError("FrequencyResponse: need >= 3 samples of equal length");
  }
  if (beta[0] < 0) throw DomainError("FrequencyResponse: beta must be >= 0");
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(beta[i] > beta[i - 1])) {
      throw DomainError("FrequencyResponse: beta must be strictly increasing");
    }
  }

  ArrayX power(n);
  for (Eigen::Index i = 0; i < n; ++i) power[i] = std::norm(raw[i]);
  Eigen::Index peak = 0;
  power.maxCoeff(&peak);
  const FPType peak_power = power[peak];
  if (!(peak_power > 0) || !std::isfinite(peak_power)) {
    throw NumericalError("FrequencyResponse: degenerate peak magnitude");
  }
  // Dividing by the peak magnitude (a real scalar) keeps every later ratio
  // exactly invariant under a power-of-two gain on the raw samples.
  const FPType peak_mag = std::sqrt(peak_power);

  FrequencyResponse fr;
  fr.beta = beta;
  fr.source_class = cls;
  fr.value.resize(n);
  fr.mag_db.resize(n);
  fr.phase_cycles.resize(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    fr.value[i] = Complex(raw[i].real() / peak_mag, raw[i].imag() / peak_mag);
    fr.mag_db[i] = 10.0 * std::log10(power[i] / peak_power);
  }
  fr.mag_db[peak] = 0.0;

  // Nearest-branch unwrap; the grid density contract keeps true increments
  // under half a cycle.
  FPType offset = 0.0;
  FPType prev = std::atan2(fr.value[0].imag(), fr.value[0].real());
  fr.phase_cycles[0] = prev;
  for (Eigen::Index i = 1; i < n; ++i) {
    const FPType cur = std::atan2(fr.value[i].imag(), fr.value[i].real());
    FPType d = cur - prev;
    if (d > kPi) {
      offset -= kTwoPi;
    } else if (d <= -kPi) {
      offset += kTwoPi;
    }
    fr.phase_cycles[i] = cur + offset;
    prev = cur;
  }
  const FPType first = fr.phase_cycles[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    fr.phase_cycles[i] = (fr.phase_cycles[i] - first) / kTwoPi;
  }
  fr.phase_cycles[0] = 0.0;
  return fr;
}

Complex EvalSharp(const FilterConstants& c, FPType beta) {
  return ComplexPow(Complex(c.a_p, beta - c.b_p), -c.b_u);
}

Complex EvalGefP(const FilterConstants& c, FPType beta) {
  const Complex pole_pair =
      Complex(c.a_p, beta - c.b_p) * Complex(c.a_p, beta + c.b_p);
  return ComplexPow(pole_pair, -c.b_u);
}

Complex EvalV(const FilterConstants& c, FPType beta) {
  return EvalGefP(c, beta) * Complex(c.a_p, beta);
}

ImpulseResponse ImpulsePGtf(const FilterConstants& c, const ArrayX& t_grid) {
  const Eigen::Index n = t_grid.size();
  if (n < 1 || t_grid[0] != 0.0) {
    throw DomainError("ImpulsePGtf: t_grid must start at 0");
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("ImpulsePGtf: t_grid must be increasing");
    }
  }
  ImpulseResponse ir;
  ir.t_tilde = t_grid;
  ir.value.resize(n);
  const FPType phase_shift = c.b_u * kPi / 2.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const FPType t = t_grid[i];
    if (t == 0.0) {
      ir.value[i] = (c.b_u > 1.0) ? 0.0 : std::cos(-phase_shift);
      continue;
    }
    ir.value[i] = std::exp(-c.a_p * t) * std::pow(t, c.b_u - 1.0) *
                  std::cos(c.b_p * t - phase_shift);
  }
  return ir;
}

namespace {

// Envelope of the cosine-form impulse response, t~^(B_u-1) exp(-A_p t~).
FPType LogEnvelope(const FilterConstants& c, FPType t) {
  return (c.b_u - 1.0) * std::log(t) - c.a_p * t;
}

}  // namespace

FrequencyResponse PGtfFrequencyResponse(const FilterConstants& c,
                                        const ArrayX& beta_grid) {
  if (beta_grid.size() < 3) {
    throw DomainError("PGtfFrequencyResponse: grid too small");
  }
  if (beta_grid[0] < 0 || beta_grid[beta_grid.size() - 1] > 4.0 * c.b_p) {
    throw DomainError("PGtfFrequencyResponse: grid must lie in [0, 4 b_p]");
  }

  // >= 40 samples per carrier cycle and fine enough for the envelope.
  const FPType dt = std::min(kTwoPi / (40.0 * c.b_p), 0.05 / c.a_p);
  const FPType t_peak = std::max((c.b_u - 1.0) / c.a_p, dt);
  FPType horizon = (c.b_u - 1.0) / c.a_p + 25.0 / c.a_p;
  const FPType horizon_cap = (c.b_u - 1.0) / c.a_p + 400.0 / c.a_p;
  const FPType log_tail_limit = std::log(1e-8);
  while (LogEnvelope(c, horizon) - LogEnvelope(c, t_peak) > log_tail_limit) {
    horizon += 10.0 / c.a_p;
    if (horizon > horizon_cap) {
      throw NumericalError(
          "PGtfFrequencyResponse: envelope tail criterion unreachable");
    }
  }

  const Eigen::Index steps = static_cast<Eigen::Index>(horizon / dt) + 1;
  ArrayX t(steps);
  for (Eigen::Index k = 0; k < steps; ++k) t[k] = k * dt;
  const ImpulseResponse ir = ImpulsePGtf(c, t);

  ArrayX weighted = ir.value * dt;
  weighted[0] *= 0.5;
  weighted[steps - 1] *= 0.5;

  // H(beta) = sum_k w_k g_k exp(-i beta t_k) with the rotator advanced by a
  // complex recurrence, re-seeded periodically to stop drift.
  ArrayXc raw(beta_grid.size());
  for (Eigen::Index j = 0; j < beta_grid.size(); ++j) {
    const FPType beta = beta_grid[j];
    const Complex step = std::polar(FPType(1.0), -beta * dt);
    Complex rot(1.0, 0.0);
    Complex acc(0.0, 0.0);
    for (Eigen::Index k = 0; k < steps; ++k) {
      if ((k & 0x0fff) == 0) rot = std::polar(FPType(1.0), -beta * t[k]);
      acc += weighted[k] * rot;
      rot *= step;
    }
    raw[j] = acc;
  }
  return FrequencyResponse::FromRaw(beta_grid, raw, FilterClass::kPGtf);
}

ArrayX BetaGrid(const FilterConstants& c, FPType lo_factor, FPType hi_factor,
                Eigen::Index base_points) {
  if (!(lo_factor > 0) || !(hi_factor > lo_factor) || base_points < 64) {
    throw DomainError("BetaGrid: bad grid parameters");
  }
  const FPType lo = lo_factor * c.b_p;
  const FPType hi = hi_factor * c.b_p;
  const FPType base_step = (hi - lo) / (base_points - 1);
  const FPType fine_step = base_step / 16.0;

  const FPType refine_lo = std::max(lo, c.b_p - 5.0 * c.a_p);
  const FPType refine_hi = std::min(hi, c.b_p + 5.0 * c.a_p);

  std::vector<FPType> pts;
  pts.reserve(base_points + 16 * 4096);
  const FPType guard = 0.25 * fine_step;
  for (Eigen::Index i = 0; i < base_points; ++i) {
    const FPType b = lo + i * base_step;
    if (b > refine_lo - guard && b < refine_hi + guard) continue;
    pts.push_back(b);
  }
  for (FPType b = refine_lo; b <= refine_hi + guard; b += fine_step) {
    pts.push_back(std::min(b, hi));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [guard](FPType a, FPType b) { return b - a < guard; }),
            pts.end());

  ArrayX grid(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) grid[i] = pts[i];
  return grid;
}

ArrayX DefaultBetaGrid(const FilterConstants& c) {
  return BetaGrid(c, 0.01, 3.0, 4096);
}

namespace {

void ValidateSampleGrid(const FilterConstants& c, const ArrayX& grid) {
  if (grid.size() < 64) {
    throw DomainError("SampleResponse: grid needs at least 64 points");
  }
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw DomainError("SampleResponse: grid must be strictly increasing");
    }
  }
  const FPType tol = 1e-12 * c.b_p;
  if (grid[0] > 0.05 * c.b_p + tol || grid[grid.size() - 1] < 3.0 * c.b_p - tol) {
    throw DomainError("SampleResponse: grid must span [0.05, 3] * b_p");
  }
}

}  // namespace

FrequencyResponse SampleResponse(FilterClass cls, const FilterConstants& c,
                                 const ArrayX& beta_grid) {
  ValidateSampleGrid(c, beta_grid);
  if (cls == FilterClass::kPGtf) {
    return PGtfFrequencyResponse(c, beta_grid);
  }
  ArrayXc raw(beta_grid.size());
  for (Eigen::Index i = 0; i < beta_grid.size(); ++i) {
    switch (cls) {
      case FilterClass::kSharp: raw[i] = EvalSharp(c, beta_grid[i]); break;
      case FilterClass::kGefP: raw[i] = EvalGefP(c, beta_grid[i]); break;
      case FilterClass::kV: raw[i] = EvalV(c, beta_grid[i]); break;
      case FilterClass::kPGtf: break;  // handled above
    }
  }
  return FrequencyResponse::FromRaw(beta_grid, raw, cls);
}

FrequencyResponse SampleResponse(FilterClass cls, const FilterConstants& c) {
  return SampleResponse(cls, c, DefaultBetaGrid(c));
}

FPType NumericPeakBeta(FilterClass cls, const FilterConstants& c) {
  if (cls == FilterClass::kPGtf) {
    throw DomainError(
        "NumericPeakBeta: P-GTF peaks come from numeric extraction");
  }
  const auto magnitude = [&](FPType beta) {
    switch (cls) {
      case FilterClass::kSharp: return std::abs(EvalSharp(c, beta));
      case FilterClass::kGefP: return std::abs(EvalGefP(c, beta));
      default: return std::abs(EvalV(c, beta));
    }
  };

  const ArrayX grid = DefaultBetaGrid(c);
  Eigen::Index best = 0;
  FPType best_mag = -1.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const FPType m = magnitude(grid[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  FPType lo = grid[std::max<Eigen::Index>(0, best - 1)];
  FPType hi = grid[std::min<Eigen::Index>(grid.size() - 1, best + 1)];

  const FPType inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  FPType x1 = hi - inv_phi * (hi - lo);
  FPType x2 = lo + inv_phi * (hi - lo);
  FPType f1 = magnitude(x1);
  FPType f2 = magnitude(x2);
  while (hi - lo > 1e-12 * c.b_p) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = magnitude(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = magnitude(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace afd
