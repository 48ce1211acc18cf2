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

#include "afd/characteristics.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "afd/numerics.h"

namespace afd {

namespace {

constexpr FPType kPi = 3.14159265358979323846;
constexpr FPType kTwoPi = 2.0 * kPi;
constexpr FPType kLn10 = 2.30258509299404568402;
const FPType kNaN = std::numeric_limits<FPType>::quiet_NaN();

FPType SqrtPi() { return std::sqrt(kPi); }

void ValidateLevels(const std::set<FPType>& n_levels) {
  for (FPType n : n_levels) {
    if (!(n > 0) || n > 60) {
      throw DomainError("dB levels must lie in (0, 60]");
    }
  }
}

std::string TrimmedNumber(FPType n) {
  std::ostringstream out;
  out << n;
  return out.str();
}

}  // namespace

std::string QnFieldName(FPType n) { return "q_" + TrimmedNumber(n); }

FPType Characteristics::Field(const std::string& name) const {
  if (name == "beta_peak") return beta_peak;
  if (name == "q_erb") return q_erb;
  if (name == "s_beta") return s_beta;
  if (name == "n_beta") return n_beta;
  if (name == "n_beta_at_max") return n_beta_at_max;
  if (name == "beta_max_n") return beta_max_n;
  if (name == "phi_accum") return phi_accum;
  if (name.rfind("q_", 0) == 0) {
    const FPType n = std::strtod(name.c_str() + 2, nullptr);
    const auto it = q_n.find(n);
    if (it != q_n.end()) return it->second;
  }
  throw DomainError("unknown characteristic field: " + name);
}

std::string RatioKind::Name() const {
  switch (kind) {
    case kAlpha: return "alpha";
    case kG: return "g";
    case kQerbOverQn: return "qerb_over_q" + TrimmedNumber(n);
    case kErbTimesN: return "erb_times_n";
    case kErb2TimesS: return "erb2_times_s";
    case kBwnTimesN: return "bw" + TrimmedNumber(n) + "_times_n";
    case kBwn2TimesS: return "bw" + TrimmedNumber(n) + "2_times_s";
    case kSOverN: return "s_over_n";
    case kPhiOverN: return "phi_over_n";
  }
  return "unknown";
}

RatioKind ParseRatioKind(const std::string& token) {
  if (token == "alpha") return RatioKind::Alpha();
  if (token == "g") return RatioKind::G();
  if (token == "erb_times_n") return RatioKind::ErbTimesN();
  if (token == "erb2_times_s") return RatioKind::Erb2TimesS();
  if (token == "s_over_n") return RatioKind::SOverN();
  if (token == "phi_over_n") return RatioKind::PhiOverN();
  const auto level = [&token](const std::string& text) {
    const FPType n = std::strtod(text.c_str(), nullptr);
    if (!(n > 0) || n > 60) {
      throw DomainError("ratio dB level must lie in (0, 60]: " + token);
    }
    return n;
  };
  if (token.rfind("qerb_over_q", 0) == 0) {
    return RatioKind::QerbOverQn(level(token.substr(11)));
  }
  if (token.rfind("bw", 0) == 0) {
    const std::size_t tail = token.find("_times_n");
    if (tail != std::string::npos && token.size() == tail + 8) {
      return RatioKind::BwnTimesN(level(token.substr(2, tail - 2)));
    }
    const std::size_t tail2 = token.find("2_times_s");
    if (tail2 != std::string::npos && token.size() == tail2 + 9) {
      return RatioKind::Bwn2TimesS(level(token.substr(2, tail2 - 2)));
    }
  }
  throw DomainError("unknown ratio kind: " + token);
}

Characteristics ClosedForm(const FilterConstants& c,
                           const std::set<FPType>& n_levels) {
  ValidateLevels(n_levels);
  Characteristics out;
  out.source = CharSource::kClosedForm;
  out.beta_peak = c.b_p;
  for (FPType n : n_levels) {
    out.q_n[n] = c.b_p / (2.0 * c.a_p) /
                 std::sqrt(std::pow(10.0, n / (10.0 * c.b_u)) - 1.0);
  }
  if (c.b_u > 0.5) {
    out.q_erb = c.b_p / (SqrtPi() * c.a_p) * GammaRatio(c.b_u, c.b_u - 0.5);
  } else {
    out.q_erb = kNaN;
    out.caveats.push_back("q_erb undefined: B_u <= 1/2");
  }
  out.s_beta = (20.0 / kLn10) * c.b_u / (c.a_p * c.a_p);
  out.beta_max_n = c.b_p;
  out.n_beta = c.b_u / (kTwoPi * c.a_p);
  out.n_beta_at_max = out.n_beta;
  out.phi_accum = 0.5 * c.b_u;
  return out;
}

FPType RatioValue(const RatioKind& kind, const FilterConstants& c) {
  const FPType bu = c.b_u;
  const auto require_gamma_domain = [bu]() {
    if (!(bu > 0.5)) {
      throw DomainError("ratio undefined: B_u must exceed 1/2");
    }
  };
  switch (kind.kind) {
    case RatioKind::kAlpha:
      require_gamma_domain();
      return (2.0 / SqrtPi()) * GammaRatio(bu, bu - 0.5) *
             std::sqrt(std::pow(10.0, 1.0 / bu) - 1.0);
    case RatioKind::kG:
      require_gamma_domain();
      return 2.0 * SqrtPi() * c.b_p * GammaRatio(bu, bu - 0.5) / bu;
    case RatioKind::kQerbOverQn:
      require_gamma_domain();
      return (2.0 / SqrtPi()) * GammaRatio(bu, bu - 0.5) *
             std::sqrt(std::pow(10.0, kind.n / (10.0 * bu)) - 1.0);
    case RatioKind::kErbTimesN:
      require_gamma_domain();
      return bu * GammaRatio(bu - 0.5, bu) / (2.0 * SqrtPi());
    case RatioKind::kErb2TimesS: {
      require_gamma_domain();
      const FPType r = GammaRatio(bu - 0.5, bu);
      return (20.0 * kPi / kLn10) * bu * r * r;
    }
    case RatioKind::kBwnTimesN:
      return (bu / kPi) * std::sqrt(std::pow(10.0, kind.n / (10.0 * bu)) - 1.0);
    case RatioKind::kBwn2TimesS:
      return (80.0 / kLn10) * bu *
             (std::pow(10.0, kind.n / (10.0 * bu)) - 1.0);
    case RatioKind::kSOverN:
      return (40.0 * kPi / kLn10) / c.a_p;
    case RatioKind::kPhiOverN:
      return kPi * c.a_p;
  }
  throw DomainError("unhandled ratio kind");
}

namespace {

// Vertex of the parabola through three (x, y) samples; returns {x, y}.
std::pair<FPType, FPType> ParabolicVertex(FPType x0, FPType x1, FPType x2,
                                          FPType y0, FPType y1, FPType y2) {
  const FPType d1 = (y1 - y0) / (x1 - x0);
  const FPType d2 = (y2 - y1) / (x2 - x1);
  const FPType a = (d2 - d1) / (x2 - x0);
  if (a == 0) return {x1, y1};
  const FPType xv = 0.5 * (x0 + x1) - d1 / (2.0 * a);
  const FPType yv = y0 + d1 * (xv - x0) + a * (xv - x0) * (xv - x1);
  return {xv, yv};
}

struct Crossing {
  bool found = false;
  FPType beta = 0;
};

// First crossing of `target` in mag_db, searched outward from the peak.
Crossing FindCrossingAbove(const ArrayX& beta, const ArrayX& mag,
                           Eigen::Index peak, FPType target) {
  for (Eigen::Index j = peak; j + 1 < beta.size(); ++j) {
    if (mag[j] >= target && target >= mag[j + 1]) {
      const FPType t = (target - mag[j]) / (mag[j + 1] - mag[j]);
      return {true, beta[j] + t * (beta[j + 1] - beta[j])};
    }
  }
  return {};
}

Crossing FindCrossingBelow(const ArrayX& beta, const ArrayX& mag,
                           Eigen::Index peak, FPType target) {
  for (Eigen::Index j = peak; j > 0; --j) {
    if (mag[j] >= target && target >= mag[j - 1]) {
      const FPType t = (target - mag[j]) / (mag[j - 1] - mag[j]);
      return {true, beta[j] + t * (beta[j - 1] - beta[j])};
    }
  }
  return {};
}

// Derivative of order `order` at x0 from the five nodes centered on index i.
FPType StencilDerivative(const ArrayX& x, const ArrayX& y, Eigen::Index i,
                         FPType x0, int order) {
  const Eigen::Index lo = std::max<Eigen::Index>(
      0, std::min<Eigen::Index>(i - 2, x.size() - 5));
  ArrayX nodes = x.segment(lo, 5);
  const Eigen::MatrixXd w = FornbergWeights(x0, nodes, order);
  FPType acc = 0;
  for (int k = 0; k < 5; ++k) acc += w(k, order) * y[lo + k];
  return acc;
}

}  // namespace

Characteristics ExtractNumeric(const FrequencyResponse& fr,
                               const std::set<FPType>& n_levels,
                               ExtractMode mode) {
  ValidateLevels(n_levels);
  const ArrayX& beta = fr.beta;
  const ArrayX& mag = fr.mag_db;
  const Eigen::Index n = beta.size();
  if (n < 5) throw DomainError("ExtractNumeric: response too short");

  Eigen::Index peak = 0;
  mag.maxCoeff(&peak);
  if (peak < 2 || peak > n - 3) {
    throw DomainError("ExtractNumeric: peak at grid boundary");
  }

  Characteristics out;
  out.source = CharSource::kNumeric;
  out.source_class = fr.source_class;

  const auto [beta_pk, mag_pk] = ParabolicVertex(
      beta[peak - 1], beta[peak], beta[peak + 1], mag[peak - 1], mag[peak],
      mag[peak + 1]);
  out.beta_peak = beta_pk;

  const auto fail = [&](const std::string& field, const std::string& why) {
    if (mode == ExtractMode::kStrict) {
      throw ExtractionError(field + ": " + why);
    }
    out.field_issues[field] = why;
  };

  // n-dB quality factors from linear-interpolated crossings nearest the
  // peak, one per side.
  for (FPType lvl : n_levels) {
    const FPType target = mag_pk - lvl;
    const Crossing hi = FindCrossingAbove(beta, mag, peak, target);
    const Crossing lo = FindCrossingBelow(beta, mag, peak, target);
    if (!hi.found || !lo.found) {
      out.q_n[lvl] = kNaN;
      fail(QnFieldName(lvl), "bandwidth not bracketed within the grid");
      continue;
    }
    out.q_n[lvl] = beta_pk / (hi.beta - lo.beta);
  }

  // ERB by trapezoid of the normalized power response.
  ArrayX power(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    power[i] = std::pow(10.0, mag[i] / 10.0);
  }
  const FPType peak_power = std::pow(10.0, mag_pk / 10.0);
  FPType integral = 0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    integral += 0.5 * (power[i] + power[i + 1]) * (beta[i + 1] - beta[i]);
  }
  out.q_erb = beta_pk * peak_power / integral;
  if (power[0] >= 1e-8 || power[n - 1] >= 1e-8) {
    out.caveats.push_back(
        "q_erb: power tail above 1e-8 of peak at a grid end; consider a "
        "wider grid");
  }

  // Downward convexity from a five-node fourth-order stencil at the
  // interpolated peak.
  Eigen::Index nearest = peak;
  if (peak + 1 < n && std::abs(beta[peak + 1] - beta_pk) <
                          std::abs(beta[nearest] - beta_pk)) {
    nearest = peak + 1;
  }
  if (peak > 0 && std::abs(beta[peak - 1] - beta_pk) <
                      std::abs(beta[nearest] - beta_pk)) {
    nearest = peak - 1;
  }
  const FPType d2 = StencilDerivative(beta, mag, nearest, beta_pk, 2);
  out.s_beta = -d2;
  if (out.s_beta < 0) {
    fail("s_beta", "peak is not concave in dB");
    out.s_beta = (mode == ExtractMode::kLenient) ? kNaN : out.s_beta;
  }

  // Group delay -d(phase)/d(beta), per node, then at the peak.
  ArrayX tau(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    tau[i] = -StencilDerivative(beta, fr.phase_cycles, i, beta[i], 1);
  }
  out.n_beta = -StencilDerivative(beta, fr.phase_cycles, nearest, beta_pk, 1);

  Eigen::Index tau_peak = 0;
  tau.maxCoeff(&tau_peak);
  if (tau_peak > 0 && tau_peak < n - 1) {
    const auto [bm, tm] = ParabolicVertex(
        beta[tau_peak - 1], beta[tau_peak], beta[tau_peak + 1],
        tau[tau_peak - 1], tau[tau_peak], tau[tau_peak + 1]);
    out.beta_max_n = bm;
    out.n_beta_at_max = tm;
  } else {
    out.beta_max_n = beta[tau_peak];
    out.n_beta_at_max = tau[tau_peak];
  }

  out.phi_accum = fr.phase_cycles[0] - fr.phase_cycles[n - 1];
  if (tau[0] > 1e-3 * out.n_beta || tau[n - 1] > 1e-3 * out.n_beta) {
    out.caveats.push_back(
        "phi_accum: lower bound only (grid-end group delay above 1e-3 of "
        "peak)");
  }
  return out;
}

FPType RelativeError(const Characteristics& analytic,
                     const Characteristics& numeric,
                     const std::string& field) {
  const FPType a = analytic.Field(field);
  const FPType b = numeric.Field(field);
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("RelativeError: non-finite value for " + field);
  }
  if (a == 0) throw DomainError("RelativeError: analytic value is zero");
  return 1.0 - b / a;
}

}  // namespace afd
